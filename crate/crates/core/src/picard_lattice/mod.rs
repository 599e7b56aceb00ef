//! Néron–Severi lattice of a standard Poisson surface blown up along a
//! forest of (possibly infinitely near) points.
//!
//! The basis is `{s, f, e_1, ..., e_n}` with
//!
//! ```text
//! s^2 = 2 - 2g,  s.f = 1,  f^2 = 0,  e_i.e_j = -delta_ij,  s.e_i = f.e_i = 0
//! ```
//!
//! and canonical class `K = -2s + e_1 + ... + e_n` (zero on surfaces with
//! trivial canonical class, which admit no blowups).

mod divisor;
pub mod enumerate;
mod forest;

use rayon::prelude::*;

pub use divisor::DivisorClass;
pub(crate) use forest::exceptional_dot;
pub use forest::{BlowupForest, BlowupNode, ExceptionalComponent, Parent};

use crate::error::{Error, Result};
use crate::poisson_surface::{BaseCase, SurfaceModel};
use enumerate::fixed_norm_vectors;

impl SurfaceModel {
    /// `s^2 = 2 - 2g`.
    pub fn section_square(&self) -> i64 {
        2 - 2 * i64::from(self.genus())
    }

    pub fn check_class(&self, d: &DivisorClass) -> Result<()> {
        if d.n() == self.n() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n(),
                found: d.n(),
            })
        }
    }

    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
        self.check_class(a)?;
        self.check_class(b)?;
        Ok(a.s * b.s * self.section_square() + a.s * b.f + a.f * b.s + exceptional_dot(&a.e, &b.e))
    }

    pub fn self_intersection(&self, d: &DivisorClass) -> Result<i64> {
        self.intersect(d, d)
    }

    pub fn canonical_class(&self) -> DivisorClass {
        match self.base_case() {
            BaseCase::TrivialCanonical => DivisorClass::zero(self.n()),
            _ => DivisorClass {
                s: -2,
                f: 0,
                e: vec![1; self.n()],
            },
        }
    }

    /// Gram matrix in the basis `s, f, e_1..e_n`.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        let basis: Vec<DivisorClass> = [DivisorClass::section(n), DivisorClass::fiber(n)]
            .into_iter()
            .chain((0..n).map(|i| DivisorClass::exceptional(i, n)))
            .collect();
        basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| self.intersect(a, b).expect("same surface"))
                    .collect()
            })
            .collect()
    }

    pub fn exceptional_components(&self) -> Result<Vec<ExceptionalComponent>> {
        self.forest().components()
    }

    pub fn exceptional_component(&self, index: usize) -> Result<ExceptionalComponent> {
        self.forest().component(index)
    }

    /// Recomputes `f_dual` for a component, solving the dual-basis equations.
    pub fn dual_component(&self, f: &ExceptionalComponent) -> Result<DivisorClass> {
        self.forest().dual_class(f.index)
    }

    pub fn e_pi(&self) -> DivisorClass {
        self.forest().e_pi()
    }

    /// `e_pi` of the partial morphism contracting blowups `from..n`.
    pub fn e_pi_from(&self, from: usize) -> DivisorClass {
        let mut d = DivisorClass::zero(self.n());
        for c in d.e.iter_mut().skip(from) {
            *c = 1;
        }
        d
    }

    /// Effective exceptional divisors of square `-1`, lexicographically
    /// ordered. These are exactly the `e_f`.
    pub fn enumerate_minus_one_divisors(&self) -> Result<Vec<DivisorClass>> {
        let forest = self.forest();
        let mut out = Vec::new();
        for e in fixed_norm_vectors(self.n(), 1, 1, None) {
            let d = DivisorClass::from_exceptional(e);
            if forest.component_coordinates(&d)?.iter().all(|&c| c >= 0) {
                out.push(d);
            }
        }
        Ok(out)
    }

    /// All classes with every coefficient in `[-bound, bound]`, `D^2 = -2`
    /// and `D.K = 0`, lexicographically ordered. Effectivity is not decided.
    pub fn enumerate_minus_two_classes(&self, bound: i64) -> Result<Vec<DivisorClass>> {
        if bound < 1 {
            return Err(Error::InvalidBound(bound));
        }
        let sigma = self.section_square();
        let n = self.n();
        let trivial_k = self.base_case() == BaseCase::TrivialCanonical;
        let pairs: Vec<(i64, i64)> = (-bound..=bound)
            .flat_map(|a| (-bound..=bound).map(move |b| (a, b)))
            .collect();
        let per_pair: Vec<Vec<DivisorClass>> = pairs
            .par_iter()
            .map(|&(a, b)| {
                // D^2 = a^2 s^2 + 2ab - |c|^2 = -2
                let norm = a * a * sigma + 2 * a * b + 2;
                // D.K = -2(a s^2 + b) - sum c = 0
                let sum = (!trivial_k).then(|| -2 * (a * sigma + b));
                fixed_norm_vectors(n, norm, bound, sum)
                    .into_iter()
                    .map(|e| DivisorClass { s: a, f: b, e })
                    .collect()
            })
            .collect();
        Ok(per_pair.into_iter().flatten().collect())
    }

    /// Membership test for the output of `enumerate_minus_two_classes`.
    pub fn is_minus_two_class(&self, d: &DivisorClass, bound: i64) -> Result<bool> {
        if bound < 1 {
            return Err(Error::InvalidBound(bound));
        }
        let in_box =
            d.s.abs() <= bound && d.f.abs() <= bound && d.e.iter().all(|c| c.abs() <= bound);
        Ok(in_box
            && self.self_intersection(d)? == -2
            && self.intersect(d, &self.canonical_class())? == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson_surface::{BasePoint, SurfaceModel};

    fn ruled(genus: u32) -> SurfaceModel {
        SurfaceModel::new(BaseCase::StandardRuled, genus, None, vec![], vec![]).unwrap()
    }

    fn with_nodes(nodes: Vec<BlowupNode>, points: u32) -> SurfaceModel {
        let pts = (0..points)
            .map(|id| BasePoint {
                id,
                multiplicity: 1,
            })
            .collect();
        SurfaceModel::new(BaseCase::F2Rational, 0, None, pts, nodes).unwrap()
    }

    fn single() -> SurfaceModel {
        with_nodes(vec![BlowupNode::on_curve(Parent::Base(0), 1)], 1)
    }

    fn two_chain() -> SurfaceModel {
        with_nodes(
            vec![
                BlowupNode::on_curve(Parent::Base(0), 1),
                BlowupNode::on_curve(Parent::Node(0), 1),
            ],
            1,
        )
    }

    #[test]
    fn exceptional_basis_is_orthonormal() {
        let x = two_chain();
        let e1 = DivisorClass::exceptional(0, 2);
        let e2 = DivisorClass::exceptional(1, 2);
        assert_eq!(x.intersect(&e1, &e2).unwrap(), 0);
        assert_eq!(x.intersect(&e1, &e1).unwrap(), -1);
    }

    #[test]
    fn canonical_square_on_minimal_surfaces() {
        // K = -2s, so K^2 = 4 s^2 = 8(1 - g); fiber adjunction f.(f + K) = -2
        for g in 0..5 {
            let y = ruled(g);
            let k = y.canonical_class();
            assert_eq!(y.self_intersection(&k).unwrap(), 8 * (1 - i64::from(g)));
            let f = DivisorClass::fiber(0);
            assert_eq!(y.intersect(&f, &(&f + &k)).unwrap(), -2);
            let s = DivisorClass::section(0);
            assert_eq!(y.intersect(&s, &(&s + &k)).unwrap(), 2 * i64::from(g) - 2);
        }
    }

    #[test]
    fn canonical_class_examples() {
        assert_eq!(
            ruled(0).canonical_class(),
            DivisorClass {
                s: -2,
                f: 0,
                e: vec![]
            }
        );
        assert_eq!(single().canonical_class().to_string(), "-2s + e1");
        let three = with_nodes(
            vec![
                BlowupNode::on_curve(Parent::Base(0), 1),
                BlowupNode::on_curve(Parent::Node(0), 1),
                BlowupNode::on_curve(Parent::Node(1), 1),
            ],
            1,
        );
        assert_eq!(three.canonical_class().to_string(), "-2s + e1 + e2 + e3");
    }

    #[test]
    fn pulled_back_curve_minus_exceptional_meets_e_once() {
        let x = single();
        let e = DivisorClass::exceptional(0, 1);
        for c in [
            DivisorClass {
                s: 1,
                f: 3,
                e: vec![0],
            },
            DivisorClass::fiber(1),
        ] {
            assert_eq!(x.intersect(&(&c - &e), &e).unwrap(), 1);
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let x = single();
        let err = x
            .intersect(&DivisorClass::zero(0), &DivisorClass::zero(1))
            .unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 1,
                found: 0
            }
        );
    }

    #[test]
    fn components_of_small_forests() {
        let comps = single().exceptional_components().unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(single().self_intersection(&comps[0].class_f).unwrap(), -1);

        let x = two_chain();
        let comps = x.exceptional_components().unwrap();
        assert_eq!(comps[0].class_f.to_string(), "e1 - e2");
        assert_eq!(x.self_intersection(&comps[0].class_f).unwrap(), -2);
        assert_eq!(comps[1].class_f.to_string(), "e2");
        assert_eq!(comps[1].class_f_dual.to_string(), "e1 + e2");
        assert_eq!(x.dual_component(&comps[1]).unwrap().to_string(), "e1 + e2");

        let indep = with_nodes(
            vec![
                BlowupNode::on_curve(Parent::Base(0), 1),
                BlowupNode::on_curve(Parent::Base(1), 1),
            ],
            2,
        );
        for c in indep.exceptional_components().unwrap() {
            assert_eq!(indep.self_intersection(&c.class_f).unwrap(), -1);
        }
    }

    #[test]
    fn e_pi_examples() {
        assert_eq!(single().e_pi().to_string(), "e1");
        let x = two_chain();
        assert_eq!(x.self_intersection(&x.e_pi()).unwrap(), -2);
        assert_eq!(x.e_pi_from(1).to_string(), "e2");
    }

    #[test]
    fn minus_one_divisors() {
        let found = single().enumerate_minus_one_divisors().unwrap();
        assert_eq!(found, vec![DivisorClass::exceptional(0, 1)]);
        let x = two_chain();
        let found: Vec<String> = x
            .enumerate_minus_one_divisors()
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(found, vec!["e2", "e1"]);
        // e2 meets f1 = e1 - e2 positively
        let f1 = x.exceptional_component(0).unwrap().class_f;
        assert_eq!(
            x.intersect(&DivisorClass::exceptional(1, 2), &f1).unwrap(),
            1
        );
    }

    #[test]
    fn minus_two_classes_on_two_chain() {
        let x = two_chain();
        let found = x.enumerate_minus_two_classes(2).unwrap();
        let f1 = DivisorClass::from_exceptional(vec![1, -1]);
        assert!(found.contains(&f1));
        let k = x.canonical_class();
        for d in &found {
            assert_eq!(x.self_intersection(d).unwrap(), -2);
            assert_eq!(x.intersect(d, &k).unwrap(), 0);
        }
        let mut sorted = found.clone();
        sorted.sort();
        assert_eq!(sorted, found);
    }

    #[test]
    fn minus_two_classes_on_minimal_rational_surface() {
        // Box search: a(a + b) = -1 and b = -2a force (a, b) = (-1, 2) or (1, -2);
        // s - 2f is the (-2)-section of F2.
        let y = ruled(0);
        let found = y.enumerate_minus_two_classes(3).unwrap();
        let brute: Vec<DivisorClass> = (-3i64..=3)
            .flat_map(|a| (-3i64..=3).map(move |b| (a, b)))
            .filter(|&(a, b)| 2 * a * a + 2 * a * b == -2 && -2 * (2 * a + b) == 0)
            .map(|(s, f)| DivisorClass { s, f, e: vec![] })
            .collect();
        assert_eq!(found, brute);
        assert_eq!(
            found,
            vec![
                DivisorClass {
                    s: -1,
                    f: 2,
                    e: vec![]
                },
                DivisorClass {
                    s: 1,
                    f: -2,
                    e: vec![]
                }
            ]
        );
    }

    #[test]
    fn minus_two_membership_agrees_with_enumeration() {
        let x = two_chain();
        let found = x.enumerate_minus_two_classes(2).unwrap();
        for s in -2..=2 {
            for f in -2..=2 {
                for a in -2..=2 {
                    for b in -2..=2 {
                        let d = DivisorClass {
                            s,
                            f,
                            e: vec![a, b],
                        };
                        assert_eq!(x.is_minus_two_class(&d, 2).unwrap(), found.contains(&d));
                    }
                }
            }
        }
        assert_eq!(
            x.enumerate_minus_two_classes(0),
            Err(Error::InvalidBound(0))
        );
    }

    #[test]
    fn intersection_matrix_of_minimal_surface() {
        assert_eq!(ruled(0).intersection_matrix(), vec![vec![2, 1], vec![1, 0]]);
        assert_eq!(
            ruled(3).intersection_matrix(),
            vec![vec![-4, 1], vec![1, 0]]
        );
    }
}
