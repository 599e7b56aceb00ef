//! Numerical shadow of the category of sheaves killed by `R pi_*`:
//! composition series, projective and injective classes, the subsheaf
//! lattice of `pi^! O_Y / O_X` and the jet degrees of `Hom(P_f, -)`.
//!
//! Exceptional sheaves have rank 0 and Euler characteristic 0, so a class is
//! just its `c1` in `span{e_i}`; its composition multiplicities are the
//! coordinates of `c1` in the basis of component classes, the simple objects
//! being `O_f(-1)` with `c1 = f`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::picard_lattice::DivisorClass;
use crate::poisson_surface::SurfaceModel;

/// Largest forest for which the `2^n` subsheaf lattice is materialised.
pub const MAX_LATTICE_BLOWUPS: usize = 20;
/// Largest forest for which all `n!` maximal chains are materialised.
pub const MAX_CHAIN_BLOWUPS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalClass {
    pub c1: DivisorClass,
    /// Number of `O_f(-1)` factors in a composition series, per component.
    pub multiplicities: Vec<u64>,
}

impl ExceptionalClass {
    pub fn new(c1: DivisorClass, x: &SurfaceModel) -> Result<Self> {
        let multiplicities = composition_multiplicities(&c1, x)?;
        Ok(ExceptionalClass { c1, multiplicities })
    }
}

/// Coordinates of `c1` in the component basis; negative coordinates mean no
/// exceptional sheaf has this class.
pub fn composition_multiplicities(c1: &DivisorClass, x: &SurfaceModel) -> Result<Vec<u64>> {
    let coords = x.forest().component_coordinates(c1)?;
    coords
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            u64::try_from(c).map_err(|_| Error::NotEffective {
                class: c1.to_string(),
                component: k + 1,
            })
        })
        .collect()
}

/// Projective cover `P_f` of `O_f(-1)`; `c1(P_f) = f_dual`.
pub fn projective_class(f: usize, x: &SurfaceModel) -> Result<ExceptionalClass> {
    ExceptionalClass::new(x.forest().dual_class(f)?, x)
}

/// Injective hull `I_f`; duality fixes `c1`, so numerically `I_f = P_f`.
pub fn injective_class(f: usize, x: &SurfaceModel) -> Result<ExceptionalClass> {
    projective_class(f, x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsheafEntry {
    /// 0-based component indices, ascending.
    pub members: Vec<usize>,
    pub divisor: DivisorClass,
}

/// Exceptional subsheaves of `pi^! O_Y / O_X`, one per subset `S` of
/// components, with `c1 = sum_{f in S} e_f`. Ordered lexicographically by
/// divisor.
pub fn subsheaf_lattice(x: &SurfaceModel) -> Result<Vec<SubsheafEntry>> {
    let n = x.n();
    if n > MAX_LATTICE_BLOWUPS {
        return Err(Error::SizeLimit {
            what: "subsheaf lattice",
            n,
            limit: MAX_LATTICE_BLOWUPS,
        });
    }
    let mut out: Vec<SubsheafEntry> = (0u32..1 << n)
        .map(|mask| {
            let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            subset_entry(members, n)
        })
        .collect();
    out.sort_by(|a, b| a.divisor.cmp(&b.divisor));
    Ok(out)
}

fn subset_entry(members: Vec<usize>, n: usize) -> SubsheafEntry {
    let mut divisor = DivisorClass::zero(n);
    for &i in &members {
        divisor.e[i] = 1;
    }
    SubsheafEntry { members, divisor }
}

/// Meet and join in the subsheaf lattice.
pub fn meet(a: &SubsheafEntry, b: &SubsheafEntry) -> SubsheafEntry {
    let members = a
        .members
        .iter()
        .copied()
        .filter(|i| b.members.contains(i))
        .collect();
    subset_entry(members, a.divisor.n())
}

pub fn join(a: &SubsheafEntry, b: &SubsheafEntry) -> SubsheafEntry {
    let mut members: Vec<usize> = a.members.iter().chain(&b.members).copied().collect();
    members.sort_unstable();
    members.dedup();
    subset_entry(members, a.divisor.n())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub component: usize,
    /// `E_i`.
    pub sheaf: ExceptionalClass,
    /// `c1(E_i / E_{i-1}) = e_{f_i}` with its composition multiplicities.
    pub subquotient: ExceptionalClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalChain {
    pub ordering: Vec<usize>,
    pub steps: Vec<ChainStep>,
}

/// The maximal chain `0 = E_0 < ... < E_n = pi^! O_Y / O_X` attached to an
/// ordering of the components.
pub fn chain_for_ordering(ordering: &[usize], x: &SurfaceModel) -> Result<MaximalChain> {
    let n = x.n();
    let mut seen = vec![false; n];
    if ordering.len() != n {
        return Err(Error::NotAPermutation(n));
    }
    for &f in ordering {
        if f >= n || std::mem::replace(&mut seen[f], true) {
            return Err(Error::NotAPermutation(n));
        }
    }
    let mut partial = DivisorClass::zero(n);
    let mut steps = Vec::with_capacity(n);
    for &f in ordering {
        let e_f = x.forest().orthonormal_divisor(f)?;
        partial = &partial + &e_f;
        steps.push(ChainStep {
            component: f,
            sheaf: ExceptionalClass::new(partial.clone(), x)?,
            subquotient: ExceptionalClass::new(e_f, x)?,
        });
    }
    Ok(MaximalChain {
        ordering: ordering.to_vec(),
        steps,
    })
}

/// `n!`, the number of maximal chains.
pub fn chain_count(n: usize) -> Result<u64> {
    (1..=n as u64)
        .try_fold(1u64, |acc, k| acc.checked_mul(k))
        .ok_or(Error::SizeLimit {
            what: "maximal chain count",
            n,
            limit: 20,
        })
}

/// Every maximal chain, orderings in lexicographic order.
pub fn maximal_chains(x: &SurfaceModel) -> Result<Vec<MaximalChain>> {
    let n = x.n();
    if n > MAX_CHAIN_BLOWUPS {
        return Err(Error::SizeLimit {
            what: "maximal chain list",
            n,
            limit: MAX_CHAIN_BLOWUPS,
        });
    }
    let mut out = Vec::new();
    let mut ordering: Vec<usize> = (0..n).collect();
    loop {
        out.push(chain_for_ordering(&ordering, x)?);
        if !next_permutation(&mut ordering) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Length of `Hom(P_f, E)` for a subquotient `E` with `c1 = e_g`, i.e.
/// `|f_dual . e_g|`. The raw product is `<= 0` under the negative definite
/// form; the absolute value makes a single blowup give 1.
pub fn hom_length(f: usize, g: usize, x: &SurfaceModel) -> Result<u64> {
    let dual = x.forest().dual_class(f)?;
    let e_g = x.forest().orthonormal_divisor(g)?;
    Ok(x.intersect(&dual, &e_g)?.unsigned_abs())
}

/// `d = |f_dual . e_pi|`, the length of the jet ring `k[t]/t^d`.
pub fn jet_degree(f: usize, x: &SurfaceModel) -> Result<u64> {
    let dual = x.forest().dual_class(f)?;
    Ok(x.intersect(&dual, &x.e_pi())?.unsigned_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard_lattice::{BlowupNode, Parent};
    use crate::poisson_surface::{BaseCase, BasePoint};

    fn surface(nodes: Vec<BlowupNode>, points: u32) -> SurfaceModel {
        let pts = (0..points)
            .map(|id| BasePoint {
                id,
                multiplicity: 1,
            })
            .collect();
        SurfaceModel::new(BaseCase::F2Rational, 0, None, pts, nodes).unwrap()
    }

    fn single() -> SurfaceModel {
        surface(vec![BlowupNode::on_curve(Parent::Base(0), 1)], 1)
    }

    fn chain2() -> SurfaceModel {
        surface(
            vec![
                BlowupNode::on_curve(Parent::Base(0), 1),
                BlowupNode::on_curve(Parent::Node(0), 1),
            ],
            1,
        )
    }

    fn independent(n: u32) -> SurfaceModel {
        surface(
            (0..n)
                .map(|i| BlowupNode::on_curve(Parent::Base(i), 1))
                .collect(),
            n,
        )
    }

    #[test]
    fn multiplicities() {
        let x = chain2();
        let f2 = x.forest().component_class(1).unwrap();
        assert_eq!(composition_multiplicities(&f2, &x).unwrap(), vec![0, 1]);
        assert_eq!(
            composition_multiplicities(&x.e_pi(), &x).unwrap(),
            vec![1, 2]
        );
        assert_eq!(
            composition_multiplicities(&DivisorClass::zero(2), &x).unwrap(),
            vec![0, 0]
        );
        let neg = DivisorClass::from_exceptional(vec![0, -1]);
        assert!(matches!(
            composition_multiplicities(&neg, &x),
            Err(Error::NotEffective { .. })
        ));
        let off = DivisorClass {
            s: 1,
            f: 0,
            e: vec![0, 0],
        };
        assert!(matches!(
            composition_multiplicities(&off, &x),
            Err(Error::NotExceptional(_))
        ));
    }

    #[test]
    fn projectives() {
        let x = single();
        assert_eq!(projective_class(0, &x).unwrap().c1.to_string(), "e1");
        let x = chain2();
        let p2 = projective_class(1, &x).unwrap();
        assert_eq!(p2.c1.to_string(), "e1 + e2");
        assert_eq!(injective_class(1, &x).unwrap(), p2);
        assert_eq!(p2.multiplicities, vec![1, 2]);
    }

    #[test]
    fn lattice_examples() {
        let lat = subsheaf_lattice(&single()).unwrap();
        assert_eq!(lat.len(), 2);
        assert!(lat[0].members.is_empty());
        assert_eq!(lat[1].divisor.to_string(), "e1");

        let x = chain2();
        let lat = subsheaf_lattice(&x).unwrap();
        assert_eq!(lat.len(), 4);
        let only_f2 = lat.iter().find(|s| s.members == vec![1]).unwrap();
        assert_eq!(only_f2.divisor.to_string(), "e2");
        let rest = &x.e_pi() - &only_f2.divisor;
        assert_eq!(x.intersect(&only_f2.divisor, &rest).unwrap(), 0);
    }

    #[test]
    fn lattice_is_boolean() {
        let x = independent(3);
        let lat = subsheaf_lattice(&x).unwrap();
        for a in &lat {
            for b in &lat {
                let (m, j) = (meet(a, b), join(a, b));
                assert!(lat.contains(&m) && lat.contains(&j));
                assert_eq!(&m.divisor + &j.divisor, &a.divisor + &b.divisor);
            }
        }
    }

    #[test]
    fn chains() {
        let x = chain2();
        let c = chain_for_ordering(&[0, 1], &x).unwrap();
        let sub: Vec<String> = c
            .steps
            .iter()
            .map(|s| s.subquotient.c1.to_string())
            .collect();
        assert_eq!(sub, vec!["e1", "e2"]);
        let c = chain_for_ordering(&[1, 0], &x).unwrap();
        let sub: Vec<String> = c
            .steps
            .iter()
            .map(|s| s.subquotient.c1.to_string())
            .collect();
        assert_eq!(sub, vec!["e2", "e1"]);
        assert_eq!(c.steps[1].sheaf.c1, x.e_pi());
        assert_eq!(
            chain_for_ordering(&[0, 0], &x),
            Err(Error::NotAPermutation(2))
        );
        assert_eq!(chain_for_ordering(&[0], &x), Err(Error::NotAPermutation(2)));
        assert_eq!(
            chain_for_ordering(&[0, 2], &x),
            Err(Error::NotAPermutation(2))
        );
        assert_eq!(maximal_chains(&independent(3)).unwrap().len(), 6);
        assert_eq!(chain_count(3).unwrap(), 6);
        assert_eq!(chain_count(0).unwrap(), 1);
        assert_eq!(chain_count(20).unwrap(), 2_432_902_008_176_640_000);
        assert!(chain_count(21).is_err());
    }

    #[test]
    fn hom_and_jet_degrees() {
        let x = single();
        assert_eq!(hom_length(0, 0, &x).unwrap(), 1);
        assert_eq!(jet_degree(0, &x).unwrap(), 1);
        let x = chain2();
        assert_eq!(hom_length(1, 0, &x).unwrap(), 1);
        assert_eq!(hom_length(1, 1, &x).unwrap(), 1);
        assert_eq!(hom_length(0, 1, &x).unwrap(), 0);
        assert_eq!(jet_degree(1, &x).unwrap(), 2);
        assert_eq!(jet_degree(0, &x).unwrap(), 1);
    }

    #[test]
    fn lattice_size_limit() {
        let big = independent(21);
        assert!(matches!(
            subsheaf_lattice(&big),
            Err(Error::SizeLimit { .. })
        ));
        assert!(matches!(maximal_chains(&big), Err(Error::SizeLimit { .. })));
    }
}
