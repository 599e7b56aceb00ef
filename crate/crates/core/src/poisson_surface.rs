//! Standard Poisson surfaces, their anticanonical curve, and Poisson-legal
//! blowups.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::picard_lattice::{BlowupForest, BlowupNode, DivisorClass, Parent};

/// Which standard Poisson surface the blowups start from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseCase {
    /// Hirzebruch surface F2 with a reduced anticanonical curve missing the
    /// negative section.
    F2Rational,
    /// `C x P1` with `C` of genus 1; the anticanonical curve is two fibers
    /// over `P1`.
    Genus1Product,
    /// `P(O_C + omega_C)` over a curve of genus `g`, anticanonical curve `2 C0`.
    StandardRuled,
    /// Minimal surface with trivial canonical bundle.
    TrivialCanonical,
}

impl BaseCase {
    pub fn name(self) -> &'static str {
        match self {
            BaseCase::F2Rational => "f2_rational",
            BaseCase::Genus1Product => "genus1_product",
            BaseCase::StandardRuled => "standard_ruled",
            BaseCase::TrivialCanonical => "trivial_canonical",
        }
    }
}

/// Kodaira type of the anticanonical curve in the rational case. Metadata.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kodaira {
    I0,
    I1,
    II,
    I2,
    III,
}

/// A point of the minimal surface that blowups or jets may refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePoint {
    pub id: u32,
    /// Multiplicity of the anticanonical curve at the point; 0 means the
    /// point is off the curve.
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceModel {
    base_case: BaseCase,
    genus: u32,
    subcase: Option<Kodaira>,
    base_points: Vec<BasePoint>,
    forest: BlowupForest,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnticanonicalState {
    pub divisor_class: DivisorClass,
    pub multiplicities: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BirationalReport {
    pub base_case: BaseCase,
    pub genus: u32,
    pub subcase: Option<Kodaira>,
    pub class_label: String,
    pub notes: Vec<String>,
}

impl SurfaceModel {
    /// Builds a surface, appending the blowups one at a time so that every
    /// node is checked against the surface it is blown up on.
    pub fn new(
        base_case: BaseCase,
        genus: u32,
        subcase: Option<Kodaira>,
        base_points: Vec<BasePoint>,
        nodes: Vec<BlowupNode>,
    ) -> Result<Self> {
        let required = match base_case {
            BaseCase::F2Rational => Some(0),
            BaseCase::Genus1Product => Some(1),
            _ => None,
        };
        if let Some(required) = required.filter(|&r| r != genus) {
            return Err(Error::GenusMismatch {
                case: base_case.name(),
                required,
                found: genus,
            });
        }
        if subcase.is_some() && base_case != BaseCase::F2Rational {
            return Err(Error::SubcaseNotApplicable);
        }
        if base_case == BaseCase::TrivialCanonical && !nodes.is_empty() {
            return Err(Error::BlowupsForbidden);
        }
        for (i, p) in base_points.iter().enumerate() {
            if base_points[..i].iter().any(|q| q.id == p.id) {
                return Err(Error::DuplicateBasePoint(p.id));
            }
        }
        let mut surface = SurfaceModel {
            base_case,
            genus,
            subcase,
            base_points,
            forest: BlowupForest::default(),
        };
        for node in nodes {
            surface.append(node)?;
        }
        Ok(surface)
    }

    pub fn minimal(base_case: BaseCase, genus: u32) -> Result<Self> {
        Self::new(base_case, genus, None, Vec::new(), Vec::new())
    }

    pub fn base_case(&self) -> BaseCase {
        self.base_case
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn subcase(&self) -> Option<Kodaira> {
        self.subcase
    }

    pub fn base_points(&self) -> &[BasePoint] {
        &self.base_points
    }

    pub fn base_point(&self, id: u32) -> Option<&BasePoint> {
        self.base_points.iter().find(|p| p.id == id)
    }

    pub fn forest(&self) -> &BlowupForest {
        &self.forest
    }

    /// Number of blowups.
    pub fn n(&self) -> usize {
        self.forest.len()
    }

    /// The intermediate surface after the first `k` blowups.
    pub fn truncated(&self, k: usize) -> Result<Self> {
        if k > self.n() {
            return Err(Error::StageMismatch {
                found: k,
                target: self.n(),
            });
        }
        let mut out = SurfaceModel {
            forest: BlowupForest::default(),
            ..self.clone()
        };
        for node in &self.forest.nodes()[..k] {
            out.forest.push(node.clone());
        }
        Ok(out)
    }

    /// Multiplicity of the anticanonical curve at the point a new center
    /// would lie on, if that point exists.
    fn container_multiplicity(&self, parent: Parent) -> Option<u32> {
        match parent {
            Parent::Base(id) => self.base_point(id).map(|p| p.multiplicity),
            Parent::Node(j) => self.forest.node(j).map(|n| n.anticanonical_multiplicity),
        }
    }

    /// Whether blowing up `node` next keeps the surface Poisson, i.e. the
    /// center lies on the anticanonical curve (so `pi^*C - e_pi` stays
    /// effective).
    pub fn validate_poisson_blowup(&self, node: &BlowupNode) -> bool {
        node.on_anticanonical
            && node.anticanonical_multiplicity >= 1
            && self
                .container_multiplicity(node.parent)
                .is_some_and(|m| m >= 1)
    }

    fn append(&mut self, node: BlowupNode) -> Result<()> {
        let i = self.n();
        if self.base_case == BaseCase::TrivialCanonical {
            return Err(Error::BlowupsForbidden);
        }
        match node.parent {
            Parent::Node(j) if j >= i => return Err(Error::InvalidParent { node: i, parent: j }),
            Parent::Base(id) => {
                if self.base_point(id).is_none() {
                    return Err(Error::UnknownBasePoint { node: i, point: id });
                }
                if let Some(previous) = self
                    .forest
                    .nodes()
                    .iter()
                    .position(|n| n.parent == Parent::Base(id))
                {
                    return Err(Error::BasePointReused {
                        node: i,
                        point: id,
                        previous,
                    });
                }
            }
            Parent::Node(_) => {}
        }
        if node.on_anticanonical != (node.anticanonical_multiplicity >= 1) {
            return Err(Error::InconsistentMultiplicity {
                node: i,
                on: node.on_anticanonical,
                multiplicity: node.anticanonical_multiplicity,
            });
        }
        if !self.validate_poisson_blowup(&node) {
            return Err(Error::PoissonViolation { node: i });
        }
        let limit = self.container_multiplicity(node.parent).unwrap_or(0);
        if node.anticanonical_multiplicity > limit {
            return Err(Error::MultiplicityIncrease {
                node: i,
                found: node.anticanonical_multiplicity,
                limit,
            });
        }
        self.forest.push(node);
        Ok(())
    }

    /// A copy of the surface with one more Poisson blowup.
    pub fn with_blowup(&self, node: BlowupNode) -> Result<Self> {
        let mut out = self.clone();
        out.append(node)?;
        Ok(out)
    }

    /// `-K`, the class of the anticanonical curve `C_alpha`.
    pub fn anticanonical_class(&self) -> DivisorClass {
        -self.canonical_class()
    }

    pub fn anticanonical_state(&self) -> AnticanonicalState {
        AnticanonicalState {
            divisor_class: self.anticanonical_class(),
            multiplicities: self
                .forest
                .nodes()
                .iter()
                .map(|n| n.anticanonical_multiplicity)
                .collect(),
        }
    }

    /// `h^1(O_{C_alpha}) = g + 1`.
    pub fn h1_anticanonical(&self) -> Result<u32> {
        match self.base_case {
            BaseCase::TrivialCanonical => Err(Error::UndefinedForTrivialCanonical),
            _ => Ok(self.genus + 1),
        }
    }

    /// `chi(O)`, a birational invariant: `1 - g` for the ruled cases and 2 for
    /// a trivial canonical class (the K3 value; never used in computations
    /// since such surfaces carry no blowups or sheaf transport here).
    pub fn chi_structure_sheaf(&self) -> i64 {
        match self.base_case {
            BaseCase::TrivialCanonical => 2,
            _ => 1 - i64::from(self.genus),
        }
    }

    pub fn classify_birational_type(&self) -> BirationalReport {
        const ELEMENTARY: &str =
            "ruling unique; only elementary transformations between standard models";
        let (class_label, notes): (String, Vec<String>) = match self.base_case {
            BaseCase::F2Rational => {
                let label = match self.subcase {
                    Some(Kodaira::I0) => "rational, smooth anticanonical curve",
                    Some(Kodaira::I1) => "rational, integral nodal anticanonical; equivalent to I2",
                    Some(Kodaira::II) => {
                        "rational, integral cuspidal anticanonical; equivalent to III"
                    }
                    Some(Kodaira::I2) => {
                        "rational, two components meeting in a reduced scheme; equivalent to I1"
                    }
                    Some(Kodaira::III) => {
                        "rational, two components meeting in a nonreduced scheme; equivalent to II"
                    }
                    None => "rational, anticanonical type unspecified",
                };
                (
                    label.to_string(),
                    vec!["rational case: large group of Poisson birational automorphisms".into()],
                )
            }
            BaseCase::Genus1Product => (
                "C x P1 with g(C) = 1, anticanonical curve two disjoint fibers over P1".into(),
                vec![ELEMENTARY.into()],
            ),
            BaseCase::StandardRuled => {
                let mut notes = vec![ELEMENTARY.into()];
                if self.genus == 0 {
                    notes = vec!["g = 0: the model is F2, so the rational case applies".into()];
                }
                (
                    format!(
                        "P(O_C + omega_C) over a curve of genus {}, anticanonical curve 2 C0",
                        self.genus
                    ),
                    notes,
                )
            }
            BaseCase::TrivialCanonical => (
                "trivial anticanonical bundle".into(),
                vec!["no nontrivial Poisson birational maps".into()],
            ),
        };
        BirationalReport {
            base_case: self.base_case,
            genus: self.genus,
            subcase: self.subcase,
            class_label,
            notes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn points(mults: &[u32]) -> Vec<BasePoint> {
        mults
            .iter()
            .enumerate()
            .map(|(id, &multiplicity)| BasePoint {
                id: id as u32,
                multiplicity,
            })
            .collect()
    }

    fn rational(nodes: Vec<BlowupNode>, mults: &[u32]) -> Result<SurfaceModel> {
        SurfaceModel::new(BaseCase::F2Rational, 0, None, points(mults), nodes)
    }

    #[test]
    fn genus_constraints() {
        assert!(SurfaceModel::minimal(BaseCase::F2Rational, 1).is_err());
        assert!(SurfaceModel::minimal(BaseCase::Genus1Product, 0).is_err());
        assert!(SurfaceModel::minimal(BaseCase::Genus1Product, 1).is_ok());
        assert!(SurfaceModel::minimal(BaseCase::StandardRuled, 7).is_ok());
        let err = SurfaceModel::new(
            BaseCase::StandardRuled,
            2,
            Some(Kodaira::I1),
            vec![],
            vec![],
        );
        assert_eq!(err, Err(Error::SubcaseNotApplicable));
    }

    #[test]
    fn trivial_canonical_refuses_blowups() {
        let node = BlowupNode::on_curve(Parent::Base(0), 1);
        let err = SurfaceModel::new(
            BaseCase::TrivialCanonical,
            1,
            None,
            points(&[1]),
            vec![node],
        );
        assert_eq!(err, Err(Error::BlowupsForbidden));
        let y = SurfaceModel::minimal(BaseCase::TrivialCanonical, 1).unwrap();
        assert!(y.anticanonical_class().is_zero());
        assert_eq!(
            y.h1_anticanonical(),
            Err(Error::UndefinedForTrivialCanonical)
        );
    }

    #[test]
    fn validate_examples() {
        let y = rational(vec![], &[1, 0]).unwrap();
        assert!(y.validate_poisson_blowup(&BlowupNode::on_curve(Parent::Base(0), 1)));
        assert!(!y.validate_poisson_blowup(&BlowupNode::off_curve(Parent::Base(1))));
        assert!(!y.validate_poisson_blowup(&BlowupNode::on_curve(Parent::Base(1), 1)));
        assert_eq!(
            rational(vec![BlowupNode::off_curve(Parent::Base(1))], &[1, 0]),
            Err(Error::PoissonViolation { node: 0 })
        );
    }

    #[test]
    fn multiplicity_cannot_grow() {
        let nodes = vec![
            BlowupNode::on_curve(Parent::Base(0), 1),
            BlowupNode::on_curve(Parent::Node(0), 2),
        ];
        let y = rational(vec![BlowupNode::on_curve(Parent::Base(0), 1)], &[1]).unwrap();
        assert!(y.validate_poisson_blowup(&nodes[1]));
        assert_eq!(
            rational(nodes, &[1]),
            Err(Error::MultiplicityIncrease {
                node: 1,
                found: 2,
                limit: 1
            })
        );
    }

    #[test]
    fn structural_errors() {
        assert_eq!(
            rational(vec![BlowupNode::on_curve(Parent::Base(4), 1)], &[1]),
            Err(Error::UnknownBasePoint { node: 0, point: 4 })
        );
        assert_eq!(
            rational(vec![BlowupNode::on_curve(Parent::Node(0), 1)], &[1]),
            Err(Error::InvalidParent { node: 0, parent: 0 })
        );
        let twice = vec![
            BlowupNode::on_curve(Parent::Base(0), 1),
            BlowupNode::on_curve(Parent::Base(0), 1),
        ];
        assert_eq!(
            rational(twice, &[1]),
            Err(Error::BasePointReused {
                node: 1,
                point: 0,
                previous: 0
            })
        );
        let inconsistent = BlowupNode {
            parent: Parent::Base(0),
            on_anticanonical: true,
            anticanonical_multiplicity: 0,
        };
        assert!(matches!(
            rational(vec![inconsistent], &[1]),
            Err(Error::InconsistentMultiplicity { .. })
        ));
        assert_eq!(rational(vec![], &[1, 1]).map(|_| ()), Ok(()));
        let dup = vec![
            BasePoint {
                id: 3,
                multiplicity: 1,
            },
            BasePoint {
                id: 3,
                multiplicity: 1,
            },
        ];
        assert_eq!(
            SurfaceModel::new(BaseCase::F2Rational, 0, None, dup, vec![]),
            Err(Error::DuplicateBasePoint(3))
        );
    }

    #[test]
    fn anticanonical_classes() {
        let y = rational(vec![], &[1]).unwrap();
        assert_eq!(
            y.anticanonical_class(),
            DivisorClass {
                s: 2,
                f: 0,
                e: vec![]
            }
        );
        let chain = vec![
            BlowupNode::on_curve(Parent::Base(0), 1),
            BlowupNode::on_curve(Parent::Node(0), 1),
        ];
        let x = rational(chain, &[1]).unwrap();
        assert_eq!(x.anticanonical_class().to_string(), "2s - e1 - e2");
        assert_eq!(x.anticanonical_state().multiplicities, vec![1, 1]);
    }

    #[test]
    fn h1_of_anticanonical_curve() {
        for (g, expected) in [(0, 1), (1, 2), (5, 6)] {
            let y = SurfaceModel::minimal(BaseCase::StandardRuled, g).unwrap();
            assert_eq!(y.h1_anticanonical().unwrap(), expected);
        }
    }

    #[test]
    fn classification_notes() {
        let y =
            SurfaceModel::new(BaseCase::F2Rational, 0, Some(Kodaira::I1), vec![], vec![]).unwrap();
        let r = y.classify_birational_type();
        assert_eq!(
            r.class_label,
            "rational, integral nodal anticanonical; equivalent to I2"
        );
        let r = SurfaceModel::minimal(BaseCase::StandardRuled, 2)
            .unwrap()
            .classify_birational_type();
        assert!(r.notes[0].starts_with("ruling unique; only elementary transformations"));
        let r = SurfaceModel::minimal(BaseCase::TrivialCanonical, 0)
            .unwrap()
            .classify_birational_type();
        assert_eq!(
            r.notes,
            vec!["no nontrivial Poisson birational maps".to_string()]
        );
    }

    #[test]
    fn truncation_keeps_prefix() {
        let chain = vec![
            BlowupNode::on_curve(Parent::Base(0), 1),
            BlowupNode::on_curve(Parent::Node(0), 1),
        ];
        let x = rational(chain, &[1]).unwrap();
        assert_eq!(x.truncated(1).unwrap().n(), 1);
        assert!(x.truncated(3).is_err());
    }
}
