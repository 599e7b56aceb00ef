//! Pseudo-twists of numerical sheaf classes and the blowup/pseudo-twist
//! loop that separates a transverse 1-dimensional sheaf from the
//! anticanonical curve.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kclass::{minimal_lift_class, twist_class, LiftDatum, SheafClass};
use crate::picard_lattice::{BlowupNode, ExceptionalComponent, Parent};
use crate::poisson_surface::SurfaceModel;
use crate::rigidity::{index_of_rigidity, RestrictionData};

/// A point where a sheaf meets the anticanonical curve: a base point, or a
/// point of `C_alpha` on an exceptional curve.
pub type JetSite = Parent;

/// Local intersection lengths of a transverse pure 1-dimensional sheaf with
/// `C_alpha`, one jet per site, sorted by site.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct JetProfile {
    entries: Vec<(JetSite, u32)>,
}

impl JetProfile {
    pub fn new(mut entries: Vec<(JetSite, u32)>) -> Result<Self> {
        entries.sort();
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateJetSite(w[0].0.to_string()));
            }
        }
        if let Some((site, _)) = entries.iter().find(|(_, a)| *a == 0) {
            return Err(Error::EmptyJet(site.to_string()));
        }
        Ok(JetProfile { entries })
    }

    pub fn empty() -> Self {
        JetProfile::default()
    }

    pub fn entries(&self) -> &[(JetSite, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_length(&self) -> i64 {
        self.entries.iter().map(|&(_, a)| i64::from(a)).sum()
    }

    pub fn length_at(&self, site: JetSite) -> u32 {
        self.entries
            .binary_search_by_key(&site, |&(s, _)| s)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    /// `dim Hom` between the restrictions to `C_alpha`: jets at a common site
    /// contribute `min(a, b)`.
    pub fn hom_dim(&self, other: &JetProfile) -> i64 {
        self.entries
            .iter()
            .map(|&(site, a)| i64::from(a.min(other.length_at(site))))
            .sum()
    }

    /// Longest jet, lowest site on ties.
    fn longest(&self) -> Option<(JetSite, u32)> {
        self.entries
            .iter()
            .copied()
            .reduce(|best, cur| if cur.1 > best.1 { cur } else { best })
    }

    fn replace(&mut self, site: JetSite, new: Option<(JetSite, u32)>) {
        self.entries.retain(|&(s, _)| s != site);
        if let Some(entry) = new {
            self.entries.push(entry);
            self.entries.sort();
        }
    }
}

impl Serialize for JetProfile {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Jet {
            site: String,
            length: u32,
        }
        serializer.collect_seq(self.entries.iter().map(|&(site, length)| Jet {
            site: site.to_string(),
            length,
        }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistDirection {
    Up,
    Down,
}

fn check_lift(
    m: &SheafClass,
    lift: &SheafClass,
    f: &ExceptionalComponent,
    x: &SurfaceModel,
) -> Result<()> {
    x.check_class(&lift.c1)?;
    if m.stage() > x.n() {
        return Err(Error::StageMismatch {
            found: m.stage(),
            target: x.n(),
        });
    }
    if lift.rank != m.rank || lift.chi != m.chi {
        return Err(Error::InconsistentLift(format!(
            "lift has (rank, chi) = ({}, {}), class has ({}, {})",
            lift.rank, lift.chi, m.rank, m.chi
        )));
    }
    if f.index < m.stage() || f.index >= x.n() {
        return Err(Error::InconsistentLift(format!(
            "f{} is not contracted by the morphism from blowup {} on",
            f.index + 1,
            m.stage() + 1
        )));
    }
    Ok(())
}

/// `M -> pi_*(pi^{*!} M (x) L(e_f))`, cokernel `O_p^{r1}` with
/// `r1 = c1(pi^{*!} M) . e_f`. Returns the new class on `Y` and `r1`.
pub fn pseudo_twist_up(
    m: &SheafClass,
    lift: &SheafClass,
    f: &ExceptionalComponent,
    x: &SurfaceModel,
) -> Result<(SheafClass, i64)> {
    check_lift(m, lift, f, x)?;
    let r1 = x.intersect(&lift.c1, &f.class_e_f)?;
    if r1 < 0 {
        return Err(Error::NegativeLength {
            name: "r1",
            value: r1,
        });
    }
    Ok((
        SheafClass {
            chi: m.chi + r1,
            ..m.clone()
        },
        r1,
    ))
}

/// `pi_*(pi^{*!} M (x) L(-e_f)) -> M`, cokernel `O_p^{r2}` with
/// `r2 = c1(pi^{*!} M) . e_f + rank(M)`.
pub fn pseudo_twist_down(
    m: &SheafClass,
    lift: &SheafClass,
    f: &ExceptionalComponent,
    x: &SurfaceModel,
) -> Result<(SheafClass, i64)> {
    check_lift(m, lift, f, x)?;
    let r2 = x.intersect(&lift.c1, &f.class_e_f)? + i64::from(m.rank);
    if r2 < 0 {
        return Err(Error::NegativeLength {
            name: "r2",
            value: r2,
        });
    }
    Ok((
        SheafClass {
            chi: m.chi - r2,
            ..m.clone()
        },
        r2,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionStep {
    /// Site that was blown up.
    pub site: JetSite,
    /// 0-based index of the new blowup.
    pub node_index: usize,
    pub node: BlowupNode,
    pub direction: TwistDirection,
    pub r_value: i64,
    /// Pseudo-twisted class on the surface before this blowup.
    pub twisted: SheafClass,
    /// Minimal lift of `twisted` on the surface after this blowup; the input
    /// to the next step.
    pub lift: SheafClass,
    pub jets: JetProfile,
    pub index_of_rigidity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionTrace {
    pub initial_class: SheafClass,
    pub initial_jets: JetProfile,
    pub initial_index_of_rigidity: i64,
    pub steps: Vec<ResolutionStep>,
    pub final_class: SheafClass,
    pub final_surface: SurfaceModel,
}

impl ResolutionTrace {
    /// `c1 . C_alpha` of the final class; zero once disjointness is reached.
    pub fn final_anticanonical_degree(&self) -> i64 {
        self.final_surface
            .intersect(
                &self.final_class.c1,
                &self.final_surface.anticanonical_class(),
            )
            .expect("final class lives on the final surface")
    }
}

/// Checks that every jet site is a point of `C_alpha` on `x`; a base point
/// that has been blown up is no longer a point of `x`.
pub fn check_sites(jets: &JetProfile, x: &SurfaceModel) -> Result<()> {
    for &(site, _) in jets.entries() {
        let on_curve = match site {
            Parent::Base(id) => {
                x.base_point(id).is_some_and(|p| p.multiplicity >= 1)
                    && !x.forest().nodes().iter().any(|n| n.parent == site)
            }
            Parent::Node(j) => x
                .forest()
                .node(j)
                .is_some_and(|n| n.anticanonical_multiplicity >= 1),
        };
        if !on_curve {
            return Err(Error::NotTransverse(site.to_string()));
        }
    }
    Ok(())
}

/// Repeatedly blows up the site of the longest jet, lifts minimally, and
/// applies the downward pseudo-twist along the new exceptional curve until
/// the sheaf no longer meets `C_alpha`.
///
/// Each step blows up a reduced point of the intersection (`m = 1`), so the
/// jet of length `a` becomes a jet of length `a - 1` at the point of the new
/// exceptional curve on the strict transform of `C_alpha`. The loop runs
/// exactly `sum a_i = c1 . C_alpha` times.
pub fn resolve_disjoint(
    m: &SheafClass,
    jets: &JetProfile,
    surface: &SurfaceModel,
) -> Result<ResolutionTrace> {
    if m.rank != 0 {
        return Err(Error::RankNonzero(m.rank));
    }
    surface.check_class(&m.c1)?;
    check_sites(jets, surface)?;
    let expected = surface.intersect(&m.c1, &surface.anticanonical_class())?;
    if jets.total_length() != expected {
        return Err(Error::JetLengthMismatch {
            total: jets.total_length(),
            expected,
        });
    }

    let initial_index = index_of_rigidity(m, &RestrictionData::jets_self(jets.clone()), surface)?;
    let mut current = m.clone();
    let mut profile = jets.clone();
    let mut x = surface.clone();
    let mut steps = Vec::new();

    while let Some((site, length)) = profile.longest() {
        let node = BlowupNode::on_curve(site, 1);
        let next = x.with_blowup(node.clone())?;
        let k = x.n();
        let lift = minimal_lift_class(&current, &LiftDatum(vec![1]), &next)?;
        let component = next.exceptional_component(k)?;
        let (twisted, r2) = pseudo_twist_down(&current, &lift, &component, &next)?;
        // minimal lift of the twisted class: pi^{*!}M (x) L(-e)
        let twisted_lift = twist_class(&lift, &-&component.class_e_f, &next)?;
        debug_assert_eq!(twisted_lift.chi, twisted.chi);

        let residual = (length > 1).then_some((Parent::Node(k), length - 1));
        profile.replace(site, residual);
        let index = index_of_rigidity(
            &twisted_lift,
            &RestrictionData::jets_self(profile.clone()),
            &next,
        )?;
        steps.push(ResolutionStep {
            site,
            node_index: k,
            node,
            direction: TwistDirection::Down,
            r_value: r2,
            twisted,
            lift: twisted_lift.clone(),
            jets: profile.clone(),
            index_of_rigidity: index,
        });
        current = twisted_lift;
        x = next;
    }

    Ok(ResolutionTrace {
        initial_class: m.clone(),
        initial_jets: jets.clone(),
        initial_index_of_rigidity: initial_index,
        steps,
        final_class: current,
        final_surface: x,
    })
}
