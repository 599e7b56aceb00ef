//! α-twisted Euler characteristic, index of rigidity and the numerical side
//! of the (-2)-curve rigidity criterion.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kclass::{ext_euler, SheafClass};
use crate::poisson_surface::SurfaceModel;
use crate::pseudo_twist::{check_sites, JetProfile};

/// What is known about the derived restrictions `M|C_alpha`, `N|C_alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RestrictionData {
    /// Both supports miss `C_alpha`; no correction.
    Disjoint,
    /// Rank 0 sheaves meeting `C_alpha` transversally in jets. `Tor_1`
    /// vanishes, so only the `Hom` term contributes.
    TransverseJets { m: JetProfile, n: JetProfile },
    /// Caller-supplied `dim Ext^0` and `dim Ext^-1` of the restrictions.
    Explicit { hom_dim: i64, ext_minus1_dim: i64 },
}

impl RestrictionData {
    pub fn jets_self(profile: JetProfile) -> Self {
        RestrictionData::TransverseJets {
            m: profile.clone(),
            n: profile,
        }
    }

    pub fn swapped(&self) -> Self {
        match self {
            RestrictionData::TransverseJets { m, n } => RestrictionData::TransverseJets {
                m: n.clone(),
                n: m.clone(),
            },
            other => other.clone(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            RestrictionData::Disjoint => "disjoint",
            RestrictionData::TransverseJets { .. } => "transverse_jets",
            RestrictionData::Explicit { .. } => "explicit",
        }
    }
}

fn check_jets(class: &SheafClass, jets: &JetProfile, x: &SurfaceModel) -> Result<()> {
    check_sites(jets, x)?;
    let expected = x.intersect(&class.c1, &x.anticanonical_class())?;
    if jets.total_length() != expected {
        return Err(Error::JetLengthMismatch {
            total: jets.total_length(),
            expected,
        });
    }
    Ok(())
}

/// `chi_alpha(M, N) = chi(N, M) + dim Ext^0(M|, N|) - dim Ext^-1(M|, N|)`.
pub fn chi_alpha(
    m: &SheafClass,
    n: &SheafClass,
    restriction: &RestrictionData,
    x: &SurfaceModel,
) -> Result<i64> {
    let base = ext_euler(m, n, x)?;
    let (hom, ext_minus1) = match restriction {
        RestrictionData::Disjoint => (0, 0),
        RestrictionData::TransverseJets { m: jm, n: jn } => {
            if m.rank != 0 || n.rank != 0 {
                return Err(Error::RestrictionNeedsRankZero("transverse_jets"));
            }
            check_jets(m, jm, x)?;
            check_jets(n, jn, x)?;
            (jm.hom_dim(jn), 0)
        }
        RestrictionData::Explicit {
            hom_dim,
            ext_minus1_dim,
        } => (*hom_dim, *ext_minus1_dim),
    };
    Ok(base + hom - ext_minus1)
}

pub fn index_of_rigidity(
    m: &SheafClass,
    restriction: &RestrictionData,
    x: &SurfaceModel,
) -> Result<i64> {
    chi_alpha(m, m, restriction, x)
}

/// Dimension of the tangent space to the symplectic leaf through `M`:
/// `2 dim End(M) - chi_alpha(M, M)`.
pub fn leaf_tangent_dim(
    m: &SheafClass,
    restriction: &RestrictionData,
    dim_end: u32,
    x: &SurfaceModel,
) -> Result<u32> {
    if dim_end == 0 {
        return Err(Error::ZeroEndomorphisms);
    }
    let index = index_of_rigidity(m, restriction, x)?;
    let dim = 2 * i64::from(dim_end) - index;
    u32::try_from(dim).map_err(|_| Error::NegativeLeafDimension { dim_end, index })
}

pub const SUPPORT_ASSUMPTION: &str =
    "rigidity additionally needs an integral Fitting support; this is assumed, not verified";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub chi_alpha: i64,
    pub c1_square: i64,
    pub c1_dot_k: i64,
    pub numeric_rigid: bool,
    pub coeff_bound: i64,
    pub in_minus_two_enumeration: bool,
    pub assumption: &'static str,
}

/// Numerical rigidity test for a rank 0 sheaf whose support misses
/// `C_alpha`: rigid classes are exactly those with `c1^2 = -2` (and
/// `c1.K = 0`, forced by disjointness).
pub fn is_rigid_candidate(
    m: &SheafClass,
    restriction: &RestrictionData,
    x: &SurfaceModel,
    coeff_bound: i64,
) -> Result<RigidityReport> {
    if m.rank != 0 {
        return Err(Error::RankNonzero(m.rank));
    }
    if *restriction != RestrictionData::Disjoint {
        return Err(Error::NotDisjoint(format!(
            "restriction data `{}`",
            restriction.kind()
        )));
    }
    let c1_dot_k = x.intersect(&m.c1, &x.canonical_class())?;
    if c1_dot_k != 0 {
        return Err(Error::NotDisjoint(m.c1.to_string()));
    }
    let chi_alpha = index_of_rigidity(m, restriction, x)?;
    Ok(RigidityReport {
        chi_alpha,
        c1_square: x.self_intersection(&m.c1)?,
        c1_dot_k,
        numeric_rigid: chi_alpha == 2,
        coeff_bound,
        in_minus_two_enumeration: x.is_minus_two_class(&m.c1, coeff_bound)?,
        assumption: SUPPORT_ASSUMPTION,
    })
}
