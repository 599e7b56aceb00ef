//! Numerical K-theory classes of sheaves of homological dimension at most 1
//! and their transport along blowups.
//!
//! A class lives on the intermediate surface whose blowup count equals the
//! length of its `c1.e` vector; transport to a surface `X` assumes the
//! forest of `X` extends that intermediate surface's forest.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::picard_lattice::DivisorClass;
use crate::poisson_surface::SurfaceModel;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SheafClass {
    pub rank: u32,
    pub c1: DivisorClass,
    pub chi: i64,
}

impl SheafClass {
    pub fn new(rank: u32, c1: DivisorClass, chi: i64) -> Self {
        SheafClass { rank, c1, chi }
    }

    /// `O_X` on the given surface.
    pub fn structure_sheaf(surface: &SurfaceModel) -> Self {
        SheafClass::new(
            1,
            DivisorClass::zero(surface.n()),
            surface.chi_structure_sheaf(),
        )
    }

    /// Number of blowups of the surface the class lives on.
    pub fn stage(&self) -> usize {
        self.c1.n()
    }

    pub fn is_pure_one_dimensional(&self) -> bool {
        self.rank == 0 && !self.c1.is_zero()
    }

    fn rank_i64(&self) -> i64 {
        i64::from(self.rank)
    }
}

/// `dim Ext^1(O_p, M)` for each blowup of the morphism, in forest order.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LiftDatum(pub Vec<i64>);

impl LiftDatum {
    pub fn zeros(len: usize) -> Self {
        LiftDatum(vec![0; len])
    }

    /// Datum for a two-stage morphism, first stage first.
    pub fn concat(&self, later: &LiftDatum) -> Self {
        LiftDatum(self.0.iter().chain(&later.0).copied().collect())
    }
}

/// `pi^* M`: `c1` is pulled back, rank and `chi` are unchanged since
/// `R pi_* pi^* M = M`.
pub fn pullback_class(m: &SheafClass, x: &SurfaceModel) -> Result<SheafClass> {
    Ok(SheafClass::new(m.rank, m.c1.pulled_back(x.n())?, m.chi))
}

/// `pi^! M = pi^* M (x) omega_{X/Y}`: `c1` gains `rank * e_pi`.
pub fn shriek_class(m: &SheafClass, x: &SurfaceModel) -> Result<SheafClass> {
    let pulled = pullback_class(m, x)?;
    let c1 = &pulled.c1 + &(&x.e_pi_from(m.stage()) * m.rank_i64());
    Ok(SheafClass { c1, ..pulled })
}

/// Class of the minimal lift `pi^{*!} M`: each blowup with
/// `m_i = dim Ext^1(O_{p_i}, M)` subtracts `m_i [O_e(-1)]`, which only moves
/// `c1` by `-m_i e_i`.
pub fn minimal_lift_class(
    m: &SheafClass,
    datum: &LiftDatum,
    x: &SurfaceModel,
) -> Result<SheafClass> {
    let mut lifted = pullback_class(m, x)?;
    let from = m.stage();
    let expected = x.n() - from;
    if datum.0.len() != expected {
        return Err(Error::LiftDatumLength {
            expected,
            found: datum.0.len(),
        });
    }
    for (k, &mult) in datum.0.iter().enumerate() {
        if mult < 0 {
            return Err(Error::NegativeLiftDatum {
                index: k,
                value: mult,
            });
        }
        lifted.c1.e[from + k] -= mult;
    }
    Ok(lifted)
}

/// `M (x) L(D)` by Riemann–Roch:
/// `chi += c1.D + rank (D^2 - D.K) / 2`.
pub fn twist_class(m: &SheafClass, d: &DivisorClass, x: &SurfaceModel) -> Result<SheafClass> {
    x.check_class(&m.c1)?;
    let d_sq = x.self_intersection(d)?;
    let d_k = x.intersect(d, &x.canonical_class())?;
    if (d_sq - d_k) % 2 != 0 {
        return Err(Error::ParityViolation(d.to_string()));
    }
    let chi = m.chi + x.intersect(&m.c1, d)? + m.rank_i64() * (d_sq - d_k) / 2;
    Ok(SheafClass::new(m.rank, &m.c1 + &(d * m.rank_i64()), chi))
}

/// `dim Hom(N, M) - dim Ext^1(N, M) + dim Ext^2(N, M)` from
/// Hirzebruch–Riemann–Roch:
///
/// ```text
/// -chi(O) r_M r_N + chi(M) r_N + r_M chi(N) - c1(M).c1(N) + r_M K.c1(N)
/// ```
pub fn ext_euler(m: &SheafClass, n: &SheafClass, x: &SurfaceModel) -> Result<i64> {
    let (rm, rn) = (m.rank_i64(), n.rank_i64());
    Ok(
        -x.chi_structure_sheaf() * rm * rn + m.chi * rn + rm * n.chi - x.intersect(&m.c1, &n.c1)?
            + rm * x.intersect(&x.canonical_class(), &n.c1)?,
    )
}
