//! Shared generators and independent oracles for the integration tests.

#![allow(dead_code)]

use pbc_core::picard_lattice::{BlowupNode, DivisorClass, Parent};
use pbc_core::poisson_surface::{BaseCase, BasePoint, SurfaceModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Base seed, overridable with `PBC_SEED`.
pub fn seed() -> u64 {
    std::env::var("PBC_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// An independent stream per test so that adding a test never reshuffles
/// another.
pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed());
    r.set_stream(stream);
    r
}

/// A random Poisson blowup of F2 with `n` blowups. Base points carry
/// multiplicity 1 or 2; every center sits on the anticanonical curve with a
/// multiplicity no larger than that of the point below it.
pub fn random_surface(rng: &mut impl Rng, n: usize) -> SurfaceModel {
    let points: Vec<BasePoint> = (0..n as u32)
        .map(|id| BasePoint {
            id,
            multiplicity: rng.gen_range(1..=2),
        })
        .collect();
    let mut x = SurfaceModel::new(BaseCase::F2Rational, 0, None, points.clone(), vec![]).unwrap();
    let mut next_base = 0u32;
    for i in 0..n {
        let parent = if i == 0 || rng.gen_bool(0.5) {
            next_base += 1;
            Parent::Base(next_base - 1)
        } else {
            Parent::Node(rng.gen_range(0..i))
        };
        let limit = match parent {
            Parent::Base(id) => points[id as usize].multiplicity,
            Parent::Node(j) => x.forest().node(j).unwrap().anticanonical_multiplicity,
        };
        let node = BlowupNode::on_curve(parent, rng.gen_range(1..=limit));
        x = x.with_blowup(node).unwrap();
    }
    x
}

pub fn random_divisor(rng: &mut impl Rng, n: usize, bound: i64) -> DivisorClass {
    DivisorClass {
        s: rng.gen_range(-bound..=bound),
        f: rng.gen_range(-bound..=bound),
        e: (0..n).map(|_| rng.gen_range(-bound..=bound)).collect(),
    }
}

/// Closed form of `f_dual` for parent-only proximity: the sum of `e_j` over
/// the path from the root of `f`'s tree down to `f`.
pub fn path_dual(x: &SurfaceModel, f: usize) -> DivisorClass {
    let mut e = vec![0; x.n()];
    let mut cur = Some(f);
    while let Some(j) = cur {
        e[j] = 1;
        cur = match x.forest().node(j).unwrap().parent {
            Parent::Node(p) => Some(p),
            Parent::Base(_) => None,
        };
    }
    DivisorClass::from_exceptional(e)
}

/// Brute-force count of effective `(-1)`-classes: exceptional-supported
/// vectors with a single `+-1` entry, kept when all component coordinates
/// (partial path sums) are non-negative.
pub fn brute_force_minus_one(x: &SurfaceModel) -> Vec<DivisorClass> {
    let n = x.n();
    let mut out = Vec::new();
    for i in 0..n {
        for sign in [-1, 1] {
            let mut d = DivisorClass::zero(n);
            d.e[i] = sign;
            let coords: Vec<i64> = (0..n)
                .map(|k| path_dual(x, k).e.iter().zip(&d.e).map(|(a, b)| a * b).sum())
                .collect();
            if coords.iter().all(|&c| c >= 0) {
                out.push(d);
            }
        }
    }
    out.sort();
    out
}
