//! Bounded enumeration of integer vectors of fixed Euclidean norm.
//!
//! The exceptional part of the lattice is `-I` in the `e_i` basis, so vectors
//! of a given square are exactly integer points on a sphere. The search walks
//! coordinates left to right, pruning on the remaining norm and, when a
//! coordinate sum is prescribed, on Cauchy-Schwarz feasibility of the tail.

/// All `v` in `[-bound, bound]^dim` with `sum v_i^2 == norm` (and
/// `sum v_i == sum` when given), in lexicographic order.
pub fn fixed_norm_vectors(dim: usize, norm: i64, bound: i64, sum: Option<i64>) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if norm < 0 || bound < 0 {
        return out;
    }
    let mut current = Vec::with_capacity(dim);
    walk(dim, norm, bound, sum, &mut current, &mut out);
    out
}

fn walk(
    remaining_dims: usize,
    remaining_norm: i64,
    bound: i64,
    remaining_sum: Option<i64>,
    current: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if remaining_dims == 0 {
        if remaining_norm == 0 && remaining_sum.is_none_or(|s| s == 0) {
            out.push(current.clone());
        }
        return;
    }
    if let Some(s) = remaining_sum {
        // (sum of tail)^2 <= dims * (norm of tail)
        if s.unsigned_abs() as u128 * s.unsigned_abs() as u128
            > remaining_dims as u128 * remaining_norm as u128
        {
            return;
        }
        if s.unsigned_abs() > remaining_dims as u64 * bound as u64 {
            return;
        }
    }
    let reach = isqrt(remaining_norm).min(bound);
    for c in -reach..=reach {
        current.push(c);
        walk(
            remaining_dims - 1,
            remaining_norm - c * c,
            bound,
            remaining_sum.map(|s| s - c),
            current,
            out,
        );
        current.pop();
    }
}

fn isqrt(v: i64) -> i64 {
    let mut r = (v as f64).sqrt() as i64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}
