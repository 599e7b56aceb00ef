//! Exact solves of small integer linear systems.

use num_rational::Ratio;

use crate::error::{Error, Result};

type Q = Ratio<i128>;

/// Solves `matrix * x = rhs` over the rationals and returns `x` when it is
/// integral. `matrix` is square and given row by row.
pub fn solve_integral(matrix: &[Vec<i64>], rhs: &[i64]) -> Result<Vec<i64>> {
    let n = matrix.len();
    assert_eq!(rhs.len(), n, "right hand side has wrong length");
    let mut rows: Vec<Vec<Q>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            assert_eq!(row.len(), n, "matrix is not square");
            row.iter()
                .map(|&a| Q::from_integer(a.into()))
                .chain(std::iter::once(Q::from_integer(b.into())))
                .collect()
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| rows[r][col] != Q::from_integer(0))
            .ok_or(Error::SingularSystem)?;
        rows.swap(col, pivot);
        let p = rows[col][col];
        for v in rows[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = rows[r][col];
            if factor == Q::from_integer(0) {
                continue;
            }
            let pivot_row = rows[col].clone();
            for (cell, &p) in rows[r].iter_mut().zip(&pivot_row).skip(col) {
                *cell -= factor * p;
            }
        }
    }

    rows.iter()
        .map(|row| {
            let v = row[n];
            if v.is_integer() {
                i64::try_from(v.to_integer()).map_err(|_| Error::SingularSystem)
            } else {
                Err(Error::NonIntegral(format!("{v}")))
            }
        })
        .collect()
}
