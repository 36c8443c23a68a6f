//! Dense linear algebra over the fraction field of the torus ring.

use crate::error::{QloopError, Result};
use crate::qring::{RationalScalar, TorusScalar};

pub type Matrix = Vec<Vec<RationalScalar>>;

pub fn identity(n: usize, rank: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { RationalScalar::one(rank) } else { RationalScalar::zero(rank) })
                .collect()
        })
        .collect()
}

pub fn from_torus(m: &[Vec<TorusScalar>]) -> Matrix {
    m.iter().map(|r| r.iter().cloned().map(RationalScalar::from_torus).collect()).collect()
}

/// Entries as Laurent polynomials, failing on a genuine fraction.
pub fn to_torus(m: &Matrix, what: &str) -> Result<Vec<Vec<TorusScalar>>> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    x.to_torus()
                        .ok_or_else(|| QloopError::Integrality(format!("{what}: entry {x} is not a Laurent polynomial")))
                })
                .collect()
        })
        .collect()
}

pub fn mul(a: &Matrix, b: &Matrix, rank: usize) -> Matrix {
    let (n, k) = (a.len(), b.first().map_or(0, Vec::len));
    (0..n)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let mut acc = RationalScalar::zero(rank);
                    for (l, x) in a[i].iter().enumerate() {
                        if !x.is_zero() && !b[l][j].is_zero() {
                            acc = &acc + &(x * &b[l][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Solve `a·x = b` by Gauss–Jordan elimination; `a` must be square and invertible.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let mut m: Vec<Vec<RationalScalar>> = a.iter().zip(b).map(|(r, s)| r.iter().chain(s).cloned().collect()).collect();
    let width = m.first().map_or(0, Vec::len);
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| QloopError::Dimension(format!("singular matrix at column {col}")))?;
        m.swap(col, piv);
        let inv = m[col][col].inverse();
        m[col] = m[col].iter().map(|x| x * &inv).collect();
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..width {
                if !m[col][c].is_zero() {
                    m[r][c] = &m[r][c] - &(&f * &m[col][c]);
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn inverse(a: &Matrix, rank: usize) -> Result<Matrix> {
    solve(a, &identity(a.len(), rank))
}

pub fn determinant(a: &Matrix, rank: usize) -> RationalScalar {
    let n = a.len();
    let mut m = a.clone();
    let mut det = RationalScalar::one(rank);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return RationalScalar::zero(rank);
        };
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        det = &det * &m[col][col];
        let inv = m[col][col].inverse();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                if !m[col][c].is_zero() {
                    m[r][c] = &m[r][c] - &(&f * &m[col][c]);
                }
            }
        }
    }
    det
}
