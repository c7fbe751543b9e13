use num_traits::{One, Zero};

use super::{ExpPoly, LieAlgebra, LieError};
use crate::linalg::{self, Matrix};
use crate::symexpr::{qi, Q};

/// `exp(-s ad v)` with ExpPoly entries; `entries[k][j]` is the `Y_k`
/// component of `Ad(exp(s v)) Y_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointMatrix {
    pub entries: Vec<Vec<ExpPoly>>,
}

impl AdjointMatrix {
    pub fn column(&self, j: usize) -> Vec<ExpPoly> {
        self.entries.iter().map(|row| row[j].clone()).collect()
    }

    pub fn apply(&self, w: &[Q]) -> Vec<ExpPoly> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(w)
                    .fold(ExpPoly::zero(), |acc, (e, c)| &acc + &e.scale(c))
            })
            .collect()
    }

    pub fn at_zero(&self) -> Matrix {
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| e.at_zero()).collect())
            .collect()
    }

    pub fn derivative(&self) -> AdjointMatrix {
        AdjointMatrix {
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|e| e.derivative()).collect())
                .collect(),
        }
    }
}

fn mat_pow(a: &Matrix, k: usize) -> Matrix {
    (0..k).fold(linalg::identity(a.len()), |acc, _| linalg::mat_mul(&acc, a))
}

fn shift(a: &Matrix, mu: &Q) -> Matrix {
    linalg::add_scaled(a, &linalg::identity(a.len()), &-mu.clone())
}

/// Exact `exp(s A)` through the spectral decomposition of `A`.
pub fn exp_matrix(a: &Matrix) -> Result<Vec<Vec<ExpPoly>>, LieError> {
    let n = a.len();
    let roots =
        linalg::rational_roots(&linalg::charpoly(a)).ok_or(LieError::NonRationalSpectrum)?;
    // generalized eigenspaces, concatenated as columns of V
    let mut cols: Vec<Vec<Q>> = Vec::new();
    let mut blocks = Vec::new();
    for (mu, m) in &roots {
        let k = linalg::nullspace(&mat_pow(&shift(a, mu), *m), n);
        blocks.push((cols.len(), cols.len() + k.len()));
        cols.extend(k);
    }
    assert_eq!(cols.len(), n, "generalized eigenspaces span the space");
    let v: Matrix = (0..n)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let vinv = linalg::inverse(&v).expect("eigenbasis is invertible");
    let mut out = vec![vec![ExpPoly::zero(); n]; n];
    for ((mu, m), (lo, hi)) in roots.iter().zip(blocks) {
        let mut d = linalg::zeros(n, n);
        for (i, row) in d.iter_mut().enumerate().take(hi).skip(lo) {
            row[i] = Q::one();
        }
        let proj = linalg::mat_mul(&linalg::mat_mul(&v, &d), &vinv);
        let nil = shift(a, mu);
        let mut term = proj;
        let mut fact = Q::one();
        for k in 0..*m {
            if k > 0 {
                term = linalg::mat_mul(&nil, &term);
                fact *= qi(k as i64);
            }
            for r in 0..n {
                for c in 0..n {
                    if !term[r][c].is_zero() {
                        let e = ExpPoly::term(&term[r][c] / &fact, k as u32, mu.clone());
                        out[r][c] = &out[r][c] + &e;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `Ad(exp(s v))` for a coefficient vector `v`.
pub fn adjoint_matrix(alg: &LieAlgebra, v: &[Q]) -> Result<AdjointMatrix, LieError> {
    let a: Matrix = alg
        .ad(v)
        .iter()
        .map(|r| r.iter().map(|x| -x.clone()).collect())
        .collect();
    Ok(AdjointMatrix {
        entries: exp_matrix(&a)?,
    })
}

/// `Ad(exp(s Y_i)) Y_j` as a coefficient vector.
pub fn adjoint_action(alg: &LieAlgebra, i: usize, j: usize) -> Result<Vec<ExpPoly>, LieError> {
    Ok(adjoint_matrix(alg, &alg.unit(i))?.column(j))
}
