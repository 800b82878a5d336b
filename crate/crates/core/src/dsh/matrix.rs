//! Small integer matrices, the elements `P_n`, `w_{n,0}`, `ε_n`, `Q_n`, and
//! the embedding `ι_n : S_{n+1} → GL_n(Z)`.
//!
//! `GL_n(Z)` acts on polynomials from the right by `f|_γ(x) = f(x γ^{-1})`,
//! with `x` a row vector.

use std::fmt;
use std::ops::Mul;

use crate::dsh::perm::Perm;
use crate::dsh::poly::MultiPoly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    a: Vec<i64>,
}

impl IntMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut a = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                a.push(f(i, j));
            }
        }
        IntMatrix { n, a }
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "square matrix expected");
        Self::from_fn(n, |i, j| rows[i][j])
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| (i == j) as i64)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_fn(self.n, |i, j| c * self.get(i, j))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> i64 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let mut m: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j) as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                let Some(r) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                    return 0;
                };
                m.swap(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        (sign * m[n - 1][n - 1]) as i64
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    /// Inverse of a unimodular matrix via the adjugate.
    pub fn inverse(&self) -> Result<IntMatrix> {
        let d = self.det();
        if d.abs() != 1 {
            return Err(Error::NotUnimodular(d.to_string()));
        }
        let n = self.n;
        if n == 1 {
            return Ok(Self::from_fn(1, |_, _| d));
        }
        Ok(Self::from_fn(n, |i, j| {
            // (A^{-1})_{ij} = (-1)^{i+j} M_{ji} / det
            let minor = Self::from_fn(n - 1, |r, c| {
                let rr = if r < j { r } else { r + 1 };
                let cc = if c < i { c } else { c + 1 };
                self.get(rr, cc)
            });
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            s * minor.det() * d
        }))
    }

    /// `w_σ` with `(i,j)` entry `δ_{i,σ(j)}`.
    pub fn permutation(sigma: &Perm) -> IntMatrix {
        Self::from_fn(sigma.len(), |i, j| (sigma.apply(j) == i) as i64)
    }

    /// Upper triangular all-ones matrix.
    pub fn p(n: usize) -> IntMatrix {
        Self::from_fn(n, |i, j| (i <= j) as i64)
    }

    /// Anti-diagonal ones.
    pub fn w0(n: usize) -> IntMatrix {
        Self::from_fn(n, |i, j| (i + j + 1 == n) as i64)
    }

    pub fn eps(n: usize) -> IntMatrix {
        Self::identity(n).scale(-1)
    }

    /// First row all `-1`, ones on the subdiagonal.
    pub fn q(n: usize) -> IntMatrix {
        Self::from_fn(n, |i, j| if i == 0 { -1 } else { (j + 1 == i) as i64 })
    }

    /// `f|_γ(x) = f(x γ^{-1})`.
    pub fn act(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if f.nvars() != self.n {
            return Err(Error::Dimension(format!(
                "{}x{} matrix on a polynomial in {} variables",
                self.n,
                self.n,
                f.nvars()
            )));
        }
        let inv = self.inverse()?;
        // (x γ^{-1})_j = Σ_i x_i (γ^{-1})_{ij}
        let images: Vec<MultiPoly> = (0..self.n)
            .map(|j| MultiPoly::linear(&(0..self.n).map(|i| inv.get(i, j)).collect::<Vec<_>>()))
            .collect();
        Ok(f.substitute(&images))
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n, "size mismatch");
        IntMatrix::from_fn(self.n, |i, j| {
            (0..self.n).map(|k| self.get(i, k) * other.get(k, j)).sum()
        })
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| format!("{:>3}", self.get(i, j)))
                .collect();
            writeln!(f, "[{}]", row.join(""))?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `ι_n(σ)` for `σ ∈ S_{n+1}`, from the action on `{a ∈ Z^{n+1} : Σ a_i = 0}`
/// in the basis `e_j - e_{n+1}`: column `j` holds the first `n` coordinates
/// of `e_{σ(j)} - e_{σ(n+1)}`.
pub fn iota(sigma: &Perm) -> IntMatrix {
    let n = sigma.len() - 1;
    let last = sigma.apply(n);
    IntMatrix::from_fn(n, |i, j| {
        let a = (sigma.apply(j) == i) as i64;
        let b = (last == i) as i64;
        a - b
    })
}
