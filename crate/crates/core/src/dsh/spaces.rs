//! The linearized double shuffle spaces `D_{n,d}` and related subspaces of
//! homogeneous polynomials, computed as exact kernels of linear conditions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::dsh::matrix::IntMatrix;
use crate::dsh::nullspace::{nullspace, same_span, PivotOrder};
use crate::dsh::perm::{shuffle_set, Perm};
use crate::dsh::poly::{diagonal_translation_invariant, monomials, MultiPoly};
use crate::error::{Error, Result};

/// Kernel of a linear map on the span of `ansatz`, returned as primitive
/// integral combinations of the ansatz.
pub fn kernel_on<F>(ansatz: &[MultiPoly], map: F, order: PivotOrder) -> Vec<MultiPoly>
where
    F: Fn(&MultiPoly) -> Vec<MultiPoly> + Sync,
{
    let (rows, ncols) = condition_matrix(ansatz, &map);
    combine(ansatz, &nullspace(&rows, ncols, order))
}

fn combine(ansatz: &[MultiPoly], vectors: &[Vec<BigInt>]) -> Vec<MultiPoly> {
    let nvars = ansatz.first().map_or(0, MultiPoly::nvars);
    vectors
        .iter()
        .map(|v| {
            let mut f = MultiPoly::zero(nvars);
            for (c, a) in v.iter().zip(ansatz) {
                if !c.is_zero() {
                    f = &f + &a.scale(&BigRational::from_integer(c.clone()));
                }
            }
            f
        })
        .collect()
}

/// Integer matrix whose columns are the coefficient vectors of the images.
fn condition_matrix<F>(ansatz: &[MultiPoly], map: &F) -> (Vec<Vec<BigInt>>, usize)
where
    F: Fn(&MultiPoly) -> Vec<MultiPoly> + Sync,
{
    let images: Vec<Vec<MultiPoly>> = ansatz.par_iter().map(map).collect();
    let ncols = ansatz.len();
    let mut rows: BTreeMap<(usize, Vec<u32>), Vec<BigRational>> = BTreeMap::new();
    for (col, imgs) in images.iter().enumerate() {
        for (which, img) in imgs.iter().enumerate() {
            for (e, c) in img.terms() {
                rows.entry((which, e.clone()))
                    .or_insert_with(|| vec![BigRational::zero(); ncols])[col] = c.clone();
            }
        }
    }
    let int_rows = rows
        .into_values()
        .map(|r| {
            let lcm = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter()
                .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect();
    (int_rows, ncols)
}

fn monomial_basis(n: usize, d: u32) -> Vec<MultiPoly> {
    monomials(n, d)
        .into_iter()
        .map(|e| MultiPoly::monomial(e, BigRational::one()))
        .collect()
}

fn permutation_action(f: &MultiPoly, sigma: &Perm) -> MultiPoly {
    // f|_σ(x) = f(x_{σ^{-1}(1)}, …, x_{σ^{-1}(n)})
    f.permute_args(sigma.inverse().images())
}

/// The conditions `f|_{sh_{n,i}}` and `f|_{P^{-1} sh_{n,i}}` for `1 ≤ i ≤ n-1`.
pub fn double_shuffle_conditions(f: &MultiPoly) -> Vec<MultiPoly> {
    let n = f.nvars();
    let p_inv = IntMatrix::p(n).inverse().expect("unimodular");
    let g = p_inv.act(f).expect("square");
    let mut out = Vec::new();
    for i in 1..n {
        let set = shuffle_set(n, i);
        let mut a = MultiPoly::zero(n);
        let mut b = MultiPoly::zero(n);
        for sigma in &set {
            a = &a + &permutation_action(f, sigma);
            // f|_{P^{-1} w_σ} = (f|_{P^{-1}})|_{w_σ}
            b = &b + &permutation_action(&g, sigma);
        }
        out.push(a);
        out.push(b);
    }
    out
}

/// Basis of `D_{n,d}`.
pub fn compute_d(n: usize, d: u32, order: PivotOrder) -> Vec<MultiPoly> {
    kernel_on(&monomial_basis(n, d), double_shuffle_conditions, order)
}

/// `(f(x_2-x_1,…,x_{n+1}-x_1) - f(x_2,…,x_{n+1})) / x_1` in `n+1` variables.
pub fn shifted_quotient_first(f: &MultiPoly) -> MultiPoly {
    let n = f.nvars();
    let m = n + 1;
    let shifted: Vec<MultiPoly> = (1..m)
        .map(|j| {
            let mut v = vec![0; m];
            v[0] = -1;
            v[j] = 1;
            MultiPoly::linear(&v)
        })
        .collect();
    let plain: Vec<usize> = (1..m).collect();
    let diff = &f.substitute(&shifted) - &f.relabel(m, &plain);
    diff.div_var(0).expect("x_1 divides the difference")
}

/// `(f(x_1-x_{n+1},…,x_n-x_{n+1}) - f(x_1,…,x_n)) / x_{n+1}`.
pub fn shifted_quotient_last(f: &MultiPoly) -> MultiPoly {
    let n = f.nvars();
    let m = n + 1;
    let shifted: Vec<MultiPoly> = (0..n)
        .map(|j| {
            let mut v = vec![0; m];
            v[n] = -1;
            v[j] = 1;
            MultiPoly::linear(&v)
        })
        .collect();
    let plain: Vec<usize> = (0..n).collect();
    let diff = &f.substitute(&shifted) - &f.relabel(m, &plain);
    diff.div_var(n).expect("x_{n+1} divides the difference")
}

/// Result of the cyclic-invariance kernel computation on `D_{n,d}`.
#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub n: usize,
    pub d: u32,
    pub dim_d: usize,
    pub dimension: usize,
    pub orders_agree: bool,
    #[serde(serialize_with = "serialize_polys")]
    pub basis: Vec<MultiPoly>,
}

fn serialize_polys<S: serde::Serializer>(
    v: &[MultiPoly],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

fn cyclic_conditions(f: &MultiPoly) -> Vec<MultiPoly> {
    let mut out = double_shuffle_conditions(f);
    out.push(&shifted_quotient_first(f) - &shifted_quotient_last(f));
    out
}

fn coefficient_vectors(
    ansatz_len: usize,
    nvars: usize,
    d: u32,
    polys: &[MultiPoly],
) -> Vec<Vec<BigInt>> {
    let monos = monomials(nvars, d);
    debug_assert_eq!(monos.len(), ansatz_len);
    polys
        .iter()
        .map(|p| {
            let q = p.primitive();
            monos
                .iter()
                .map(|e| q.coefficient(e).to_integer())
                .collect()
        })
        .collect()
}

/// Polynomials `f ∈ D_{n,d}` whose shifted quotient is invariant under the
/// cyclic permutation of the `n+1` variables. Both pivot orders are run and
/// compared.
pub fn cyclic_kernel(n: usize, d: u32) -> Result<KernelReport> {
    if d % 2 == 1 {
        return Err(Error::OddDegree(d));
    }
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let ansatz = monomial_basis(n, d);
    let a = kernel_on(&ansatz, cyclic_conditions, PivotOrder::Natural);
    let b = kernel_on(&ansatz, cyclic_conditions, PivotOrder::Reversed);
    let va = coefficient_vectors(ansatz.len(), n, d, &a);
    let vb = coefficient_vectors(ansatz.len(), n, d, &b);
    let orders_agree = same_span(&va, &vb, ansatz.len());
    let dim_d = compute_d(n, d, PivotOrder::Natural).len();
    Ok(KernelReport {
        n,
        d,
        dim_d,
        dimension: a.len(),
        orders_agree,
        basis: a,
    })
}

/// `dim D_{n,d}` from both pivot orders; `None` if they disagree.
pub fn dimension_d(n: usize, d: u32) -> Option<usize> {
    let a = compute_d(n, d, PivotOrder::Natural);
    let b = compute_d(n, d, PivotOrder::Reversed);
    let len = monomials(n, d).len();
    let va = coefficient_vectors(len, n, d, &a);
    let vb = coefficient_vectors(len, n, d, &b);
    same_span(&va, &vb, len).then_some(a.len())
}

/// Whether every basis element of `D_{n,d}` satisfies `f|_{Q_n} = (-1)^d f`.
pub fn q_sign_check(n: usize, d: u32) -> bool {
    let q = IntMatrix::q(n);
    let sign = BigRational::from_integer(BigInt::from(if d.is_multiple_of(2) { 1 } else { -1 }));
    compute_d(n, d, PivotOrder::Natural)
        .iter()
        .all(|f| q.act(f).expect("square") == f.scale(&sign))
}

fn swap_vars(f: &MultiPoly, a: usize, b: usize) -> MultiPoly {
    let mut p: Vec<usize> = (0..f.nvars()).collect();
    p.swap(a, b);
    f.permute_args(&p)
}

fn symmetry_defects(h: &MultiPoly) -> Vec<MultiPoly> {
    (0..h.nvars().saturating_sub(1))
        .map(|j| h - &swap_vars(h, j, j + 1))
        .collect()
}

/// Monomial symmetric polynomials of degree `d` in `n` variables.
pub fn symmetric_basis(n: usize, d: u32) -> Vec<MultiPoly> {
    let mut seen: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
    for e in monomials(n, d) {
        let mut key = e.clone();
        key.sort_unstable_by(|a, b| b.cmp(a));
        seen.entry(key)
            .or_insert_with(|| MultiPoly::zero(n))
            .add_term(e, BigRational::one());
    }
    seen.into_values().collect()
}

/// Outcome of a "hypothesis kernel, then conclusion" check.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub n: usize,
    pub d: u32,
    /// Dimension of the space cut out by the hypothesis.
    pub hypothesis_dim: usize,
    /// Whether every element of that space satisfies the conclusion.
    pub conclusion_holds: bool,
}

/// Symmetric `f` with `∂_1(x_1 f)` diagonal translation invariant: the
/// solution space is the constants.
pub fn lemma_symmetric_constant(n: usize, d: u32) -> LemmaCheck {
    let ansatz = symmetric_basis(n, d);
    let kernel = kernel_on(
        &ansatz,
        |f| {
            let g = f.mul_var(0).partial(0);
            let mut s = MultiPoly::zero(n);
            for i in 0..n {
                s = &s + &g.partial(i);
            }
            vec![s]
        },
        PivotOrder::Natural,
    );
    LemmaCheck {
        n,
        d,
        hypothesis_dim: kernel.len(),
        conclusion_holds: kernel.iter().all(|f| f.total_degree().unwrap_or(0) == 0),
    }
}

/// `f ∈ V_{n,d}` with `(f(x_1-x_0,…) - f(x_1,…))/x_0` symmetric in
/// `x_0,…,x_n` must be diagonal translation invariant.
pub fn lemma_symmetric_quotient_first(n: usize, d: u32) -> LemmaCheck {
    let kernel = kernel_on(
        &monomial_basis(n, d),
        |f| symmetry_defects(&shifted_quotient_first(f)),
        PivotOrder::Natural,
    );
    LemmaCheck {
        n,
        d,
        hypothesis_dim: kernel.len(),
        conclusion_holds: kernel.iter().all(diagonal_translation_invariant),
    }
}

/// Same with the quotient by `x_{n+1}` and invariance under `S_{n+1}`.
pub fn lemma_symmetric_quotient_last(n: usize, d: u32) -> LemmaCheck {
    let kernel = kernel_on(
        &monomial_basis(n, d),
        |f| symmetry_defects(&shifted_quotient_last(f)),
        PivotOrder::Natural,
    );
    LemmaCheck {
        n,
        d,
        hypothesis_dim: kernel.len(),
        conclusion_holds: kernel.iter().all(diagonal_translation_invariant),
    }
}

/// `x_{n+1}(F - f(x_2,…)) = x_1(F - f(x_1,…))` with
/// `F = f(x_2-x_1,…,x_{n+1}-x_1)` forces `∂_n(x_n f)` to be diagonal
/// translation invariant.
pub fn lemma_functional_equation(n: usize, d: u32) -> LemmaCheck {
    let m = n + 1;
    let kernel = kernel_on(
        &monomial_basis(n, d),
        |f| {
            let shifted: Vec<MultiPoly> = (1..m)
                .map(|j| {
                    let mut v = vec![0; m];
                    v[0] = -1;
                    v[j] = 1;
                    MultiPoly::linear(&v)
                })
                .collect();
            let big_f = f.substitute(&shifted);
            let upper = f.relabel(m, &(1..m).collect::<Vec<_>>());
            let lower = f.relabel(m, &(0..n).collect::<Vec<_>>());
            let lhs = (&big_f - &upper).mul_var(n);
            let rhs = (&big_f - &lower).mul_var(0);
            vec![&lhs - &rhs]
        },
        PivotOrder::Natural,
    );
    LemmaCheck {
        n,
        d,
        hypothesis_dim: kernel.len(),
        conclusion_holds: kernel
            .iter()
            .all(|f| diagonal_translation_invariant(&f.mul_var(n - 1).partial(n - 1))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_one_has_no_conditions() {
        for d in 0..=5 {
            assert_eq!(compute_d(1, d, PivotOrder::Natural).len(), 1);
        }
    }

    #[test]
    fn quotient_divisibility() {
        let f = &MultiPoly::var(2, 0).pow(3) + &MultiPoly::var(2, 1);
        let g = shifted_quotient_first(&f);
        assert_eq!(g.nvars(), 3);
        let h = shifted_quotient_last(&f);
        assert_eq!(h.nvars(), 3);
    }

    #[test]
    fn hand_computed_depth_one_case() {
        let f = MultiPoly::var(1, 0).pow(2);
        assert_eq!(shifted_quotient_first(&f), MultiPoly::linear(&[1, -2]));
        let r = cyclic_kernel(1, 2).unwrap();
        assert_eq!(r.dimension, 0);
        assert!(cyclic_kernel(1, 3).is_err());
    }

    #[test]
    fn symmetric_basis_size() {
        // partitions of 4 into at most 3 parts: 4, 31, 22, 211
        assert_eq!(symmetric_basis(3, 4).len(), 4);
    }
}
