//! Weight-truncated generating series
//! `f_n(x) = Σ_k c(k) x_1^{k_1-1}⋯x_n^{k_n-1}` of regularized values.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;

use crate::combo::{combo_product, MzvCombo};
use crate::dsh::matrix::IntMatrix;
use crate::dsh::perm::{shuffle_set, Perm};
use crate::dsh::poly::MultiPoly;
use crate::error::Result;
use crate::eval::Evaluator;
use crate::index::{compositions, Index};
use crate::real::BigReal;
use crate::regularize::{zeta_reg_natural, zeta_reg_shuffle, zeta_reg_stuffle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Scheme {
    /// Surjection-weighted series regularization.
    Natural,
    /// Series (stuffle) regularization.
    Stuffle,
    /// Integral (shuffle) regularization.
    Shuffle,
}

impl Scheme {
    pub fn constant_term(self, k: &Index) -> MzvCombo {
        match self {
            Scheme::Natural => zeta_reg_natural(k),
            Scheme::Stuffle => zeta_reg_stuffle(k),
            Scheme::Shuffle => zeta_reg_shuffle(k),
        }
    }
}

/// Coefficients that can be combined linearly over the rationals.
pub trait Coefficient: Clone {
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, q: &BigRational) -> Self;
}

impl Coefficient for MzvCombo {
    fn zero_like(&self) -> Self {
        MzvCombo::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, q: &BigRational) -> Self {
        MzvCombo::scale(self, q)
    }
}

impl Coefficient for BigReal {
    fn zero_like(&self) -> Self {
        BigReal::zero(self.digits())
    }
    fn add(&self, other: &Self) -> Self {
        BigReal::add(self, other)
    }
    fn scale(&self, q: &BigRational) -> Self {
        self.mul_rational(q)
    }
}

/// Coefficients of `x^{k-1}` for all depth-`n` indices of weight at most
/// `max_weight`, keyed by the index `k`.
#[derive(Clone, Debug)]
pub struct SeriesTrunc<C> {
    pub n: usize,
    pub max_weight: u32,
    pub coeffs: BTreeMap<Index, C>,
}

impl<C: Coefficient> SeriesTrunc<C> {
    pub fn coefficient(&self, k: &Index) -> Option<&C> {
        self.coeffs.get(k)
    }

    pub fn map<D>(&self, f: impl Fn(&C) -> D) -> SeriesTrunc<D> {
        SeriesTrunc {
            n: self.n,
            max_weight: self.max_weight,
            coeffs: self.coeffs.iter().map(|(k, c)| (k.clone(), f(c))).collect(),
        }
    }

    /// `f|_γ`; linear substitutions keep each weight slice, so the
    /// truncation is preserved exactly.
    pub fn act(&self, gamma: &IntMatrix) -> Result<SeriesTrunc<C>> {
        let mut out: BTreeMap<Index, C> = BTreeMap::new();
        for (k, c) in &self.coeffs {
            let exps: Vec<u32> = k.parts().iter().map(|p| p - 1).collect();
            let mono = MultiPoly::monomial(exps, BigRational::from_integer(1.into()));
            for (e, q) in gamma.act(&mono)?.terms() {
                let target = Index::from_slice(&e.iter().map(|x| x + 1).collect::<Vec<_>>());
                let term = c.scale(q);
                let slot = out.entry(target).or_insert_with(|| c.zero_like());
                *slot = slot.add(&term);
            }
        }
        Ok(SeriesTrunc {
            n: self.n,
            max_weight: self.max_weight,
            coeffs: out,
        })
    }
}

/// Symbolic truncation; `n = 0` gives the constant series 1.
pub fn build_series(scheme: Scheme, n: usize, max_weight: u32) -> SeriesTrunc<MzvCombo> {
    let mut coeffs = BTreeMap::new();
    if n == 0 {
        coeffs.insert(Index::empty(), MzvCombo::one());
    }
    for w in (n as u32).max(1)..=max_weight {
        for k in compositions(w, n) {
            let c = scheme.constant_term(&k);
            coeffs.insert(k, c);
        }
    }
    SeriesTrunc {
        n,
        max_weight,
        coeffs,
    }
}

pub fn build_series_numeric(
    scheme: Scheme,
    n: usize,
    max_weight: u32,
    ev: &Evaluator,
) -> SeriesTrunc<BigReal> {
    build_series(scheme, n, max_weight).map(|c| ev.eval_combo(c))
}

/// `k` with `k_j = e_{σ^{-1}(j)} + 1`: the index whose coefficient sits at
/// `x^e` in `f|_σ`.
fn pulled_index(e: &[u32], sigma: &Perm) -> Index {
    let inv = sigma.inverse();
    Index::from_slice(
        &(0..e.len())
            .map(|j| e[inv.apply(j)] + 1)
            .collect::<Vec<_>>(),
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct ShuffleCheck {
    pub scheme: Scheme,
    pub n: usize,
    pub i: usize,
    pub max_weight: u32,
    pub monomials: usize,
    /// Largest `|LHS - RHS|` over all checked monomials.
    pub max_defect: f64,
    pub worst: Option<String>,
}

/// Compares `f_i(x_1..x_i) f_{n-i}(x_{i+1}..x_n)` with
/// `Σ_{σ ∈ Sh_{n,i}} f_n|_σ` coefficient by coefficient.
pub fn series_shuffle_check(
    scheme: Scheme,
    n: usize,
    i: usize,
    max_weight: u32,
    ev: &Evaluator,
) -> ShuffleCheck {
    assert!(1 <= i && i < n, "need 1 <= i <= n-1");
    let full = build_series_numeric(scheme, n, max_weight, ev);
    let left = build_series_numeric(scheme, i, max_weight, ev);
    let right = build_series_numeric(scheme, n - i, max_weight, ev);
    let shuffles = shuffle_set(n, i);
    let mut max_defect = BigReal::zero(ev.digits());
    let mut worst = None;
    let mut count = 0;
    for k in full.coeffs.keys() {
        let e: Vec<u32> = k.parts().iter().map(|p| p - 1).collect();
        let a = left.coefficient(&k.slice(0..i)).expect("same weight bound");
        let b = right
            .coefficient(&k.slice(i..n))
            .expect("same weight bound");
        let lhs = a.mul(b);
        let mut rhs = BigReal::zero(ev.digits());
        for sigma in &shuffles {
            rhs = rhs.add(
                full.coefficient(&pulled_index(&e, sigma))
                    .expect("same weight"),
            );
        }
        let defect = lhs.sub(&rhs).abs();
        if defect.mantissa() > max_defect.mantissa() {
            max_defect = defect;
            worst = Some(k.to_string());
        }
        count += 1;
    }
    ShuffleCheck {
        scheme,
        n,
        i,
        max_weight,
        monomials: count,
        max_defect: max_defect.to_f64(),
        worst,
    }
}

/// The same identity with products expanded by stuffle; returns the
/// monomials (as indices) where the two sides differ as combinations.
pub fn series_shuffle_defects_symbolic(
    scheme: Scheme,
    n: usize,
    i: usize,
    max_weight: u32,
) -> Vec<(Index, MzvCombo)> {
    assert!(1 <= i && i < n, "need 1 <= i <= n-1");
    let full = build_series(scheme, n, max_weight);
    let left = build_series(scheme, i, max_weight);
    let right = build_series(scheme, n - i, max_weight);
    let shuffles = shuffle_set(n, i);
    let mut out = Vec::new();
    for k in full.coeffs.keys() {
        let e: Vec<u32> = k.parts().iter().map(|p| p - 1).collect();
        let lhs = combo_product(&left.coeffs[&k.slice(0..i)], &right.coeffs[&k.slice(i..n)]);
        let mut rhs = MzvCombo::zero();
        for sigma in &shuffles {
            rhs += &full.coeffs[&pulled_index(&e, sigma)];
        }
        let d = &lhs - &rhs;
        if !d.is_zero() {
            out.push((k.clone(), d));
        }
    }
    out
}
