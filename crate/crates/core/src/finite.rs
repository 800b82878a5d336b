//! Finite real multiple zeta values and their mod-`p` counterparts.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{stuffle, surjection_expansion};
use crate::combo::{MzvCombo, RegPoly};
use crate::direct::{harmonic_mod_p, natural_mod_p};
use crate::error::{Error, Result};
use crate::eval::Evaluator;
use crate::index::Index;
use crate::real::BigReal;
use crate::regularize::{shuffle_regularize_index, stuffle_regularize};

/// Which tail sum decides the sign of the `i`-th term in the
/// antipode-type formula for `ζ^F`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SignConvention {
    /// `(-1)^{k_{i+1}+⋯+k_n}`: the sign of the reversed factor's weight.
    #[default]
    Tail,
    /// `(-1)^{k_i+⋯+k_n}` with `k_0 = 0`; kept only for comparison.
    TailWithCurrent,
}

fn sign(k: &Index, i: usize, conv: SignConvention) -> BigRational {
    let parts = k.parts();
    let start = match conv {
        SignConvention::Tail => i,
        SignConvention::TailWithCurrent => i.saturating_sub(1),
    };
    let mut e: u32 = parts[start..].iter().sum();
    if conv == SignConvention::TailWithCurrent && i == 0 {
        e = k.weight();
    }
    BigRational::from_integer(BigInt::from(if e.is_multiple_of(2) { 1 } else { -1 }))
}

fn antipode_sum(k: &Index, conv: SignConvention, reg: impl Fn(&Index) -> RegPoly) -> RegPoly {
    let n = k.depth();
    let mut acc = RegPoly::zero();
    for i in 0..=n {
        let head = reg(&k.slice(0..i));
        let tail = reg(&k.slice(i..n).reversed());
        acc += &head.product(&tail).scale(&sign(k, i, conv));
    }
    acc
}

/// `Σ_i ± ζ*(k_1,…,k_i; T) ζ*(k_n,…,k_{i+1}; T)` before taking `T = 0`.
pub fn zeta_f_regpoly(k: &Index, conv: SignConvention) -> RegPoly {
    antipode_sum(k, conv, stuffle_regularize)
}

/// `ζ^F(k)` as a combination of admissible MZVs.
pub fn zeta_f(k: &Index) -> MzvCombo {
    zeta_f_with(k, SignConvention::Tail)
}

pub fn zeta_f_with(k: &Index, conv: SignConvention) -> MzvCombo {
    zeta_f_regpoly(k, conv).constant_term()
}

/// Same construction with shuffle-regularized factors.
pub fn zeta_f_sharp_regpoly(k: &Index) -> RegPoly {
    antipode_sum(k, SignConvention::Tail, shuffle_regularize_index)
}

pub fn zeta_f_sharp(k: &Index) -> MzvCombo {
    zeta_f_sharp_regpoly(k).constant_term()
}

/// `Σ_φ (1/♯G_φ) ζ^F(φ_* k)` over ordered surjections.
pub fn zeta_natural_f(k: &Index) -> MzvCombo {
    let mut acc = MzvCombo::zero();
    for (collapsed, w) in surjection_expansion(k) {
        acc += &zeta_f(&collapsed).scale(&w);
    }
    acc
}

/// `ζ^{F,♯}(k) ζ^F(k') - Σ_{k'' ∈ k * k'} ζ^{F,♯}(k'')` evaluated numerically.
///
/// All parts of `k'` must be at least 2.
pub fn product_rule_defect(k: &Index, k2: &Index, ev: &Evaluator) -> Result<BigReal> {
    if k2.parts().iter().any(|&p| p < 2) {
        return Err(Error::Invalid(format!("parts of {k2} must be at least 2")));
    }
    let lhs = ev
        .eval_combo(&zeta_f_sharp(k))
        .mul(&ev.eval_combo(&zeta_f(k2)));
    let mut rhs = MzvCombo::zero();
    for (k3, mult) in stuffle(k, k2).iter() {
        rhs += &zeta_f_sharp(k3).scale(&BigRational::from_integer(mult.into()));
    }
    Ok(lhs.sub(&ev.eval_combo(&rhs)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ModPValue {
    pub p: u64,
    pub residue: u64,
}

impl ModPValue {
    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }
}

/// The `p`-component of `ζ^A(k)`.
pub fn zeta_a_component(k: &Index, p: u64) -> Result<ModPValue> {
    Ok(ModPValue {
        p,
        residue: harmonic_mod_p(k, p)?,
    })
}

/// The `p`-component of `ζ^{♮,A}(k)`; requires `p > depth(k)`.
pub fn zeta_natural_a_component(k: &Index, p: u64) -> Result<ModPValue> {
    Ok(ModPValue {
        p,
        residue: natural_mod_p(k, p)?,
    })
}

/// Components at each prime, computed in parallel and returned sorted by `p`.
pub fn prime_sweep(k: &Index, primes: &[u64], natural: bool) -> Result<Vec<ModPValue>> {
    let mut out: Vec<ModPValue> = primes
        .par_iter()
        .map(|&p| {
            if natural {
                zeta_natural_a_component(k, p)
            } else {
                zeta_a_component(k, p)
            }
        })
        .collect::<Result<_>>()?;
    out.sort_by_key(|v| v.p);
    Ok(out)
}
