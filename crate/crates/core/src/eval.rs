//! Numeric evaluation of admissible multiple zeta values.
//!
//! An admissible word `w` is split at `t = 1/2`:
//!
//! `ζ(w) = Σ_{w = uv} Li_{dual(u)}(1/2) · Li_v(1/2)`
//!
//! where `dual` reverses a word and swaps `A ↔ B`, and for a word
//! `A^{s_1-1}B⋯A^{s_r-1}B`
//!
//! `Li_{s_1,…,s_r}(1/2) = Σ_{n_1>⋯>n_r≥1} 2^{-n_1} / (n_1^{s_1}⋯n_r^{s_r})`.
//!
//! Every such series converges like `2^{-N}`, so a few hundred terms give
//! sixty digits.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cache::ValueCache;
use crate::combo::{MzvCombo, RegPoly};
use crate::error::{Error, Result};
use crate::index::{word_of_index, Index, Letter, Word};
use crate::real::{bits_for_digits, div_round, BigReal};

const INTERNAL_GUARD: u32 = 24;

/// Parts `(s_1,…,s_r)` of a B-terminated word, outermost first.
fn polylog_parts(w: &Word) -> Vec<u32> {
    let mut parts = Vec::new();
    let mut run = 1;
    for &l in w.letters() {
        match l {
            Letter::A => run += 1,
            Letter::B => {
                parts.push(run);
                run = 1;
            }
        }
    }
    parts
}

/// `Li_s(1/2)` as a fixed-point integer scaled by `2^bits`, together with a
/// bound on its error in units of `2^-bits`.
fn polylog_half(s: &[u32], bits: u32) -> (BigInt, f64) {
    let r = s.len();
    if r == 0 {
        return (BigInt::one() << bits, 0.0);
    }
    // tail after n_1 > N is below 2^{-N} (1 + ln N)^{r-1} * 2
    let mut n_max = bits as usize + 8;
    loop {
        let log_growth = (r as f64 - 1.0) * (1.0 + (n_max as f64).ln()).log2() + 2.0;
        if n_max as f64 >= bits as f64 + log_growth + 2.0 {
            break;
        }
        n_max += 8;
    }
    // inner[j] = Σ_{n > n_{j+1} > ⋯ > n_r ≥ 1} Π n_i^{-s_i}, updated as n grows
    let one = BigInt::one() << bits;
    let mut inner: Vec<BigInt> = vec![BigInt::zero(); r];
    let mut total = BigInt::zero();
    let mut divisions = 0f64;
    for n in 1..=n_max {
        // terms where the current n is the j-th summation variable
        let mut new_terms: Vec<BigInt> = Vec::with_capacity(r);
        for j in 0..r {
            let below = if j + 1 < r { &inner[j + 1] } else { &one };
            if below.is_zero() {
                new_terms.push(BigInt::zero());
                continue;
            }
            let denom = BigInt::from(n).pow(s[j]);
            new_terms.push(div_round(below, &denom));
            divisions += 1.0;
        }
        // outermost variable carries 2^{-n}
        total += div_round(&new_terms[0], &(BigInt::one() << n));
        for j in 1..r {
            inner[j] += &new_terms[j];
        }
    }
    let err = divisions * 0.5 * (1.0 + (n_max as f64).ln()).powi(r as i32) + n_max as f64 + 2.0;
    (total, err)
}

/// Evaluator for admissible MZVs at a fixed decimal precision.
pub struct Evaluator {
    digits: u32,
    values: RwLock<HashMap<Index, BigReal>>,
    polylogs: RwLock<HashMap<Vec<u32>, (BigInt, f64)>>,
    store: Option<Arc<ValueCache>>,
}

impl Evaluator {
    pub fn new(digits: u32) -> Self {
        Evaluator {
            digits,
            values: RwLock::new(HashMap::new()),
            polylogs: RwLock::new(HashMap::new()),
            store: None,
        }
    }

    /// Uses `store` as a persistent second-level cache.
    pub fn with_cache(digits: u32, store: Arc<ValueCache>) -> Self {
        Evaluator {
            store: Some(store),
            ..Self::new(digits)
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    fn internal_bits(&self) -> u32 {
        bits_for_digits(self.digits) + INTERNAL_GUARD
    }

    fn polylog(&self, s: &[u32]) -> (BigInt, f64) {
        if let Some(v) = self.polylogs.read().expect("polylog cache").get(s) {
            return v.clone();
        }
        let v = polylog_half(s, self.internal_bits());
        self.polylogs
            .write()
            .expect("polylog cache")
            .entry(s.to_vec())
            .or_insert(v)
            .clone()
    }

    /// `ζ(k)` for admissible `k`; `ζ(∅) = 1`.
    pub fn eval_admissible(&self, k: &Index) -> Result<BigReal> {
        if !k.is_admissible() {
            return Err(Error::NotAdmissible(k.to_string()));
        }
        if k.is_empty() {
            return Ok(BigReal::one(self.digits));
        }
        if let Some(v) = self.values.read().expect("value cache").get(k) {
            return Ok(v.clone());
        }
        if let Some(v) = self.store.as_ref().and_then(|s| s.get(k, self.digits)) {
            self.values
                .write()
                .expect("value cache")
                .insert(k.clone(), v.clone());
            return Ok(v);
        }
        let v = self.compute(k);
        if let Some(store) = &self.store {
            store.insert(k, &v)?;
        }
        let mut values = self.values.write().expect("value cache");
        Ok(values.entry(k.clone()).or_insert(v).clone())
    }

    fn compute(&self, k: &Index) -> BigReal {
        let w = word_of_index(k);
        let bits = self.internal_bits();
        let mut total = BigInt::zero();
        let mut err = 0.0;
        for cut in 0..=w.len() {
            let (a, ea) = self.polylog(&polylog_parts(&w.prefix(cut).dual()));
            let (b, eb) = self.polylog(&polylog_parts(&w.suffix_from(cut)));
            total += (&a * &b) >> bits;
            // both factors are below 2 in absolute value
            err += 2.0 * (ea + eb) + 1.0;
        }
        BigReal::from_fixed(&total, bits, err, self.digits)
    }

    /// Linear extension of [`eval_admissible`](Self::eval_admissible).
    pub fn eval_combo(&self, c: &MzvCombo) -> BigReal {
        let mut acc = BigReal::zero(self.digits);
        for (k, q) in c.terms() {
            let v = self.eval_admissible(k).expect("combo keys are admissible");
            acc = acc.add(&v.mul_rational(q));
        }
        acc
    }

    /// Value of the constant term of a regularized polynomial.
    pub fn eval_constant_term(&self, p: &RegPoly) -> BigReal {
        self.eval_combo(&p.constant_term())
    }

    /// Values of every `T^j` coefficient, in increasing degree.
    pub fn eval_regpoly(&self, p: &RegPoly) -> Vec<(u32, BigReal)> {
        p.coefficients()
            .map(|(d, c)| (d, self.eval_combo(c)))
            .collect()
    }
}

/// Slow oracle: the defining series truncated at `m_n < cutoff`, computed in
/// exact rationals. Only useful for sanity checks at low accuracy.
pub fn naive_partial_sum(k: &Index, cutoff: u64) -> num_rational::BigRational {
    use num_rational::BigRational;
    let n = k.depth();
    // acc[j] = Σ over m_1<⋯<m_j < current of Π m_i^{-k_i}
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); n + 1];
    acc[0] = BigRational::one();
    for m in 1..cutoff {
        for j in (1..=n).rev() {
            let term =
                &acc[j - 1] / BigRational::from_integer(BigInt::from(m).pow(k.parts()[j - 1]));
            acc[j] += term;
        }
    }
    acc[n].clone()
}
