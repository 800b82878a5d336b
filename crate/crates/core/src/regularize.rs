//! Reduction of arbitrary indices and words to polynomials in `T` over
//! admissible multiple zeta values.
//!
//! Two schemes are kept strictly apart: the series (stuffle) scheme with
//! `ζ*(1) = T`, and the integral (shuffle) scheme with `Z(B) = T`. Both share
//! the formal variable name but their polynomials are never combined.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::combinat::{stuffle, surjection_expansion};
use crate::combo::{MzvCombo, RegPoly};
use crate::error::{Error, Result};
use crate::index::{index_of_word, word_of_index, Index, Letter, Word};

static STUFFLE_CACHE: LazyLock<RwLock<HashMap<Index, RegPoly>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));
static SHUFFLE_CACHE: LazyLock<RwLock<HashMap<Word, RegPoly>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

fn cached<K, F>(cache: &RwLock<HashMap<K, RegPoly>>, key: &K, compute: F) -> RegPoly
where
    K: std::hash::Hash + Eq + Clone,
    F: FnOnce() -> RegPoly,
{
    if let Some(v) = cache.read().expect("cache lock").get(key) {
        return v.clone();
    }
    let v = compute();
    // write-once: a concurrent writer produced the same value
    cache
        .write()
        .expect("cache lock")
        .entry(key.clone())
        .or_insert(v)
        .clone()
}

fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Series (stuffle) regularization `ζ*(k; T)` with `ζ*(1) = T`.
///
/// For `k = k' 1^r` with `r` trailing ones, the stuffle of `k' 1^{r-1}` with
/// `(1)` contains `k' 1^r` exactly `r` times; every other term has fewer
/// trailing ones, so solving for `ζ*(k' 1^r)` terminates.
pub fn stuffle_regularize(k: &Index) -> RegPoly {
    if k.is_admissible() {
        return RegPoly::from_combo(MzvCombo::zeta(k.clone()).expect("admissible"));
    }
    cached(&STUFFLE_CACHE, k, || {
        let r = k.trailing_ones();
        let shorter = k.slice(0..k.depth() - 1);
        let mut acc = stuffle_regularize(&shorter).times_t();
        for (term, mult) in stuffle(&shorter, &Index::from_slice(&[1])) {
            if &term == k {
                debug_assert_eq!(mult, r as u64);
                continue;
            }
            let sub = stuffle_regularize(&term);
            acc -= &sub.scale(&BigRational::from_integer(BigInt::from(mult)));
        }
        acc.scale(&ratio(1, r as u64))
    })
}

/// Shuffle regularization `Z(w; T)` of a word ending in `B`, with `Z(B) = T`.
///
/// For `w = B^j v` with `v` starting in `A`, the shuffle `B ⧢ B^{j-1} v`
/// contains `w` exactly `j` times; the remaining words have `j - 1` leading
/// `B`s, which gives a terminating recursion on `j`.
pub fn shuffle_regularize(w: &Word) -> Result<RegPoly> {
    if !w.is_empty() && !w.ends_with_b() {
        return Err(Error::WordNotBTerminated(w.to_string()));
    }
    Ok(shuffle_regularize_unchecked(w))
}

fn shuffle_regularize_unchecked(w: &Word) -> RegPoly {
    if w.is_admissible() {
        let k = index_of_word(w).expect("admissible words end in B");
        return RegPoly::from_combo(MzvCombo::zeta(k).expect("admissible"));
    }
    cached(&SHUFFLE_CACHE, w, || {
        let j = w.leading(Letter::B);
        let rest = w.suffix_from(1); // B^{j-1} v
        let mut acc = shuffle_regularize_unchecked(&rest).times_t();
        let v_len = w.len() - j;
        for t in 1..=v_len {
            // insert B after the t-th letter of v
            let other = rest.with_inserted(j - 1 + t, Letter::B);
            acc -= &shuffle_regularize_unchecked(&other);
        }
        acc.scale(&ratio(1, j as u64))
    })
}

/// Shuffle regularization of the word attached to an index.
pub fn shuffle_regularize_index(k: &Index) -> RegPoly {
    shuffle_regularize_unchecked(&word_of_index(k))
}

/// `Σ_{m} Σ_{φ ∈ Surj(n,m)} (1/♯G_φ) ζ*(φ_* k; T)`.
pub fn natural_regularize(k: &Index) -> RegPoly {
    let mut acc = RegPoly::zero();
    for (collapsed, w) in surjection_expansion(k) {
        acc += &stuffle_regularize(&collapsed).scale(&w);
    }
    acc
}

/// Coefficient of an arbitrary word in the associator, i.e. the shuffle
/// regularized value with both `Z(A) = 0` and `Z(B) = 0`.
///
/// Trailing `A`s are removed first: for `w = v A^j` with `v` ending in `B`,
/// `A ⧢ v A^{j-1}` contains `w` exactly `j` times and `Z(A) = 0` kills the
/// left side. Afterwards every word ends in `B` and
/// [`shuffle_regularize`] applies.
pub fn associator_coefficient(w: &Word) -> MzvCombo {
    let j = w.trailing(Letter::A);
    if j == 0 {
        return shuffle_regularize_unchecked(w).constant_term();
    }
    if j == w.len() {
        return MzvCombo::zero();
    }
    let rest = w.prefix(w.len() - 1); // v A^{j-1}
    let v_len = w.len() - j;
    let mut acc = MzvCombo::zero();
    for t in 0..v_len {
        // insert A before position t of v, t < |v|
        let other = rest.with_inserted(t, Letter::A);
        acc -= &associator_coefficient(&other);
    }
    acc.scale(&ratio(1, j as u64))
}

/// Constant term of the series regularization.
pub fn zeta_reg_stuffle(k: &Index) -> MzvCombo {
    stuffle_regularize(k).constant_term()
}

/// Constant term of the shuffle regularization of `word_of_index(k)`.
pub fn zeta_reg_shuffle(k: &Index) -> MzvCombo {
    shuffle_regularize_index(k).constant_term()
}

/// Constant term of the surjection-weighted series regularization.
pub fn zeta_reg_natural(k: &Index) -> MzvCombo {
    natural_regularize(k).constant_term()
}

/// Checks that `p` is T-free (used for schemes whose total is known to be
/// independent of the regularization parameter).
pub fn is_t_free(p: &RegPoly) -> bool {
    p.coefficients().all(|(d, c)| d == 0 || c.is_zero())
}
