//! Congruences between finite MZVs and explicit combinations of MZVs,
//! tested numerically modulo a [`SpanningSet`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::binomial;
use crate::combo::MzvCombo;
use crate::error::{Error, Result};
use crate::eval::Evaluator;
use crate::finite::{zeta_f, zeta_natural_f};
use crate::index::{word_of_index, Index, Letter, Word};
use crate::real::BigReal;
use crate::regularize::{associator_coefficient, zeta_reg_stuffle};
use crate::relations::pslq::{pslq, PslqOptions};
use crate::relations::span::{tolerance_bits, SpanningSet};

/// Every verdict carries this label: a numeric confirmation is not a proof.
pub const EVIDENCE: &str = "numeric evidence";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Confirmed,
    NotConfirmed,
    /// Precision below the configured minimum; nothing was claimed.
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct RelationOptions {
    /// Relations must have all integer coefficients below this bound.
    pub height_bound: i64,
    /// Below this many digits the verdict is always inconclusive.
    pub min_digits: u32,
    /// Confirmation needs a residual below `10^-(digits / residual_divisor)`.
    pub residual_divisor: u32,
}

impl Default for RelationOptions {
    fn default() -> Self {
        RelationOptions {
            height_bound: 10_000,
            min_digits: 60,
            residual_divisor: 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanCoefficient {
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub target: String,
    pub index: Option<Index>,
    pub digits: u32,
    pub evidence: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub span: Vec<String>,
    /// Integer relation on `[lhs - rhs, span...]`, if one was found.
    pub relation: Option<Vec<String>>,
    /// `lhs - rhs = Σ coefficient · span element`.
    pub coefficients: Vec<SpanCoefficient>,
    pub height: Option<String>,
    /// `log10 |lhs - rhs - Σ ...|`; `None` when not computed or exactly 0.
    pub residual_log10: Option<f64>,
    pub residual_is_zero: bool,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl RelationReport {
    pub fn confirmed(&self) -> bool {
        self.verdict == Verdict::Confirmed
    }

    /// Whether the residual is below `10^exponent`.
    pub fn residual_below(&self, exponent: f64) -> bool {
        self.residual_is_zero || self.residual_log10.is_some_and(|r| r < exponent)
    }

    fn labelled(mut self, target: String, index: Option<Index>) -> Self {
        self.target = target;
        self.index = index;
        self
    }
}

fn short(x: &BigReal) -> String {
    x.to_decimal(30)
}

/// Tests whether `lhs - rhs` lies in the span, by integer relation detection
/// on `[lhs - rhs, span...]`.
pub fn verify_congruence(
    lhs: &BigReal,
    rhs: &BigReal,
    span: &SpanningSet,
    opts: &RelationOptions,
) -> RelationReport {
    let digits = lhs.digits().min(rhs.digits());
    let mut report = RelationReport {
        target: String::new(),
        index: None,
        digits,
        evidence: EVIDENCE,
        lhs: short(lhs),
        rhs: short(rhs),
        span: span.labels(),
        relation: None,
        coefficients: Vec::new(),
        height: None,
        residual_log10: None,
        residual_is_zero: false,
        verdict: Verdict::NotConfirmed,
        notes: Vec::new(),
    };
    if digits < opts.min_digits {
        report.verdict = Verdict::Inconclusive;
        report.notes.push(format!(
            "precision {digits} is below the minimum {}",
            opts.min_digits
        ));
        return report;
    }
    let diff = lhs.sub(rhs);
    let values = span.values();
    let mut xs = vec![diff.clone()];
    xs.extend(values.iter().cloned());
    let popts = PslqOptions {
        tol_bits: tolerance_bits(digits),
        max_coeff: opts.height_bound,
        max_steps: 5000,
    };
    let Some(mut rel) = pslq(&xs, &popts) else {
        report.residual_log10 = Some(diff.log10_abs()).filter(|r| r.is_finite());
        report
            .notes
            .push("no relation within the height bound".into());
        return report;
    };
    if rel[0].is_zero() {
        report.residual_log10 = Some(diff.log10_abs()).filter(|r| r.is_finite());
        report
            .notes
            .push("relation does not involve the target".into());
        return report;
    }
    if rel[0].is_negative() {
        rel.iter_mut().for_each(|c| *c = -&*c);
    }
    let lead = rel[0].clone();
    let mut residual = diff;
    for (x, (c, label)) in values.iter().zip(rel[1..].iter().zip(span.labels())) {
        let q = BigRational::new(-c, lead.clone());
        residual = residual.sub(&x.mul_rational(&q));
        if !q.is_zero() {
            report.coefficients.push(SpanCoefficient {
                label,
                value: q.to_string(),
            });
        }
    }
    let height: BigInt = rel.iter().map(|c| c.abs()).max().unwrap_or_default();
    report.height = Some(height.to_string());
    report.relation = Some(rel.iter().map(|c| c.to_string()).collect());
    let r = residual.log10_abs();
    report.residual_log10 = r.is_finite().then_some(r);
    report.residual_is_zero = residual.is_zero();
    let threshold = -(digits as f64) / opts.residual_divisor as f64;
    if report.residual_below(threshold) && height < BigInt::from(opts.height_bound) {
        report.verdict = Verdict::Confirmed;
    }
    report
}

/// Weak compositions of `total` into `parts` non-negative parts.
fn weak_compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in weak_compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `Σ_ℓ ∏ C(k_i + ℓ_i - 1, ℓ_i) ζ(k + ℓ)` over `|ℓ| = total`.
fn binomial_sum(parts: &[u32], total: u32) -> MzvCombo {
    let mut acc = MzvCombo::zero();
    for ell in weak_compositions(total, parts.len()) {
        let mut c = 1u64;
        for (&k, &l) in parts.iter().zip(&ell) {
            c *= binomial((k + l - 1) as u64, l as u64);
        }
        let shifted: Vec<u32> = parts.iter().zip(&ell).map(|(k, l)| k + l).collect();
        let term = zeta_reg_stuffle(&Index::from_slice(&shifted));
        acc += &term.scale(&BigRational::from_integer(c.into()));
    }
    acc
}

fn sign(e: u32) -> BigRational {
    BigRational::from_integer(if e.is_multiple_of(2) {
        1.into()
    } else {
        (-1).into()
    })
}

fn check_opposite_parity(k: &Index) -> Result<()> {
    if (k.weight() as usize + k.depth()).is_multiple_of(2) {
        return Err(Error::Parity(k.to_string()));
    }
    if k.weight() == 2 {
        return Err(Error::WeightTwo(k.to_string()));
    }
    Ok(())
}

/// The two binomial sums predicted to agree with `ζ^{♮,F}(k)` modulo the
/// span, for `k` whose weight and depth have opposite parity.
///
/// Non-admissible terms enter through their stuffle-regularized constant
/// terms.
pub fn binomial_rhs_combo(k: &Index) -> Result<MzvCombo> {
    check_opposite_parity(k)?;
    let p = k.parts();
    let n = p.len();
    let first = binomial_sum(&p[1..], p[0]).scale(&-sign(p[0]));
    let last = binomial_sum(&p[..n - 1], p[n - 1]).scale(&sign(p[n - 1]));
    Ok(&first + &last)
}

pub fn binomial_rhs(k: &Index, ev: &Evaluator) -> Result<BigReal> {
    Ok(ev.eval_combo(&binomial_rhs_combo(k)?))
}

/// Products of weight `|k|` plus MZVs of depth at most `depth(k) - 2`.
pub fn congruence_span(k: &Index, ev: &Evaluator) -> Result<SpanningSet> {
    SpanningSet::build(k.weight(), k.depth().saturating_sub(2), ev)
}

/// `ζ^{♮,F}(k) ≡ binomial_rhs(k)` modulo [`congruence_span`].
pub fn verify_binomial(
    k: &Index,
    ev: &Evaluator,
    opts: &RelationOptions,
) -> Result<RelationReport> {
    let rhs = binomial_rhs(k, ev)?;
    let span = congruence_span(k, ev)?;
    verify_binomial_with_span(k, &rhs, &span, ev, opts)
}

fn verify_binomial_with_span(
    k: &Index,
    rhs: &BigReal,
    span: &SpanningSet,
    ev: &Evaluator,
    opts: &RelationOptions,
) -> Result<RelationReport> {
    let lhs = ev.eval_combo(&zeta_natural_f(k));
    Ok(verify_congruence(&lhs, rhs, span, opts)
        .labelled(format!("natural-F{k} vs binomial sums"), Some(k.clone())))
}

/// Runs [`verify_binomial`] on many indices in parallel; output order follows
/// the input order.
pub fn verify_binomial_batch(
    indices: &[Index],
    ev: &Evaluator,
    opts: &RelationOptions,
) -> Result<Vec<RelationReport>> {
    let mut spans = std::collections::BTreeMap::new();
    for k in indices {
        check_opposite_parity(k)?;
        let key = (k.weight(), k.depth().saturating_sub(2));
        if let std::collections::btree_map::Entry::Vacant(e) = spans.entry(key) {
            e.insert(congruence_span(k, ev)?);
        }
    }
    indices
        .par_iter()
        .map(|k| {
            let span = &spans[&(k.weight(), k.depth().saturating_sub(2))];
            verify_binomial_with_span(k, &binomial_rhs(k, ev)?, span, ev, opts)
        })
        .collect()
}

/// Opposite-parity indices of weight `3..=max_weight` and depth at most
/// `max_depth`, sorted by weight and then lexicographically.
pub fn opposite_parity_indices(max_weight: u32, max_depth: usize) -> Vec<Index> {
    let mut out = Vec::new();
    for w in 3..=max_weight {
        for d in 1..=max_depth.min(w as usize) {
            if (w as usize + d) % 2 == 1 {
                out.extend(crate::index::compositions(w, d));
            }
        }
    }
    out
}

/// Both readings of the same-parity congruence for `ζ^F(k)`.
#[derive(Clone, Debug, Serialize)]
pub struct SameParityReport {
    pub index: Index,
    /// Terms `(…, k_i + k_{i+1}, k_{i+1}, …)`, repeating `k_{i+1}`.
    pub repeated: RelationReport,
    /// Terms `(…, k_i + k_{i+1}, k_{i+2}, …)`, merging two neighbours.
    pub merged: RelationReport,
}

fn neighbour_sum(k: &Index, keep_next: bool) -> MzvCombo {
    let p = k.parts();
    let mut acc = MzvCombo::zero();
    for i in 0..p.len().saturating_sub(1) {
        let mut q: Vec<u32> = p[..i].to_vec();
        q.push(p[i] + p[i + 1]);
        let rest = if keep_next { i + 1 } else { i + 2 };
        q.extend_from_slice(&p[rest..]);
        acc -= &zeta_reg_stuffle(&Index::from_slice(&q));
    }
    acc
}

/// `ζ^F(k) ≡ -Σ_i ζ(…)` for `k` with weight and depth of equal parity,
/// under both readings of the merged index.
pub fn verify_same_parity(
    k: &Index,
    ev: &Evaluator,
    opts: &RelationOptions,
) -> Result<SameParityReport> {
    if (k.weight() as usize + k.depth()) % 2 == 1 {
        return Err(Error::Parity(k.to_string()));
    }
    let lhs = ev.eval_combo(&zeta_f(k));
    let span = congruence_span(k, ev)?;
    let run = |keep_next: bool, name: &str| {
        let rhs = ev.eval_combo(&neighbour_sum(k, keep_next));
        let mut r = verify_congruence(&lhs, &rhs, &span, opts)
            .labelled(format!("F{k} vs {name} reading"), Some(k.clone()));
        if k.weight() == 2 {
            r.notes.push(
                "weight 2: products of weight >= 2 cannot reach weight 2; informational only"
                    .into(),
            );
        }
        if keep_next && k.depth() > 1 {
            r.notes.push("this reading mixes weights".into());
        }
        r
    };
    Ok(SameParityReport {
        index: k.clone(),
        repeated: run(true, "repeated"),
        merged: run(false, "merged"),
    })
}

/// `A^{k_n-1}B⋯BA^{k_2-1}BA^{k_1}` and `A^{k_1-1}BA^{k_2-1}⋯BA^{k_n}`.
pub fn boundary_words(k: &Index) -> (Word, Word) {
    let p = k.parts();
    let n = p.len();
    let w = word_of_index(&k.slice(1..n)).concat(&Word::power(Letter::A, p[0] as usize));
    let w_star = word_of_index(&k.slice(0..n - 1).reversed())
        .concat(&Word::power(Letter::A, p[n - 1] as usize));
    (w, w_star)
}

/// `-Z(w) - (-1)^{|k|} Z(w*)` with `Z` the associator coefficient.
pub fn word_form_combo(k: &Index) -> Result<MzvCombo> {
    check_opposite_parity(k)?;
    let (w, w_star) = boundary_words(k);
    let a = associator_coefficient(&w);
    let b = associator_coefficient(&w_star).scale(&sign(k.weight()));
    Ok(&(-&a) - &b)
}

/// `ζ^F(k) ≡ -Z(w) - (-1)^{|k|} Z(w*)` modulo [`congruence_span`].
pub fn verify_word_form(
    k: &Index,
    ev: &Evaluator,
    opts: &RelationOptions,
) -> Result<RelationReport> {
    let rhs = ev.eval_combo(&word_form_combo(k)?);
    let lhs = ev.eval_combo(&zeta_f(k));
    let span = congruence_span(k, ev)?;
    let (w, w_star) = boundary_words(k);
    let mut r = verify_congruence(&lhs, &rhs, &span, opts)
        .labelled(format!("F{k} vs Z({w}), Z({w_star})"), Some(k.clone()));
    r.notes
        .push("words ending in A use the associator coefficient with Z(A) = Z(B) = 0".into());
    Ok(r)
}

/// `ζ^{♮,F}(k)` lies in the product span when weight and depth share parity.
pub fn verify_product_membership(
    k: &Index,
    ev: &Evaluator,
    opts: &RelationOptions,
) -> Result<RelationReport> {
    if (k.weight() as usize + k.depth()) % 2 == 1 {
        return Err(Error::Parity(k.to_string()));
    }
    let lhs = ev.eval_combo(&zeta_natural_f(k));
    let span = SpanningSet::build(k.weight(), 0, ev)?;
    let zero = BigReal::zero(ev.digits());
    Ok(verify_congruence(&lhs, &zero, &span, opts)
        .labelled(format!("natural-F{k} in products"), Some(k.clone())))
}
