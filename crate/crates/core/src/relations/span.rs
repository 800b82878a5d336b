//! Spanning sets for the weight-`k` subspace generated by products and by
//! MZVs of bounded depth.

use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::eval::Evaluator;
use crate::index::{admissible_indices, Index};
use crate::real::BigReal;
use crate::relations::pslq::{pslq, PslqOptions};

/// Height bound used when discarding dependent spanning elements.
const REDUCTION_HEIGHT: i64 = 1_000_000;

/// One spanning element with the data needed to recompute it.
#[derive(Clone, Debug, Serialize)]
pub struct SpanElement {
    pub label: String,
    /// One index for a single MZV, two for a product.
    pub factors: Vec<Index>,
    #[serde(skip)]
    pub value: BigReal,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanningSet {
    pub weight: u32,
    pub max_depth: usize,
    /// Every candidate generator, before reduction.
    pub candidates: usize,
    /// A numerically independent subset with the same span.
    pub elements: Vec<SpanElement>,
}

impl SpanningSet {
    /// Products `ζ(a)ζ(b)` with admissible `a`, `b` of weight at least 2
    /// and `|a| + |b| = weight`, together with admissible `ζ(k)` of depth at
    /// most `max_depth`.
    pub fn build(weight: u32, max_depth: usize, ev: &Evaluator) -> Result<SpanningSet> {
        let mut raw = Vec::new();
        for wa in 2..=weight / 2 {
            let wb = weight - wa;
            if wb < 2 {
                continue;
            }
            let left = admissible_indices(wa, wa as usize);
            let right = admissible_indices(wb, wb as usize);
            for (ia, a) in left.iter().enumerate() {
                for (ib, b) in right.iter().enumerate() {
                    if wa == wb && ib < ia {
                        continue;
                    }
                    let value = ev.eval_admissible(a)?.mul(&ev.eval_admissible(b)?);
                    raw.push(SpanElement {
                        label: format!("ζ{a}·ζ{b}"),
                        factors: vec![a.clone(), b.clone()],
                        value,
                    });
                }
            }
        }
        for k in admissible_indices(weight, max_depth) {
            if k.is_empty() {
                continue;
            }
            raw.push(SpanElement {
                label: format!("ζ{k}"),
                value: ev.eval_admissible(&k)?,
                factors: vec![k],
            });
        }
        let candidates = raw.len();
        let elements = reduce(raw, ev.digits());
        Ok(SpanningSet {
            weight,
            max_depth,
            candidates,
            elements,
        })
    }

    pub fn empty(weight: u32) -> SpanningSet {
        SpanningSet {
            weight,
            max_depth: 0,
            candidates: 0,
            elements: Vec::new(),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|e| e.label.clone()).collect()
    }

    pub fn values(&self) -> Vec<BigReal> {
        self.elements.iter().map(|e| e.value.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub(crate) fn tolerance_bits(digits: u32) -> u32 {
    // two thirds of the working precision, in bits
    (digits as f64 * std::f64::consts::LOG2_10 * 2.0 / 3.0) as u32
}

/// Greedy: keep a candidate unless PSLQ expresses it through those kept.
fn reduce(raw: Vec<SpanElement>, digits: u32) -> Vec<SpanElement> {
    let opts = PslqOptions {
        tol_bits: tolerance_bits(digits),
        max_coeff: REDUCTION_HEIGHT,
        max_steps: 5000,
    };
    let mut kept: Vec<SpanElement> = Vec::new();
    for cand in raw {
        let mut xs = vec![cand.value.clone()];
        xs.extend(kept.iter().map(|e| e.value.clone()));
        let dependent = match pslq(&xs, &opts) {
            Some(rel) => !rel[0].is_zero(),
            None => false,
        };
        if !dependent {
            kept.push(cand);
        }
    }
    kept
}
