use mzv::index::compositions;
use mzv::relations::congruence::{
    binomial_rhs, binomial_rhs_combo, opposite_parity_indices, verify_binomial,
    verify_binomial_batch, verify_congruence, verify_product_membership, verify_same_parity,
    verify_word_form, word_form_combo, RelationOptions, Verdict,
};
use mzv::relations::span::SpanningSet;
use mzv::{BigReal, Evaluator, Index};
use num_rational::BigRational;

fn idx(p: &[u32]) -> Index {
    Index::from_slice(p)
}

fn same_parity_indices(max_weight: u32, max_depth: usize) -> Vec<Index> {
    let mut out = Vec::new();
    for w in 3..=max_weight {
        for d in 1..=max_depth.min(w as usize) {
            if (w as usize + d).is_multiple_of(2) {
                out.extend(compositions(w, d));
            }
        }
    }
    out
}

#[test]
fn identical_values_with_empty_span() {
    let ev = Evaluator::new(60);
    let x = ev.eval_admissible(&idx(&[2, 3])).unwrap();
    let r = verify_congruence(&x, &x, &SpanningSet::empty(5), &RelationOptions::default());
    assert_eq!(r.verdict, Verdict::Confirmed);
    assert!(r.coefficients.is_empty());
    assert!(r.residual_is_zero);
}

#[test]
fn perturbed_target_is_not_confirmed() {
    let ev = Evaluator::new(60);
    let opts = RelationOptions::default();
    for k in [idx(&[2, 1]), idx(&[1, 1, 2]), idx(&[1, 2, 3])] {
        let lhs = ev.eval_combo(&mzv::finite::zeta_natural_f(&k));
        let bumped = lhs.add(&BigReal::from_rational(
            &BigRational::new(1.into(), 100_000.into()),
            60,
        ));
        let rhs = binomial_rhs(&k, &ev).unwrap();
        let span = SpanningSet::build(k.weight(), k.depth().saturating_sub(2), &ev).unwrap();
        assert_eq!(
            verify_congruence(&lhs, &rhs, &span, &opts).verdict,
            Verdict::Confirmed
        );
        assert_eq!(
            verify_congruence(&bumped, &rhs, &span, &opts).verdict,
            Verdict::NotConfirmed,
            "{k}"
        );
    }
}

#[test]
fn detector_finds_the_weight_four_product_relation() {
    let ev = Evaluator::new(60);
    let span = SpanningSet::build(4, 0, &ev).unwrap();
    assert_eq!(span.labels(), vec!["ζ(2)·ζ(2)".to_string()]);
    let z13 = ev.eval_admissible(&idx(&[1, 3])).unwrap();
    let r = verify_congruence(&z13, &BigReal::zero(60), &span, &RelationOptions::default());
    assert!(r.confirmed());
    assert_eq!(r.coefficients.len(), 1);
    // ζ(2)^2 = (5/2) ζ(4) = 10 ζ(1,3) in this convention
    assert_eq!(r.coefficients[0].value, "1/10");
}

#[test]
fn more_precision_never_flips_a_confirmation() {
    let lo = Evaluator::new(60);
    let hi = Evaluator::new(100);
    let opts = RelationOptions::default();
    let ks = opposite_parity_indices(6, 3);
    let a = verify_binomial_batch(&ks, &lo, &opts).unwrap();
    let b = verify_binomial_batch(&ks, &hi, &opts).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.index, y.index);
        assert!(x.confirmed() && y.confirmed(), "{}", x.target);
        assert_eq!(x.coefficients.len(), y.coefficients.len());
        for (c, d) in x.coefficients.iter().zip(&y.coefficients) {
            assert_eq!((&c.label, &c.value), (&d.label, &d.value));
        }
        assert!(
            y.residual_below(-80.0),
            "{}: {:?}",
            y.target,
            y.residual_log10
        );
    }
    for k in &ks {
        assert!(verify_word_form(k, &hi, &opts).unwrap().confirmed(), "{k}");
    }
}

#[test]
fn batch_preserves_input_order() {
    let ev = Evaluator::new(60);
    let mut ks = opposite_parity_indices(5, 3);
    ks.reverse();
    let reports = verify_binomial_batch(&ks, &ev, &RelationOptions::default()).unwrap();
    let got: Vec<Index> = reports.into_iter().map(|r| r.index.unwrap()).collect();
    assert_eq!(got, ks);
}

#[test]
fn depth_one_sums_are_empty() {
    let ev = Evaluator::new(60);
    for k in [4, 6, 8] {
        let k = idx(&[k]);
        assert!(binomial_rhs_combo(&k).unwrap().is_zero());
        assert!(verify_binomial(&k, &ev, &RelationOptions::default())
            .unwrap()
            .confirmed());
    }
    assert!(binomial_rhs_combo(&idx(&[3])).is_err());
}

#[test]
fn word_form_agrees_with_binomial_sums_modulo_the_span() {
    let ev = Evaluator::new(60);
    let opts = RelationOptions::default();
    for k in opposite_parity_indices(6, 3) {
        let a = ev.eval_combo(&word_form_combo(&k).unwrap());
        let b = binomial_rhs(&k, &ev).unwrap();
        let span = SpanningSet::build(k.weight(), k.depth().saturating_sub(2), &ev).unwrap();
        assert!(verify_congruence(&a, &b, &span, &opts).confirmed(), "{k}");
    }
}

#[test]
fn same_parity_readings() {
    let ev = Evaluator::new(60);
    let opts = RelationOptions::default();
    for k in same_parity_indices(6, 3) {
        let r = verify_same_parity(&k, &ev, &opts).unwrap();
        assert!(r.merged.confirmed(), "merged {k}");
        if k.depth() > 1 {
            assert_eq!(r.repeated.verdict, Verdict::NotConfirmed, "repeated {k}");
        }
        assert!(
            verify_product_membership(&k, &ev, &opts)
                .unwrap()
                .confirmed(),
            "{k}"
        );
    }
    let edge = verify_same_parity(&idx(&[1, 1]), &ev, &opts).unwrap();
    assert!(edge.merged.confirmed());
    assert!(!edge.merged.notes.is_empty());
    assert!(verify_same_parity(&idx(&[2, 1]), &ev, &opts).is_err());
}

#[test]
fn reports_serialize_with_the_evidence_label() {
    let ev = Evaluator::new(60);
    let r = verify_binomial(&idx(&[1, 2, 3]), &ev, &RelationOptions::default()).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["evidence"], "numeric evidence");
    assert_eq!(v["verdict"], "confirmed");
    assert_eq!(v["index"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["digits"], 60);
    assert!(v["span"].as_array().unwrap().len() >= 2);
}
