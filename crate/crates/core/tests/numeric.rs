use std::sync::Arc;

use mzv::cache::ValueCache;
use mzv::combinat::shuffle_words;
use mzv::index::admissible_indices;
use mzv::regularize::shuffle_regularize;
use mzv::{Evaluator, Index, Letter, RegPoly, Word};
use num_rational::BigRational;

fn b_terminated_words(max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for len in 1..=max_len {
        for bits in 0..1usize << (len - 1) {
            let mut letters: Vec<Letter> = (0..len - 1)
                .map(|i| {
                    if bits >> i & 1 == 1 {
                        Letter::B
                    } else {
                        Letter::A
                    }
                })
                .collect();
            letters.push(Letter::B);
            out.push(Word::new(letters));
        }
    }
    out
}

#[test]
fn values_are_stable_under_extra_precision() {
    let lo = Evaluator::new(60);
    let hi = Evaluator::new(80);
    let mut count = 0;
    for w in 2..=8 {
        for k in admissible_indices(w, w as usize) {
            let a = lo.eval_admissible(&k).unwrap();
            let b = hi.eval_admissible(&k).unwrap();
            let d = a.sub(&b.with_digits(60)).abs_f64();
            assert!(d < 1e-55, "{k}: {d:e}");
            count += 1;
        }
    }
    assert_eq!(count, 127);
}

#[test]
fn shuffle_regularization_respects_products() {
    let ev = Evaluator::new(60);
    let words = b_terminated_words(7);
    let mut pairs = 0;
    for u in &words {
        for v in &words {
            if u.len() + v.len() > 7 || u > v {
                continue;
            }
            let lhs = shuffle_regularize(u)
                .unwrap()
                .product(&shuffle_regularize(v).unwrap());
            let mut rhs = RegPoly::zero();
            for (w, m) in shuffle_words(u, v) {
                rhs += &shuffle_regularize(&w)
                    .unwrap()
                    .scale(&BigRational::from_integer(m.into()));
            }
            let diff = &lhs - &rhs;
            for (deg, c) in diff.coefficients() {
                let d = ev.eval_combo(c).abs_f64();
                assert!(d < 1e-50, "{u} ш {v}, T^{deg}: {d:e}");
            }
            pairs += 1;
        }
    }
    assert_eq!(pairs, 292);
}

#[test]
fn euler_relation_at_weight_four() {
    // ζ(1,3) = ζ(4)/4 in the nested-sum convention with the last part largest
    let ev = Evaluator::new(60);
    let a = ev.eval_admissible(&Index::from_slice(&[1, 3])).unwrap();
    let b = ev
        .eval_admissible(&Index::from_slice(&[4]))
        .unwrap()
        .div_int(4);
    assert!(a.sub(&b).abs_f64() < 1e-55);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let k = Index::from_slice(&[1, 2, 3]);
    let fresh = {
        let store = Arc::new(ValueCache::open(&path).unwrap());
        assert!(store.is_empty());
        let ev = Evaluator::with_cache(50, store.clone());
        let v = ev.eval_admissible(&k).unwrap();
        ev.eval_admissible(&k).unwrap();
        assert_eq!(store.len(), 1);
        v
    };
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1);
    let line: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(line["index"], "(1,2,3)");
    assert_eq!(line["precision"], 50);

    let reopened = ValueCache::open(&path).unwrap();
    let cached = reopened.get(&k, 50).unwrap();
    assert_eq!(cached.mantissa(), fresh.mantissa());
    assert!(reopened.get(&k, 60).is_none());
}

#[test]
fn corrupt_cache_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    std::fs::write(&path, "{not json}\n").unwrap();
    assert!(matches!(ValueCache::open(&path), Err(mzv::Error::Cache(_))));
}
