//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines are always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use mzv::combinat::{all_surjections, binomial, cone_weight, enumerate_surjections};
use mzv::direct::{direct_sum_natural, primes_in};
use mzv::dsh::matrix::{iota, IntMatrix};
use mzv::dsh::perm::{groupring_identity_check, Perm};
use mzv::dsh::series::{series_shuffle_check, Scheme};
use mzv::dsh::spaces::cyclic_kernel;
use mzv::finite::{product_rule_defect, zeta_f, zeta_natural_a_component, zeta_natural_f};
use mzv::index::{compositions, indices_of_weight};
use mzv::relations::congruence::{opposite_parity_indices, verify_binomial_batch, RelationOptions};
use mzv::{BigReal, Evaluator, Index};

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn idx(p: &[u32]) -> Index {
    Index::from_slice(p)
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn surjections_and_stabilizers() -> Check {
    for n in 1..=8 {
        for m in 1..=n {
            let got = enumerate_surjections(n, m)
                .map_err(|e| e.to_string())?
                .len() as u64;
            ensure(
                got == binomial(n as u64 - 1, m as u64 - 1),
                format!("|Surj({n},{m})| = {got}"),
            )?;
        }
    }
    let mut checked = 0;
    for n in 1..=6 {
        let perms = Perm::all(n);
        for phi in all_surjections(n) {
            let brute = perms
                .iter()
                .filter(|s| (1..=n).all(|i| phi.apply(s.apply(i - 1) + 1) == phi.apply(i)))
                .count() as u64;
            ensure(
                brute == phi.stabilizer_order(),
                format!("stabilizer of {phi:?}"),
            )?;
            checked += 1;
        }
    }
    Ok(format!(
        "counts for n <= 8, {checked} stabilizers for n <= 6"
    ))
}

/// The two-variable case table, written out case by case.
fn two_variable_table(x1: i64, x2: i64) -> BigRational {
    if (0 < x1 && x1 < x2) || (x1 < x2 && x2 < 0) || (x2 < 0 && 0 < x1) {
        BigRational::one()
    } else if x1 == x2 {
        q(1, 2)
    } else {
        BigRational::zero()
    }
}

/// Ball fraction by counting orderings of a perturbation direction: near `x`
/// the region is cut out by `v_i < v_{i+1}` on ties, so the fraction is the
/// share of the `n!` orderings of `v` satisfying every adjacent condition.
fn ordering_oracle(x: &[i64]) -> BigRational {
    let n = x.len();
    let perms = Perm::all(n);
    let inside = perms
        .iter()
        .filter(|ranks| {
            (0..n - 1).all(|i| {
                // compare (1/t_i, -v_i / x_i^2) lexicographically
                let a = (q(1, x[i]), -q(ranks.apply(i) as i64, x[i] * x[i]));
                let b = (
                    q(1, x[i + 1]),
                    -q(ranks.apply(i + 1) as i64, x[i + 1] * x[i + 1]),
                );
                a > b
            })
        })
        .count();
    q(inside as i64, perms.len() as i64)
}

fn cone_weights() -> Check {
    let range: Vec<i64> = (-10..=10).filter(|&v| v != 0).collect();
    for &a in &range {
        for &b in &range {
            let w = cone_weight(&[a, b]).map_err(|e| e.to_string())?;
            ensure(w == two_variable_table(a, b), format!("n=2 at ({a},{b})"))?;
        }
    }
    let coords: Vec<i64> = (-5..=5).filter(|&v| v != 0).collect();
    let mut points = Vec::new();
    for &a in &coords {
        for &b in &coords {
            for &c in &coords {
                points.push([a, b, c]);
            }
        }
    }
    let sample: Vec<[i64; 3]> = points.into_iter().step_by(5).take(200).collect();
    let mut nonzero = 0;
    for p in &sample {
        let w = cone_weight(p).map_err(|e| e.to_string())?;
        ensure(w == ordering_oracle(p), format!("n=3 at {p:?}"))?;
        nonzero += usize::from(!w.is_zero());
    }
    ensure(sample.len() == 200, "sample size")?;
    Ok(format!(
        "n=2 table on 400 points, n=3 on 200 points ({nonzero} nonzero)"
    ))
}

const TOTALLY_ODD: [&[u32]; 7] = [
    &[1],
    &[3],
    &[1, 1],
    &[3, 1],
    &[1, 3],
    &[1, 1, 1],
    &[3, 3, 1],
];

fn totally_odd_lattice_sums() -> Check {
    for k in TOTALLY_ODD {
        let k = idx(k);
        for m in 1..=50 {
            let s = direct_sum_natural(&k, m);
            ensure(s.is_zero(), format!("{k} at M={m}: {s}"))?;
        }
    }
    Ok("7 indices, M = 1..50".into())
}

fn totally_odd_mod_p() -> Check {
    let primes = primes_in(5..=200);
    for k in TOTALLY_ODD {
        let k = idx(k);
        for &p in &primes {
            let v = zeta_natural_a_component(&k, p).map_err(|e| e.to_string())?;
            ensure(v.is_zero(), format!("{k} at p={p}: {}", v.residue))?;
        }
    }
    Ok(format!("7 indices, {} primes in 5..200", primes.len()))
}

fn depth_two_expansion() -> Check {
    let mut count = 0;
    for w in 2..=8 {
        for k in compositions(w, 2) {
            let p = k.parts();
            let expected = &zeta_f(&k) + &zeta_f(&idx(&[p[0] + p[1]])).scale(&q(1, 2));
            ensure(zeta_natural_f(&k) == expected, format!("{k}"))?;
            count += 1;
        }
    }
    let ev = Evaluator::new(60);
    let v = ev.eval_combo(&zeta_natural_f(&idx(&[1, 1]))).abs_f64();
    ensure(v <= 1e-40, format!("natural (1,1) = {v:e}"))?;
    Ok(format!("{count} pairs symbolic, natural (1,1) = {v:e}"))
}

/// `atan(1/x) · 2^bits` by its alternating series.
fn atan_inv(x: u64, bits: u32) -> BigInt {
    let one = BigInt::one() << bits;
    let x2 = BigInt::from(x * x);
    let mut power = one / x;
    let mut total = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k.is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
        power /= &x2;
        k += 1;
    }
    total
}

fn numeric_engine() -> Check {
    let ev = Evaluator::new(60);
    let bits = 260;
    let pi = atan_inv(5, bits) * 16 - atan_inv(239, bits) * 4;
    let pi2_over_6 = BigReal::from_fixed(&(((&pi * &pi) / 6) >> bits), bits, 64.0, 60);
    let z2 = ev.eval_admissible(&idx(&[2])).map_err(|e| e.to_string())?;
    let d1 = z2.sub(&pi2_over_6).abs_f64();
    ensure(d1 < 1e-50, format!("zeta(2) - pi^2/6 = {d1:e}"))?;
    let z12 = ev
        .eval_admissible(&idx(&[1, 2]))
        .map_err(|e| e.to_string())?;
    let z3 = ev.eval_admissible(&idx(&[3])).map_err(|e| e.to_string())?;
    let d2 = z12.sub(&z3).abs_f64();
    ensure(d2 < 1e-50, format!("zeta(1,2) - zeta(3) = {d2:e}"))?;
    Ok(format!(
        "|zeta(2) - pi^2/6| = {d1:.1e}, |zeta(1,2) - zeta(3)| = {d2:.1e}"
    ))
}

fn group_ring_and_embedding() -> Check {
    for n in 2..=5 {
        ensure(
            groupring_identity_check(n),
            format!("group ring identity at n={n}"),
        )?;
    }
    for n in 1..=4 {
        let all = Perm::all(n + 1);
        for s in &all {
            for t in &all {
                ensure(
                    iota(&s.compose(t)) == &iota(s) * &iota(t),
                    format!("iota({s} {t})"),
                )?;
            }
        }
    }
    for n in 2..=6 {
        let p = IntMatrix::p(n);
        let pinv = p.inverse().map_err(|e| e.to_string())?;
        let rhs = &(&(&IntMatrix::eps(n) * &pinv) * &IntMatrix::w0(n)) * &p;
        ensure(
            iota(&Perm::sigma_prime(n)) == rhs,
            format!("sigma' at n={n}"),
        )?;
    }
    Ok("identity n=2..5, homomorphism n<=4, sigma' n<=6".into())
}

fn series_shuffle() -> Check {
    let ev = Evaluator::new(60);
    let mut worst: f64 = 0.0;
    for (n, i) in [(2, 1), (3, 1), (3, 2)] {
        let c = series_shuffle_check(Scheme::Natural, n, i, 6, &ev);
        ensure(
            c.max_defect <= 1e-40,
            format!("(n,i)=({n},{i}) defect {:e} at {:?}", c.max_defect, c.worst),
        )?;
        worst = worst.max(c.max_defect);
    }
    Ok(format!("max defect {worst:.1e}"))
}

fn cyclic_kernel_vanishes() -> Check {
    let mut dims = Vec::new();
    for (n, d) in [(1, 2), (1, 4), (2, 2), (2, 4), (3, 2)] {
        let r = cyclic_kernel(n, d).map_err(|e| e.to_string())?;
        ensure(
            r.orders_agree,
            format!("pivot orders disagree at ({n},{d})"),
        )?;
        ensure(
            r.dimension == 0,
            format!("kernel dimension {} at ({n},{d})", r.dimension),
        )?;
        dims.push(format!("({n},{d}):dimD={}", r.dim_d));
    }
    Ok(format!("all kernels zero, {}", dims.join(" ")))
}

fn product_rule() -> Check {
    let mut pairs = Vec::new();
    for wk in 1..=5u32 {
        for k in indices_of_weight(wk) {
            for wk2 in 2..=7 - wk {
                for k2 in indices_of_weight(wk2) {
                    if k2.parts().iter().all(|&p| p >= 2) {
                        pairs.push((k.clone(), k2));
                    }
                }
            }
        }
    }
    let step = pairs.len() / 10;
    let ev = Evaluator::new(60);
    let mut worst: f64 = 0.0;
    let mut used = Vec::new();
    for (k, k2) in pairs.iter().step_by(step).take(10) {
        let d = product_rule_defect(k, k2, &ev)
            .map_err(|e| e.to_string())?
            .abs_f64();
        ensure(d <= 1e-40, format!("{k} * {k2}: {d:e}"))?;
        worst = worst.max(d);
        used.push(format!("{k}*{k2}"));
    }
    ensure(used.len() == 10, "ten pairs")?;
    Ok(format!("max defect {worst:.1e} over {}", used.join(" ")))
}

fn congruences() -> Check {
    let ev = Evaluator::new(60);
    let ks = opposite_parity_indices(6, 3);
    let reports =
        verify_binomial_batch(&ks, &ev, &RelationOptions::default()).map_err(|e| e.to_string())?;
    for r in &reports {
        ensure(r.confirmed(), format!("{} is {:?}", r.target, r.verdict))?;
        ensure(
            r.residual_below(-30.0),
            format!("{} residual {:?}", r.target, r.residual_log10),
        )?;
        let h: u64 = r
            .height
            .as_deref()
            .unwrap_or("0")
            .parse()
            .map_err(|_| "height")?;
        ensure(h < 10_000, format!("{} height {h}", r.target))?;
    }
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("congruence_report.json");
    std::fs::write(
        &path,
        serde_json::to_string_pretty(&reports).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    Ok(format!(
        "{} indices confirmed, report at {}",
        reports.len(),
        path.display()
    ))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (
            "surjection counts and stabilizers",
            Duration::from_secs(1),
            surjections_and_stabilizers,
        ),
        (
            "cone weight table and n=3 oracle",
            Duration::from_secs(5),
            cone_weights,
        ),
        (
            "totally odd lattice sums vanish",
            Duration::from_secs(30),
            totally_odd_lattice_sums,
        ),
        (
            "totally odd mod-p sums vanish",
            Duration::from_secs(30),
            totally_odd_mod_p,
        ),
        (
            "depth-two surjection expansion",
            Duration::from_secs(60),
            depth_two_expansion,
        ),
        (
            "numeric engine against pi^2/6",
            Duration::from_secs(10),
            numeric_engine,
        ),
        (
            "group ring identity and embedding",
            Duration::from_secs(10),
            group_ring_and_embedding,
        ),
        (
            "generating series shuffle relation",
            Duration::from_secs(120),
            series_shuffle,
        ),
        (
            "cyclic kernel vanishes",
            Duration::from_secs(60),
            cyclic_kernel_vanishes,
        ),
        (
            "stuffle product rule",
            Duration::from_secs(60),
            product_rule,
        ),
        (
            "binomial congruences confirmed",
            Duration::from_secs(120),
            congruences,
        ),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()))
            .and_then(|msg| {
                let t = start.elapsed();
                if t > limit {
                    Err(format!("took {t:.2?}, limit {limit:?}"))
                } else {
                    Ok(msg)
                }
            });
        let t = start.elapsed();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name} [{t:.2?}]: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{t:.2?}]: {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
