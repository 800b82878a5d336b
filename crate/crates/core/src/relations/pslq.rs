//! PSLQ integer relation detection in binary fixed point.
//!
//! Follows the classic Ferguson–Bailey iteration with the usual reduction
//! step; all quantities are integers scaled by `2^prec`.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::real::BigReal;

const EXTRA_BITS: u32 = 60;

fn round_fixed(x: &BigInt, prec: u32) -> BigInt {
    ((x + (BigInt::one() << (prec - 1))) >> prec) << prec
}

fn fdiv(a: &BigInt, b: &BigInt, prec: u32) -> BigInt {
    // floor((a << prec) / b), matching Python's // on integers
    use num_integer::Integer;
    (a << prec).div_floor(b)
}

/// Parameters for one PSLQ run.
#[derive(Clone, Debug)]
pub struct PslqOptions {
    /// Relations are accepted once some `|y_i|` drops below `2^-tol_bits`.
    pub tol_bits: u32,
    /// Reject relations whose largest coefficient reaches this bound.
    pub max_coeff: i64,
    pub max_steps: usize,
}

/// Searches for integers `c` (not all zero) with `Σ c_i x_i ≈ 0`.
///
/// A zero entry yields the corresponding unit vector. Returns `None` when
/// no relation of bounded height exists at this precision.
pub fn pslq(x: &[BigReal], opts: &PslqOptions) -> Option<Vec<BigInt>> {
    let n = x.len();
    if n == 0 {
        return None;
    }
    let prec = x[0].bits() + EXTRA_BITS;
    let shift = EXTRA_BITS;
    let xs: Vec<BigInt> = x.iter().map(|v| v.mantissa() << shift).collect();
    let tol = BigInt::one() << (prec.saturating_sub(opts.tol_bits));
    if let Some(i) = xs.iter().position(|v| v.abs() < tol) {
        let mut rel = vec![BigInt::zero(); n];
        rel[i] = BigInt::one();
        return Some(rel);
    }
    if n == 1 {
        return None;
    }
    let max_coeff = BigInt::from(opts.max_coeff);
    let one = BigInt::one() << prec;
    let g = (((BigInt::from(4) << prec) / 3u32) << prec).sqrt();

    // 1-based storage with a padding row/column keeps the indices readable
    let mut a = vec![vec![BigInt::zero(); n + 1]; n + 1];
    let mut b = vec![vec![BigInt::zero(); n + 1]; n + 1];
    let mut h = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for i in 1..=n {
        a[i][i] = one.clone();
        b[i][i] = one.clone();
    }
    let mut xv = vec![BigInt::zero(); n + 1];
    xv[1..].clone_from_slice(&xs);

    let mut s = vec![BigInt::zero(); n + 1];
    for k in 1..=n {
        let mut t = BigInt::zero();
        for xj in xv.iter().skip(k) {
            t += (xj * xj) >> prec;
        }
        s[k] = (t << prec).sqrt();
    }
    let t = s[1].clone();
    let mut y = xv.clone();
    for k in 1..=n {
        y[k] = fdiv(&xv[k], &t, prec);
        s[k] = fdiv(&s[k], &t, prec);
    }
    for i in 1..=n {
        if i < n {
            h[i][i] = if s[i].is_zero() {
                BigInt::zero()
            } else {
                fdiv(&s[i + 1], &s[i], prec)
            };
        }
        for j in 1..i {
            let sjj1 = &s[j] * &s[j + 1];
            h[i][j] = if sjj1.is_zero() {
                BigInt::zero()
            } else {
                use num_integer::Integer;
                ((-&y[i] * &y[j]) << prec).div_floor(&sjj1)
            };
        }
    }

    let reduce_row = |i: usize,
                      j: usize,
                      y: &mut Vec<BigInt>,
                      h: &mut Vec<Vec<BigInt>>,
                      a: &mut Vec<Vec<BigInt>>,
                      b: &mut Vec<Vec<BigInt>>|
     -> bool {
        if h[j][j].is_zero() {
            return false;
        }
        let t = round_fixed(&fdiv(&h[i][j], &h[j][j], prec), prec);
        if t.is_zero() {
            return true;
        }
        y[j] = &y[j] + ((&t * &y[i]) >> prec);
        for k in 1..=j {
            h[i][k] = &h[i][k] - ((&t * &h[j][k]) >> prec);
        }
        for k in 1..=n {
            a[i][k] = &a[i][k] - ((&t * &a[j][k]) >> prec);
            b[k][j] = &b[k][j] + ((&t * &b[k][i]) >> prec);
        }
        true
    };

    for i in 2..=n {
        for j in (1..i).rev() {
            reduce_row(i, j, &mut y, &mut h, &mut a, &mut b);
        }
    }

    for _ in 0..opts.max_steps {
        // choose the row maximizing g^i |H_ii|
        let mut m = 0;
        let mut best = BigInt::from(-1);
        for i in 1..n {
            let sz = (g.pow(i as u32) * h[i][i].abs()) >> (prec as usize * (i - 1));
            if sz > best {
                best = sz;
                m = i;
            }
        }
        y.swap(m, m + 1);
        h.swap(m, m + 1);
        a.swap(m, m + 1);
        for row in b.iter_mut() {
            row.swap(m, m + 1);
        }
        if m + 2 <= n {
            let t0 = ((&h[m][m] * &h[m][m] + &h[m][m + 1] * &h[m][m + 1]) >> prec << prec).sqrt();
            if t0.is_zero() {
                break;
            }
            let t1 = fdiv(&h[m][m], &t0, prec);
            let t2 = fdiv(&h[m][m + 1], &t0, prec);
            for i in m..=n {
                let t3 = h[i][m].clone();
                let t4 = h[i][m + 1].clone();
                h[i][m] = (&t1 * &t3 + &t2 * &t4) >> prec;
                h[i][m + 1] = (-&t2 * &t3 + &t1 * &t4) >> prec;
            }
        }
        for i in m + 1..=n {
            for j in (1..=(i - 1).min(m + 1)).rev() {
                if !reduce_row(i, j, &mut y, &mut h, &mut a, &mut b) {
                    break;
                }
            }
        }
        for i in 1..=n {
            if y[i].abs() < tol {
                let rel: Vec<BigInt> = (1..=n)
                    .map(|j| round_fixed(&b[j][i], prec) >> prec)
                    .collect();
                if rel.iter().all(|v| v.abs() < max_coeff) && rel.iter().any(|v| !v.is_zero()) {
                    return Some(rel);
                }
            }
        }
        let recnorm = h
            .iter()
            .flat_map(|r| r.iter())
            .map(|v| v.abs())
            .max()
            .unwrap_or_default();
        if !recnorm.is_zero() {
            // lower bound on the norm of any relation not yet excluded
            let norm = ((BigInt::one() << (2 * prec)) / recnorm) >> prec;
            if norm / 100 >= max_coeff {
                break;
            }
        }
    }
    None
}

/// `Σ c_i x_i`.
pub fn residual(x: &[BigReal], c: &[BigInt]) -> BigReal {
    let digits = x[0].digits();
    let mut acc = BigReal::zero(digits);
    for (v, ci) in x.iter().zip(c) {
        let ci = ci.to_i64().expect("bounded coefficient");
        acc = acc.add(&v.mul_int(ci));
    }
    acc
}
