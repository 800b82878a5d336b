//! Truncated lattice sums over nonzero integers ordered by `1/m`.
//!
//! All sums reduce to one nested sum over an ordered list of integers: for a
//! list `L` and an index `k`, `Σ_{i_1<⋯<i_n} Π L[i_j]^{-k_j}`. The same
//! dynamic program runs over exact rationals, over `F_p` and over
//! [`BigReal`](crate::real::BigReal).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::combinat::surjection_expansion;
use crate::error::{Error, Result};
use crate::index::Index;
use crate::real::BigReal;

/// Coefficient field for nested sums.
pub trait SumField {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `m^{-k}`; `m` is never zero.
    fn inv_pow(&self, m: i64, k: u32) -> Self::Elem;
    fn rational(&self, q: &BigRational) -> Self::Elem;
}

pub struct Rationals;

impl SumField for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv_pow(&self, m: i64, k: u32) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(m).pow(k))
    }
    fn rational(&self, q: &BigRational) -> BigRational {
        q.clone()
    }
}

/// The prime field `F_p` for `p < 2^32`.
#[derive(Clone, Copy, Debug)]
pub struct ModP {
    p: u64,
}

impl ModP {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::NotPrime(p));
        }
        Ok(ModP { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, m: i64) -> u64 {
        m.rem_euclid(self.p as i64) as u64
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }
}

impl SumField for ModP {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv_pow(&self, m: i64, k: u32) -> u64 {
        self.inv(self.pow(self.reduce(m), k as u64))
    }
    fn rational(&self, q: &BigRational) -> u64 {
        let p = BigInt::from(self.p);
        let num = (q.numer() % &p + &p) % &p;
        let den = (q.denom() % &p + &p) % &p;
        let den = den.to_u64().expect("reduced");
        assert!(den != 0, "denominator divisible by {}", self.p);
        num.to_u64().expect("reduced") * self.inv(den) % self.p
    }
}

/// Fixed-precision reals.
pub struct Reals {
    pub digits: u32,
}

impl SumField for Reals {
    type Elem = BigReal;
    fn zero(&self) -> BigReal {
        BigReal::zero(self.digits)
    }
    fn one(&self) -> BigReal {
        BigReal::one(self.digits)
    }
    fn add(&self, a: &BigReal, b: &BigReal) -> BigReal {
        a.add(b)
    }
    fn mul(&self, a: &BigReal, b: &BigReal) -> BigReal {
        a.mul(b)
    }
    fn inv_pow(&self, m: i64, k: u32) -> BigReal {
        BigReal::from_rational(
            &BigRational::new(BigInt::one(), BigInt::from(m).pow(k)),
            self.digits,
        )
    }
    fn rational(&self, q: &BigRational) -> BigReal {
        BigReal::from_rational(q, self.digits)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_in(range: std::ops::RangeInclusive<u64>) -> Vec<u64> {
    range.filter(|&n| is_prime(n)).collect()
}

/// `Σ_{i_1<⋯<i_n} Π_j list[i_j]^{-k_j}`.
pub fn nested_sum<F: SumField>(field: &F, list: &[i64], k: &Index) -> F::Elem {
    let n = k.depth();
    let parts = k.parts();
    let mut acc = vec![field.zero(); n + 1];
    acc[0] = field.one();
    for &m in list {
        for j in (1..=n).rev() {
            let term = field.mul(&acc[j - 1], &field.inv_pow(m, parts[j - 1]));
            acc[j] = field.add(&acc[j], &term);
        }
    }
    acc.swap_remove(n)
}

/// Nonzero integers with `|m| < bound`, sorted by decreasing `1/m`.
pub fn reciprocal_order(bound: u64) -> Vec<i64> {
    let b = bound as i64;
    (1..b).chain((1..b).map(|m| -(b - m))).collect()
}

pub fn direct_sum_f_in<F: SumField>(field: &F, k: &Index, m: u64) -> F::Elem {
    nested_sum(field, &reciprocal_order(m), k)
}

/// Cone-weighted sum via the tie-pattern decomposition: a point whose
/// coordinates are weakly ordered by `1/m` with blocks of equal entries
/// contributes to exactly one collapsed strict sum, with weight `1/♯G_φ`.
pub fn direct_sum_natural_in<F: SumField>(field: &F, k: &Index, m: u64) -> F::Elem {
    let list = reciprocal_order(m);
    let mut acc = field.zero();
    for (collapsed, w) in surjection_expansion(k) {
        let term = field.mul(&field.rational(&w), &nested_sum(field, &list, &collapsed));
        acc = field.add(&acc, &term);
    }
    acc
}

/// `Σ_{0<|m_i|<M, 1/m_1>⋯>1/m_n} Π m_i^{-k_i}` exactly.
pub fn direct_sum_f(k: &Index, m: u64) -> BigRational {
    direct_sum_f_in(&Rationals, k, m)
}

/// `Σ_{0<|m_i|<M} w(m) Π m_i^{-k_i}` exactly, with `w` the cone weight.
pub fn direct_sum_natural(k: &Index, m: u64) -> BigRational {
    direct_sum_natural_in(&Rationals, k, m)
}

/// Limit of `S(2^j)` fitted by `c_0 + Σ_{p≥1, 0≤q<d} c_{p,q} j^q 2^{-jp}`.
///
/// Uses the last `1 + d·P` samples, with `P` as large as the sample count
/// allows, and solves the square system exactly.
pub fn extrapolate(samples: &[(u32, BigRational)], log_powers: usize) -> Result<BigRational> {
    let d = log_powers.max(1);
    let p_max = (samples.len().saturating_sub(1)) / d;
    if p_max == 0 {
        return Err(Error::Invalid("not enough samples to extrapolate".into()));
    }
    let size = 1 + d * p_max;
    let used = &samples[samples.len() - size..];
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(size);
    for (j, value) in used {
        let mut row = vec![BigRational::one()];
        for p in 1..=p_max {
            let decay = BigRational::new(BigInt::one(), BigInt::one() << (*j as usize * p));
            for q in 0..d {
                row.push(&decay * BigRational::from_integer(BigInt::from(*j).pow(q as u32)));
            }
        }
        row.push(value.clone());
        rows.push(row);
    }
    let solution = solve_exact(rows)?;
    Ok(solution[0].clone())
}

/// Gauss–Jordan on an augmented square system.
fn solve_exact(mut rows: Vec<Vec<BigRational>>) -> Result<Vec<BigRational>> {
    let n = rows.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !rows[r][col].is_zero())
            .ok_or_else(|| Error::Invalid("singular extrapolation system".into()))?;
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let (src, dst) = if r < col {
                    let (a, b) = rows.split_at_mut(col);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = rows.split_at_mut(r);
                    (&a[col], &mut b[0])
                };
                for (x, y) in dst.iter_mut().zip(src.iter()) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    Ok(rows.into_iter().map(|r| r[n].clone()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirectKind {
    Strict,
    Natural,
}

/// Extrapolated limit of a direct sum from `M = 2^j`, `j` in `js`,
/// sampled at `digits` digits.
pub fn extrapolated_limit(
    k: &Index,
    kind: DirectKind,
    js: std::ops::RangeInclusive<u32>,
    digits: u32,
) -> Result<f64> {
    let field = Reals { digits };
    let samples: Vec<(u32, BigRational)> = js
        .map(|j| {
            let v = match kind {
                DirectKind::Strict => direct_sum_f_in(&field, k, 1 << j),
                DirectKind::Natural => direct_sum_natural_in(&field, k, 1 << j),
            };
            (j, v.to_rational())
        })
        .collect();
    let limit = extrapolate(&samples, k.depth())?;
    Ok(limit.to_f64().unwrap_or(f64::NAN))
}

/// Residues `ζ_p(k) = Σ_{0<m_1<⋯<m_n<p} Π m_i^{-k_i}` in `F_p`.
pub fn harmonic_mod_p(k: &Index, p: u64) -> Result<u64> {
    let field = ModP::new(p)?;
    let list: Vec<i64> = (1..p as i64).collect();
    Ok(nested_sum(&field, &list, k))
}

/// `Σ_{0<|m_i|<p/2} w(m) Π m_i^{-k_i}` in `F_p`; needs `p > depth`.
pub fn natural_mod_p(k: &Index, p: u64) -> Result<u64> {
    let field = ModP::new(p)?;
    if p as usize <= k.depth() {
        return Err(Error::PrimeTooSmall {
            p,
            depth: k.depth(),
        });
    }
    // |m| < p/2 is the same as |m| ≤ (p-1)/2, i.e. |m| < (p+1)/2
    Ok(direct_sum_natural_in(&field, k, p.div_ceil(2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(p: &[u32]) -> Index {
        Index::from_slice(p)
    }
    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_examples() {
        assert_eq!(reciprocal_order(3), vec![1, 2, -2, -1]);
        for m in 1..12 {
            assert!(direct_sum_f(&idx(&[1]), m).is_zero());
        }
        assert_eq!(direct_sum_f(&idx(&[2]), 3), q(5, 2));
        assert_eq!(direct_sum_natural(&idx(&[2]), 3), q(5, 2));
        assert_eq!(direct_sum_f(&Index::empty(), 5), q(1, 1));
    }

    #[test]
    fn mod_p_examples() {
        assert_eq!(harmonic_mod_p(&idx(&[1]), 7).unwrap(), 0);
        assert_eq!(harmonic_mod_p(&idx(&[1, 1]), 7).unwrap(), 0);
        assert!(harmonic_mod_p(&idx(&[1]), 9).is_err());
        // 2 (1 + 1/4) mod 7 with |m| ≤ 3: 2 (1 + 2 + 4) = 14 = 0
        let f = ModP::new(7).unwrap();
        let expected = 2 * (1 + f.inv(4) + f.inv(9 % 7)) % 7;
        assert_eq!(natural_mod_p(&idx(&[2]), 7).unwrap(), expected);
        assert!(natural_mod_p(&idx(&[1, 1, 1]), 3).is_err());
    }

    #[test]
    fn extrapolation_recovers_a_known_limit() {
        // S(M) = 1 - 1/M + j/M^2 has limit 1
        let samples: Vec<(u32, BigRational)> = (3..=10u32)
            .map(|j| {
                let m = BigRational::from_integer(BigInt::from(1u64 << j));
                let s = BigRational::one() - m.recip()
                    + BigRational::from_integer(j.into()) / (&m * &m);
                (j, s)
            })
            .collect();
        assert_eq!(extrapolate(&samples, 2).unwrap(), BigRational::one());
    }
}
