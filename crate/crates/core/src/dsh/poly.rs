//! Sparse multivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial in `x_1,…,x_n` stored as exponent vector → coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    /// The variable `x_{i+1}` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigRational::one())
    }

    pub fn monomial(exps: Vec<u32>, c: BigRational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// `Σ_i c_i x_i`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, BigRational::from_integer(c.into()));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        assert_eq!(exps.len(), self.nvars, "exponent length");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces `x_i` by `images[i]`; all images share one variable count.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let m = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<MultiPoly>> =
            images.iter().map(|p| vec![Self::one(p.nvars)]).collect();
        let mut out = Self::zero(m);
        for (e, c) in &self.terms {
            let mut t = Self::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().expect("nonempty") * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Same polynomial viewed in `nvars` variables, keeping `x_i` as the
    /// `map[i]`-th new variable.
    pub fn relabel(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                f[map[i]] += k;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// `f(x_{σ(1)},…,x_{σ(n)})` for a 0-based permutation `σ`.
    pub fn permute_args(&self, sigma: &[usize]) -> MultiPoly {
        // x_i is replaced by x_{σ(i)}: exponents move from slot i to slot σ(i)
        self.relabel(self.nvars, sigma)
    }

    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * BigRational::from_integer(BigInt::from(e[i])));
            }
        }
        out
    }

    pub fn mul_var(&self, i: usize) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = e.clone();
                    f[i] += 1;
                    (f, c.clone())
                })
                .collect(),
        }
    }

    /// Exact division by `x_i`; fails if some term is not divisible.
    pub fn div_var(&self, i: usize) -> Result<MultiPoly> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                return Err(Error::Invalid(format!(
                    "x{} does not divide the polynomial",
                    i + 1
                )));
            }
            let mut f = e.clone();
            f[i] -= 1;
            terms.insert(f, c.clone());
        }
        Ok(MultiPoly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Clears denominators and content: the primitive integer multiple with
    /// positive leading coefficient.
    pub fn primitive(&self) -> MultiPoly {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if ints.last().expect("nonempty").is_negative() {
            g = -g;
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .keys()
                .cloned()
                .zip(ints.into_iter().map(|x| BigRational::from_integer(x / &g)))
                .collect(),
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "variable count");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, other: &MultiPoly) -> MultiPoly {
        self + &(-other)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "variable count");
        let mut acc: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                let g: Vec<u32> = e.iter().zip(f).map(|(a, b)| a + b).collect();
                *acc.entry(g).or_insert_with(BigRational::zero) += c * d;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly {
            nvars: self.nvars,
            terms: acc,
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{k}", i + 1)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exponent vectors of all monomials of degree `d` in `n` variables.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `Σ_i ∂f/∂x_i = 0`.
pub fn diagonal_translation_invariant(f: &MultiPoly) -> bool {
    let mut s = MultiPoly::zero(f.nvars());
    for i in 0..f.nvars() {
        s = &s + &f.partial(i);
    }
    s.is_zero()
}
