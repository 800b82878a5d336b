//! Exact rational combinations of admissible multiple zeta values and
//! polynomials over them in the regularization variable `T`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::combinat::stuffle;
use crate::error::{Error, Result};
use crate::index::Index;

/// `Σ c_k ζ(k)` over admissible indices `k`; the empty index stands for the
/// constant `1`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MzvCombo {
    terms: BTreeMap<Index, BigRational>,
}

impl MzvCombo {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut m = Self::zero();
        m.add_term(Index::empty(), c);
        m
    }

    /// The single value `ζ(k)`.
    pub fn zeta(k: Index) -> Result<Self> {
        if !k.is_admissible() {
            return Err(Error::NotAdmissible(k.to_string()));
        }
        let mut m = Self::zero();
        m.terms.insert(k, BigRational::one());
        Ok(m)
    }

    pub fn add_term(&mut self, k: Index, c: BigRational) {
        assert!(k.is_admissible(), "MzvCombo keys must be admissible: {k}");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, k: &Index) -> BigRational {
        self.terms.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Index, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MzvCombo {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Weights present among the terms.
    pub fn weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self.terms.keys().map(|k| k.weight()).collect();
        w.dedup();
        w
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weights().len() <= 1
    }

    pub fn max_depth(&self) -> usize {
        self.terms.keys().map(|k| k.depth()).max().unwrap_or(0)
    }

    /// Product of two combinations, expanded with the stuffle product.
    /// Stuffles of admissible indices are admissible, so no further
    /// regularization is needed.
    pub fn product(&self, other: &MzvCombo) -> MzvCombo {
        let mut out = MzvCombo::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ca * cb;
                for (k, mult) in stuffle(a, b) {
                    out.add_term(k, &c * BigRational::from_integer(BigInt::from(mult)));
                }
            }
        }
        out
    }
}

/// Bilinear stuffle product of two combinations.
pub fn combo_product(a: &MzvCombo, b: &MzvCombo) -> MzvCombo {
    a.product(b)
}

impl fmt::Display for MzvCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if k.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "ζ{k}")?;
            } else {
                write!(f, "{mag}·ζ{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MzvCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl AddAssign<&MzvCombo> for MzvCombo {
    fn add_assign(&mut self, rhs: &MzvCombo) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl SubAssign<&MzvCombo> for MzvCombo {
    fn sub_assign(&mut self, rhs: &MzvCombo) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), -c.clone());
        }
    }
}

impl Add for &MzvCombo {
    type Output = MzvCombo;
    fn add(self, rhs: &MzvCombo) -> MzvCombo {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &MzvCombo {
    type Output = MzvCombo;
    fn sub(self, rhs: &MzvCombo) -> MzvCombo {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &MzvCombo {
    type Output = MzvCombo;
    fn neg(self) -> MzvCombo {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &MzvCombo {
    type Output = MzvCombo;
    fn mul(self, rhs: &MzvCombo) -> MzvCombo {
        self.product(rhs)
    }
}

pub(crate) fn rational_to_string(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("cannot parse rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl Serialize for MzvCombo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            map.serialize_entry(&k.to_string(), &rational_to_string(c))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for MzvCombo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = MzvCombo;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from \"(index)\" to \"p/q\"")
            }
            fn visit_map<A: MapAccess<'de>>(
                self,
                mut a: A,
            ) -> std::result::Result<MzvCombo, A::Error> {
                let mut out = MzvCombo::zero();
                while let Some((k, c)) = a.next_entry::<String, String>()? {
                    let k: Index = k.parse().map_err(de::Error::custom)?;
                    if !k.is_admissible() {
                        return Err(de::Error::custom(format!("non-admissible key {k}")));
                    }
                    out.add_term(k, parse_rational(&c).map_err(de::Error::custom)?);
                }
                Ok(out)
            }
        }
        d.deserialize_map(V)
    }
}

/// A polynomial in `T` with [`MzvCombo`] coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RegPoly {
    coeffs: BTreeMap<u32, MzvCombo>,
}

impl RegPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_combo(MzvCombo::one())
    }

    pub fn from_combo(c: MzvCombo) -> Self {
        let mut p = Self::zero();
        p.add_coeff(0, &c);
        p
    }

    /// The polynomial `T`.
    pub fn t() -> Self {
        let mut p = Self::zero();
        p.add_coeff(1, &MzvCombo::one());
        p
    }

    pub fn add_coeff(&mut self, degree: u32, c: &MzvCombo) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(degree).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn coefficient(&self, degree: u32) -> MzvCombo {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> MzvCombo {
        self.coefficient(0)
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (u32, &MzvCombo)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&d, m) in &self.coeffs {
            out.add_coeff(d, &m.scale(c));
        }
        out
    }

    /// Multiplies by `T`.
    pub fn times_t(&self) -> Self {
        RegPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&d, c)| (d + 1, c.clone()))
                .collect(),
        }
    }

    pub fn product(&self, other: &RegPoly) -> RegPoly {
        let mut out = RegPoly::zero();
        for (&da, ca) in &self.coeffs {
            for (&db, cb) in &other.coeffs {
                out.add_coeff(da + db, &ca.product(cb));
            }
        }
        out
    }
}

impl AddAssign<&RegPoly> for RegPoly {
    fn add_assign(&mut self, rhs: &RegPoly) {
        for (&d, c) in &rhs.coeffs {
            self.add_coeff(d, c);
        }
    }
}

impl SubAssign<&RegPoly> for RegPoly {
    fn sub_assign(&mut self, rhs: &RegPoly) {
        for (&d, c) in &rhs.coeffs {
            self.add_coeff(d, &-c);
        }
    }
}

impl Add for &RegPoly {
    type Output = RegPoly;
    fn add(self, rhs: &RegPoly) -> RegPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &RegPoly {
    type Output = RegPoly;
    fn sub(self, rhs: &RegPoly) -> RegPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &RegPoly {
    type Output = RegPoly;
    fn mul(self, rhs: &RegPoly) -> RegPoly {
        self.product(rhs)
    }
}

impl fmt::Display for RegPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.coeffs.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match d {
                0 => write!(f, "[{c}]")?,
                1 => write!(f, "[{c}]·T")?,
                _ => write!(f, "[{c}]·T^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RegPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RegPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.coeffs.len()))?;
        for (d, c) in &self.coeffs {
            map.serialize_entry(&format!("T^{d}"), c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for RegPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, MzvCombo> = BTreeMap::deserialize(d)?;
        let mut out = RegPoly::zero();
        for (key, c) in raw {
            let deg: u32 = key
                .strip_prefix("T^")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| de::Error::custom(format!("bad degree key {key:?}")))?;
            out.add_coeff(deg, &c);
        }
        Ok(out)
    }
}
