//! Order-preserving surjections, stuffle and shuffle products, and the
//! local cone weight of the region `1/t_1 > ... > 1/t_n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::index::{Index, Letter, Word};

/// A multiset stored as a sorted element -> multiplicity map, so equality is
/// multiplicity-aware and canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiset<T: Ord>(BTreeMap<T, u64>);

impl<T: Ord> Default for Multiset<T> {
    fn default() -> Self {
        Multiset(BTreeMap::new())
    }
}

impl<T: Ord> Multiset<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, item: T, mult: u64) {
        if mult > 0 {
            *self.0.entry(item).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, item: &T) -> u64 {
        self.0.get(item).copied().unwrap_or(0)
    }

    /// Total size counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn distinct(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, u64)> {
        self.0.iter().map(|(k, &v)| (k, v))
    }

    /// Disjoint union.
    pub fn extend(&mut self, other: Multiset<T>) {
        for (k, v) in other.0 {
            self.insert(k, v);
        }
    }
}

impl<T: Ord> FromIterator<T> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut m = Multiset::new();
        for x in iter {
            m.insert(x, 1);
        }
        m
    }
}

impl<T: Ord> IntoIterator for Multiset<T> {
    type Item = (T, u64);
    type IntoIter = std::collections::btree_map::IntoIter<T, u64>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// A weakly order-preserving surjection `{1..n} -> {1..m}`, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedSurjection {
    image: Vec<usize>,
    m: usize,
}

impl OrderedSurjection {
    /// Builds the surjection from 1-based images, checking monotonicity and
    /// surjectivity.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 || images[0] != 1 {
            return Err(Error::Invalid(format!(
                "surjection images must start at 1: {images:?}"
            )));
        }
        for w in images.windows(2) {
            if w[1] != w[0] && w[1] != w[0] + 1 {
                return Err(Error::Invalid(format!(
                    "images {images:?} are not an ordered surjection"
                )));
            }
        }
        Ok(OrderedSurjection {
            image: images.iter().map(|&j| j - 1).collect(),
            m: images[n - 1],
        })
    }

    /// The surjection whose fibres have the given consecutive sizes.
    pub fn from_block_sizes(blocks: &[usize]) -> Self {
        let mut image = Vec::new();
        for (j, &b) in blocks.iter().enumerate() {
            assert!(b > 0, "fibres of a surjection are non-empty");
            image.extend(std::iter::repeat_n(j, b));
        }
        OrderedSurjection {
            image,
            m: blocks.len(),
        }
    }

    pub fn identity(n: usize) -> Self {
        OrderedSurjection::from_block_sizes(&vec![1; n])
    }

    pub fn source_len(&self) -> usize {
        self.image.len()
    }

    pub fn target_len(&self) -> usize {
        self.m
    }

    /// Image of `i` (1-based in, 1-based out).
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1] + 1
    }

    pub fn fibre_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.m];
        for &j in &self.image {
            sizes[j] += 1;
        }
        sizes
    }

    /// Order of the stabilizer `{σ : φ∘σ = φ}` in the symmetric group,
    /// i.e. the product of the factorials of the fibre sizes.
    pub fn stabilizer_order(&self) -> u64 {
        self.fibre_sizes()
            .iter()
            .map(|&b| factorial(b as u64))
            .product()
    }

    /// Sums the parts of `k` over each fibre.
    pub fn push_index(&self, k: &Index) -> Result<Index> {
        if k.depth() != self.image.len() {
            return Err(Error::DepthMismatch {
                expected: self.image.len(),
                actual: k.depth(),
            });
        }
        let mut parts = vec![0u32; self.m];
        for (&j, &kp) in self.image.iter().zip(k.parts()) {
            parts[j] += kp;
        }
        Index::new(parts)
    }
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// All weakly order-preserving surjections `{1..n} -> {1..m}`, enumerated as
/// compositions of `n` into `m` fibre sizes.
pub fn enumerate_surjections(n: usize, m: usize) -> Result<Vec<OrderedSurjection>> {
    if m < 1 || m > n {
        return Err(Error::SurjectionRange { n, m });
    }
    Ok(crate::index::compositions(n as u32, m)
        .into_iter()
        .map(|c| {
            let sizes: Vec<usize> = c.parts().iter().map(|&b| b as usize).collect();
            OrderedSurjection::from_block_sizes(&sizes)
        })
        .collect())
}

/// All ordered surjections out of `{1..n}`, over every target size.
pub fn all_surjections(n: usize) -> Vec<OrderedSurjection> {
    (1..=n)
        .flat_map(|m| enumerate_surjections(n, m).expect("1 <= m <= n"))
        .collect()
}

/// Terms of the surjection expansion `Σ_φ (1/♯G_φ) · (φ_* k)`, as
/// (collapsed index, weight) pairs. The empty index maps to itself.
pub fn surjection_expansion(k: &Index) -> Vec<(Index, BigRational)> {
    if k.is_empty() {
        return vec![(Index::empty(), BigRational::one())];
    }
    all_surjections(k.depth())
        .into_iter()
        .map(|phi| {
            let w = BigRational::new(BigInt::one(), BigInt::from(phi.stabilizer_order()));
            (phi.push_index(k).expect("depth matches"), w)
        })
        .collect()
}

fn stuffle_rec(a: &[u32], b: &[u32], out: &mut Vec<Vec<u32>>) {
    if a.is_empty() {
        out.push(b.to_vec());
        return;
    }
    if b.is_empty() {
        out.push(a.to_vec());
        return;
    }
    let (x, a0) = a.split_last().unwrap();
    let (y, b0) = b.split_last().unwrap();
    let mut tmp = Vec::new();
    stuffle_rec(a0, b, &mut tmp);
    for mut v in tmp.drain(..) {
        v.push(*x);
        out.push(v);
    }
    stuffle_rec(a, b0, &mut tmp);
    for mut v in tmp.drain(..) {
        v.push(*y);
        out.push(v);
    }
    stuffle_rec(a0, b0, &mut tmp);
    for mut v in tmp.drain(..) {
        v.push(x + y);
        out.push(v);
    }
}

/// The quasi-shuffle (stuffle) product of two indices as a multiset.
pub fn stuffle(a: &Index, b: &Index) -> Multiset<Index> {
    let mut out = Vec::new();
    stuffle_rec(a.parts(), b.parts(), &mut out);
    out.into_iter()
        .map(|p| Index::new(p).expect("positive"))
        .collect()
}

fn shuffle_rec(u: &[Letter], v: &[Letter], out: &mut Vec<Vec<Letter>>) {
    if u.is_empty() {
        out.push(v.to_vec());
        return;
    }
    if v.is_empty() {
        out.push(u.to_vec());
        return;
    }
    let mut tmp = Vec::new();
    shuffle_rec(&u[1..], v, &mut tmp);
    for w in tmp.drain(..) {
        let mut x = Vec::with_capacity(w.len() + 1);
        x.push(u[0]);
        x.extend(w);
        out.push(x);
    }
    shuffle_rec(u, &v[1..], &mut tmp);
    for w in tmp.drain(..) {
        let mut x = Vec::with_capacity(w.len() + 1);
        x.push(v[0]);
        x.extend(w);
        out.push(x);
    }
}

/// All interleavings of `u` and `v` preserving the internal letter order.
pub fn shuffle_words(u: &Word, v: &Word) -> Multiset<Word> {
    let mut out = Vec::new();
    shuffle_rec(u.letters(), v.letters(), &mut out);
    out.into_iter().map(Word::new).collect()
}

/// Shuffle product of two sequences of arbitrary labels; used for the
/// index-level shuffle of generating functions.
pub fn shuffle_sequences(u: &[u32], v: &[u32]) -> Vec<Vec<u32>> {
    if u.is_empty() {
        return vec![v.to_vec()];
    }
    if v.is_empty() {
        return vec![u.to_vec()];
    }
    let mut out = Vec::new();
    for w in shuffle_sequences(&u[1..], v) {
        let mut x = vec![u[0]];
        x.extend(w);
        out.push(x);
    }
    for w in shuffle_sequences(u, &v[1..]) {
        let mut x = vec![v[0]];
        x.extend(w);
        out.push(x);
    }
    out
}

/// The pairs `((k_1..k_i), (k_n..k_{i+1}))` for `0 <= i <= n`; note the
/// second component is reversed.
pub fn splitting_pairs(k: &Index) -> Vec<(Index, Index)> {
    (0..=k.depth())
        .map(|i| (k.slice(0..i), k.slice(i..k.depth()).reversed()))
        .collect()
}

/// Local volume fraction at an integer point `m` of the region
/// `{t : 1/t_1 > ... > 1/t_n}`.
///
/// The point is inside the closure iff `1/m_i >= 1/m_{i+1}` for all `i`;
/// maximal runs of equal coordinates then contribute `1/(run length)!`.
pub fn cone_weight(m: &[i64]) -> Result<BigRational> {
    if m.contains(&0) {
        return Err(Error::ZeroCoordinate);
    }
    let recip = |x: i64| BigRational::new(BigInt::one(), BigInt::from(x));
    let mut denom: u64 = 1;
    let mut run = 1u64;
    for w in m.windows(2) {
        let (a, b) = (recip(w[0]), recip(w[1]));
        if a < b {
            return Ok(BigRational::zero());
        }
        if a == b {
            run += 1;
        } else {
            denom *= factorial(run);
            run = 1;
        }
    }
    denom *= factorial(run);
    Ok(BigRational::new(BigInt::one(), BigInt::from(denom)))
}
