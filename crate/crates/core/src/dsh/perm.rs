//! Permutations and the integral group ring `Z[S_n]`.

use std::collections::BTreeMap;
use std::fmt;

/// A permutation of `{0,…,n-1}` stored by images. Displayed 1-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// From 0-based images; panics unless `images` is a permutation.
    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(
                i < images.len() && !seen[i],
                "not a permutation: {images:?}"
            );
            seen[i] = true;
        }
        Perm(images)
    }

    /// From the 1-based second row of two-line notation.
    pub fn from_one_based(images: &[usize]) -> Self {
        Self::from_images(images.iter().map(|i| i - 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len(), "degree mismatch");
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// The same permutation in `S_m`, `m ≥ n`, fixing the new points.
    pub fn extend(&self, m: usize) -> Perm {
        let mut v = self.0.clone();
        v.extend(self.len()..m);
        Perm(v)
    }

    /// All permutations of `{0,…,n-1}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }

    /// `c_m`: `i ↦ i+1`, `m ↦ 1`.
    pub fn cycle(m: usize) -> Perm {
        Perm((0..m).map(|i| (i + 1) % m).collect())
    }

    /// The transposition of `a` and `b` (0-based) in `S_m`.
    pub fn transposition(m: usize, a: usize, b: usize) -> Perm {
        let mut v: Vec<usize> = (0..m).collect();
        v.swap(a, b);
        Perm(v)
    }

    /// `τ_n = (1, n+1)` in `S_{n+1}`.
    pub fn tau(n: usize) -> Perm {
        Self::transposition(n + 1, 0, n)
    }

    /// `σ'` in `S_{n+1}`: `i ↦ n-i` for `i < n`, and `n ↔ n+1`.
    pub fn sigma_prime(n: usize) -> Perm {
        let mut v: Vec<usize> = (0..n - 1).map(|i| n - 2 - i).collect();
        v.push(n);
        v.push(n - 1);
        Perm(v)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Finite integer combination of permutations of a fixed degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupRingElem {
    degree: usize,
    terms: BTreeMap<Perm, i64>,
}

impl GroupRingElem {
    pub fn zero(degree: usize) -> Self {
        GroupRingElem {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(degree: usize) -> Self {
        Self::from_perm(Perm::identity(degree))
    }

    pub fn from_perm(p: Perm) -> Self {
        let mut e = Self::zero(p.len());
        e.add_term(p, 1);
        e
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn add_term(&mut self, p: Perm, c: i64) {
        assert_eq!(p.len(), self.degree, "degree mismatch");
        let slot = self.terms.entry(p.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, i64)> {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &GroupRingElem) -> GroupRingElem {
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_term(p.clone(), c);
        }
        out
    }

    /// Convolution with `στ = σ ∘ τ`.
    pub fn mul(&self, other: &GroupRingElem) -> GroupRingElem {
        let mut out = Self::zero(self.degree);
        for (s, a) in self.terms() {
            for (t, b) in other.terms() {
                out.add_term(s.compose(t), a * b);
            }
        }
        out
    }

    /// Image under the inclusion `S_n ⊂ S_m`.
    pub fn extend(&self, m: usize) -> GroupRingElem {
        let mut out = Self::zero(m);
        for (p, c) in self.terms() {
            out.add_term(p.extend(m), c);
        }
        out
    }
}

/// `Sh_{n,i}`: permutations increasing on `1..i` and on `i+1..n`.
pub fn shuffle_set(n: usize, i: usize) -> Vec<Perm> {
    assert!(i <= n, "i must not exceed n");
    Perm::all(n)
        .into_iter()
        .filter(|p| {
            let v = p.images();
            v[..i].windows(2).all(|w| w[0] < w[1]) && v[i..].windows(2).all(|w| w[0] < w[1])
        })
        .collect()
}

/// `sh_{n,i} = Σ_{σ ∈ Sh_{n,i}} σ`.
pub fn shuffle_operator(n: usize, i: usize) -> GroupRingElem {
    let mut e = GroupRingElem::zero(n);
    for p in shuffle_set(n, i) {
        e.add_term(p, 1);
    }
    e
}

/// Both sides of `1 + sh_{n,1} c_{n+1} = c_{n+1} (1 + sh_{n,1} τ)` in
/// `Z[S_{n+1}]`, where `τ` is `τ_n` or any replacement.
pub fn groupring_sides(n: usize, tau: Option<&Perm>) -> (GroupRingElem, GroupRingElem) {
    let m = n + 1;
    let one = GroupRingElem::one(m);
    let sh = shuffle_operator(n, 1).extend(m);
    let c = GroupRingElem::from_perm(Perm::cycle(m));
    let t = match tau {
        Some(t) => GroupRingElem::from_perm(t.clone()),
        None => GroupRingElem::one(m),
    };
    let lhs = one.add(&sh.mul(&c));
    let rhs = c.mul(&one.add(&sh.mul(&t)));
    (lhs, rhs)
}

pub fn groupring_identity_check(n: usize) -> bool {
    let (l, r) = groupring_sides(n, Some(&Perm::tau(n)));
    l == r
}
