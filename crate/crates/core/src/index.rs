//! Indices and two-letter words.
//!
//! An index `(k_1, ..., k_n)` labels the nested sum over `0 < m_1 < ... < m_n`
//! of `1 / (m_1^{k_1} ... m_n^{k_n})`, so the *last* part carries the largest
//! summation variable and admissibility means `k_n >= 2`.
//!
//! Words are read in the iterated-integral order, leftmost letter outermost
//! (closest to 1). The index `(k_1, ..., k_n)` corresponds to the word
//!
//! ```text
//! A^{k_n - 1} B A^{k_{n-1} - 1} B ... A^{k_1 - 1} B
//! ```
//!
//! i.e. the parts appear in *reverse* order. Both conventions are common in
//! the literature; everything in this crate uses this one.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Serializes as the list of parts.
#[derive(Clone, PartialEq, Eq, Hash, Default, serde::Serialize)]
#[serde(transparent)]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if let Some(&p) = parts.iter().find(|&&p| p == 0) {
            return Err(Error::NonPositivePart(p as i64));
        }
        Ok(Index(parts))
    }

    /// Builds an index from parts known to be positive.
    ///
    /// Panics if a part is zero.
    pub fn from_slice(parts: &[u32]) -> Self {
        Index::new(parts.to_vec()).expect("index parts must be positive")
    }

    pub fn empty() -> Self {
        Index(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.last().is_none_or(|&k| k >= 2)
    }

    /// True when every part is odd (and the index is non-empty).
    pub fn is_totally_odd(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|k| k % 2 == 1)
    }

    pub fn reversed(&self) -> Index {
        Index(self.0.iter().rev().copied().collect())
    }

    /// Number of trailing parts equal to 1.
    pub fn trailing_ones(&self) -> usize {
        self.0.iter().rev().take_while(|&&k| k == 1).count()
    }

    pub fn concat(&self, other: &Index) -> Index {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Index(parts)
    }

    pub fn push(&mut self, part: u32) {
        assert!(part > 0, "index parts must be positive");
        self.0.push(part);
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Index {
        Index(self.0[range].to_vec())
    }

    pub fn to_word(&self) -> Word {
        word_of_index(self)
    }
}

impl Ord for Index {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.depth().cmp(&other.depth()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Index {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Index {
    type Err = Error;

    /// Accepts `(1,2,3)`, `1,2,3`, `()` and the empty string.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        if inner.is_empty() {
            return Ok(Index::empty());
        }
        let mut parts = Vec::new();
        for tok in inner.split(',') {
            let v: i64 = tok
                .trim()
                .parse()
                .map_err(|_| Error::ParseIndex(s.to_string()))?;
            if v <= 0 {
                return Err(Error::NonPositivePart(v));
            }
            parts.push(u32::try_from(v).map_err(|_| Error::ParseIndex(s.to_string()))?);
        }
        Ok(Index(parts))
    }
}

impl From<Index> for Vec<u32> {
    fn from(k: Index) -> Self {
        k.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn swapped(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ends_with_b(&self) -> bool {
        self.0.last() == Some(&Letter::B)
    }

    /// Admissible words are empty or start with `A` and end with `B`.
    pub fn is_admissible(&self) -> bool {
        self.0.is_empty() || (self.0[0] == Letter::A && self.ends_with_b())
    }

    pub fn leading(&self, letter: Letter) -> usize {
        self.0.iter().take_while(|&&l| l == letter).count()
    }

    pub fn trailing(&self, letter: Letter) -> usize {
        self.0.iter().rev().take_while(|&&l| l == letter).count()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    /// Reverses the word and exchanges `A` and `B`.
    pub fn dual(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.swapped()).collect())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    /// Copy of the word with `letter` inserted before position `at`.
    pub fn with_inserted(&self, at: usize, letter: Letter) -> Word {
        let mut v = self.0.clone();
        v.insert(at, letter);
        Word(v)
    }

    pub fn power(letter: Letter, n: usize) -> Word {
        Word(vec![letter; n])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            f.write_str(match l {
                Letter::A => "A",
                Letter::B => "B",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses a string over `{A, B}`; `""` and `"1"` denote the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "1" {
            return Ok(Word::empty());
        }
        t.chars()
            .map(|c| match c {
                'A' | 'a' => Ok(Letter::A),
                'B' | 'b' => Ok(Letter::B),
                _ => Err(Error::ParseWord(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// `(k_1, ..., k_n) -> A^{k_n-1} B ... A^{k_1-1} B`.
pub fn word_of_index(k: &Index) -> Word {
    let mut letters = Vec::with_capacity(k.weight() as usize);
    for &part in k.parts().iter().rev() {
        letters.extend(std::iter::repeat_n(Letter::A, part as usize - 1));
        letters.push(Letter::B);
    }
    Word(letters)
}

/// Inverse of [`word_of_index`] on words ending in `B` (or empty).
pub fn index_of_word(w: &Word) -> Result<Index> {
    if w.is_empty() {
        return Ok(Index::empty());
    }
    if !w.ends_with_b() {
        return Err(Error::WordNotBTerminated(w.to_string()));
    }
    let mut parts = Vec::new();
    let mut run = 1u32;
    for l in w.letters() {
        match l {
            Letter::A => run += 1,
            Letter::B => {
                parts.push(run);
                run = 1;
            }
        }
    }
    parts.reverse();
    Ok(Index(parts))
}

/// All compositions of `weight` into exactly `depth` positive parts, in
/// lexicographic order.
pub fn compositions(weight: u32, depth: usize) -> Vec<Index> {
    let mut out = Vec::new();
    if depth == 0 {
        if weight == 0 {
            out.push(Index::empty());
        }
        return out;
    }
    if (weight as usize) < depth {
        return out;
    }
    let mut cur = Vec::with_capacity(depth);
    fn rec(rem: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Index>) {
        if slots == 1 {
            cur.push(rem);
            out.push(Index(cur.clone()));
            cur.pop();
            return;
        }
        for first in 1..=(rem - (slots as u32 - 1)) {
            cur.push(first);
            rec(rem - first, slots - 1, cur, out);
            cur.pop();
        }
    }
    rec(weight, depth, &mut cur, &mut out);
    out
}

/// All indices of the given weight, any depth.
pub fn indices_of_weight(weight: u32) -> Vec<Index> {
    (0..=weight as usize)
        .flat_map(|d| compositions(weight, d))
        .collect()
}

/// All admissible indices of the given weight and depth at most `max_depth`.
pub fn admissible_indices(weight: u32, max_depth: usize) -> Vec<Index> {
    (0..=max_depth.min(weight as usize))
        .flat_map(|d| compositions(weight, d))
        .filter(|k| k.is_admissible())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let k: Index = "(1,2,3)".parse().unwrap();
        assert_eq!(k.parts(), &[1, 2, 3]);
        assert_eq!(k.to_string(), "(1,2,3)");
        assert_eq!("()".parse::<Index>().unwrap(), Index::empty());
        assert_eq!(
            " 2, 5 ".parse::<Index>().unwrap(),
            Index::from_slice(&[2, 5])
        );
        assert!("(0,2)".parse::<Index>().is_err());
        assert!("(a)".parse::<Index>().is_err());
        assert!(Index::new(vec![1, 0]).is_err());
    }

    #[test]
    fn weight_depth_admissibility() {
        let k = Index::from_slice(&[1, 2]);
        assert_eq!(k.weight(), 3);
        assert_eq!(k.depth(), 2);
        assert!(k.is_admissible());
        assert!(!Index::from_slice(&[2, 1]).is_admissible());
        assert!(Index::empty().is_admissible());
        assert_eq!(Index::empty().weight(), 0);
        assert_eq!(Index::from_slice(&[3, 1, 1]).trailing_ones(), 2);
    }

    #[test]
    fn word_convention() {
        // (1,2) -> A^{1} B A^{0} B
        let w = word_of_index(&Index::from_slice(&[1, 2]));
        assert_eq!(w.to_string(), "ABB");
        assert_eq!(word_of_index(&Index::empty()), Word::empty());
        assert_eq!(
            word_of_index(&Index::from_slice(&[2, 1])).to_string(),
            "BAB"
        );
        let back = index_of_word(&"BAB".parse().unwrap()).unwrap();
        assert_eq!(back, Index::from_slice(&[2, 1]));
        assert!(index_of_word(&"ABA".parse().unwrap()).is_err());
        assert!(w.is_admissible());
        assert!(!"BAB".parse::<Word>().unwrap().is_admissible());
    }

    #[test]
    fn word_round_trip_exhaustive() {
        for weight in 0..=8 {
            for k in indices_of_weight(weight) {
                let w = word_of_index(&k);
                assert_eq!(w.len() as u32, weight);
                assert_eq!(index_of_word(&w).unwrap(), k);
                assert_eq!(w.is_admissible(), k.is_admissible());
            }
        }
    }

    #[test]
    fn composition_counts() {
        // binomial(w-1, d-1)
        assert_eq!(compositions(5, 2).len(), 4);
        assert_eq!(compositions(6, 3).len(), 10);
        assert_eq!(compositions(0, 0).len(), 1);
        assert_eq!(compositions(2, 3).len(), 0);
        assert_eq!(indices_of_weight(6).len(), 32);
        // admissible indices of weight w: 2^{w-2}
        assert_eq!(admissible_indices(6, 6).len(), 16);
    }

    #[test]
    fn dual_word() {
        let w: Word = "AAB".parse().unwrap();
        assert_eq!(w.dual().to_string(), "ABB");
        assert_eq!(w.dual().dual(), w);
    }
}
