//! Binary words, dyadic rationals and complete prefix codes.
//!
//! A word `u` over `{0,1}` addresses the dyadic interval `[u] = [.u, .u + 2^-|u|]`.
//! The empty word addresses `[0,1]` and prints as `e`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid symbol {0:?} in binary word")]
    InvalidSymbol(char),
    #[error("words {0} and {1} are comparable")]
    Comparable(BinaryWord, BinaryWord),
    #[error("invalid dyadic rational {0:?}")]
    InvalidDyadic(String),
    #[error("dyadic rational {0} lies outside [0,1]")]
    OutOfRange(String),
    #[error("not a complete prefix code: {0}")]
    InvalidCode(String),
}

/// A finite word over `{0,1}`.
///
/// Ordering is lexicographic with `0 < 1` and a prefix sorting before its
/// extensions; on incomparable words this is the left-to-right order of
/// their intervals.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord(Vec<u8>);

impl BinaryWord {
    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    /// Builds a word from bits; any non-zero entry counts as `1`.
    pub fn from_bits<I: IntoIterator<Item = u8>>(bits: I) -> Self {
        BinaryWord(bits.into_iter().map(|b| (b != 0) as u8).collect())
    }

    pub fn repeat(bit: u8, n: usize) -> Self {
        BinaryWord(vec![(bit != 0) as u8; n])
    }

    pub fn zeros(n: usize) -> Self {
        Self::repeat(0, n)
    }

    pub fn ones(n: usize) -> Self {
        Self::repeat(1, n)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn push(&mut self, bit: u8) {
        self.0.push((bit != 0) as u8);
    }

    pub fn pop(&mut self) -> Option<u8> {
        self.0.pop()
    }

    /// `self · bit`
    pub fn child(&self, bit: u8) -> Self {
        let mut w = self.clone();
        w.push(bit);
        w
    }

    /// `self · other`
    pub fn concat(&self, other: &BinaryWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BinaryWord(v)
    }

    /// `self · bit^n`
    pub fn with_run(&self, bit: u8, n: usize) -> Self {
        let mut w = self.clone();
        w.0.extend(std::iter::repeat((bit != 0) as u8).take(n));
        w
    }

    pub fn parent(&self) -> Option<Self> {
        if self.is_empty() {
            None
        } else {
            Some(BinaryWord(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn prefix(&self, len: usize) -> Self {
        BinaryWord(self.0[..len].to_vec())
    }

    pub fn is_prefix_of(&self, other: &BinaryWord) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_strict_prefix_of(&self, other: &BinaryWord) -> bool {
        self.len() < other.len() && self.is_prefix_of(other)
    }

    pub fn is_incomparable(&self, other: &BinaryWord) -> bool {
        !self.is_prefix_of(other) && !other.is_prefix_of(self)
    }

    /// The remainder `σ` with `self = prefix · σ`, if `prefix` is a prefix.
    pub fn strip_prefix(&self, prefix: &BinaryWord) -> Option<BinaryWord> {
        self.0
            .strip_prefix(prefix.0.as_slice())
            .map(|rest| BinaryWord(rest.to_vec()))
    }

    /// Removes every trailing copy of `bit`.
    pub fn trim_trailing(&self, bit: u8) -> Self {
        let mut v = self.0.clone();
        while v.last() == Some(&bit) {
            v.pop();
        }
        BinaryWord(v)
    }

    /// Number of trailing copies of `bit`.
    pub fn trailing_run(&self, bit: u8) -> usize {
        self.0.iter().rev().take_while(|&&b| b == bit).count()
    }

    /// Bitwise complement; the image of `[u]` under `t ↦ 1 - t` is `[complement(u)]`.
    pub fn complement(&self) -> Self {
        BinaryWord(self.0.iter().map(|b| 1 - b).collect())
    }

    pub fn is_all(&self, bit: u8) -> bool {
        self.0.iter().all(|&b| b == bit)
    }

    /// Membership in the set of words containing both digits.
    pub fn in_b_prime(&self) -> bool {
        self.0.contains(&0) && self.0.contains(&1)
    }

    /// The left endpoint `.u` of `[u]`.
    pub fn to_dyadic(&self) -> DyadicRational {
        DyadicRational::from_parts(self.to_numerator(), self.len() as u64)
    }

    /// The right endpoint `.u + 2^-|u|` of `[u]`.
    pub fn right_endpoint(&self) -> DyadicRational {
        let num = self.to_numerator() + 1u32;
        DyadicRational::from_parts(num, self.len() as u64)
    }

    fn to_numerator(&self) -> BigUint {
        let mut num = BigUint::zero();
        for &b in &self.0 {
            num <<= 1;
            if b == 1 {
                num += 1u32;
            }
        }
        num
    }

    /// All words of length exactly `n`, in lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = BinaryWord> {
        let count: u64 = 1 << n;
        (0..count).map(move |x| BinaryWord::from_bits((0..n).rev().map(|i| ((x >> i) & 1) as u8)))
    }

    /// All words of length at most `n`, shortest first.
    pub fn all_up_to(n: usize) -> impl Iterator<Item = BinaryWord> {
        (0..=n).flat_map(BinaryWord::all_of_length)
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for &b in &self.0 {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryWord({self})")
    }
}

impl FromStr for BinaryWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "e" || s.is_empty() || s == "ε" {
            return Ok(BinaryWord::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(WordError::InvalidSymbol(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BinaryWord)
    }
}

impl serde::Serialize for BinaryWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for BinaryWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for parsing a word literal in code and tests. Panics on bad input.
pub fn word(s: &str) -> BinaryWord {
    s.parse().expect("valid binary word literal")
}

pub fn is_prefix(u: &BinaryWord, v: &BinaryWord) -> bool {
    u.is_prefix_of(v)
}

pub fn is_incomparable(u: &BinaryWord, v: &BinaryWord) -> bool {
    u.is_incomparable(v)
}

/// `[u] < [v]` for incomparable words.
pub fn interval_less(u: &BinaryWord, v: &BinaryWord) -> Result<bool, WordError> {
    if !u.is_incomparable(v) {
        return Err(WordError::Comparable(u.clone(), v.clone()));
    }
    Ok(u < v)
}

pub fn word_to_dyadic(u: &BinaryWord) -> DyadicRational {
    u.to_dyadic()
}

/// An exact number `numerator / 2^exponent` in `[0,1]`, kept with an odd
/// numerator or a zero exponent.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    numerator: BigUint,
    exponent: u64,
}

impl DyadicRational {
    pub fn zero() -> Self {
        DyadicRational { numerator: BigUint::zero(), exponent: 0 }
    }

    pub fn one() -> Self {
        DyadicRational { numerator: BigUint::one(), exponent: 0 }
    }

    /// Normalizes `numerator / 2^exponent`. Values above 1 are rejected.
    pub fn new(numerator: BigUint, exponent: u64) -> Result<Self, WordError> {
        let d = Self::from_parts(numerator, exponent);
        if d.numerator > (BigUint::one() << d.exponent) {
            return Err(WordError::OutOfRange(d.to_string()));
        }
        Ok(d)
    }

    pub fn from_u64(numerator: u64, exponent: u64) -> Result<Self, WordError> {
        Self::new(BigUint::from(numerator), exponent)
    }

    fn from_parts(mut numerator: BigUint, mut exponent: u64) -> Self {
        if numerator.is_zero() {
            return Self::zero();
        }
        let tz = numerator.trailing_zeros().unwrap_or(0).min(exponent);
        numerator >>= tz;
        exponent -= tz;
        DyadicRational { numerator, exponent }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0 && self.numerator.is_one()
    }

    /// The finite binary expansion `s` with `.s = self`, trailing zeros
    /// stripped. `None` for the value 1, which has no finite expansion below 1.
    pub fn to_word(&self) -> Option<BinaryWord> {
        if self.is_one() {
            return None;
        }
        let n = self.exponent as usize;
        let bits = (0..n).rev().map(|i| self.numerator.bit(i as u64) as u8);
        Some(BinaryWord::from_bits(bits))
    }

    /// `k/2^n` rendering.
    pub fn to_power_form(&self) -> String {
        format!("{}/2^{}", self.numerator, self.exponent)
    }

    /// `.s` rendering; `1` renders as `1`.
    pub fn to_binary(&self) -> String {
        match self.to_word() {
            None => "1".to_string(),
            Some(w) if w.is_empty() => ".0".to_string(),
            Some(w) => format!(".{w}"),
        }
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        let a = &self.numerator << (e - self.exponent);
        let b = &other.numerator << (e - other.exponent);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, BigUint::one() << self.exponent)
        }
    }
}

impl fmt::Debug for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for DyadicRational {
    type Err = WordError;

    /// Accepts `k/2^n`, `k/m` with `m` a power of two, `.s`, and plain `0` / `1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || WordError::InvalidDyadic(s.to_string());
        if let Some(bits) = s.strip_prefix('.') {
            let w: BinaryWord = bits.parse().map_err(|_| bad())?;
            return Ok(w.to_dyadic());
        }
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let numerator: BigUint = num.parse().map_err(|_| bad())?;
        let exponent = match den {
            None => 0,
            Some(d) => {
                if let Some(e) = d.strip_prefix("2^") {
                    e.parse::<u64>().map_err(|_| bad())?
                } else {
                    let m: BigUint = d.parse().map_err(|_| bad())?;
                    if m.is_zero() || m.count_ones() != 1 {
                        return Err(bad());
                    }
                    m.trailing_zeros().unwrap_or(0)
                }
            }
        };
        DyadicRational::new(numerator, exponent)
    }
}

/// A complete prefix code: the leaf set of a finite full binary tree, left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrefixCode(Vec<BinaryWord>);

impl PrefixCode {
    pub fn new(branches: Vec<BinaryWord>) -> Result<Self, WordError> {
        if !is_complete_prefix_code(&branches) {
            return Err(WordError::InvalidCode(
                branches.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" "),
            ));
        }
        Ok(PrefixCode(branches))
    }

    /// The single-leaf tree.
    pub fn trivial() -> Self {
        PrefixCode(vec![BinaryWord::empty()])
    }

    /// Leaves of the smallest full tree having every word in `required` as a
    /// leaf. The words must be pairwise incomparable.
    pub fn completion_of(required: &[BinaryWord]) -> Result<Self, WordError> {
        for (i, a) in required.iter().enumerate() {
            for b in &required[i + 1..] {
                if !a.is_incomparable(b) {
                    return Err(WordError::Comparable(a.clone(), b.clone()));
                }
            }
        }
        let mut internal = std::collections::BTreeSet::new();
        for w in required {
            for len in 0..w.len() {
                internal.insert(w.prefix(len));
            }
        }
        if internal.is_empty() {
            return Ok(Self::trivial());
        }
        let mut leaves: Vec<BinaryWord> = internal
            .iter()
            .flat_map(|p| [p.child(0), p.child(1)])
            .filter(|c| !internal.contains(c))
            .collect();
        leaves.sort();
        PrefixCode::new(leaves)
    }

    pub fn branches(&self) -> &[BinaryWord] {
        &self.0
    }

    pub fn into_branches(self) -> Vec<BinaryWord> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> &BinaryWord {
        &self.0[0]
    }

    pub fn last(&self) -> &BinaryWord {
        &self.0[self.0.len() - 1]
    }

    pub fn position(&self, w: &BinaryWord) -> Option<usize> {
        self.0.binary_search(w).ok()
    }

    pub fn contains(&self, w: &BinaryWord) -> bool {
        self.position(w).is_some()
    }

    /// Replaces the leaf at `index` by the leaves of `subtree` hung below it.
    pub fn attach(&self, index: usize, subtree: &PrefixCode) -> PrefixCode {
        let leaf = &self.0[index];
        let mut out = Vec::with_capacity(self.0.len() + subtree.len() - 1);
        out.extend_from_slice(&self.0[..index]);
        out.extend(subtree.0.iter().map(|s| leaf.concat(s)));
        out.extend_from_slice(&self.0[index + 1..]);
        PrefixCode(out)
    }

    /// Like [`attach`](Self::attach) but addressed by leaf label.
    pub fn attach_at(&self, leaf: &BinaryWord, subtree: &PrefixCode) -> Result<PrefixCode, WordError> {
        let i = self
            .position(leaf)
            .ok_or_else(|| WordError::InvalidCode(format!("{leaf} is not a leaf")))?;
        Ok(self.attach(i, subtree))
    }

    /// The minimal tree having `bit^n` as a branch: a spine of `n` carets.
    pub fn spine(bit: u8, n: usize) -> PrefixCode {
        let other = 1 - bit;
        let mut leaves: Vec<BinaryWord> =
            (0..n).map(|i| BinaryWord::repeat(bit, i).child(other)).collect();
        leaves.push(BinaryWord::repeat(bit, n));
        leaves.sort();
        PrefixCode(leaves)
    }

    /// A single caret.
    pub fn caret() -> PrefixCode {
        PrefixCode(vec![BinaryWord::zeros(1), BinaryWord::ones(1)])
    }

    /// Number of internal nodes.
    pub fn caret_count(&self) -> usize {
        self.0.len() - 1
    }

    /// The common refinement of two complete codes: leaves of the union tree.
    pub fn common_refinement(&self, other: &PrefixCode) -> PrefixCode {
        let mut out = Vec::new();
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] == b[j] {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            } else if a[i].is_prefix_of(&b[j]) {
                while j < b.len() && a[i].is_prefix_of(&b[j]) {
                    out.push(b[j].clone());
                    j += 1;
                }
                i += 1;
            } else {
                while i < a.len() && b[j].is_prefix_of(&a[i]) {
                    out.push(a[i].clone());
                    i += 1;
                }
                j += 1;
            }
        }
        PrefixCode(out)
    }

    /// Complement every branch and reverse: the tree mirrored left to right.
    pub fn mirror(&self) -> PrefixCode {
        PrefixCode(self.0.iter().rev().map(BinaryWord::complement).collect())
    }
}

/// True iff the words are the leaves, left to right, of a finite full binary tree.
pub fn is_complete_prefix_code(branches: &[BinaryWord]) -> bool {
    // Shift-reduce: merge sibling leaves into their parent; a complete code
    // collapses to the root.
    let mut stack: Vec<BinaryWord> = Vec::new();
    for b in branches {
        if let Some(top) = stack.last() {
            if top >= b || !top.is_incomparable(b) {
                return false;
            }
        }
        stack.push(b.clone());
        while stack.len() >= 2 {
            let n = stack.len();
            let (x, y) = (&stack[n - 2], &stack[n - 1]);
            if x.len() == y.len() && x.last() == Some(0) && y.last() == Some(1) && x.parent() == y.parent() {
                let p = y.parent().expect("non-empty");
                stack.truncate(n - 2);
                stack.push(p);
            } else {
                break;
            }
        }
    }
    stack.len() == 1 && stack[0].is_empty()
}
