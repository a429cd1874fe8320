//! Elements of Thompson's group F as reduced tree diagrams.
//!
//! An element is stored as its reduced list of branch pairs `u_i -> v_i`:
//! the domain words and the range words are each the leaves of a full binary
//! tree, and the element maps `[u_i]` linearly onto `[v_i]`. Since the
//! reduced diagram is unique, equality of elements is equality of pair lists.
//!
//! Products are read left to right: `a.compose(&b)` acts as `a` then `b`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::words::{is_complete_prefix_code, BinaryWord, DyadicRational, PrefixCode, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementError {
    #[error("{side} words do not form a complete prefix code")]
    InvalidCode { side: &'static str },
    #[error("domain has {domain} branches but range has {range}")]
    LengthMismatch { domain: usize, range: usize },
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("point {0} is outside the allowed range")]
    OutOfRange(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A pair of trees with equally many leaves, stored as aligned leaf lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeDiagram {
    domain: PrefixCode,
    range: PrefixCode,
}

impl TreeDiagram {
    pub fn new(domain: PrefixCode, range: PrefixCode) -> Result<Self, ElementError> {
        if domain.len() != range.len() {
            return Err(ElementError::LengthMismatch { domain: domain.len(), range: range.len() });
        }
        Ok(TreeDiagram { domain, range })
    }

    pub fn domain(&self) -> &PrefixCode {
        &self.domain
    }

    pub fn range(&self) -> &PrefixCode {
        &self.range
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&BinaryWord, &BinaryWord)> {
        self.domain.branches().iter().zip(self.range.branches())
    }
}

/// Removes common carets until none remain.
pub fn reduce(d: &TreeDiagram) -> TreeDiagram {
    let pairs: Vec<_> = d.pairs().map(|(u, v)| (u.clone(), v.clone())).collect();
    let reduced = reduce_pairs(pairs);
    let (dom, ran): (Vec<_>, Vec<_>) = reduced.into_iter().unzip();
    TreeDiagram {
        domain: PrefixCode::new(dom).expect("reduction keeps codes complete"),
        range: PrefixCode::new(ran).expect("reduction keeps codes complete"),
    }
}

fn is_caret(a: &BinaryWord, b: &BinaryWord) -> bool {
    a.len() == b.len() && a.last() == Some(0) && b.last() == Some(1) && a.parent() == b.parent()
}

fn reduce_pairs(pairs: Vec<(BinaryWord, BinaryWord)>) -> Vec<(BinaryWord, BinaryWord)> {
    let mut stack: Vec<(BinaryWord, BinaryWord)> = Vec::with_capacity(pairs.len());
    for p in pairs {
        stack.push(p);
        while stack.len() >= 2 {
            let n = stack.len();
            let ((u0, v0), (u1, v1)) = (&stack[n - 2], &stack[n - 1]);
            if is_caret(u0, u1) && is_caret(v0, v1) {
                let merged = (u0.parent().unwrap(), v0.parent().unwrap());
                stack.truncate(n - 2);
                stack.push(merged);
            } else {
                break;
            }
        }
    }
    stack
}

/// `(log2 f'(0+), log2 f'(1-))`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AbelianImage {
    pub at_zero: i64,
    pub at_one: i64,
}

impl AbelianImage {
    pub fn new(at_zero: i64, at_one: i64) -> Self {
        AbelianImage { at_zero, at_one }
    }

    pub fn is_trivial(&self) -> bool {
        self.at_zero == 0 && self.at_one == 0
    }

    pub fn swapped(self) -> Self {
        AbelianImage { at_zero: self.at_one, at_one: self.at_zero }
    }
}

impl std::ops::Add for AbelianImage {
    type Output = AbelianImage;
    fn add(self, o: Self) -> Self {
        AbelianImage::new(self.at_zero + o.at_zero, self.at_one + o.at_one)
    }
}

impl std::ops::Neg for AbelianImage {
    type Output = AbelianImage;
    fn neg(self) -> Self {
        AbelianImage::new(-self.at_zero, -self.at_one)
    }
}

impl fmt::Display for AbelianImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.at_zero, self.at_one)
    }
}

/// An element of F in canonical (reduced) form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    pairs: Vec<(BinaryWord, BinaryWord)>,
}

impl Element {
    pub fn identity() -> Self {
        Element { pairs: vec![(BinaryWord::empty(), BinaryWord::empty())] }
    }

    pub fn x0() -> Self {
        Self::from_literal(&[("00", "0"), ("01", "10"), ("1", "11")])
    }

    pub fn x1() -> Self {
        Self::from_literal(&[("0", "0"), ("100", "10"), ("101", "110"), ("11", "111")])
    }

    fn from_literal(pairs: &[(&str, &str)]) -> Self {
        Self::from_branch_pairs(
            pairs.iter().map(|(u, v)| (crate::words::word(u), crate::words::word(v))).collect(),
        )
        .expect("literal table is a valid diagram")
    }

    /// The element mapping `[u_i]` linearly onto `[v_i]`, reduced.
    pub fn from_branch_pairs(pairs: Vec<(BinaryWord, BinaryWord)>) -> Result<Self, ElementError> {
        let (dom, ran): (Vec<_>, Vec<_>) = pairs.iter().cloned().unzip();
        if !is_complete_prefix_code(&dom) {
            return Err(ElementError::InvalidCode { side: "domain" });
        }
        if !is_complete_prefix_code(&ran) {
            return Err(ElementError::InvalidCode { side: "range" });
        }
        Ok(Element { pairs: reduce_pairs(pairs) })
    }

    pub fn from_diagram(d: &TreeDiagram) -> Self {
        Element { pairs: reduce_pairs(d.pairs().map(|(u, v)| (u.clone(), v.clone())).collect()) }
    }

    /// From two leaf lists, validating both codes and their lengths.
    pub fn from_codes(domain: Vec<BinaryWord>, range: Vec<BinaryWord>) -> Result<Self, ElementError> {
        if domain.len() != range.len() {
            return Err(ElementError::LengthMismatch { domain: domain.len(), range: range.len() });
        }
        Self::from_branch_pairs(domain.into_iter().zip(range).collect())
    }

    pub fn diagram(&self) -> TreeDiagram {
        let (dom, ran): (Vec<_>, Vec<_>) = self.pairs.iter().cloned().unzip();
        TreeDiagram { domain: PrefixCode::new(dom).unwrap(), range: PrefixCode::new(ran).unwrap() }
    }

    pub fn pairs(&self) -> &[(BinaryWord, BinaryWord)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.len() == 1
    }

    pub fn domain_code(&self) -> PrefixCode {
        PrefixCode::new(self.pairs.iter().map(|p| p.0.clone()).collect()).unwrap()
    }

    pub fn range_code(&self) -> PrefixCode {
        PrefixCode::new(self.pairs.iter().map(|p| p.1.clone()).collect()).unwrap()
    }

    pub fn invert(&self) -> Element {
        Element { pairs: self.pairs.iter().map(|(u, v)| (v.clone(), u.clone())).collect() }
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Element) -> Element {
        let common = self.range_code().common_refinement(&other.domain_code());
        let refined = common.branches();
        let mut out = Vec::with_capacity(refined.len());
        // Walk both pair lists alongside the refined code. Each refined word
        // lies under exactly one range word of `self` and one domain word of `other`.
        let (mut i, mut j) = (0, 0);
        for r in refined {
            while !self.pairs[i].1.is_prefix_of(r) {
                i += 1;
            }
            while !other.pairs[j].0.is_prefix_of(r) {
                j += 1;
            }
            let (u, v) = &self.pairs[i];
            let (u2, v2) = &other.pairs[j];
            let sigma = r.strip_prefix(v).unwrap();
            let tau = r.strip_prefix(u2).unwrap();
            out.push((u.concat(&sigma), v2.concat(&tau)));
        }
        Element { pairs: reduce_pairs(out) }
    }

    pub fn pow(&self, k: i64) -> Element {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut acc = Element::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// Index of the branch `u_i` that is a prefix of the infinite word `q · tail^∞`.
    fn branch_of(&self, q: &BinaryWord, tail: u8) -> usize {
        self.pairs
            .iter()
            .position(|(u, _)| {
                if u.len() <= q.len() {
                    u.is_prefix_of(q)
                } else {
                    q.is_prefix_of(u) && u.bits()[q.len()..].iter().all(|&b| b == tail)
                }
            })
            .expect("a complete code covers every infinite word")
    }

    /// The exact image of a dyadic point.
    pub fn evaluate(&self, t: &DyadicRational) -> DyadicRational {
        let Some(s) = t.to_word() else {
            return DyadicRational::one();
        };
        let i = self.branch_of(&s, 0);
        let (u, v) = &self.pairs[i];
        let sigma = s.strip_prefix(u).unwrap_or_default();
        v.concat(&sigma).to_dyadic()
    }

    /// `log2` of the slope on the piece immediately right of `t`, for `0 <= t < 1`.
    pub fn slope_right(&self, t: &DyadicRational) -> Result<i64, ElementError> {
        let s = t.to_word().ok_or_else(|| ElementError::OutOfRange(t.to_string()))?;
        let (u, v) = &self.pairs[self.branch_of(&s, 0)];
        Ok(u.len() as i64 - v.len() as i64)
    }

    /// `log2` of the slope on the piece immediately left of `t`, for `0 < t <= 1`.
    pub fn slope_left(&self, t: &DyadicRational) -> Result<i64, ElementError> {
        if t.is_zero() {
            return Err(ElementError::OutOfRange(t.to_string()));
        }
        // Write t as .q 1^∞: for t = .p1 that is q = p0, for t = 1 it is q = ε.
        let q = match t.to_word() {
            None => BinaryWord::empty(),
            Some(mut s) => {
                s.pop();
                s.push(0);
                s
            }
        };
        let (u, v) = &self.pairs[self.branch_of(&q, 1)];
        Ok(u.len() as i64 - v.len() as i64)
    }

    pub fn abelianize(&self) -> AbelianImage {
        let (u1, v1) = &self.pairs[0];
        let (un, vn) = &self.pairs[self.pairs.len() - 1];
        AbelianImage::new(u1.len() as i64 - v1.len() as i64, un.len() as i64 - vn.len() as i64)
    }

    pub fn in_derived(&self) -> bool {
        self.abelianize().is_trivial()
    }

    /// The word `v` such that `self` maps `[u]` linearly onto `[v]`, if it is linear there.
    pub fn image_of(&self, u: &BinaryWord) -> Option<BinaryWord> {
        if let Some((ui, vi)) = self.pairs.iter().find(|(ui, _)| ui.is_prefix_of(u)) {
            return Some(vi.concat(&u.strip_prefix(ui).unwrap()));
        }
        // u is an internal node of the domain tree: every branch below it
        // must be translated by one common prefix replacement.
        let mut below = self.pairs.iter().filter(|(ui, _)| u.is_prefix_of(ui));
        let (u0, v0) = below.next()?;
        let sigma0 = u0.strip_prefix(u).unwrap();
        if v0.len() < sigma0.len() || !v0.bits().ends_with(sigma0.bits()) {
            return None;
        }
        let v = v0.prefix(v0.len() - sigma0.len());
        for (ui, vi) in below {
            if *vi != v.concat(&ui.strip_prefix(u).unwrap()) {
                return None;
            }
        }
        Some(v)
    }

    /// True iff `self` maps `[u]` linearly onto `[v]`.
    pub fn has_branch_pair(&self, u: &BinaryWord, v: &BinaryWord) -> bool {
        self.image_of(u).as_ref() == Some(v)
    }

    /// Conjugate by `t ↦ 1 - t`.
    pub fn flip(&self) -> Element {
        Element {
            pairs: reduce_pairs(
                self.pairs.iter().rev().map(|(u, v)| (u.complement(), v.complement())).collect(),
            ),
        }
    }

    /// Number of carets in each tree of the reduced diagram.
    pub fn caret_count(&self) -> usize {
        self.pairs.len() - 1
    }

    /// One pair per line, `u -> v`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (u, v) in &self.pairs {
            s.push_str(&format!("{u} -> {v}\n"));
        }
        s
    }

    /// Parses the branch-pair text format; `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Element, ElementError> {
        Self::from_branch_pairs(parse_pairs(text)?)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.pairs.iter().map(|(u, v)| format!("{u}->{v}")).collect();
        write!(f, "Element({})", body.join(", "))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn parse_pairs(text: &str) -> Result<Vec<(BinaryWord, BinaryWord)>, ElementError> {
    let mut pairs = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (u, v) = line
            .split_once("->")
            .ok_or_else(|| ElementError::Parse { line: n + 1, msg: format!("expected `u -> v`, got {line:?}") })?;
        let parse = |s: &str| {
            s.trim().parse::<BinaryWord>().map_err(|e| ElementError::Parse { line: n + 1, msg: e.to_string() })
        };
        pairs.push((parse(u)?, parse(v)?));
    }
    Ok(pairs)
}

pub fn compose(f: &Element, g: &Element) -> Element {
    f.compose(g)
}

pub fn invert(f: &Element) -> Element {
    f.invert()
}

/// A product of named letters with integer exponents, read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    letters: Vec<(String, i64)>,
}

impl GroupWord {
    /// Zero exponents are dropped.
    pub fn new(letters: Vec<(String, i64)>) -> Self {
        GroupWord { letters: letters.into_iter().filter(|(_, k)| *k != 0).collect() }
    }

    pub fn letter(name: &str, exp: i64) -> Self {
        Self::new(vec![(name.to_string(), exp)])
    }

    pub fn letters(&self) -> &[(String, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|(_, k)| k.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> Self {
        GroupWord { letters: self.letters.iter().rev().map(|(s, k)| (s.clone(), -k)).collect() }
    }

    pub fn then(&self, other: &GroupWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        GroupWord { letters }
    }

    /// `a^-1 b^-1 a b`
    pub fn commutator(a: &GroupWord, b: &GroupWord) -> Self {
        a.inverse().then(&b.inverse()).then(a).then(b)
    }

    /// `b^-1 a b`
    pub fn conjugate(a: &GroupWord, b: &GroupWord) -> Self {
        b.inverse().then(a).then(b)
    }

    /// Renames symbols through `map`; unmapped symbols are kept.
    pub fn rename(&self, map: &[(&str, &str)]) -> Self {
        GroupWord {
            letters: self
                .letters
                .iter()
                .map(|(s, k)| {
                    let name = map.iter().find(|(from, _)| from == s).map(|(_, to)| to.to_string());
                    (name.unwrap_or_else(|| s.clone()), *k)
                })
                .collect(),
        }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|(s, k)| if *k == 1 { s.clone() } else { format!("{s}^{k}") })
            .collect();
        f.write_str(&toks.join(" "))
    }
}

impl FromStr for GroupWord {
    type Err = ElementError;

    /// Whitespace-separated `name` or `name^k` tokens; `1` alone is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: String| ElementError::Parse { line: 1, msg };
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, k)) => (n, k.parse::<i64>().map_err(|_| bad(format!("bad exponent in {tok:?}")))?),
                None => (tok, 1),
            };
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(bad(format!("bad symbol in {tok:?}")));
            }
            if exp == 0 {
                return Err(bad(format!("zero exponent in {tok:?}")));
            }
            letters.push((name.to_string(), exp));
        }
        Ok(GroupWord { letters })
    }
}

impl serde::Serialize for GroupWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for GroupWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub type Assignment = BTreeMap<String, Element>;

/// `{x0, x1}`
pub fn standard_assignment() -> Assignment {
    let mut m = Assignment::new();
    m.insert("x0".into(), Element::x0());
    m.insert("x1".into(), Element::x1());
    m
}

/// Left-to-right product of the assigned elements.
pub fn eval_word(w: &GroupWord, assignment: &Assignment) -> Result<Element, ElementError> {
    let mut acc = Element::identity();
    for (name, k) in w.letters() {
        let e = assignment.get(name).ok_or_else(|| ElementError::UnknownSymbol(name.clone()))?;
        acc = acc.compose(&e.pow(*k));
    }
    Ok(acc)
}
