//! Checking that `<f, g>` contains the derived subgroup `[F, F]`.
//!
//! A subgroup `H` induces the relation `u ~ v` on binary words: some element
//! of `H` has the branch pair `u -> v`. It is an equivalence relation and is
//! closed under appending a common suffix. `H` contains `[F, F]` when
//!
//! * the closure `Cl(H)` (piecewise-`H` elements) contains `[F, F]`, and
//! * some `h` in `H` fixes a dyadic `α` with `h'(α-) = 1` and `h'(α+) = 2`.
//!
//! The first point follows from four facts about a finite tree `T` with
//! branches `u_1 .. u_n` and a word `w`:
//!
//! 1. `w ~ w0 ~ w1`;
//! 2. `u_i ~ w` for `1 < i < n`;
//! 3. `u_1 0^i 1 ~ w` for every `i >= 0`;
//! 4. `u_n 1^i 0 ~ w` for every `i >= 0`.
//!
//! Under (1) every descendant of `w` is related to `w`, so every long word
//! of `T`'s interior is related to `w`, which is what the coherence of
//! `~_{Cl(H)}` turns into membership of all of `[F, F]` in `Cl(H)`.
//!
//! A [`Certificate`] supplies finitely many verified branch-pair witnesses
//! for (1) and (2), and a [`ShiftSchema`] per infinite family in (3) and (4):
//! finitely many base cases plus one shift pair `y t^a -> y t^b` that carries
//! family member `i` to member `i - (a - b)`. Relations are derived with a
//! congruence closure over the prefix trie of the words involved.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::element::{eval_word, Assignment, Element, ElementError, GroupWord};
use crate::words::{BinaryWord, PrefixCode};

/// `lhs ~ rhs`, oriented with the smaller word first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: BinaryWord,
    pub rhs: BinaryWord,
}

impl Relation {
    pub fn new(a: BinaryWord, b: BinaryWord) -> Self {
        if a <= b {
            Relation { lhs: a, rhs: b }
        } else {
            Relation { lhs: b, rhs: a }
        }
    }

    pub fn is_reflexive(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ~ {}", self.lhs, self.rhs)
    }
}

/// A word in `f, g` whose value has the branch pair `from -> to`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub word: GroupWord,
    pub from: BinaryWord,
    pub to: BinaryWord,
}

impl Witness {
    pub fn new(word: GroupWord, from: BinaryWord, to: BinaryWord) -> Self {
        Witness { word, from, to }
    }

    pub fn relation(&self) -> Relation {
        Relation::new(self.from.clone(), self.to.clone())
    }
}

/// Proof that `stem · t^i · suffix ~ w` for all `i >= 0`.
///
/// Base cases `i < base_count` come from the closure; the `shift` witness,
/// a pair between `y t^a` and `y t^b` with `a > b`, relates member `i` to
/// member `i - (a - b)` for every `i >= base_count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShiftSchema {
    pub tail: u8,
    pub stem: BinaryWord,
    pub suffix: BinaryWord,
    pub shift: Witness,
    pub base_count: usize,
}

impl ShiftSchema {
    pub fn member(&self, i: usize) -> BinaryWord {
        self.stem.with_run(self.tail, i).concat(&self.suffix)
    }

    /// Image under `t ↦ 1 - t`.
    pub fn mirror(&self) -> ShiftSchema {
        ShiftSchema {
            tail: 1 - self.tail,
            stem: self.stem.complement(),
            suffix: self.suffix.complement(),
            shift: Witness::new(self.shift.word.clone(), self.shift.from.complement(), self.shift.to.complement()),
            base_count: self.base_count,
        }
    }
}

/// An element `h` (as a word in `f, g`) fixing `.alpha` with left slope 1 and right slope 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlopeWitness {
    pub word: GroupWord,
    pub alpha: BinaryWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub f: Element,
    pub g: Element,
    pub tree: PrefixCode,
    pub w: BinaryWord,
    pub witnesses: Vec<Witness>,
    pub left: ShiftSchema,
    pub right: ShiftSchema,
    pub slope: SlopeWitness,
    pub depth: usize,
}

impl Certificate {
    pub fn assignment(&self) -> Assignment {
        let mut a = Assignment::new();
        a.insert("f".into(), self.f.clone());
        a.insert("g".into(), self.g.clone());
        a
    }

    /// Every word the checker seeds or queries.
    fn words(&self) -> Vec<BinaryWord> {
        let mut out: Vec<BinaryWord> = self.tree.branches().to_vec();
        out.push(self.w.child(0));
        out.push(self.w.child(1));
        for wit in self.witnesses.iter().chain([&self.left.shift, &self.right.shift]) {
            out.push(wit.from.clone());
            out.push(wit.to.clone());
        }
        for s in [&self.left, &self.right] {
            out.push(s.stem.concat(&s.suffix));
            if s.base_count > 0 {
                out.push(s.member(s.base_count - 1));
            }
        }
        out
    }

    /// Length of the longest word the check touches.
    pub fn required_depth(&self) -> usize {
        self.words().iter().map(BinaryWord::len).max().unwrap_or(0)
    }

    /// Default saturation bound: longest word involved plus 4.
    pub fn default_depth(&self) -> usize {
        self.required_depth() + 4
    }

    /// Maps the certificate through `t ↦ 1 - t`; valid for `(flip f, flip g)`.
    pub fn mirror(&self) -> Certificate {
        let wit = |w: &Witness| Witness::new(w.word.clone(), w.from.complement(), w.to.complement());
        Certificate {
            f: self.f.flip(),
            g: self.g.flip(),
            tree: self.tree.mirror(),
            w: self.w.complement(),
            witnesses: self.witnesses.iter().map(wit).collect(),
            left: self.right.mirror(),
            right: self.left.mirror(),
            slope: self.slope.clone(),
            depth: self.depth,
        }
    }
}

/// Serialized element: the two leaf lists of its reduced tree pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDoc {
    pub domain: Vec<BinaryWord>,
    pub range: Vec<BinaryWord>,
}

impl From<&Element> for ElementDoc {
    fn from(e: &Element) -> Self {
        let (domain, range) = e.pairs().iter().cloned().unzip();
        ElementDoc { domain, range }
    }
}

impl ElementDoc {
    pub fn to_element(&self) -> Result<Element, ElementError> {
        Element::from_codes(self.domain.clone(), self.range.clone())
    }
}

/// JSON shape of a [`Certificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub f: ElementDoc,
    pub g: ElementDoc,
    pub tree: Vec<BinaryWord>,
    pub w: BinaryWord,
    pub witnesses: Vec<Witness>,
    pub left_schema: ShiftSchema,
    pub right_schema: ShiftSchema,
    pub slope: SlopeWitness,
    pub depth: usize,
}

impl From<&Certificate> for CertificateDoc {
    fn from(c: &Certificate) -> Self {
        CertificateDoc {
            f: (&c.f).into(),
            g: (&c.g).into(),
            tree: c.tree.branches().to_vec(),
            w: c.w.clone(),
            witnesses: c.witnesses.clone(),
            left_schema: c.left.clone(),
            right_schema: c.right.clone(),
            slope: c.slope.clone(),
            depth: c.depth,
        }
    }
}

impl TryFrom<CertificateDoc> for Certificate {
    type Error = CertifyError;

    fn try_from(d: CertificateDoc) -> Result<Self, CertifyError> {
        let elem = |name: &str, e: &ElementDoc| {
            e.to_element().map_err(|err| CertifyError::Malformed(format!("{name}: {err}")))
        };
        Ok(Certificate {
            f: elem("f", &d.f)?,
            g: elem("g", &d.g)?,
            tree: PrefixCode::new(d.tree).map_err(|e| CertifyError::Malformed(format!("tree: {e}")))?,
            w: d.w,
            witnesses: d.witnesses,
            left: d.left_schema,
            right: d.right_schema,
            slope: d.slope,
            depth: d.depth,
        })
    }
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CertificateDoc::from(self)).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Certificate, CertifyError> {
        let doc: CertificateDoc =
            serde_json::from_str(text).map_err(|e| CertifyError::Malformed(e.to_string()))?;
        doc.try_into()
    }
}

/// Parses and checks a JSON certificate; parse failures are `malformed`.
pub fn certify_json(text: &str, depth: Option<usize>) -> Verdict {
    match Certificate::from_json(text) {
        Ok(c) => certify_with_depth(&c, depth.unwrap_or(c.depth)),
        Err(e) => Verdict::Fail(FailReason::Malformed(e.to_string())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error("seed {0} is longer than the depth bound {1}")]
    SeedTooLong(BinaryWord, usize),
}

/// Why a certificate was rejected. Failures are values, not errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailReason {
    Malformed(String),
    Witness { index: usize, detail: String },
    Depth { required: usize, depth: usize },
    Condition1 { missing: Relation },
    Condition2 { index: usize, branch: BinaryWord },
    Condition3(String),
    Condition4(String),
    Slope(String),
}

impl FailReason {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            FailReason::Malformed(_) => "malformed",
            FailReason::Witness { .. } => "witness",
            FailReason::Depth { .. } => "depth",
            FailReason::Condition1 { .. } => "condition-1",
            FailReason::Condition2 { .. } => "condition-2",
            FailReason::Condition3(_) => "condition-3",
            FailReason::Condition4(_) => "condition-4",
            FailReason::Slope(_) => "slope",
        }
    }
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.code())?;
        match self {
            FailReason::Malformed(s) => f.write_str(s),
            FailReason::Witness { index, detail } => write!(f, "witness #{index} {detail}"),
            FailReason::Depth { required, depth } => {
                write!(f, "words of length {required} exceed depth {depth}")
            }
            FailReason::Condition1 { missing } => write!(f, "{missing} not derived"),
            FailReason::Condition2 { index, branch } => {
                write!(f, "branch u_{index} = {branch} not related to w")
            }
            FailReason::Condition3(s) | FailReason::Condition4(s) | FailReason::Slope(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(FailReason),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn reason(&self) -> Option<&FailReason> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(r) => Some(r),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("PASS"),
            Verdict::Fail(r) => write!(f, "FAIL {r}"),
        }
    }
}

/// Congruence closure of a set of word relations.
///
/// Words are the nodes of a prefix trie, `x0` and `x1` being the children of
/// `x`. Classes are merged by a union-find; whenever two classes merge, their
/// `0`-children and their `1`-children are merged too, which is exactly the
/// suffix rule `u ~ v => uσ ~ vσ`. A query only adds its words (and their
/// prefixes) to the trie, so long derivations never enumerate all words of
/// a given length.
#[derive(Debug, Clone, Default)]
pub struct Closure {
    ids: HashMap<BinaryWord, usize>,
    words: Vec<BinaryWord>,
    parent: Vec<usize>,
    size: Vec<usize>,
    // per class representative: some node in the class of (member · bit)
    child: Vec<[Option<usize>; 2]>,
    pending: Vec<(usize, usize)>,
}

impl Closure {
    pub fn new() -> Self {
        let mut c = Closure::default();
        c.node(&BinaryWord::empty());
        c
    }

    pub fn from_relations<'a, I: IntoIterator<Item = &'a Relation>>(seeds: I) -> Self {
        let mut c = Closure::new();
        for r in seeds {
            c.relate(&r.lhs, &r.rhs);
        }
        c
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn node(&mut self, w: &BinaryWord) -> usize {
        if let Some(&id) = self.ids.get(w) {
            return id;
        }
        let id = self.words.len();
        self.ids.insert(w.clone(), id);
        self.words.push(w.clone());
        self.parent.push(id);
        self.size.push(1);
        self.child.push([None, None]);
        if let Some(p) = w.parent() {
            let bit = w.last().unwrap() as usize;
            let pid = self.node(&p);
            let rp = self.find(pid);
            match self.child[rp][bit] {
                Some(other) => self.pending.push((id, other)),
                None => self.child[rp][bit] = Some(id),
            }
            self.propagate();
        }
        id
    }

    fn propagate(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let (mut ra, mut rb) = (self.find(a), self.find(b));
            if ra == rb {
                continue;
            }
            if self.size[ra] < self.size[rb] {
                std::mem::swap(&mut ra, &mut rb);
            }
            self.parent[rb] = ra;
            self.size[ra] += self.size[rb];
            for bit in 0..2 {
                match (self.child[ra][bit], self.child[rb][bit]) {
                    (Some(x), Some(y)) => self.pending.push((x, y)),
                    (None, Some(y)) => self.child[ra][bit] = Some(y),
                    _ => {}
                }
            }
        }
    }

    /// Adds `u ~ v`.
    pub fn relate(&mut self, u: &BinaryWord, v: &BinaryWord) {
        let a = self.node(u);
        let b = self.node(v);
        self.pending.push((a, b));
        self.propagate();
    }

    pub fn equivalent(&mut self, u: &BinaryWord, v: &BinaryWord) -> bool {
        let a = self.node(u);
        let b = self.node(v);
        self.find(a) == self.find(b)
    }

    /// All non-reflexive relations between words of length at most `max_len`.
    /// Exponential in `max_len`; meant for small bounds.
    pub fn relations_up_to(&mut self, max_len: usize) -> BTreeSet<Relation> {
        let words: Vec<BinaryWord> = BinaryWord::all_up_to(max_len).collect();
        let mut classes: BTreeMap<usize, Vec<BinaryWord>> = BTreeMap::new();
        let ids: Vec<usize> = words.iter().map(|w| self.node(w)).collect();
        for (w, id) in words.into_iter().zip(ids) {
            let r = self.find(id);
            classes.entry(r).or_default().push(w);
        }
        let mut out = BTreeSet::new();
        for members in classes.values() {
            for (i, a) in members.iter().enumerate() {
                for b in &members[i + 1..] {
                    out.insert(Relation::new(a.clone(), b.clone()));
                }
            }
        }
        out
    }
}

/// The least set of relations on words of length `<= max_len` containing the
/// seeds and closed under symmetry, transitivity and common suffixes.
pub fn saturate(seeds: &BTreeSet<Relation>, max_len: usize) -> Result<BTreeSet<Relation>, CertifyError> {
    for r in seeds {
        for x in [&r.lhs, &r.rhs] {
            if x.len() > max_len {
                return Err(CertifyError::SeedTooLong(x.clone(), max_len));
            }
        }
    }
    Ok(Closure::from_relations(seeds).relations_up_to(max_len))
}

/// Evaluates the witness word and checks the claimed branch pair.
pub fn verify_witness(cert: &Certificate, wit: &Witness) -> Result<bool, ElementError> {
    let h = eval_word(&wit.word, &cert.assignment())?;
    Ok(h.has_branch_pair(&wit.from, &wit.to))
}

/// Checks the base cases and the shift arithmetic of a schema against a closure.
///
/// Writing `stem = x t^s` with `x` free of trailing `t`, the shift pair must
/// relate `x t^p` and `x t^(p+δ)`, `δ >= 1`. Member `i` is `x t^(s+i)·suffix`;
/// for `i >= base_count` the shift applies (`s + i >= p + δ`) and lands on
/// member `i - δ >= 0`, so induction from the base cases covers every `i`.
pub fn check_schema(schema: &ShiftSchema, w: &BinaryWord, closure: &mut Closure) -> Result<(), String> {
    let t = schema.tail;
    if t > 1 {
        return Err(format!("tail symbol {t} is not a bit"));
    }
    let (a, b) = (&schema.shift.from, &schema.shift.to);
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let delta = match long.strip_prefix(short) {
        Some(extra) if extra.is_all(t) && !extra.is_empty() => extra.len(),
        _ => return Err(format!("shift pair {a} -> {b} is not a strict shift along {t}")),
    };
    let x = schema.stem.trim_trailing(t);
    let s = schema.stem.len() - x.len();
    let p = match short.strip_prefix(&x) {
        Some(rest) if rest.is_all(t) => rest.len(),
        _ => return Err(format!("shift pair {a} -> {b} does not act on the stem {}", schema.stem)),
    };
    if schema.base_count < delta || s + schema.base_count < p + delta {
        return Err(format!(
            "{} base cases do not reach the shift (stem run {s}, shift {p}+{delta})",
            schema.base_count
        ));
    }
    for i in 0..schema.base_count {
        let m = schema.member(i);
        if !closure.equivalent(&m, w) {
            return Err(format!("base case {m} ~ {w} not derived"));
        }
    }
    Ok(())
}

/// Checks the slope witness: `h` fixes `.alpha` with left slope 1 and right slope 2.
pub fn check_slope(cert: &Certificate) -> Result<(), String> {
    let h = eval_word(&cert.slope.word, &cert.assignment()).map_err(|e| e.to_string())?;
    let alpha = cert.slope.alpha.to_dyadic();
    if alpha.is_zero() {
        return Err("alpha must lie strictly inside (0,1)".into());
    }
    if h.evaluate(&alpha) != alpha {
        return Err(format!("{} is not fixed", alpha.to_binary()));
    }
    let left = h.slope_left(&alpha).map_err(|e| e.to_string())?;
    let right = h.slope_right(&alpha).map_err(|e| e.to_string())?;
    if (left, right) != (0, 1) {
        return Err(format!("slopes at {} are 2^{left} and 2^{right}, need 1 and 2", alpha.to_binary()));
    }
    Ok(())
}

/// Runs every check at the certificate's own depth bound.
pub fn certify_normal_generation(cert: &Certificate) -> Verdict {
    certify_with_depth(cert, cert.depth)
}

pub fn certify_with_depth(cert: &Certificate, depth: usize) -> Verdict {
    match run_checks(cert, depth) {
        Ok(()) => Verdict::Pass,
        Err(r) => Verdict::Fail(r),
    }
}

fn run_checks(cert: &Certificate, depth: usize) -> Result<(), FailReason> {
    let tree = cert.tree.branches();
    if !cert.w.in_b_prime() {
        return Err(FailReason::Malformed(format!("w = {} must contain both digits", cert.w)));
    }
    if tree.len() < 2 {
        return Err(FailReason::Malformed("the tree needs at least one caret".into()));
    }
    let required = cert.required_depth();
    if required > depth {
        return Err(FailReason::Depth { required, depth });
    }

    let assignment = cert.assignment();
    let verify = |wit: &Witness| -> Result<(), String> {
        let h = eval_word(&wit.word, &assignment).map_err(|e| e.to_string())?;
        if h.has_branch_pair(&wit.from, &wit.to) {
            Ok(())
        } else {
            Err(format!("{} does not have the pair {} -> {}", wit.word, wit.from, wit.to))
        }
    };
    for (index, wit) in cert.witnesses.iter().enumerate() {
        verify(wit).map_err(|detail| FailReason::Witness { index, detail })?;
    }
    verify(&cert.left.shift).map_err(|d| FailReason::Condition3(format!("shift witness: {d}")))?;
    verify(&cert.right.shift).map_err(|d| FailReason::Condition4(format!("shift witness: {d}")))?;

    let mut closure = Closure::new();
    for wit in cert.witnesses.iter().chain([&cert.left.shift, &cert.right.shift]) {
        closure.relate(&wit.from, &wit.to);
    }

    let w = &cert.w;
    for x in [w.child(0), w.child(1)] {
        if !closure.equivalent(w, &x) {
            return Err(FailReason::Condition1 { missing: Relation::new(w.clone(), x) });
        }
    }
    for (i, u) in tree.iter().enumerate().take(tree.len() - 1).skip(1) {
        if !closure.equivalent(u, w) {
            return Err(FailReason::Condition2 { index: i + 1, branch: u.clone() });
        }
    }
    let family = |s: &ShiftSchema, stem: &BinaryWord, tail: u8| -> Result<(), String> {
        let suffix = BinaryWord::repeat(1 - tail, 1);
        if s.tail != tail || &s.stem != stem || s.suffix != suffix {
            return Err(format!("schema does not describe the family {stem}{tail}^i{suffix}"));
        }
        Ok(())
    };
    family(&cert.left, &tree[0], 0)
        .and_then(|_| check_schema(&cert.left, w, &mut closure))
        .map_err(FailReason::Condition3)?;
    family(&cert.right, &tree[tree.len() - 1], 1)
        .and_then(|_| check_schema(&cert.right, w, &mut closure))
        .map_err(FailReason::Condition4)?;
    check_slope(cert).map_err(FailReason::Slope)
}

/// All branch pairs with both words of length `<= word_depth` realized by a
/// product of at most `word_len` letters from `f^±1, g^±1`, each with a
/// shortest realizing word. Reflexive pairs are included.
pub fn brute_force_relations(
    f: &Element,
    g: &Element,
    word_len: usize,
    word_depth: usize,
) -> BTreeMap<Relation, GroupWord> {
    let letters: [(&str, i64, Element); 4] =
        [("f", 1, f.clone()), ("f", -1, f.invert()), ("g", 1, g.clone()), ("g", -1, g.invert())];
    let mut seen: HashSet<Element> = HashSet::new();
    let mut layer: Vec<(Vec<usize>, Element)> = vec![(Vec::new(), Element::identity())];
    seen.insert(Element::identity());
    let mut found: Vec<(Vec<usize>, Element)> = layer.clone();
    for _ in 0..word_len {
        let mut next = Vec::new();
        for (word, h) in &layer {
            for (li, (_, _, e)) in letters.iter().enumerate() {
                // skip immediate cancellation
                if let Some(&last) = word.last() {
                    if last ^ 1 == li {
                        continue;
                    }
                }
                let prod = h.compose(e);
                if seen.insert(prod.clone()) {
                    let mut w = word.clone();
                    w.push(li);
                    next.push((w, prod));
                }
            }
        }
        found.extend(next.iter().cloned());
        layer = next;
    }
    let words: Vec<BinaryWord> = BinaryWord::all_up_to(word_depth).collect();
    let mut out = BTreeMap::new();
    for (word, h) in &found {
        let gw = GroupWord::new(word.iter().map(|&i| (letters[i].0.to_string(), letters[i].1)).collect());
        for u in &words {
            if let Some(v) = h.image_of(u) {
                if v.len() <= word_depth {
                    out.entry(Relation::new(u.clone(), v)).or_insert_with(|| gw.clone());
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::word;

    fn rel(a: &str, b: &str) -> Relation {
        Relation::new(word(a), word(b))
    }

    /// Fixpoint over every word of length <= max_len: union seeds, then keep
    /// extending related words by a common letter until nothing changes.
    fn naive_saturate(seeds: &[Relation], max_len: usize) -> BTreeSet<Relation> {
        let words: Vec<BinaryWord> = BinaryWord::all_up_to(max_len).collect();
        let index: HashMap<BinaryWord, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut class: Vec<usize> = (0..words.len()).collect();
        let merge = |class: &mut Vec<usize>, a: usize, b: usize| -> bool {
            let (ca, cb) = (class[a], class[b]);
            if ca == cb {
                return false;
            }
            for c in class.iter_mut() {
                if *c == cb {
                    *c = ca;
                }
            }
            true
        };
        for r in seeds {
            merge(&mut class, index[&r.lhs], index[&r.rhs]);
        }
        loop {
            let mut changed = false;
            for i in 0..words.len() {
                for j in 0..words.len() {
                    if i == j || class[i] != class[j] {
                        continue;
                    }
                    if words[i].len() < max_len && words[j].len() < max_len {
                        for bit in 0..2 {
                            let a = index[&words[i].child(bit)];
                            let b = index[&words[j].child(bit)];
                            changed |= merge(&mut class, a, b);
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut out = BTreeSet::new();
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                if class[i] == class[j] {
                    out.insert(Relation::new(words[i].clone(), words[j].clone()));
                }
            }
        }
        out
    }

    #[test]
    fn saturation_rules() {
        let seeds: BTreeSet<_> = [rel("01", "10")].into_iter().collect();
        let s = saturate(&seeds, 4).unwrap();
        assert!(s.contains(&rel("010", "100")));
        let seeds: BTreeSet<_> = [rel("01", "10"), rel("10", "11")].into_iter().collect();
        assert!(saturate(&seeds, 3).unwrap().contains(&rel("01", "11")));
        let seeds: BTreeSet<_> = [rel("01", "010")].into_iter().collect();
        assert!(saturate(&seeds, 5).unwrap().contains(&rel("01", "0100")));
        let long: BTreeSet<_> = [rel("0101", "1")].into_iter().collect();
        assert!(matches!(saturate(&long, 3), Err(CertifyError::SeedTooLong(..))));
    }

    #[test]
    fn saturation_is_order_independent_and_idempotent() {
        let a = vec![rel("0", "10"), rel("110", "01"), rel("111", "1")];
        let mut b = a.clone();
        b.reverse();
        let sa = saturate(&a.iter().cloned().collect(), 4).unwrap();
        let sb = saturate(&b.iter().cloned().collect(), 4).unwrap();
        assert_eq!(sa, sb);
        assert_eq!(saturate(&sa, 4).unwrap(), sa);
    }

    #[test]
    fn congruence_closure_matches_naive_fixpoint() {
        let cases: Vec<Vec<Relation>> = vec![
            vec![rel("0", "1")],
            vec![rel("00", "1"), rel("01", "101")],
            vec![rel("e", "0")],
            vec![rel("011", "1"), rel("10", "0101"), rel("110", "00")],
        ];
        for seeds in cases {
            let set: BTreeSet<_> = seeds.iter().cloned().collect();
            assert_eq!(saturate(&set, 5).unwrap(), naive_saturate(&seeds, 5), "{seeds:?}");
        }
    }

    #[test]
    fn closure_descendants_of_absorbing_word() {
        let mut c = Closure::new();
        c.relate(&word("01"), &word("010"));
        c.relate(&word("01"), &word("011"));
        assert!(c.equivalent(&word("01"), &word("0110101110001")));
        assert!(!c.equivalent(&word("01"), &word("0")));
    }

    #[test]
    fn schema_arithmetic() {
        let mut c = Closure::new();
        let w = word("01");
        // family 0^i 1 ~ 01 with shift 00 -> 0: member 0 is "1"
        c.relate(&word("1"), &w);
        let schema = ShiftSchema {
            tail: 0,
            stem: word("e"),
            suffix: word("1"),
            shift: Witness::new("g".parse().unwrap(), word("00"), word("0")),
            base_count: 2,
        };
        assert!(check_schema(&schema, &w, &mut c).is_ok());
        let flat = ShiftSchema { shift: Witness::new("g".parse().unwrap(), word("0"), word("0")), ..schema.clone() };
        assert!(check_schema(&flat, &w, &mut c).is_err());
        let short = ShiftSchema { base_count: 1, ..schema.clone() };
        assert!(check_schema(&short, &w, &mut c).is_err());
        let mut empty = Closure::new();
        assert!(check_schema(&schema, &w, &mut empty).unwrap_err().contains("base case"));
    }

    #[test]
    fn witnesses_and_slopes() {
        let cert = Certificate {
            f: Element::x0(),
            g: Element::x1(),
            tree: PrefixCode::caret(),
            w: word("01"),
            witnesses: vec![],
            left: ShiftSchema {
                tail: 0,
                stem: word("0"),
                suffix: word("1"),
                shift: Witness::new("f".parse().unwrap(), word("00"), word("0")),
                base_count: 1,
            },
            right: ShiftSchema {
                tail: 1,
                stem: word("1"),
                suffix: word("0"),
                shift: Witness::new("f^-1".parse().unwrap(), word("11"), word("1")),
                base_count: 1,
            },
            slope: SlopeWitness { word: "g".parse().unwrap(), alpha: word("1") },
            depth: 8,
        };
        let check = |w: &str, a: &str, b: &str| verify_witness(&cert, &Witness::new(w.parse().unwrap(), word(a), word(b)));
        assert_eq!(check("f", "00", "0"), Ok(true));
        assert_eq!(check("f f^-1", "0110", "0110"), Ok(true));
        assert_eq!(check("f", "1", "0"), Ok(false));
        assert!(check("h", "0", "0").is_err());
        assert_eq!(check_slope(&cert), Ok(()));
        let mut half = cert.clone();
        half.slope = SlopeWitness { word: "g".parse().unwrap(), alpha: word("1") };
        assert_eq!(check_slope(&half), Ok(()));
        half.slope.word = "f".parse().unwrap();
        assert!(check_slope(&half).is_err());
        let mut id = cert.clone();
        id.slope.word = GroupWord::default();
        assert!(check_slope(&id).is_err());
    }

    #[test]
    fn brute_force_small_cases() {
        let rels = brute_force_relations(&Element::x0(), &Element::identity(), 1, 3);
        assert!(rels.contains_key(&rel("00", "0")));
        assert!(rels.contains_key(&rel("000", "00")));
        let id = brute_force_relations(&Element::identity(), &Element::identity(), 3, 3);
        assert!(id.keys().all(Relation::is_reflexive));
        assert_eq!(id.len(), 15);
    }

    #[test]
    fn whole_group_relates_inner_words_directly() {
        let rels = brute_force_relations(&Element::x0(), &Element::x1(), 6, 3);
        let inner: Vec<BinaryWord> = BinaryWord::all_up_to(3).filter(BinaryWord::in_b_prime).collect();
        for a in &inner {
            for b in &inner {
                assert!(rels.contains_key(&Relation::new(a.clone(), b.clone())), "{a} !~ {b}");
            }
        }
    }

    #[test]
    fn whole_group_identifies_inner_words() {
        // For H = F the coherent closure relates all words with both digits.
        let rels = brute_force_relations(&Element::x0(), &Element::x1(), 5, 4);
        let mut c = Closure::from_relations(rels.keys());
        let inner: Vec<BinaryWord> = BinaryWord::all_up_to(3).filter(BinaryWord::in_b_prime).collect();
        assert_eq!(inner.len(), 8);
        for a in &inner {
            for b in &inner {
                assert!(c.equivalent(a, b), "{a} !~ {b}");
            }
        }
    }
}
