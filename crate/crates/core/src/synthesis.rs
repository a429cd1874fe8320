//! Building a partner `g` for `f` with a prescribed abelian image, together
//! with a certificate that `<f, g>` contains `[F, F]`.
//!
//! Every construction starts from a scaffold tree `T` whose branches include
//! `u, v0, v1, w0, w10, w11` for a triple found by [`find_uvw`], and grafts
//! small trees onto two copies of `T`. The grafts at the left end of `T`
//! fix the slope of `g` at `0`, the grafts at the right end its slope at `1`,
//! and the copy of `x1` grafted at `w10` supplies the slope witness.

use std::fmt;

use thiserror::Error;

use crate::certify::{
    certify_with_depth, Certificate, FailReason, ShiftSchema, SlopeWitness, Verdict, Witness,
};
use crate::dynamics::{find_uvw, one_tail_pair, zero_end_pair, DynamicsError, Sign, UvwTriple};
use crate::element::{AbelianImage, Element, GroupWord};
use crate::lattice::{complete_basis, companion_rectangular, index_of, Index, LatticeBasis, LatticeError};
use crate::words::{BinaryWord, PrefixCode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error("the identity has no partner")]
    IdentityInput,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("abelian image ({0},{1}) is not part of a basis of Z^2")]
    NotCompletable(i64, i64),
    #[error("abelian image is trivial")]
    TrivialImage,
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
    #[error("constructed certificate was rejected: {0}")]
    Uncertified(FailReason),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Which of the four constructions produced `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    /// `c != 0, d != 0`
    One,
    /// `c != 0, d = 0`
    Two,
    /// `c = 0, d != 0`
    Three,
    /// `c = d = 0`
    Four,
}

impl Part {
    pub const ALL: [Part; 4] = [Part::One, Part::Two, Part::Three, Part::Four];

    pub fn for_target(c: i64, d: i64) -> Part {
        match (c != 0, d != 0) {
            (true, true) => Part::One,
            (true, false) => Part::Two,
            (false, true) => Part::Three,
            (false, false) => Part::Four,
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            Part::One => 1,
            Part::Two => 2,
            Part::Three => 3,
            Part::Four => 4,
        };
        write!(f, "{n}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisResult {
    pub part: Part,
    pub g: Element,
    pub certificate: Certificate,
    pub target_image: AbelianImage,
    /// `<π(f), π(g)>`
    pub lattice: LatticeBasis,
    pub index: Index,
}

/// A tree containing `u, v0, v1, w0, w10, w11` as branches.
///
/// Without chains, the smallest such tree gets `{0,10,110,111}` hung at its
/// last leaf when fewer than three branches follow `w11`. A right chain `m`
/// hangs the minimal tree with branch `1^m` at the last leaf instead, and a
/// left chain `m'` hangs the minimal tree with branch `0^m'` at the first.
pub fn build_scaffold_tree(
    t: &UvwTriple,
    left_chain: Option<usize>,
    right_chain: Option<usize>,
) -> Result<PrefixCode, SynthesisError> {
    let (u, v, w) = (&t.u, &t.v, &t.w);
    if ![u, v, w].iter().all(|x| x.in_b_prime()) {
        return Err(SynthesisError::InvalidTriple(format!("{t}: words must contain both digits")));
    }
    let required = [u.clone(), v.child(0), v.child(1), w.child(0), w.concat(&"10".parse().unwrap()), w.concat(&"11".parse().unwrap())];
    let mut tree = PrefixCode::completion_of(&required).map_err(|e| SynthesisError::InvalidTriple(format!("{t}: {e}")))?;
    match right_chain {
        Some(m) => tree = tree.attach(tree.len() - 1, &PrefixCode::spine(1, m)),
        None => {
            let after = tree.len() - 1 - tree.position(&required[5]).expect("w11 is a branch");
            if after < 3 {
                tree = tree.attach(tree.len() - 1, &PrefixCode::spine(1, 3));
            }
        }
    }
    if let Some(m) = left_chain {
        tree = tree.attach(0, &PrefixCode::spine(0, m));
    }
    Ok(tree)
}

/// Grafts on the scaffold, as `(leaf, subtree)` lists for the two copies.
#[derive(Default)]
struct Grafts {
    plus: Vec<(BinaryWord, PrefixCode)>,
    minus: Vec<(BinaryWord, PrefixCode)>,
}

fn graft(tree: &PrefixCode, list: &[(BinaryWord, PrefixCode)]) -> PrefixCode {
    list.iter().fold(tree.clone(), |t, (leaf, sub)| t.attach_at(leaf, sub).expect("graft point is a leaf of T"))
}

fn w_suffix(w: &BinaryWord, s: &str) -> BinaryWord {
    w.concat(&s.parse().unwrap())
}

/// Left-end treatment of the first three parts: spine `0^(c+1)` against spine `1^c`.
fn left_end_shift(tree: &PrefixCode, c: usize, grafts: &mut Grafts) {
    grafts.plus.push((tree.first().clone(), PrefixCode::spine(0, c + 1)));
    grafts.minus.push((tree.first().clone(), PrefixCode::spine(1, c)));
}

/// Middle grafts shared by every part: `x1` at `w10`, carets at `w0` and `w11`.
fn middle(w: &BinaryWord, grafts: &mut Grafts) {
    let x1 = Element::x1();
    grafts.plus.push((w_suffix(w, "10"), x1.domain_code()));
    grafts.minus.push((w.child(0), PrefixCode::caret()));
    grafts.minus.push((w_suffix(w, "10"), x1.range_code()));
}

/// Right-end treatment of part 1: spine `1^(d+1)` against a caret at `w11`
/// and spine `0^d`, exchanged between the copies when `d < 0`.
fn right_end_shift(tree: &PrefixCode, w: &BinaryWord, d: i64, grafts: &mut Grafts) {
    let n = d.unsigned_abs() as usize;
    let last = tree.last().clone();
    let a = vec![(last.clone(), PrefixCode::spine(1, n + 1))];
    let b = vec![(w_suffix(w, "11"), PrefixCode::caret()), (last, PrefixCode::spine(0, n))];
    if d > 0 {
        grafts.plus.extend(a);
        grafts.minus.extend(b);
    } else {
        grafts.plus.extend(b);
        grafts.minus.extend(a);
    }
}

/// Right-end treatment when `g` should have slope 1 at `1`.
fn right_end_flat(tree: &PrefixCode, w: &BinaryWord, grafts: &mut Grafts) {
    let last = tree.last().clone();
    grafts.plus.push((last.clone(), PrefixCode::spine(0, 2)));
    grafts.minus.push((w_suffix(w, "11"), PrefixCode::caret()));
    grafts.minus.push((last, PrefixCode::caret()));
}

/// Left-end treatment when `g` should have slope 1 at `0`.
fn left_end_flat(tree: &PrefixCode, grafts: &mut Grafts) {
    let first = tree.first().clone();
    grafts.plus.push((first.clone(), PrefixCode::spine(1, 2)));
    grafts.minus.push((first, PrefixCode::caret()));
}

struct Built {
    h: Element,
    pairs: Vec<(BinaryWord, BinaryWord)>,
}

fn assemble(tree: &PrefixCode, grafts: &Grafts) -> Built {
    let plus = graft(tree, &grafts.plus);
    let minus = graft(tree, &grafts.minus);
    assert_eq!(plus.caret_count(), minus.caret_count(), "caret counts of the two copies differ");
    let pairs: Vec<_> = plus.branches().iter().cloned().zip(minus.branches().iter().cloned()).collect();
    let h = Element::from_codes(plus.into_branches(), minus.into_branches()).expect("grafted copies form a diagram");
    Built { h, pairs }
}

fn check_position(tree: &PrefixCode, w: &BinaryWord) {
    let n = tree.len();
    let k = tree.position(&w.child(0)).expect("w0 is a branch") + 1;
    assert!(5 <= k && k + 5 <= n, "w0 sits at branch {k} of {n}");
    let b = tree.branches();
    assert_eq!((&b[k], &b[k + 1]), (&w_suffix(w, "10"), &w_suffix(w, "11")));
}

fn f_word(sign: Sign) -> GroupWord {
    GroupWord::letter("f", sign.exponent())
}

fn schema(tail: u8, stem: &BinaryWord, shift: Witness, base_count: usize) -> ShiftSchema {
    ShiftSchema { tail, stem: stem.clone(), suffix: BinaryWord::repeat(1 - tail, 1), shift, base_count }
}

/// Points where one of `g, g^-1, f, f^-1` is the identity just left of a
/// fixed dyadic and has slope 2 just right of it.
fn find_slope_witness(f: &Element, g: &Element, preferred: Option<SlopeWitness>) -> Option<SlopeWitness> {
    let candidates = [("g", 1, g.clone()), ("g", -1, g.invert()), ("f", 1, f.clone()), ("f", -1, f.invert())];
    if let Some(p) = preferred {
        if let Some((_, _, h)) = candidates.iter().find(|(n, k, _)| GroupWord::letter(n, *k) == p.word) {
            if slope_ok(h, &p.alpha) {
                return Some(p);
            }
        }
    }
    for (name, exp, h) in &candidates {
        for win in h.pairs().windows(2) {
            let ((u0, v0), (u1, v1)) = (&win[0], &win[1]);
            if u0 == v0 && u1.len() == v1.len() + 1 {
                let alpha = u0.right_endpoint().to_word().expect("an inner endpoint is below 1");
                return Some(SlopeWitness { word: GroupWord::letter(name, *exp), alpha });
            }
        }
    }
    None
}

fn slope_ok(h: &Element, alpha: &BinaryWord) -> bool {
    let a = alpha.to_dyadic();
    !a.is_zero()
        && h.evaluate(&a) == a
        && h.slope_left(&a).ok() == Some(0)
        && h.slope_right(&a).ok() == Some(1)
}

/// Assembles, prunes and checks the certificate for `(f, g)`.
#[allow(clippy::too_many_arguments)]
fn certify_built(
    f: &Element,
    g: &Element,
    g_word: &GroupWord,
    triple: &UvwTriple,
    tree: &PrefixCode,
    pairs: &[(BinaryWord, BinaryWord)],
    left: ShiftSchema,
    right: ShiftSchema,
) -> Result<Certificate, SynthesisError> {
    let fw = f_word(triple.sign);
    let mut witnesses = vec![
        Witness::new(fw.clone(), triple.u.clone(), triple.v.clone()),
        Witness::new(fw, triple.v.clone(), triple.w.clone()),
    ];
    witnesses.extend(pairs.iter().filter(|(a, b)| a != b).map(|(a, b)| Witness::new(g_word.clone(), a.clone(), b.clone())));
    let preferred = SlopeWitness { word: g_word.clone(), alpha: w_suffix(&triple.w, "101") };
    let slope = find_slope_witness(f, g, Some(preferred))
        .ok_or_else(|| SynthesisError::PreconditionViolated("no slope witness among f, g and inverses".into()))?;
    let mut cert = Certificate {
        f: f.clone(),
        g: g.clone(),
        tree: tree.clone(),
        w: triple.w.clone(),
        witnesses,
        left,
        right,
        slope,
        depth: 0,
    };
    if let Verdict::Fail(r) = certify_with_depth(&cert, usize::MAX) {
        return Err(SynthesisError::Uncertified(r));
    }
    prune_witnesses(&mut cert);
    cert.depth = cert.default_depth();
    match certify_with_depth(&cert, cert.depth) {
        Verdict::Pass => Ok(cert),
        Verdict::Fail(r) => Err(SynthesisError::Uncertified(r)),
    }
}

/// Drops witnesses, last first, while the certificate still passes. The
/// survivors are irredundant: removing any one of them makes it fail.
pub fn prune_witnesses(cert: &mut Certificate) {
    let mut i = cert.witnesses.len();
    while i > 0 {
        i -= 1;
        let removed = cert.witnesses.remove(i);
        if !certify_with_depth(cert, usize::MAX).is_pass() {
            cert.witnesses.insert(i, removed);
        }
    }
}

fn nontrivial(f: &Element) -> Result<(), SynthesisError> {
    if f.is_identity() {
        Err(SynthesisError::IdentityInput)
    } else {
        Ok(())
    }
}

fn finish(part: Part, f: &Element, g: Element, certificate: Certificate) -> SynthesisResult {
    let a = f.abelianize();
    let image = g.abelianize();
    let lattice = LatticeBasis::new((a.at_zero, a.at_one), (image.at_zero, image.at_one));
    SynthesisResult { part, g, certificate, target_image: image, lattice, index: index_of(&lattice) }
}

/// `g` with image `(c, d)`, both non-zero.
pub fn construct_part1(f: &Element, c: i64, d: i64) -> Result<SynthesisResult, SynthesisError> {
    nontrivial(f)?;
    if c == 0 || d == 0 {
        return Err(SynthesisError::PreconditionViolated(format!("part 1 needs c, d non-zero, got ({c},{d})")));
    }
    // (c, d) and (-c, -d) give the same subgroup up to inverting g
    let (flip, c, d) = if c < 0 { (true, -c, -d) } else { (false, c, d) };
    let triple = find_uvw(f)?;
    let tree = build_scaffold_tree(&triple, None, None)?;
    check_position(&tree, &triple.w);
    let mut grafts = Grafts::default();
    left_end_shift(&tree, c as usize, &mut grafts);
    middle(&triple.w, &mut grafts);
    right_end_shift(&tree, &triple.w, d, &mut grafts);
    let built = assemble(&tree, &grafts);

    let (g, gw) = orient(built.h, flip);
    let u1 = tree.first();
    let un = tree.last();
    let left = schema(0, u1, Witness::new(gw.clone(), u1.with_run(0, c as usize + 1), u1.child(0)), c as usize + 1);
    let nd = d.unsigned_abs() as usize;
    let (a, b) = (un.with_run(1, nd + 1), un.child(1));
    let shift = if d > 0 { Witness::new(gw.clone(), a, b) } else { Witness::new(gw.clone(), b, a) };
    let right = schema(1, un, shift, nd + 1);
    let cert = certify_built(f, &g, &gw, &triple, &tree, &built.pairs, left, right)?;
    Ok(finish(Part::One, f, g, cert))
}

fn orient(h: Element, invert: bool) -> (Element, GroupWord) {
    if invert {
        (h.invert(), GroupWord::letter("g", -1))
    } else {
        (h, GroupWord::letter("g", 1))
    }
}

/// `g` with image `(c, 0)`; needs `f` to have slope other than 1 at `1`.
pub fn construct_part2(f: &Element, c: i64) -> Result<SynthesisResult, SynthesisError> {
    nontrivial(f)?;
    if c == 0 {
        return Err(SynthesisError::PreconditionViolated("part 2 needs c non-zero".into()));
    }
    if f.abelianize().at_one == 0 {
        return Err(SynthesisError::PreconditionViolated("f has slope 1 at 1".into()));
    }
    let (flip, c) = (c < 0, c.unsigned_abs() as usize);
    let triple = find_uvw(f)?;
    let (sign, m, l) = one_tail_pair(f)?;
    let tree = build_scaffold_tree(&triple, None, Some(m))?;
    check_position(&tree, &triple.w);
    let mut grafts = Grafts::default();
    left_end_shift(&tree, c, &mut grafts);
    middle(&triple.w, &mut grafts);
    right_end_flat(&tree, &triple.w, &mut grafts);
    let built = assemble(&tree, &grafts);

    let (g, gw) = orient(built.h, flip);
    let u1 = tree.first();
    let left = schema(0, u1, Witness::new(gw.clone(), u1.with_run(0, c + 1), u1.child(0)), c + 1);
    let right = schema(1, tree.last(), Witness::new(f_word(sign), BinaryWord::ones(m), BinaryWord::ones(m - l)), l);
    let cert = certify_built(f, &g, &gw, &triple, &tree, &built.pairs, left, right)?;
    Ok(finish(Part::Two, f, g, cert))
}

/// `g` with image `(0, d)`; the mirror image of part 2.
pub fn construct_part3(f: &Element, d: i64) -> Result<SynthesisResult, SynthesisError> {
    nontrivial(f)?;
    if f.abelianize().at_zero == 0 {
        return Err(SynthesisError::PreconditionViolated("f has slope 1 at 0".into()));
    }
    let mirrored = construct_part2(&f.flip(), d)?;
    let g = mirrored.g.flip();
    let mut cert = mirrored.certificate.mirror();
    debug_assert_eq!(&cert.f, f);
    cert.slope = find_slope_witness(f, &g, None)
        .ok_or_else(|| SynthesisError::PreconditionViolated("no slope witness among f, g and inverses".into()))?;
    cert.depth = cert.default_depth();
    if let Verdict::Fail(r) = certify_with_depth(&cert, cert.depth) {
        return Err(SynthesisError::Uncertified(r));
    }
    Ok(finish(Part::Three, f, g, cert))
}

/// `g` in `[F, F]`; needs `f` to have slope other than 1 at both ends.
pub fn construct_part4(f: &Element) -> Result<SynthesisResult, SynthesisError> {
    nontrivial(f)?;
    let image = f.abelianize();
    if image.at_zero == 0 || image.at_one == 0 {
        return Err(SynthesisError::PreconditionViolated(format!("f has image {image}, both slopes must be non-trivial")));
    }
    let triple = find_uvw(f)?;
    let (sign1, m, l) = one_tail_pair(f)?;
    let (sign0, m0, l0) = zero_end_pair(f)?;
    let tree = build_scaffold_tree(&triple, Some(m0), Some(m))?;
    check_position(&tree, &triple.w);
    let mut grafts = Grafts::default();
    left_end_flat(&tree, &mut grafts);
    middle(&triple.w, &mut grafts);
    right_end_flat(&tree, &triple.w, &mut grafts);
    let built = assemble(&tree, &grafts);

    let (g, gw) = orient(built.h, false);
    let left = schema(0, tree.first(), Witness::new(f_word(sign0), BinaryWord::zeros(m0), BinaryWord::zeros(m0 - l0)), l0);
    let right = schema(1, tree.last(), Witness::new(f_word(sign1), BinaryWord::ones(m), BinaryWord::ones(m - l)), l);
    let cert = certify_built(f, &g, &gw, &triple, &tree, &built.pairs, left, right)?;
    Ok(finish(Part::Four, f, g, cert))
}

/// `g` with image exactly `(c, d)` such that `<f, g>` contains `[F, F]`.
///
/// With `(a, b)` the image of `f`, needs `(a, c) != (0, 0)` and `(b, d) != (0, 0)`.
pub fn synthesize(f: &Element, c: i64, d: i64) -> Result<SynthesisResult, SynthesisError> {
    nontrivial(f)?;
    let AbelianImage { at_zero: a, at_one: b } = f.abelianize();
    if a == 0 && c == 0 {
        return Err(SynthesisError::PreconditionViolated("a = c = 0: the slopes at 0 are all trivial".into()));
    }
    if b == 0 && d == 0 {
        return Err(SynthesisError::PreconditionViolated("b = d = 0: the slopes at 1 are all trivial".into()));
    }
    match Part::for_target(c, d) {
        Part::One => construct_part1(f, c, d),
        Part::Two => construct_part2(f, c),
        Part::Three => construct_part3(f, d),
        Part::Four => construct_part4(f),
    }
}

/// `g` with `<f, g> = F`, when the image of `f` is primitive in `Z^2`.
pub fn complete_generating_pair(f: &Element) -> Result<SynthesisResult, SynthesisError> {
    nontrivial(f)?;
    let AbelianImage { at_zero: a, at_one: b } = f.abelianize();
    let (c, d) = complete_basis(a, b).map_err(|_| SynthesisError::NotCompletable(a, b))?;
    synthesize(f, c, d)
}

/// `g` with `<f, g>` of index `gcd(a, b)` and image a rectangle `pZ x qZ`.
pub fn finite_index_pair(f: &Element) -> Result<SynthesisResult, SynthesisError> {
    let AbelianImage { at_zero: a, at_one: b } = f.abelianize();
    if a == 0 && b == 0 {
        return Err(SynthesisError::TrivialImage);
    }
    let ((c, d), _) = companion_rectangular(a, b)?;
    synthesize(f, c, d)
}

/// The branch pairs the construction is meant to produce, read off the scaffold.
///
/// Listed for the normalized element (positive left exponent); `None` when
/// the certificate's tree does not look like a scaffold of `part`.
pub fn expected_blocks(part: Part, tree: &PrefixCode, w: &BinaryWord, c: i64, d: i64) -> Option<Vec<(BinaryWord, BinaryWord)>> {
    let b = tree.branches();
    let n = b.len();
    let k = tree.position(&w.child(0))? + 1;
    if k < 5 || k + 5 > n {
        return None;
    }
    // 1-based access
    let u = |i: usize| b[i - 1].clone();
    let u1 = u(1);
    let un = u(n);
    let mut out = Vec::new();

    match part {
        Part::Four => {
            out.push((u1.child(0), u1.child(0)));
            out.push((w_suffix(&u1, "10"), u1.child(1)));
            out.push((w_suffix(&u1, "11"), u(2)));
        }
        _ => {
            let c = c.unsigned_abs() as usize;
            out.push((u1.with_run(0, c + 1), u1.child(0)));
            for i in 1..c {
                out.push((u1.with_run(0, c + 1 - i).child(1), u1.with_run(1, i).child(0)));
            }
            out.push((w_suffix(&u1, "01"), u1.with_run(1, c)));
            out.push((u1.child(1), u(2)));
        }
    }
    for i in 2..=k - 2 {
        out.push((u(i), u(i + 1)));
    }
    out.push((u(k - 1), w_suffix(w, "00")));
    out.push((u(k), w_suffix(w, "01")));

    for (p, q) in [("100", "100"), ("10100", "1010"), ("10101", "10110"), ("1011", "10111")] {
        out.push((w_suffix(w, p), w_suffix(w, q)));
    }

    let mut right = vec![(w_suffix(w, "11"), w_suffix(w, "110")), (u(k + 3), w_suffix(w, "111"))];
    for i in k + 4..n {
        right.push((u(i), u(i - 1)));
    }
    match part {
        Part::One => {
            let dd = d.unsigned_abs() as usize;
            right.push((un.child(0), u(n - 1)));
            right.push((w_suffix(&un, "10"), un.with_run(0, dd)));
            for i in 2..=dd {
                right.push((un.with_run(1, i).child(0), un.with_run(0, dd + 1 - i).child(1)));
            }
            right.push((un.with_run(1, dd + 1), un.child(1)));
            if d < 0 {
                right = right.into_iter().map(|(p, q)| (q, p)).collect();
            }
        }
        _ => {
            right.push((w_suffix(&un, "00"), u(n - 1)));
            right.push((w_suffix(&un, "01"), un.child(0)));
            right.push((un.child(1), un.child(1)));
        }
    }
    out.extend(right);
    Some(out)
}

/// True iff `g` (or `g^-1` when the left exponent is negative) has every
/// pair the construction for `result.part` promises.
pub fn self_check_blocks(result: &SynthesisResult) -> bool {
    let AbelianImage { at_zero: c, at_one: d } = result.target_image;
    let cert = &result.certificate;
    let (part, tree, w, g, c, d) = match result.part {
        Part::Three => (Part::Two, cert.tree.mirror(), cert.w.complement(), result.g.flip(), d, c),
        p => (p, cert.tree.clone(), cert.w.clone(), result.g.clone(), c, d),
    };
    let h = if c < 0 { g.invert() } else { g };
    let d = if c < 0 { -d } else { d };
    match expected_blocks(part, &tree, &w, c, d) {
        Some(pairs) => pairs.iter().all(|(p, q)| h.has_branch_pair(p, q)),
        None => false,
    }
}
