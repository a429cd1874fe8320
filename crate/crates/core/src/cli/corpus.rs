//! Seeded end-to-end sweep: random `f`, admissible targets, synthesize, certify.

use std::fmt::Write as _;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::certify::certify_normal_generation;
use crate::element::{eval_word, standard_assignment, AbelianImage, Element, GroupWord};
use crate::synthesis::{self_check_blocks, synthesize, Part};

pub const MAX_WORD_LEN: usize = 12;
pub const TARGET_RANGE: i64 = 3;

/// A freely reduced word of length `1..=max_len` in `x0^±1, x1^±1`.
pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> GroupWord {
    let len = rng.gen_range(1..=max_len);
    let mut letters: Vec<(usize, i64)> = Vec::with_capacity(len);
    while letters.len() < len {
        let gen = rng.gen_range(0..2usize);
        let exp = if rng.gen_bool(0.5) { 1 } else { -1 };
        if letters.last() == Some(&(gen, -exp)) {
            continue;
        }
        letters.push((gen, exp));
    }
    GroupWord::new(letters.into_iter().map(|(g, e)| (format!("x{g}"), e)).collect())
}

/// A random non-trivial element together with the word it came from.
pub fn random_element(rng: &mut ChaCha8Rng, max_len: usize) -> (GroupWord, Element) {
    loop {
        let w = random_word(rng, max_len);
        let e = eval_word(&w, &standard_assignment()).expect("x0/x1 words evaluate");
        if !e.is_identity() {
            return (w, e);
        }
    }
}

fn nonzero(rng: &mut ChaCha8Rng) -> i64 {
    let k = rng.gen_range(1..=TARGET_RANGE);
    if rng.gen_bool(0.5) {
        k
    } else {
        -k
    }
}

fn admissible(part: Part, image: AbelianImage) -> bool {
    match part {
        Part::One => true,
        Part::Two => image.at_one != 0,
        Part::Three => image.at_zero != 0,
        Part::Four => image.at_zero != 0 && image.at_one != 0,
    }
}

/// A target for `f`, preferring the shape `preferred` and rotating through
/// the four shapes until one is admissible for `f`'s image.
pub fn random_target(rng: &mut ChaCha8Rng, image: AbelianImage, preferred: usize) -> (i64, i64) {
    let (c, d) = (nonzero(rng), nonzero(rng));
    let part = (0..4).map(|i| Part::ALL[(preferred + i) % 4]).find(|p| admissible(*p, image)).unwrap();
    match part {
        Part::One => (c, d),
        Part::Two => (c, 0),
        Part::Three => (0, d),
        Part::Four => (0, 0),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusCase {
    pub index: usize,
    pub f_word: String,
    pub f_image: (i64, i64),
    pub target: (i64, i64),
    pub part: Option<String>,
    pub g_carets: usize,
    pub witnesses: usize,
    pub depth: usize,
    pub image_ok: bool,
    pub blocks_ok: bool,
    pub verdict: String,
    pub certificate: Option<String>,
}

impl CorpusCase {
    pub fn passed(&self) -> bool {
        self.image_ok && self.blocks_ok && self.verdict == "PASS"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub seed: u64,
    pub cases: Vec<CorpusCase>,
}

impl CorpusReport {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.passed()).count()
    }

    pub fn parts_covered(&self) -> Vec<String> {
        let mut parts: Vec<String> = self.cases.iter().filter_map(|c| c.part.clone()).collect();
        parts.sort();
        parts.dedup();
        parts
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:>4}  {:>9}  {:>9}  {:>4}  {:>6}  {:>5}  {:>5}  verdict", "case", "image(f)", "target", "part", "carets", "wits", "depth");
        for c in &self.cases {
            let _ = writeln!(
                out,
                "{:>4}  {:>9}  {:>9}  {:>4}  {:>6}  {:>5}  {:>5}  {}",
                c.index,
                format!("({},{})", c.f_image.0, c.f_image.1),
                format!("({},{})", c.target.0, c.target.1),
                c.part.as_deref().unwrap_or("-"),
                c.g_carets,
                c.witnesses,
                c.depth,
                c.verdict
            );
        }
        let _ = writeln!(out, "seed {}: {}/{} passed, parts {}", self.seed, self.passed(), self.cases.len(), self.parts_covered().join(","));
        out
    }
}

pub fn run_case(index: usize, rng: &mut ChaCha8Rng) -> CorpusCase {
    let (w, f) = random_element(rng, MAX_WORD_LEN);
    let image = f.abelianize();
    let target = random_target(rng, image, index % 4);
    let mut case = CorpusCase {
        index,
        f_word: w.to_string(),
        f_image: (image.at_zero, image.at_one),
        target,
        part: None,
        g_carets: 0,
        witnesses: 0,
        depth: 0,
        image_ok: false,
        blocks_ok: false,
        verdict: String::new(),
        certificate: None,
    };
    match synthesize(&f, target.0, target.1) {
        Ok(r) => {
            case.part = Some(r.part.to_string());
            case.g_carets = r.g.caret_count();
            case.witnesses = r.certificate.witnesses.len();
            case.depth = r.certificate.depth;
            case.image_ok = r.g.abelianize() == AbelianImage::new(target.0, target.1);
            case.blocks_ok = self_check_blocks(&r);
            case.verdict = certify_normal_generation(&r.certificate).to_string();
            case.certificate = Some(r.certificate.to_json());
        }
        Err(e) => case.verdict = format!("ERROR {e}"),
    }
    case
}

pub fn run_corpus(seed: u64, count: usize) -> CorpusReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = (0..count).map(|i| run_case(i, &mut rng)).collect();
    CorpusReport { seed, cases }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_are_reduced_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let w = random_word(&mut rng, MAX_WORD_LEN);
            assert!((1..=MAX_WORD_LEN as u64).contains(&w.length()));
            for pair in w.letters().windows(2) {
                assert!(!(pair[0].0 == pair[1].0 && pair[0].1 == -pair[1].1));
            }
        }
    }

    #[test]
    fn targets_respect_preconditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (a, b) in [(0, 1), (1, 0), (2, -1), (-1, 0)] {
            for p in 0..4 {
                let (c, d) = random_target(&mut rng, AbelianImage::new(a, b), p);
                assert!(!(a == 0 && c == 0) && !(b == 0 && d == 0));
                assert!(c.abs() <= TARGET_RANGE && d.abs() <= TARGET_RANGE);
            }
        }
    }

    #[test]
    fn small_corpus() {
        let r = run_corpus(3, 4);
        assert_eq!(r.passed(), 4, "{}", r.table());
        assert_eq!(r, run_corpus(3, 4));
    }
}
