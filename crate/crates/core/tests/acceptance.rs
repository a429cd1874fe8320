//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use thompson_core::certify::{
    brute_force_relations, certify_json, certify_normal_generation, Certificate, CertificateDoc,
};
use thompson_core::cli::corpus::{random_element, run_corpus, MAX_WORD_LEN};
use thompson_core::element::{eval_word, standard_assignment, AbelianImage, Element, GroupWord};
use thompson_core::lattice::{companion_rectangular, complete_basis, index_of, lattice_equal, Index, LatticeBasis};
use thompson_core::synthesis::{
    complete_generating_pair, construct_part1, expected_blocks, self_check_blocks, synthesize, Part, SynthesisResult,
};
use thompson_core::words::{word, BinaryWord};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn group_axioms() -> Check {
    let a = standard_assignment();
    let x1: GroupWord = "x1".parse().unwrap();
    let base: GroupWord = "x0 x1^-1".parse().unwrap();
    for conj in ["x0", "x0^2"] {
        let r = GroupWord::commutator(&base, &GroupWord::conjugate(&x1, &conj.parse().unwrap()));
        ensure(eval_word(&r, &a).unwrap().is_identity(), format!("relator {r} is not trivial"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for i in 0..200 {
        let (_, p) = random_element(&mut rng, 8);
        let (_, q) = random_element(&mut rng, 8);
        let (_, r) = random_element(&mut rng, 8);
        ensure(p.compose(&q).compose(&r) == p.compose(&q.compose(&r)), format!("associativity fails on triple {i}"))?;
        ensure(p.compose(&p.invert()).is_identity() && p.invert().compose(&p).is_identity(), format!("inverse fails on {i}"))?;
        ensure(p.compose(&Element::identity()) == p, format!("identity fails on {i}"))?;
    }
    Ok("2 relators trivial, 200 triples".into())
}

fn worked_construction() -> Check {
    let r = construct_part1(&Element::x0(), 1, 1).map_err(|e| e.to_string())?;
    let cert = &r.certificate;
    ensure(cert.w == word("01"), format!("w = {}", cert.w))?;
    let blocks = expected_blocks(Part::One, &cert.tree, &cert.w, 1, 1).ok_or("scaffold position check failed")?;
    for (p, q) in &blocks {
        ensure(r.g.has_branch_pair(p, q), format!("missing pair {p} -> {q}"))?;
    }
    ensure(r.g.has_branch_pair(&word("01100"), &word("01100")), "missing w100 -> w100")?;
    ensure(r.target_image == AbelianImage::new(1, 1), format!("image {}", r.target_image))?;
    ensure(cert.slope.alpha == word("01101") && cert.slope.word.to_string() == "g", "slope witness is not (g, .w101)")?;
    ensure(certify_normal_generation(cert).is_pass(), "certificate rejected")?;
    Ok(format!("{} block pairs reproduced", blocks.len()))
}

fn end_to_end_corpus() -> Check {
    let report = run_corpus(0, 50);
    for c in &report.cases {
        ensure(c.passed(), format!("case {}: f = {}, target {:?}: {}", c.index, c.f_word, c.target, c.verdict))?;
    }
    let parts = report.parts_covered();
    ensure(parts.len() == 4, format!("parts covered: {parts:?}"))?;
    Ok(format!("{}/50 PASS, parts {}", report.passed(), parts.join(",")))
}

fn lattice_sweep() -> Check {
    let mut n = 0;
    for a in -20..=20i64 {
        for b in -20..=20i64 {
            if (a, b) == (0, 0) {
                continue;
            }
            let ((c, d), form) = companion_rectangular(a, b).map_err(|e| e.to_string())?;
            let pq = (form.p * form.q) as i64;
            ensure(pq == gcd(a, b), format!("({a},{b}): pq = {pq}"))?;
            let basis = LatticeBasis::new((a, b), (c, d));
            ensure(index_of(&basis) == Index::Finite(pq as u64), format!("({a},{b}): index"))?;
            ensure(lattice_equal(&basis, &form.basis()), format!("({a},{b}): lattice differs from pZ x qZ"))?;
            n += 1;
        }
    }
    Ok(format!("{n} images"))
}

fn generating_pairs() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut done = 0;
    while done < 20 {
        let (w, f) = random_element(&mut rng, MAX_WORD_LEN);
        let AbelianImage { at_zero: a, at_one: b } = f.abelianize();
        if gcd(a, b) != 1 {
            continue;
        }
        let r = complete_generating_pair(&f).map_err(|e| format!("{w}: {e}"))?;
        ensure(r.lattice.det().abs() == 1, format!("{w}: det {}", r.lattice.det()))?;
        ensure((a, b) == r.lattice.v1 && complete_basis(a, b).map(|v| v == r.lattice.v2) == Ok(true), format!("{w}: wrong partner image"))?;
        ensure(certify_normal_generation(&r.certificate).is_pass(), format!("{w}: certificate rejected"))?;
        done += 1;
    }
    Ok("20 pairs with det ±1 certified".into())
}

fn sample_results(n: usize, seed: u64) -> Vec<(String, SynthesisResult)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut i = 0;
    while out.len() < n {
        let (w, f) = random_element(&mut rng, 6);
        let image = f.abelianize();
        let shape = Part::ALL[i % 4];
        i += 1;
        let c = rng.gen_range(1..=2);
        let d = -rng.gen_range(1..=2);
        let target = match shape {
            Part::One => (c, d),
            Part::Two if image.at_one != 0 => (c, 0),
            Part::Three if image.at_zero != 0 => (0, d),
            Part::Four if image.at_zero != 0 && image.at_one != 0 => (0, 0),
            _ => (c, d),
        };
        if let Ok(r) = synthesize(&f, target.0, target.1) {
            out.push((w.to_string(), r));
        }
    }
    out
}

fn oracle_equivalence() -> Check {
    let mut checked = 0;
    for (w, r) in sample_results(10, 2) {
        let cert = &r.certificate;
        let brute = brute_force_relations(&cert.f, &cert.g, 4, 6);
        let assignment = cert.assignment();
        for wit in cert.witnesses.iter().chain([&cert.left.shift, &cert.right.shift]) {
            if wit.from.len() <= 6 && wit.to.len() <= 6 {
                ensure(brute.contains_key(&wit.relation()), format!("{w}: {} missing from brute force", wit.relation()))?;
                checked += 1;
            }
        }
        for (rel, word) in &brute {
            let h = eval_word(word, &assignment).map_err(|e| e.to_string())?;
            ensure(
                h.has_branch_pair(&rel.lhs, &rel.rhs) || h.has_branch_pair(&rel.rhs, &rel.lhs),
                format!("{w}: {rel} not realized by {word}"),
            )?;
        }
    }
    Ok(format!("10 pairs, {checked} witness relations found by brute force"))
}

fn tamper_suite() -> Check {
    let mut results: Vec<SynthesisResult> = vec![construct_part1(&Element::x0(), 1, 1).map_err(|e| e.to_string())?];
    results.extend(sample_results(4, 3).into_iter().map(|(_, r)| r));
    let mut tampered = 0;
    for r in &results {
        let cert = &r.certificate;
        for i in 0..cert.witnesses.len() {
            let mut c = cert.clone();
            c.witnesses.remove(i);
            let v = certify_normal_generation(&c);
            let code = v.reason().map(|x| x.code()).unwrap_or("pass");
            ensure(code.starts_with("condition-"), format!("deleting witness {i} gave {v}"))?;
            tampered += 1;
        }

        let mut doc = CertificateDoc::from(cert);
        let leaf: BinaryWord = doc.g.domain.pop().unwrap();
        doc.g.domain.push(leaf.child(0));
        doc.g.domain.push(leaf.child(1));
        let v = certify_json(&serde_json::to_string(&doc).unwrap(), None);
        ensure(v.reason().map(|x| x.code()) == Some("malformed"), format!("caret imbalance gave {v}"))?;

        for (side, code) in [(0, "condition-3"), (1, "condition-4")] {
            let mut c = cert.clone();
            let s = if side == 0 { &mut c.left } else { &mut c.right };
            s.shift.word = GroupWord::default();
            let v = certify_normal_generation(&c);
            ensure(v.reason().map(|x| x.code()) == Some(code), format!("zeroed shift gave {v}"))?;
            let mut c = cert.clone();
            let s = if side == 0 { &mut c.left } else { &mut c.right };
            s.shift.to = s.shift.from.clone();
            let v = certify_normal_generation(&c);
            ensure(v.reason().map(|x| x.code()) == Some(code), format!("flat shift gave {v}"))?;
            tampered += 2;
        }
        let mut c = cert.clone();
        c.slope.word = GroupWord::default();
        ensure(certify_normal_generation(&c).reason().map(|x| x.code()) == Some("slope"), "identity slope word accepted")?;
        tampered += 2;
    }
    Ok(format!("{tampered} tampered certificates rejected with matching codes"))
}

fn determinism() -> Check {
    let a = serde_json::to_string(&run_corpus(0, 50)).unwrap();
    let b = serde_json::to_string(&run_corpus(0, 50)).unwrap();
    ensure(a == b, "corpus output differs between runs")?;
    for (_, r) in sample_results(5, 4) {
        let json = r.certificate.to_json();
        let back = Certificate::from_json(&json).map_err(|e| e.to_string())?;
        ensure(back == r.certificate && back.to_json() == json, "certificate JSON does not round-trip")?;
        let again = synthesize(&r.certificate.f, r.target_image.at_zero, r.target_image.at_one).unwrap();
        ensure(again.certificate.to_json() == json, "synthesis is not deterministic")?;
        ensure(self_check_blocks(&again), "block self-check failed")?;
    }
    Ok(format!("{} bytes of corpus output identical", a.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 8] = [
        ("group axioms and presentation", group_axioms, Duration::from_secs(1)),
        ("worked construction x0, (1,1)", worked_construction, Duration::from_secs(1)),
        ("end-to-end corpus, seed 0", end_to_end_corpus, Duration::from_secs(60)),
        ("companion lattice sweep", lattice_sweep, Duration::from_secs(1)),
        ("generating pairs", generating_pairs, Duration::from_secs(30)),
        ("brute-force oracle equivalence", oracle_equivalence, Duration::from_secs(120)),
        ("tamper suite", tamper_suite, Duration::from_secs(5)),
        ("determinism", determinism, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(s) if took <= *limit => Ok(s),
            Ok(s) => Err(format!("{s}, but took {took:.2?} (limit {limit:?})")),
            Err(e) => Err(e),
        };
        match outcome {
            Ok(s) => println!("criterion {}: PASS  {name}: {s} [{took:.2?}]", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {e} [{took:.2?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
