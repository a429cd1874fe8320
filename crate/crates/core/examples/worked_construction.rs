//! The construction for f = x0 and image (1,1), pair by pair.

use thompson_core::certify::certify_normal_generation;
use thompson_core::element::Element;
use thompson_core::synthesis::{construct_part1, expected_blocks, Part};

fn main() {
    let r = construct_part1(&Element::x0(), 1, 1).unwrap();
    let cert = &r.certificate;
    let tree: Vec<String> = cert.tree.branches().iter().map(|b| b.to_string()).collect();
    println!("w = {}, T = {}", cert.w, tree.join(" "));
    for (p, q) in expected_blocks(Part::One, &cert.tree, &cert.w, 1, 1).unwrap() {
        println!("  {p:>8} -> {q:<8} {}", if r.g.has_branch_pair(&p, &q) { "ok" } else { "MISSING" });
    }
    println!("g has image {} and {} carets", r.g.abelianize(), r.g.caret_count());
    println!("slope witness {} at .{}", cert.slope.word, cert.slope.alpha);
    println!("{}", certify_normal_generation(cert));
}
