//! One partner per construction shape, each with its certificate verdict.

use thompson_core::certify::certify_normal_generation;
use thompson_core::element::{eval_word, standard_assignment};
use thompson_core::synthesis::synthesize;

fn main() {
    let a = standard_assignment();
    let cases = [("x0", 2, -1), ("x1^-1", 3, 0), ("x0", 0, 2), ("x0 x1", 0, 0), ("x0^2 x1", -1, -3)];
    for (w, c, d) in cases {
        let f = eval_word(&w.parse().unwrap(), &a).unwrap();
        let r = synthesize(&f, c, d).unwrap();
        println!(
            "f = {w:<8} target ({c},{d}): part {}, g has {} carets, {} witnesses, {}",
            r.part,
            r.g.caret_count(),
            r.certificate.witnesses.len(),
            certify_normal_generation(&r.certificate)
        );
    }
}
