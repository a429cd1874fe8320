//! Completing an element with primitive image to a generating pair of F.

use thompson_core::certify::certify_normal_generation;
use thompson_core::element::{eval_word, standard_assignment};
use thompson_core::synthesis::complete_generating_pair;

fn main() {
    let a = standard_assignment();
    for w in ["x0", "x1", "x0^2 x1^3", "x1^-1 x0 x1^2"] {
        let f = eval_word(&w.parse().unwrap(), &a).unwrap();
        match complete_generating_pair(&f) {
            Ok(r) => println!("{w}: lattice {} det {} -> {}", r.lattice, r.lattice.det(), certify_normal_generation(&r.certificate)),
            Err(e) => println!("{w}: {e}"),
        }
    }
}
