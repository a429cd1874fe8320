//! The fixed boundary, tail pairs and the u -> v -> w triple of an element.

use thompson_core::dynamics::{find_uvw, left_fixed_boundary, one_tail_pair, zero_end_pair};
use thompson_core::element::{eval_word, standard_assignment};

fn main() {
    let a = standard_assignment();
    for w in ["x0", "x1", "x1^-2 x0", "x0 x1^-1 x0^-1 x1"] {
        let f = eval_word(&w.parse().unwrap(), &a).unwrap();
        let s = left_fixed_boundary(&f).unwrap();
        let t = find_uvw(&f).unwrap();
        println!("{w}: fixed up to .{s}, triple {t}");
        match one_tail_pair(&f) {
            Ok((sign, m, l)) => println!("  at 1: f^{sign} has 1^{m} -> 1^{}", m - l),
            Err(e) => println!("  at 1: {e}"),
        }
        match zero_end_pair(&f) {
            Ok((sign, m, l)) => println!("  at 0: f^{sign} has 0^{m} -> 0^{}", m - l),
            Err(e) => println!("  at 0: {e}"),
        }
    }
}
