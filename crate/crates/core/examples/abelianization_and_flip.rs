//! Endpoint slopes and the flip automorphism.

use thompson_core::element::{eval_word, standard_assignment};

fn main() {
    let a = standard_assignment();
    for w in ["x0", "x1", "x0 x1", "x0^-1 x1^-1 x0 x1", "x1^3 x0^-2"] {
        let e = eval_word(&w.parse().unwrap(), &a).unwrap();
        println!(
            "{w:<20} image {:<8} flip image {:<8} in [F,F]: {}",
            e.abelianize().to_string(),
            e.flip().abelianize().to_string(),
            e.in_derived()
        );
    }
}
