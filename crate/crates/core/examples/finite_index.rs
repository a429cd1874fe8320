//! Partners giving finite-index subgroups with rectangular image.

use thompson_core::element::{eval_word, standard_assignment};
use thompson_core::synthesis::finite_index_pair;

fn main() {
    let a = standard_assignment();
    for w in ["x0^2 x1^-2", "x0^6 x1^-2", "x0 x1^-1 x0^-1 x1^4", "x1^3"] {
        let f = eval_word(&w.parse().unwrap(), &a).unwrap();
        let r = finite_index_pair(&f).unwrap();
        println!("{w}: image of f {}, partner {}, index {}", f.abelianize(), r.target_image, r.index);
    }
}
