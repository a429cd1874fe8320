//! Rectangular companions and basis completions in Z^2.

use thompson_core::lattice::{companion_rectangular, complete_basis, index_of, LatticeBasis};

fn main() {
    for (a, b) in [(1, 1), (6, 4), (0, 5), (-12, 9), (2, 3), (8, -12)] {
        let ((c, d), form) = companion_rectangular(a, b).unwrap();
        let idx = index_of(&LatticeBasis::new((a, b), (c, d)));
        print!("({a},{b}) + ({c},{d}) spans {}Z x {}Z, index {idx}", form.p, form.q);
        match complete_basis(a, b) {
            Ok((c, d)) => println!("; basis with ({c},{d})"),
            Err(_) => println!(),
        }
    }
}
