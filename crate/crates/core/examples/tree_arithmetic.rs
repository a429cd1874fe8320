//! Tree-diagram arithmetic on the generators.

use thompson_core::element::{eval_word, standard_assignment, Element, GroupWord};
use thompson_core::words::DyadicRational;

fn main() {
    let x0 = Element::x0();
    let x1 = Element::x1();
    println!("x0:\n{x0}");
    println!("x1:\n{x1}");
    println!("x0 then x1:\n{}", x0.compose(&x1));
    println!("x0^-1:\n{}", x0.invert());

    for t in ["1/4", "3/8", ".1101"] {
        let t: DyadicRational = t.parse().unwrap();
        println!("x0({}) = {}   x1({}) = {}", t, x0.evaluate(&t), t, x1.evaluate(&t));
    }
    let half: DyadicRational = "1/2".parse().unwrap();
    println!("x1 slopes at 1/2: left 2^{} right 2^{}", x1.slope_left(&half).unwrap(), x1.slope_right(&half).unwrap());

    let a = standard_assignment();
    let base: GroupWord = "x0 x1^-1".parse().unwrap();
    let x1w: GroupWord = "x1".parse().unwrap();
    for conj in ["x0", "x0^2"] {
        let r = GroupWord::commutator(&base, &GroupWord::conjugate(&x1w, &conj.parse().unwrap()));
        println!("{r} = {}", if eval_word(&r, &a).unwrap().is_identity() { "1" } else { "not 1" });
    }
}
