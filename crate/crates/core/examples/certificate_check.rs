//! Writing a certificate to JSON, reading it back, and tampering with it.

use thompson_core::certify::{certify_json, certify_normal_generation, Certificate};
use thompson_core::element::{Element, GroupWord};
use thompson_core::synthesis::synthesize;

fn main() {
    let r = synthesize(&Element::x1(), 2, -1).unwrap();
    let json = r.certificate.to_json();
    println!("{} bytes of JSON, depth {}", json.len(), r.certificate.depth);
    println!("round trip: {}", Certificate::from_json(&json).unwrap() == r.certificate);
    println!("as read: {}", certify_json(&json, None));
    println!("depth 3: {}", certify_json(&json, Some(3)));

    let mut c = r.certificate.clone();
    c.witnesses.remove(0);
    println!("first witness removed: {}", certify_normal_generation(&c));

    let mut c = r.certificate.clone();
    c.right.shift.word = GroupWord::default();
    println!("right shift zeroed: {}", certify_normal_generation(&c));

    let mut c = r.certificate.clone();
    c.slope.word = GroupWord::default();
    println!("slope word trivial: {}", certify_normal_generation(&c));
}
