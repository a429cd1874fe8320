//! Cross-checking certificate witnesses against exhaustive enumeration.

use thompson_core::certify::brute_force_relations;
use thompson_core::element::Element;
use thompson_core::synthesis::synthesize;

fn main() {
    let r = synthesize(&Element::x0(), 1, 2).unwrap();
    let cert = &r.certificate;
    let brute = brute_force_relations(&cert.f, &cert.g, 4, 6);
    println!("{} relations from words of length <= 4 on branches of length <= 6", brute.len());
    for wit in cert.witnesses.iter().filter(|w| w.from.len() <= 6 && w.to.len() <= 6) {
        let rel = wit.relation();
        match brute.get(&rel) {
            Some(word) => println!("  {rel:<20} witness {:<5} shortest {word}", wit.word.to_string()),
            None => println!("  {rel:<20} NOT FOUND"),
        }
    }
}
