//! Graphviz rendering of a synthesized partner; pipe into `dot -Tsvg`.

use thompson_core::cli::codecs::to_dot;
use thompson_core::element::Element;
use thompson_core::synthesis::synthesize;

fn main() {
    let r = synthesize(&Element::x0(), 1, 1).unwrap();
    print!("{}", to_dot(&r.g));
}
