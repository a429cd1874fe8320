//! Reading elements from the command line and rendering trees.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::element::{eval_word, standard_assignment, Element, GroupWord};
use crate::words::PrefixCode;

/// Resolves `x0`, `x1`, `id`, `word:<x0/x1 word>`, or a path to a branch-pair file.
pub fn read_element(spec: &str) -> Result<Element, String> {
    match spec {
        "x0" => return Ok(Element::x0()),
        "x1" => return Ok(Element::x1()),
        "id" => return Ok(Element::identity()),
        _ => {}
    }
    if let Some(w) = spec.strip_prefix("word:") {
        return element_from_word(w);
    }
    let text = fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))?;
    Element::from_text(&text).map_err(|e| format!("{spec}: {e}"))
}

pub fn element_from_word(w: &str) -> Result<Element, String> {
    let word: GroupWord = w.parse().map_err(|e| format!("word {w:?}: {e}"))?;
    eval_word(&word, &standard_assignment()).map_err(|e| e.to_string())
}

pub fn write_text(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

/// The two trees of the reduced diagram as a graphviz digraph.
pub fn to_dot(e: &Element) -> String {
    let mut out = String::from("digraph element {\n  node [shape=point];\n");
    tree_cluster(&mut out, "domain", &e.domain_code());
    tree_cluster(&mut out, "range", &e.range_code());
    out.push_str("}\n");
    out
}

fn tree_cluster(out: &mut String, name: &str, code: &PrefixCode) {
    let id = |w: &str| format!("{name}_{}", if w.is_empty() { "root" } else { w });
    let _ = writeln!(out, "  subgraph cluster_{name} {{\n    label=\"{name}\";");
    let mut internal = std::collections::BTreeSet::new();
    for leaf in code.branches() {
        let mut p = leaf.clone();
        while let Some(q) = p.parent() {
            internal.insert(q.clone());
            p = q;
        }
    }
    for node in &internal {
        let s = node.bits().iter().map(|b| char::from(b'0' + b)).collect::<String>();
        for bit in 0..2u8 {
            let c = format!("{s}{bit}");
            let _ = writeln!(out, "    {} -> {};", id(&s), id(&c));
        }
    }
    for (i, leaf) in code.branches().iter().enumerate() {
        let s = leaf.bits().iter().map(|b| char::from(b'0' + b)).collect::<String>();
        let _ = writeln!(out, "    {} [shape=plaintext, label=\"{}\"];", id(&s), i + 1);
    }
    out.push_str("  }\n");
}
