//! The `thompson` command line.
//!
//! Element arguments accept `x0`, `x1`, `id`, `word:<word in x0, x1>` or a
//! path to a file of `u -> v` lines. Commands taking one element also accept
//! `--word "<word>"` in place of the positional argument.

pub mod codecs;
pub mod corpus;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::certify::{certify_json, Verdict};
use crate::dynamics::find_uvw;
use crate::element::Element;
use crate::lattice::{companion_rectangular, complete_basis, index_of, LatticeBasis};
use crate::synthesis::{complete_generating_pair, finite_index_pair, synthesize, SynthesisResult};
use crate::words::DyadicRational;

use codecs::{element_from_word, read_element, to_dot, write_text};

#[derive(Parser, Debug)]
#[command(name = "thompson", version, about = "Tree-diagram arithmetic in Thompson's group F and normal-generation certificates")]
pub struct Cli {
    /// Machine-readable JSON output where supported
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct One {
    pub element: Option<String>,
    /// Inline word in x0, x1
    #[arg(long)]
    pub word: Option<String>,
}

impl One {
    fn load(&self) -> Result<Element, String> {
        match (&self.element, &self.word) {
            (_, Some(w)) => element_from_word(w),
            (Some(e), None) => read_element(e),
            (None, None) => Err("expected an element argument or --word".into()),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Outputs {
    /// Write g as branch-pair text
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the certificate as JSON
    #[arg(long)]
    pub cert: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the reduced diagram
    Parse(One),
    /// Product `a` then `b`
    Compose { a: String, b: String },
    Invert(One),
    /// Image of a dyadic point (`k/2^n`, `.s`)
    Eval {
        element: String,
        point: String,
    },
    /// One-sided slope logarithms at a dyadic point
    Slopes {
        element: String,
        point: String,
    },
    Abelianize(One),
    /// Conjugate by t -> 1-t
    Flip(One),
    /// The triple u, v, w with u -> v -> w under f or f^-1
    Uvw(One),
    /// `a,b`: companion and basis completion; `a,b,c,d`: index of the pair
    Lattice {
        #[arg(allow_hyphen_values = true)]
        vectors: String,
    },
    /// Partner g with image `c,d`
    Synthesize {
        #[command(flatten)]
        f: One,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[command(flatten)]
        outputs: Outputs,
    },
    /// Partner g with <f,g> = F
    CompletePair {
        #[command(flatten)]
        f: One,
        #[command(flatten)]
        outputs: Outputs,
    },
    /// Partner g with <f,g> of finite index
    FiniteIndex {
        #[command(flatten)]
        f: One,
        #[command(flatten)]
        outputs: Outputs,
    },
    /// Check a certificate file
    Certify {
        cert: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Render an element
    Export {
        #[command(flatten)]
        element: One,
        /// Graphviz output
        #[arg(long)]
        dot: bool,
    },
    /// Seeded end-to-end sweep
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

fn ints(s: &str) -> Result<Vec<i64>, String> {
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}"))).collect()
}

fn pair(s: &str) -> Result<(i64, i64), String> {
    match ints(s)?[..] {
        [a, b] => Ok((a, b)),
        _ => Err(format!("expected `a,b`, got {s:?}")),
    }
}

fn point(s: &str) -> Result<DyadicRational, String> {
    s.parse().map_err(|e| format!("{s:?}: {e}"))
}

fn emit_result(r: &SynthesisResult, outputs: &Outputs, json: bool, out: &mut dyn Write) -> Result<i32, String> {
    if let Some(p) = &outputs.out {
        write_text(p, &r.g.to_text())?;
    }
    if let Some(p) = &outputs.cert {
        write_text(p, &r.certificate.to_json())?;
    }
    if json {
        let v = serde_json::json!({
            "part": r.part.to_string(),
            "g": r.g.to_text().lines().collect::<Vec<_>>(),
            "image": [r.target_image.at_zero, r.target_image.at_one],
            "index": r.index.to_string(),
            "witnesses": r.certificate.witnesses.len(),
            "depth": r.certificate.depth,
        });
        w(out, &serde_json::to_string_pretty(&v).unwrap())?;
    } else {
        w(out, &format!("# part {}, image {}, index {}, lattice {}", r.part, r.target_image, r.index, r.lattice))?;
        w(out, r.g.to_text().trim_end())?;
    }
    Ok(0)
}

fn w(out: &mut dyn Write, s: &str) -> Result<(), String> {
    writeln!(out, "{s}").map_err(|e| e.to_string())
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, String> {
    let json = cli.json;
    match cli.command {
        Command::Parse(e) => w(out, e.load()?.to_text().trim_end())?,
        Command::Compose { a, b } => w(out, read_element(&a)?.compose(&read_element(&b)?).to_text().trim_end())?,
        Command::Invert(e) => w(out, e.load()?.invert().to_text().trim_end())?,
        Command::Eval { element, point: p } => w(out, &read_element(&element)?.evaluate(&point(&p)?).to_string())?,
        Command::Slopes { element, point: p } => {
            let e = read_element(&element)?;
            let t = point(&p)?;
            let l = if t.is_zero() { "-".to_string() } else { e.slope_left(&t).map_err(|x| x.to_string())?.to_string() };
            let r = if t.is_one() { "-".to_string() } else { e.slope_right(&t).map_err(|x| x.to_string())?.to_string() };
            w(out, &format!("left {l} right {r}"))?;
        }
        Command::Abelianize(e) => w(out, &e.load()?.abelianize().to_string())?,
        Command::Flip(e) => w(out, e.load()?.flip().to_text().trim_end())?,
        Command::Uvw(e) => {
            let t = find_uvw(&e.load()?).map_err(|x| x.to_string())?;
            w(out, &format!("sign {} u {} v {} w {}", t.sign, t.u, t.v, t.w))?;
        }
        Command::Lattice { vectors } => {
            let v = ints(&vectors)?;
            match v[..] {
                [a, b] => {
                    let ((c, d), form) = companion_rectangular(a, b).map_err(|e| e.to_string())?;
                    w(out, &format!("companion ({c},{d}) gives {}Z x {}Z, index {}", form.p, form.q, form.p * form.q))?;
                    match complete_basis(a, b) {
                        Ok((c, d)) => w(out, &format!("basis completion ({c},{d})"))?,
                        Err(e) => w(out, &format!("basis completion: {e}"))?,
                    }
                }
                [a, b, c, d] => w(out, &format!("index {}", index_of(&LatticeBasis::new((a, b), (c, d)))))?,
                _ => return Err(format!("expected `a,b` or `a,b,c,d`, got {vectors:?}")),
            }
        }
        Command::Synthesize { f, target, outputs } => {
            let (c, d) = pair(&target)?;
            let r = synthesize(&f.load()?, c, d).map_err(|e| e.to_string())?;
            return emit_result(&r, &outputs, json, out);
        }
        Command::CompletePair { f, outputs } => {
            let r = complete_generating_pair(&f.load()?).map_err(|e| e.to_string())?;
            return emit_result(&r, &outputs, json, out);
        }
        Command::FiniteIndex { f, outputs } => {
            let r = finite_index_pair(&f.load()?).map_err(|e| e.to_string())?;
            return emit_result(&r, &outputs, json, out);
        }
        Command::Certify { cert, depth } => {
            let text = std::fs::read_to_string(&cert).map_err(|e| format!("{}: {e}", cert.display()))?;
            let verdict = certify_json(&text, depth);
            if json {
                let v = match &verdict {
                    Verdict::Pass => serde_json::json!({"verdict": "PASS"}),
                    Verdict::Fail(r) => serde_json::json!({"verdict": "FAIL", "reason": r.code(), "detail": r.to_string()}),
                };
                w(out, &v.to_string())?;
            } else {
                w(out, &verdict.to_string())?;
            }
            return Ok(if verdict.is_pass() { 0 } else { 1 });
        }
        Command::Export { element, dot } => {
            let e = element.load()?;
            w(out, if dot { to_dot(&e) } else { e.to_text() }.trim_end())?;
        }
        Command::Corpus { seed, count } => {
            let report = corpus::run_corpus(seed, count);
            if json {
                w(out, &serde_json::to_string_pretty(&report).unwrap())?;
            } else {
                w(out, report.table().trim_end())?;
            }
            return Ok(if report.passed() == report.cases.len() { 0 } else { 1 });
        }
    }
    Ok(0)
}

/// Parses `args` (program name first) and runs the command. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}
