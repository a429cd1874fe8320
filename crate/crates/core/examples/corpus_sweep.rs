//! Seeded random sweep; pass a seed and a count as arguments.

use thompson_core::cli::corpus::run_corpus;

fn main() {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let count = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);
    print!("{}", run_corpus(seed, count).table());
}
