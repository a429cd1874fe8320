//! Branch-level readings of an element near its fixed boundary and its endpoints.

use std::fmt;

use thiserror::Error;

use crate::element::Element;
use crate::words::{interval_less, BinaryWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("the identity has no moved points")]
    IdentityInput,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// `+1` for the element itself, `-1` for its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn exponent(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn apply(self, f: &Element) -> Element {
        match self {
            Sign::Plus => f.clone(),
            Sign::Minus => f.invert(),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Words with `[u] < [v] < [w]`, all containing both digits, such that the
/// signed element has the pairs `u -> v` and `v -> w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UvwTriple {
    pub sign: Sign,
    pub u: BinaryWord,
    pub v: BinaryWord,
    pub w: BinaryWord,
}

impl fmt::Display for UvwTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.sign, self.u, self.v, self.w)
    }
}

/// The word `s` (no trailing zeros) with `.s = α`, where `[0, α]` is the
/// largest initial interval fixed pointwise.
pub fn left_fixed_boundary(f: &Element) -> Result<BinaryWord, DynamicsError> {
    if f.is_identity() {
        return Err(DynamicsError::IdentityInput);
    }
    let last_fixed = f.pairs().iter().take_while(|(u, v)| u == v).last();
    Ok(match last_fixed {
        None => BinaryWord::empty(),
        Some((u, _)) => u.right_endpoint().to_word().expect("a non-trivial element moves a point below 1"),
    })
}

/// For `f` fixing `.s` with slope at least 2 just right of it: the pair
/// `(n, m)`, `n > m`, such that `f` has the branch pair `s'0^n -> s'0^m`
/// where `s'` is `s` without trailing zeros.
pub fn zero_tail_pair(f: &Element, s: &BinaryWord) -> Result<(usize, usize), DynamicsError> {
    let stem = s.trim_trailing(0);
    let alpha = stem.to_dyadic();
    if f.evaluate(&alpha) != alpha {
        return Err(DynamicsError::PreconditionViolated(format!("{} is not fixed", alpha.to_binary())));
    }
    let slope = f.slope_right(&alpha).map_err(|e| DynamicsError::PreconditionViolated(e.to_string()))?;
    if slope <= 0 {
        return Err(DynamicsError::PreconditionViolated(format!(
            "slope 2^{slope} right of {} is not expanding",
            alpha.to_binary()
        )));
    }
    // A dyadic fixed point where the slope is not 1 is always the left end of
    // a branch, so the branch there reads s'0^n -> s'0^m.
    let (u, v) = f
        .pairs()
        .iter()
        .find(|(u, _)| stem.is_prefix_of(u) && u.bits()[stem.len()..].iter().all(|&b| b == 0))
        .ok_or_else(|| DynamicsError::PreconditionViolated(format!("no branch starts at {}", alpha.to_binary())))?;
    let tail_len = |x: &BinaryWord| {
        x.strip_prefix(&stem).filter(|t| t.is_all(0)).map(|t| t.len())
    };
    let (n, m) = match (tail_len(u), tail_len(v)) {
        (Some(n), Some(m)) if n > m => (n, m),
        _ => {
            return Err(DynamicsError::PreconditionViolated(format!(
                "branch {u} -> {v} does not have the form s0^n -> s0^m"
            )))
        }
    };
    debug_assert!(f.has_branch_pair(&stem.with_run(0, n), &stem.with_run(0, m)));
    Ok((n, m))
}

/// Words `u, v, w` with `[u] < [v] < [w]` such that `f` or `f^-1` has the
/// branch pairs `u -> v` and `v -> w`.
pub fn find_uvw(f: &Element) -> Result<UvwTriple, DynamicsError> {
    let s = left_fixed_boundary(f)?;
    let alpha = s.to_dyadic();
    let slope = f.slope_right(&alpha).expect("boundary lies below 1");
    let sign = if slope > 0 { Sign::Plus } else { Sign::Minus };
    let g = sign.apply(f);
    let (n, m) = zero_tail_pair(&g, &s)?;
    let stem = s.trim_trailing(0);
    let u = stem.with_run(0, 2 * n - m).child(1);
    let v = stem.with_run(0, n).child(1);
    let w = stem.with_run(0, m).child(1);
    let triple = UvwTriple { sign, u, v, w };
    check_triple(f, &triple)?;
    Ok(triple)
}

fn check_triple(f: &Element, t: &UvwTriple) -> Result<(), DynamicsError> {
    let g = t.sign.apply(f);
    let ordered = interval_less(&t.u, &t.v) == Ok(true) && interval_less(&t.v, &t.w) == Ok(true);
    let inner = t.u.in_b_prime() && t.v.in_b_prime() && t.w.in_b_prime();
    let pairs = g.has_branch_pair(&t.u, &t.v) && g.has_branch_pair(&t.v, &t.w);
    if ordered && inner && pairs {
        Ok(())
    } else {
        Err(DynamicsError::PreconditionViolated(format!("triple {t} fails its postconditions")))
    }
}

/// For `f` with non-trivial slope at `1-`: the sign selecting the element
/// `g` in `{f, f^-1}` with `g'(1-) > 1`, and `(m, l)` with `g` having the
/// branch pair `1^m -> 1^(m-l)`, `m > l >= 1`.
pub fn one_tail_pair(f: &Element) -> Result<(Sign, usize, usize), DynamicsError> {
    end_pair(f, 1)
}

/// Mirror of [`one_tail_pair`] at `0+`: `g` has the pair `0^m -> 0^(m-l)`.
pub fn zero_end_pair(f: &Element) -> Result<(Sign, usize, usize), DynamicsError> {
    end_pair(f, 0)
}

fn end_pair(f: &Element, bit: u8) -> Result<(Sign, usize, usize), DynamicsError> {
    let image = f.abelianize();
    let log = if bit == 1 { image.at_one } else { image.at_zero };
    if log == 0 {
        return Err(DynamicsError::PreconditionViolated(format!(
            "slope 1 at {}",
            if bit == 1 { "1-" } else { "0+" }
        )));
    }
    let sign = if log > 0 { Sign::Plus } else { Sign::Minus };
    let g = sign.apply(f);
    let (u, v) = if bit == 1 { g.pairs().last().unwrap() } else { g.pairs().first().unwrap() };
    let (m, l) = (u.len(), u.len() - v.len());
    debug_assert!(g.has_branch_pair(&BinaryWord::repeat(bit, m), &BinaryWord::repeat(bit, m - l)));
    Ok((sign, m, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{eval_word, standard_assignment};
    use crate::words::word;

    fn el(w: &str) -> Element {
        eval_word(&w.parse().unwrap(), &standard_assignment()).unwrap()
    }

    #[test]
    fn fixed_boundary() {
        assert_eq!(left_fixed_boundary(&Element::x0()), Ok(word("e")));
        assert_eq!(left_fixed_boundary(&Element::x1()), Ok(word("1")));
        let f = Element::from_branch_pairs(vec![
            (word("0"), word("0")),
            (word("10"), word("100")),
            (word("110"), word("101")),
            (word("111"), word("11")),
        ])
        .unwrap();
        assert_eq!(left_fixed_boundary(&f), Ok(word("1")));
        assert_eq!(left_fixed_boundary(&Element::identity()), Err(DynamicsError::IdentityInput));
    }

    #[test]
    fn zero_tails() {
        assert_eq!(zero_tail_pair(&Element::x0(), &word("e")), Ok((2, 1)));
        assert_eq!(zero_tail_pair(&Element::x1(), &word("1")), Ok((2, 1)));
        assert_eq!(zero_tail_pair(&el("x0^2"), &word("e")), Ok((3, 1)));
        // trailing zeros of s are ignored
        assert_eq!(zero_tail_pair(&Element::x1(), &word("100")), Ok((2, 1)));
        assert!(matches!(
            zero_tail_pair(&Element::x0().invert(), &word("e")),
            Err(DynamicsError::PreconditionViolated(_))
        ));
        assert!(matches!(zero_tail_pair(&Element::x0(), &word("1")), Err(DynamicsError::PreconditionViolated(_))));
    }

    #[test]
    fn uvw_triples() {
        let t = find_uvw(&Element::x0()).unwrap();
        assert_eq!((t.sign, t.u, t.v, t.w), (Sign::Plus, word("0001"), word("001"), word("01")));
        let t = find_uvw(&Element::x1()).unwrap();
        assert_eq!((t.sign, t.u, t.v, t.w), (Sign::Plus, word("10001"), word("1001"), word("101")));
        let t = find_uvw(&Element::x0().invert()).unwrap();
        assert_eq!((t.sign, t.u, t.v, t.w), (Sign::Minus, word("0001"), word("001"), word("01")));
        assert_eq!(find_uvw(&Element::identity()), Err(DynamicsError::IdentityInput));
    }

    #[test]
    fn end_tails() {
        assert_eq!(one_tail_pair(&Element::x0().invert()), Ok((Sign::Plus, 2, 1)));
        assert_eq!(one_tail_pair(&Element::x0()), Ok((Sign::Minus, 2, 1)));
        let x1sq = el("x1^2");
        let (sign, m, l) = one_tail_pair(&x1sq).unwrap();
        assert_eq!(sign, Sign::Minus);
        assert!(m > l && l >= 1);
        assert!(x1sq.invert().has_branch_pair(&BinaryWord::ones(m), &BinaryWord::ones(m - l)));
        assert_eq!(zero_end_pair(&Element::x0()), Ok((Sign::Plus, 2, 1)));
        assert!(zero_end_pair(&Element::x1()).is_err());
        assert!(one_tail_pair(&el("x0^-1 x1^-1 x0 x1")).is_err());
    }
}
