//! Rank-two integer lattices: index, rectangular companions, basis completion.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("(0,0) generates the trivial lattice")]
    ZeroInput,
    #[error("({0},{1}) is not unimodular: gcd is {2}")]
    NotUnimodular(i64, i64, i64),
}

/// The subgroup `<v1, v2>` of `Z^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    pub v1: (i64, i64),
    pub v2: (i64, i64),
}

impl LatticeBasis {
    pub fn new(v1: (i64, i64), v2: (i64, i64)) -> Self {
        LatticeBasis { v1, v2 }
    }

    pub fn det(&self) -> i64 {
        self.v1.0 * self.v2.1 - self.v1.1 * self.v2.0
    }
}

impl fmt::Display for LatticeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<({},{}),({},{})>", self.v1.0, self.v1.1, self.v2.0, self.v2.1)
    }
}

/// Index of a sublattice of `Z^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Index {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => f.write_str("infinite"),
        }
    }
}

/// `pZ x qZ`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RectangularForm {
    pub p: u64,
    pub q: u64,
}

impl RectangularForm {
    pub fn basis(&self) -> LatticeBasis {
        LatticeBasis::new((self.p as i64, 0), (0, self.q as i64))
    }
}

pub fn index_of(b: &LatticeBasis) -> Index {
    match b.det().unsigned_abs() {
        0 => Index::Infinite,
        n => Index::Finite(n),
    }
}

/// `(g, x, y)` with `g = gcd(a, b) >= 0` and `a x + b y = g`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut pk = 1;
            while n % p == 0 {
                n /= p;
                pk *= p;
            }
            out.push((p, pk));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

/// A vector `(c, d)` and `p, q` with `<(a,b),(c,d)> = pZ x qZ` and `pq = gcd(a,b)`.
///
/// `q` collects the prime powers of `g = gcd(a,b)` whose prime divides `a/g`,
/// `p = g/q`, and `(c, d) = (n p, m q)` where `m (q a') - n (p b') = 1` with
/// `m` the least positive solution.
pub fn companion_rectangular(a: i64, b: i64) -> Result<((i64, i64), RectangularForm), LatticeError> {
    if a == 0 && b == 0 {
        return Err(LatticeError::ZeroInput);
    }
    if a == 0 {
        return Ok(((1, 0), RectangularForm { p: 1, q: b.unsigned_abs() }));
    }
    if b == 0 {
        return Ok(((0, 1), RectangularForm { p: a.unsigned_abs(), q: 1 }));
    }
    let g = a.gcd(&b);
    let (a1, b1) = (a / g, b / g);
    let q: i64 = prime_powers(g as u64)
        .into_iter()
        .filter(|(p, _)| a1 % (*p as i64) == 0)
        .map(|(_, pk)| pk as i64)
        .product();
    let p = g / q;
    let (x, y) = (q * a1, p * b1);
    // m x ≡ 1 (mod |y|), least positive m
    let modulus = y.abs();
    let m = if modulus == 1 {
        1
    } else {
        let (_, inv, _) = extended_gcd(x, modulus);
        let r = inv.rem_euclid(modulus);
        if r == 0 {
            modulus
        } else {
            r
        }
    };
    let n = (m * x - 1) / y;
    debug_assert_eq!(m * x - n * y, 1);
    Ok(((n * p, m * q), RectangularForm { p: p as u64, q: q as u64 }))
}

/// `(c, d)` with `|ad - bc| = 1`.
pub fn complete_basis(a: i64, b: i64) -> Result<(i64, i64), LatticeError> {
    let (g, x, y) = extended_gcd(a, b);
    if g != 1 {
        return Err(LatticeError::NotUnimodular(a, b, g));
    }
    // a x + b y = 1  =>  a d - b c = 1 with d = x, c = -y
    Ok((-y, x))
}

/// Whether `v` is an integer combination of the basis vectors.
pub fn lattice_contains(b: &LatticeBasis, v: (i64, i64)) -> bool {
    let det = b.det();
    if det != 0 {
        let alpha = v.0 * b.v2.1 - v.1 * b.v2.0;
        let beta = b.v1.0 * v.1 - b.v1.1 * v.0;
        return alpha % det == 0 && beta % det == 0;
    }
    // rank <= 1: the lattice is h·Z for a single vector h
    let gen = rank_one_generator(b);
    match gen {
        None => v == (0, 0),
        Some(h) => {
            if h.0 * v.1 - h.1 * v.0 != 0 {
                return false;
            }
            if h.0 != 0 {
                v.0 % h.0 == 0
            } else {
                v.1 % h.1 == 0
            }
        }
    }
}

fn rank_one_generator(b: &LatticeBasis) -> Option<(i64, i64)> {
    let nonzero = if b.v1 != (0, 0) { b.v1 } else { b.v2 };
    if nonzero == (0, 0) {
        return None;
    }
    let g = nonzero.0.gcd(&nonzero.1);
    let dir = (nonzero.0 / g, nonzero.1 / g);
    let coeff = |v: (i64, i64)| if dir.0 != 0 { v.0 / dir.0 } else { v.1 / dir.1 };
    let k = coeff(b.v1).gcd(&coeff(b.v2));
    Some((dir.0 * k, dir.1 * k))
}

/// Mutual containment of generators.
pub fn lattice_equal(a: &LatticeBasis, b: &LatticeBasis) -> bool {
    lattice_contains(a, b.v1) && lattice_contains(a, b.v2) && lattice_contains(b, a.v1) && lattice_contains(b, a.v2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Counts cosets of the lattice met by the box `[0,n)^2`, comparing
    /// points by membership of their difference.
    fn brute_coset_count(b: &LatticeBasis, n: i64) -> usize {
        let mut reps: Vec<(i64, i64)> = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if !reps.iter().any(|r| lattice_contains(b, (x - r.0, y - r.1))) {
                    reps.push((x, y));
                }
            }
        }
        reps.len()
    }

    /// Membership by bounded search over coefficients.
    fn brute_contains(b: &LatticeBasis, v: (i64, i64), bound: i64) -> bool {
        (-bound..=bound).any(|s| {
            (-bound..=bound).any(|t| (s * b.v1.0 + t * b.v2.0, s * b.v1.1 + t * b.v2.1) == v)
        })
    }

    #[test]
    fn indices() {
        assert_eq!(index_of(&LatticeBasis::new((1, 0), (0, 1))), Index::Finite(1));
        let b = LatticeBasis::new((6, 4), (4, 3));
        assert_eq!(index_of(&b), Index::Finite(2));
        assert_eq!(brute_coset_count(&b, 6), 2);
        assert_eq!(index_of(&LatticeBasis::new((2, 4), (1, 2))), Index::Infinite);
    }

    #[test]
    fn companions() {
        assert_eq!(companion_rectangular(0, 5), Ok(((1, 0), RectangularForm { p: 1, q: 5 })));
        assert_eq!(companion_rectangular(1, 1), Ok(((0, 1), RectangularForm { p: 1, q: 1 })));
        assert_eq!(companion_rectangular(6, 4), Ok(((4, 3), RectangularForm { p: 2, q: 1 })));
        assert_eq!(companion_rectangular(0, 0), Err(LatticeError::ZeroInput));
        let b = LatticeBasis::new((6, 4), (4, 3));
        let rect = RectangularForm { p: 2, q: 1 }.basis();
        let points: BTreeSet<(i64, i64)> =
            (-12..=12).flat_map(|x| (-12..=12).map(move |y| (x, y))).collect();
        for v in points {
            assert_eq!(brute_contains(&b, v, 80), brute_contains(&rect, v, 80), "{v:?}");
        }
    }

    #[test]
    fn completion() {
        assert_eq!(complete_basis(1, 0), Ok((0, 1)));
        let (c, d) = complete_basis(2, 3).unwrap();
        assert_eq!(index_of(&LatticeBasis::new((2, 3), (c, d))), Index::Finite(1));
        assert!(matches!(complete_basis(0, 0), Err(LatticeError::NotUnimodular(0, 0, 0))));
        assert!(matches!(complete_basis(2, 4), Err(LatticeError::NotUnimodular(2, 4, 2))));
    }

    #[test]
    fn membership() {
        assert!(lattice_contains(&LatticeBasis::new((6, 4), (4, 3)), (2, 0)));
        assert!(lattice_contains(&LatticeBasis::new((1, 0), (0, 1)), (-7, 13)));
        assert!(!lattice_contains(&LatticeBasis::new((2, 0), (0, 2)), (1, 0)));
        let deg = LatticeBasis::new((2, 4), (3, 6));
        assert!(lattice_contains(&deg, (1, 2)));
        assert!(!lattice_contains(&deg, (1, 3)));
        let deg = LatticeBasis::new((4, 6), (0, 0));
        assert!(lattice_contains(&deg, (-4, -6)));
        assert!(!lattice_contains(&deg, (2, 3)));
        assert!(lattice_contains(&LatticeBasis::new((0, 0), (0, 0)), (0, 0)));
    }

    #[test]
    fn small_box_sweep() {
        for a in -20..=20i64 {
            for b in -20..=20i64 {
                if (a, b) == (0, 0) {
                    continue;
                }
                let ((c, d), form) = companion_rectangular(a, b).unwrap();
                let basis = LatticeBasis::new((a, b), (c, d));
                assert_eq!((form.p * form.q) as i64, a.gcd(&b));
                assert_eq!(index_of(&basis), Index::Finite(form.p * form.q));
                assert!(lattice_equal(&basis, &form.basis()), "({a},{b})");
                if a.gcd(&b) == 1 {
                    let (c, d) = complete_basis(a, b).unwrap();
                    assert_eq!((a * d - b * c).abs(), 1);
                }
            }
        }
    }
}
