//! Farey fractions mod n: the vertex set of M3(n).
//!
//! A vertex is a pair `(a, c)` of residues with `gcd(a, c, n) = 1`, taken up
//! to the global sign `(a, c) ~ (-a, -c)`. The stored representative is the
//! lexicographically smaller of the two pairs.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::arith::{ext_gcd, gcd, mod_inverse, prime_divisors, Level};
use crate::error::{Error, Result};

/// A vertex of M3(n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FareyFraction {
    a: u64,
    c: u64,
    level: Level,
}

impl FareyFraction {
    /// Builds the class of `a/c` mod `n`. Any integers are accepted.
    pub fn new(a: i64, c: i64, level: Level) -> Result<Self> {
        let (ra, rc) = (level.reduce(a), level.reduce(c));
        if gcd(gcd(ra, rc), level.get()) != 1 {
            return Err(Error::InvalidVertex {
                a,
                c,
                n: level.get(),
            });
        }
        Ok(Self::from_residues(ra, rc, level))
    }

    /// Canonicalizes residues already known to form a vertex.
    pub(crate) fn from_residues(a: u64, c: u64, level: Level) -> Self {
        let neg = (level.neg(a), level.neg(c));
        let (a, c) = if neg < (a, c) { neg } else { (a, c) };
        FareyFraction { a, c, level }
    }

    pub fn numerator(&self) -> u64 {
        self.a
    }

    pub fn denominator(&self) -> u64 {
        self.c
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// `ad - bc mod n` for the stored representatives.
    pub fn det(&self, other: &FareyFraction) -> Result<u64> {
        same_level(self.level, other.level)?;
        let n = self.level;
        Ok(n.sub(n.mul(self.a, other.c), n.mul(other.a, self.c)))
    }

    /// Whether `self` and `other` are joined by an edge: `ad - bc ≡ ±1 (mod n)`.
    pub fn adjacent(&self, other: &FareyFraction) -> Result<bool> {
        let det = self.det(other)?;
        Ok(det == 1 || det == self.level.get() - 1)
    }

    /// A column `(b, d)` completing the stored representative to a matrix of
    /// determinant 1.
    ///
    /// With `k = gcd(a, c) = ua + vc` and `α = k⁻¹ mod n` (which exists because
    /// `gcd(k, n) = 1`), `(αu)a + (αv)c ≡ 1`, so `d = αu`, `b = -αv`.
    pub fn lift_to_unimodular(&self) -> (u64, u64) {
        let n = self.level;
        let (k, u, v) = ext_gcd(self.a as i64, self.c as i64);
        let alpha = mod_inverse(k, n.get()).expect("gcd(a, c) is a unit mod n for a vertex") as i64;
        let m = n.get() as i64;
        let d = n.reduce((alpha * u.rem_euclid(m)) % m);
        let b = n.reduce(-((alpha * v.rem_euclid(m)) % m));
        (b, d)
    }

    pub fn is_pole(&self) -> bool {
        self.c == 0
    }
}

/// Vertices order by denominator, then numerator: `1/0, 2/0, 0/1, 1/1, …`.
impl Ord for FareyFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.level, self.c, self.a).cmp(&(other.level, other.c, other.a))
    }
}

impl PartialOrd for FareyFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FareyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.c)
    }
}

pub(crate) fn same_level(left: Level, right: Level) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::LevelMismatch {
            left: left.get(),
            right: right.get(),
        })
    }
}

/// A fraction as written, `a/c` with optional signs, before reduction mod n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FractionLiteral {
    pub numerator: i64,
    pub denominator: i64,
}

impl FractionLiteral {
    pub fn at_level(self, level: Level) -> Result<FareyFraction> {
        FareyFraction::new(self.numerator, self.denominator, level)
    }
}

impl FromStr for FractionLiteral {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("`{s}` is not a fraction of the form a/c"));
        let (num, den) = s.trim().split_once('/').ok_or_else(bad)?;
        let parse = |t: &str| {
            let t = t.trim();
            // i64::from_str accepts a leading '+' or '-'; reject anything else
            if t.is_empty()
                || !t
                    .trim_start_matches(['+', '-'])
                    .bytes()
                    .all(|b| b.is_ascii_digit())
            {
                return Err(bad());
            }
            t.parse::<i64>().map_err(|_| bad())
        };
        Ok(FractionLiteral {
            numerator: parse(num)?,
            denominator: parse(den)?,
        })
    }
}

/// Parses `a/c` and reduces it mod `n`.
pub fn parse_fraction(s: &str, level: Level) -> Result<FareyFraction> {
    s.parse::<FractionLiteral>()?.at_level(level)
}

/// `make_fraction(a, c, n)`: the vertex class of `a/c` mod `n`.
pub fn make_fraction(a: i64, c: i64, level: Level) -> Result<FareyFraction> {
    FareyFraction::new(a, c, level)
}

/// A shift `k` with `gcd(a + ck, n) = 1`: the product of the primes of `n`
/// dividing neither `a` nor `c` (1 if there are none).
pub fn unit_shift(a: i64, c: i64, level: Level) -> Result<u64> {
    let n = level.get();
    let (ra, rc) = (level.reduce(a), level.reduce(c));
    if gcd(gcd(ra, rc), n) != 1 {
        return Err(Error::PreconditionViolated(format!(
            "gcd({a}, {c}, {n}) != 1"
        )));
    }
    let k = prime_divisors(n)
        .into_iter()
        .filter(|&p| ra % p != 0 && rc % p != 0)
        .product::<u64>();
    let shifted = level.add(ra, level.mul(rc, k % n));
    if gcd(shifted, n) != 1 {
        return Err(Error::Inconsistent(format!(
            "unit shift {k} leaves gcd({a} + {c}*{k}, {n}) != 1"
        )));
    }
    Ok(k)
}

/// All vertices of M3(n), sorted.
pub fn enumerate_vertices(level: Level) -> Vec<FareyFraction> {
    let n = level.get();
    let mut out = Vec::new();
    for c in 0..n {
        for a in 0..n {
            if gcd(gcd(a, c), n) != 1 {
                continue;
            }
            let v = FareyFraction::from_residues(a, c, level);
            // keep each class once, at its canonical representative
            if v.a == a && v.c == c {
                out.push(v);
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::vertex_count;

    fn lv(n: u64) -> Level {
        Level::new(n).unwrap()
    }

    fn f(a: i64, c: i64, n: u64) -> FareyFraction {
        FareyFraction::new(a, c, lv(n)).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(f(6, 0, 7), f(1, 0, 7));
        assert_eq!(f(6, 0, 7).to_string(), "1/0");
        assert_eq!(f(1, 0, 5).to_string(), "1/0");
        assert_eq!(f(-1, -3, 8).to_string(), "1/3");
        assert_eq!(f(7, 5, 8), f(1, 3, 8));
        assert_eq!(f(3, 5, 7).to_string(), "3/5");
        assert_eq!(f(4, 2, 7), f(3, 5, 7));
    }

    #[test]
    fn invalid_vertices() {
        assert!(matches!(
            FareyFraction::new(2, 2, lv(4)),
            Err(Error::InvalidVertex { .. })
        ));
        assert!(FareyFraction::new(0, 0, lv(5)).is_err());
        assert!(FareyFraction::new(3, 6, lv(9)).is_err());
        assert!(FareyFraction::new(2, 3, lv(6)).is_ok());
    }

    #[test]
    fn adjacency_examples() {
        for n in 2..12 {
            let inf = f(1, 0, n);
            for k in 0..n as i64 {
                assert!(inf.adjacent(&f(k, 1, n)).unwrap());
            }
        }
        let inf = f(1, 0, 7);
        assert!(!inf.adjacent(&f(2, 0, 7)).unwrap());
        assert!(!inf.adjacent(&f(3, 0, 7)).unwrap());
        assert!(f(3, 5, 7).adjacent(&f(1, 2, 7)).unwrap());
        assert_eq!(
            f(1, 0, 7).adjacent(&f(1, 0, 8)),
            Err(Error::LevelMismatch { left: 7, right: 8 })
        );
    }

    #[test]
    fn lifts() {
        assert_eq!(f(1, 0, 9).lift_to_unimodular(), (0, 1));
        for n in 2..40 {
            for v in enumerate_vertices(lv(n)) {
                let (b, d) = v.lift_to_unimodular();
                let det = (v.a * d + n * n - b * v.c) % n;
                assert_eq!(det, 1 % n, "{v} mod {n}");
            }
        }
        // printed witnesses: (3 0; 5 5) mod 7 has determinant 1, but
        // (1 2; 2 3) mod 8 has determinant -1
        let det = |[a, b, c, d]: [u64; 4], n: u64| (a * d + n * n - b * c) % n;
        assert_eq!(det([3, 0, 5, 5], 7), 1);
        assert_eq!(det([1, 2, 2, 3], 8), 7);
    }

    #[test]
    fn unit_shifts() {
        assert_eq!(unit_shift(1, 0, lv(12)).unwrap(), 1);
        assert_eq!(unit_shift(2, 3, lv(6)).unwrap(), 1);
        assert_eq!(unit_shift(3, 2, lv(6)).unwrap(), 1);
        assert_eq!(unit_shift(0, 1, lv(30)).unwrap(), 1);
        assert_eq!(unit_shift(1, 1, lv(30)).unwrap(), 30);
        assert_eq!(unit_shift(2, 3, lv(35)).unwrap(), 35);
        assert_eq!(
            unit_shift(2, 0, lv(4)),
            Err(Error::PreconditionViolated("gcd(2, 0, 4) != 1".into()))
        );
        for n in 2..60u64 {
            for a in 0..n as i64 {
                for c in 0..n as i64 {
                    if gcd(gcd(a as u64, c as u64), n) == 1 {
                        let k = unit_shift(a, c, lv(n)).unwrap() as i64;
                        assert_eq!(gcd(((a + c * k) % n as i64) as u64, n), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn vertex_counts() {
        for n in 2..=60 {
            assert_eq!(enumerate_vertices(lv(n)).len() as u64, vertex_count(lv(n)));
        }
    }

    #[test]
    fn dart_count_by_enumeration() {
        // ordered adjacent vertex pairs mod 7
        let vs = enumerate_vertices(lv(7));
        let darts = vs
            .iter()
            .flat_map(|u| vs.iter().map(move |v| (u, v)))
            .filter(|(u, v)| u.adjacent(v).unwrap())
            .count();
        assert_eq!(darts, 168);
    }

    #[test]
    fn parse_literals() {
        assert_eq!(
            "-3/5".parse::<FractionLiteral>().unwrap(),
            FractionLiteral {
                numerator: -3,
                denominator: 5
            }
        );
        assert_eq!(parse_fraction(" +6 / 0 ", lv(7)).unwrap(), f(1, 0, 7));
        for bad in [
            "",
            "3",
            "3/",
            "/5",
            "a/b",
            "1/2/3",
            "--1/2",
            "1/ -",
            "99999999999999999999/1",
        ] {
            assert!(bad.parse::<FractionLiteral>().is_err(), "{bad:?}");
        }
        assert!(parse_fraction("2/2", lv(4)).is_err());
    }
}
