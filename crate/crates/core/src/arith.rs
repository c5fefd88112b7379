//! Exact integer and modular arithmetic, and the closed-form counts for M3(n).
//!
//! Everything here is integer-only. The product over primes `Π(1 - 1/p²)` is
//! carried as the pair `(Π(p² - 1), Π p²)` and only divided once the
//! numerator is known to be a multiple of the denominator.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted level. Keeps `n³` inside `u64` and residue products inside `i64`.
pub const MAX_LEVEL: u64 = 1 << 20;

/// The congruence level `n` of a quotient map, `2 <= n <= MAX_LEVEL`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Level(u64);

impl Level {
    pub fn new(n: u64) -> Result<Self> {
        if (2..=MAX_LEVEL).contains(&n) {
            Ok(Level(n))
        } else {
            Err(Error::InvalidLevel(n))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Reduces an arbitrary integer into `[0, n)`.
    #[inline]
    pub fn reduce(self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }

    /// `-x mod n` for a residue `x` in `[0, n)`.
    #[inline]
    pub fn neg(self, x: u64) -> u64 {
        if x == 0 {
            0
        } else {
            self.0 - x
        }
    }

    #[inline]
    pub fn mul(self, x: u64, y: u64) -> u64 {
        (x * y) % self.0
    }

    #[inline]
    pub fn add(self, x: u64, y: u64) -> u64 {
        (x + y) % self.0
    }

    #[inline]
    pub fn sub(self, x: u64, y: u64) -> u64 {
        (x + self.0 - y) % self.0
    }
}

impl TryFrom<u64> for Level {
    type Error = Error;

    fn try_from(n: u64) -> Result<Self> {
        Level::new(n)
    }
}

impl From<Level> for u64 {
    fn from(level: Level) -> u64 {
        level.0
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n: u64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("`{s}` is not a level")))?;
        Level::new(n)
    }
}

/// Vital statistics of M3(n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapStatistics {
    pub darts: u64,
    pub edges: u64,
    pub faces: u64,
    pub vertices: u64,
    pub valency: u64,
    pub genus: u64,
}

impl MapStatistics {
    /// `V - E + F` as a signed integer.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn mod_inverse(a: i64, n: u64) -> Option<u64> {
    let m = n as i64;
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| x.rem_euclid(m) as u64)
}

/// Distinct prime divisors in increasing order, by trial division.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            primes.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_divisors(n) == [n]
}

pub fn euler_phi(n: u64) -> u64 {
    prime_divisors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// `(Π(p² - 1), Π p²)` over the primes dividing `n`.
fn prime_square_product(n: u64) -> (u128, u128) {
    prime_divisors(n)
        .into_iter()
        .map(|p| (p as u128) * (p as u128))
        .fold((1, 1), |(num, den), p2| (num * (p2 - 1), den * p2))
}

/// Index of Γ(n) in the modular group, i.e. `|PSL(2, Z/n)|` and the number of darts.
pub fn mu(n: Level) -> u64 {
    let n = n.get();
    if n == 2 {
        return 6;
    }
    let (num, den) = prime_square_product(n);
    let cube = (n as u128).pow(3);
    // each p | n gives p³ | n³, so the division is exact; the result is even for n > 2
    let index = cube / den * num / 2;
    index as u64
}

/// Number of vertices, the index of Γ1(n).
pub fn vertex_count(n: Level) -> u64 {
    if n.get() == 2 {
        return 3;
    }
    let (num, den) = prime_square_product(n.get());
    let square = (n.get() as u128).pow(2);
    (square / den * num / 2) as u64
}

/// Genus of M3(n), `1 + n²(n-6)/24 · Π(1 - 1/p²)`, with the exact value
/// checked for integrality.
pub fn genus(n: Level) -> Result<u64> {
    if n.get() == 2 {
        // Euler: 2 - 2g = μ(2)(6 - 2)/12 = 2
        return Ok(0);
    }
    let (num, den) = prime_square_product(n.get());
    let nn = n.get() as i128;
    let numerator = nn * nn * (nn - 6) * num as i128;
    let denominator = 24 * den as i128;
    if numerator % denominator != 0 {
        return Err(Error::NonIntegral("genus"));
    }
    let g = 1 + numerator / denominator;
    u64::try_from(g).map_err(|_| Error::NonIntegral("genus"))
}

pub fn statistics(n: Level) -> Result<MapStatistics> {
    let darts = mu(n);
    let stats = MapStatistics {
        darts,
        edges: darts / 2,
        faces: darts / 3,
        vertices: vertex_count(n),
        valency: n.get(),
        genus: genus(n)?,
    };
    if stats.euler_characteristic() != 2 - 2 * stats.genus as i64 {
        return Err(Error::Inconsistent(format!(
            "Euler characteristic of level {n} does not match its genus"
        )));
    }
    Ok(stats)
}

/// Semiperiod of the Fibonacci sequence `f0 = 1, f1 = 0, f(k+1) = f(k) + f(k-1)` mod n:
/// the least `k >= 1` with `(f(k), f(k+1)) ≡ ±(1, 0)`.
pub fn fibonacci_semiperiod(n: Level) -> Result<u64> {
    fibonacci_return(n, true)
}

/// Full period of the same sequence: the least `k >= 1` with `(f(k), f(k+1)) ≡ (1, 0)`.
pub fn fibonacci_period(n: Level) -> Result<u64> {
    fibonacci_return(n, false)
}

fn fibonacci_return(n: Level, up_to_sign: bool) -> Result<u64> {
    let m = n.get();
    let bound = 6 * m * m;
    let (mut x, mut y) = (0u64, 1u64); // (f1, f2)
    for k in 1..=bound {
        if y == 0 && (x == 1 || (up_to_sign && x == m - 1)) {
            return Ok(k);
        }
        (x, y) = (y, (x + y) % m);
    }
    Err(Error::Inconsistent(format!(
        "Fibonacci sequence mod {m} did not return within {bound} steps"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(n: u64) -> Level {
        Level::new(n).unwrap()
    }

    #[test]
    fn level_bounds() {
        assert_eq!(Level::new(1), Err(Error::InvalidLevel(1)));
        assert_eq!(Level::new(0), Err(Error::InvalidLevel(0)));
        assert!(Level::new(2).is_ok());
        assert!(Level::new(MAX_LEVEL + 1).is_err());
        assert_eq!("  7 ".parse::<Level>().unwrap().get(), 7);
        assert!("x".parse::<Level>().is_err());
    }

    #[test]
    fn ext_gcd_identity() {
        for a in -30i64..30 {
            for b in -30i64..30 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(a * x + b * y, g);
                assert_eq!(g as u64, gcd(a.unsigned_abs(), b.unsigned_abs()));
            }
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(2, 7), Some(4));
        assert_eq!(mod_inverse(3, 8), Some(3));
        assert_eq!(mod_inverse(-1, 5), Some(4));
        assert_eq!(mod_inverse(2, 8), None);
        assert_eq!(mod_inverse(0, 5), None);
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(7), 6);
        assert_eq!(euler_phi(1), 1);
        // oracle: direct count
        for n in 1..200u64 {
            let count = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
            assert_eq!(euler_phi(n), count, "n = {n}");
        }
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn primes() {
        assert_eq!(prime_divisors(360), vec![2, 3, 5]);
        assert_eq!(prime_divisors(97), vec![97]);
        assert!(is_prime(2) && is_prime(23) && !is_prime(1) && !is_prime(9));
    }

    #[test]
    fn index_values() {
        assert_eq!(mu(lv(2)), 6);
        assert_eq!(mu(lv(7)), 168);
        assert_eq!(mu(lv(8)), 192);
        assert_eq!(vertex_count(lv(2)), 3);
        assert_eq!(vertex_count(lv(6)), 12);
        assert_eq!(vertex_count(lv(8)), 24);
    }

    #[test]
    fn mu_matches_pair_count() {
        // oracle: |SL(2, Z/n)| by brute force, halved for ±I when n > 2
        for n in 2..=12u64 {
            let mut count = 0u64;
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        for d in 0..n {
                            if (a * d + n * n - b * c) % n == 1 {
                                count += 1;
                            }
                        }
                    }
                }
            }
            let expected = if n == 2 { count } else { count / 2 };
            assert_eq!(mu(lv(n)), expected, "n = {n}");
        }
    }

    #[test]
    fn genus_values() {
        assert_eq!(genus(lv(7)).unwrap(), 3);
        assert_eq!(genus(lv(8)).unwrap(), 5);
        assert_eq!(genus(lv(5)).unwrap(), 0);
        assert_eq!(genus(lv(6)).unwrap(), 1);
        assert_eq!(genus(lv(2)).unwrap(), 0);
    }

    #[test]
    fn statistics_rows() {
        let row = |n| {
            let s = statistics(lv(n)).unwrap();
            (s.darts, s.edges, s.faces, s.vertices, s.valency, s.genus)
        };
        assert_eq!(row(3), (12, 6, 4, 4, 3, 0));
        assert_eq!(row(4), (24, 12, 8, 6, 4, 0));
        assert_eq!(row(8), (192, 96, 64, 24, 8, 5));
    }

    #[test]
    fn statistics_identities() {
        for n in 2..=2000 {
            let n = lv(n);
            let s = statistics(n).unwrap();
            assert_eq!(s.darts % 6, 0);
            assert_eq!(s.darts, n.get() * s.vertices);
            assert_eq!(s.euler_characteristic(), 2 - 2 * s.genus as i64);
        }
    }

    #[test]
    fn semiperiods() {
        assert_eq!(fibonacci_semiperiod(lv(7)).unwrap(), 8);
        assert_eq!(fibonacci_semiperiod(lv(8)).unwrap(), 12);
        assert_eq!(fibonacci_semiperiod(lv(2)).unwrap(), 3);
        assert_eq!(fibonacci_semiperiod(lv(5)).unwrap(), 10);
        for n in 2..=500 {
            let n = lv(n);
            let half = fibonacci_semiperiod(n).unwrap();
            let full = fibonacci_period(n).unwrap();
            assert!(full == half || full == 2 * half, "n = {n}");
        }
    }
}
