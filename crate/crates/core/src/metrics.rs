//! Graph distance on M3(n): breadth-first search as ground truth, and the
//! arithmetic criteria that predict it.

use std::collections::HashSet;
use std::fmt;

use crate::arith::{euler_phi, gcd, is_prime, mod_inverse, mu, Level};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::map::{build_map_with_cap, star};
use crate::projective::FareyFraction;

/// Largest level for which distance questions build the explicit graph.
pub const DEFAULT_BFS_LEVEL_CAP: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DistanceClass {
    Same = 0,
    Adjacent = 1,
    Two = 2,
    Three = 3,
}

impl DistanceClass {
    pub fn from_distance(d: u32) -> Option<Self> {
        match d {
            0 => Some(Self::Same),
            1 => Some(Self::Adjacent),
            2 => Some(Self::Two),
            3 => Some(Self::Three),
            _ => None,
        }
    }

    pub fn value(self) -> u32 {
        self as u32
    }
}

impl fmt::Display for DistanceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// The poles `a/0` of M3(n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleSet {
    pub level: Level,
    pub poles: Vec<FareyFraction>,
}

/// Builds the underlying graph of M3(n), refusing levels above the BFS cap.
pub fn distance_graph(level: Level) -> Result<Graph> {
    if level.get() > DEFAULT_BFS_LEVEL_CAP {
        return Err(Error::TooLarge {
            what: "level for explicit distance computation",
            size: level.get(),
            cap: DEFAULT_BFS_LEVEL_CAP,
        });
    }
    Ok(build_map_with_cap(level, mu(level))?.underlying_graph())
}

pub fn bfs_distance(level: Level, u: &FareyFraction, v: &FareyFraction) -> Result<u32> {
    distance_graph(level)?.distance(u, v)
}

/// Maximum distance between two vertices, over all pairs.
pub fn diameter(level: Level) -> Result<u32> {
    distance_graph(level)?
        .diameter()
        .ok_or_else(|| Error::Inconsistent(format!("M3({level}) is disconnected")))
}

pub fn poles(level: Level) -> PoleSet {
    let n = level.get();
    let mut poles: Vec<_> = (1..n)
        .filter(|&a| gcd(a, n) == 1)
        .map(|a| FareyFraction::from_residues(a, 0, level))
        .collect();
    poles.sort();
    poles.dedup();
    PoleSet { level, poles }
}

/// Expected number of poles: `φ(n)/2` for `n > 2`, and 1 for `n = 2`.
pub fn pole_count(level: Level) -> u64 {
    match level.get() {
        2 => 1,
        n => euler_phi(n) / 2,
    }
}

/// Whether `b/d` lies at distance two from `1/0`, for `d ≢ ±1`: true iff
/// `gcd(d, n)` divides `b + 1` or `b - 1`.
pub fn distance2_criterion(level: Level, b: i64, d: i64) -> Result<bool> {
    let v = FareyFraction::new(b, d, level)?;
    let n = level.get();
    let (rb, rd) = (level.reduce(b), level.reduce(d));
    if rd == 1 % n || rd == n - 1 {
        return Err(Error::PreconditionViolated(format!(
            "{b}/{d} is adjacent to 1/0 (d ≡ ±1 mod {n})"
        )));
    }
    if v == FareyFraction::from_residues(1, 0, level) {
        return Err(Error::PreconditionViolated(format!(
            "{b}/{d} is 1/0 itself"
        )));
    }
    let g = gcd(rd, n);
    Ok((rb + 1).is_multiple_of(g) || (rb + g - 1).is_multiple_of(g))
}

/// Distance class in M3(p) from the determinant `Δ = ad - bc mod p`:
/// `±1` adjacent, `0` distance three, otherwise two.
///
/// For `p = 2, 3` every pair of distinct vertices is adjacent and the answer
/// is taken from the graph instead.
pub fn classify_distance_prime(
    p: Level,
    u: &FareyFraction,
    v: &FareyFraction,
) -> Result<DistanceClass> {
    if !is_prime(p.get()) {
        return Err(Error::NotPrime(p.get()));
    }
    if u.level() != p || v.level() != p {
        return Err(Error::LevelMismatch {
            left: p.get(),
            right: if u.level() != p {
                u.level().get()
            } else {
                v.level().get()
            },
        });
    }
    if u == v {
        return Ok(DistanceClass::Same);
    }
    if p.get() < 5 {
        let d = bfs_distance(p, u, v)?;
        return DistanceClass::from_distance(d)
            .ok_or_else(|| Error::Inconsistent(format!("distance {d} in M3({p})")));
    }
    let delta = u.det(v)?;
    Ok(if delta == 1 || delta == p.get() - 1 {
        DistanceClass::Adjacent
    } else if delta == 0 {
        DistanceClass::Three
    } else {
        DistanceClass::Two
    })
}

/// The stars of `1/0, 2/0, …, ((p-1)/2)/0` in M3(p), checked to be disjoint
/// and to cover every vertex. Each entry is `(pole, neighbours)`.
pub fn star_decomposition(p: Level) -> Result<Vec<(FareyFraction, Vec<FareyFraction>)>> {
    let n = p.get();
    if n == 2 || !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    let mut covered = HashSet::new();
    let mut out = Vec::new();
    for a in 1..=(n - 1) / 2 {
        let pole = FareyFraction::from_residues(a, 0, p);
        let neighbours = star(&pole);
        for v in std::iter::once(&pole).chain(&neighbours) {
            if !covered.insert(*v) {
                return Err(Error::Inconsistent(format!(
                    "{v} lies in two stars of M3({p})"
                )));
            }
        }
        out.push((pole, neighbours));
    }
    let total = crate::arith::vertex_count(p);
    if covered.len() as u64 != total {
        return Err(Error::Inconsistent(format!(
            "stars cover {} of {total} vertices",
            covered.len()
        )));
    }
    Ok(out)
}

/// The path `1/0 → 0/1 → 1/a⁻¹ → a/0` between the poles `1/0` and `a/0`.
pub fn path_witness_distance3(level: Level, a: i64) -> Result<[FareyFraction; 4]> {
    let n = level.get();
    let ra = level.reduce(a);
    if ra == 1 % n || ra == n - 1 {
        return Err(Error::PreconditionViolated(format!("{a} ≡ ±1 mod {n}")));
    }
    let inv = mod_inverse(a, n)
        .ok_or_else(|| Error::PreconditionViolated(format!("{a} is not a unit mod {n}")))?;
    let path = [
        FareyFraction::from_residues(1, 0, level),
        FareyFraction::from_residues(0, 1, level),
        FareyFraction::from_residues(1, inv, level),
        FareyFraction::from_residues(ra, 0, level),
    ];
    for w in path.windows(2) {
        if !w[0].adjacent(&w[1])? {
            return Err(Error::Inconsistent(format!(
                "{} and {} are not adjacent",
                w[0], w[1]
            )));
        }
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(n: u64) -> Level {
        Level::new(n).unwrap()
    }

    fn f(a: i64, c: i64, n: u64) -> FareyFraction {
        FareyFraction::new(a, c, lv(n)).unwrap()
    }

    #[test]
    fn distances() {
        assert_eq!(bfs_distance(lv(7), &f(1, 0, 7), &f(2, 0, 7)).unwrap(), 3);
        assert_eq!(bfs_distance(lv(8), &f(1, 0, 8), &f(1, 2, 8)).unwrap(), 2);
        assert_eq!(bfs_distance(lv(5), &f(2, 3, 5), &f(2, 3, 5)).unwrap(), 0);
        assert!(matches!(
            bfs_distance(lv(201), &f(1, 0, 201), &f(0, 1, 201)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn diameters() {
        assert_eq!(diameter(lv(2)).unwrap(), 1);
        assert_eq!(diameter(lv(3)).unwrap(), 1);
        assert_eq!(diameter(lv(4)).unwrap(), 2);
        assert_eq!(diameter(lv(11)).unwrap(), 3);
    }

    #[test]
    fn pole_sets() {
        let show = |n| {
            poles(lv(n))
                .poles
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(show(7), ["1/0", "2/0", "3/0"]);
        assert_eq!(show(8), ["1/0", "3/0"]);
        assert_eq!(show(2), ["1/0"]);
        for n in 2..100 {
            assert_eq!(poles(lv(n)).poles.len() as u64, pole_count(lv(n)));
        }
    }

    #[test]
    fn distance_two_examples() {
        assert!(distance2_criterion(lv(8), 1, 2).unwrap());
        assert!(distance2_criterion(lv(8), 0, 3).unwrap());
        // 0/3 is not a vertex mod 9; the negative cases there are the poles
        assert!(distance2_criterion(lv(9), 0, 3).is_err());
        assert!(!distance2_criterion(lv(9), 2, 0).unwrap());
        assert_eq!(bfs_distance(lv(9), &f(1, 0, 9), &f(2, 0, 9)).unwrap(), 3);
        assert!(!distance2_criterion(lv(25), 2, 5).unwrap());
        assert_eq!(bfs_distance(lv(25), &f(1, 0, 25), &f(2, 5, 25)).unwrap(), 3);
        assert!(distance2_criterion(lv(9), 1, 3).unwrap());
        assert_eq!(bfs_distance(lv(9), &f(1, 0, 9), &f(1, 3, 9)).unwrap(), 2);
        assert!(matches!(
            distance2_criterion(lv(8), 3, 7),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            distance2_criterion(lv(8), 1, 0),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            distance2_criterion(lv(8), 2, 4),
            Err(Error::InvalidVertex { .. })
        ));
    }

    #[test]
    fn prime_classes() {
        let p = lv(7);
        assert_eq!(
            classify_distance_prime(p, &f(1, 0, 7), &f(2, 0, 7)).unwrap(),
            DistanceClass::Three
        );
        assert_eq!(
            classify_distance_prime(p, &f(1, 0, 7), &f(3, 1, 7)).unwrap(),
            DistanceClass::Adjacent
        );
        assert_eq!(
            classify_distance_prime(p, &f(0, 1, 7), &f(3, 5, 7)).unwrap(),
            DistanceClass::Two
        );
        assert_eq!(bfs_distance(p, &f(0, 1, 7), &f(3, 5, 7)).unwrap(), 2);
        assert_eq!(
            classify_distance_prime(lv(9), &f(1, 0, 9), &f(0, 1, 9)),
            Err(Error::NotPrime(9))
        );
        assert_eq!(
            classify_distance_prime(lv(3), &f(1, 0, 3), &f(2, 1, 3)).unwrap(),
            DistanceClass::Adjacent
        );
    }

    #[test]
    fn decomposition() {
        let stars = star_decomposition(lv(5)).unwrap();
        assert_eq!(stars.len(), 2);
        let mut second: Vec<_> = stars[1].1.clone();
        second.sort();
        let mut printed: Vec<_> = [(0, 3), (2, 3), (4, 3), (1, 3), (3, 3)]
            .map(|(a, c)| f(a, c, 5))
            .to_vec();
        printed.sort();
        assert_eq!(stars[1].0, f(2, 0, 5));
        assert_eq!(second, printed);
        assert_eq!(stars.iter().map(|s| 1 + s.1.len()).sum::<usize>(), 12);

        let stars = star_decomposition(lv(7)).unwrap();
        assert_eq!(stars.len(), 3);
        assert!(stars.iter().all(|s| s.1.len() + 1 == 8));
        assert_eq!(star_decomposition(lv(9)), Err(Error::NotPrime(9)));
        assert_eq!(star_decomposition(lv(2)), Err(Error::NotPrime(2)));
    }

    #[test]
    fn witnesses() {
        let show = |n, a| {
            path_witness_distance3(lv(n), a)
                .unwrap()
                .map(|v| v.to_string())
                .join(" ")
        };
        assert_eq!(show(7, 2), "1/0 0/1 1/4 2/0");
        assert_eq!(show(8, 3), "1/0 0/1 1/3 3/0");
        assert_eq!(show(5, 2), "1/0 0/1 1/3 2/0");
        assert!(path_witness_distance3(lv(8), 2).is_err());
        assert!(path_witness_distance3(lv(8), 7).is_err());
    }
}
