//! The finite group PSL(2, Z/n) acting on M3(n).

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::arith::{mu, Level};
use crate::error::{Error, Result};
use crate::projective::{same_level, FareyFraction};

/// Default bound on the number of group elements enumerated explicitly.
pub const DEFAULT_GROUP_CAP: u64 = 10_000_000;

/// A matrix `(a b; c d)` over Z/n with determinant 1, up to sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Psl2Element {
    entries: [u64; 4],
    level: Level,
}

impl Psl2Element {
    pub fn new(a: i64, b: i64, c: i64, d: i64, level: Level) -> Result<Self> {
        let e = [a, b, c, d].map(|x| level.reduce(x));
        if level.sub(level.mul(e[0], e[3]), level.mul(e[1], e[2])) != 1 % level.get() {
            return Err(Error::NotUnimodular {
                a,
                b,
                c,
                d,
                n: level.get(),
            });
        }
        Ok(Self::from_residues(e, level))
    }

    pub(crate) fn from_residues(entries: [u64; 4], level: Level) -> Self {
        let neg = entries.map(|x| level.neg(x));
        let entries = if neg < entries { neg } else { entries };
        Psl2Element { entries, level }
    }

    pub fn identity(level: Level) -> Self {
        Self::from_residues([1, 0, 0, 1], level)
    }

    /// The translation `U = (1 1; 0 1)`, generator of the stabilizer of `1/0`.
    pub fn translation(level: Level) -> Self {
        Self::from_residues([1, 1, 0, 1], level)
    }

    /// The involution `X = (0 -1; 1 0)`, which reverses the dart `1/0 → 0/1`.
    pub fn inversion(level: Level) -> Self {
        Self::from_residues([0, level.neg(1), 1, 0], level)
    }

    /// Entries `[a, b, c, d]` of the canonical representative.
    pub fn entries(&self) -> [u64; 4] {
        self.entries
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn multiply(&self, other: &Psl2Element) -> Result<Psl2Element> {
        same_level(self.level, other.level)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Psl2Element) -> Psl2Element {
        let n = self.level;
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = other.entries;
        Self::from_residues(
            [
                n.add(n.mul(a, e), n.mul(b, g)),
                n.add(n.mul(a, f), n.mul(b, h)),
                n.add(n.mul(c, e), n.mul(d, g)),
                n.add(n.mul(c, f), n.mul(d, h)),
            ],
            n,
        )
    }

    pub fn inverse(&self) -> Psl2Element {
        let n = self.level;
        let [a, b, c, d] = self.entries;
        Self::from_residues([d, n.neg(b), n.neg(c), a], n)
    }

    pub fn pow(&self, mut k: u64) -> Psl2Element {
        let mut base = *self;
        let mut acc = Self::identity(self.level);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.level)
    }

    /// Least `k >= 1` with `self^k = 1`.
    pub fn order(&self) -> u64 {
        let mut k = 1;
        let mut acc = *self;
        while !acc.is_identity() {
            acc = acc.mul_unchecked(self);
            k += 1;
        }
        k
    }

    /// Möbius action `x/y ↦ (ax + by)/(cx + dy)`.
    pub fn act_on_vertex(&self, v: &FareyFraction) -> Result<FareyFraction> {
        same_level(self.level, v.level())?;
        Ok(self.act_unchecked(v))
    }

    pub(crate) fn act_unchecked(&self, v: &FareyFraction) -> FareyFraction {
        let n = self.level;
        let [a, b, c, d] = self.entries;
        let (x, y) = (v.numerator(), v.denominator());
        FareyFraction::from_residues(
            n.add(n.mul(a, x), n.mul(b, y)),
            n.add(n.mul(c, x), n.mul(d, y)),
            n,
        )
    }

    /// Image of `1/0`, i.e. the first column.
    pub fn first_column(&self) -> FareyFraction {
        FareyFraction::from_residues(self.entries[0], self.entries[2], self.level)
    }

    /// Image of `0/1`, i.e. the second column.
    pub fn second_column(&self) -> FareyFraction {
        FareyFraction::from_residues(self.entries[1], self.entries[3], self.level)
    }
}

impl fmt::Display for Psl2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "±({a} {b}; {c} {d})")
    }
}

fn check_cap(level: Level, cap: u64) -> Result<()> {
    let size = mu(level);
    if size > cap {
        return Err(Error::TooLarge {
            what: "PSL(2, Z/n)",
            size,
            cap,
        });
    }
    Ok(())
}

/// Every element of PSL(2, Z/n), found by scanning all of `(Z/n)⁴` for
/// determinant 1. Independent of the index formula it is checked against.
pub fn enumerate_group(level: Level) -> Result<Vec<Psl2Element>> {
    enumerate_group_with_cap(level, DEFAULT_GROUP_CAP)
}

pub fn enumerate_group_with_cap(level: Level, cap: u64) -> Result<Vec<Psl2Element>> {
    check_cap(level, cap)?;
    let n = level.get();
    let one = 1 % n;
    let mut seen = HashSet::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if level.sub(level.mul(a, d), level.mul(b, c)) == one {
                        seen.insert(Psl2Element::from_residues([a, b, c, d], level));
                    }
                }
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Elements fixing `1/0`, by exhaustive search.
pub fn stabilizer_of_infinity(level: Level) -> Result<Vec<Psl2Element>> {
    let inf = FareyFraction::from_residues(1, 0, level);
    Ok(enumerate_group(level)?
        .into_iter()
        .filter(|t| t.act_unchecked(&inf) == inf)
        .collect())
}

/// The translation part of a stabilizer element: `±(1 b; 0 1) ↦ b`.
///
/// Restricted to the stabilizer of `1/0` this is an isomorphism onto Z/n.
/// Returns `None` for elements not of that form.
pub fn translation_part(t: &Psl2Element) -> Option<u64> {
    let n = t.level;
    let [a, b, c, d] = t.entries;
    match (a, c, d) {
        (1, 0, 1) => Some(b),
        _ if a == n.get() - 1 && c == 0 && d == a => Some(n.neg(b)),
        _ => None,
    }
}

/// Generators `(X, Y, Z)` with `XYZ = 1`: `X = (0 -1; 1 0)`, `Z = U = (1 1; 0 1)`
/// and `Y = X⁻¹Z⁻¹`.
pub fn triangle_generators(level: Level) -> (Psl2Element, Psl2Element, Psl2Element) {
    let x = Psl2Element::inversion(level);
    let z = Psl2Element::translation(level);
    let y = x.inverse().mul_unchecked(&z.inverse());
    (x, y, z)
}

/// Checks `X² = Y³ = Zⁿ = XYZ = 1` and that `X` and `Z` generate a group of
/// order `μ(n)`.
pub fn verify_triangle_relations(level: Level) -> bool {
    let (x, y, z) = triangle_generators(level);
    let relations = x.pow(2).is_identity()
        && y.pow(3).is_identity()
        && z.pow(level.get()).is_identity()
        && x.mul_unchecked(&y).mul_unchecked(&z).is_identity();
    relations && generated_order(&[x, z], level, mu(level)) == Some(mu(level))
}

/// Size of the subgroup generated by `gens`, or `None` once it exceeds `limit`.
pub fn generated_order(gens: &[Psl2Element], level: Level, limit: u64) -> Option<u64> {
    let start = Psl2Element::identity(level);
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = s.mul_unchecked(&g);
            if seen.insert(h) {
                if seen.len() as u64 > limit {
                    return None;
                }
                queue.push_back(h);
            }
        }
    }
    Some(seen.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::vertex_count;
    use crate::projective::enumerate_vertices;

    fn lv(n: u64) -> Level {
        Level::new(n).unwrap()
    }

    #[test]
    fn products() {
        let n = lv(3);
        let u = Psl2Element::translation(n);
        assert_eq!(
            u.multiply(&u).unwrap(),
            Psl2Element::new(1, 2, 0, 1, n).unwrap()
        );
        let t = Psl2Element::new(2, 1, 1, 1, lv(7)).unwrap();
        let id = Psl2Element::identity(lv(7));
        assert_eq!(id.multiply(&t).unwrap(), t);
        assert_eq!(t.multiply(&t.inverse()).unwrap(), id);
        assert!(t.multiply(&u).is_err());
    }

    #[test]
    fn sign_identification() {
        let n = lv(7);
        assert_eq!(
            Psl2Element::new(-1, 0, 0, -1, n).unwrap(),
            Psl2Element::identity(n)
        );
        assert!(matches!(
            Psl2Element::new(1, 1, 1, 1, n),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn vertex_action() {
        let n = lv(11);
        let t = Psl2Element::new(3, 4, 5, 7, n).unwrap();
        let inf = FareyFraction::new(1, 0, n).unwrap();
        assert_eq!(
            t.act_on_vertex(&inf).unwrap(),
            FareyFraction::new(3, 5, n).unwrap()
        );
        let u = Psl2Element::translation(n);
        for k in 0..11 {
            let v = FareyFraction::new(k, 1, n).unwrap();
            assert_eq!(Psl2Element::identity(n).act_on_vertex(&v).unwrap(), v);
            assert_eq!(
                u.act_on_vertex(&v).unwrap(),
                FareyFraction::new(k + 1, 1, n).unwrap()
            );
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(enumerate_group(lv(2)).unwrap().len(), 6);
        assert_eq!(enumerate_group(lv(3)).unwrap().len(), 12);
        assert_eq!(enumerate_group(lv(8)).unwrap().len(), 192);
        for n in 2..=14 {
            assert_eq!(enumerate_group(lv(n)).unwrap().len() as u64, mu(lv(n)));
        }
        assert!(matches!(
            enumerate_group_with_cap(lv(9), 100),
            Err(Error::TooLarge {
                size: 324,
                cap: 100,
                ..
            })
        ));
    }

    #[test]
    fn stabilizers() {
        let stab = stabilizer_of_infinity(lv(7)).unwrap();
        assert_eq!(stab.len(), 7);
        assert!(stab.contains(&Psl2Element::identity(lv(7))));
        for n in 2..=12 {
            let level = lv(n);
            let stab = stabilizer_of_infinity(level).unwrap();
            assert_eq!(stab.len() as u64, n);
            // orbit-stabilizer
            assert_eq!(vertex_count(level) * n, mu(level));
            let u = Psl2Element::translation(level);
            let mut parts: Vec<u64> = stab
                .iter()
                .map(|t| {
                    let b = translation_part(t).expect("upper unitriangular");
                    assert_eq!(u.pow(b), *t);
                    b
                })
                .collect();
            parts.sort();
            assert_eq!(parts, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn translation_part_is_homomorphism() {
        let level = lv(9);
        let u = Psl2Element::translation(level);
        for i in 0..9 {
            for j in 0..9 {
                let p = translation_part(&u.pow(i).mul_unchecked(&u.pow(j))).unwrap();
                assert_eq!(p, (i + j) % 9);
            }
        }
        assert_eq!(translation_part(&Psl2Element::inversion(level)), None);
    }

    #[test]
    fn vertex_action_is_transitive() {
        for n in 2..=10 {
            let level = lv(n);
            let inf = FareyFraction::new(1, 0, level).unwrap();
            let mut orbit: Vec<_> = enumerate_group(level)
                .unwrap()
                .iter()
                .map(|t| t.act_unchecked(&inf))
                .collect();
            orbit.sort();
            orbit.dedup();
            assert_eq!(orbit, enumerate_vertices(level));
        }
    }

    #[test]
    fn triangle_relations() {
        for n in 2..=12 {
            assert!(verify_triangle_relations(lv(n)), "n = {n}");
            let (x, y, z) = triangle_generators(lv(n));
            assert_eq!(x.order(), 2);
            assert_eq!(y.order(), 3);
            assert_eq!(z.order(), n);
        }
        let (x, _, z) = triangle_generators(lv(5));
        assert_eq!(generated_order(&[x], lv(5), 100), Some(2));
        assert_eq!(generated_order(&[x, z], lv(5), 100), Some(60));
        assert_eq!(generated_order(&[x, z], lv(5), 10), None);
    }
}
