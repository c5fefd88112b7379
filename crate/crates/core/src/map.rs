//! M3(n) as a combinatorial map.
//!
//! Darts are ordered adjacent vertex pairs. Around a vertex `a/c` with lift
//! `(b, d)` the neighbours come in the order `(ak + b)/(ck + d)`, `k = 0..n`,
//! and the rotation `sigma` steps `k → k + 1`. `alpha` reverses a dart and
//! the face permutation is `phi = sigma ∘ alpha`.
//!
//! Each dart also carries the determinant-one matrix whose columns are its
//! endpoints, which identifies darts with elements of PSL(2, Z/n).

use crate::arith::{mu, Level};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::projective::{enumerate_vertices, FareyFraction};
use crate::psl2::Psl2Element;

/// Default bound on the number of darts of an explicitly built map.
pub const DEFAULT_DART_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dart {
    pub from: FareyFraction,
    pub to: FareyFraction,
    /// Matrix with first column `from`, second column `to`, determinant 1.
    pub rep: Psl2Element,
}

/// Which composite of rotation and reversal turned out to have order three.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceConvention {
    /// `phi(x) = sigma(alpha(x))`
    SigmaAfterAlpha,
    /// `phi(x) = alpha(sigma(x))`
    AlphaAfterSigma,
}

/// The neighbours of `v` in rotation order, `(ak + b)/(ck + d)` for `k = 0..n`
/// with `(b, d)` the lift of `v`.
pub fn star(v: &FareyFraction) -> Vec<FareyFraction> {
    let (b, d) = v.lift_to_unimodular();
    star_from_column(v, b, d)
}

/// `(ak + b)/(ck + d)` for `k = 0..n` and an arbitrary second column `(b, d)`.
pub fn star_from_column(v: &FareyFraction, b: u64, d: u64) -> Vec<FareyFraction> {
    let level = v.level();
    let (a, c) = (v.numerator(), v.denominator());
    (0..level.get())
        .map(|k| {
            FareyFraction::from_residues(
                level.add(level.mul(a, k), b % level.get()),
                level.add(level.mul(c, k), d % level.get()),
                level,
            )
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct CombinatorialMap {
    level: Level,
    vertices: Vec<FareyFraction>,
    /// Vertex index at slot `a·n + c` of each canonical pair, `u32::MAX` elsewhere
    vertex_slots: Vec<u32>,
    darts: Vec<Dart>,
    /// Head vertex index of each dart
    heads: Vec<u32>,
    /// Per vertex, `(head, dart)` for its darts sorted by head
    by_head: Vec<(u32, u32)>,
    valency: usize,
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
    alpha: Vec<usize>,
    phi: Vec<usize>,
    convention: FaceConvention,
}

/// Builds M3(n) with the default dart cap.
pub fn build_map(level: Level) -> Result<CombinatorialMap> {
    build_map_with_cap(level, DEFAULT_DART_CAP)
}

pub fn build_map_with_cap(level: Level, cap: u64) -> Result<CombinatorialMap> {
    let expected = mu(level);
    if expected > cap {
        return Err(Error::TooLarge {
            what: "dart set",
            size: expected,
            cap,
        });
    }
    let vertices = enumerate_vertices(level);
    if vertices.len() as u64 >= u32::MAX as u64 {
        return Err(Error::TooLarge {
            what: "vertex set",
            size: vertices.len() as u64,
            cap: u32::MAX as u64,
        });
    }
    let n = level.get() as usize;
    let mut vertex_slots = vec![u32::MAX; n * n];
    for (i, v) in vertices.iter().enumerate() {
        vertex_slots[slot(v)] = i as u32;
    }
    let valency = level.get() as usize;

    let mut darts = Vec::with_capacity(vertices.len() * valency);
    let mut heads = Vec::with_capacity(vertices.len() * valency);
    for v in &vertices {
        let (b, d) = v.lift_to_unimodular();
        let (a, c) = (v.numerator(), v.denominator());
        for (k, w) in star_from_column(v, b, d).into_iter().enumerate() {
            if !v.adjacent(&w)? {
                return Err(Error::Inconsistent(format!(
                    "star of {v} contains non-neighbour {w}"
                )));
            }
            let k = k as u64;
            let rep = Psl2Element::from_residues(
                [
                    a,
                    level.add(level.mul(a, k), b),
                    c,
                    level.add(level.mul(c, k), d),
                ],
                level,
            );
            heads.push(vertex_slots[slot(&w)]);
            darts.push(Dart {
                from: *v,
                to: w,
                rep,
            });
        }
    }
    if darts.len() as u64 != expected {
        return Err(Error::Inconsistent(format!(
            "{} darts built, index formula gives {expected}",
            darts.len()
        )));
    }

    let count = darts.len();
    let mut by_head: Vec<(u32, u32)> = heads
        .iter()
        .enumerate()
        .map(|(x, &h)| (h, x as u32))
        .collect();
    for (i, segment) in by_head.chunks_mut(valency).enumerate() {
        segment.sort_unstable();
        if let Some(w) = segment.windows(2).find(|w| w[0].0 == w[1].0) {
            let repeated = vertices[w[0].0 as usize];
            return Err(Error::Inconsistent(format!(
                "{repeated} repeats in the star of {}",
                vertices[i]
            )));
        }
    }
    let sigma: Vec<usize> = (0..count)
        .map(|x| x - x % valency + (x % valency + 1) % valency)
        .collect();
    let sigma_inv = invert(&sigma);
    let mut alpha = Vec::with_capacity(count);
    for (x, dart) in darts.iter().enumerate() {
        let reverse =
            find_dart(&by_head, valency, heads[x] as usize, x / valency).ok_or_else(|| {
                Error::Inconsistent(format!("no reverse of {} → {}", dart.from, dart.to))
            })?;
        alpha.push(reverse);
    }

    let mut map = CombinatorialMap {
        level,
        vertices,
        vertex_slots,
        darts,
        heads,
        by_head,
        valency,
        sigma,
        sigma_inv,
        alpha,
        phi: Vec::new(),
        convention: FaceConvention::SigmaAfterAlpha,
    };
    map.check_alpha()?;
    map.phi = map.compose_phi(FaceConvention::SigmaAfterAlpha);
    if !map.phi_is_triangular() {
        map.convention = FaceConvention::AlphaAfterSigma;
        map.phi = map.compose_phi(FaceConvention::AlphaAfterSigma);
        if !map.phi_is_triangular() {
            return Err(Error::Inconsistent(
                "no face permutation of order three".into(),
            ));
        }
    }
    Ok(map)
}

fn slot(v: &FareyFraction) -> usize {
    (v.numerator() * v.level().get() + v.denominator()) as usize
}

/// The dart `from → to` in the per-vertex sorted `(head, dart)` table.
fn find_dart(by_head: &[(u32, u32)], valency: usize, from: usize, to: usize) -> Option<usize> {
    let segment = &by_head[from * valency..(from + 1) * valency];
    segment
        .binary_search_by_key(&(to as u32), |&(h, _)| h)
        .ok()
        .map(|k| segment[k].1 as usize)
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

impl CombinatorialMap {
    fn check_alpha(&self) -> Result<()> {
        for (x, &y) in self.alpha.iter().enumerate() {
            if x == y || self.alpha[y] != x {
                return Err(Error::Inconsistent(format!(
                    "alpha is not a fixed-point-free involution at dart {x}"
                )));
            }
        }
        Ok(())
    }

    fn compose_phi(&self, convention: FaceConvention) -> Vec<usize> {
        (0..self.darts.len())
            .map(|x| match convention {
                FaceConvention::SigmaAfterAlpha => self.sigma[self.alpha[x]],
                FaceConvention::AlphaAfterSigma => self.alpha[self.sigma[x]],
            })
            .collect()
    }

    fn phi_is_triangular(&self) -> bool {
        (0..self.darts.len()).all(|x| {
            let p = &self.phi;
            p[x] != x && p[p[p[x]]] == x
        })
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn vertices(&self) -> &[FareyFraction] {
        &self.vertices
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn dart_count(&self) -> usize {
        self.darts.len()
    }

    pub fn valency(&self) -> usize {
        self.valency
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn sigma_inverse(&self) -> &[usize] {
        &self.sigma_inv
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    pub fn face_convention(&self) -> FaceConvention {
        self.convention
    }

    pub fn vertex_index(&self, v: &FareyFraction) -> Option<usize> {
        if v.level() != self.level {
            return None;
        }
        match self.vertex_slots[slot(v)] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    /// Index of the dart `from → to`, if the two are adjacent.
    pub fn dart_between(&self, from: &FareyFraction, to: &FareyFraction) -> Option<usize> {
        find_dart(
            &self.by_head,
            self.valency,
            self.vertex_index(from)?,
            self.vertex_index(to)?,
        )
    }

    /// The dart `1/0 → 0/1`.
    pub fn base_dart(&self) -> usize {
        let inf = FareyFraction::from_residues(1, 0, self.level);
        let zero = FareyFraction::from_residues(0, 1, self.level);
        self.dart_between(&inf, &zero)
            .expect("1/0 and 0/1 are adjacent")
    }

    /// Neighbours of `v` in rotation order, starting at `k = 0`.
    pub fn rotation(&self, v: usize) -> impl Iterator<Item = &FareyFraction> {
        self.darts[v * self.valency..(v + 1) * self.valency]
            .iter()
            .map(|d| &d.to)
    }

    /// Orbits of a permutation, each listed from its smallest dart.
    pub fn orbits(perm: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; perm.len()];
        let mut out = Vec::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                orbit.push(x);
                x = perm[x];
            }
            out.push(orbit);
        }
        out
    }

    /// Faces as dart triples, the orbits of `phi`.
    pub fn faces(&self) -> Vec<[usize; 3]> {
        Self::orbits(&self.phi)
            .into_iter()
            .map(|o| [o[0], o[1], o[2]])
            .collect()
    }

    /// Genus read off the orbit counts: `V - E + F = 2 - 2g`.
    pub fn genus_from_orbits(&self) -> Result<u64> {
        let v = Self::orbits(&self.sigma).len() as i64;
        let e = Self::orbits(&self.alpha).len() as i64;
        let f = Self::orbits(&self.phi).len() as i64;
        let chi = v - e + f;
        if chi > 2 || (2 - chi) % 2 != 0 {
            return Err(Error::Inconsistent(format!("Euler characteristic {chi}")));
        }
        Ok(((2 - chi) / 2) as u64)
    }

    /// The underlying simple graph, read off the rotation lists.
    pub fn underlying_graph(&self) -> Graph {
        let adjacency = (0..self.vertices.len())
            .map(|v| {
                self.heads[v * self.valency..(v + 1) * self.valency]
                    .iter()
                    .map(|&h| h as usize)
                    .collect()
            })
            .collect();
        Graph::from_parts(self.level, self.vertices.clone(), adjacency)
    }

    /// The dart `t·x`.
    pub fn act_on_dart(&self, t: &Psl2Element, x: usize) -> Result<usize> {
        let dart = &self.darts[x];
        let from = t.act_on_vertex(&dart.from)?;
        let to = t.act_unchecked(&dart.to);
        self.dart_between(&from, &to)
            .ok_or_else(|| Error::Inconsistent(format!("{t} does not preserve adjacency")))
    }

    /// The dart whose matrix is `t`, i.e. the image of the base dart under `t`.
    pub fn dart_of_element(&self, t: &Psl2Element) -> Result<usize> {
        let x = self.dart_between(&t.first_column(), &t.second_column());
        match x {
            Some(x) if self.darts[x].rep == *t => Ok(x),
            _ => Err(Error::Inconsistent(format!("{t} has no matching dart"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{genus, vertex_count};

    fn lv(n: u64) -> Level {
        Level::new(n).unwrap()
    }

    fn f(a: i64, c: i64, n: u64) -> FareyFraction {
        FareyFraction::new(a, c, lv(n)).unwrap()
    }

    #[test]
    fn star_of_infinity() {
        for n in 2..12 {
            let expected: Vec<_> = (0..n as i64).map(|k| f(k, 1, n)).collect();
            assert_eq!(star(&f(1, 0, n)), expected);
        }
    }

    #[test]
    fn star_from_printed_witness() {
        let s = star_from_column(&f(3, 5, 7), 0, 5);
        let printed: Vec<_> = [(0, 5), (3, 3), (6, 1), (2, 6), (5, 4), (1, 2), (4, 0)]
            .map(|(a, c)| f(a, c, 7))
            .to_vec();
        assert_eq!(s, printed);
    }

    #[test]
    fn small_maps() {
        let m = build_map(lv(2)).unwrap();
        assert_eq!(
            (m.vertices().len(), m.dart_count(), m.faces().len()),
            (3, 6, 2)
        );
        assert_eq!(m.genus_from_orbits().unwrap(), 0);

        let m = build_map(lv(3)).unwrap();
        let g = m.underlying_graph();
        // tetrahedron: K4
        assert_eq!(
            (g.vertex_count(), g.edge_count(), m.faces().len()),
            (4, 6, 4)
        );

        let m = build_map(lv(6)).unwrap();
        let g = m.underlying_graph();
        assert_eq!(
            (g.vertex_count(), g.edge_count(), m.faces().len()),
            (12, 36, 24)
        );
        assert_eq!(m.genus_from_orbits().unwrap(), 1);
    }

    #[test]
    fn convention_is_sigma_after_alpha() {
        for n in 2..=12 {
            assert_eq!(
                build_map(lv(n)).unwrap().face_convention(),
                FaceConvention::SigmaAfterAlpha
            );
        }
    }

    #[test]
    fn counts_against_formulas() {
        for n in 2..=20 {
            let level = lv(n);
            let m = build_map(level).unwrap();
            assert_eq!(m.dart_count() as u64, mu(level));
            assert_eq!(
                CombinatorialMap::orbits(m.sigma()).len() as u64,
                vertex_count(level)
            );
            assert_eq!(m.faces().len() as u64, mu(level) / 3);
            assert_eq!(
                CombinatorialMap::orbits(m.alpha()).len() as u64,
                mu(level) / 2
            );
            assert_eq!(m.genus_from_orbits().unwrap(), genus(level).unwrap());
        }
    }

    #[test]
    fn graph_matches_adjacency_test() {
        for n in 2..=15 {
            let m = build_map(lv(n)).unwrap();
            let a = m.underlying_graph();
            let b = Graph::by_adjacency_test(lv(n));
            assert_eq!(a.vertices(), b.vertices());
            assert_eq!(a.edges(), b.edges());
            assert_eq!(a.edge_count() as u64, mu(lv(n)) / 2);
        }
    }

    #[test]
    fn dart_matrices() {
        let m = build_map(lv(9)).unwrap();
        for (x, d) in m.darts().iter().enumerate() {
            assert_eq!(d.rep.first_column(), d.from);
            assert_eq!(d.rep.second_column(), d.to);
            assert_eq!(m.dart_of_element(&d.rep).unwrap(), x);
        }
        assert_eq!(m.darts()[m.base_dart()].rep, Psl2Element::identity(lv(9)));
    }

    #[test]
    fn cap() {
        assert!(matches!(
            build_map_with_cap(lv(7), 100),
            Err(Error::TooLarge { size: 168, .. })
        ));
    }
}
