//! The simple graph underlying M3(n), with breadth-first distances.

use std::collections::VecDeque;

use crate::arith::Level;
use crate::error::{Error, Result};
use crate::projective::{enumerate_vertices, FareyFraction};

/// Marker for unreachable vertices in a distance vector.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct Graph {
    level: Level,
    vertices: Vec<FareyFraction>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from strictly increasing vertices and neighbor lists
    /// (sorted and deduplicated here).
    pub(crate) fn from_parts(
        level: Level,
        vertices: Vec<FareyFraction>,
        mut adjacency: Vec<Vec<usize>>,
    ) -> Self {
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Graph {
            level,
            vertices,
            adjacency,
        }
    }

    /// The graph obtained by testing `ad - bc ≡ ±1` on every vertex pair.
    ///
    /// Quadratic in the vertex count; used as an independent check on the
    /// graph read off a built map.
    pub fn by_adjacency_test(level: Level) -> Self {
        let vertices = enumerate_vertices(level);
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (i, u) in vertices.iter().enumerate() {
            for (j, v) in vertices.iter().enumerate().skip(i + 1) {
                if u.adjacent(v).expect("same level") {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        Self::from_parts(level, vertices, adjacency)
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn vertices(&self) -> &[FareyFraction] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn index_of(&self, v: &FareyFraction) -> Result<usize> {
        if v.level() != self.level {
            return Err(Error::LevelMismatch {
                left: self.level.get(),
                right: v.level().get(),
            });
        }
        self.vertices
            .binary_search(v)
            .map_err(|_| Error::Inconsistent(format!("{v} missing from graph")))
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    /// Unordered edges `(i, j)`, `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    /// Distances from `source` to every vertex.
    pub fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.vertices.len()];
        let mut queue = VecDeque::from([source]);
        dist[source] = 0;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: &FareyFraction, v: &FareyFraction) -> Result<u32> {
        let (i, j) = (self.index_of(u)?, self.index_of(v)?);
        Ok(self.bfs(i)[j])
    }

    pub fn eccentricity(&self, source: usize) -> u32 {
        self.bfs(source).into_iter().max().unwrap_or(0)
    }

    /// Maximum distance over all vertex pairs; `None` if disconnected.
    ///
    /// Grows the closed ball of radius `r` around every vertex at once as a
    /// bitset, `B(v, r+1) = ∪ B(w, r)` over `w` in the closed neighborhood of
    /// `v`, until every ball is the full vertex set.
    pub fn diameter(&self) -> Option<u32> {
        let count = self.vertices.len();
        let words = count.div_ceil(64);
        let full_last = match count % 64 {
            0 => u64::MAX,
            r => (1u64 << r) - 1,
        };
        let is_full = |ball: &[u64]| {
            ball[..words - 1].iter().all(|&w| w == u64::MAX) && ball[words - 1] == full_last
        };

        let mut balls = vec![0u64; count * words];
        for v in 0..count {
            balls[v * words + v / 64] |= 1 << (v % 64);
        }
        let mut radius = 0;
        let mut next = balls.clone();
        loop {
            if (0..count).all(|v| is_full(&balls[v * words..(v + 1) * words])) {
                return Some(radius);
            }
            for v in 0..count {
                let target = &mut next[v * words..(v + 1) * words];
                target.copy_from_slice(&balls[v * words..(v + 1) * words]);
                for &w in &self.adjacency[v] {
                    for (t, s) in target.iter_mut().zip(&balls[w * words..(w + 1) * words]) {
                        *t |= *s;
                    }
                }
            }
            if next == balls {
                return None;
            }
            std::mem::swap(&mut balls, &mut next);
            radius += 1;
        }
    }

    /// All-pairs maximum distance by one BFS per vertex.
    pub fn diameter_by_bfs(&self) -> Option<u32> {
        let mut best = 0;
        for v in 0..self.vertices.len() {
            let ecc = self.eccentricity(v);
            if ecc == UNREACHABLE {
                return None;
            }
            best = best.max(ecc);
        }
        Some(best)
    }
}
