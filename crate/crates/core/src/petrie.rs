//! Petrie (zig-zag) polygons of M3(n).
//!
//! Note the Fibonacci indexing used throughout: `f0 = 1, f1 = 0`, so `f(k)` is
//! the usual `F(k-1)`. The `k`-th vertex of the Petrie polygon through the
//! dart `1/0 → 0/1` is `f(k-1)/f(k)`, counting from `k = 1`.

use std::collections::HashSet;

use crate::arith::{fibonacci_semiperiod, mu, Level};
use crate::error::{Error, Result};
use crate::map::{build_map_with_cap, CombinatorialMap};
use crate::projective::FareyFraction;

/// Petrie lengths are cross-checked against an explicit traversal up to this many darts.
pub const PETRIE_CHECK_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Turn {
    /// `alpha` then `sigma⁻¹`
    Right,
    /// `alpha` then `sigma`
    Left,
}

impl Turn {
    fn other(self) -> Turn {
        match self {
            Turn::Right => Turn::Left,
            Turn::Left => Turn::Right,
        }
    }
}

/// The turn taken first. Starting from `1/0 → 0/1` it produces
/// `1/0, 0/1, 1/1, 1/2, 2/3, …`.
pub const FIRST_TURN: Turn = Turn::Right;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetriePath {
    /// Tail vertices of the traversed darts, in order.
    pub vertices: Vec<FareyFraction>,
    pub darts: Vec<usize>,
    pub closed: bool,
    /// Number of edges.
    pub length: usize,
}

/// Walks the zig-zag path from `start`, alternating right and left turns,
/// until the walk repeats.
///
/// The walk state is the current dart plus the turn due next. Where the two
/// turns coincide (valency two) the turn carries no information, so the
/// state is the dart alone.
pub fn petrie_path_from(map: &CombinatorialMap, start: usize) -> PetriePath {
    let alpha = map.alpha();
    let sigma = map.sigma();
    let sigma_inv = map.sigma_inverse();
    let turns_coincide = map.valency() <= 2;

    let step = |dart: usize, turn: Turn| match turn {
        Turn::Left => sigma[alpha[dart]],
        Turn::Right => sigma_inv[alpha[dart]],
    };

    let mut darts = vec![start];
    let mut dart = start;
    let mut turn = FIRST_TURN;
    loop {
        dart = step(dart, turn);
        turn = turn.other();
        if dart == start && (turn == FIRST_TURN || turns_coincide) {
            break;
        }
        darts.push(dart);
    }
    let vertices = darts.iter().map(|&x| map.darts()[x].from).collect();
    PetriePath {
        vertices,
        length: darts.len(),
        darts,
        closed: true,
    }
}

/// `f(k-1)/f(k)` mod n for `k >= 1`.
pub fn fibonacci_vertex(k: u64, level: Level) -> Result<FareyFraction> {
    if k == 0 {
        return Err(Error::PreconditionViolated(
            "Fibonacci vertices are indexed from 1".into(),
        ));
    }
    let n = level.get();
    let (mut prev, mut cur) = (1 % n, 0u64); // (f0, f1)
    for _ in 1..k {
        (prev, cur) = (cur, (prev + cur) % n);
    }
    FareyFraction::new(prev as i64, cur as i64, level)
}

/// Length of the Petrie polygon of M3(n), the Fibonacci semiperiod.
///
/// When the map has at most [`PETRIE_CHECK_CAP`] darts the value is also
/// checked against a traversal from `1/0 → 0/1`.
pub fn petrie_length(level: Level) -> Result<u64> {
    let sigma = fibonacci_semiperiod(level)?;
    if mu(level) <= PETRIE_CHECK_CAP {
        let map = build_map_with_cap(level, PETRIE_CHECK_CAP)?;
        let walked = petrie_path_from(&map, map.base_dart()).length as u64;
        if walked != sigma {
            return Err(Error::Inconsistent(format!(
                "Petrie polygon of length {walked} at level {level}, semiperiod {sigma}"
            )));
        }
    }
    Ok(sigma)
}

/// Checks the zig-zag condition along a closed polygon: consecutive edges
/// share a face, three consecutive edges never do.
pub fn is_zigzag(map: &CombinatorialMap, path: &PetriePath) -> bool {
    let faces: Vec<HashSet<(usize, usize)>> = map
        .faces()
        .into_iter()
        .map(|f| f.iter().map(|&x| undirected(map, x)).collect())
        .collect();
    let mut faces_of_edge = std::collections::HashMap::<(usize, usize), Vec<usize>>::new();
    for (i, face) in faces.iter().enumerate() {
        for e in face {
            faces_of_edge.entry(*e).or_default().push(i);
        }
    }
    let edges: Vec<_> = path.darts.iter().map(|&x| undirected(map, x)).collect();
    let len = edges.len();
    (0..len).all(|i| {
        let (e0, e1, e2) = (edges[i], edges[(i + 1) % len], edges[(i + 2) % len]);
        let shared = |f: &usize| faces[*f].contains(&e1);
        let pair = faces_of_edge[&e0].iter().any(shared);
        let triple = faces_of_edge[&e0]
            .iter()
            .any(|f| faces[*f].contains(&e1) && faces[*f].contains(&e2));
        pair && !triple
    })
}

fn undirected(map: &CombinatorialMap, x: usize) -> (usize, usize) {
    let y = map.alpha()[x];
    (x.min(y), x.max(y))
}
