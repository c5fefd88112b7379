//! Self-check driver: rebuilds M3(n) and compares it against every formula
//! and criterion the library implements.

use std::fmt;

use crate::arith::{is_prime, statistics, Level};
use crate::error::{Error, Result};
use crate::export::map_statistics;
use crate::graph::UNREACHABLE;
use crate::map::{build_map, CombinatorialMap};
use crate::metrics::{
    classify_distance_prime, distance2_criterion, pole_count, poles, star_decomposition,
    DistanceClass, DEFAULT_BFS_LEVEL_CAP,
};
use crate::petrie::{petrie_length, petrie_path_from};
use crate::projective::FareyFraction;
use crate::psl2::{triangle_generators, Psl2Element};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelReport {
    pub level: u64,
    pub checks: Vec<Check>,
    /// Set when the level was not checked, with the reason.
    pub skipped: Option<String>,
}

impl LevelReport {
    pub fn passed(&self) -> bool {
        self.skipped.is_none() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for LevelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.level)?;
        if let Some(reason) = &self.skipped {
            return writeln!(f, "  skipped: {reason}");
        }
        for c in &self.checks {
            write!(
                f,
                "  {}: {}",
                c.name,
                if c.passed { "PASS" } else { "FAIL" }
            )?;
            match &c.detail {
                Some(d) if !c.passed => writeln!(f, " ({d})")?,
                _ => writeln!(f)?,
            }
        }
        Ok(())
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, outcome: Result<(), String>) {
        let (passed, detail) = match outcome {
            Ok(()) => (true, None),
            Err(d) => (false, Some(d)),
        };
        self.0.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs every check for one level. Levels above the distance cap, or whose
/// map exceeds the dart cap, are reported as skipped.
pub fn verify_level(n: u64) -> Result<LevelReport> {
    let level = Level::new(n)?;
    let skip = |reason: String| LevelReport {
        level: n,
        checks: Vec::new(),
        skipped: Some(reason),
    };
    if n > DEFAULT_BFS_LEVEL_CAP {
        return Ok(skip(format!(
            "level above the cap {DEFAULT_BFS_LEVEL_CAP} for exhaustive distance checks"
        )));
    }
    let map = match build_map(level) {
        Ok(m) => m,
        Err(e @ Error::TooLarge { .. }) => return Ok(skip(e.to_string())),
        Err(e) => return Err(e),
    };
    let graph = map.underlying_graph();
    let mut checks = Checks(Vec::new());

    let built = map_statistics(&map)?;
    let formula = statistics(level)?;
    checks.push(
        "counts",
        ensure(built == formula, || {
            format!("map {built:?}, formulas {formula:?}")
        }),
    );

    checks.push(
        "valency",
        ensure(
            map.valency() as u64 == n
                && (0..graph.vertex_count()).all(|v| graph.degree(v) == n as usize),
            || "vertex of wrong degree".into(),
        ),
    );

    checks.push("regularity sample", regularity_sample(&map));

    let sigma = petrie_length(level)?;
    let walks = sample_darts(&map)
        .into_iter()
        .all(|x| petrie_path_from(&map, x).length as u64 == sigma);
    checks.push(
        format!("Petrie length {sigma}"),
        ensure(walks, || "a walk closed at a different length".into()),
    );

    let ps = poles(level);
    let expected_poles = pole_count(level);
    let pole_indices: Vec<usize> = ps
        .poles
        .iter()
        .map(|p| graph.index_of(p))
        .collect::<Result<_>>()?;
    let mut pole_result = ensure(ps.poles.len() as u64 == expected_poles, || {
        format!("{} poles, expected {expected_poles}", ps.poles.len())
    });
    for (i, &p) in pole_indices.iter().enumerate() {
        let dist = graph.bfs(p);
        for &q in &pole_indices[i + 1..] {
            if pole_result.is_ok() && dist[q] != 3 {
                pole_result = Err(format!(
                    "poles {} and {} at distance {}",
                    graph.vertices()[p],
                    graph.vertices()[q],
                    dist[q]
                ));
            }
        }
    }
    checks.push(format!("poles {expected_poles}"), pole_result);

    // Any two vertices are within distance 3 for n >= 5, and two distinct
    // poles are at distance exactly 3. Without a second pole (n = 4, 6)
    // nothing reaches 3.
    let expected_diameter = match n {
        2 | 3 => 1,
        _ if expected_poles < 2 => 2,
        _ => 3,
    };
    let diameter = graph.diameter();
    checks.push(
        format!("diameter {expected_diameter}"),
        ensure(diameter == Some(expected_diameter), || {
            format!("found {diameter:?}")
        }),
    );

    if is_prime(n) {
        checks.push("prime trichotomy", prime_trichotomy(&map, level)?);
    }
    if is_prime(n) && n > 2 {
        let outcome = star_decomposition(level)
            .map(|_| ())
            .map_err(|e| e.to_string());
        checks.push("star decomposition", outcome);
    }

    let inf = graph.index_of(&FareyFraction::new(1, 0, level)?)?;
    let from_inf = graph.bfs(inf);
    let mut d2 = Ok(());
    let mut tested = 0;
    for (j, v) in graph.vertices().iter().enumerate() {
        let (b, d) = (v.numerator(), v.denominator());
        if j == inf || d == 1 % n || d == n - 1 {
            continue;
        }
        tested += 1;
        let predicted = distance2_criterion(level, b as i64, d as i64)?;
        if d2.is_ok() && predicted != (from_inf[j] == 2) {
            d2 = Err(format!(
                "{v}: criterion {predicted}, distance {}",
                from_inf[j]
            ));
        }
    }
    checks.push(format!("distance2 criterion ({tested} vertices)"), d2);

    Ok(LevelReport {
        level: n,
        checks: checks.0,
        skipped: None,
    })
}

/// Verifies every level in `lo..=hi`, spreading the levels over the
/// available cores. Reports come back in level order.
pub fn verify_range(lo: u64, hi: u64) -> Result<Vec<LevelReport>> {
    let levels: Vec<u64> = (lo..=hi).collect();
    let workers = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(levels.len().max(1));
    let mut results: Vec<Option<Result<LevelReport>>> = (0..levels.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let levels = &levels;
                scope.spawn(move || {
                    levels
                        .iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(i, &n)| (i, verify_level(n)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("verify worker panicked") {
                results[i] = Some(r);
            }
        }
    });
    results
        .into_iter()
        .map(|r| r.expect("every level visited"))
        .collect()
}

fn sample_elements(level: Level) -> Vec<Psl2Element> {
    let (x, y, z) = triangle_generators(level);
    let mut out = vec![x, y, z];
    let mut g = Psl2Element::identity(level);
    for i in 0..8u64 {
        g = g.mul_unchecked(&if i % 3 == 0 { x } else { z.pow(i) });
        out.push(g);
    }
    out
}

fn sample_darts(map: &CombinatorialMap) -> Vec<usize> {
    let step = (map.dart_count() / 16).max(1);
    (0..map.dart_count()).step_by(step).collect()
}

/// Sampled group elements act as map automorphisms, and map the base dart
/// to the dart carrying their own matrix.
fn regularity_sample(map: &CombinatorialMap) -> Result<(), String> {
    let base = map.base_dart();
    for t in sample_elements(map.level()) {
        let image = |x| map.act_on_dart(&t, x).map_err(|e| e.to_string());
        for x in 0..map.dart_count() {
            let tx = image(x)?;
            ensure(image(map.sigma()[x])? == map.sigma()[tx], || {
                format!("{t} does not commute with sigma")
            })?;
            ensure(image(map.alpha()[x])? == map.alpha()[tx], || {
                format!("{t} does not commute with alpha")
            })?;
        }
        let own = map.dart_of_element(&t).map_err(|e| e.to_string())?;
        ensure(image(base)? == own, || {
            format!("{t} moves the base dart elsewhere")
        })?;
    }
    Ok(())
}

fn prime_trichotomy(map: &CombinatorialMap, p: Level) -> Result<Result<(), String>> {
    let graph = map.underlying_graph();
    let vs = graph.vertices();
    for (i, u) in vs.iter().enumerate() {
        let dist = graph.bfs(i);
        for (j, v) in vs.iter().enumerate() {
            let class = classify_distance_prime(p, u, v)?;
            if dist[j] == UNREACHABLE || DistanceClass::from_distance(dist[j]) != Some(class) {
                return Ok(Err(format!(
                    "{u}, {v}: predicted {class}, distance {}",
                    dist[j]
                )));
            }
        }
    }
    Ok(Ok(()))
}
