//! Graph export: DOT, GraphML, JSON and CSV.
//!
//! Vertices are labelled by their canonical `a/c` form and listed in vertex
//! order; edges are unordered pairs sorted lexicographically by vertex order.
//! Output depends only on the level, so repeated exports are byte-identical.
//!
//! The JSON document has the shape
//!
//! ```text
//! {
//!   "level": 4,
//!   "statistics": {"darts": 24, "edges": 12, "faces": 8, "vertices": 6, "valency": 4, "genus": 0},
//!   "vertices": ["1/0", "0/1", ...],
//!   "edges": [["1/0", "0/1"], ...],
//!   "rotations": {"1/0": ["0/1", "1/1", "2/1", "3/1"], ...}
//! }
//! ```
//!
//! where each rotation list gives the neighbours in rotation order.

use std::fmt::Write as _;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::arith::{statistics, Level, MapStatistics};
use crate::error::{Error, Result};
use crate::map::{build_map, CombinatorialMap};
use crate::projective::{parse_fraction, FareyFraction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    GraphMl,
    Json,
    Csv,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(Self::Dot),
            "graphml" => Ok(Self::GraphMl),
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            _ => Err(Error::UnsupportedFormat(s.to_string())),
        }
    }
}

/// Serialized form of the JSON export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub level: u64,
    pub statistics: MapStatistics,
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub rotations: IndexMap<String, Vec<String>>,
}

/// A JSON export read back and validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImportedGraph {
    pub level: Level,
    pub statistics: MapStatistics,
    pub vertices: Vec<FareyFraction>,
    pub edges: Vec<(FareyFraction, FareyFraction)>,
    pub rotations: IndexMap<FareyFraction, Vec<FareyFraction>>,
}

/// Counts read off the built map rather than the closed-form formulas.
pub fn map_statistics(map: &CombinatorialMap) -> Result<MapStatistics> {
    Ok(MapStatistics {
        darts: map.dart_count() as u64,
        edges: CombinatorialMap::orbits(map.alpha()).len() as u64,
        faces: map.faces().len() as u64,
        vertices: map.vertices().len() as u64,
        valency: map.valency() as u64,
        genus: map.genus_from_orbits()?,
    })
}

pub fn graph_document(map: &CombinatorialMap) -> Result<GraphDocument> {
    let graph = map.underlying_graph();
    let label = |i: usize| graph.vertices()[i].to_string();
    let rotations = map
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            (
                v.to_string(),
                map.rotation(i).map(|w| w.to_string()).collect(),
            )
        })
        .collect();
    Ok(GraphDocument {
        level: map.level().get(),
        statistics: map_statistics(map)?,
        vertices: graph.vertices().iter().map(|v| v.to_string()).collect(),
        edges: graph
            .edges()
            .into_iter()
            .map(|(i, j)| [label(i), label(j)])
            .collect(),
        rotations,
    })
}

/// Builds M3(n) and exports it.
pub fn export_graph(level: Level, format: ExportFormat) -> Result<String> {
    write_graph(&build_map(level)?, format)
}

pub fn write_graph(map: &CombinatorialMap, format: ExportFormat) -> Result<String> {
    let graph = map.underlying_graph();
    let labels: Vec<String> = graph.vertices().iter().map(|v| v.to_string()).collect();
    let edges = graph.edges();
    let n = map.level();
    let mut out = String::new();
    match format {
        ExportFormat::Dot => {
            writeln!(out, "graph \"M3({n})\" {{").unwrap();
            for l in &labels {
                writeln!(out, "  \"{l}\";").unwrap();
            }
            for (i, j) in edges {
                writeln!(out, "  \"{}\" -- \"{}\";", labels[i], labels[j]).unwrap();
            }
            out.push_str("}\n");
        }
        ExportFormat::GraphMl => {
            out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
            out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
            out.push_str(
                "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n",
            );
            writeln!(out, "  <graph id=\"M3({n})\" edgedefault=\"undirected\">").unwrap();
            for (i, l) in labels.iter().enumerate() {
                writeln!(
                    out,
                    "    <node id=\"v{i}\"><data key=\"label\">{l}</data></node>"
                )
                .unwrap();
            }
            for (k, (i, j)) in edges.into_iter().enumerate() {
                writeln!(
                    out,
                    "    <edge id=\"e{k}\" source=\"v{i}\" target=\"v{j}\"/>"
                )
                .unwrap();
            }
            out.push_str("  </graph>\n</graphml>\n");
        }
        ExportFormat::Json => {
            out = serde_json::to_string_pretty(&graph_document(map)?)
                .map_err(|e| Error::Inconsistent(e.to_string()))?;
            out.push('\n');
        }
        ExportFormat::Csv => {
            out.push_str("u,v\n");
            for (i, j) in edges {
                writeln!(out, "{},{}", labels[i], labels[j]).unwrap();
            }
        }
    }
    Ok(out)
}

/// Parses and validates a JSON export: the counts must be those of the stated
/// level, every label must be a canonical vertex at that level, and edges and
/// rotations may only mention listed vertices.
pub fn parse_graph_json(text: &str) -> Result<ImportedGraph> {
    let doc: GraphDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
    let level = Level::new(doc.level)?;
    let expected = statistics(level)?;
    if doc.statistics != expected {
        return Err(Error::Parse(format!(
            "statistics {:?} do not match level {level}",
            doc.statistics
        )));
    }
    if doc.vertices.len() as u64 != expected.vertices || doc.edges.len() as u64 != expected.edges {
        return Err(Error::Parse(format!(
            "{} vertices and {} edges listed for level {level}",
            doc.vertices.len(),
            doc.edges.len()
        )));
    }
    let vertex = |s: &str| -> Result<FareyFraction> {
        let v = parse_fraction(s, level)?;
        if v.to_string() != s {
            return Err(Error::Parse(format!(
                "`{s}` is not in canonical form (expected {v})"
            )));
        }
        Ok(v)
    };
    let vertices = doc
        .vertices
        .iter()
        .map(|s| vertex(s))
        .collect::<Result<Vec<_>>>()?;
    let known: std::collections::HashSet<_> = vertices.iter().copied().collect();
    if known.len() != vertices.len() {
        return Err(Error::Parse("duplicate vertex".into()));
    }
    let listed = |s: &str| -> Result<FareyFraction> {
        let v = vertex(s)?;
        if known.contains(&v) {
            Ok(v)
        } else {
            Err(Error::Parse(format!(
                "`{s}` is not among the listed vertices"
            )))
        }
    };
    let edges = doc
        .edges
        .iter()
        .map(|[u, v]| Ok((listed(u)?, listed(v)?)))
        .collect::<Result<Vec<_>>>()?;
    let rotations = doc
        .rotations
        .iter()
        .map(|(k, vs)| {
            let around = vs.iter().map(|s| listed(s)).collect::<Result<Vec<_>>>()?;
            Ok((listed(k)?, around))
        })
        .collect::<Result<IndexMap<_, _>>>()?;
    Ok(ImportedGraph {
        level,
        statistics: doc.statistics,
        vertices,
        edges,
        rotations,
    })
}
