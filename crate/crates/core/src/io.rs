//! Text formats.
//!
//! Edge lists (`.el`), one item per line, `#` starts a comment, blank lines are ignored:
//!
//! ```text
//! graph <n>
//! bound <d>        optional degree bound, defaults to the maximum degree
//! edge <u> <v>     one line per edge, u = v for a loop
//! root <u>
//! ```
//!
//! Schreier graphs (`.sg`):
//!
//! ```text
//! schreier <n> <rank>
//! truncated        optional, marks a finite piece of a larger graph
//! edge <u> <v> <i> the edge u -> v labeled a_i
//! root <u>
//! ```
//!
//! Writers emit exactly these lines in this order, each ending in `\n`, with no comments,
//! so reading and writing again reproduces the bytes.
//!
//! Measures are JSON: `{"v":1,"space":"lambda"|"omega","radius":r,"truncated":b,
//! "entries":[{"key":"<base64>","mass":"p/q"|{"count":c,"n":N}}]}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::CanonicalKey;
use crate::graph::{Multigraph, RootedMultigraph};
use crate::measures::{CylinderMeasure, Masses, Space};
use crate::schreier::SchreierGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("measure JSON: {0}")]
    Json(String),
}

fn parse_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse { line, message: message.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(k, l)| {
        let l = l.split('#').next().unwrap_or("");
        let words: Vec<&str> = l.split_whitespace().collect();
        (!words.is_empty()).then_some((k + 1, words))
    })
}

fn num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T, IoError> {
    s.parse().map_err(|_| parse_err(line, format!("expected a number, found `{s}`")))
}

fn expect_args(line: usize, words: &[&str], count: usize) -> Result<(), IoError> {
    if words.len() != count + 1 {
        return Err(parse_err(line, format!("`{}` takes {count} argument(s)", words[0])));
    }
    Ok(())
}

pub fn parse_edge_list(text: &str) -> Result<RootedMultigraph, IoError> {
    let mut n: Option<usize> = None;
    let mut bound: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut root: Option<(usize, usize)> = None;
    for (line, words) in lines(text) {
        match words[0] {
            "graph" if n.is_none() => {
                expect_args(line, &words, 1)?;
                n = Some(num(line, words[1])?);
            }
            _ if n.is_none() => return Err(parse_err(line, "expected the header `graph <n>`")),
            "bound" if bound.is_none() && edges.is_empty() => {
                expect_args(line, &words, 1)?;
                bound = Some((line, num(line, words[1])?));
            }
            "edge" => {
                expect_args(line, &words, 2)?;
                edges.push((line, num(line, words[1])?, num(line, words[2])?));
            }
            "root" if root.is_none() => {
                expect_args(line, &words, 1)?;
                root = Some((line, num(line, words[1])?));
            }
            other => return Err(parse_err(line, format!("unexpected `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing header `graph <n>`"))?;
    let mut degree = vec![0usize; n];
    for &(line, u, v) in &edges {
        for w in [u, v] {
            if w >= n {
                return Err(parse_err(line, format!("vertex {w} out of range 0..{n}")));
            }
        }
        degree[u] += 1;
        degree[v] += 1;
        if let Some((_, d)) = bound {
            if let Some(w) = [u, v].into_iter().find(|&w| degree[w] > d) {
                return Err(parse_err(line, format!("vertex {w} exceeds the degree bound {d}")));
            }
        }
    }
    let (root_line, root) = root.ok_or_else(|| parse_err(0, "missing `root <u>`"))?;
    let graph = Multigraph::new(n, edges.iter().map(|e| (e.1, e.2)).collect())
        .map_err(|e| parse_err(root_line, e.to_string()))?;
    let bound = bound.map_or(graph.max_degree().max(1), |b| b.1);
    RootedMultigraph::new(graph, root, bound).map_err(|e| parse_err(root_line, e.to_string()))
}

pub fn write_edge_list(g: &RootedMultigraph) -> String {
    let mut out = format!("graph {}\nbound {}\n", g.vertex_count(), g.degree_bound());
    for &(u, v) in g.graph().edges() {
        writeln!(out, "edge {u} {v}").unwrap();
    }
    writeln!(out, "root {}", g.root()).unwrap();
    out
}

pub fn parse_schreier(text: &str) -> Result<SchreierGraph, IoError> {
    let mut header: Option<(usize, usize)> = None;
    let mut truncated = false;
    let mut edges: Vec<(usize, usize, u32)> = Vec::new();
    let mut root: Option<(usize, usize)> = None;
    for (line, words) in lines(text) {
        match words[0] {
            "schreier" if header.is_none() => {
                expect_args(line, &words, 2)?;
                header = Some((num(line, words[1])?, num(line, words[2])?));
            }
            _ if header.is_none() => return Err(parse_err(line, "expected the header `schreier <n> <rank>`")),
            "truncated" if edges.is_empty() && !truncated => {
                expect_args(line, &words, 0)?;
                truncated = true;
            }
            "edge" => {
                expect_args(line, &words, 3)?;
                let (u, v, i): (usize, usize, u32) = (num(line, words[1])?, num(line, words[2])?, num(line, words[3])?);
                let (n, rank) = header.unwrap();
                if u >= n || v >= n {
                    return Err(parse_err(line, format!("vertex out of range 0..{n}")));
                }
                if i == 0 || i as usize > rank {
                    return Err(parse_err(line, format!("label a{i} outside a1..a{rank}")));
                }
                edges.push((u, v, i));
            }
            "root" if root.is_none() => {
                expect_args(line, &words, 1)?;
                root = Some((line, num(line, words[1])?));
            }
            other => return Err(parse_err(line, format!("unexpected `{other}`"))),
        }
    }
    let (n, rank) = header.ok_or_else(|| parse_err(0, "missing header `schreier <n> <rank>`"))?;
    let (root_line, root) = root.ok_or_else(|| parse_err(0, "missing `root <u>`"))?;
    let graph = Multigraph::new(n, edges.iter().map(|e| (e.0, e.1)).collect())
        .map_err(|e| parse_err(root_line, e.to_string()))?;
    SchreierGraph::new(graph, root, rank, edges.iter().map(|e| e.2).collect(), truncated)
        .map_err(|e| parse_err(root_line, e.to_string()))
}

pub fn write_schreier(sg: &SchreierGraph) -> String {
    let mut out = format!("schreier {} {}\n", sg.vertex_count(), sg.rank());
    if sg.is_truncated() {
        out.push_str("truncated\n");
    }
    for (u, v, i) in sg.labeled_edges() {
        writeln!(out, "edge {u} {v} {i}").unwrap();
    }
    writeln!(out, "root {}", sg.root()).unwrap();
    out
}

const PALETTE: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "deeppink", "cyan4"];

/// Directed DOT with one color per label; the root is filled.
pub fn schreier_to_dot(sg: &SchreierGraph) -> String {
    let mut out = String::from("digraph schreier {\n  node [shape=circle];\n");
    writeln!(out, "  {} [style=filled, fillcolor=lightgray];", sg.root()).unwrap();
    for (u, v, i) in sg.labeled_edges() {
        let color = PALETTE[(i as usize - 1) % PALETTE.len()];
        writeln!(out, "  {u} -> {v} [label=\"a{i}\", color={color}, fontcolor={color}];").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Undirected DOT; the root is filled.
pub fn graph_to_dot(g: &RootedMultigraph) -> String {
    let mut out = String::from("graph multigraph {\n  node [shape=circle];\n");
    writeln!(out, "  {} [style=filled, fillcolor=lightgray];", g.root()).unwrap();
    for &(u, v) in g.graph().edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureJson {
    v: u32,
    space: String,
    radius: usize,
    #[serde(default)]
    truncated: bool,
    entries: Vec<EntryJson>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryJson {
    key: String,
    mass: MassJson,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum MassJson {
    Exact(String),
    Count { count: u64, n: u64 },
}

pub fn measure_to_json(m: &CylinderMeasure) -> String {
    let entries = match &m.masses {
        Masses::Exact(masses) => {
            masses.iter().map(|(k, q)| EntryJson { key: k.to_base64(), mass: MassJson::Exact(q.to_string()) }).collect()
        }
        Masses::Empirical { counts, samples } => counts
            .iter()
            .map(|(k, &c)| EntryJson { key: k.to_base64(), mass: MassJson::Count { count: c, n: *samples } })
            .collect(),
    };
    let json = MeasureJson { v: 1, space: m.space.name().into(), radius: m.radius, truncated: m.truncated, entries };
    let mut s = serde_json::to_string(&json).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn measure_from_json(text: &str) -> Result<CylinderMeasure, IoError> {
    let json: MeasureJson = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    if json.v != 1 {
        return Err(IoError::Json(format!("unsupported version {}", json.v)));
    }
    let space = match json.space.as_str() {
        "lambda" => Space::Lambda,
        "omega" => Space::Omega,
        other => return Err(IoError::Json(format!("unknown space `{other}`"))),
    };
    let mut exact: BTreeMap<CanonicalKey, BigRational> = BTreeMap::new();
    let mut counts: BTreeMap<CanonicalKey, u64> = BTreeMap::new();
    let mut samples: Option<u64> = None;
    for e in json.entries {
        let key = CanonicalKey::from_base64(&e.key).map_err(|err| IoError::Json(err.to_string()))?;
        if key.is_labeled() != (space == Space::Lambda) {
            return Err(IoError::Json(format!("key {} does not live on {}", e.key, space.name())));
        }
        let duplicate = match e.mass {
            MassJson::Exact(q) => {
                let q: BigRational = q.parse().map_err(|_| IoError::Json(format!("bad mass `{q}`")))?;
                exact.insert(key, q).is_some()
            }
            MassJson::Count { count, n } => {
                if samples.is_some_and(|s| s != n) || n == 0 {
                    return Err(IoError::Json("inconsistent sample counts".into()));
                }
                samples = Some(n);
                counts.insert(key, count).is_some()
            }
        };
        if duplicate {
            return Err(IoError::Json(format!("duplicate key {}", e.key)));
        }
    }
    let m = match (exact.is_empty(), samples) {
        (_, None) => CylinderMeasure::exact(space, json.radius, exact),
        (true, Some(n)) => {
            if counts.values().sum::<u64>() != n {
                return Err(IoError::Json("counts do not add up to n".into()));
            }
            CylinderMeasure::empirical(space, json.radius, counts, n)
        }
        (false, Some(_)) => return Err(IoError::Json("mixed exact and empirical entries".into())),
    };
    Ok(m.with_truncated(json.truncated))
}
