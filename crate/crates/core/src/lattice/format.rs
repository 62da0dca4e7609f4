//! Line-oriented graph files.
//!
//! ```text
//! # comment
//! vertex <id> self=<int> genus=<int>
//! edge <id> <id> [mult=<int>]
//! cycle <name> <id>=<int>[,<id>=<int>...]
//! ```

use super::{Cycle, DualGraph, Edge, Vertex};
use crate::ParseError;

#[derive(Debug, Clone)]
pub struct GraphFile {
    pub graph: DualGraph,
    /// Named cycles in file order.
    pub cycles: Vec<(String, Cycle)>,
}

impl GraphFile {
    pub fn cycle(&self, name: &str) -> Option<&Cycle> {
        self.cycles.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }
}

/// Line number, name and `(id, coefficient)` pairs of a `cycle` line.
type RawCycle = (usize, String, Vec<(String, i64)>);

fn is_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::new(line, msg)
}

fn parse_int<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T, ParseError> {
    v.parse()
        .map_err(|_| err(line, format!("invalid value `{v}` for `{key}`")))
}

fn parse_id(line: usize, s: &str) -> Result<String, ParseError> {
    if is_id(s) {
        Ok(s.to_string())
    } else {
        Err(err(line, format!("invalid id `{s}`")))
    }
}

pub fn parse_graph_file(text: &str) -> Result<GraphFile, ParseError> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();
    let mut raw_cycles: Vec<RawCycle> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "vertex" => {
                if tokens.len() < 2 {
                    return Err(err(line, "vertex needs an id"));
                }
                let id = parse_id(line, tokens[1])?;
                let mut self_int = None;
                let mut genus = 0u32;
                for t in &tokens[2..] {
                    match t.split_once('=') {
                        Some(("self", v)) => self_int = Some(parse_int::<i64>(line, "self", v)?),
                        Some(("genus", v)) => genus = parse_int(line, "genus", v)?,
                        _ => return Err(err(line, format!("unknown key `{t}`"))),
                    }
                }
                let self_intersection =
                    self_int.ok_or_else(|| err(line, format!("vertex `{id}` is missing self=")))?;
                if vertices.iter().any(|v: &Vertex| v.id == id) {
                    return Err(err(line, format!("duplicate vertex id `{id}`")));
                }
                vertices.push(Vertex {
                    id,
                    self_intersection,
                    genus,
                });
            }
            "edge" => {
                if tokens.len() < 3 {
                    return Err(err(line, "edge needs two ids"));
                }
                let a = parse_id(line, tokens[1])?;
                let b = parse_id(line, tokens[2])?;
                let mut multiplicity = 1u32;
                for t in &tokens[3..] {
                    match t.split_once('=') {
                        Some(("mult", v)) => multiplicity = parse_int(line, "mult", v)?,
                        _ => return Err(err(line, format!("unknown key `{t}`"))),
                    }
                }
                if multiplicity == 0 {
                    return Err(err(line, "mult must be positive"));
                }
                edges.push(Edge { a, b, multiplicity });
                edge_lines.push(line);
            }
            "cycle" => {
                if tokens.len() != 3 {
                    return Err(err(line, "expected `cycle <name> <id>=<int>[,...]`"));
                }
                let name = parse_id(line, tokens[1])?;
                let mut pairs = Vec::new();
                for item in tokens[2].split(',') {
                    let (id, v) = item
                        .split_once('=')
                        .ok_or_else(|| err(line, format!("expected `<id>=<int>`, got `{item}`")))?;
                    pairs.push((parse_id(line, id)?, parse_int::<i64>(line, id, v)?));
                }
                raw_cycles.push((line, name, pairs));
            }
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        }
    }

    for (e, &line) in edges.iter().zip(&edge_lines) {
        for id in [&e.a, &e.b] {
            if !vertices.iter().any(|v| &v.id == id) {
                return Err(err(line, format!("unknown vertex id `{id}`")));
            }
        }
        if e.a == e.b {
            return Err(err(line, format!("edge joins vertex `{}` to itself", e.a)));
        }
    }
    let graph = DualGraph::new(vertices, edges).map_err(|e| err(0, e.to_string()))?;
    let mut cycles = Vec::with_capacity(raw_cycles.len());
    for (line, name, pairs) in raw_cycles {
        let cycle = graph.cycle(&pairs).map_err(|e| err(line, e.to_string()))?;
        cycles.push((name, cycle));
    }
    Ok(GraphFile { graph, cycles })
}
