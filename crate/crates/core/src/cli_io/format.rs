//! Diagram text format: parse and serialize.
//!
//! One item per line, `#` starts a comment anywhere:
//!
//! ```text
//! polygon dl=0,0,0 dr=1,1,1 dminus=3 dplus=0
//! genus 0
//! vertex v1 theta=0
//! edge e1 v1 v2 w=2
//! bottom b1 v1
//! top t1 v2
//! marking b1 b2 v1 e1 b3 v2 e2 v3
//! ```
//!
//! The polygon line comes first, then the genus line; element lines may
//! follow in any order as long as every reference is already declared.
//! The optional marking line must name every element exactly once.
//! Parsing validates the diagram against the declared polygon and genus,
//! so a file that parses is a genuine marked floor diagram.
//!
//! Serialization emits vertices in index order under the names `v1..vn`,
//! then edges sorted as stored. On canonical-form diagrams (the only
//! ones the tool writes) parse and serialize are mutually inverse and
//! the round-trip is byte-identical.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::diagrams::{BoundedEdge, ElementId, FloorDiagram, Marking};
use crate::lattice::HTransversePolygon;

/// A fully parsed diagram file.
#[derive(Debug, Clone)]
pub struct ParsedDiagram {
    pub polygon: HTransversePolygon,
    pub genus: u64,
    pub diagram: FloorDiagram,
    pub marking: Option<Marking>,
}

/// Parse failure with a 1-based line number where one applies; semantic
/// failures that concern the whole file (cycles, polygon mismatch) carry
/// no line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line: Some(line),
        message: message.into(),
    }
}

fn err_global(message: impl Into<String>) -> ParseError {
    ParseError {
        line: None,
        message: message.into(),
    }
}

/// Parses one diagram file. The diagram is checked structurally and
/// against the declared polygon and genus; a marking line, if present,
/// is checked to be a valid marking.
pub fn parse_diagram(text: &str) -> Result<ParsedDiagram, ParseError> {
    let mut polygon: Option<HTransversePolygon> = None;
    let mut genus: Option<u64> = None;
    let mut thetas: Vec<i64> = Vec::new();
    let mut vertex_ids: HashMap<String, usize> = HashMap::new();
    let mut bounded: Vec<BoundedEdge> = Vec::new();
    let mut bounded_ids: HashMap<String, usize> = HashMap::new();
    let mut bottoms: Vec<usize> = Vec::new();
    let mut bottom_ids: HashMap<String, usize> = HashMap::new();
    let mut tops: Vec<usize> = Vec::new();
    let mut top_ids: HashMap<String, usize> = HashMap::new();
    let mut marking_names: Option<(usize, Vec<String>)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let n = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let head = tokens.next().unwrap();
        let rest: Vec<&str> = tokens.collect();
        match head {
            "polygon" => {
                if polygon.is_some() {
                    return Err(err(n, "duplicate polygon line"));
                }
                if genus.is_some() || !thetas.is_empty() {
                    return Err(err(n, "polygon line must come first"));
                }
                let p: HTransversePolygon = line
                    .parse()
                    .map_err(|e| err(n, format!("bad polygon: {e}")))?;
                polygon = Some(p);
            }
            "genus" => {
                if polygon.is_none() {
                    return Err(err(n, "genus line before polygon line"));
                }
                if genus.is_some() {
                    return Err(err(n, "duplicate genus line"));
                }
                let [g] = rest.as_slice() else {
                    return Err(err(n, "expected: genus <int>"));
                };
                genus = Some(
                    g.parse()
                        .map_err(|_| err(n, format!("bad genus value `{g}`")))?,
                );
            }
            "vertex" => {
                if genus.is_none() {
                    return Err(err(n, "vertex line before genus line"));
                }
                let [id, theta_tok] = rest.as_slice() else {
                    return Err(err(n, "expected: vertex <id> theta=<int>"));
                };
                let theta = theta_tok
                    .strip_prefix("theta=")
                    .and_then(|v| v.parse::<i64>().ok())
                    .ok_or_else(|| err(n, format!("bad theta token `{theta_tok}`")))?;
                if vertex_ids.insert(id.to_string(), thetas.len()).is_some() {
                    return Err(err(n, format!("duplicate vertex id `{id}`")));
                }
                thetas.push(theta);
            }
            "edge" => {
                let [id, src, dst, w_tok] = rest.as_slice() else {
                    return Err(err(n, "expected: edge <id> <src-id> <dst-id> w=<int>"));
                };
                let weight = w_tok
                    .strip_prefix("w=")
                    .and_then(|v| v.parse::<u64>().ok())
                    .ok_or_else(|| err(n, format!("bad weight token `{w_tok}`")))?;
                let src = *vertex_ids
                    .get(*src)
                    .ok_or_else(|| err(n, format!("unknown vertex `{src}`")))?;
                let dst = *vertex_ids
                    .get(*dst)
                    .ok_or_else(|| err(n, format!("unknown vertex `{dst}`")))?;
                if bounded_ids.insert(id.to_string(), bounded.len()).is_some() {
                    return Err(err(n, format!("duplicate edge id `{id}`")));
                }
                bounded.push(BoundedEdge { src, dst, weight });
            }
            "bottom" => {
                let [id, dst] = rest.as_slice() else {
                    return Err(err(n, "expected: bottom <id> <dst-id>"));
                };
                let dst = *vertex_ids
                    .get(*dst)
                    .ok_or_else(|| err(n, format!("unknown vertex `{dst}`")))?;
                if bottom_ids.insert(id.to_string(), bottoms.len()).is_some() {
                    return Err(err(n, format!("duplicate bottom id `{id}`")));
                }
                bottoms.push(dst);
            }
            "top" => {
                let [id, src] = rest.as_slice() else {
                    return Err(err(n, "expected: top <id> <src-id>"));
                };
                let src = *vertex_ids
                    .get(*src)
                    .ok_or_else(|| err(n, format!("unknown vertex `{src}`")))?;
                if top_ids.insert(id.to_string(), tops.len()).is_some() {
                    return Err(err(n, format!("duplicate top id `{id}`")));
                }
                tops.push(src);
            }
            "marking" => {
                if marking_names.is_some() {
                    return Err(err(n, "duplicate marking line"));
                }
                marking_names = Some((n, rest.iter().map(|s| s.to_string()).collect()));
            }
            other => return Err(err(n, format!("unknown directive `{other}`"))),
        }
    }

    let polygon = polygon.ok_or_else(|| err_global("missing polygon line"))?;
    let genus = genus.ok_or_else(|| err_global("missing genus line"))?;
    let diagram = FloorDiagram::new(thetas, bounded, bottoms, tops)
        .map_err(|e| err_global(format!("invalid diagram: {e}")))?;
    let violations = diagram.validate_against(&polygon, genus);
    if !violations.is_empty() {
        let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(err_global(format!(
            "diagram does not fit the declared polygon and genus: {}",
            msgs.join("; ")
        )));
    }
    let marking = match marking_names {
        None => None,
        Some((line_no, names)) => {
            let mut seq = Vec::with_capacity(names.len());
            for name in &names {
                let el = if let Some(&i) = vertex_ids.get(name) {
                    ElementId::Vertex(i)
                } else if let Some(&i) = bounded_ids.get(name) {
                    ElementId::Bounded(i)
                } else if let Some(&i) = bottom_ids.get(name) {
                    ElementId::Bottom(i)
                } else if let Some(&i) = top_ids.get(name) {
                    ElementId::Top(i)
                } else {
                    return Err(err(line_no, format!("unknown element `{name}` in marking")));
                };
                seq.push(el);
            }
            Some(
                Marking::new(&diagram, seq)
                    .map_err(|e| err(line_no, format!("invalid marking: {e}")))?,
            )
        }
    };
    Ok(ParsedDiagram {
        polygon,
        genus,
        diagram,
        marking,
    })
}

/// Serializes a diagram (and optional marking) in the text format, using
/// the diagram's own element order with `v1..`, `e1..`, `b1..`, `t1..`
/// names. Canonical-form input yields canonical text.
pub fn serialize_diagram(
    polygon: &HTransversePolygon,
    genus: u64,
    d: &FloorDiagram,
    marking: Option<&Marking>,
) -> String {
    let mut out = String::new();
    writeln!(out, "{polygon}").unwrap();
    writeln!(out, "genus {genus}").unwrap();
    for (v, &theta) in d.thetas().iter().enumerate() {
        writeln!(out, "vertex v{} theta={theta}", v + 1).unwrap();
    }
    for (i, e) in d.bounded_edges().iter().enumerate() {
        writeln!(
            out,
            "edge e{} v{} v{} w={}",
            i + 1,
            e.src + 1,
            e.dst + 1,
            e.weight
        )
        .unwrap();
    }
    for (i, &dst) in d.bottoms().iter().enumerate() {
        writeln!(out, "bottom b{} v{}", i + 1, dst + 1).unwrap();
    }
    for (i, &src) in d.tops().iter().enumerate() {
        writeln!(out, "top t{} v{}", i + 1, src + 1).unwrap();
    }
    if let Some(m) = marking {
        let names: Vec<String> = m.sequence().iter().map(|el| el.to_string()).collect();
        writeln!(out, "marking {}", names.join(" ")).unwrap();
    }
    out
}
