//! Graph text format, DOT export and JSONL records.
//!
//! Text format (UTF-8, LF line endings):
//!
//! ```text
//! # theta graph
//! k 1
//! e 0 3
//! e 1 4
//! e 2 5
//! ```
//!
//! Canonical serialization writes each edge as `e <min> <max>` with lines
//! sorted by `(min, max)`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{canonical_form, DartGraph};
use crate::error::{Error, Result};

pub fn to_text(g: &DartGraph) -> String {
    let mut s = format!("k {}\n", g.k());
    for (a, b) in g.edges() {
        writeln!(s, "e {a} {b}").unwrap();
    }
    s
}

pub fn parse_text(input: &str) -> Result<DartGraph> {
    let mut k: Option<usize> = None;
    let mut pairs = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let err = |msg: &str| Error::Parse { line: line_no, msg: msg.to_string() };
        match toks.next() {
            Some("k") => {
                if k.is_some() {
                    return Err(err("duplicate k header"));
                }
                let v = toks
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .filter(|&v| v > 0)
                    .ok_or_else(|| err("expected positive integer after k"))?;
                k = Some(v);
            }
            Some("e") => {
                if k.is_none() {
                    return Err(err("edge line before k header"));
                }
                let a = toks.next().and_then(|t| t.parse::<usize>().ok());
                let b = toks.next().and_then(|t| t.parse::<usize>().ok());
                match (a, b) {
                    (Some(a), Some(b)) => pairs.push((a, b)),
                    _ => return Err(err("expected two dart indices after e")),
                }
            }
            Some(other) => return Err(err(&format!("unknown record {other:?}"))),
            None => unreachable!(),
        }
        if toks.next().is_some() {
            return Err(Error::Parse { line: line_no, msg: "trailing tokens".into() });
        }
    }
    let k = k.ok_or(Error::Parse { line: 0, msg: "missing k header".into() })?;
    DartGraph::from_pairing(2 * k, &pairs)
}

pub fn to_dot(g: &DartGraph) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.num_vertices() {
        writeln!(s, "  v{v};").unwrap();
    }
    for (i, (a, b)) in g.edges().into_iter().enumerate() {
        writeln!(s, "  v{} -- v{} [label=\"e{} ({}-{})\"];", a / 3, b / 3, i, a, b).unwrap();
    }
    s.push_str("}\n");
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub k: usize,
    pub pairing: Vec<[usize; 2]>,
    pub canonical_code: String,
}

impl GraphRecord {
    pub fn new(g: &DartGraph) -> Self {
        GraphRecord {
            k: g.k(),
            pairing: g.edges().into_iter().map(|(a, b)| [a, b]).collect(),
            canonical_code: canonical_form(g).graph.code(),
        }
    }

    pub fn to_graph(&self) -> Result<DartGraph> {
        let pairs: Vec<_> = self.pairing.iter().map(|p| (p[0], p[1])).collect();
        DartGraph::from_pairing(2 * self.k, &pairs)
    }
}

pub fn to_jsonl_line(g: &DartGraph) -> String {
    serde_json::to_string(&GraphRecord::new(g)).expect("record serializes")
}

#[cfg(test)]
mod tests {
    use super::super::named::*;
    use super::*;

    #[test]
    fn text_round_trip() {
        for g in [theta(), dumbbell(), k4(), b1()] {
            let t = to_text(&g);
            assert_eq!(parse_text(&t).unwrap(), g);
        }
        assert_eq!(to_text(&theta()), "k 1\ne 0 3\ne 1 4\ne 2 5\n");
    }

    #[test]
    fn comments_and_errors() {
        let g = parse_text("# hi\nk 1 # header\n\ne 3 0\ne 1 4\ne 2 5\n").unwrap();
        assert_eq!(g, theta());
        assert!(matches!(parse_text("e 0 3\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_text("k 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_text("k 1\nx 1 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_text("k 1\ne 0 3\ne 1 4\n"), Err(Error::MalformedPairing(_))));
    }

    #[test]
    fn jsonl_record() {
        let line = to_jsonl_line(&theta());
        assert_eq!(line, r#"{"k":1,"pairing":[[0,3],[1,4],[2,5]],"canonical_code":"3,4,5,0,1,2"}"#);
        let rec: GraphRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(rec.to_graph().unwrap(), theta());
    }

    #[test]
    fn dot_mentions_every_edge() {
        let d = to_dot(&k4());
        assert_eq!(d.matches("--").count(), 6);
    }
}
