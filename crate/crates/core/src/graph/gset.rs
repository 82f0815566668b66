//! Gset text format: an `n m` header followed by `m` lines of `i j w` with
//! 1-based vertex indices.

use std::fmt::Write as _;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses Gset text. Duplicate pairs are merged by summation.
pub fn parse_gset(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())).filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing 'n m' header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(parse_err(hline, format!("header must be 'n m', got {header:?}")));
    }
    let n: usize = fields[0].parse().map_err(|_| parse_err(hline, format!("bad vertex count {:?}", fields[0])))?;
    let m: usize = fields[1].parse().map_err(|_| parse_err(hline, format!("bad edge count {:?}", fields[1])))?;
    if n == 0 {
        return Err(parse_err(hline, "vertex count must be at least 1"));
    }

    let mut edges = Vec::with_capacity(m);
    let mut last_line = hline;
    for (lineno, line) in lines {
        last_line = lineno;
        if edges.len() == m {
            return Err(parse_err(lineno, format!("more edge lines than the {m} declared")));
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 3 {
            return Err(parse_err(lineno, format!("expected 'i j w', got {line:?}")));
        }
        let index = |s: &str| -> Result<usize> {
            let v: usize = s.parse().map_err(|_| parse_err(lineno, format!("bad vertex index {s:?}")))?;
            if v == 0 || v > n {
                return Err(parse_err(lineno, format!("vertex index {v} outside [1, {n}]")));
            }
            Ok(v - 1)
        };
        let i = index(f[0])?;
        let j = index(f[1])?;
        if i == j {
            return Err(parse_err(lineno, format!("self-loop at vertex {}", i + 1)));
        }
        let w: f64 = f[2].parse().map_err(|_| parse_err(lineno, format!("bad weight {:?}", f[2])))?;
        if !w.is_finite() {
            return Err(parse_err(lineno, format!("non-finite weight {:?}", f[2])));
        }
        edges.push((i, j, w));
    }
    if edges.len() != m {
        return Err(parse_err(last_line + 1, format!("header declares {m} edges but {} were found", edges.len())));
    }
    Graph::new(n, edges)
}

/// Reads and parses a Gset file.
pub fn read_gset_file(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_gset(&text)
}

/// Writes a graph in Gset format. Integer weights print without a decimal
/// point; other weights use the shortest exact decimal form.
pub fn serialize_gset(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * (g.edge_count() + 1));
    let _ = writeln!(out, "{} {}", g.n(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.i + 1, e.j + 1, e.w);
    }
    out
}
