//! Plain-text edge lists.
//!
//! One edge per line as `u v` (whitespace separated), `#` comment lines, and
//! an optional leading `n <count>` header fixing the vertex count. Without a
//! header the vertex count is one more than the largest id.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{canonical, Graph};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn two_tokens(line_no: usize, line: &str) -> Result<(&str, &str)> {
    let mut it = line.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((a, b)),
        _ => Err(Error::Parse {
            line: line_no,
            message: format!("expected two tokens, got {line:?}"),
        }),
    }
}

fn parse_id(line_no: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse {
        line: line_no,
        message: format!("{tok:?} is not a nonnegative integer"),
    })
}

/// Parses an integer edge list.
pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut declared_n = None;
    let mut edges = Vec::new();
    let mut max_id = None;
    for (pos, (line_no, line)) in content_lines(text).enumerate() {
        let (a, b) = two_tokens(line_no, line)?;
        if pos == 0 && a == "n" {
            declared_n = Some(parse_id(line_no, b)?);
            continue;
        }
        let (u, v) = (parse_id(line_no, a)?, parse_id(line_no, b)?);
        if u == v {
            return Err(Error::SelfLoop {
                line: line_no,
                vertex: u,
            });
        }
        if let Some(n) = declared_n {
            if u.max(v) >= n {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("vertex {} out of range for header n = {n}", u.max(v)),
                });
            }
        }
        max_id = max_id.max(Some(u.max(v)));
        edges.push(canonical(u, v));
    }
    let n = declared_n.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
    Graph::new(n, edges)
}

/// Parses an edge list with arbitrary vertex tokens (e.g. sparse SNAP ids),
/// remapping them to dense ids in order of first appearance. Returns the
/// graph and the original token of each dense id.
pub fn from_labeled_edge_list(text: &str) -> Result<(Graph, Vec<String>)> {
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    for (line_no, line) in content_lines(text) {
        let (a, b) = two_tokens(line_no, line)?;
        let mut intern = |tok| {
            *ids.entry(tok).or_insert_with(|| {
                names.push(tok.to_string());
                names.len() - 1
            })
        };
        let (u, v) = (intern(a), intern(b));
        if u == v {
            return Err(Error::SelfLoop {
                line: line_no,
                vertex: u,
            });
        }
        edges.push(canonical(u, v));
    }
    let g = Graph::new(names.len(), edges)?;
    Ok((g, names))
}

/// Writes the canonical form: `n <count>` header, then edges in sorted
/// canonical order, single-space separated, newline terminated.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(8 + g.m() * 8);
    let _ = writeln!(out, "n {}", g.n());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gen_cycle;

    #[test]
    fn path_and_duplicates() {
        let g = from_edge_list("0 1\n1 2").unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        let g = from_edge_list("0 1\n1 0").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn self_loop_rejected_with_line() {
        assert_eq!(
            from_edge_list("0 0"),
            Err(Error::SelfLoop { line: 1, vertex: 0 })
        );
        assert!(matches!(
            from_edge_list("# c\n0 1\n2 2\n"),
            Err(Error::SelfLoop { line: 3, .. })
        ));
    }

    #[test]
    fn malformed_lines_report_line_number() {
        assert!(matches!(
            from_edge_list("0 1\n1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            from_edge_list("0 -1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            from_edge_list("0 1 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            from_edge_list("n 2\n0 5\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn header_keeps_isolated_vertices() {
        let g = from_edge_list("# comment\nn 5\n0 1\n\n3 1\n").unwrap();
        assert_eq!((g.n(), g.m()), (5, 2));
        assert_eq!(to_edge_list(&g), "n 5\n0 1\n1 3\n");
        assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn writer_is_canonical() {
        let c = gen_cycle(4).unwrap();
        assert_eq!(to_edge_list(&c), "n 4\n0 1\n0 3\n1 2\n2 3\n");
    }

    #[test]
    fn labeled_ingestion_remaps() {
        let (g, names) = from_labeled_edge_list("1001 77\n77 5\n5 1001\n1001 77\n").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert_eq!(names, vec!["1001", "77", "5"]);
        assert!(from_labeled_edge_list("a a\n").is_err());
    }
}
