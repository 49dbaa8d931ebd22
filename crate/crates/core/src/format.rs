//! Plain-text file formats.
//!
//! Graph files:
//!
//! ```text
//! # comment
//! t undirected 3
//! e 0 1 1 3
//! e 1 2 2
//! ```
//!
//! Formula files (1-based variables, one clause per line):
//!
//! ```text
//! p mxor3 2 3
//! 1 2
//! 1 2
//! 1 2
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Label, LabelSet, TemporalGraph};
use crate::hardness::XorFormula;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        (!line.is_empty() && !line.starts_with('#'))
            .then(|| (i + 1, line.split_whitespace().collect()))
    })
}

fn number<T: FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} '{tok}'")))
}

/// Parses a graph file. Errors carry the 1-based line number.
pub fn parse_graph(text: &str) -> Result<TemporalGraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let (directed, n) = match header.as_slice() {
        ["t", kind, n] => {
            let directed = match *kind {
                "directed" => true,
                "undirected" => false,
                other => {
                    return Err(parse_err(
                        hline,
                        format!("expected 'directed' or 'undirected', got '{other}'"),
                    ))
                }
            };
            (directed, number::<usize>(n, hline, "vertex count")?)
        }
        _ => {
            return Err(parse_err(
                hline,
                "expected header 't <directed|undirected> <n>'",
            ))
        }
    };

    let mut g = TemporalGraph::new(n, directed);
    for (line, toks) in lines {
        if toks[0] != "e" || toks.len() < 3 {
            return Err(parse_err(
                line,
                "expected edge record 'e <u> <v> <labels...>'",
            ));
        }
        let u = number(toks[1], line, "vertex")?;
        let v = number(toks[2], line, "vertex")?;
        let labels = toks[3..]
            .iter()
            .map(|t| number::<Label>(t, line, "label"))
            .collect::<Result<LabelSet>>()?;
        if g.has_edge(u, v) {
            return Err(parse_err(line, format!("duplicate edge {u} {v}")));
        }
        g.set_labels(u, v, labels)
            .map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(g)
}

/// Writes `g` in canonical form: edges sorted by endpoints, labels ascending.
pub fn write_graph(g: &TemporalGraph) -> String {
    let mut out = String::new();
    let kind = if g.is_directed() {
        "directed"
    } else {
        "undirected"
    };
    writeln!(out, "t {kind} {}", g.vertex_count()).unwrap();
    for (e, ls) in g.edges() {
        write!(out, "e {} {}", e.u, e.v).unwrap();
        for l in ls.iter() {
            write!(out, " {l}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses a formula file into a validated [`XorFormula`].
pub fn parse_formula(text: &str) -> Result<XorFormula> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let (n, m) = match header.as_slice() {
        ["p", "mxor3", n, m] => (
            number::<usize>(n, hline, "variable count")?,
            number::<usize>(m, hline, "clause count")?,
        ),
        _ => return Err(parse_err(hline, "expected header 'p mxor3 <n> <m>'")),
    };
    let mut clauses = Vec::with_capacity(m);
    let mut last_line = hline;
    for (line, toks) in lines {
        last_line = line;
        let [i, j] = toks.as_slice() else {
            return Err(parse_err(line, "expected clause '<i> <j>'"));
        };
        let i: usize = number(i, line, "variable")?;
        let j: usize = number(j, line, "variable")?;
        for x in [i, j] {
            if x == 0 || x > n {
                return Err(parse_err(line, format!("variable {x} outside 1..={n}")));
            }
        }
        if i == j {
            return Err(parse_err(line, format!("clause repeats variable {i}")));
        }
        clauses.push((i - 1, j - 1));
    }
    if clauses.len() != m {
        return Err(parse_err(
            last_line,
            format!("header declares {m} clauses, found {}", clauses.len()),
        ));
    }
    XorFormula::new(n, clauses)
}

/// Writes a formula with 1-based variable indices.
pub fn write_formula(phi: &XorFormula) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "p mxor3 {} {}",
        phi.variable_count(),
        phi.clauses().len()
    )
    .unwrap();
    for &(i, j) in phi.clauses() {
        writeln!(out, "{} {}", i + 1, j + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let text = "# star\nt undirected 3\ne 0 1 1 3\n\ne 0 2 2\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.cost(), 3);
        assert_eq!(write_graph(&g), "t undirected 3\ne 0 1 1 3\ne 0 2 2\n");
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn canonicalizes_order() {
        let g = parse_graph("t undirected 3\ne 2 1 5 4\ne 1 0 1\n").unwrap();
        assert_eq!(write_graph(&g), "t undirected 3\ne 0 1 1\ne 1 2 4 5\n");
    }

    #[test]
    fn directed_and_empty_label_sets() {
        let g = parse_graph("t directed 2\ne 1 0\n").unwrap();
        assert!(g.is_directed());
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(0, 1));
        assert_eq!(write_graph(&g), "t directed 2\ne 1 0\n");
    }

    #[test]
    fn graph_errors_have_line_numbers() {
        let bad = [
            ("", 1),
            ("t sideways 3\n", 1),
            ("t undirected 3\ne 0 1 x\n", 2),
            ("# c\nt undirected 3\n\ne 0 5 1\n", 4),
            ("t undirected 3\ne 0 1 0\n", 2),
            ("t undirected 3\ne 0 1 1\ne 1 0 2\n", 3),
            ("t undirected 3\nv 0\n", 2),
        ];
        for (text, line) in bad {
            match parse_graph(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn formula_round_trip() {
        let phi = parse_formula("# smallest\np mxor3 2 3\n1 2\n2 1\n1 2\n").unwrap();
        assert_eq!(phi.clauses(), &[(0, 1), (1, 0), (0, 1)]);
        assert_eq!(parse_formula(&write_formula(&phi)).unwrap(), phi);
    }

    #[test]
    fn formula_errors() {
        assert!(matches!(
            parse_formula("p mxor3 2 2\n1 2\n1 2\n"),
            Err(Error::OccurrenceCount { .. })
        ));
        assert!(matches!(
            parse_formula("p mxor3 2 3\n1 2\n1 2\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_formula("p mxor3 2 3\n1 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_formula("p mxor3 2 3\n1 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_formula("p cnf 2 3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
