//! Text and JSON formats for posets, tables and matrices.
//!
//! Poset text format, one poset per line: `n;x<y,x<y,...` listing cover
//! relations, 0-indexed. Correlation tables serialize to JSON objects
//! `{ "i,j": "<value>" }`; matrices dump as JSON arrays of arrays of decimal
//! strings (safe for arbitrary precision).

use std::fmt::Write as _;

use extlab_core::linext::CorrelationTable;
use extlab_core::matrix::IntMatrix;
use extlab_core::poset::{ChainDecomposition, Poset, PosetError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Poset {
        line: usize,
        #[source]
        source: PosetError,
    },
}

/// Parses one `n;x<y,...` line (1-based line number used for diagnostics).
pub fn parse_poset_line(text: &str, line: usize) -> Result<Poset, FormatError> {
    let text = text.trim();
    let (head, tail) = text.split_once(';').ok_or_else(|| FormatError::Parse {
        line,
        msg: "expected `n;relations`".into(),
    })?;
    let n: usize = head.trim().parse().map_err(|_| FormatError::Parse {
        line,
        msg: format!("bad element count {head:?}"),
    })?;
    let mut covers = Vec::new();
    for part in tail.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (x, y) = part.split_once('<').ok_or_else(|| FormatError::Parse {
            line,
            msg: format!("bad relation {part:?}, expected `x<y`"),
        })?;
        let x: usize = x.trim().parse().map_err(|_| FormatError::Parse {
            line,
            msg: format!("bad element {x:?}"),
        })?;
        let y: usize = y.trim().parse().map_err(|_| FormatError::Parse {
            line,
            msg: format!("bad element {y:?}"),
        })?;
        covers.push((x, y));
    }
    Poset::from_cover_relations(n, &covers).map_err(|source| FormatError::Poset { line, source })
}

/// Parses a whole document: one poset per nonempty line.
pub fn parse_posets(text: &str) -> Result<Vec<Poset>, FormatError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(idx, l)| parse_poset_line(l, idx + 1))
        .collect()
}

/// Writes a poset as its cover relations in the line format.
pub fn poset_line(p: &Poset) -> String {
    let covers = p.cover_relations();
    let rels: Vec<String> = covers.iter().map(|(x, y)| format!("{x}<{y}")).collect();
    format!("{};{}", p.n(), rels.join(","))
}

/// `c1=0,1,2;c2=3,4` rendering of a decomposition.
pub fn chains_line(d: &ChainDecomposition) -> String {
    let join = |c: &[usize]| {
        c.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!("c1={};c2={}", join(d.chain1()), join(d.chain2()))
}

/// Correlation table as JSON `{ "i,j": "<poly or count>" }`, keys ascending.
pub fn table_json(table: &CorrelationTable, signed: bool, q_mode: bool) -> String {
    let mut out = String::from("{");
    let mut first = true;
    for ((i, j), poly) in table.support() {
        if !signed && (i < 1 || j < 1) {
            continue;
        }
        if !first {
            out.push(',');
        }
        first = false;
        let value = if q_mode {
            poly.to_text()
        } else {
            poly.eval_one().to_string()
        };
        let _ = write!(out, "\"{i},{j}\":\"{value}\"");
    }
    out.push('}');
    out
}

/// Plain-text grid of a correlation table.
pub fn table_text(table: &CorrelationTable, signed: bool, q_mode: bool) -> String {
    let cells: Vec<(i64, i64)> = table
        .support()
        .map(|(c, _)| c)
        .filter(|&(i, j)| signed || (i >= 1 && j >= 1))
        .collect();
    if cells.is_empty() {
        return "(empty table)\n".into();
    }
    let imin = cells.iter().map(|c| c.0).min().unwrap();
    let imax = cells.iter().map(|c| c.0).max().unwrap();
    let jmin = cells.iter().map(|c| c.1).min().unwrap();
    let jmax = cells.iter().map(|c| c.1).max().unwrap();
    let mut out = String::new();
    for i in imin..=imax {
        let mut row = Vec::new();
        for j in jmin..=jmax {
            let poly = table.get(i, j);
            row.push(if q_mode {
                poly.to_text()
            } else {
                poly.eval_one().to_string()
            });
        }
        let _ = writeln!(out, "F({i},*): {}", row.join(" | "));
    }
    out
}

/// Matrix dump: JSON array of arrays of decimal strings.
pub fn matrix_json(m: &IntMatrix) -> String {
    let mut out = String::from("[");
    for i in 1..=m.rows() {
        if i > 1 {
            out.push(',');
        }
        out.push('[');
        for j in 1..=m.cols() {
            if j > 1 {
                out.push(',');
            }
            let _ = write!(out, "\"{}\"", m.get(i, j));
        }
        out.push(']');
    }
    out.push(']');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use extlab_core::linext::correlation_table;
    use extlab_core::poset::ElementTriple;

    #[test]
    fn poset_line_round_trip() {
        let p = parse_poset_line("4;0<1,2<3", 1).unwrap();
        assert_eq!(p.n(), 4);
        assert!(p.lt(0, 1) && p.lt(2, 3) && !p.lt(0, 2));
        let back = poset_line(&p);
        assert_eq!(parse_poset_line(&back, 1).unwrap(), p);
        // closure collapses to covers on output
        let chain = parse_poset_line("3;0<1,1<2,0<2", 1).unwrap();
        assert_eq!(poset_line(&chain), "3;0<1,1<2");
        // an antichain has no relations
        assert_eq!(poset_line(&parse_poset_line("2;", 1).unwrap()), "2;");
    }

    #[test]
    fn parse_errors() {
        assert!(parse_poset_line("x;0<1", 1).is_err());
        assert!(parse_poset_line("3:0<1", 1).is_err());
        assert!(parse_poset_line("3;0<9", 1).is_err());
        assert!(parse_poset_line("3;0<1,1<0", 7).is_err());
    }

    #[test]
    fn table_json_shape() {
        let p = Poset::chain(3);
        let t = ElementTriple::new(0, 1, 2).unwrap();
        let table = correlation_table(&p, None, t, true);
        assert_eq!(table_json(&table, false, false), "{\"1,1\":\"1\"}");
        assert_eq!(table_json(&table, false, true), "{\"1,1\":\"1\"}");
    }

    #[test]
    fn matrix_json_shape() {
        let m = extlab_core::matrix::shift_matrix(2);
        assert_eq!(matrix_json(&m), "[[\"0\",\"0\"],[\"1\",\"0\"]]");
    }
}
