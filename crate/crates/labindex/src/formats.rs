//! graph6 and edge-list text formats.
//!
//! graph6 stores `n` followed by the upper triangle of the adjacency matrix
//! column by column, `x(0,1), x(0,2), x(1,2), x(0,3), …`, six bits per byte
//! offset by 63. Only the one-byte and four-byte size headers are
//! supported, so `n < 2^18`.

use labindex_core::{Graph, GraphError};
use thiserror::Error;

pub const MAX_GRAPH6_ORDER: usize = (1 << 18) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("graph6 byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: &'static str },
    #[error("edge list line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn g6_err(offset: usize, reason: &'static str) -> FormatError {
    FormatError::Graph6 { offset, reason }
}

fn sextet(bytes: &[u8], i: usize) -> Result<u8, FormatError> {
    match bytes.get(i) {
        Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
        Some(_) => Err(g6_err(i, "character outside the range '?'..='~'")),
        None => Err(g6_err(i, "unexpected end of input")),
    }
}

/// Decodes one graph6 line. A leading `>>graph6<<` header and trailing
/// whitespace are ignored.
pub fn parse_graph6(line: &str) -> Result<Graph, FormatError> {
    let line = line.trim_end();
    let skip = if line.starts_with(">>graph6<<") { 10 } else { 0 };
    let bytes = &line.as_bytes()[skip..];
    if bytes.first() == Some(&b':') || bytes.first() == Some(&b'&') {
        return Err(g6_err(skip, "sparse6 and digraph6 are not supported"));
    }
    let (n, mut pos) = match sextet(bytes, 0).map_err(|e| shift(e, skip))? {
        63 => {
            if bytes.get(1) == Some(&126) {
                return Err(g6_err(skip + 1, "orders of 2^18 and above are not supported"));
            }
            let mut n = 0usize;
            for i in 1..4 {
                n = (n << 6) | sextet(bytes, i).map_err(|e| shift(e, skip))? as usize;
            }
            if n < 63 {
                return Err(g6_err(skip + 1, "four-byte header used for an order below 63"));
            }
            (n, 4)
        }
        s => (s as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let body_len = bits.div_ceil(6);
    if bytes.len() != pos + body_len {
        let offset = skip + bytes.len().min(pos + body_len);
        let reason = if bytes.len() < pos + body_len {
            "unexpected end of input"
        } else {
            "trailing characters after the adjacency bits"
        };
        return Err(g6_err(offset, reason));
    }
    let mut edges = Vec::new();
    let (mut i, mut j) = (0usize, 1usize);
    let mut bit = 0;
    while bit < bits {
        let s = sextet(bytes, pos).map_err(|e| shift(e, skip))?;
        for b in (0..6).rev() {
            if bit == bits {
                if s & ((1 << (b + 1)) - 1) != 0 {
                    return Err(g6_err(skip + pos, "nonzero padding bits"));
                }
                break;
            }
            if s >> b & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
        pos += 1;
    }
    Ok(Graph::new(n, edges)?)
}

fn shift(e: FormatError, by: usize) -> FormatError {
    match e {
        FormatError::Graph6 { offset, reason } => FormatError::Graph6 { offset: offset + by, reason },
        other => other,
    }
}

/// Encodes a graph as graph6, without header or newline.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= MAX_GRAPH6_ORDER, "graph6 supports at most {MAX_GRAPH6_ORDER} vertices");
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) as u8 & 63, (n >> 6) as u8 & 63, n as u8 & 63].map(|s| s + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Parses `n` followed by whitespace-separated vertex pairs. Text after `#`
/// on a line is ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut tokens = text.lines().enumerate().flat_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        l.split_whitespace().map(move |t| (i + 1, t))
    });
    let num = |(line, t): (usize, &str)| {
        t.parse::<usize>()
            .map_err(|_| FormatError::EdgeList { line, reason: format!("expected a vertex index, found {t:?}") })
    };
    let Some(first) = tokens.next() else {
        return Err(FormatError::EdgeList { line: 1, reason: "empty input".into() });
    };
    let n = num(first)?;
    let mut edges = Vec::new();
    while let Some(a) = tokens.next() {
        let line = a.0;
        let Some(b) = tokens.next() else {
            return Err(FormatError::EdgeList { line, reason: "odd number of endpoints".into() });
        };
        edges.push((num(a)?, num(b)?));
    }
    Ok(Graph::new(n, edges)?)
}

/// Writes `n` on the first line, then one edge per line.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for &(u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use labindex_core::FamilySpec;

    #[test]
    fn small_graph6() {
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1));
        assert_eq!(parse_graph6("A_").unwrap(), Graph::new(2, [(0, 1)]).unwrap());
        assert_eq!(parse_graph6("?").unwrap(), Graph::empty(0));
        let d = parse_graph6("D?{").unwrap();
        assert_eq!(d.edges(), &[(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(parse_graph6(">>graph6<<A_\n").unwrap().edge_count(), 1);
    }

    #[test]
    fn graph6_errors_name_offsets() {
        assert_eq!(parse_graph6("A"), Err(g6_err(1, "unexpected end of input")));
        assert_eq!(parse_graph6("A_?"), Err(g6_err(2, "trailing characters after the adjacency bits")));
        assert_eq!(parse_graph6("A`"), Err(g6_err(1, "nonzero padding bits")));
        assert_eq!(parse_graph6("A\x01"), Err(g6_err(1, "character outside the range '?'..='~'")));
        assert!(matches!(parse_graph6(":A"), Err(FormatError::Graph6 { offset: 0, .. })));
        assert!(matches!(parse_graph6("~~??????"), Err(FormatError::Graph6 { offset: 1, .. })));
    }

    #[test]
    fn round_trips() {
        for spec in [
            FamilySpec::Cycle(5),
            FamilySpec::Complete(7),
            FamilySpec::PentagonCounterexample,
            FamilySpec::TreeCounterexample,
            FamilySpec::RectGrid(vec![9, 8]),
            FamilySpec::Path(63),
            FamilySpec::Cycle(300),
        ] {
            let g = spec.generate().unwrap();
            assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g, "{spec}");
            assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g, "{spec}");
        }
    }

    #[test]
    fn edge_lists() {
        assert_eq!(parse_edge_list("3\n0 1\n1 2").unwrap(), FamilySpec::Path(3).generate().unwrap());
        assert!(matches!(parse_edge_list("2\n0 0"), Err(FormatError::Graph(GraphError::Loop(0)))));
        assert!(matches!(parse_edge_list("2\n0 1\n1 0"), Err(FormatError::Graph(GraphError::DuplicateEdge(..)))));
        assert!(matches!(parse_edge_list("2\n0 5"), Err(FormatError::Graph(GraphError::VertexOutOfRange { .. }))));
        assert!(matches!(parse_edge_list("3\n0 1\n2"), Err(FormatError::EdgeList { line: 3, .. })));
        let pentagon = parse_edge_list("5\n0 1\n1 2\n2 3\n3 4\n4 0\n2 4\n1 3").unwrap();
        assert_eq!(pentagon, FamilySpec::PentagonCounterexample.generate().unwrap());
    }
}
