//! graph6 and edge-list text formats.
//!
//! graph6 follows McKay's encoding: a size header (one byte for n <= 62,
//! `~` plus three bytes up to 258047, `~~` plus six bytes beyond), then the
//! upper triangle of the adjacency matrix in column order, six bits per
//! byte, each byte offset by 63.
//!
//! The edge-list format is a vertex count on the first line followed by one
//! `u v` pair per line. Blank lines and lines starting with `#` are skipped.

use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;
use crate::graph::{Graph, GraphBuilder};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edge-list" | "edgelist" | "edges" => Ok(Format::EdgeList),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Graph6 => "graph6",
            Format::EdgeList => "edge-list",
        })
    }
}

pub fn parse_graph(text: &[u8], format: Format) -> Result<Graph, ParseError> {
    match format {
        Format::Graph6 => parse_graph6(text),
        Format::EdgeList => parse_edge_list(text),
    }
}

pub fn serialize_graph(g: &Graph, format: Format) -> Vec<u8> {
    match format {
        Format::Graph6 => to_graph6(g).into_bytes(),
        Format::EdgeList => to_edge_list(g).into_bytes(),
    }
}

const GRAPH6_HEADER: &[u8] = b">>graph6<<";

fn g6_err(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Graph6 { offset, message: message.into() }
}

pub fn parse_graph6(text: &[u8]) -> Result<Graph, ParseError> {
    let mut start = 0;
    if text.starts_with(GRAPH6_HEADER) {
        start = GRAPH6_HEADER.len();
    }
    let mut end = text.len();
    while end > start && text[end - 1].is_ascii_whitespace() {
        end -= 1;
    }
    let body = &text[start..end];
    let sixes = |from: usize, count: usize| -> Result<usize, ParseError> {
        let mut v = 0usize;
        for i in 0..count {
            let b = *body
                .get(from + i)
                .ok_or_else(|| g6_err(start + from + i, "truncated size header"))?;
            if !(63..=126).contains(&b) {
                return Err(g6_err(start + from + i, format!("byte {b} outside 63..=126")));
            }
            v = (v << 6) | (b - 63) as usize;
        }
        Ok(v)
    };
    let first = *body.first().ok_or_else(|| g6_err(start, "empty input"))?;
    let (n, mut pos) = if first < 126 {
        (sixes(0, 1)?, 1)
    } else if body.get(1) == Some(&126) {
        (sixes(2, 6)?, 8)
    } else {
        (sixes(1, 3)?, 4)
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    let data = &body[pos..];
    if data.len() != bytes_needed {
        return Err(g6_err(
            start + pos,
            format!("expected {bytes_needed} data bytes for n={n}, found {}", data.len()),
        ));
    }
    let mut b = GraphBuilder::new(n);
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = data[bit / 6];
            if !(63..=126).contains(&byte) {
                return Err(g6_err(start + pos + bit / 6, format!("byte {byte} outside 63..=126")));
            }
            if (byte - 63) >> (5 - bit % 6) & 1 == 1 {
                b.add_edge(i, j);
            }
            bit += 1;
        }
    }
    // padding bits must be zero
    if bit % 6 != 0 {
        let last = data[data.len() - 1];
        if (last - 63) & ((1u8 << (6 - bit % 6)) - 1) != 0 {
            return Err(g6_err(start + end - 1, "nonzero padding bits"));
        }
    }
    pos += bytes_needed;
    debug_assert_eq!(pos, body.len());
    Ok(b.build())
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

fn el_err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::EdgeList { line, message: message.into() }
}

pub fn parse_edge_list(text: &[u8]) -> Result<Graph, ParseError> {
    let text = std::str::from_utf8(text).map_err(|e| el_err(0, format!("not UTF-8: {e}")))?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| el_err(1, "missing vertex count"))?;
    let n: usize = header
        .parse()
        .map_err(|_| el_err(hline, format!("bad vertex count `{header}`")))?;
    let mut b = GraphBuilder::new(n);
    for (lineno, line) in lines {
        let mut parts = line.split_whitespace();
        let mut next = |what: &str| -> Result<usize, ParseError> {
            let tok = parts.next().ok_or_else(|| el_err(lineno, format!("missing {what}")))?;
            tok.parse()
                .map_err(|_| el_err(lineno, format!("bad vertex id `{tok}`")))
        };
        let a = next("first endpoint")?;
        let c = next("second endpoint")?;
        if parts.next().is_some() {
            return Err(el_err(lineno, "expected exactly two vertex ids"));
        }
        if a >= n || c >= n {
            return Err(el_err(lineno, format!("vertex {} out of range 0..{n}", a.max(c))));
        }
        if a == c {
            return Err(el_err(lineno, format!("self-loop at vertex {a}")));
        }
        b.add_edge(a, c);
    }
    Ok(b.build())
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for e in g.edges() {
        s.push_str(&format!("{} {}\n", e.u(), e.v()));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
    }

    #[test]
    fn known_graph6_strings() {
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&complete(4)), "C~");
        assert_eq!(to_graph6(&complete(5)), "D~{");
        // K4: header byte plus ceil(6/6) data byte
        assert_eq!(to_graph6(&complete(4)).len(), 2);
        assert_eq!(parse_graph6(b"D~{\n").unwrap(), complete(5));
        assert_eq!(parse_graph6(b">>graph6<<C~").unwrap(), complete(4));
    }

    #[test]
    fn long_header_roundtrip() {
        let g = Graph::from_edges(70, (0..69).map(|i| (i, i + 1))).unwrap();
        let s = to_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(parse_graph6(s.as_bytes()).unwrap(), g);
    }

    #[test]
    fn graph6_errors() {
        assert!(parse_graph6(b"").is_err());
        assert!(parse_graph6(b"D~").is_err()); // truncated
        assert!(parse_graph6(b"D~{{").is_err()); // trailing byte
        assert!(parse_graph6(b"C!").is_err()); // byte below 63
        assert!(parse_graph6(b"B@").is_err()); // padding bit set: n=3 has 3 bits
    }

    #[test]
    fn edge_list_path() {
        let g = parse_edge_list(b"3\n0 1\n1 2\n").unwrap();
        assert_eq!(g.degree_sequence(), vec![1, 2, 1]);
    }

    #[test]
    fn edge_list_errors_name_the_line() {
        let e = parse_edge_list(b"2\n0 0\n").unwrap_err();
        assert_eq!(e, ParseError::EdgeList { line: 2, message: "self-loop at vertex 0".into() });
        let e = parse_edge_list(b"2\n0 1\n\n1 5\n").unwrap_err();
        assert!(matches!(e, ParseError::EdgeList { line: 4, .. }));
        assert!(matches!(parse_edge_list(b"x\n"), Err(ParseError::EdgeList { line: 1, .. })));
        assert!(parse_edge_list(b"3\n0 1 2\n").is_err());
    }

    #[test]
    fn c5_edge_list_has_five_lines() {
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let text = to_edge_list(&c5);
        assert_eq!(text.lines().count(), 6);
        assert_eq!(text.lines().next(), Some("5"));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..=30).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut b = GraphBuilder::new(n);
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            b.add_edge(i, j);
                        }
                        k += 1;
                    }
                }
                b.build()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn roundtrip_both_formats(g in arb_graph()) {
            for f in [Format::Graph6, Format::EdgeList] {
                let text = serialize_graph(&g, f);
                prop_assert_eq!(parse_graph(&text, f).unwrap(), g.clone());
            }
        }
    }
}
