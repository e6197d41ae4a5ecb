//! graph6 and JSON edge-list encodings.

use serde::{Deserialize, Serialize};

use super::{Graph, MAX_ORDER};
use crate::error::{Error, Result};

/// JSON form `{"n": int, "edges": [[u, v], ...]}`, edges sorted with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(j.n, &edges)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        Graph::try_from(j).map_err(serde::de::Error::custom)
    }
}

const HEADER: &str = ">>graph6<<";

impl Graph {
    pub fn to_graph6(&self) -> String {
        let n = self.n();
        let mut out = Vec::new();
        if n <= 62 {
            out.push(n as u8 + 63);
        } else {
            out.push(126);
            out.push(((n >> 12) & 63) as u8 + 63);
            out.push(((n >> 6) & 63) as u8 + 63);
            out.push((n & 63) as u8 + 63);
        }
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | self.has_edge(i, j) as u8;
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
        String::from_utf8(out).expect("graph6 bytes are printable ASCII")
    }

    pub fn from_graph6(text: &str) -> Result<Graph> {
        let text = text.trim();
        let text = text.strip_prefix(HEADER).unwrap_or(text);
        let bytes = text.as_bytes();
        if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
            return Err(Error::Parse("graph6 contains a byte outside 63..=126".into()));
        }
        let (n, body) = match bytes {
            [] => return Err(Error::Parse("empty graph6 string".into())),
            [126, 126, ..] => return Err(Error::Parse("graph6 order above 258047 is unsupported".into())),
            [126, a, b, c, rest @ ..] => {
                let n = ((*a as usize - 63) << 12) | ((*b as usize - 63) << 6) | (*c as usize - 63);
                (n, rest)
            }
            [126, ..] => return Err(Error::Parse("truncated graph6 order".into())),
            [first, rest @ ..] => (*first as usize - 63, rest),
        };
        if n > MAX_ORDER {
            return Err(Error::SizeLimit {
                what: "vertex count",
                got: n,
                max: MAX_ORDER,
            });
        }
        let needed = super::pair_count(n).div_ceil(6);
        if body.len() != needed {
            return Err(Error::Parse(format!(
                "graph6 body has {} bytes, expected {needed} for n = {n}",
                body.len()
            )));
        }
        let mut g = Graph::empty(n)?;
        let mut pos = 0;
        for j in 1..n {
            for i in 0..j {
                let byte = body[pos / 6] - 63;
                if (byte >> (5 - pos % 6)) & 1 == 1 {
                    g.set_edge(i, j, true);
                }
                pos += 1;
            }
        }
        Ok(g)
    }
}

/// Parses either the JSON edge-list form or graph6, chosen by the first
/// non-blank character.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))
    } else {
        Graph::from_graph6(trimmed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, Family};

    #[test]
    fn known_graph6_strings() {
        // same five-vertex graph as petgraph's graph6 test: edges 02 04 13 34
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(g.to_graph6(), "DQc");
        assert_eq!(Graph::from_graph6("DQc").unwrap(), g);
        assert_eq!(named_graph(Family::Complete, 4).unwrap().to_graph6(), "C~");
        assert_eq!(Graph::empty(1).unwrap().to_graph6(), "@");
    }

    #[test]
    fn header_and_large_order() {
        let g = named_graph(Family::Cycle, 64).unwrap();
        let s = g.to_graph6();
        assert!(s.starts_with('~'));
        assert_eq!(Graph::from_graph6(&format!(">>graph6<<{s}\n")).unwrap(), g);
    }

    #[test]
    fn malformed_graph6() {
        assert!(Graph::from_graph6("").is_err());
        assert!(Graph::from_graph6("D").is_err());
        assert!(Graph::from_graph6("DQcc").is_err());
        assert!(Graph::from_graph6("D Q").is_err());
    }

    #[test]
    fn json_form_is_sorted() {
        let g = Graph::from_edges(4, &[(3, 1), (2, 0), (0, 1)]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":4,"edges":[[0,1],[0,2],[1,3]]}"#);
        assert_eq!(parse_graph(&s).unwrap(), g);
        assert_eq!(parse_graph(&g.to_graph6()).unwrap(), g);
        assert!(parse_graph(r#"{"n":3,"edges":[[0,0]]}"#).is_err());
    }
}
