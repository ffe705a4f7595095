//! Plain-text edge stream files.
//!
//! ```text
//! n 4 len 3
//! 1 2
//! 2 3
//! 3 4
//! ```
//!
//! The header gives the vertex-count hint and the number of edge lines.
//! Vertex ids lie in `1..=n`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use slidewin_core::{Edge, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamFile {
    pub n: VertexId,
    pub edges: Vec<Edge>,
}

impl StreamFile {
    /// Wraps `edges`, taking the largest endpoint as the vertex hint when
    /// `n` is `None`.
    pub fn new(n: Option<VertexId>, edges: Vec<Edge>) -> Result<Self> {
        let top = edges.iter().map(Edge::v).max().unwrap_or(0);
        let n = n.unwrap_or(top);
        if top > n {
            bail!("edge endpoint {top} exceeds the vertex hint {n}");
        }
        Ok(Self { n, edges })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().context("missing header line")?;
        let (n, len) = parse_header(header)?;
        let mut edges = Vec::with_capacity(len.min(1 << 20));
        for (idx, line) in lines {
            let lineno = idx + 1;
            if edges.len() == len {
                if line.trim().is_empty() {
                    continue;
                }
                bail!("line {lineno}: more edges than the header's len {len}");
            }
            let mut parts = line.split_whitespace();
            let (Some(u), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
                bail!("line {lineno}: expected `u v`, got {line:?}");
            };
            let u: VertexId = u
                .parse()
                .with_context(|| format!("line {lineno}: bad vertex id {u:?}"))?;
            let v: VertexId = v
                .parse()
                .with_context(|| format!("line {lineno}: bad vertex id {v:?}"))?;
            if u > n || v > n {
                bail!("line {lineno}: vertex id outside 1..={n}");
            }
            let e = Edge::new(u, v).with_context(|| format!("line {lineno}"))?;
            edges.push(e);
        }
        if edges.len() != len {
            bail!("header promises {len} edges, found {}", edges.len());
        }
        Ok(Self { n, edges })
    }

    pub fn emit(&self) -> String {
        let mut out = String::with_capacity(16 + 12 * self.edges.len());
        writeln!(out, "n {} len {}", self.n, self.edges.len()).unwrap();
        for e in &self.edges {
            writeln!(out, "{} {}", e.u(), e.v()).unwrap();
        }
        out
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.emit()).with_context(|| format!("writing {}", path.display()))
    }
}

fn parse_header(line: &str) -> Result<(VertexId, usize)> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    match parts.as_slice() {
        ["n", n, "len", len] => Ok((
            n.parse()
                .with_context(|| format!("bad vertex count {n:?}"))?,
            len.parse().with_context(|| format!("bad length {len:?}"))?,
        )),
        _ => bail!("header must read `n <N> len <L>`, got {line:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_small_file() {
        let s = StreamFile::parse("n 4 len 3\n1 2\n3 2\n3 4\n").unwrap();
        assert_eq!(s.n, 4);
        assert_eq!(s.edges[1], Edge::new(2, 3).unwrap());
        assert_eq!(s.emit(), "n 4 len 3\n1 2\n2 3\n3 4\n");
    }

    #[test]
    fn empty_stream() {
        let s = StreamFile::parse("n 0 len 0\n").unwrap();
        assert!(s.edges.is_empty());
        assert_eq!(StreamFile::new(None, vec![]).unwrap().emit(), "n 0 len 0\n");
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "",
            "n 4\n",
            "n 4 len 2\n1 2\n",
            "n 4 len 1\n1 2\n2 3\n",
            "n 4 len 1\n1 5\n",
            "n 4 len 1\n2 2\n",
            "n 4 len 1\n0 1\n",
            "n 4 len 1\n1 2 3\n",
            "n 4 len 1\nx 2\n",
        ] {
            assert!(StreamFile::parse(bad).is_err(), "{bad:?}");
        }
        assert!(StreamFile::new(Some(2), vec![Edge::new(1, 3).unwrap()]).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(pairs in prop::collection::vec((1u32..50, 1u32..50), 0..100)) {
            let edges: Vec<Edge> = pairs
                .into_iter()
                .filter(|(u, v)| u != v)
                .map(|(u, v)| Edge::new(u, v).unwrap())
                .collect();
            let s = StreamFile::new(Some(50), edges).unwrap();
            prop_assert_eq!(StreamFile::parse(&s.emit()).unwrap(), s);
        }
    }
}
