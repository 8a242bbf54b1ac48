//! Versioned TOML formats for W-graphs, Gram matrices and invariant tables.
//!
//! W-graph files:
//!
//! ```toml
//! format = "hecke-wgraph/1"
//! type = "G2"
//! rank = 2
//! label = "r"
//! dimension = 2
//!
//! [[node]]
//! id = "x"
//! tau = [1]          # generators in I(x), 1-based
//!
//! [[edge]]
//! from = "x"
//! to = "y"
//! mu = 1             # mu_{x,y}
//! undirected = false # true also adds the reverse edge with the same mu
//! ```
//!
//! Gram files store row-major entries; each entry is a Laurent polynomial in
//! `v` written as space-separated `exponent:coefficient` pairs in ascending
//! exponent order, with `"0"` for the zero polynomial.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gram::GramMatrix;
use crate::rings::laurent::LaurentPoly;
use crate::rings::matrix::Matrix;
use crate::weyl::{IrrLabel, WeylType};
use crate::wgraph::{Edge, Node, WGraph};

pub const WGRAPH_FORMAT: &str = "hecke-wgraph/1";
pub const GRAM_FORMAT: &str = "hecke-gram/1";
pub const INVARIANTS_FORMAT: &str = "hecke-invariants/1";

/// Normalization recorded in every Gram file.
pub const NORMALIZATION: &str = "primitive in Z[v], first nonzero entry has positive leading coefficient";

fn check_version(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(Error::VersionMismatch { expected: expected.into(), found: found.into() });
    }
    Ok(())
}

fn from_toml<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn to_toml<T: Serialize>(doc: &T) -> String {
    toml::to_string(doc).expect("documents serialize")
}

/// Reads only the `format` key so that a version mismatch is reported before
/// any schema error.
#[derive(Deserialize)]
struct Header {
    format: String,
}

#[derive(Serialize, Deserialize)]
struct WGraphDoc {
    format: String,
    #[serde(rename = "type")]
    weyl: String,
    rank: usize,
    label: String,
    dimension: usize,
    #[serde(default, rename = "node")]
    nodes: Vec<NodeDoc>,
    #[serde(default, rename = "edge")]
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
struct NodeDoc {
    id: String,
    tau: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    from: String,
    to: String,
    mu: i64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    undirected: bool,
}

/// Parses and validates a W-graph file.
pub fn parse_wgraph(text: &str) -> Result<WGraph> {
    let header: Header = from_toml(text)?;
    check_version(&header.format, WGRAPH_FORMAT)?;
    let doc: WGraphDoc = from_toml(text)?;
    let weyl: WeylType = doc.weyl.parse()?;
    if weyl.rank() != doc.rank {
        return Err(Error::Parse(format!("type {weyl} has rank {}, header says {}", weyl.rank(), doc.rank)));
    }
    if doc.nodes.len() != doc.dimension {
        return Err(Error::Parse(format!("{} nodes, header says dimension {}", doc.nodes.len(), doc.dimension)));
    }
    let nodes = doc
        .nodes
        .into_iter()
        .map(|n| {
            let tau = n
                .tau
                .iter()
                .map(|&s| if s == 0 { Err(Error::Parse(format!("node '{}': generators are numbered from 1", n.id))) } else { Ok(s - 1) })
                .collect::<Result<BTreeSet<usize>>>()?;
            Ok(Node { id: n.id, tau })
        })
        .collect::<Result<Vec<_>>>()?;
    let index = |id: &str| nodes.iter().position(|n| n.id == id).ok_or_else(|| Error::Parse(format!("edge refers to unknown node '{id}'")));
    let mut edges = Vec::new();
    for e in &doc.edges {
        let (from, to) = (index(&e.from)?, index(&e.to)?);
        edges.push(Edge { from, to, mu: e.mu });
        if e.undirected {
            edges.push(Edge { from: to, to: from, mu: e.mu });
        }
    }
    WGraph::new(weyl, doc.label, nodes, edges)
}

/// Serializes a W-graph; pairs of opposite edges with equal weight are
/// written once with `undirected = true`.
pub fn write_wgraph(g: &WGraph) -> String {
    let mut edges = Vec::new();
    let mut folded = vec![false; g.edges.len()];
    for (i, e) in g.edges.iter().enumerate() {
        if folded[i] {
            continue;
        }
        let twin = g.edges.iter().enumerate().position(|(j, f)| j > i && !folded[j] && f.from == e.to && f.to == e.from && f.mu == e.mu);
        if let Some(j) = twin {
            folded[j] = true;
        }
        edges.push(EdgeDoc { from: g.nodes[e.from].id.clone(), to: g.nodes[e.to].id.clone(), mu: e.mu, undirected: twin.is_some() });
    }
    let doc = WGraphDoc {
        format: WGRAPH_FORMAT.into(),
        weyl: g.weyl.to_string(),
        rank: g.weyl.rank(),
        label: g.label.clone(),
        dimension: g.dim(),
        nodes: g.nodes.iter().map(|n| NodeDoc { id: n.id.clone(), tau: n.tau.iter().map(|s| s + 1).collect() }).collect(),
        edges,
    };
    to_toml(&doc)
}

/// `"0:1 2:3"` for `1 + 3v^2`; `"0"` for zero.
pub fn format_laurent(p: &LaurentPoly<BigInt>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.terms().map(|(e, c)| format!("{e}:{c}")).collect::<Vec<_>>().join(" ")
}

/// Inverse of [`format_laurent`]; exponents must be strictly ascending.
pub fn parse_laurent(s: &str) -> Result<LaurentPoly<BigInt>> {
    let s = s.trim();
    if s == "0" {
        return Ok(LaurentPoly::zero());
    }
    let mut terms = Vec::new();
    let mut last: Option<i64> = None;
    for tok in s.split_whitespace() {
        let (e, c) = tok.split_once(':').ok_or_else(|| Error::Parse(format!("term '{tok}' is not exponent:coefficient")))?;
        let e: i64 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in '{tok}'")))?;
        let c: BigInt = c.parse().map_err(|_| Error::Parse(format!("bad coefficient in '{tok}'")))?;
        if last.is_some_and(|l| l >= e) {
            return Err(Error::Parse(format!("exponents not ascending at '{tok}'")));
        }
        if c == BigInt::from(0) {
            return Err(Error::Parse(format!("zero coefficient in '{tok}'")));
        }
        last = Some(e);
        terms.push((e, c));
    }
    Ok(LaurentPoly::from_terms(terms))
}

#[derive(Serialize, Deserialize)]
struct GramDoc {
    format: String,
    #[serde(rename = "type")]
    weyl: String,
    label: String,
    dimension: usize,
    normalization: String,
    entries: Vec<Vec<String>>,
}

/// Serializes a normalized Gram matrix.
pub fn write_gram(q: &GramMatrix) -> String {
    let doc = GramDoc {
        format: GRAM_FORMAT.into(),
        weyl: q.weyl.to_string(),
        label: q.label.clone(),
        dimension: q.dim(),
        normalization: NORMALIZATION.into(),
        entries: q.q.row_vecs().iter().map(|r| r.iter().map(format_laurent).collect()).collect(),
    };
    to_toml(&doc)
}

/// Parses a Gram file, checking shape and the recorded normalization.
pub fn parse_gram(text: &str) -> Result<GramMatrix> {
    let g = parse_gram_unchecked(text)?;
    if !(g.is_primitive() && g.sign_rule_holds() && g.is_symmetric()) {
        return Err(Error::Parse("entries do not satisfy the recorded normalization".into()));
    }
    Ok(g)
}

/// Parses a Gram-shaped file without normalization checks; used for
/// reference matrices that are not primitive, such as cellular Gram matrices.
pub fn parse_gram_unchecked(text: &str) -> Result<GramMatrix> {
    let header: Header = from_toml(text)?;
    check_version(&header.format, GRAM_FORMAT)?;
    let doc: GramDoc = from_toml(text)?;
    let weyl: WeylType = doc.weyl.parse()?;
    let d = doc.dimension;
    if doc.entries.len() != d || doc.entries.iter().any(|r| r.len() != d) {
        return Err(Error::Parse(format!("entries are not a {d} x {d} matrix")));
    }
    let rows = doc.entries.iter().map(|r| r.iter().map(|s| parse_laurent(s)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    Ok(GramMatrix { weyl, label: doc.label, q: Matrix::from_rows(d, rows) })
}

#[derive(Serialize, Deserialize)]
struct InvariantsDoc {
    format: String,
    #[serde(rename = "type")]
    weyl: String,
    #[serde(default)]
    irr: Vec<IrrDoc>,
}

#[derive(Serialize, Deserialize)]
struct IrrDoc {
    label: String,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    f: Option<i64>,
}

/// Parses a table of irreducible labels with optional `a` and `f` values.
pub fn parse_invariants(text: &str) -> Result<(WeylType, Vec<IrrLabel>)> {
    let header: Header = from_toml(text)?;
    check_version(&header.format, INVARIANTS_FORMAT)?;
    let doc: InvariantsDoc = from_toml(text)?;
    let weyl: WeylType = doc.weyl.parse()?;
    let labels = doc.irr.into_iter().map(|r| IrrLabel { name: r.label, dim: r.dim, a: r.a, f: r.f.map(BigInt::from) }).collect();
    Ok((weyl, labels))
}

pub fn write_invariants(weyl: &WeylType, labels: &[IrrLabel]) -> String {
    let doc = InvariantsDoc {
        format: INVARIANTS_FORMAT.into(),
        weyl: weyl.to_string(),
        irr: labels
            .iter()
            .map(|l| IrrDoc {
                label: l.name.clone(),
                dim: l.dim,
                a: l.a,
                f: l.f.as_ref().map(|f| i64::try_from(f).expect("f fits in i64")),
            })
            .collect(),
    };
    to_toml(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::laurent::lp;

    const R: &str = r#"
format = "hecke-wgraph/1"
type = "G2"
rank = 2
label = "r"
dimension = 2

[[node]]
id = "x"
tau = [1]

[[node]]
id = "y"
tau = [2]

[[edge]]
from = "x"
to = "y"
mu = 1

[[edge]]
from = "y"
to = "x"
mu = 3
"#;

    #[test]
    fn wgraph_round_trip() {
        let g = parse_wgraph(R).unwrap();
        assert_eq!(g.edges, vec![Edge { from: 0, to: 1, mu: 1 }, Edge { from: 1, to: 0, mu: 3 }]);
        assert_eq!(parse_wgraph(&write_wgraph(&g)).unwrap(), g);
        let sym = R.replace("mu = 3", "mu = 1");
        let g = parse_wgraph(&sym).unwrap();
        let text = write_wgraph(&g);
        assert!(text.contains("undirected = true"));
        assert_eq!(parse_wgraph(&text).unwrap(), g);
    }

    #[test]
    fn wgraph_rejections() {
        let bad_version = R.replace("hecke-wgraph/1", "hecke-wgraph/2");
        assert!(matches!(parse_wgraph(&bad_version), Err(Error::VersionMismatch { .. })));
        assert!(parse_wgraph(&R.replace("dimension = 2", "dimension = 3")).is_err());
        assert!(parse_wgraph(&R.replace("tau = [2]", "tau = [3]")).is_err());
        assert!(parse_wgraph(&R.replace("to = \"y\"", "to = \"z\"")).is_err());
        assert!(parse_wgraph(&R.replace("rank = 2", "rank = 3")).is_err());
    }

    #[test]
    fn laurent_strings() {
        let p = lp(&[(-1, 2), (0, -3), (5, 1)]);
        assert_eq!(format_laurent(&p), "-1:2 0:-3 5:1");
        assert_eq!(parse_laurent("-1:2 0:-3 5:1").unwrap(), p);
        assert_eq!(parse_laurent("0").unwrap(), LaurentPoly::zero());
        assert!(parse_laurent("2:1 1:1").is_err());
        assert!(parse_laurent("1:0").is_err());
    }

    #[test]
    fn gram_round_trip() {
        let q = GramMatrix {
            weyl: "G2".parse().unwrap(),
            label: "r'".into(),
            q: Matrix::from_rows(2, vec![vec![lp(&[(0, 1), (2, 1)]), lp(&[(1, -1)])], vec![lp(&[(1, -1)]), lp(&[(0, 1), (2, 1)])]]),
        };
        let text = write_gram(&q);
        assert_eq!(parse_gram(&text).unwrap(), q);
        let scaled = text.replace("\"0:1 2:1\"", "\"0:2 2:2\"").replace("\"1:-1\"", "\"1:-2\"");
        assert!(parse_gram(&scaled).is_err());
        assert!(parse_gram_unchecked(&scaled).is_ok());
    }

    #[test]
    fn invariants_round_trip() {
        let t: WeylType = "E6".parse().unwrap();
        let labels = vec![IrrLabel::new("1_p", 1).with_invariants(0, 1), IrrLabel { name: "10_s".into(), dim: 10, a: Some(7), f: None }];
        let text = write_invariants(&t, &labels);
        assert_eq!(parse_invariants(&text).unwrap(), (t, labels));
    }
}
