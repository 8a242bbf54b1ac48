//! Built-in datasets: the six W-graphs of G2 with reference cellular Gram
//! matrices, and the 10-dimensional E6 W-graph `10_s` with its Gram matrix.

use crate::error::Result;
use crate::formats::{parse_gram, parse_gram_unchecked, parse_invariants, parse_wgraph};
use crate::gram::GramMatrix;
use crate::weyl::{IrrLabel, WeylType};
use crate::wgraph::WGraph;

/// G2 labels in the order `1, eps1, eps2, r, r', eps`.
pub const G2_LABELS: [&str; 6] = ["1", "eps1", "eps2", "r", "r'", "eps"];

const G2_WGRAPHS: [(&str, &str); 6] = [
    ("1", include_str!("../data/g2_1.toml")),
    ("eps1", include_str!("../data/g2_eps1.toml")),
    ("eps2", include_str!("../data/g2_eps2.toml")),
    ("r", include_str!("../data/g2_r.toml")),
    ("r'", include_str!("../data/g2_rp.toml")),
    ("eps", include_str!("../data/g2_eps.toml")),
];

const G2_CELLULAR: [(&str, &str); 6] = [
    ("1", include_str!("../data/g2_cellular_1.toml")),
    ("eps1", include_str!("../data/g2_cellular_eps1.toml")),
    ("eps2", include_str!("../data/g2_cellular_eps2.toml")),
    ("r", include_str!("../data/g2_cellular_r.toml")),
    ("r'", include_str!("../data/g2_cellular_rp.toml")),
    ("eps", include_str!("../data/g2_cellular_eps.toml")),
];

pub const E6_10S_WGRAPH: &str = include_str!("../data/e6_10s.toml");
pub const E6_10S_GRAM: &str = include_str!("../data/e6_10s_gram.toml");
pub const E6_INVARIANTS: &str = include_str!("../data/e6_invariants.toml");

/// Raw text of a built-in W-graph, by name: `g2_<label>` or `e6_10s`.
pub fn wgraph_text(name: &str) -> Option<&'static str> {
    if name == "e6_10s" {
        return Some(E6_10S_WGRAPH);
    }
    let label = name.strip_prefix("g2_")?;
    let label = if label == "rp" { "r'" } else { label };
    let label = if label == "trivial" { "1" } else { label };
    G2_WGRAPHS.iter().find(|(l, _)| *l == label).map(|(_, t)| *t)
}

/// All six G2 W-graphs in [`G2_LABELS`] order.
pub fn g2_wgraphs() -> Vec<WGraph> {
    G2_WGRAPHS.iter().map(|(_, t)| parse_wgraph(t).expect("bundled W-graph parses")).collect()
}

pub fn g2_wgraph(label: &str) -> Option<WGraph> {
    G2_WGRAPHS.iter().find(|(l, _)| *l == label).map(|(_, t)| parse_wgraph(t).expect("bundled W-graph parses"))
}

/// Reference cellular Gram matrices of G2 in [`G2_LABELS`] order.
pub fn g2_cellular_grams() -> Vec<GramMatrix> {
    G2_CELLULAR.iter().map(|(_, t)| parse_gram_unchecked(t).expect("bundled Gram matrix parses")).collect()
}

pub fn e6_10s_wgraph() -> WGraph {
    parse_wgraph(E6_10S_WGRAPH).expect("bundled W-graph parses")
}

/// The normalized Gram matrix of `10_s` as printed in the literature.
pub fn e6_10s_gram() -> GramMatrix {
    parse_gram(E6_10S_GRAM).expect("bundled Gram matrix parses")
}

/// Irreducible labels of E6 with known `a` values.
pub fn e6_invariants() -> (WeylType, Vec<IrrLabel>) {
    parse_invariants(E6_INVARIANTS).expect("bundled invariants parse")
}

/// Every built-in W-graph together with its fixture name.
pub fn all_wgraphs() -> Result<Vec<(String, WGraph)>> {
    let mut out: Vec<(String, WGraph)> = G2_WGRAPHS
        .iter()
        .map(|(l, t)| {
            let name = format!("g2_{}", if *l == "r'" { "rp" } else { l });
            Ok((name, parse_wgraph(t)?))
        })
        .collect::<Result<_>>()?;
    out.push(("e6_10s".into(), parse_wgraph(E6_10S_WGRAPH)?));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wgraph::{build_generator_matrices, verify_representation};

    #[test]
    fn bundled_graphs_are_representations() {
        for (name, g) in all_wgraphs().unwrap() {
            assert_eq!(verify_representation(&build_generator_matrices(&g)), None, "{name}");
        }
        assert_eq!(e6_10s_wgraph().dim(), 10);
        assert_eq!(e6_10s_wgraph().edges.len(), 40);
    }

    #[test]
    fn printed_gram_is_invariant() {
        let m = build_generator_matrices(&e6_10s_wgraph());
        assert!(e6_10s_gram().verify_invariance(&m));
    }

    #[test]
    fn lookup_by_name() {
        assert!(wgraph_text("g2_trivial").is_some());
        assert!(wgraph_text("g2_rp").is_some());
        assert!(wgraph_text("e6_10s").is_some());
        assert!(wgraph_text("g2_x").is_none());
        assert_eq!(g2_cellular_grams().len(), 6);
        assert_eq!(e6_invariants().1.iter().find(|l| l.name == "10_s").unwrap().a, Some(7));
    }
}
