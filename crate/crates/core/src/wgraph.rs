//! W-graphs and the representations they afford.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rings::field::{Field, Ring};
use crate::rings::laurent::{lp, LaurentPoly, LaurentRing};
use crate::rings::matrix::{self, Matrix};
use crate::weyl::WeylType;

/// A node of a W-graph with its subset `I(x)` of generators (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub tau: BTreeSet<usize>,
}

/// A directed edge carrying `mu_{from,to}`: the coefficient of `v e_from` in
/// `sigma_s(e_to)` for generators `s` in `I(from)` but not in `I(to)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub mu: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WGraph {
    pub weyl: WeylType,
    pub label: String,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
}

impl WGraph {
    /// Validates node ids, generator ranges, self-edges and zero weights.
    pub fn new(weyl: WeylType, label: impl Into<String>, nodes: Vec<Node>, edges: Vec<Edge>) -> Result<Self> {
        let n = weyl.rank();
        let mut ids = HashSet::new();
        for node in &nodes {
            if !ids.insert(node.id.as_str()) {
                return Err(Error::Parse(format!("duplicate node id '{}'", node.id)));
            }
            if let Some(s) = node.tau.iter().find(|&&s| s >= n) {
                return Err(Error::Parse(format!("node '{}' uses generator {} outside 1..{n}", node.id, s + 1)));
            }
        }
        let mut pairs = HashSet::new();
        for e in &edges {
            if e.from >= nodes.len() || e.to >= nodes.len() {
                return Err(Error::Parse("edge refers to a missing node".into()));
            }
            if e.from == e.to {
                return Err(Error::Parse(format!("self-edge at node '{}'", nodes[e.from].id)));
            }
            if e.mu == 0 {
                return Err(Error::Parse("edge weight must be nonzero".into()));
            }
            if !pairs.insert((e.from, e.to)) {
                return Err(Error::Parse(format!("edge '{}' -> '{}' given twice", nodes[e.from].id, nodes[e.to].id)));
            }
        }
        Ok(WGraph { weyl, label: label.into(), nodes, edges })
    }

    pub fn dim(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }
}

/// One matrix over `Z[v]` per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMatrices {
    pub weyl: WeylType,
    pub label: String,
    pub gens: Vec<Matrix<LaurentPoly<BigInt>>>,
}

impl GenMatrices {
    pub fn dim(&self) -> usize {
        self.gens.first().map_or(0, Matrix::rows)
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// `sigma(T_w) * target` for the word `w = (s_1, ..., s_k)`, i.e. the
    /// product `sigma_{s_1} ... sigma_{s_k} target`.
    pub fn apply_word(&self, word: &[usize], target: &Matrix<LaurentPoly<BigInt>>) -> Result<Matrix<LaurentPoly<BigInt>>> {
        apply_word(&LaurentRing, &self.gens, word, target)
    }

    /// `sigma(T_w)`.
    pub fn word_matrix(&self, word: &[usize]) -> Matrix<LaurentPoly<BigInt>> {
        self.apply_word(word, &matrix::identity(&LaurentRing, self.dim())).expect("square generators")
    }
}

/// Column `y` of `sigma_s` is `-e_y` if `s` is in `I(y)`, and otherwise
/// `v^2 e_y + sum_{x : s in I(x)} v mu_{x,y} e_x`.
pub fn build_generator_matrices(g: &WGraph) -> GenMatrices {
    let d = g.dim();
    let gens = (0..g.weyl.rank())
        .map(|s| {
            let mut m = matrix::zeros(&LaurentRing, d, d);
            for (y, node) in g.nodes.iter().enumerate() {
                if node.tau.contains(&s) {
                    m.set(y, y, lp(&[(0, -1)]));
                } else {
                    m.set(y, y, lp(&[(2, 1)]));
                }
            }
            for e in &g.edges {
                if g.nodes[e.from].tau.contains(&s) && !g.nodes[e.to].tau.contains(&s) {
                    m.set(e.from, e.to, lp(&[(1, e.mu)]));
                }
            }
            m
        })
        .collect();
    GenMatrices { weyl: g.weyl, label: g.label.clone(), gens }
}

/// A defining relation of the Hecke algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `(T_s - u)(T_s + 1) = 0`.
    Quadratic(usize),
    /// `T_s T_t T_s ... = T_t T_s T_t ...` with `m_st` factors on each side.
    Braid(usize, usize),
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Relation::Quadratic(s) => write!(f, "quadratic relation for s{}", s + 1),
            Relation::Braid(s, t) => write!(f, "braid relation for (s{}, s{})", s + 1, t + 1),
        }
    }
}

/// Result of [`verify_representation`]: `None` if all relations hold.
pub type RepReport = Option<Relation>;

fn alternating_product<R: Ring>(r: &R, gens: &[Matrix<R::Elem>], s: usize, t: usize, m: u32) -> Matrix<R::Elem> {
    let word: Vec<usize> = (0..m).map(|i| if i % 2 == 0 { s } else { t }).collect();
    apply_word(r, gens, &word, &matrix::identity(r, gens[0].rows())).expect("square generators")
}

/// Checks the quadratic relations and all braid relations; returns the first
/// failing relation in the order quadratic(s) ascending, then braid(s, t)
/// with `s < t` lexicographic.
pub fn verify_representation(m: &GenMatrices) -> RepReport {
    verify_relations(&LaurentRing, &m.weyl, &m.gens, &lp(&[(2, 1)]))
}

/// [`verify_representation`] for matrices over any ring, with `q` the image of `u`.
pub fn verify_relations<R: Ring>(r: &R, weyl: &WeylType, gens: &[Matrix<R::Elem>], q: &R::Elem) -> RepReport {
    let n = gens.len();
    if gens.is_empty() {
        return None;
    }
    let d = gens[0].rows();
    let id = matrix::identity(r, d);
    for (s, g) in gens.iter().enumerate() {
        let a = matrix::sub(r, g, &matrix::scale(r, &id, q));
        let b = matrix::add(r, g, &id);
        let prod = matrix::mul(r, &a, &b).expect("square generators");
        if !matrix::is_zero_matrix(r, &prod) {
            return Some(Relation::Quadratic(s));
        }
    }
    let cox = weyl.coxeter_matrix();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|s| (s + 1..n).map(move |t| (s, t))).collect();
    let failures: Vec<bool> = pairs
        .par_iter()
        .map(|&(s, t)| {
            let m = cox[s][t];
            alternating_product(r, gens, s, t, m) != alternating_product(r, gens, t, s, m)
        })
        .collect();
    pairs.into_iter().zip(failures).find(|(_, bad)| *bad).map(|((s, t), _)| Relation::Braid(s, t))
}

/// `sigma_{w_1} ... sigma_{w_k} * target` over any ring.
pub fn apply_word<R: Ring>(r: &R, gens: &[Matrix<R::Elem>], word: &[usize], target: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    let mut acc = target.clone();
    for &s in word.iter().rev() {
        let g = gens.get(s).ok_or_else(|| Error::DimensionMismatch(format!("generator {} out of range", s + 1)))?;
        acc = matrix::mul(r, g, &acc)?;
    }
    Ok(acc)
}

/// `sigma_{w_1} ... sigma_{w_k} * x` for a vector `x`.
pub fn apply_word_vec<R: Ring>(r: &R, gens: &[Matrix<R::Elem>], word: &[usize], x: &[R::Elem]) -> Result<Vec<R::Elem>> {
    let mut acc = x.to_vec();
    for &s in word.iter().rev() {
        let g = gens.get(s).ok_or_else(|| Error::DimensionMismatch(format!("generator {} out of range", s + 1)))?;
        acc = matrix::mul_vec(r, g, &acc)?;
    }
    Ok(acc)
}

/// Entrywise image under `v -> theta` in the field `f`.
pub fn specialize_generators<F: Field>(m: &GenMatrices, f: &F, theta: &F::Elem) -> Result<Vec<Matrix<F::Elem>>> {
    if f.is_zero(theta) {
        return Err(Error::DegenerateSpecialization("v must map to a unit".into()));
    }
    m.gens
        .iter()
        .map(|g| {
            g.try_map(|p| p.eval(f, theta).ok_or_else(|| Error::DegenerateSpecialization("coefficient not defined in target field".into())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::field::Rationals;
    use crate::rings::finite_field::FiniteField;

    fn g2() -> WeylType {
        "G2".parse().unwrap()
    }

    fn one_node(tau: &[usize]) -> WGraph {
        let node = Node { id: "x".into(), tau: tau.iter().copied().collect() };
        WGraph::new(g2(), "test", vec![node], vec![]).unwrap()
    }

    fn two_node(mu_xy: i64, mu_yx: i64) -> WGraph {
        let nodes = vec![Node { id: "x".into(), tau: [0].into() }, Node { id: "y".into(), tau: [1].into() }];
        let edges = vec![Edge { from: 0, to: 1, mu: mu_xy }, Edge { from: 1, to: 0, mu: mu_yx }];
        WGraph::new(g2(), "test", nodes, edges).unwrap()
    }

    #[test]
    fn one_dimensional_graphs() {
        let triv = build_generator_matrices(&one_node(&[]));
        assert!(triv.gens.iter().all(|g| g.get(0, 0) == &lp(&[(2, 1)])));
        assert_eq!(verify_representation(&triv), None);
        let sign = build_generator_matrices(&one_node(&[0, 1]));
        assert!(sign.gens.iter().all(|g| g.get(0, 0) == &lp(&[(0, -1)])));
        assert_eq!(verify_representation(&sign), None);
    }

    #[test]
    fn dihedral_braid_search() {
        // Exactly the weight pairs with product 1 or 3 satisfy the m = 6 braid relation.
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                if a == 0 || b == 0 {
                    continue;
                }
                let ok = verify_representation(&build_generator_matrices(&two_node(a, b))).is_none();
                assert_eq!(ok, a * b == 1 || a * b == 3, "mu = ({a}, {b})");
            }
        }
    }

    #[test]
    fn words_and_specialization() {
        let m = build_generator_matrices(&two_node(1, 3));
        let id = matrix::identity(&LaurentRing, 2);
        assert_eq!(m.apply_word(&[], &id).unwrap(), id);
        assert_eq!(m.apply_word(&[1], &id).unwrap(), m.gens[1]);
        assert!(m.apply_word(&[2], &id).is_err());
        // At v = 1 the generators are reflections.
        let at_one = specialize_generators(&m, &Rationals, &num_rational::BigRational::from_integer(1.into())).unwrap();
        for g in &at_one {
            let sq = matrix::mul(&Rationals, g, g).unwrap();
            assert_eq!(sq, matrix::identity(&Rationals, 2));
        }
        // v of order 12 in GF(13): xi = v^2 has order 6.
        let f = FiniteField::new(13, 1).unwrap();
        let theta = f.canonical_root_of_unity(12).unwrap();
        let sp = specialize_generators(&m, &f, &theta).unwrap();
        let q = f.mul(&theta, &theta);
        assert_eq!(verify_relations(&f, &g2(), &sp, &q), None);
    }

    #[test]
    fn rejects_malformed() {
        let nodes = vec![Node { id: "x".into(), tau: [5].into() }];
        assert!(WGraph::new(g2(), "bad", nodes, vec![]).is_err());
        let nodes = vec![Node { id: "x".into(), tau: [].into() }, Node { id: "x".into(), tau: [].into() }];
        assert!(WGraph::new(g2(), "bad", nodes, vec![]).is_err());
    }
}
