//! A small MeatAxe: splitting modules over finite fields into composition
//! factors, Norton's irreducibility test, homomorphism spaces and
//! decomposition matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rings::factor::{charpoly, factor};
use crate::rings::field::Ring;
use crate::rings::finite_field::FiniteField;
use crate::rings::matrix::{self, IncrementalBasis, Matrix};
use crate::rings::poly::Poly;
use crate::weyl::IrrLabel;
use crate::wgraph::{specialize_generators, GenMatrices};

/// A module over a finite field given by one matrix per generator, acting
/// on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FModule {
    pub field: FiniteField,
    pub gens: Vec<Matrix<u32>>,
    pub dim: usize,
}

impl FModule {
    pub fn new(field: FiniteField, gens: Vec<Matrix<u32>>) -> Result<Self> {
        let dim = gens.first().map_or(0, Matrix::rows);
        if gens.iter().any(|g| g.rows() != dim || g.cols() != dim) {
            return Err(Error::DimensionMismatch("generators must be square of equal size".into()));
        }
        Ok(FModule { field, gens, dim })
    }

    /// The specialization of a W-graph representation at `v -> theta`.
    pub fn specialize(m: &GenMatrices, field: &FiniteField, theta: u32) -> Result<Self> {
        FModule::new(field.clone(), specialize_generators(m, field, &theta)?)
    }

    /// `M (+) N`.
    pub fn direct_sum(&self, other: &FModule) -> FModule {
        let d = self.dim + other.dim;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| {
                Matrix::from_fn(d, d, |i, j| match (i < self.dim, j < self.dim) {
                    (true, true) => *a.get(i, j),
                    (false, false) => *b.get(i - self.dim, j - self.dim),
                    _ => 0,
                })
            })
            .collect();
        FModule { field: self.field.clone(), gens, dim: d }
    }

    fn word_matrix(&self, word: &[usize]) -> Matrix<u32> {
        let f = &self.field;
        word.iter().fold(matrix::identity(f, self.dim), |acc, &s| matrix::mul(f, &acc, &self.gens[s]).unwrap())
    }

    /// Traces of all words of length at most 3, shortest first and then
    /// lexicographic; an isomorphism invariant.
    pub fn fingerprint(&self) -> Vec<u32> {
        let f = &self.field;
        let n = self.gens.len();
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut level = vec![vec![]];
        for _ in 0..3 {
            let next: Vec<Vec<usize>> = level
                .iter()
                .flat_map(|w: &Vec<usize>| {
                    (0..n).map(move |s| {
                        let mut x = w.clone();
                        x.push(s);
                        x
                    })
                })
                .collect();
            words.extend(next.iter().cloned());
            level = next;
        }
        words
            .iter()
            .map(|w| {
                let m = self.word_matrix(w);
                (0..self.dim).fold(0, |acc, i| f.add(&acc, m.get(i, i)))
            })
            .collect()
    }

    fn transposed(&self) -> FModule {
        FModule { field: self.field.clone(), gens: self.gens.iter().map(Matrix::transpose).collect(), dim: self.dim }
    }
}

/// Smallest invariant subspace containing the given vectors.
pub fn spin(m: &FModule, seeds: &[Vec<u32>]) -> IncrementalBasis<u32> {
    let f = &m.field;
    let mut basis = IncrementalBasis::new(m.dim);
    let mut queue: Vec<Vec<u32>> = Vec::new();
    for s in seeds {
        if basis.insert(f, s) {
            queue.push(s.clone());
        }
    }
    let mut i = 0;
    while i < queue.len() && basis.rank() < m.dim {
        for g in &m.gens {
            let w = matrix::mul_vec(f, g, &queue[i]).unwrap();
            if basis.insert(f, &w) {
                queue.push(w);
            }
        }
        i += 1;
    }
    basis
}

/// Submodule and quotient actions for a proper invariant subspace.
pub fn split(m: &FModule, sub: &IncrementalBasis<u32>) -> (FModule, FModule) {
    let f = &m.field;
    let k = sub.rank();
    let mut cols: Vec<Vec<u32>> = sub.rows().to_vec();
    for j in 0..m.dim {
        if !sub.pivots().contains(&j) {
            let mut e = vec![0; m.dim];
            e[j] = f.one();
            cols.push(e);
        }
    }
    let p = Matrix::from_columns(m.dim, &cols);
    let pinv = matrix::inverse(f, &p).expect("completed basis is invertible");
    let mut subs = Vec::new();
    let mut quots = Vec::new();
    for g in &m.gens {
        let c = matrix::mul(f, &pinv, &matrix::mul(f, g, &p).unwrap()).unwrap();
        let lower: Vec<usize> = (0..k).collect();
        let upper: Vec<usize> = (k..m.dim).collect();
        debug_assert!(upper.iter().all(|&i| lower.iter().all(|&j| f.is_zero(c.get(i, j)))));
        subs.push(c.submatrix(&lower, &lower));
        quots.push(c.submatrix(&upper, &upper));
    }
    (FModule { field: f.clone(), gens: subs, dim: k }, FModule { field: f.clone(), gens: quots, dim: m.dim - k })
}

/// A random algebra element: a combination with nonzero coefficients of up
/// to three words of length 1 to 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub terms: Vec<(u32, Vec<usize>)>,
}

impl AlgebraElement {
    fn random(rng: &mut ChaCha8Rng, f: &FiniteField, n_gens: usize) -> Self {
        let q = f.order() as u32;
        let count = rng.random_range(1..=3);
        let terms = (0..count)
            .map(|_| {
                let c = rng.random_range(1..q);
                let len = rng.random_range(1..=4);
                (c, (0..len).map(|_| rng.random_range(0..n_gens)).collect())
            })
            .collect();
        AlgebraElement { terms }
    }

    fn matrix(&self, m: &FModule) -> Matrix<u32> {
        let f = &m.field;
        self.terms.iter().fold(matrix::zeros(f, m.dim, m.dim), |acc, (c, w)| matrix::add(f, &acc, &matrix::scale(f, &m.word_matrix(w), c)))
    }
}

/// Evidence for irreducibility: an element whose characteristic polynomial
/// has an irreducible factor `p` with `dim ker p(A) = deg p`, and kernel
/// vectors of `p(A)` and `p(A)^T` that each spin to the whole space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NortonWitness {
    pub element: AlgebraElement,
    pub factor: Vec<u32>,
    pub vector: Vec<u32>,
    pub dual_vector: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible(Option<NortonWitness>),
    /// Basis (row vectors) of a proper nonzero submodule.
    Reducible(Vec<Vec<u32>>),
}

/// Random-element budget for [`is_irreducible`] and [`chop`].
pub const DEFAULT_BUDGET: usize = 400;

fn eval_poly_matrix(f: &FiniteField, p: &Poly<u32>, a: &Matrix<u32>) -> Matrix<u32> {
    let n = a.rows();
    let id = matrix::identity(f, n);
    p.coeffs()
        .iter()
        .rev()
        .fold(matrix::zeros(f, n, n), |acc, c| matrix::add(f, &matrix::mul(f, &acc, a).unwrap(), &matrix::scale(f, &id, c)))
}

/// Annihilator in `F^n` of a set of row vectors.
fn annihilator(f: &FiniteField, n: usize, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    matrix::rank_and_kernel(f, &Matrix::from_rows(n, rows.to_vec())).1
}

/// Norton's test, drawing random algebra elements until it decides.
pub fn is_irreducible(m: &FModule, rng: &mut ChaCha8Rng, budget: usize) -> Result<Irreducibility> {
    let f = &m.field;
    if m.dim <= 1 {
        return Ok(Irreducibility::Irreducible(None));
    }
    for _ in 0..budget {
        let el = AlgebraElement::random(rng, f, m.gens.len());
        let a = el.matrix(m);
        for (p, _) in factor(f, &charpoly(f, &a)) {
            let n = eval_poly_matrix(f, &p, &a);
            let ker = matrix::rank_and_kernel(f, &n).1;
            let v = ker[0].clone();
            let sp = spin(m, std::slice::from_ref(&v));
            if sp.rank() < m.dim {
                return Ok(Irreducibility::Reducible(sp.rows().to_vec()));
            }
            if ker.len() != p.degree().unwrap() {
                continue;
            }
            let dual_ker = matrix::rank_and_kernel(f, &n.transpose()).1;
            let w = dual_ker[0].clone();
            let dual = spin(&m.transposed(), std::slice::from_ref(&w));
            if dual.rank() < m.dim {
                return Ok(Irreducibility::Reducible(annihilator(f, m.dim, dual.rows())));
            }
            return Ok(Irreducibility::Irreducible(Some(NortonWitness {
                element: el,
                factor: p.coeffs().to_vec(),
                vector: v,
                dual_vector: w,
            })));
        }
    }
    Err(Error::Stalled(budget))
}

/// Dimension of `Hom(M, N)`: solutions `X` of `X rho_M(s) = rho_N(s) X`.
pub fn hom_space_dim(m: &FModule, n: &FModule) -> usize {
    let f = &m.field;
    let (dm, dn) = (m.dim, n.dim);
    let unknowns = dm * dn;
    if unknowns == 0 {
        return 0;
    }
    let mut rows = Vec::new();
    for (gm, gn) in m.gens.iter().zip(&n.gens) {
        for i in 0..dn {
            for j in 0..dm {
                let mut row = vec![0u32; unknowns];
                for k in 0..dm {
                    let x = &mut row[i * dm + k];
                    *x = f.add(x, gm.get(k, j));
                }
                for k in 0..dn {
                    let x = &mut row[k * dm + j];
                    *x = f.sub(x, gn.get(i, k));
                }
                if row.iter().any(|x| *x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return unknowns;
    }
    unknowns - matrix::rank(f, &Matrix::from_rows(unknowns, rows))
}

/// A composition factor found by [`chop`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constituent {
    pub id: usize,
    pub module: FModule,
    pub dim: usize,
    pub fingerprint: Vec<u32>,
    pub multiplicity: usize,
}

fn isomorphic(a: &FModule, fa: &[u32], b: &FModule, fb: &[u32]) -> bool {
    a.dim == b.dim && fa == fb && hom_space_dim(a, b) > 0
}

/// Per-task generator derived from a seed and a task number.
pub fn task_rng(seed: u64, task: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ task.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Composition factors with multiplicities, in order of discovery.
/// Every factor is checked to be absolutely irreducible (`End = F`).
pub fn chop(m: &FModule, seed: u64, budget: usize) -> Result<Vec<Constituent>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stack = vec![m.clone()];
    let mut found: Vec<Constituent> = Vec::new();
    while let Some(x) = stack.pop() {
        if x.dim == 0 {
            continue;
        }
        match is_irreducible(&x, &mut rng, budget)? {
            Irreducibility::Reducible(basis) => {
                let mut b = IncrementalBasis::new(x.dim);
                for v in &basis {
                    b.insert(&x.field, v);
                }
                let (sub, quot) = split(&x, &b);
                stack.push(quot);
                stack.push(sub);
            }
            Irreducibility::Irreducible(_) => {
                let fp = x.fingerprint();
                if let Some(c) = found.iter_mut().find(|c| isomorphic(&c.module, &c.fingerprint, &x, &fp)) {
                    c.multiplicity += 1;
                } else {
                    let h = hom_space_dim(&x, &x);
                    if h != 1 {
                        return Err(Error::NonSplit(h));
                    }
                    found.push(Constituent { id: found.len(), dim: x.dim, module: x, fingerprint: fp, multiplicity: 1 });
                }
            }
        }
    }
    Ok(found)
}

/// `Sum_S dim Hom(M, S)` over the given simples; the head of `M` is simple
/// exactly when this is 1, and then the index of that simple is returned.
pub fn head_is_simple(m: &FModule, simples: &[Constituent]) -> (bool, Option<usize>) {
    let homs: Vec<usize> = simples.iter().map(|s| hom_space_dim(m, &s.module)).collect();
    let total: usize = homs.iter().sum();
    if total == 1 {
        (true, homs.iter().position(|&h| h == 1))
    } else {
        (false, None)
    }
}

/// Rows are the input labels, columns the simple modules identified with
/// labels; entries are composition multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompMatrix {
    pub e: u64,
    pub ell: u64,
    pub rows: Vec<IrrLabel>,
    pub columns: Vec<String>,
    pub column_dims: Vec<usize>,
    pub entries: Vec<Vec<usize>>,
}

impl DecompMatrix {
    pub fn column_of(&self, label: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == label)
    }

    pub fn row_of(&self, label: &str) -> Option<usize> {
        self.rows.iter().position(|r| r.name == label)
    }

    /// `(W^mu : L^mu) = 1` on identified columns, and a nonzero entry at
    /// `(lambda, mu)` forces `lambda = mu` or `a_mu < a_lambda`.
    pub fn check_delta(&self) -> Result<()> {
        for (j, mu) in self.columns.iter().enumerate() {
            let r = self.row_of(mu).ok_or_else(|| Error::DeltaViolation(format!("column {mu} has no row")))?;
            if self.entries[r][j] != 1 {
                return Err(Error::DeltaViolation(format!("(W^{mu} : L^{mu}) = {}", self.entries[r][j])));
            }
            let a_mu = self.rows[r].a.ok_or_else(|| Error::MissingAInvariant(mu.clone()))?;
            for (i, lam) in self.rows.iter().enumerate() {
                if i == r || self.entries[i][j] == 0 {
                    continue;
                }
                let a_lam = lam.a.ok_or_else(|| Error::MissingAInvariant(lam.name.clone()))?;
                if a_mu >= a_lam {
                    return Err(Error::DeltaViolation(format!(
                        "({} : L^{mu}) = {} with a = {a_lam} not above {a_mu}",
                        lam.name, self.entries[i][j]
                    )));
                }
            }
        }
        for (i, lam) in self.rows.iter().enumerate() {
            let total: usize = self.entries[i].iter().zip(&self.column_dims).map(|(m, d)| m * d).sum();
            if total != lam.dim {
                return Err(Error::DeltaViolation(format!("row {} accounts for dimension {total}", lam.name)));
            }
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        self.rows.len() == self.columns.len()
            && self
                .entries
                .iter()
                .enumerate()
                .all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == usize::from(self.columns[j] == self.rows[i].name)))
    }
}

/// Chops every module (in parallel, each with its own generator), merges
/// isomorphic constituents across modules, and names each column by the
/// unique row of least `a` containing it with multiplicity one.
pub fn decomposition_matrix(modules: &[(IrrLabel, FModule)], e: u64, ell: u64, seed: u64, budget: usize) -> Result<DecompMatrix> {
    let chops: Vec<Vec<Constituent>> = modules
        .par_iter()
        .enumerate()
        .map(|(i, (_, m))| chop(m, seed ^ task_rng(seed, i as u64).random::<u64>(), budget))
        .collect::<Result<_>>()?;
    let mut simples: Vec<Constituent> = Vec::new();
    let mut entries: Vec<Vec<usize>> = Vec::new();
    for cs in &chops {
        let mut row = vec![0; simples.len()];
        for c in cs {
            let pos = simples.iter().position(|s| isomorphic(&s.module, &s.fingerprint, &c.module, &c.fingerprint));
            let j = match pos {
                Some(j) => j,
                None => {
                    simples.push(c.clone());
                    row.push(0);
                    simples.len() - 1
                }
            };
            row[j] += c.multiplicity;
        }
        entries.push(row);
    }
    for row in entries.iter_mut() {
        row.resize(simples.len(), 0);
    }
    let mut names = Vec::with_capacity(simples.len());
    for j in 0..simples.len() {
        let hitting: Vec<usize> = (0..modules.len()).filter(|&i| entries[i][j] > 0).collect();
        let a_of = |i: usize| modules[i].0.a.ok_or_else(|| Error::MissingAInvariant(modules[i].0.name.clone()));
        let mut best: Option<u32> = None;
        for &i in &hitting {
            let a = a_of(i)?;
            best = Some(best.map_or(a, |b| b.min(a)));
        }
        let best = best.expect("every simple occurs in some module");
        let cands: Vec<usize> = hitting.iter().copied().filter(|&i| a_of(i).unwrap() == best).collect();
        if cands.len() > 1 {
            return Err(Error::IdentificationAmbiguous(modules[cands[0]].0.name.clone(), modules[cands[1]].0.name.clone()));
        }
        names.push(cands[0]);
    }
    let mut order: Vec<usize> = (0..simples.len()).collect();
    order.sort_by_key(|&j| names[j]);
    if order.windows(2).any(|w| names[w[0]] == names[w[1]]) {
        let dup = order.windows(2).find(|w| names[w[0]] == names[w[1]]).unwrap();
        let lab = modules[names[dup[0]]].0.name.clone();
        return Err(Error::IdentificationAmbiguous(lab.clone(), lab));
    }
    let dm = DecompMatrix {
        e,
        ell,
        rows: modules.iter().map(|(l, _)| l.clone()).collect(),
        columns: order.iter().map(|&j| modules[names[j]].0.name.clone()).collect(),
        column_dims: order.iter().map(|&j| simples[j].dim).collect(),
        entries: entries.iter().map(|r| order.iter().map(|&j| r[j]).collect()).collect(),
    };
    dm.check_delta()?;
    Ok(dm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::specrank::modular_target;
    use crate::wgraph::build_generator_matrices;

    fn g2_module(label: &str, e: u64, ell: u64) -> FModule {
        let m = build_generator_matrices(&fixtures::g2_wgraph(label).unwrap());
        let (f, theta) = modular_target(e, ell).unwrap();
        FModule::specialize(&m, &f, theta).unwrap()
    }

    fn dims(cs: &[Constituent]) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = cs.iter().map(|c| (c.dim, c.multiplicity)).collect();
        v.sort();
        v
    }

    #[test]
    fn chop_small_examples() {
        assert_eq!(dims(&chop(&g2_module("1", 3, 7), 1, DEFAULT_BUDGET).unwrap()), vec![(1, 1)]);
        assert_eq!(dims(&chop(&g2_module("r'", 3, 7), 1, DEFAULT_BUDGET).unwrap()), vec![(1, 1), (1, 1)]);
        assert_eq!(dims(&chop(&g2_module("r", 3, 7), 1, DEFAULT_BUDGET).unwrap()), vec![(2, 1)]);
    }

    #[test]
    fn norton_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r6 = g2_module("r", 6, 7);
        match is_irreducible(&r6, &mut rng, DEFAULT_BUDGET).unwrap() {
            Irreducibility::Reducible(b) => assert_eq!(b.len(), 1),
            other => panic!("expected a submodule, got {other:?}"),
        }
        let r3 = g2_module("r", 3, 7);
        assert!(matches!(is_irreducible(&r3, &mut rng, DEFAULT_BUDGET).unwrap(), Irreducibility::Irreducible(Some(_))));
    }

    #[test]
    fn hom_and_head() {
        let rp = g2_module("r'", 3, 7);
        let cs = chop(&rp, 5, DEFAULT_BUDGET).unwrap();
        for c in &cs {
            assert_eq!(hom_space_dim(&c.module, &c.module), 1);
        }
        assert_eq!(hom_space_dim(&cs[0].module, &cs[1].module), 0);
        let (simple, head) = head_is_simple(&rp, &cs);
        assert!(simple && head.is_some());
        let s = &cs[0].module;
        let ss = s.direct_sum(s);
        assert_eq!(head_is_simple(&ss, &cs[..1]), (false, None));
        let cs2 = chop(&ss, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(dims(&cs2), vec![(1, 2)]);
    }

    #[test]
    fn seed_independence() {
        let m = g2_module("r'", 3, 7).direct_sum(&g2_module("r", 3, 7));
        let fps = |seed| {
            let mut v: Vec<_> =
                chop(&m, seed, DEFAULT_BUDGET).unwrap().into_iter().map(|c| (c.dim, c.fingerprint, c.multiplicity)).collect();
            v.sort();
            v
        };
        assert_eq!(fps(1), fps(2));
        assert_eq!(fps(1), fps(99));
    }
}
