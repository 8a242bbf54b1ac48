//! Gram matrices of invariant bilinear forms on W-graph modules.
//!
//! A Gram matrix `Q` satisfies `Q sigma_s = sigma_s^T Q` for every generator.
//! It is normalized to have entries in `Z[v]` with no common factor in
//! `Z[v]`, and the first nonzero entry in row-major order has a positive
//! leading coefficient. Three independent solvers are provided: a direct
//! sparse solve over Q(v), the standard-base algorithm over any field, and
//! an evaluation/CRT reconstruction from prime fields.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rings::crt::{crt, rational_reconstruct};
use crate::rings::cyclotomic::cyclotomic_qpoly;
use crate::rings::field::{prime_factors, Field, Rationals, Ring};
use crate::rings::finite_field::{large_primes, PrimeField};
use crate::rings::interp::{interpolate, rational_function_reconstruct, vanishing_polynomial};
use crate::rings::laurent::{LaurentPoly, LaurentRing};
use crate::rings::matrix::{self, det_fraction_free, IncrementalBasis, Matrix};
use crate::rings::poly::{self, Poly, QPoly};
use crate::rings::ratfunc::{RatFunc, RationalFunctions};
use crate::weyl::{poincare_polynomial, WeylType};
use crate::wgraph::{apply_word_vec, specialize_generators, GenMatrices};

/// Largest dimension accepted by [`solve_gram_direct`].
pub const DIRECT_LIMIT: usize = 128;

/// A normalized Gram matrix over `Z[v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub weyl: WeylType,
    pub label: String,
    pub q: Matrix<LaurentPoly<BigInt>>,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.q.rows()
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly<BigInt> {
        self.q.get(i, j)
    }

    /// Whether `Q sigma_s = sigma_s^T Q` holds exactly for every generator.
    pub fn verify_invariance(&self, m: &GenMatrices) -> bool {
        if m.dim() != self.dim() {
            return false;
        }
        m.gens.iter().all(|g| {
            let lhs = matrix::mul(&LaurentRing, &self.q, g).unwrap();
            let rhs = matrix::mul(&LaurentRing, &g.transpose(), &self.q).unwrap();
            lhs == rhs
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.q == self.q.transpose()
    }

    /// Entries lie in `Z[v]` and have no common factor of positive degree or
    /// integer content above one.
    pub fn is_primitive(&self) -> bool {
        if self.q.iter().any(|e| e.low_exp().is_some_and(|l| l < 0)) {
            return false;
        }
        let content = self.q.iter().fold(BigInt::zero(), |g, e| g.gcd(&e.content()));
        if !content.is_one() {
            return false;
        }
        let f = Rationals;
        let g = self.q.iter().filter_map(|e| e.to_qpoly()).fold(QPoly::zero(), |g, p| poly::gcd(&f, &g, &p));
        g.degree() == Some(0)
    }

    /// The first nonzero entry in row-major order has a positive leading coefficient.
    pub fn sign_rule_holds(&self) -> bool {
        self.q.iter().find(|e| !e.is_zero()).is_some_and(|e| e.leading_coeff().unwrap().is_positive())
    }

    /// Matrix over Q(v).
    pub fn to_ratfunc(&self) -> Matrix<RatFunc> {
        self.q.map(RatFunc::from_laurent)
    }
}

/// Which eigenvalue the parabolic kernels are taken for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// Kernels of `sigma_s + 1`.
    Sign,
    /// Kernels of `sigma_s - u`.
    Trivial,
}

/// A subset `I` of generators whose joint kernel is spanned by one standard
/// basis vector, with spin words producing a basis from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicWitness {
    pub kind: WitnessKind,
    pub subset: Vec<usize>,
    pub node: usize,
    /// Words `w_1 = (), w_2, ..., w_d`.
    pub words: Vec<Vec<usize>>,
}

/// Nonempty subsets of `0..n` by decreasing size, then lexicographically.
fn subsets_by_size(n: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (1u32..(1 << n)).map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect()).collect();
    all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    all
}

fn shifted<F: Field>(f: &F, g: &Matrix<F::Elem>, shift: &F::Elem) -> Matrix<F::Elem> {
    let mut m = g.clone();
    for i in 0..m.rows() {
        let x = f.add(m.get(i, i), shift);
        m.set(i, i, x);
    }
    m
}

/// `sigma_s + 1` or `sigma_s - q`, depending on the kind.
fn kind_shift<F: Field>(f: &F, kind: WitnessKind, q: &F::Elem) -> F::Elem {
    match kind {
        WitnessKind::Sign => f.one(),
        WitnessKind::Trivial => f.neg(q),
    }
}

fn joint_kernel<F: Field>(f: &F, mats: &[Matrix<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let d = mats[0].cols();
    let rows: Vec<Vec<F::Elem>> = mats.iter().flat_map(|m| m.row_vecs().iter().cloned()).collect();
    let stacked = Matrix::from_rows(d, rows);
    matrix::rank_and_kernel(f, &stacked).1
}

/// Searches subsets `I` (largest first, then lexicographic) for a joint
/// kernel of `sigma_s + 1` that is spanned by a standard basis vector; falls
/// back to kernels of `sigma_s - q`. Returns kind, subset and node.
pub fn find_parabolic_subset<F: Field>(f: &F, gens: &[Matrix<F::Elem>], q: &F::Elem) -> Result<(WitnessKind, Vec<usize>, usize)> {
    for kind in [WitnessKind::Sign, WitnessKind::Trivial] {
        let shift = kind_shift(f, kind, q);
        let shifted_gens: Vec<_> = gens.iter().map(|g| shifted(f, g, &shift)).collect();
        for subset in subsets_by_size(gens.len()) {
            let mats: Vec<_> = subset.iter().map(|&s| shifted_gens[s].clone()).collect();
            let ker = joint_kernel(f, &mats);
            if ker.len() != 1 {
                continue;
            }
            let nz: Vec<usize> = (0..ker[0].len()).filter(|&i| !f.is_zero(&ker[0][i])).collect();
            if nz.len() == 1 {
                return Ok((kind, subset, nz[0]));
            }
        }
    }
    Err(Error::NoParabolicType)
}

/// Breadth-first spin of `seed`: accepted vectors are processed in order and
/// each is multiplied by the generators in ascending order; a product is
/// kept when it increases the rank. Returns the words and vectors.
pub fn spin_standard_basis<F: Field>(f: &F, gens: &[Matrix<F::Elem>], seed: &[F::Elem]) -> Result<(Vec<Vec<usize>>, Vec<Vec<F::Elem>>)> {
    let d = seed.len();
    let mut basis = IncrementalBasis::new(d);
    if !basis.insert(f, seed) {
        return Err(Error::SpinStalled { rank: 0, dim: d });
    }
    let mut words = vec![Vec::new()];
    let mut vecs = vec![seed.to_vec()];
    let mut next = 0;
    while next < vecs.len() && basis.rank() < d {
        for (s, g) in gens.iter().enumerate() {
            let cand = matrix::mul_vec(f, g, &vecs[next])?;
            if basis.insert(f, &cand) {
                let mut w = vec![s];
                w.extend_from_slice(&words[next]);
                words.push(w);
                vecs.push(cand);
                if basis.rank() == d {
                    break;
                }
            }
        }
        next += 1;
    }
    if basis.rank() < d {
        return Err(Error::SpinStalled { rank: basis.rank(), dim: d });
    }
    Ok((words, vecs))
}

/// Witness over the given field: parabolic subset, node and spin words.
pub fn find_parabolic_witness<F: Field>(f: &F, gens: &[Matrix<F::Elem>], q: &F::Elem) -> Result<ParabolicWitness> {
    let (kind, subset, node) = find_parabolic_subset(f, gens, q)?;
    let d = gens[0].rows();
    let mut seed = vec![f.zero(); d];
    seed[node] = f.one();
    let (words, _) = spin_standard_basis(f, gens, &seed)?;
    Ok(ParabolicWitness { kind, subset, node, words })
}

/// The standard-base algorithm: returns `Q~` with `Q~ e_i = v_i`, where
/// `e_i = sigma(T_{w_i}) e_node` and `v_i = sigma_{s_1}^T ... sigma_{s_k}^T v_1`
/// for `w_i = (s_1, ..., s_k)`, and `v_1` spans the joint kernel of the
/// transposed shifted generators.
pub fn standard_base_gram<F: Field>(f: &F, gens: &[Matrix<F::Elem>], w: &ParabolicWitness, q: &F::Elem) -> Result<Matrix<F::Elem>> {
    let d = gens[0].rows();
    let shift = kind_shift(f, w.kind, q);
    let mats: Vec<_> = w.subset.iter().map(|&s| shifted(f, &gens[s], &shift)).collect();
    let seed_ker = joint_kernel(f, &mats);
    let is_std = seed_ker.len() == 1 && (0..d).all(|i| f.is_zero(&seed_ker[0][i]) == (i != w.node));
    if !is_std {
        return Err(Error::DegenerateSpecialization("seed kernel changed".into()));
    }
    let tmats: Vec<_> = mats.iter().map(Matrix::transpose).collect();
    let ker = joint_kernel(f, &tmats);
    if ker.len() != 1 {
        return Err(Error::DegenerateSpecialization(format!("dual kernel has dimension {}", ker.len())));
    }
    let v1 = &ker[0];
    let mut e1 = vec![f.zero(); d];
    e1[w.node] = f.one();
    let tgens: Vec<_> = gens.iter().map(Matrix::transpose).collect();
    let mut es = Vec::with_capacity(d);
    let mut vs = Vec::with_capacity(d);
    for word in &w.words {
        es.push(apply_word_vec(f, gens, word, &e1)?);
        // sigma_{s_1}^T ... sigma_{s_k}^T v_1
        vs.push(apply_word_vec(f, &tgens, word, v1)?);
    }
    let e = Matrix::from_columns(d, &es);
    let v = Matrix::from_columns(d, &vs);
    // Q E = V  <=>  E^T Q^T = V^T
    let qt = matrix::solve(f, &e.transpose(), &v.transpose())?
        .ok_or_else(|| Error::DegenerateSpecialization("spin basis is singular".into()))?;
    if matrix::rank(f, &e) < d {
        return Err(Error::DegenerateSpecialization("spin basis is singular".into()));
    }
    Ok(qt.transpose())
}

/// Generators over Q(v).
pub fn generators_over_ratfunc(m: &GenMatrices) -> Vec<Matrix<RatFunc>> {
    m.gens.iter().map(|g| g.map(RatFunc::from_laurent)).collect()
}

fn u_over_ratfunc() -> RatFunc {
    RatFunc::from_laurent(&crate::rings::laurent::lp(&[(2, 1)]))
}

/// Standard-base algorithm over Q(v), normalized.
pub fn solve_gram_standard_base(m: &GenMatrices) -> Result<GramMatrix> {
    let k = RationalFunctions;
    let gens = generators_over_ratfunc(m);
    let u = u_over_ratfunc();
    let w = find_parabolic_witness(&k, &gens, &u)?;
    let raw = standard_base_gram(&k, &gens, &w, &u)?;
    let q = normalize_gram(&raw)?;
    Ok(GramMatrix { weyl: m.weyl, label: m.label.clone(), q })
}

/// Scales a nonzero matrix over Q(v) to the normalized integral form.
pub fn normalize_gram(raw: &Matrix<RatFunc>) -> Result<Matrix<LaurentPoly<BigInt>>> {
    let f = Rationals;
    let den = raw.iter().filter(|x| !x.num().is_zero()).fold(QPoly::one(), |l, x| {
        let g = poly::gcd(&f, &l, x.den());
        poly::mul(&f, &l, &poly::div_exact(&f, x.den(), &g).unwrap())
    });
    let polys =
        raw.map(|x| if x.num().is_zero() { QPoly::zero() } else { poly::mul(&f, x.num(), &poly::div_exact(&f, &den, x.den()).unwrap()) });
    let g = polys.iter().fold(QPoly::zero(), |g, p| poly::gcd(&f, &g, p));
    if g.is_zero() {
        return Err(Error::VerificationFailed("Gram matrix is zero".into()));
    }
    let polys = polys.map(|p| poly::div_exact(&f, p, &g).unwrap());
    integral_primitive(&polys)
}

/// Clears rational denominators, removes integer content, applies the sign
/// rule and checks symmetry.
fn integral_primitive(polys: &Matrix<QPoly>) -> Result<Matrix<LaurentPoly<BigInt>>> {
    let lcm = polys.iter().flat_map(|p| p.coeffs().iter()).fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let scaled = polys.map(|p| {
        let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &lcm).to_integer()).collect();
        LaurentPoly::from_coeffs(0, ints)
    });
    let content = scaled.iter().fold(BigInt::zero(), |g, e| g.gcd(&e.content()));
    let mut q = scaled.map(|e| LaurentPoly::from_terms(e.terms().map(|(x, c)| (x, c / &content))));
    let negative = q.iter().find(|e| !e.is_zero()).is_some_and(|e| e.leading_coeff().unwrap().is_negative());
    if negative {
        q = q.map(|e| -e);
    }
    if q != q.transpose() {
        return Err(Error::NotSymmetric);
    }
    Ok(q)
}

/// Solves the invariance system directly over Q(v): `|S| d^2` equations in
/// the `d^2` entries of `Q`, by sparse elimination.
pub fn solve_gram_direct(m: &GenMatrices) -> Result<GramMatrix> {
    let d = m.dim();
    if d > DIRECT_LIMIT {
        return Err(Error::TooLarge(format!("direct solve needs d <= {DIRECT_LIMIT}, got {d}")));
    }
    let k = RationalFunctions;
    let gens = generators_over_ratfunc(m);
    // Equation (s, i, j): sum_k q_ik sigma[k][j] - sum_k sigma[k][i] q_kj = 0.
    let mut equations: Vec<BTreeMap<usize, RatFunc>> = Vec::new();
    for g in &gens {
        for i in 0..d {
            for j in 0..d {
                let mut row: BTreeMap<usize, RatFunc> = BTreeMap::new();
                let mut push = |col: usize, c: RatFunc| {
                    let e = row.entry(col).or_insert_with(|| k.zero());
                    *e = k.add(e, &c);
                };
                for kk in 0..d {
                    let a = g.get(kk, j);
                    if !k.is_zero(a) {
                        push(i * d + kk, a.clone());
                    }
                    let b = g.get(kk, i);
                    if !k.is_zero(b) {
                        push(kk * d + j, k.neg(b));
                    }
                }
                row.retain(|_, c| !k.is_zero(c));
                if !row.is_empty() {
                    equations.push(row);
                }
            }
        }
    }
    equations.sort_by_key(|r| r.len());
    let solution = sparse_kernel_vector(&k, d * d, equations)?;
    let raw = Matrix::from_fn(d, d, |i, j| solution[i * d + j].clone());
    let q = normalize_gram(&raw)?;
    Ok(GramMatrix { weyl: m.weyl, label: m.label.clone(), q })
}

fn complexity(x: &RatFunc) -> usize {
    x.num().degree().unwrap_or(0) + x.den().degree().unwrap_or(0)
}

/// Incremental sparse elimination; requires a one-dimensional solution space
/// and returns a spanning vector.
fn sparse_kernel_vector(k: &RationalFunctions, n: usize, equations: Vec<BTreeMap<usize, RatFunc>>) -> Result<Vec<RatFunc>> {
    // Pivot rows in insertion order; each row is normalized to 1 at its pivot
    // and contains no earlier pivot column.
    let mut pivots: Vec<(usize, BTreeMap<usize, RatFunc>)> = Vec::new();
    let mut pivot_of: Vec<Option<usize>> = vec![None; n];
    for mut row in equations {
        for (pc, prow) in &pivots {
            let Some(c) = row.get(pc).cloned() else { continue };
            for (col, x) in prow {
                let e = row.entry(*col).or_insert_with(|| k.zero());
                *e = k.sub(e, &k.mul(&c, x));
            }
            row.retain(|_, x| !k.is_zero(x));
        }
        if row.is_empty() {
            continue;
        }
        let (&pc, _) = row.iter().min_by_key(|(col, x)| (complexity(x), **col)).unwrap();
        let inv = k.inv(&row[&pc]).unwrap();
        for x in row.values_mut() {
            *x = k.mul(x, &inv);
        }
        pivot_of[pc] = Some(pivots.len());
        pivots.push((pc, row));
    }
    let free: Vec<usize> = (0..n).filter(|&c| pivot_of[c].is_none()).collect();
    if free.len() != 1 {
        return Err(Error::SolutionSpaceNotOneDim(free.len()));
    }
    let mut x: Vec<Option<RatFunc>> = vec![None; n];
    x[free[0]] = Some(k.one());
    for (pc, row) in pivots.iter().rev() {
        let mut acc = k.zero();
        for (col, c) in row {
            if col == pc {
                continue;
            }
            let xv = x[*col].as_ref().expect("later pivots are solved first");
            acc = k.sub(&acc, &k.mul(c, xv));
        }
        x[*pc] = Some(acc);
    }
    Ok(x.into_iter().map(Option::unwrap).collect())
}

/// Budget and starting sizes for [`reconstruct_gram_modular`].
#[derive(Clone, Debug)]
pub struct ModularPlan {
    pub initial_points: usize,
    pub max_points: usize,
    pub initial_primes: usize,
    pub max_primes: usize,
}

impl Default for ModularPlan {
    fn default() -> Self {
        ModularPlan { initial_points: 8, max_points: 512, initial_primes: 1, max_primes: 40 }
    }
}

/// Samples of the anchor-normalized form `Q / Q[x][x]` at points of one prime field.
struct PrimeSamples {
    field: PrimeField,
    next_point: u64,
    points: Vec<u64>,
    /// `values[i]` holds the d x d ratios at `points[i]`.
    values: Vec<Vec<u64>>,
}

impl PrimeSamples {
    fn new(p: u64) -> Self {
        PrimeSamples { field: PrimeField::new(p), next_point: 2, points: Vec::new(), values: Vec::new() }
    }

    fn extend_to(&mut self, n: usize, m: &GenMatrices, w: &ParabolicWitness, pw: &QPoly) -> Result<()> {
        let f = self.field;
        let d = m.dim();
        let mut attempts = 0;
        while self.points.len() < n {
            // evaluate a batch of candidate points in parallel
            let need = n - self.points.len();
            let batch: Vec<u64> = (self.next_point..self.next_point + need as u64 + 4).collect();
            self.next_point += batch.len() as u64;
            let results: Vec<Option<Vec<u64>>> = batch.par_iter().map(|&a| sample_at(&f, m, w, pw, a).ok().flatten()).collect();
            for (a, r) in batch.into_iter().zip(results) {
                if let Some(vals) = r {
                    if self.points.len() < n {
                        debug_assert_eq!(vals.len(), d * d);
                        self.points.push(a);
                        self.values.push(vals);
                    }
                }
            }
            attempts += 1;
            if attempts > 64 {
                return Err(Error::DegenerateSpecialization("no usable evaluation points".into()));
            }
        }
        Ok(())
    }
}

/// The standard-base Gram matrix at `v = a` over GF(p), scaled so that the
/// anchor entry is 1; `None` if the point is unusable.
fn sample_at(f: &PrimeField, m: &GenMatrices, w: &ParabolicWitness, pw: &QPoly, a: u64) -> Result<Option<Vec<u64>>> {
    let u = f.mul(&a, &a);
    let pw_at =
        poly::eval(f, &poly::map_coeffs::<Rationals, PrimeField>(f, pw, |c| crate::rings::laurent::Coeff::to_field(c, f).unwrap()), &u);
    if f.is_zero(&pw_at) {
        return Ok(None);
    }
    let gens = specialize_generators(m, f, &a)?;
    let q = match standard_base_gram(f, &gens, w, &u) {
        Ok(q) => q,
        Err(Error::DegenerateSpecialization(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let anchor = q.get(w.node, w.node);
    let Some(inv) = f.inv(anchor) else {
        return Ok(None);
    };
    Ok(Some(q.iter().map(|x| f.mul(x, &inv)).collect()))
}

/// Per-prime reconstruction of `P = Q / lc(Q[x][x])` as polynomials mod p.
/// Uses all but the last two samples for reconstruction and the last two
/// for validation. `None` means more points are needed.
fn reconstruct_mod_p(s: &PrimeSamples, d: usize) -> Option<Vec<Poly<u64>>> {
    let f = s.field;
    let n = s.points.len();
    if n < 4 {
        return None;
    }
    let fit = n - 2;
    let pts = &s.points[..fit];
    let m = vanishing_polynomial(&f, pts);
    let k = fit.div_ceil(2);
    let mut fracs = Vec::with_capacity(d * d);
    for idx in 0..d * d {
        let samples: Vec<(u64, u64)> = (0..fit).map(|i| (s.points[i], s.values[i][idx])).collect();
        let p = interpolate(&f, &samples).ok()?;
        let (num, den) = rational_function_reconstruct(&f, &m, &p, k)?;
        for i in fit..n {
            let a = s.points[i];
            let dv = poly::eval(&f, &den, &a);
            if f.is_zero(&dv) || f.div(&poly::eval(&f, &num, &a), &dv)? != s.values[i][idx] {
                return None;
            }
        }
        fracs.push((num, den));
    }
    let lcm = fracs.iter().fold(Poly::constant(&f, 1u64), |l, (_, den)| {
        let g = poly::gcd(&f, &l, den);
        poly::mul(&f, &l, &poly::div_exact(&f, den, &g).unwrap())
    });
    Some(fracs.into_iter().map(|(num, den)| poly::mul(&f, &num, &poly::div_exact(&f, &lcm, &den).unwrap())).collect())
}

/// Combines per-prime polynomial matrices by CRT and rational reconstruction.
fn combine_primes(per_prime: &[(u64, Vec<Poly<u64>>)]) -> Option<Matrix<QPoly>> {
    let moduli: Vec<u64> = per_prime.iter().map(|(p, _)| *p).collect();
    let entries = per_prime[0].1.len();
    let d = (entries as f64).sqrt().round() as usize;
    let mut out = Vec::with_capacity(entries);
    for idx in 0..entries {
        let deg = per_prime.iter().map(|(_, v)| v[idx].coeffs().len()).max().unwrap();
        let mut coeffs = Vec::with_capacity(deg);
        for c in 0..deg {
            let residues: Vec<u64> = per_prime.iter().map(|(_, v)| v[idx].coeffs().get(c).copied().unwrap_or(0)).collect();
            let (r, m) = crt(&residues, &moduli);
            coeffs.push(rational_reconstruct(&r, &m)?);
        }
        out.push(Poly::from_coeffs(&Rationals, coeffs));
    }
    let mut it = out.into_iter();
    Some(Matrix::from_fn(d, d, |_, _| it.next().unwrap()))
}

/// Reconstructs the normalized Gram matrix from standard-base runs over
/// prime fields at many evaluation points. The witness and spin words are
/// computed once at the first usable specialization. Points per prime
/// double when per-prime reconstruction fails; primes are added until the
/// result is unchanged for two consecutive rounds and satisfies the
/// invariance system exactly over `Z[v]`.
pub fn reconstruct_gram_modular(m: &GenMatrices, plan: &ModularPlan) -> Result<GramMatrix> {
    let d = m.dim();
    let primes = large_primes(plan.max_primes.max(1));
    let pw = poincare_polynomial(&m.weyl);
    let witness = first_witness(m, primes[0], &pw)?;
    let mut samples: Vec<PrimeSamples> = Vec::new();
    let mut n_points = plan.initial_points.max(4);
    let mut n_primes = plan.initial_primes.max(1);
    let mut previous: Option<Matrix<LaurentPoly<BigInt>>> = None;
    loop {
        if n_points > plan.max_points || n_primes > plan.max_primes {
            return Err(Error::NoReconstruction);
        }
        while samples.len() < n_primes {
            samples.push(PrimeSamples::new(primes[samples.len()]));
        }
        let mut per_prime = Vec::with_capacity(n_primes);
        let mut need_points = false;
        for s in samples.iter_mut().take(n_primes) {
            s.extend_to(n_points, m, &witness, &pw)?;
            match reconstruct_mod_p(s, d) {
                Some(p) => per_prime.push((s.field.modulus(), p)),
                None => {
                    need_points = true;
                    break;
                }
            }
        }
        if need_points {
            n_points *= 2;
            previous = None;
            continue;
        }
        // Drop primes whose denominator degree is lower than the maximum (unlucky primes).
        let anchor = witness.node * d + witness.node;
        let top = per_prime.iter().map(|(_, v)| v[anchor].degree()).max().unwrap();
        per_prime.retain(|(_, v)| v[anchor].degree() == top);
        let candidate = combine_primes(&per_prime).and_then(|polys| integral_primitive(&normalize_poly_matrix(&polys)?).ok());
        match candidate {
            Some(c) if previous.as_ref() == Some(&c) => {
                let g = GramMatrix { weyl: m.weyl, label: m.label.clone(), q: c };
                if g.verify_invariance(m) {
                    return Ok(g);
                }
                n_points *= 2;
                previous = None;
            }
            Some(c) => {
                previous = Some(c);
                n_primes += 1;
            }
            None => {
                previous = None;
                n_primes += 1;
            }
        }
    }
}

/// Divides a polynomial matrix by the gcd of its entries.
fn normalize_poly_matrix(polys: &Matrix<QPoly>) -> Option<Matrix<QPoly>> {
    let f = Rationals;
    let g = polys.iter().fold(QPoly::zero(), |g, p| poly::gcd(&f, &g, p));
    if g.is_zero() {
        return None;
    }
    Some(polys.map(|p| poly::div_exact(&f, p, &g).unwrap()))
}

fn first_witness(m: &GenMatrices, p: u64, pw: &QPoly) -> Result<ParabolicWitness> {
    let f = PrimeField::new(p);
    for a in 2..200u64 {
        let u = f.mul(&a, &a);
        let pw_at = poly::eval(
            &f,
            &poly::map_coeffs::<Rationals, PrimeField>(&f, pw, |c| crate::rings::laurent::Coeff::to_field(c, &f).unwrap()),
            &u,
        );
        if f.is_zero(&pw_at) {
            continue;
        }
        let gens = specialize_generators(m, &f, &a)?;
        if let Ok(w) = find_parabolic_witness(&f, &gens, &u) {
            return Ok(w);
        }
    }
    Err(Error::NoParabolicType)
}

/// Outcome of [`det_factor_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetFactorReport {
    pub det: LaurentPoly<BigInt>,
    /// Integer content of the determinant.
    pub content: BigInt,
    /// Prime divisors of the content that are good for the type.
    pub good_content_primes: Vec<BigInt>,
    /// What remains after removing all cyclotomic factors of `P_W(v^2)`.
    pub residual: QPoly,
}

impl DetFactorReport {
    pub fn passed(&self) -> bool {
        self.good_content_primes.is_empty() && self.residual.degree() == Some(0) && !self.det.is_zero()
    }
}

/// Checks that the determinant of `Q` is, up to a power of `v`, a product of
/// bad primes and cyclotomic factors of `P_W(v^2)`.
pub fn det_factor_check(q: &GramMatrix, t: &WeylType) -> DetFactorReport {
    let det = det_fraction_free(&q.q);
    let content = det.content();
    let good_content_primes: Vec<BigInt> =
        prime_factors(&content).into_iter().filter(|p| !t.bad_primes().iter().any(|b| BigInt::from(*b) == *p)).collect();
    let mut residual = det.to_shifted_qpoly().0;
    if !content.is_zero() {
        residual = poly::scale(&Rationals, &residual, &BigRational::from_integer(content.clone()).recip());
    }
    let mut ks: Vec<u64> = Vec::new();
    for &deg in &t.degrees() {
        for dd in 2..=deg {
            if deg % dd == 0 {
                ks.push(dd);
                ks.push(2 * dd);
            }
        }
    }
    ks.sort_unstable();
    ks.dedup();
    for k in ks {
        let phi = cyclotomic_qpoly(k);
        while let Some(qt) = poly::div_exact(&Rationals, &residual, &phi) {
            if residual.degree() == Some(0) {
                break;
            }
            residual = qt;
        }
    }
    DetFactorReport { det, content, good_content_primes, residual }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::laurent::lp;
    use crate::wgraph::{build_generator_matrices, Edge, Node, WGraph};

    fn dihedral(mu_xy: i64, mu_yx: i64) -> GenMatrices {
        let nodes = vec![Node { id: "x".into(), tau: [0].into() }, Node { id: "y".into(), tau: [1].into() }];
        let edges = vec![Edge { from: 0, to: 1, mu: mu_xy }, Edge { from: 1, to: 0, mu: mu_yx }];
        build_generator_matrices(&WGraph::new("G2".parse().unwrap(), "r", nodes, edges).unwrap())
    }

    fn one_dim(tau: &[usize]) -> GenMatrices {
        let nodes = vec![Node { id: "x".into(), tau: tau.iter().copied().collect() }];
        build_generator_matrices(&WGraph::new("G2".parse().unwrap(), "one", nodes, vec![]).unwrap())
    }

    #[test]
    fn normalize_examples() {
        let k = |p: LaurentPoly<BigInt>| Matrix::from_rows(1, vec![vec![RatFunc::from_laurent(&p)]]);
        assert_eq!(normalize_gram(&k(lp(&[(1, 1), (-1, 1)]))).unwrap().get(0, 0), &lp(&[(0, 1)]));
        assert_eq!(normalize_gram(&k(lp(&[(2, 6), (0, 6)]))).unwrap().get(0, 0), &lp(&[(0, 1)]));
        let m = Matrix::from_rows(
            2,
            vec![
                vec![RatFunc::from_laurent(&lp(&[(0, -2)])), RatFunc::from_laurent(&lp(&[(1, 4)]))],
                vec![RatFunc::from_laurent(&lp(&[(1, 4)])), RatFunc::from_laurent(&lp(&[(0, 6)]))],
            ],
        );
        let n = normalize_gram(&m).unwrap();
        assert_eq!(n.get(0, 0), &lp(&[(0, 1)]));
        assert_eq!(n.get(0, 1), &lp(&[(1, -2)]));
        let asym = Matrix::from_rows(
            2,
            vec![
                vec![RatFunc::from_laurent(&lp(&[(0, 1)])), RatFunc::from_laurent(&lp(&[(0, 1)]))],
                vec![RatFunc::from_laurent(&lp(&[(0, 2)])), RatFunc::from_laurent(&lp(&[(0, 1)]))],
            ],
        );
        assert_eq!(normalize_gram(&asym), Err(Error::NotSymmetric));
    }

    #[test]
    fn dihedral_grams_agree() {
        let m = dihedral(1, 3);
        let direct = solve_gram_direct(&m).unwrap();
        assert_eq!(direct.entry(0, 0), &lp(&[(2, 3), (0, 3)]));
        assert_eq!(direct.entry(0, 1), &lp(&[(1, -3)]));
        assert_eq!(direct.entry(1, 1), &lp(&[(2, 1), (0, 1)]));
        assert!(direct.verify_invariance(&m));
        assert_eq!(solve_gram_standard_base(&m).unwrap(), direct);
        assert_eq!(reconstruct_gram_modular(&m, &ModularPlan::default()).unwrap(), direct);
    }

    #[test]
    fn one_dimensional_grams() {
        for tau in [&[][..], &[0, 1], &[1]] {
            let m = one_dim(tau);
            let q = solve_gram_direct(&m).unwrap();
            assert_eq!(q.entry(0, 0), &lp(&[(0, 1)]));
            assert_eq!(solve_gram_standard_base(&m).unwrap(), q);
            assert_eq!(reconstruct_gram_modular(&m, &ModularPlan::default()).unwrap(), q);
        }
    }

    #[test]
    fn witness_for_small_cases() {
        let k = RationalFunctions;
        let u = u_over_ratfunc();
        let sign = one_dim(&[0, 1]);
        let w = find_parabolic_witness(&k, &generators_over_ratfunc(&sign), &u).unwrap();
        assert_eq!((w.kind, w.subset.clone(), w.node), (WitnessKind::Sign, vec![0, 1], 0));
        let triv = one_dim(&[]);
        let w = find_parabolic_witness(&k, &generators_over_ratfunc(&triv), &u).unwrap();
        assert_eq!((w.kind, w.subset.clone()), (WitnessKind::Trivial, vec![0, 1]));
        let r = dihedral(1, 1);
        let w = find_parabolic_witness(&k, &generators_over_ratfunc(&r), &u).unwrap();
        assert_eq!(w.words.len(), 2);
        assert_eq!(w.words[1].len(), 1);
    }

    #[test]
    fn det_factor_dihedral() {
        let m = dihedral(1, 1);
        let q = solve_gram_direct(&m).unwrap();
        let rep = det_factor_check(&q, &m.weyl);
        assert!(rep.passed(), "{rep:?}");
        // det = v^4 + v^2 + 1 = Phi_3(v^2)
        assert_eq!(rep.det, lp(&[(4, 1), (2, 1), (0, 1)]));
    }
}
