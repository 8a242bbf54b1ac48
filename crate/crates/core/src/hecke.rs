//! Characters and Schur elements of generic Iwahori-Hecke algebras.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rings::cyclotomic::cyclotomic_qpoly;
use crate::rings::field::{prime_factors, Rationals};
use crate::rings::laurent::{LaurentPoly, LaurentRing, QLaurent};
use crate::rings::matrix::{self, Matrix};
use crate::rings::poly::{self, QPoly};
use crate::weyl::{enumerate_elements, poincare_polynomial, IrrLabel, WeylType};
use crate::wgraph::GenMatrices;

/// `trace(sigma(T_w))`.
pub fn character_value(m: &GenMatrices, word: &[usize]) -> LaurentPoly<BigInt> {
    trace(&m.word_matrix(word))
}

fn trace(a: &Matrix<LaurentPoly<BigInt>>) -> LaurentPoly<BigInt> {
    (0..a.rows()).fold(LaurentPoly::zero(), |acc, i| &acc + a.get(i, i))
}

/// Schur element `c = f u^{-a} c~` of an irreducible representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurElement {
    pub label: String,
    pub dim: usize,
    /// `c` as a Laurent polynomial in `u`.
    pub c: QLaurent,
    pub a: u32,
    pub f: BigRational,
    /// Polynomial in `u` with constant term 1.
    pub c_tilde: QPoly,
}

impl SchurElement {
    fn from_c(label: String, dim: usize, c: QLaurent) -> Result<Self> {
        let low = c.low_exp().ok_or_else(|| Error::VerificationFailed(format!("Schur element of {label} is zero")))?;
        if low > 0 {
            return Err(Error::VerificationFailed(format!("Schur element of {label} has no constant or negative term")));
        }
        let f = c.lowest_coeff().unwrap().clone();
        let (shifted, _) = c.to_shifted_qpoly();
        let c_tilde = poly::scale(&Rationals, &shifted, &f.recip());
        Ok(SchurElement { label, dim, c, a: (-low) as u32, f, c_tilde })
    }

    /// `f` as an integer, if it is one.
    pub fn f_integer(&self) -> Option<BigInt> {
        self.f.is_integer().then(|| self.f.to_integer())
    }

    /// `c~` is monic with integer coefficients and divides `P_W`; `f` is a
    /// positive integer whose prime divisors are bad for the type.
    pub fn check_shape(&self, t: &WeylType) -> Result<()> {
        let err = |m: &str| Err(Error::VerificationFailed(format!("{}: {m}", self.label)));
        if !self.c_tilde.coeffs().iter().all(|c| c.is_integer()) || self.c_tilde.leading() != Some(&BigRational::one()) {
            return err("c~ is not monic in Z[u]");
        }
        if poly::div_exact(&Rationals, &poincare_polynomial(t), &self.c_tilde).is_none() {
            return err("c~ does not divide P_W");
        }
        let Some(f) = self.f_integer().filter(|f| f.is_positive()) else {
            return err("f is not a positive integer");
        };
        if prime_factors(&f).iter().any(|p| !t.bad_primes().iter().any(|b| BigInt::from(*b) == *p)) {
            return err("f has a good prime divisor");
        }
        Ok(())
    }
}

/// Converts a Laurent polynomial in `v` with even exponents to one in `u`.
fn to_u(p: &LaurentPoly<BigInt>) -> Result<LaurentPoly<BigInt>> {
    if p.terms().any(|(e, _)| e % 2 != 0) {
        return Err(Error::VerificationFailed("odd power of v in an orthogonality sum".into()));
    }
    Ok(LaurentPoly::from_terms(p.terms().map(|(e, c)| (e / 2, c.clone()))))
}

/// Per element `w`: `u^{-l(w)}` paired with the traces of `T_w` and
/// `T_{w^{-1}}` for every representation.
fn trace_table(t: &WeylType, reps: &[GenMatrices]) -> Result<Vec<(i64, Vec<LaurentPoly<BigInt>>, Vec<LaurentPoly<BigInt>>)>> {
    let elems = enumerate_elements(t)?;
    let index: HashMap<&[usize], usize> = elems.words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    // The lexicographically least reduced word of w = s w' has w' as the
    // least word of s w, so the suffix is always an earlier element.
    let per_rep: Vec<(Vec<LaurentPoly<BigInt>>, Vec<LaurentPoly<BigInt>>)> = reps
        .par_iter()
        .map(|m| {
            let d = m.dim();
            let mut fwd: Vec<Matrix<LaurentPoly<BigInt>>> = Vec::with_capacity(elems.len());
            let mut inv: Vec<Matrix<LaurentPoly<BigInt>>> = Vec::with_capacity(elems.len());
            for w in &elems.words {
                if w.is_empty() {
                    fwd.push(matrix::identity(&LaurentRing, d));
                    inv.push(matrix::identity(&LaurentRing, d));
                    continue;
                }
                let rest = index[&w[1..]];
                let g = &m.gens[w[0]];
                // T_w = T_s T_{w'} and T_{w^{-1}} = T_{w'^{-1}} T_s.
                fwd.push(matrix::mul(&LaurentRing, g, &fwd[rest]).unwrap());
                inv.push(matrix::mul(&LaurentRing, &inv[rest], g).unwrap());
            }
            (fwd.iter().map(trace).collect(), inv.iter().map(trace).collect())
        })
        .collect();
    Ok(elems
        .words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let fwd = per_rep.iter().map(|r| r.0[i].clone()).collect();
            let inv = per_rep.iter().map(|r| r.1[i].clone()).collect();
            (-(w.len() as i64), fwd, inv)
        })
        .collect())
}

/// `sum_w u^{-l(w)} chi_a(T_w) chi_b(T_{w^{-1}})` as a polynomial in `v`.
fn pairing(table: &[(i64, Vec<LaurentPoly<BigInt>>, Vec<LaurentPoly<BigInt>>)], a: usize, b: usize) -> LaurentPoly<BigInt> {
    table.iter().fold(LaurentPoly::zero(), |acc, (neg_len, fwd, inv)| &acc + &(&fwd[a] * &inv[b]).shift(2 * neg_len))
}

/// Schur elements of a complete set of irreducible representations of an
/// enumerable group, after checking completeness and the orthogonality
/// relations between distinct representations.
pub fn schur_elements(reps: &[GenMatrices], t: &WeylType) -> Result<Vec<SchurElement>> {
    if !t.is_enumerable() {
        return Err(Error::TooLarge(format!("{t} is not enumerable; supply invariants as data")));
    }
    let total: BigInt = reps.iter().map(|m| BigInt::from(m.dim() * m.dim())).sum();
    if total != t.order() {
        return Err(Error::IncompleteRepSet(format!("sum of squared dimensions is {total}, |W| = {}", t.order())));
    }
    let table = trace_table(t, reps)?;
    let n = reps.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let bad = pairs.par_iter().find_first(|&&(a, b)| !pairing(&table, a, b).is_zero());
    if let Some(&(a, b)) = bad {
        return Err(Error::OrthogonalityViolation(reps[a].label.clone(), reps[b].label.clone()));
    }
    (0..n)
        .into_par_iter()
        .map(|i| {
            let s = to_u(&pairing(&table, i, i))?;
            let d = BigRational::from_integer(BigInt::from(reps[i].dim()));
            let c = QLaurent::from_terms(s.terms().map(|(e, x)| (e, BigRational::from_integer(x.clone()) / &d)));
            SchurElement::from_c(reps[i].label.clone(), reps[i].dim(), c)
        })
        .collect()
}

/// Largest `i` with `Phi_e^i` dividing `c` in `Q[u]`.
pub fn phi_e_defect(c: &SchurElement, e: u64) -> u32 {
    let phi = cyclotomic_qpoly(e);
    let mut p = c.c_tilde.clone();
    let mut i = 0;
    while let Some(q) = poly::div_exact(&Rationals, &p, &phi) {
        p = q;
        i += 1;
    }
    i
}

/// Whether `Phi_e` does not divide `P_W`, i.e. the specialized algebra with
/// `u` a primitive `e`-th root of unity is semisimple.
pub fn semisimple_at(t: &WeylType, e: u64) -> bool {
    poly::div_exact(&Rationals, &poincare_polynomial(t), &cyclotomic_qpoly(e)).is_none()
}

/// Labels with `a` and `f` taken from computed Schur elements.
pub fn labels_from_schur(schur: &[SchurElement]) -> Vec<IrrLabel> {
    schur.iter().map(|s| IrrLabel { name: s.label.clone(), dim: s.dim, a: Some(s.a), f: s.f_integer() }).collect()
}

/// Compares computed invariants with a supplied table; entries missing from
/// the table are skipped.
pub fn check_against_table(schur: &[SchurElement], table: &[IrrLabel]) -> Result<()> {
    for s in schur {
        let Some(row) = table.iter().find(|l| l.name == s.label) else { continue };
        let a_ok = row.a.is_none_or(|a| a == s.a);
        let f_ok = row.f.as_ref().is_none_or(|f| Some(f) == s.f_integer().as_ref());
        if !a_ok || !f_ok || row.dim != s.dim {
            return Err(Error::VerificationFailed(format!("invariants of {} disagree with the table", s.label)));
        }
    }
    Ok(())
}
