//! Ranks of Gram matrices specialized at `v -> zeta_{2e}` and into finite
//! fields, and the finite set of primes where the modular rank drops.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::gram::GramMatrix;
use crate::rings::cyclotomic::{cyclotomic_norm, CyclotomicField};
use crate::rings::field::{prime_factors, Field};
use crate::rings::finite_field::FiniteField;
use crate::rings::matrix::{self, det_fraction_free, Matrix};
use crate::rings::poly::QPoly;
use crate::weyl::{e_regularity_failure, IrrLabel, WeylType};

/// Where a Gram matrix was specialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// `Q(zeta_{2e})` with `v -> zeta_{2e}^power`.
    Zeta { power: i64 },
    /// `GF(ell^k)` with `v` mapped to the canonical primitive `2e`-th root.
    Modular { ell: u64, k: u32, root: String },
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Zeta { power: 1 } => write!(f, "zeta"),
            Target::Zeta { power } => write!(f, "zeta^{power}"),
            Target::Modular { ell, k, root } => write!(f, "GF({ell}^{k}), v = {root}"),
        }
    }
}

/// Rank of a specialized Gram matrix; the rank is `dim L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedRank {
    pub label: String,
    pub e: u64,
    pub target: Target,
    pub dim: usize,
    pub rank: usize,
    /// Rows and columns of a nonsingular `rank x rank` submatrix.
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

impl SpecializedRank {
    pub fn corank(&self) -> usize {
        self.dim - self.rank
    }

    /// Whether the simple quotient is nonzero.
    pub fn in_canonical_set(&self) -> bool {
        self.rank > 0
    }
}

fn from_echelon<F: Field>(f: &F, q: &GramMatrix, e: u64, target: Target, m: &Matrix<F::Elem>) -> SpecializedRank {
    let ech = matrix::echelon(f, m);
    SpecializedRank {
        label: q.label.clone(),
        e,
        target,
        dim: q.dim(),
        rank: ech.rank(),
        pivot_rows: ech.pivot_rows,
        pivot_cols: ech.pivot_cols,
    }
}

/// Rank of `Q` at `v -> zeta_{2e}`.
pub fn rank_at_zeta(q: &GramMatrix, e: u64) -> SpecializedRank {
    rank_at_zeta_power(q, e, 1)
}

/// Rank of `Q` at `v -> zeta_{2e}^s` for `s` coprime to `2e`.
pub fn rank_at_zeta_power(q: &GramMatrix, e: u64, s: i64) -> SpecializedRank {
    let k = CyclotomicField::new(2 * e);
    let m = q.q.map(|p| k.eval_laurent(p, s));
    from_echelon(&k, q, e, Target::Zeta { power: s }, &m)
}

/// Matrix of `Q` at `v -> zeta_{2e}` over the cyclotomic field.
pub fn specialize_at_zeta(q: &GramMatrix, e: u64) -> (CyclotomicField, Matrix<QPoly>) {
    let k = CyclotomicField::new(2 * e);
    let m = q.q.map(|p| k.eval_laurent(p, 1));
    (k, m)
}

/// Checks the preconditions for specializing into characteristic `ell`.
pub fn check_modular_target(t: &WeylType, e: u64, ell: u64) -> Result<()> {
    if let Some(reason) = e_regularity_failure(t, e, ell) {
        return Err(Error::NotERegular { e, ell, reason });
    }
    if ell == 2 || (2 * e).is_multiple_of(ell) {
        return Err(Error::NoRoot(2 * e));
    }
    Ok(())
}

/// The field `GF(ell^k)` with `k` the order of `ell` modulo `2e`, and its
/// canonical primitive `2e`-th root of unity.
pub fn modular_target(e: u64, ell: u64) -> Result<(FiniteField, u32)> {
    let f = FiniteField::for_root_of_unity(ell, 2 * e)?;
    let theta = f.canonical_root_of_unity(2 * e)?;
    Ok((f, theta))
}

/// Rank of `Q` over `GF(ell^k)` at `v -> theta`, the canonical root of `Phi_{2e}`.
pub fn rank_at_modular(q: &GramMatrix, e: u64, ell: u64) -> Result<SpecializedRank> {
    check_modular_target(&q.weyl, e, ell)?;
    let (f, theta) = modular_target(e, ell)?;
    let m = q.q.try_map(|p| p.eval(&f, &theta).ok_or(Error::NoRoot(2 * e)))?;
    let target = Target::Modular { ell, k: f.degree(), root: f.format_elem(theta) };
    Ok(from_echelon(&f, q, e, target, &m))
}

/// Candidate and verified exceptional primes for one Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadPrimeSet {
    pub label: String,
    pub e: u64,
    pub rank: usize,
    /// Norm of the determinant of the pivot minor at `zeta_{2e}`.
    pub norm: BigInt,
    /// All primes dividing the norm.
    pub candidates: Vec<u64>,
    /// Candidates that are bad for the type or not e-regular, with the reason.
    pub excluded: Vec<(u64, String)>,
    /// e-regular candidates where the modular rank actually drops.
    pub verified: Vec<u64>,
}

/// Takes the pivot minor from [`rank_at_zeta`], computes the norm of its
/// determinant, and tests every e-regular prime divisor for a rank drop.
pub fn bad_prime_set(q: &GramMatrix, e: u64, t: &WeylType) -> Result<BadPrimeSet> {
    let zr = rank_at_zeta(q, e);
    let mut out = BadPrimeSet {
        label: q.label.clone(),
        e,
        rank: zr.rank,
        norm: BigInt::from(1),
        candidates: Vec::new(),
        excluded: Vec::new(),
        verified: Vec::new(),
    };
    if zr.rank == 0 {
        return Ok(out);
    }
    let minor = q.q.submatrix(&zr.pivot_rows, &zr.pivot_cols);
    let (det, _) = det_fraction_free(&minor).to_shifted_qpoly();
    let norm = cyclotomic_norm(&det, 2 * e)?;
    if !norm.is_integer() {
        return Err(Error::VerificationFailed("norm of an integral minor is not an integer".into()));
    }
    out.norm = norm.to_integer().abs();
    if out.norm.is_zero() {
        return Err(Error::VerificationFailed("pivot minor vanishes at zeta".into()));
    }
    for p in prime_factors(&out.norm) {
        let ell = u64::try_from(&p).map_err(|_| Error::TooLarge(format!("candidate prime {p}")))?;
        out.candidates.push(ell);
        if ell == 2 || (2 * e).is_multiple_of(ell) {
            let reason = if t.is_good_prime(ell) { "divides 2e" } else { "bad prime" };
            out.excluded.push((ell, reason.into()));
            continue;
        }
        if let Some(reason) = e_regularity_failure(t, e, ell) {
            let reason = if t.is_good_prime(ell) { reason } else { "bad prime".into() };
            out.excluded.push((ell, reason));
            continue;
        }
        if rank_at_modular(q, e, ell)?.rank < zr.rank {
            out.verified.push(ell);
        }
    }
    Ok(out)
}

/// Row of a table of simple modules: label, `a`, `dim L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimRow {
    pub label: String,
    pub a: u32,
    pub dim: usize,
}

/// Labels with `L != 0` at `zeta_{2e}` and their dimensions, sorted by `a`
/// and then by position in `labels`.
pub fn dim_simple_table(grams: &[GramMatrix], labels: &[IrrLabel], e: u64) -> Result<Vec<DimRow>> {
    let mut rows = Vec::new();
    for g in grams {
        let pos = labels.iter().position(|l| l.name == g.label).ok_or_else(|| Error::MissingAInvariant(g.label.clone()))?;
        let a = labels[pos].a.ok_or_else(|| Error::MissingAInvariant(g.label.clone()))?;
        let r = rank_at_zeta(g, e);
        if r.in_canonical_set() {
            rows.push((a, pos, DimRow { label: g.label.clone(), a, dim: r.rank }));
        }
    }
    rows.sort_by_key(|(a, pos, _)| (*a, *pos));
    Ok(rows.into_iter().map(|(_, _, r)| r).collect())
}

/// Whether `v -> zeta_{2e}^s` is a Galois conjugate of `v -> zeta_{2e}`.
pub fn is_conjugate_power(e: u64, s: i64) -> bool {
    (2 * e as i64).gcd(&s) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn g2_cellular(label: &str) -> GramMatrix {
        fixtures::g2_cellular_grams().into_iter().find(|g| g.label == label).unwrap()
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(rank_at_zeta(&g2_cellular("r"), 6).rank, 1);
        assert_eq!(rank_at_zeta(&g2_cellular("eps"), 2).rank, 0);
        assert_eq!(rank_at_zeta(&g2_cellular("r'"), 3).rank, 1);
        assert_eq!(rank_at_zeta(&g2_cellular("r'"), 4).rank, 2);
    }

    #[test]
    fn modular_examples() {
        let g = g2_cellular("r'");
        assert_eq!(rank_at_modular(&g, 3, 7).unwrap().rank, 1);
        assert!(matches!(rank_at_modular(&g, 3, 3), Err(Error::NotERegular { .. })));
        assert!(matches!(rank_at_modular(&g, 5, 5), Err(Error::NoRoot(10))));
        assert!(matches!(rank_at_modular(&g, 2, 3), Err(Error::NotERegular { .. })));
    }

    #[test]
    fn bad_primes_small() {
        let t: WeylType = "G2".parse().unwrap();
        let b = bad_prime_set(&g2_cellular("eps1"), 3, &t).unwrap();
        assert_eq!(b.candidates, vec![3]);
        assert!(b.verified.is_empty());
        let b = bad_prime_set(&g2_cellular("1"), 3, &t).unwrap();
        assert!(b.candidates.is_empty() && b.verified.is_empty());
    }

    #[test]
    fn conjugate_root_ranks() {
        for g in fixtures::g2_cellular_grams() {
            assert!(is_conjugate_power(3, 5));
            assert_eq!(rank_at_zeta_power(&g, 3, 5).rank, rank_at_zeta(&g, 3).rank, "{}", g.label);
        }
    }
}
