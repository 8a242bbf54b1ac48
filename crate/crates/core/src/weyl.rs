//! Finite Weyl groups: Cartan and Coxeter data, degrees, Poincare
//! polynomials, bad primes and element enumeration for small rank.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rings::field::Rationals;
use crate::rings::poly::{self, QPoly};

/// Largest group order for which [`enumerate_elements`] runs.
pub const ENUMERATION_LIMIT: u64 = 1152;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// An irreducible finite Weyl group, e.g. `G2` or `E6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeylType {
    family: Family,
    rank: usize,
}

impl WeylType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::Parse(format!("no Weyl group of type {family:?}{rank}")));
        }
        Ok(WeylType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Number of simple reflections.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Cartan matrix `A` with `s_i(alpha_j) = alpha_j - A[i][j] alpha_i`.
    /// Node numbering follows Bourbaki; for E_n the branch node is 4 and the
    /// short tail is node 2.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match self.family {
            Family::A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
            Family::B => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -2, -1);
            }
            Family::C => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -1, -2);
            }
            Family::D => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 3, n - 1, -1, -1);
            }
            Family::E => {
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            }
            Family::F => {
                link(0, 1, -1, -1);
                link(1, 2, -2, -1);
                link(2, 3, -1, -1);
            }
            Family::G => link(0, 1, -1, -3),
        }
        a
    }

    /// Coxeter matrix: `m[s][t]` is the order of `st`.
    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        let a = self.cartan();
        let n = self.rank;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            1
                        } else {
                            match a[i][j] * a[j][i] {
                                0 => 2,
                                1 => 3,
                                2 => 4,
                                3 => 6,
                                other => unreachable!("Cartan product {other}"),
                            }
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// The degrees of the basic invariants, ascending.
    pub fn degrees(&self) -> Vec<u64> {
        let n = self.rank as u64;
        let mut d: Vec<u64> = match self.family {
            Family::A => (2..=n + 1).collect(),
            Family::B | Family::C => (1..=n).map(|i| 2 * i).collect(),
            Family::D => (1..n).map(|i| 2 * i).chain(std::iter::once(n)).collect(),
            Family::E => match n {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            Family::F => vec![2, 6, 8, 12],
            Family::G => vec![2, 6],
        };
        d.sort_unstable();
        d
    }

    /// Primes that are bad for this type.
    pub fn bad_primes(&self) -> Vec<u64> {
        match (self.family, self.rank) {
            (Family::A, _) => vec![],
            (Family::B | Family::C | Family::D, _) => vec![2],
            (Family::E, 8) => vec![2, 3, 5],
            _ => vec![2, 3],
        }
    }

    pub fn is_good_prime(&self, ell: u64) -> bool {
        !self.bad_primes().contains(&ell)
    }

    /// `|W|`, the product of the degrees.
    pub fn order(&self) -> BigInt {
        self.degrees().iter().map(|&d| BigInt::from(d)).product()
    }

    pub fn is_enumerable(&self) -> bool {
        self.order() <= BigInt::from(ENUMERATION_LIMIT)
    }
}

impl fmt::Display for WeylType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for WeylType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::Parse(format!("unknown Weyl type '{s}'"))),
        };
        let rank: usize =
            chars.as_str().trim_start_matches('_').parse().map_err(|_| Error::Parse(format!("bad rank in Weyl type '{s}'")))?;
        WeylType::new(fam, rank)
    }
}

/// `P_W(u) = prod (u^d - 1)/(u - 1)` over the degrees.
pub fn poincare_polynomial(t: &WeylType) -> QPoly {
    t.degrees().iter().fold(QPoly::one(), |acc, &d| {
        let factor = QPoly::from_ints(&vec![1; d as usize]);
        poly::mul(&Rationals, &acc, &factor)
    })
}

/// One reduced word per group element, in (length, lexicographic) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElements {
    /// Lexicographically least reduced words; generator indices are 0-based.
    pub words: Vec<Vec<usize>>,
}

impl GroupElements {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// `sum_w u^l(w)`.
    pub fn length_polynomial(&self) -> QPoly {
        let maxlen = self.words.iter().map(Vec::len).max().unwrap_or(0);
        let mut counts = vec![0i64; maxlen + 1];
        for w in &self.words {
            counts[w.len()] += 1;
        }
        QPoly::from_ints(&counts)
    }
}

/// Enumerates the group by breadth-first search over reduced words, using
/// the reflection representation on root coordinates to detect length increase.
pub fn enumerate_elements(t: &WeylType) -> Result<GroupElements> {
    if !t.is_enumerable() {
        return Err(Error::TooLarge(format!("{t} has order {}", t.order())));
    }
    let n = t.rank();
    let a = t.cartan();
    // Row-major n x n integer matrices acting on root coordinates.
    let refl: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut m = vec![0i64; n * n];
            for j in 0..n {
                m[j * n + j] = 1;
                // column j is s_i(alpha_j) = alpha_j - A[i][j] alpha_i
                m[i * n + j] -= a[i][j];
            }
            m
        })
        .collect();
    let matmul = |x: &[i64], y: &[i64]| {
        let mut z = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let xv = x[i * n + k];
                if xv != 0 {
                    for j in 0..n {
                        z[i * n + j] += xv * y[k * n + j];
                    }
                }
            }
        }
        z
    };
    let mut identity = vec![0i64; n * n];
    for i in 0..n {
        identity[i * n + i] = 1;
    }
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    seen.insert(identity.clone(), ());
    let mut words = vec![Vec::new()];
    let mut level = vec![(Vec::<usize>::new(), identity)];
    while !level.is_empty() {
        let mut next = Vec::new();
        for (w, m) in &level {
            for (s, r) in refl.iter().enumerate() {
                // l(ws) > l(w) iff w(alpha_s) is a positive root
                if (0..n).any(|i| m[i * n + s] < 0) {
                    continue;
                }
                let ms = matmul(m, r);
                if seen.insert(ms.clone(), ()).is_none() {
                    let mut ws = w.clone();
                    ws.push(s);
                    words.push(ws.clone());
                    next.push((ws, ms));
                }
            }
        }
        level = next;
    }
    Ok(GroupElements { words })
}

/// Whether `(e, ell)` is e-regular for `t`: `ell` is good and `e * ell`
/// divides no degree.
pub fn is_e_regular(t: &WeylType, e: u64, ell: u64) -> bool {
    t.is_good_prime(ell) && t.degrees().iter().all(|d| d % (e * ell) != 0)
}

/// Reason why `(e, ell)` fails to be e-regular, if it does.
pub fn e_regularity_failure(t: &WeylType, e: u64, ell: u64) -> Option<String> {
    if !t.is_good_prime(ell) {
        return Some(format!("l = {ell} is a bad prime for {t}"));
    }
    t.degrees().iter().find(|&&d| d % (e * ell) == 0).map(|d| format!("e*l = {} divides the degree {d} of {t}", e * ell))
}

/// Name and invariants of an irreducible character.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IrrLabel {
    pub name: String,
    pub dim: usize,
    pub a: Option<u32>,
    pub f: Option<BigInt>,
}

impl IrrLabel {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        IrrLabel { name: name.into(), dim, a: None, f: None }
    }

    pub fn with_invariants(mut self, a: u32, f: impl Into<BigInt>) -> Self {
        self.a = Some(a);
        self.f = Some(f.into());
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AOrder {
    Less,
    Greater,
    EqualLabel,
    Incomparable,
}

/// The partial order on labels: `l < m` iff `a(l) > a(m)`.
pub fn a_order_compare(l: &IrrLabel, m: &IrrLabel) -> Result<AOrder> {
    if l.name == m.name {
        return Ok(AOrder::EqualLabel);
    }
    let al = l.a.ok_or_else(|| Error::MissingAInvariant(l.name.clone()))?;
    let am = m.a.ok_or_else(|| Error::MissingAInvariant(m.name.clone()))?;
    Ok(match al.cmp(&am) {
        std::cmp::Ordering::Greater => AOrder::Less,
        std::cmp::Ordering::Less => AOrder::Greater,
        std::cmp::Ordering::Equal => AOrder::Incomparable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> WeylType {
        s.parse().unwrap()
    }

    #[test]
    fn poincare_examples() {
        assert_eq!(poincare_polynomial(&ty("A1")), QPoly::from_ints(&[1, 1]));
        assert_eq!(poincare_polynomial(&ty("G2")), QPoly::from_ints(&[1, 2, 2, 2, 2, 2, 1]));
        let f4 = poincare_polynomial(&ty("F4"));
        assert_eq!(f4.degree(), Some(1 + 5 + 7 + 11));
    }

    #[test]
    fn enumeration_examples() {
        let a1 = enumerate_elements(&ty("A1")).unwrap();
        assert_eq!(a1.words, vec![vec![], vec![0]]);
        let g2 = enumerate_elements(&ty("G2")).unwrap();
        assert_eq!(g2.len(), 12);
        assert_eq!(g2.length_polynomial(), poincare_polynomial(&ty("G2")));
        assert_eq!(g2.words[11], vec![0, 1, 0, 1, 0, 1]);
        assert_eq!(enumerate_elements(&ty("B2")).unwrap().len(), 8);
        assert!(matches!(enumerate_elements(&ty("E6")), Err(Error::TooLarge(_))));
    }

    #[test]
    fn regularity() {
        assert!(is_e_regular(&ty("G2"), 3, 7));
        assert!(!is_e_regular(&ty("G2"), 3, 2));
        assert!(!is_e_regular(&ty("E8"), 2, 5));
        assert!(!is_e_regular(&ty("G2"), 2, 3));
    }

    #[test]
    fn a_order() {
        let eps = IrrLabel::new("eps", 1).with_invariants(6, 1);
        let one = IrrLabel::new("1", 1).with_invariants(0, 1);
        let r = IrrLabel::new("r", 2).with_invariants(1, 6);
        let rp = IrrLabel::new("r'", 2).with_invariants(1, 2);
        assert_eq!(a_order_compare(&eps, &one).unwrap(), AOrder::Less);
        assert_eq!(a_order_compare(&r, &rp).unwrap(), AOrder::Incomparable);
        assert_eq!(a_order_compare(&r, &r).unwrap(), AOrder::EqualLabel);
        assert!(a_order_compare(&IrrLabel::new("x", 1), &one).is_err());
    }

    #[test]
    fn coxeter_orders() {
        assert_eq!(ty("G2").coxeter_matrix()[0][1], 6);
        assert_eq!(ty("F4").coxeter_matrix()[1][2], 4);
        assert_eq!(ty("E6").coxeter_matrix()[1][3], 3);
        assert_eq!(ty("E6").coxeter_matrix()[1][2], 2);
    }
}
