//! Cyclotomic polynomials, cyclotomic number fields and their norms.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Rationals, Ring};
use super::laurent::{Coeff, LaurentPoly};
use super::poly::{self, Poly, QPoly};
use crate::error::{Error, Result};

/// The `d`-th cyclotomic polynomial over the rationals.
pub fn cyclotomic_qpoly(d: u64) -> QPoly {
    assert!(d >= 1, "cyclotomic index must be positive");
    let f = Rationals;
    // x^d - 1 divided by all Phi_k with k | d, k < d.
    let mut num = QPoly::from_ints(&[-1]);
    num = poly::add(&f, &num, &Poly::monomial(&f, BigRational::one(), d as usize));
    for k in 1..d {
        if d.is_multiple_of(k) {
            num = poly::div_exact(&f, &num, &cyclotomic_qpoly(k)).expect("cyclotomic factor divides");
        }
    }
    num
}

/// The `d`-th cyclotomic polynomial with integer coefficients.
pub fn cyclotomic_polynomial(d: u64) -> LaurentPoly<BigInt> {
    LaurentPoly::from_qpoly(&cyclotomic_qpoly(d)).expect("integral coefficients")
}

/// `p(v^2)` for a polynomial `p`.
pub fn substitute_square<C: Coeff>(p: &LaurentPoly<C>) -> LaurentPoly<C> {
    p.substitute_square()
}

/// `Res(f, g)` for monic `f`, i.e. the product of `g(a)` over the roots `a` of `f`.
pub fn resultant_monic(f: &QPoly, g: &QPoly) -> BigRational {
    let field = Rationals;
    let m = f.degree().expect("nonzero modulus");
    if m == 0 {
        return BigRational::one();
    }
    let r = poly::rem(&field, g, f);
    match r.degree() {
        None => BigRational::zero(),
        Some(0) => num_traits::pow(r.coeffs()[0].clone(), m),
        Some(dr) => {
            let lc = r.leading().unwrap().clone();
            let rm = poly::monic(&field, &r);
            let sign = if (m * dr) % 2 == 1 { -BigRational::one() } else { BigRational::one() };
            sign * num_traits::pow(lc, m) * resultant_monic(&rm, f)
        }
    }
}

/// Norm of `g(zeta_n)` from Q(zeta_n) down to Q.
pub fn cyclotomic_norm(g: &QPoly, n: u64) -> Result<BigRational> {
    let phi = cyclotomic_qpoly(n);
    if poly::rem(&Rationals, g, &phi).is_zero() {
        return Err(Error::ZeroValue);
    }
    Ok(resultant_monic(&phi, g))
}

/// Integer version of [`cyclotomic_norm`] for integer-coefficient input.
pub fn cyclotomic_norm_int(g: &LaurentPoly<BigInt>, n: u64) -> Result<BigInt> {
    let (p, _) = g.to_shifted_qpoly();
    let r = cyclotomic_norm(&p, n)?;
    debug_assert!(r.is_integer());
    Ok(r.to_integer())
}

/// The cyclotomic field Q(zeta_n), elements stored as polynomials in
/// `zeta_n` of degree below `phi(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    n: u64,
    phi: QPoly,
}

impl CyclotomicField {
    pub fn new(n: u64) -> Self {
        CyclotomicField { n, phi: cyclotomic_qpoly(n) }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn defining_polynomial(&self) -> &QPoly {
        &self.phi
    }

    pub fn reduce(&self, p: &QPoly) -> QPoly {
        poly::rem(&Rationals, p, &self.phi)
    }

    /// `zeta_n^k`.
    pub fn zeta_pow(&self, k: i64) -> QPoly {
        let e = k.rem_euclid(self.n as i64) as usize;
        self.reduce(&Poly::monomial(&Rationals, BigRational::one(), e))
    }

    /// Image of a Laurent polynomial under `v -> zeta_n^s`.
    pub fn eval_laurent<C: Coeff>(&self, p: &LaurentPoly<C>, s: i64) -> QPoly {
        let n = self.n as i64;
        let mut acc = vec![BigRational::zero(); self.n as usize];
        for (e, c) in p.terms() {
            let i = (e * s).rem_euclid(n) as usize;
            acc[i] += c.to_rational();
        }
        self.reduce(&Poly::from_coeffs(&Rationals, acc))
    }

    /// Field norm down to Q.
    pub fn norm(&self, a: &QPoly) -> Result<BigRational> {
        cyclotomic_norm(a, self.n)
    }

    /// Renders an element in powers of `z<n>`, e.g. `-2 + 2*z8^2`.
    pub fn format_elem(&self, a: &QPoly) -> String {
        let name = format!("z{}", self.n);
        let mut s = String::new();
        for (i, c) in a.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            match i {
                0 => s.push_str(&abs.to_string()),
                _ => {
                    if !abs.is_one() {
                        s.push_str(&format!("{abs}*"));
                    }
                    s.push_str(&name);
                    if i > 1 {
                        s.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl Ring for CyclotomicField {
    type Elem = QPoly;

    fn zero(&self) -> QPoly {
        QPoly::zero()
    }
    fn one(&self) -> QPoly {
        QPoly::one()
    }
    fn is_zero(&self, a: &QPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &QPoly, b: &QPoly) -> QPoly {
        poly::add(&Rationals, a, b)
    }
    fn sub(&self, a: &QPoly, b: &QPoly) -> QPoly {
        poly::sub(&Rationals, a, b)
    }
    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        self.reduce(&poly::mul(&Rationals, a, b))
    }
    fn neg(&self, a: &QPoly) -> QPoly {
        poly::neg(&Rationals, a)
    }
    fn from_bigint(&self, n: &BigInt) -> QPoly {
        QPoly::from_bigints(std::slice::from_ref(n))
    }
}

impl Field for CyclotomicField {
    fn inv(&self, a: &QPoly) -> Option<QPoly> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = poly::ext_gcd(&Rationals, a, &self.phi);
        (g.degree() == Some(0)).then(|| self.reduce(&s))
    }
}

impl fmt::Display for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.n)
    }
}
