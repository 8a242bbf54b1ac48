//! The rational function field Q(v).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::field::{Field, Rationals, Ring};
use super::laurent::{Coeff, LaurentPoly};
use super::poly::{self, Poly, QPoly};

/// A reduced fraction `num / den` with `den` monic and coprime to `num`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let f = Rationals;
        if num.is_zero() {
            return RatFunc { num, den: QPoly::one() };
        }
        let g = poly::gcd(&f, &num, &den);
        let (mut n, mut d) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (poly::div_exact(&f, &num, &g).unwrap(), poly::div_exact(&f, &den, &g).unwrap())
        };
        let lc = d.leading().unwrap().clone();
        if !lc.is_one() {
            let il = lc.recip();
            n = poly::scale(&f, &n, &il);
            d = poly::scale(&f, &d, &il);
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFunc { num: p, den: QPoly::one() }
    }

    pub fn from_laurent<C: Coeff>(p: &LaurentPoly<C>) -> Self {
        let (q, low) = p.to_shifted_qpoly();
        if low >= 0 {
            let shift = Poly::monomial(&Rationals, One::one(), low as usize);
            Self::from_poly(poly::mul(&Rationals, &q, &shift))
        } else {
            Self::new(q, Poly::monomial(&Rationals, One::one(), (-low) as usize))
        }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Least common multiple of the integer denominators of the numerator's coefficients.
    pub fn coefficient_denominator(&self) -> BigInt {
        self.num.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }
}

/// The field Q(v) of rational functions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalFunctions;

impl Ring for RationalFunctions {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc::from_poly(QPoly::zero())
    }
    fn one(&self) -> RatFunc {
        RatFunc::from_poly(QPoly::one())
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_zero()
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let f = Rationals;
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            return RatFunc::new(poly::add(&f, &a.num, &b.num), a.den.clone());
        }
        let n = poly::add(&f, &poly::mul(&f, &a.num, &b.den), &poly::mul(&f, &b.num, &a.den));
        RatFunc::new(n, poly::mul(&f, &a.den, &b.den))
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let f = Rationals;
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        if a.is_polynomial() && b.is_polynomial() {
            return RatFunc { num: poly::mul(&f, &a.num, &b.num), den: QPoly::one() };
        }
        RatFunc::new(poly::mul(&f, &a.num, &b.num), poly::mul(&f, &a.den, &b.den))
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc { num: poly::neg(&Rationals, &a.num), den: a.den.clone() }
    }
    fn from_bigint(&self, n: &BigInt) -> RatFunc {
        RatFunc::from_poly(QPoly::from_bigints(std::slice::from_ref(n)))
    }
    fn is_one(&self, a: &RatFunc) -> bool {
        a.den.degree() == Some(0) && a.num.degree() == Some(0) && a.num.coeffs()[0].is_one()
    }
}

impl Field for RationalFunctions {
    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        if a.num.is_zero() {
            return None;
        }
        Some(RatFunc::new(a.den.clone(), a.num.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::laurent::lp;

    #[test]
    fn reduction() {
        let k = RationalFunctions;
        let a = RatFunc::from_laurent(&lp(&[(1, 1), (-1, 1)])); // (v^2 + 1) / v
        assert_eq!(a.den(), &QPoly::from_ints(&[0, 1]));
        let b = k.inv(&a).unwrap();
        assert!(k.is_one(&k.mul(&a, &b)));
        let c = RatFunc::new(QPoly::from_ints(&[-2, 0, 2]), QPoly::from_ints(&[2, 2]));
        assert_eq!(c, RatFunc::from_poly(QPoly::from_ints(&[-1, 1])));
    }
}
