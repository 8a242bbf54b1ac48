//! Laurent polynomials in one variable with integer or rational coefficients.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};

use super::field::{Field, Rationals, Ring};
use super::poly::{Poly, QPoly};

/// Coefficient ring of a [`LaurentPoly`].
pub trait Coeff: Clone + Debug + Eq + Hash + Send + Sync + Num + Signed + Display + 'static {
    /// `self / other` if the quotient exists in the ring.
    fn div_exact(&self, other: &Self) -> Option<Self>;
    /// Image in a field; `None` if a denominator vanishes there.
    fn to_field<F: Field>(&self, f: &F) -> Option<F::Elem>;
    fn to_rational(&self) -> BigRational;
}

impl Coeff for BigInt {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }
    fn to_field<F: Field>(&self, f: &F) -> Option<F::Elem> {
        Some(f.from_bigint(self))
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
}

impl Coeff for BigRational {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self / other)
    }
    fn to_field<F: Field>(&self, f: &F) -> Option<F::Elem> {
        let n = f.from_bigint(self.numer());
        let d = f.from_bigint(self.denom());
        f.div(&n, &d)
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

/// A Laurent polynomial `sum c_i v^i`, stored densely from the lowest
/// nonzero exponent to the highest. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C = BigInt> {
    low: i64,
    coeffs: Vec<C>,
}

/// Laurent polynomial with rational coefficients.
pub type QLaurent = LaurentPoly<BigRational>;

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(0, vec![c])
    }

    pub fn monomial(c: C, exp: i64) -> Self {
        Self::from_coeffs(exp, vec![c])
    }

    /// The variable `v`.
    pub fn var() -> Self {
        Self::monomial(C::one(), 1)
    }

    /// Builds `sum coeffs[i] v^(low+i)`, trimming zeros at both ends.
    pub fn from_coeffs(low: i64, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        LaurentPoly { low: low + lead as i64, coeffs }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let terms: Vec<(i64, C)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut v = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut v[(e - lo) as usize];
            *slot = slot.clone() + c;
        }
        Self::from_coeffs(lo, v)
    }

    pub fn from_i64_terms(terms: &[(i64, i64)]) -> Self
    where
        C: From<BigInt>,
    {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, C::from(BigInt::from(c)))))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> C {
        let i = exp - self.low;
        if i < 0 {
            return C::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn lowest_coeff(&self) -> Option<&C> {
        self.coeffs.first()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &C)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_coeffs(self.low, self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// `p(v^k)` for `k >= 1`.
    pub fn inflate(&self, k: usize) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e * k as i64, c.clone())))
    }

    /// `p(v^2)`.
    pub fn substitute_square(&self) -> Self {
        self.inflate(2)
    }

    /// `p(v^-1)`.
    pub fn bar(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (-e, c.clone())))
    }

    /// `p(-v)`.
    pub fn negate_variable(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, if e.rem_euclid(2) == 1 { -c.clone() } else { c.clone() })))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / other`; `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let db = other.coeffs.len() - 1;
        let lb = other.coeffs.last().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return None;
        }
        let mut q = vec![C::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            if r[i + db].is_zero() {
                continue;
            }
            let c = r[i + db].div_exact(lb)?;
            for (j, b) in other.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].clone() - c.clone() * b.clone();
            }
            q[i] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(self.low - other.low, q))
    }

    /// Value at `x` in the field `f`; coefficients are mapped into `f`.
    pub fn eval<F: Field>(&self, f: &F, x: &F::Elem) -> Option<F::Elem> {
        if self.is_zero() {
            return Some(f.zero());
        }
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), &c.to_field(f)?);
        }
        Some(f.mul(&acc, &f.pow_signed(x, self.low)))
    }

    /// Coefficients converted to rationals.
    pub fn to_rational(&self) -> QLaurent {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(Coeff::to_rational).collect() }
    }

    /// The ordinary polynomial `v^(-low) * self` together with `low`.
    pub fn to_shifted_qpoly(&self) -> (QPoly, i64) {
        let coeffs = self.coeffs.iter().map(Coeff::to_rational).collect();
        (Poly::from_coeffs(&Rationals, coeffs), self.low)
    }

    /// The polynomial itself; `None` if a negative exponent occurs.
    pub fn to_qpoly(&self) -> Option<QPoly> {
        if self.is_zero() {
            return Some(QPoly::zero());
        }
        if self.low < 0 {
            return None;
        }
        let mut c = vec![BigRational::zero(); self.low as usize];
        c.extend(self.coeffs.iter().map(Coeff::to_rational));
        Some(Poly::from_coeffs(&Rationals, c))
    }

    /// Renders with the given variable name, highest exponent first.
    pub fn format_with(&self, var: &str) -> String {
        let mut s = String::new();
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() || e == 0 {
                s.push_str(&a.to_string());
            }
            match e {
                0 => {}
                1 => s.push_str(var),
                _ => {
                    s.push_str(var);
                    s.push('^');
                    s.push_str(&e.to_string());
                }
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl LaurentPoly<BigInt> {
    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Integer Laurent polynomial from a rational one; `None` if not integral.
    pub fn from_rational(p: &QLaurent) -> Option<Self> {
        let coeffs = p.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect::<Option<Vec<_>>>()?;
        Some(LaurentPoly { low: p.low, coeffs })
    }

    /// Integer polynomial from a rational polynomial; `None` if not integral.
    pub fn from_qpoly(p: &QPoly) -> Option<Self> {
        let c = p.to_integers()?;
        Some(Self::from_coeffs(0, c))
    }
}

impl QLaurent {
    pub fn from_qpoly_shifted(p: &QPoly, low: i64) -> Self {
        Self::from_coeffs(low, p.coeffs().to_vec())
    }
}

impl<C: Coeff> Add<&LaurentPoly<C>> for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.low.min(rhs.low);
        let hi = self.high_exp().unwrap().max(rhs.high_exp().unwrap());
        let mut v = vec![C::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[(self.low - lo) as usize + i] = c.clone();
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            let slot = &mut v[(rhs.low - lo) as usize + i];
            *slot = slot.clone() + c.clone();
        }
        LaurentPoly::from_coeffs(lo, v)
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<C: Coeff> Sub<&LaurentPoly<C>> for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        self + &(-rhs)
    }
}

impl<C: Coeff> Mul<&LaurentPoly<C>> for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut v = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        LaurentPoly::from_coeffs(self.low + rhs.low, v)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr<LaurentPoly<C>> for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("v"))
    }
}

impl<C: Coeff> Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

/// The ring Z[v, v^-1] as a context object, so that generic matrix code
/// applies to matrices of integer Laurent polynomials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LaurentRing;

impl Ring for LaurentRing {
    type Elem = LaurentPoly<BigInt>;

    fn zero(&self) -> Self::Elem {
        LaurentPoly::zero()
    }
    fn one(&self) -> Self::Elem {
        LaurentPoly::one()
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a + b
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a - b
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a * b
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        -a
    }
    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        LaurentPoly::constant(n.clone())
    }
}

/// Shorthand for an integer Laurent polynomial from `(exponent, coefficient)` pairs.
pub fn lp(terms: &[(i64, i64)]) -> LaurentPoly<BigInt> {
    LaurentPoly::from_i64_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::finite_field::PrimeField;

    #[test]
    fn arithmetic_and_display() {
        let a = lp(&[(1, 1), (-1, 1)]); // v + v^-1
        let sq = &a * &a;
        assert_eq!(sq, lp(&[(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(sq.to_string(), "v^2 + 2 + v^-2");
        assert!((&a - &a).is_zero());
        assert_eq!(lp(&[(0, -3), (1, 1)]).to_string(), "v - 3");
        assert_eq!(LaurentPoly::<BigInt>::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = lp(&[(0, 1), (2, 1)]); // 1 + v^2
        let b = lp(&[(0, 1), (1, 1)]);
        let p = &a * &b;
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(a.div_exact(&b), None);
        assert_eq!(lp(&[(0, 2)]).div_exact(&lp(&[(0, 3)])), None);
        assert_eq!(lp(&[(-2, 6)]).div_exact(&lp(&[(1, 3)])), Some(lp(&[(-3, 2)])));
    }

    #[test]
    fn evaluation() {
        let f = PrimeField::new(101);
        let a = lp(&[(1, 1), (-1, 1)]);
        // 3 + 1/3 mod 101 = 3 + 34 = 37
        assert_eq!(a.eval(&f, &3), Some(37));
        assert_eq!(lp(&[(0, 6), (2, 6)]).content(), BigInt::from(6));
    }
}
