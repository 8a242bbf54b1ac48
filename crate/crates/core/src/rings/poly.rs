//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored in ascending degree order with no trailing zeros,
//! so the zero polynomial is the empty vector. All operations take the field
//! context explicitly.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{Field, Rationals, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

/// Polynomials over the rationals.
pub type QPoly = Poly<BigRational>;

impl<E: Clone> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs<F: Field<Elem = E>>(f: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        Self::from_coeffs(f, vec![c])
    }

    pub fn monomial<F: Field<Elem = E>>(f: &F, c: E, deg: usize) -> Self {
        let mut v = vec![f.zero(); deg + 1];
        v[deg] = c;
        Self::from_coeffs(f, v)
    }

    pub fn x<F: Field<Elem = E>>(f: &F) -> Self {
        Self::monomial(f, f.one(), 1)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }
}

pub fn add<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let n = a.coeffs.len().max(b.coeffs.len());
    let v = (0..n)
        .map(|i| match (a.coeffs.get(i), b.coeffs.get(i)) {
            (Some(x), Some(y)) => f.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    Poly::from_coeffs(f, v)
}

pub fn neg<F: Field>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    Poly { coeffs: a.coeffs.iter().map(|c| f.neg(c)).collect() }
}

pub fn sub<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    add(f, a, &neg(f, b))
}

pub fn scale<F: Field>(f: &F, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
    Poly::from_coeffs(f, a.coeffs.iter().map(|x| f.mul(x, c)).collect())
}

pub fn mul<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let mut v = vec![f.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            v[i + j] = f.add(&v[i + j], &f.mul(x, y));
        }
    }
    Poly::from_coeffs(f, v)
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> (Poly<F::Elem>, Poly<F::Elem>) {
    let db = b.degree().expect("polynomial division by zero");
    let lead_inv = f.inv(b.leading().unwrap()).unwrap();
    let mut r = a.coeffs.clone();
    if r.len() <= db {
        return (Poly::zero(), a.clone());
    }
    let mut q = vec![f.zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = f.mul(&r[i + db], &lead_inv);
        if f.is_zero(&c) {
            continue;
        }
        for (j, bc) in b.coeffs.iter().enumerate() {
            r[i + j] = f.sub(&r[i + j], &f.mul(&c, bc));
        }
        q[i] = c;
    }
    r.truncate(db);
    (Poly::from_coeffs(f, q), Poly::from_coeffs(f, r))
}

pub fn rem<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    divrem(f, a, b).1
}

/// Exact quotient, `None` if `b` does not divide `a`.
pub fn div_exact<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
    let (q, r) = divrem(f, a, b);
    r.is_zero().then_some(q)
}

pub fn monic<F: Field>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    match a.leading() {
        None => Poly::zero(),
        Some(l) => scale(f, a, &f.inv(l).unwrap()),
    }
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Extended gcd: returns `(g, s, t)` with `g = s*a + t*b`, `g` monic.
pub fn ext_gcd<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::constant(f, f.one()), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::constant(f, f.one()));
    while !r1.is_zero() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    match r0.leading().cloned() {
        None => (r0, s0, t0),
        Some(l) => {
            let il = f.inv(&l).unwrap();
            (scale(f, &r0, &il), scale(f, &s0, &il), scale(f, &t0, &il))
        }
    }
}

pub fn eval<F: Field>(f: &F, a: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for c in a.coeffs.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

pub fn derivative<F: Field>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    let v = a.coeffs.iter().enumerate().skip(1).map(|(i, c)| f.mul(c, &f.from_i64(i as i64))).collect();
    Poly::from_coeffs(f, v)
}

/// `base^e mod modulus`.
pub fn pow_mod<F: Field>(f: &F, base: &Poly<F::Elem>, mut e: u128, modulus: &Poly<F::Elem>) -> Poly<F::Elem> {
    let mut acc = rem(f, &Poly::constant(f, f.one()), modulus);
    let mut b = rem(f, base, modulus);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), modulus);
        }
        b = rem(f, &mul(f, &b, &b), modulus);
        e >>= 1;
    }
    acc
}

/// Polynomial with coefficients mapped through `g` into another field.
pub fn map_coeffs<F: Field, G: Field>(g: &G, a: &Poly<F::Elem>, h: impl Fn(&F::Elem) -> G::Elem) -> Poly<G::Elem> {
    Poly::from_coeffs(g, a.coeffs.iter().map(h).collect())
}

impl QPoly {
    pub fn from_ints(c: &[i64]) -> QPoly {
        Poly::from_coeffs(&Rationals, c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> QPoly {
        Poly::from_coeffs(&Rationals, c.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    pub fn one() -> QPoly {
        Self::from_ints(&[1])
    }

    /// Integer coefficients, `None` if some coefficient is not integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// `p(x^2)`.
    pub fn substitute_square(&self) -> QPoly {
        let f = Rationals;
        let mut v = vec![f.zero(); 2 * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[2 * i] = c.clone();
        }
        Poly::from_coeffs(&f, v)
    }

    /// `p(-x)`.
    pub fn negate_variable(&self) -> QPoly {
        let v = self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect();
        Poly::from_coeffs(&Rationals, v)
    }

    /// Largest `i` with `d^i | self`; `None` for the zero polynomial.
    pub fn valuation_at(&self, d: &QPoly) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut cur = self.clone();
        let mut i = 0;
        while let Some(q) = div_exact(&Rationals, &cur, d) {
            cur = q;
            i += 1;
        }
        Some(i)
    }
}

impl std::fmt::Display for QPoly {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        format_terms(out, self.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c)), "x")
    }
}

pub(crate) fn format_terms<'a>(
    out: &mut std::fmt::Formatter<'_>,
    terms: impl DoubleEndedIterator<Item = (i64, &'a BigRational)>,
    var: &str,
) -> std::fmt::Result {
    use num_traits::{One, Signed, Zero};
    let mut first = true;
    for (e, c) in terms.rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(out, "-")?;
            }
        } else {
            write!(out, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        let show_coeff = !a.is_one() || e == 0;
        if show_coeff {
            write!(out, "{}", a)?;
        }
        match e {
            0 => {}
            1 => write!(out, "{}", var)?,
            _ => write!(out, "{}^{}", var, e)?,
        }
    }
    if first {
        write!(out, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let f = Rationals;
        let a = QPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let b = QPoly::from_ints(&[1, 1]); // x + 1
        let (q, r) = divrem(&f, &a, &b);
        assert_eq!(q, QPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let g = gcd(&f, &a, &QPoly::from_ints(&[1, 2, 1]));
        assert_eq!(g, b);
        let (g, s, t) = ext_gcd(&f, &a, &QPoly::from_ints(&[2, 1]));
        assert_eq!(g, QPoly::one());
        assert_eq!(add(&f, &mul(&f, &s, &a), &mul(&f, &t, &QPoly::from_ints(&[2, 1]))), g);
    }

    #[test]
    fn display() {
        assert_eq!(QPoly::from_ints(&[1, 0, -1, 1]).to_string(), "x^3 - x^2 + 1");
        assert_eq!(QPoly::zero().to_string(), "0");
    }

    #[test]
    fn valuation() {
        let d = QPoly::from_ints(&[1, 1]);
        let p = mul(&Rationals, &mul(&Rationals, &d, &d), &QPoly::from_ints(&[1, 0, 1]));
        assert_eq!(p.valuation_at(&d), Some(2));
    }
}
