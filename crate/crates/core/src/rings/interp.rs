//! Polynomial interpolation and rational function reconstruction.

use num_rational::BigRational;

use super::field::{Field, Rationals};
use super::laurent::QLaurent;
use super::poly::{self, Poly};
use crate::error::{Error, Result};

/// Newton interpolation through distinct points; degree below `points.len()`.
pub fn interpolate<F: Field>(f: &F, points: &[(F::Elem, F::Elem)]) -> Result<Poly<F::Elem>> {
    let n = points.len();
    let mut dd: Vec<F::Elem> = points.iter().map(|p| p.1.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = f.sub(&points[i].0, &points[i - j].0);
            let inv = f.inv(&den).ok_or_else(|| Error::DimensionMismatch("interpolation points must be distinct".into()))?;
            dd[i] = f.mul(&f.sub(&dd[i], &dd[i - 1]), &inv);
        }
    }
    let mut acc = Poly::zero();
    for i in (0..n).rev() {
        let lin = Poly::from_coeffs(f, vec![f.neg(&points[i].0), f.one()]);
        acc = poly::add(f, &poly::mul(f, &acc, &lin), &Poly::constant(f, dd[i].clone()));
    }
    Ok(acc)
}

/// Coefficients `c_lo, ..., c_hi` of the unique Laurent polynomial
/// `sum c_j x^j` in the window `[lo, hi]` matching every sample.
pub fn interpolate_laurent<F: Field>(f: &F, samples: &[(F::Elem, F::Elem)], lo: i64, hi: i64) -> Result<Vec<F::Elem>> {
    let width = (hi - lo + 1) as usize;
    if samples.len() < width {
        return Err(Error::DimensionMismatch(format!("{} samples for a window of width {width}", samples.len())));
    }
    let shifted = samples
        .iter()
        .map(|(x, y)| {
            if lo < 0 && f.is_zero(x) {
                return Err(Error::DimensionMismatch("zero sample point with negative exponents".into()));
            }
            Ok((x.clone(), f.mul(y, &f.pow_signed(x, -lo))))
        })
        .collect::<Result<Vec<_>>>()?;
    let p = interpolate(f, &shifted[..width])?;
    for (x, y) in &shifted[width..] {
        if poly::eval(f, &p, x) != *y {
            return Err(Error::InconsistentSamples { lo, hi });
        }
    }
    Ok((0..width).map(|i| p.coeff(f, i)).collect())
}

/// [`interpolate_laurent`] over the rationals, returning a Laurent polynomial.
pub fn interpolate_laurent_q(samples: &[(BigRational, BigRational)], lo: i64, hi: i64) -> Result<QLaurent> {
    let c = interpolate_laurent(&Rationals, samples, lo, hi)?;
    Ok(QLaurent::from_coeffs(lo, c))
}

/// Given `p = n/d mod m` with `deg m = N`, recovers `(n, d)` with `deg n < k`,
/// `deg d <= N - k`, `d` monic and coprime to `m`, if such a pair exists.
pub fn rational_function_reconstruct<F: Field>(
    f: &F,
    m: &Poly<F::Elem>,
    p: &Poly<F::Elem>,
    k: usize,
) -> Option<(Poly<F::Elem>, Poly<F::Elem>)> {
    let big_n = m.degree()?;
    let (mut r0, mut r1) = (m.clone(), poly::rem(f, p, m));
    let (mut t0, mut t1) = (Poly::zero(), Poly::constant(f, f.one()));
    while r1.degree().is_some_and(|d| d >= k) {
        let (q, r2) = poly::divrem(f, &r0, &r1);
        let t2 = poly::sub(f, &t0, &poly::mul(f, &q, &t1));
        (r0, r1) = (r1, r2);
        (t0, t1) = (t1, t2);
    }
    let dt = t1.degree()?;
    if dt + k > big_n {
        return None;
    }
    if poly::gcd(f, &t1, m).degree() != Some(0) {
        return None;
    }
    let il = f.inv(t1.leading().unwrap()).unwrap();
    Some((poly::scale(f, &r1, &il), poly::scale(f, &t1, &il)))
}

/// `prod (x - a)` over the given points.
pub fn vanishing_polynomial<F: Field>(f: &F, points: &[F::Elem]) -> Poly<F::Elem> {
    points.iter().fold(Poly::constant(f, f.one()), |acc, a| poly::mul(f, &acc, &Poly::from_coeffs(f, vec![f.neg(a), f.one()])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::field::{rat, rat_int, Ring};
    use crate::rings::finite_field::PrimeField;
    use crate::rings::laurent::lp;

    #[test]
    fn laurent_examples() {
        let p = lp(&[(1, 1), (-1, 1)]).to_rational();
        let samples: Vec<_> = [1, 2, 3].iter().map(|&x| (rat_int(x), p.eval(&Rationals, &rat_int(x)).unwrap())).collect();
        assert_eq!(interpolate_laurent_q(&samples, -1, 1).unwrap(), p);

        let q = lp(&[(6, 1), (4, 3), (2, 3), (0, 1)]).to_rational();
        let samples: Vec<_> = (1..=8).map(|x| (rat(x, 3), q.eval(&Rationals, &rat(x, 3)).unwrap())).collect();
        assert_eq!(interpolate_laurent_q(&samples, 0, 6).unwrap(), q);

        let c = vec![(rat_int(2), rat_int(5)), (rat_int(7), rat_int(5))];
        assert_eq!(interpolate_laurent_q(&c, 0, 0).unwrap(), lp(&[(0, 5)]).to_rational());
    }

    #[test]
    fn window_too_small() {
        let samples: Vec<_> = (1..=3).map(|x| (rat_int(x), rat_int(x * x))).collect();
        assert_eq!(interpolate_laurent_q(&samples, 0, 1), Err(Error::InconsistentSamples { lo: 0, hi: 1 }));
    }

    #[test]
    fn rational_function_recovery() {
        let f = PrimeField::new(1009);
        // (x + 2) / (x^2 + 3)
        let pts: Vec<u64> = (1..=8).collect();
        let vals: Vec<(u64, u64)> = pts
            .iter()
            .map(|&a| {
                let n = f.add(&a, &2);
                let d = f.add(&f.mul(&a, &a), &3);
                (a, f.div(&n, &d).unwrap())
            })
            .collect();
        let p = interpolate(&f, &vals).unwrap();
        let m = vanishing_polynomial(&f, &pts);
        let (n, d) = rational_function_reconstruct(&f, &m, &p, 4).unwrap();
        assert_eq!(n.coeffs(), &[2, 1]);
        assert_eq!(d.coeffs(), &[3, 0, 1]);
    }
}
