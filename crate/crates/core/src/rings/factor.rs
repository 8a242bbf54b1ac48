//! Factorization of polynomials over finite fields of odd characteristic:
//! squarefree decomposition, distinct-degree and equal-degree splitting.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use super::matrix::Matrix;
use super::poly::{self, Poly};

fn field_size<F: Field>(f: &F) -> u64 {
    f.size().expect("factorization needs a finite field")
}

/// `a^{1/p}` for `p` the characteristic.
fn pth_root<F: Field>(f: &F, a: &F::Elem) -> F::Elem {
    let q = field_size(f);
    f.pow(a, q / f.characteristic())
}

/// Squarefree decomposition `a = prod g_i^{m_i}` of a monic polynomial.
pub fn squarefree<F: Field>(f: &F, a: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
    let p = f.characteristic() as usize;
    let mut out = Vec::new();
    let a = poly::monic(f, a);
    if a.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = poly::gcd(f, &a, &poly::derivative(f, &a));
    let mut w = poly::div_exact(f, &a, &c).unwrap();
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = poly::gcd(f, &w, &c);
        let z = poly::div_exact(f, &w, &y).unwrap();
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        c = poly::div_exact(f, &c, &y).unwrap();
        w = y;
    }
    if c.degree().unwrap_or(0) > 0 {
        // c is a polynomial in x^p
        let coeffs: Vec<F::Elem> = c.coeffs().iter().step_by(p).map(|x| pth_root(f, x)).collect();
        for (g, m) in squarefree(f, &Poly::from_coeffs(f, coeffs)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree: returns `(product, degree)` pairs.
pub fn distinct_degree<F: Field>(f: &F, a: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
    let q = field_size(f) as u128;
    let x = Poly::x(f);
    let mut rest = a.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while let Some(n) = rest.degree() {
        if n == 0 {
            break;
        }
        if 2 * d > n {
            out.push((rest.clone(), n));
            break;
        }
        h = poly::pow_mod(f, &h, q, &rest);
        let g = poly::gcd(f, &rest, &poly::sub(f, &h, &x));
        if g.degree().unwrap_or(0) > 0 {
            rest = poly::div_exact(f, &rest, &g).unwrap();
            h = poly::rem(f, &h, &rest);
            out.push((g, d));
        }
        d += 1;
    }
    out
}

fn pow_mod_big<F: Field>(f: &F, base: &Poly<F::Elem>, e: &BigUint, m: &Poly<F::Elem>) -> Poly<F::Elem> {
    let mut acc = poly::rem(f, &Poly::constant(f, f.one()), m);
    for i in (0..e.bits()).rev() {
        acc = poly::rem(f, &poly::mul(f, &acc, &acc), m);
        if e.bit(i) {
            acc = poly::rem(f, &poly::mul(f, &acc, base), m);
        }
    }
    acc
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles of
/// degree `d`; field elements are drawn as encodings below the field size.
pub fn equal_degree<F: Field>(f: &F, a: &Poly<F::Elem>, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly<F::Elem>>
where
    F::Elem: From<u32>,
{
    let n = a.degree().unwrap_or(0);
    if n <= d {
        return vec![a.clone()];
    }
    let q = field_size(f);
    let exp = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
    loop {
        let coeffs: Vec<F::Elem> = (0..n).map(|_| F::Elem::from(rng.random_range(0..q) as u32)).collect();
        let r = Poly::from_coeffs(f, coeffs);
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = pow_mod_big(f, &r, &exp, a);
        let g = poly::gcd(f, a, &poly::sub(f, &b, &Poly::constant(f, f.one())));
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = poly::div_exact(f, a, &g).unwrap();
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &h, d, rng));
            return out;
        }
    }
}

/// Irreducible monic factors with multiplicities, sorted by degree and then
/// by coefficients.
pub fn factor<F: Field>(f: &F, a: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)>
where
    F::Elem: From<u32> + Ord,
{
    let mut rng = ChaCha8Rng::seed_from_u64(0x6661_6374);
    let mut out = Vec::new();
    for (g, m) in squarefree(f, a) {
        for (h, d) in distinct_degree(f, &g) {
            for irr in equal_degree(f, &h, d, &mut rng) {
                out.push((poly::monic(f, &irr), m));
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev())));
    out
}

/// Characteristic polynomial via reduction to upper Hessenberg form.
pub fn charpoly<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Poly<F::Elem> {
    let n = a.rows();
    let mut h: Vec<Vec<F::Elem>> = a.row_vecs().to_vec();
    for m in 1..n {
        let Some(i) = (m..n).find(|&i| !f.is_zero(&h[i][m - 1])) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let t = f.inv(&h[m][m - 1]).unwrap();
        for i in m + 1..n {
            let u = f.mul(&h[i][m - 1], &t);
            if f.is_zero(&u) {
                continue;
            }
            for j in 0..n {
                let x = f.mul(&u, &h[m][j]);
                h[i][j] = f.sub(&h[i][j], &x);
            }
            for row in h.iter_mut() {
                let x = f.mul(&u, &row[i]);
                row[m] = f.add(&row[m], &x);
            }
        }
    }
    let x = Poly::x(f);
    let mut p: Vec<Poly<F::Elem>> = vec![Poly::constant(f, f.one())];
    for m in 0..n {
        let lin = poly::sub(f, &x, &Poly::constant(f, h[m][m].clone()));
        let mut next = poly::mul(f, &lin, &p[m]);
        let mut prod = f.one();
        for i in (0..m).rev() {
            prod = f.mul(&prod, &h[i + 1][i]);
            let c = f.mul(&h[i][m], &prod);
            next = poly::sub(f, &next, &poly::scale(f, &p[i], &c));
        }
        p.push(next);
    }
    p.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::field::Ring;
    use crate::rings::finite_field::{FiniteField, PrimeField};
    use crate::rings::matrix;

    fn product(f: &PrimeField, parts: &[(Poly<u64>, usize)]) -> Poly<u64> {
        parts.iter().fold(Poly::constant(f, 1), |acc, (g, m)| (0..*m).fold(acc, |acc, _| poly::mul(f, &acc, g)))
    }

    #[test]
    fn factor_over_prime_field() {
        let f = PrimeField::new(7);
        // (x - 1)^2 (x^2 + 1) (x + 3)^7: x^2 + 1 is irreducible mod 7.
        let a = product(
            &f,
            &[(Poly::from_coeffs(&f, vec![6, 1]), 2), (Poly::from_coeffs(&f, vec![1, 0, 1]), 1), (Poly::from_coeffs(&f, vec![3, 1]), 7)],
        );
        let fac = factor(&f, &a);
        assert_eq!(product(&f, &fac), a);
        assert_eq!(fac.iter().map(|(g, m)| (g.degree().unwrap(), *m)).collect::<Vec<_>>(), vec![(1, 7), (1, 2), (2, 1)]);
    }

    #[test]
    fn splits_x_pow_q_minus_x() {
        let f = PrimeField::new(11);
        let mut c = vec![0u64; 12];
        c[1] = 10;
        c[11] = 1;
        let fac = factor(&f, &Poly::from_coeffs(&f, c));
        assert_eq!(fac.len(), 11);
        assert!(fac.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
    }

    #[test]
    fn charpoly_matches_trace_and_det() {
        let f = FiniteField::new(5, 2).unwrap();
        let m = Matrix::from_fn(4, 4, |i, j| ((i * 7 + j * 3 + i * j) % 25) as u32);
        let p = charpoly(&f, &m);
        assert_eq!(p.degree(), Some(4));
        let det = matrix::det(&f, &m);
        let c0 = if 4 % 2 == 0 { det } else { f.neg(&det) };
        assert_eq!(p.coeff(&f, 0), c0);
        let tr = (0..4).fold(0, |acc, i| f.add(&acc, m.get(i, i)));
        assert_eq!(p.coeff(&f, 3), f.neg(&tr));
        // Cayley-Hamilton
        let mut acc = matrix::zeros(&f, 4, 4);
        for c in p.coeffs().iter().rev() {
            acc = matrix::mul(&f, &acc, &m).unwrap();
            acc = matrix::add(&f, &acc, &matrix::scale(&f, &matrix::identity(&f, 4), c));
        }
        assert!(matrix::is_zero_matrix(&f, &acc));
    }
}
