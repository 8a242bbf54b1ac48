//! Chinese remaindering and rational reconstruction.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Combines residues into the unique `r` in `[0, M)` with `M = prod moduli`.
pub fn crt(residues: &[u64], moduli: &[u64]) -> (BigInt, BigInt) {
    assert_eq!(residues.len(), moduli.len());
    let mut r = BigInt::zero();
    let mut m = BigInt::one();
    for (&ri, &mi) in residues.iter().zip(moduli) {
        let (nr, nm) = crt_pair(&r, &m, &BigInt::from(ri), &BigInt::from(mi));
        r = nr;
        m = nm;
    }
    (r, m)
}

/// Combines `r1 mod m1` and `r2 mod m2` for coprime moduli.
pub fn crt_pair(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> (BigInt, BigInt) {
    let g = m1.extended_gcd(m2);
    debug_assert!(g.gcd.is_one(), "moduli must be coprime");
    let m = m1 * m2;
    // r = r1 + m1 * ((r2 - r1) * inv(m1) mod m2)
    let t = ((r2 - r1) * &g.x).mod_floor(m2);
    let r = (r1 + m1 * t).mod_floor(&m);
    (r, m)
}

/// Representative of `r mod m` in `(-m/2, m/2]`.
pub fn symmetric(r: &BigInt, m: &BigInt) -> BigInt {
    let r = r.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Finds `a/b` with `|a|, b <= sqrt(m/2)` and `a = b r (mod m)`, if it exists.
pub fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = Roots::sqrt(&(m / 2u32));
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1) = (r1, r2);
        (t0, t1) = (t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// CRT followed by rational reconstruction.
pub fn crt_rational_reconstruct(residues: &[u64], moduli: &[u64]) -> Result<BigRational> {
    let (r, m) = crt(residues, moduli);
    rational_reconstruct(&r, &m).ok_or(Error::NoReconstruction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::field::rat;

    #[test]
    fn reconstruction_examples() {
        assert_eq!(crt_rational_reconstruct(&[2, 2], &[5, 7]).unwrap(), rat(2, 1));
        assert_eq!(crt_rational_reconstruct(&[4, 6], &[5, 7]).unwrap(), rat(-1, 1));
        assert_eq!(crt_rational_reconstruct(&[51, 52], &[101, 103]).unwrap(), rat(1, 2));
        let (r, m) = crt(&[4, 6], &[5, 7]);
        assert_eq!(symmetric(&r, &m), BigInt::from(-1));
    }

    #[test]
    fn reconstruction_fails_for_small_modulus() {
        // 1/3 needs a modulus of at least 18.
        let r = rational_reconstruct(&BigInt::from(4), &BigInt::from(11));
        assert_ne!(r, Some(rat(1, 3)));
        let r = rational_reconstruct(&BigInt::from(13), &BigInt::from(19));
        assert_eq!(r, Some(rat(1, 3)));
    }
}
