//! Finite fields: word-sized prime fields and small extension fields GF(l^k).

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;

use super::field::{inv_mod, is_prime, mod_bigint, mul_mod, Field, Ring};
use super::poly::{self, Poly};
use crate::error::{Error, Result};

/// The prime field GF(p) for a prime `p < 2^62`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime(p));
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        mod_bigint(n, self.p)
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.p)
    }
    fn size(&self) -> Option<u64> {
        Some(self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// The `n` largest primes below `2^31`, descending.
pub fn large_primes(n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    let mut c = (1u64 << 31) - 1;
    while out.len() < n {
        if is_prime(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

const TABLE_LIMIT: u64 = 1 << 20;

/// The field GF(l^k) realized as GF(l)[x]/(f), where `f` is the
/// lexicographically least monic irreducible polynomial of degree `k`
/// (coefficient tuples `(c_0, ..., c_{k-1})` compared with `c_0` first).
///
/// An element `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` is encoded as the integer
/// `sum c_i l^(k-1-i)`, so integer order on encodings is the same
/// lexicographic order. Log tables are used when `l^k <= 2^20`.
#[derive(Clone)]
pub struct FiniteField {
    data: Arc<FfData>,
}

struct FfData {
    ell: u32,
    k: u32,
    q: u32,
    /// `f = x^k + sum modulus[i] x^i`.
    modulus: Vec<u32>,
    /// `place[i] = l^(k-1-i)`.
    place: Vec<u32>,
    tables: Option<Tables>,
}

struct Tables {
    log: Vec<u32>,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.data.ell == other.data.ell && self.data.k == other.data.k
    }
}

impl Eq for FiniteField {}

impl std::fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({}^{})", self.data.ell, self.data.k)
    }
}

impl FiniteField {
    pub fn new(ell: u64, k: u32) -> Result<Self> {
        if !is_prime(ell) || k == 0 {
            return Err(Error::DimensionMismatch(format!("GF({ell}^{k}) is not a field")));
        }
        let q = (ell as u128).pow(k);
        if q > u32::MAX as u128 {
            return Err(Error::TooLarge(format!("GF({ell}^{k})")));
        }
        let ell32 = ell as u32;
        let modulus = lex_least_irreducible(ell, k);
        let place = (0..k).map(|i| ell32.pow(k - 1 - i)).collect();
        let mut data = FfData { ell: ell32, k, q: q as u32, modulus, place, tables: None };
        if (q as u64) <= TABLE_LIMIT {
            data.tables = Some(build_tables(&data));
        }
        Ok(FiniteField { data: Arc::new(data) })
    }

    /// GF(l^k) with `k` the multiplicative order of `l` modulo `n`, the
    /// smallest extension containing a primitive `n`-th root of unity.
    pub fn for_root_of_unity(ell: u64, n: u64) -> Result<Self> {
        let k = super::field::multiplicative_order(ell % n, n).ok_or(Error::NoRoot(n))?;
        Self::new(ell, k as u32)
    }

    pub fn ell(&self) -> u64 {
        self.data.ell as u64
    }

    pub fn degree(&self) -> u32 {
        self.data.k
    }

    pub fn order(&self) -> u64 {
        self.data.q as u64
    }

    /// Coefficients `(c_0, ..., c_{k-1})` of the defining polynomial below `x^k`.
    pub fn defining_polynomial(&self) -> &[u32] {
        &self.data.modulus
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.data.q
    }

    /// Polynomial coefficients `(c_0, ..., c_{k-1})` of an element.
    pub fn digits(&self, a: u32) -> Vec<u32> {
        let d = &self.data;
        d.place.iter().map(|p| (a / p) % d.ell).collect()
    }

    pub fn from_digits(&self, c: &[u32]) -> u32 {
        c.iter().zip(&self.data.place).map(|(c, p)| c * p).sum()
    }

    /// Least element (in encoding order) of multiplicative order exactly `n`.
    pub fn canonical_root_of_unity(&self, n: u64) -> Result<u32> {
        let q1 = self.order() - 1;
        if !q1.is_multiple_of(n) {
            return Err(Error::NoRoot(n));
        }
        let primes: Vec<u64> = super::field::prime_factors(&BigInt::from(n)).iter().map(|p| u64::try_from(p).unwrap()).collect();
        let exact = |y: &u32| primes.iter().all(|r| self.pow(y, n / r) != self.one());
        // The primitive n-th roots are the powers y^j, gcd(j, n) = 1, of any one of them.
        let y = self.elements().skip(1).map(|x| self.pow(&x, q1 / n)).find(exact).ok_or(Error::NoRoot(n))?;
        let mut best = u32::MAX;
        let mut power = self.one();
        for j in 1..=n {
            power = self.mul(&power, &y);
            if j.gcd(&n) == 1 {
                best = best.min(power);
            }
        }
        Ok(best)
    }

    /// Human-readable form, e.g. `3+2z` for `3 + 2x`.
    pub fn format_elem(&self, a: u32) -> String {
        let c = self.digits(a);
        let mut parts = Vec::new();
        for (i, ci) in c.iter().enumerate() {
            if *ci == 0 {
                continue;
            }
            parts.push(match (i, ci) {
                (0, _) => ci.to_string(),
                (1, 1) => "z".to_string(),
                (1, _) => format!("{ci}z"),
                (_, 1) => format!("z^{i}"),
                _ => format!("{ci}z^{i}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        mul_slow(&self.data, a, b)
    }
}

fn mul_slow(d: &FfData, a: u32, b: u32) -> u32 {
    let ell = d.ell as u64;
    let k = d.k as usize;
    let da: Vec<u64> = d.place.iter().map(|p| ((a / p) % d.ell) as u64).collect();
    let db: Vec<u64> = d.place.iter().map(|p| ((b / p) % d.ell) as u64).collect();
    let mut prod = vec![0u64; 2 * k - 1];
    for i in 0..k {
        if da[i] == 0 {
            continue;
        }
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % ell;
        }
    }
    for i in (k..2 * k - 1).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, m) in d.modulus.iter().enumerate() {
            prod[i - k + j] = (prod[i - k + j] + ell * ell - c * *m as u64) % ell;
        }
    }
    prod[..k].iter().zip(&d.place).map(|(c, p)| *c as u32 * p).sum()
}

fn build_tables(d: &FfData) -> Tables {
    let q = d.q as u64;
    let q1 = q - 1;
    let one = d.place[0];
    let primes: Vec<u64> = super::field::prime_factors(&BigInt::from(q1)).iter().map(|p| u64::try_from(p).unwrap()).collect();
    let pow = |mut a: u32, mut e: u64| {
        let mut acc = one;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_slow(d, acc, a);
            }
            a = mul_slow(d, a, a);
            e >>= 1;
        }
        acc
    };
    let g = (1..d.q).find(|&g| primes.iter().all(|r| pow(g, q1 / r) != one)).expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; 2 * q1 as usize];
    let mut log = vec![0u32; q as usize];
    let mut x = one;
    for i in 0..q1 as usize {
        exp[i] = x;
        exp[i + q1 as usize] = x;
        log[x as usize] = i as u32;
        x = mul_slow(d, x, g);
    }
    Tables { log, exp }
}

/// Lexicographically least monic irreducible polynomial of degree `k` over
/// GF(l), returned as `(c_0, ..., c_{k-1})`.
fn lex_least_irreducible(ell: u64, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0];
    }
    let f = PrimeField::new(ell);
    let total = ell.pow(k);
    for code in 0..total {
        let mut c = vec![0u64; k as usize];
        let mut rest = code;
        for i in (0..k as usize).rev() {
            c[i] = rest % ell;
            rest /= ell;
        }
        if c[0] == 0 {
            continue;
        }
        let mut coeffs = c.clone();
        coeffs.push(1);
        let p = Poly::from_coeffs(&f, coeffs);
        if is_irreducible_prime_field(&f, &p) {
            return c.into_iter().map(|x| x as u32).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Rabin's irreducibility test over a prime field.
pub fn is_irreducible_prime_field(f: &PrimeField, p: &Poly<u64>) -> bool {
    let Some(n) = p.degree() else { return false };
    if n == 0 {
        return false;
    }
    let ell = f.modulus() as u128;
    let x = Poly::x(f);
    let frob = |k: usize| {
        let mut acc = x.clone();
        for _ in 0..k {
            acc = poly::pow_mod(f, &acc, ell, p);
        }
        acc
    };
    if poly::sub(f, &frob(n), &poly::rem(f, &x, p)).degree().is_some() {
        return false;
    }
    for r in super::field::prime_factors(&BigInt::from(n)) {
        let r = usize::try_from(&r).unwrap();
        let h = poly::sub(f, &frob(n / r), &x);
        if poly::gcd(f, &h, p).degree() != Some(0) {
            return false;
        }
    }
    true
}

impl Ring for FiniteField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        self.data.place[0]
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let d = &self.data;
        if d.k == 1 {
            return (a + b) % d.ell;
        }
        let (mut a, mut b) = (*a, *b);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..d.k {
            let s = (a % d.ell + b % d.ell) % d.ell;
            out += s * scale;
            scale *= d.ell;
            a /= d.ell;
            b /= d.ell;
        }
        out
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &u32) -> u32 {
        let d = &self.data;
        let mut a = *a;
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..d.k {
            let s = (d.ell - a % d.ell) % d.ell;
            out += s * scale;
            scale *= d.ell;
            a /= d.ell;
        }
        out
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        match &self.data.tables {
            Some(t) => t.exp[(t.log[*a as usize] + t.log[*b as usize]) as usize],
            None => self.mul_slow(*a, *b),
        }
    }
    fn from_bigint(&self, n: &BigInt) -> u32 {
        mod_bigint(n, self.ell()) as u32 * self.data.place[0]
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.ell() as i64) as u32 * self.data.place[0]
    }
    fn pow(&self, a: &u32, e: u64) -> u32 {
        if e == 0 {
            return self.one();
        }
        if *a == 0 {
            return 0;
        }
        match &self.data.tables {
            Some(t) => {
                let q1 = (self.data.q - 1) as u64;
                let l = (t.log[*a as usize] as u64 * (e % q1)) % q1;
                t.exp[l as usize]
            }
            None => {
                let (mut base, mut e, mut acc) = (*a, e, self.one());
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.mul_slow(acc, base);
                    }
                    base = self.mul_slow(base, base);
                    e >>= 1;
                }
                acc
            }
        }
    }
}

impl Field for FiniteField {
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        match &self.data.tables {
            Some(t) => {
                let q1 = self.data.q - 1;
                Some(t.exp[((q1 - t.log[*a as usize]) % q1) as usize])
            }
            None => Some(self.pow(a, self.order() - 2)),
        }
    }
    fn size(&self) -> Option<u64> {
        Some(self.order())
    }
    fn characteristic(&self) -> u64 {
        self.ell()
    }
}
