//! Exact arithmetic: fields, polynomials, Laurent polynomials, cyclotomic and
//! finite fields, dense linear algebra, and modular reconstruction.

pub mod crt;
pub mod cyclotomic;
pub mod factor;
pub mod field;
pub mod finite_field;
pub mod interp;
pub mod laurent;
pub mod matrix;
pub mod poly;
pub mod ratfunc;

pub use cyclotomic::{cyclotomic_norm, cyclotomic_polynomial, CyclotomicField};
pub use field::{Field, Rationals, Ring};
pub use finite_field::{FiniteField, PrimeField};
pub use laurent::{lp, LaurentPoly, LaurentRing, QLaurent};
pub use matrix::Matrix;
pub use poly::{Poly, QPoly};
pub use ratfunc::{RatFunc, RationalFunctions};
