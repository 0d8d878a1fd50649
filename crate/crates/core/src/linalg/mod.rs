//! Exact linear algebra over the rationals.
//!
//! Everything in the crate is built on three types: [`Matrix`], the
//! canonical [`Subspace`] (stored as the reduced row echelon form of a basis,
//! so set equality is structural equality), and [`BilinearForm`]. Quotients
//! `V0 / V0^⊥` of coisotropic subspaces are described by [`QuotientSpace`].

mod form;
mod matrix;
mod subspace;

pub use form::{BilinearForm, QuotientSpace};
pub use matrix::Matrix;
pub use subspace::Subspace;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always in lowest terms with a positive denominator.
pub type Scalar = BigRational;

/// A column vector, stored densely.
pub type Vector = Vec<Scalar>;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// `p / q` in lowest terms. Panics if `q == 0`.
pub fn frac(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Integer vector helper, mostly for tests and the catalog.
pub fn vector(entries: &[i64]) -> Vector {
    entries.iter().map(|&e| int(e)).collect()
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn neg_vector(v: &[Scalar]) -> Vector {
    v.iter().map(|x| -x).collect()
}

/// Standard (non-form) dot product.
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

/// Parses `"p/q"` or `"p"`; the result is normalised.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let bad = || Error::InvalidRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = num.parse().map_err(|_| bad())?;
    let q: BigInt = den.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Always `"p/q"` with `q > 0`, including integers (`"3/1"`).
pub fn format_scalar(x: &Scalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Comma separated rationals, e.g. `"1,0,-1/2"`.
pub fn parse_vector(s: &str) -> Result<Vector> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_scalar).collect()
}

pub fn format_vector(v: &[Scalar]) -> String {
    v.iter().map(format_scalar).collect::<Vec<_>>().join(",")
}

pub(crate) fn check_len(v: &[Scalar], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    Ok(())
}
