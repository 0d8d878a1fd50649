//! Sparse multivariate polynomials over the rationals.
//!
//! Monomials are ordered graded-lexicographically: higher total degree
//! first, ties broken by comparing exponent vectors lexicographically with
//! the larger one first (so `x1^2 > x1*x2 > x2^2`).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_scalar, Matrix, Scalar};

pub type Exponent = Vec<u32>;

pub fn total_degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// Graded lexicographic comparison; `Greater` means earlier in the order.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    total_degree(a).cmp(&total_degree(b)).then_with(|| a.cmp(b))
}

/// All exponent vectors of total degree `d` in `n` variables, in descending
/// grlex order.
pub fn monomials(n: usize, d: u32) -> Vec<Exponent> {
    fn go(n: usize, d: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            go(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Values of every monomial in `monos` at `point`.
pub fn monomial_values(monos: &[Exponent], point: &[Scalar]) -> Vec<Scalar> {
    let max = monos.iter().flatten().copied().max().unwrap_or(0) as usize;
    let powers: Vec<Vec<Scalar>> = point
        .iter()
        .map(|x| {
            let mut p = Vec::with_capacity(max + 1);
            p.push(Scalar::one());
            for k in 1..=max {
                let next = &p[k - 1] * x;
                p.push(next);
            }
            p
        })
        .collect();
    monos
        .iter()
        .map(|e| {
            let mut v = Scalar::one();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    v *= &powers[i][k as usize];
                }
            }
            v
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Exponent, Scalar>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Scalar) -> Self {
        Self::monomial(vec![0; num_vars], c)
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Scalar::one())
    }

    pub fn monomial(exponent: Exponent, c: Scalar) -> Self {
        let mut p = Self::zero(exponent.len());
        if !c.is_zero() {
            p.terms.insert(exponent, c);
        }
        p
    }

    /// The coordinate function `x_i`.
    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Self::monomial(e, Scalar::one())
    }

    /// `Σ c_i x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Builds `Σ coeffs[k] · x^monos[k]`.
    pub fn from_coefficients(num_vars: usize, monos: &[Exponent], coeffs: &[Scalar]) -> Self {
        let mut p = Self::zero(num_vars);
        for (e, c) in monos.iter().zip(coeffs) {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    /// Checked constructor from explicit terms.
    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Exponent, Scalar)>) -> Result<Self> {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::DimensionMismatch {
                    expected: num_vars,
                    found: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponent, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, e: &[u32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Terms in descending grlex order.
    pub fn terms_grlex(&self) -> Vec<(&Exponent, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_cmp(b.0, a.0));
        v
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| total_degree(e));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|k| k == d),
        }
    }

    pub fn leading_term(&self) -> Option<(&Exponent, &Scalar)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&(Scalar::one() / c)),
        }
    }

    fn same_vars(&self, other: &Polynomial) {
        assert_eq!(self.num_vars, other.num_vars, "polynomials in different numbers of variables");
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.same_vars(other);
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.same_vars(other);
        let mut p = Self::zero(self.num_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Self::one(self.num_vars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: point.len(),
            });
        }
        let monos: Vec<Exponent> = self.terms.keys().cloned().collect();
        let vals = monomial_values(&monos, point);
        Ok(self.terms.values().zip(vals).map(|(c, v)| c * v).sum())
    }

    /// `t ↦ f(M t)` for an `num_vars × k` matrix `M`, as a polynomial in `k`
    /// variables.
    pub fn compose_linear(&self, m: &Matrix) -> Result<Polynomial> {
        if m.nrows() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: m.nrows(),
            });
        }
        let k = m.ncols();
        let forms: Vec<Polynomial> = (0..self.num_vars).map(|i| Polynomial::linear(m.row(i))).collect();
        let mut cache: Vec<Vec<Polynomial>> = forms.iter().map(|f| vec![Polynomial::one(k), f.clone()]).collect();
        let mut out = Polynomial::zero(k);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(k, c.clone());
            for (i, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                while cache[i].len() <= p as usize {
                    let next = cache[i].last().expect("nonempty").mul(&forms[i]);
                    cache[i].push(next);
                }
                term = term.mul(&cache[i][p as usize]);
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// `f(x) g(x′)` in the concatenated variables `(x, x′)`.
    pub fn tensor(&self, other: &Polynomial) -> Polynomial {
        let n = self.num_vars + other.num_vars;
        let mut p = Self::zero(n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = e1.clone();
                e.extend_from_slice(e2);
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    /// Coefficients on `monos`, failing if the polynomial has other terms.
    pub fn coefficients_on(&self, monos: &[Exponent]) -> Result<Vec<Scalar>> {
        let coeffs: Vec<Scalar> = monos.iter().map(|e| self.coefficient(e)).collect();
        let covered = monos.iter().filter(|e| self.terms.contains_key(*e)).count();
        if covered != self.terms.len() {
            return Err(Error::Inconsistent("polynomial has terms outside the given monomials".into()));
        }
        Ok(coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms_grlex().into_iter().enumerate() {
            let negative = *c < Scalar::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, p)
                    }
                })
                .collect();
            let coeff = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format_scalar(&abs)
            };
            if vars.is_empty() {
                write!(f, "{coeff}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff, vars.join("*"))?;
            }
        }
        Ok(())
    }
}
