//! Classical observables on 2n-dimensional phase space and the canonical
//! Poisson bracket.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{AlgebraError, Result};
use crate::monomial::{merge_terms, render_term, Monomial, TermAccumulator};
use crate::scalar::{Bindings, GaussianRational, ParamScalar};

pub type PhaseMonomial = Monomial;

/// A function Laurent in `x_1..x_n`, polynomial in `p_1..p_n`, with
/// [`ParamScalar`] coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhaseFunction {
    dim: usize,
    terms: BTreeMap<Monomial, ParamScalar>,
}

impl PhaseFunction {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: ParamScalar) -> Self {
        Self::from_term(Monomial::one(dim), c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, ParamScalar::one())
    }

    pub fn from_term(m: Monomial, c: ParamScalar) -> Self {
        let dim = m.dim();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { dim, terms }
    }

    /// Build from arbitrary `(monomial, coefficient)` pairs, summing repeats.
    ///
    /// # Panics
    /// Panics if a monomial has the wrong dimension.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Monomial, ParamScalar)>) -> Self {
        let mut acc = TermAccumulator::default();
        for (m, c) in terms {
            assert_eq!(m.dim(), dim, "monomial dimension mismatch");
            acc.add_owned(m, c);
        }
        Self {
            dim,
            terms: acc.finish(),
        }
    }

    /// The coordinate `x_site^power`.
    pub fn x_pow(dim: usize, site: usize, power: i32) -> Self {
        Self::from_term(Monomial::x_pow(dim, site, power), ParamScalar::one())
    }

    pub fn x(dim: usize, site: usize) -> Self {
        Self::x_pow(dim, site, 1)
    }

    pub fn p(dim: usize, site: usize) -> Self {
        Self::from_term(Monomial::p_pow(dim, site, 1), ParamScalar::one())
    }

    pub(crate) fn from_parts(dim: usize, terms: BTreeMap<Monomial, ParamScalar>) -> Self {
        Self { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(AlgebraError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_parts(self.dim, merge_terms(&self.terms, &other.terms, false)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_parts(self.dim, merge_terms(&self.terms, &other.terms, true)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut acc = TermAccumulator::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.add_owned(ma.mul(mb), ca * cb);
            }
        }
        Ok(Self::from_parts(self.dim, acc.finish()))
    }

    /// `{f, g} = sum_j (d_{x_j} f d_{p_j} g - d_{p_j} f d_{x_j} g)`.
    ///
    /// For monomials both products land on the same monomial
    /// `f g / (x_j p_j)` with weight `a_j d_j - b_j c_j`, where
    /// `f = x^a p^b` and `g = x^c p^d`.
    pub fn poisson_bracket(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut acc = TermAccumulator::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut coeff: Option<ParamScalar> = None;
                for j in 0..self.dim {
                    let w = ma.x[j] as i64 * mb.p[j] as i64 - ma.p[j] as i64 * mb.x[j] as i64;
                    if w == 0 {
                        continue;
                    }
                    let c = coeff.get_or_insert_with(|| ca * cb);
                    let mut m = ma.mul(mb);
                    m.x[j] -= 1;
                    m.p[j] -= 1;
                    acc.add_scaled(m, c, &GaussianRational::from_integer(w));
                }
            }
        }
        Ok(Self::from_parts(self.dim, acc.finish()))
    }

    /// Exact equality of canonical forms.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.terms == other.terms)
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        let mut acc = TermAccumulator::with_capacity(self.len());
        for (m, v) in &self.terms {
            acc.add_owned(m.clone(), v * c);
        }
        Self::from_parts(self.dim, acc.finish())
    }

    pub fn substitute_params(&self, bindings: &Bindings) -> Self {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut acc = TermAccumulator::with_capacity(self.len());
        for (m, v) in &self.terms {
            acc.add_owned(m.clone(), v.substitute(bindings));
        }
        Self::from_parts(self.dim, acc.finish())
    }

    /// The first `limit` rendered terms, in canonical order.
    pub fn render_terms(&self, limit: usize) -> Vec<String> {
        self.terms.iter().take(limit).map(|(m, c)| render_term(m, c)).collect()
    }
}

impl fmt::Display for PhaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", self.render_terms(usize::MAX).join(" + "))
    }
}

// Operator forms panic on dimension mismatch; use the `try_*` methods when
// the dimensions are not already known to agree.

impl Add for &PhaseFunction {
    type Output = PhaseFunction;
    fn add(self, rhs: &PhaseFunction) -> PhaseFunction {
        self.try_add(rhs).expect("phase function dimension mismatch")
    }
}

impl Sub for &PhaseFunction {
    type Output = PhaseFunction;
    fn sub(self, rhs: &PhaseFunction) -> PhaseFunction {
        self.try_sub(rhs).expect("phase function dimension mismatch")
    }
}

impl Mul for &PhaseFunction {
    type Output = PhaseFunction;
    fn mul(self, rhs: &PhaseFunction) -> PhaseFunction {
        self.try_mul(rhs).expect("phase function dimension mismatch")
    }
}

impl Neg for &PhaseFunction {
    type Output = PhaseFunction;
    fn neg(self) -> PhaseFunction {
        self.scale(&ParamScalar::from_integer(-1))
    }
}
