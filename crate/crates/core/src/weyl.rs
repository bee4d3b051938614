//! Quantum operators in normal-ordered form: every `x̂` to the left of every
//! `p̂`, with `p̂_j = -i hb d/dx_j` kept abstract through the reordering rule
//! `p̂ x̂^k = x̂^k p̂ - i hb k x̂^(k-1)` (valid for every integer `k`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{AlgebraError, Result};
use crate::monomial::{merge_terms, render_term, Monomial, TermAccumulator};
use crate::phase::PhaseFunction;
use crate::scalar::{Bindings, GaussianRational, Param, ParamScalar};

pub type WeylMonomial = Monomial;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylOperator {
    dim: usize,
    terms: BTreeMap<Monomial, ParamScalar>,
}

/// `p^b x^c = sum_j C(b, j) (c)_j (-i hb)^j x^(c-j) p^(b-j)` for one site.
///
/// Returns the pairs `(j, C(b, j) (c)_j)` with nonzero weight.
fn site_expansion(b: u32, c: i32) -> Vec<(u32, i128)> {
    let mut out = Vec::with_capacity(b as usize + 1);
    let mut binom: i128 = 1;
    let mut falling: i128 = 1;
    for j in 0..=b {
        if j > 0 {
            binom = binom * (b - j + 1) as i128 / j as i128;
            falling *= (c - (j as i32 - 1)) as i128;
        }
        if falling == 0 {
            break;
        }
        out.push((j, binom * falling));
    }
    out
}

/// `(-i)^k`.
fn minus_i_pow(k: u32) -> GaussianRational {
    match k % 4 {
        0 => GaussianRational::one(),
        1 => -GaussianRational::i(),
        2 => GaussianRational::from_integer(-1),
        _ => GaussianRational::i(),
    }
}

/// Normal-ordered product of two normal-ordered words, as
/// `(monomial, integer weight, hb power)` triples.
fn multiply_words(a: &Monomial, b: &Monomial, out: &mut Vec<(Monomial, i128, u32)>) {
    out.clear();
    let dim = a.dim();
    let base = a.mul(b);
    // Sites where a momentum of `a` meets a position of `b`.
    let active: Vec<usize> = (0..dim).filter(|&s| a.p[s] > 0 && b.x[s] != 0).collect();
    if active.is_empty() {
        out.push((base, 1, 0));
        return;
    }
    let expansions: Vec<Vec<(u32, i128)>> = active.iter().map(|&s| site_expansion(a.p[s], b.x[s])).collect();
    let mut idx = vec![0usize; active.len()];
    loop {
        let mut m = base.clone();
        let mut weight: i128 = 1;
        let mut hb = 0u32;
        for (slot, &s) in active.iter().enumerate() {
            let (j, w) = expansions[slot][idx[slot]];
            m.x[s] -= j as i32;
            m.p[s] -= j;
            weight *= w;
            hb += j;
        }
        out.push((m, weight, hb));
        // odometer
        let mut slot = 0;
        loop {
            if slot == active.len() {
                return;
            }
            idx[slot] += 1;
            if idx[slot] < expansions[slot].len() {
                break;
            }
            idx[slot] = 0;
            slot += 1;
        }
    }
}

impl WeylOperator {
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

    /// The normal-ordered word `c x̂^a p̂^b`.
    pub fn from_term(m: Monomial, c: ParamScalar) -> Self {
        let dim = m.dim();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { dim, terms }
    }

    /// Sum of normal-ordered words, combining repeats.
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

    pub fn x_pow(dim: usize, site: usize, power: i32) -> Self {
        Self::from_term(Monomial::x_pow(dim, site, power), ParamScalar::one())
    }

    pub fn x(dim: usize, site: usize) -> Self {
        Self::x_pow(dim, site, 1)
    }

    pub fn p(dim: usize, site: usize) -> Self {
        Self::from_term(Monomial::p_pow(dim, site, 1), ParamScalar::one())
    }

    fn from_parts(dim: usize, terms: BTreeMap<Monomial, ParamScalar>) -> Self {
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

    /// Noncommutative product, renormal-ordered.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut acc = TermAccumulator::with_capacity(self.len() * other.len());
        let mut words = Vec::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                multiply_words(ma, mb, &mut words);
                for (m, w, hb) in words.drain(..) {
                    if w == 1 && hb == 0 {
                        acc.add(m, &c);
                        continue;
                    }
                    let k = minus_i_pow(hb).scale_int(&BigInt::from(w));
                    acc.add_owned(m, c.scale(&k).mul_hbar_pow(hb as u16));
                }
            }
        }
        Ok(Self::from_parts(self.dim, acc.finish()))
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_add(&other.try_mul(self)?)
    }

    /// Sum of the six orderings of `A B C`, computed as
    /// `A{B,C} + B{A,C} + C{A,B}`.
    pub fn symmetrize3(&self, b: &Self, c: &Self) -> Result<Self> {
        let a = self;
        let first = a.try_mul(&b.anticommutator(c)?)?;
        let second = b.try_mul(&a.anticommutator(c)?)?;
        let third = c.try_mul(&a.anticommutator(b)?)?;
        first.try_add(&second)?.try_add(&third)
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        let mut acc = TermAccumulator::with_capacity(self.len());
        for (m, v) in &self.terms {
            acc.add_owned(m.clone(), v * c);
        }
        Self::from_parts(self.dim, acc.finish())
    }

    /// Divide every coefficient by `hb^k`.
    pub fn divide_by_hbar(&self, k: u16) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.clone(), c.divide_by_hbar(k)?);
        }
        Ok(Self::from_parts(self.dim, terms))
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

    /// `hb -> 0`, then `x̂^a p̂^b -> x^a p^b`.
    pub fn semiclassical_limit(&self) -> PhaseFunction {
        let mut classical = Bindings::new();
        classical.insert(Param::Hbar, GaussianRational::zero());
        let mut acc = TermAccumulator::with_capacity(self.len());
        for (m, v) in &self.terms {
            acc.add_owned(m.clone(), v.substitute(&classical));
        }
        PhaseFunction::from_parts(self.dim, acc.finish())
    }

    /// `[A, B] / (i hb)`, exact.
    pub fn scaled_commutator(&self, other: &Self) -> Result<Self> {
        let c = self.commutator(other)?.divide_by_hbar(1)?;
        Ok(c.scale(&ParamScalar::constant(-GaussianRational::i())))
    }

    /// The classical limit of `[A, B] / (i hb)`.
    pub fn semiclassical_bracket(&self, other: &Self) -> Result<PhaseFunction> {
        Ok(self.scaled_commutator(other)?.semiclassical_limit())
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.terms == other.terms)
    }

    pub fn render_terms(&self, limit: usize) -> Vec<String> {
        self.terms.iter().take(limit).map(|(m, c)| render_term(m, c)).collect()
    }
}

impl fmt::Display for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", self.render_terms(usize::MAX).join(" + "))
    }
}

impl Add for &WeylOperator {
    type Output = WeylOperator;
    fn add(self, rhs: &WeylOperator) -> WeylOperator {
        self.try_add(rhs).expect("operator dimension mismatch")
    }
}

impl Sub for &WeylOperator {
    type Output = WeylOperator;
    fn sub(self, rhs: &WeylOperator) -> WeylOperator {
        self.try_sub(rhs).expect("operator dimension mismatch")
    }
}

impl Mul for &WeylOperator {
    type Output = WeylOperator;
    fn mul(self, rhs: &WeylOperator) -> WeylOperator {
        self.try_mul(rhs).expect("operator dimension mismatch")
    }
}

impl Neg for &WeylOperator {
    type Output = WeylOperator;
    fn neg(self) -> WeylOperator {
        self.scale(&ParamScalar::from_integer(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i_hb(k: i64) -> ParamScalar {
        (&ParamScalar::i() * &ParamScalar::hbar()).scale(&GaussianRational::from_integer(k))
    }

    fn x(power: i32) -> WeylOperator {
        WeylOperator::x_pow(1, 1, power)
    }

    fn p() -> WeylOperator {
        WeylOperator::p(1, 1)
    }

    fn xp() -> WeylOperator {
        WeylOperator::from_term(Monomial::new(&[1], &[1]), ParamScalar::one())
    }

    #[test]
    fn site_expansion_weights() {
        assert_eq!(site_expansion(1, 1), vec![(0, 1), (1, 1)]);
        assert_eq!(site_expansion(2, 1), vec![(0, 1), (1, 2)]);
        assert_eq!(site_expansion(1, -2), vec![(0, 1), (1, -2)]);
        assert_eq!(site_expansion(2, 2), vec![(0, 1), (1, 4), (2, 2)]);
    }

    #[test]
    fn momentum_past_position() {
        let expected = &xp() - &WeylOperator::constant(1, i_hb(1));
        assert_eq!(&p() * &x(1), expected);
    }

    #[test]
    fn momentum_past_inverse_square() {
        let expected = &WeylOperator::from_term(Monomial::new(&[-2], &[1]), ParamScalar::one())
            + &WeylOperator::from_term(Monomial::new(&[-3], &[0]), i_hb(2));
        assert_eq!(&p() * &x(-2), expected);
    }

    #[test]
    fn canonical_commutator() {
        assert_eq!(x(1).commutator(&p()).unwrap(), WeylOperator::constant(1, i_hb(1)));
        assert_eq!(x(1).scaled_commutator(&p()).unwrap(), WeylOperator::one(1));
    }

    #[test]
    fn canonical_anticommutator() {
        let expected = &xp().scale(&ParamScalar::from_integer(2)) - &WeylOperator::constant(1, i_hb(1));
        assert_eq!(x(1).anticommutator(&p()).unwrap(), expected);
    }

    #[test]
    fn different_sites_commute() {
        let a = WeylOperator::p(2, 1);
        let b = WeylOperator::x_pow(2, 2, -3);
        assert!(a.commutator(&b).unwrap().is_zero());
    }

    #[test]
    fn symmetrize3_is_sum_of_orderings() {
        let (a, b, c) = (x(1), p(), x(-1));
        let orderings = [
            &(&a * &b) * &c,
            &(&a * &c) * &b,
            &(&b * &a) * &c,
            &(&b * &c) * &a,
            &(&c * &a) * &b,
            &(&c * &b) * &a,
        ];
        let mut sum = WeylOperator::zero(1);
        for o in &orderings {
            sum = &sum + o;
        }
        assert_eq!(a.symmetrize3(&b, &c).unwrap(), sum);
        let cube = &(&a * &a) * &a;
        assert_eq!(a.symmetrize3(&a, &a).unwrap(), cube.scale(&ParamScalar::from_integer(6)));
    }

    #[test]
    fn semiclassical_limits() {
        let shifted = &xp() + &WeylOperator::constant(1, i_hb(1));
        assert_eq!(shifted.semiclassical_limit(), PhaseFunction::from_term(Monomial::new(&[1], &[1]), ParamScalar::one()));
        let b = x(2).semiclassical_bracket(&(&p() * &p())).unwrap();
        assert_eq!(b, PhaseFunction::from_term(Monomial::new(&[1], &[1]), ParamScalar::from_integer(4)));
    }

    #[test]
    fn hbar_division() {
        assert!(xp().divide_by_hbar(1).is_err());
        let c = WeylOperator::constant(1, i_hb(3));
        assert_eq!(c.divide_by_hbar(1).unwrap(), WeylOperator::constant(1, ParamScalar::constant(GaussianRational::i()).scale(&GaussianRational::from_integer(3))));
    }

    #[test]
    fn rendering() {
        let op = &xp() - &WeylOperator::constant(1, i_hb(1));
        assert_eq!(op.to_string(), "(1) * x1 * p1 + (-1)*i*hb");
        let tail = WeylOperator::from_term(Monomial::new(&[-3], &[0]), i_hb(2));
        assert_eq!(tail.to_string(), "(2)*i*hb * x1^-3");
        assert_eq!(WeylOperator::zero(1).to_string(), "0");
    }

    #[test]
    fn dimension_mismatch() {
        assert!(x(1).try_mul(&WeylOperator::x(2, 1)).is_err());
        assert!(x(1).equals(&WeylOperator::x(2, 1)).is_err());
    }
}
