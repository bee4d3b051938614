//! Exact coefficients: Gaussian rationals extended polynomially by the formal
//! parameters `hb` and `a1..an`.
//!
//! Every value is kept in canonical form (no zero terms, rationals in lowest
//! terms, fixed term order), so structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};

/// A complex number with exact rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_integer(v: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(v)), BigRational::zero())
    }

    /// `num / den` as a real number.
    ///
    /// # Panics
    /// Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Self::new(&self.re / &norm, -(&self.im / &norm)))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        Self::new(&self.re * &k, &self.im * &k)
    }
}

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(v: BigRational) -> Self {
        Self::new(v, BigRational::zero())
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        &self + &rhs
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        &self - &rhs
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        // Most coefficients are real; skip the cross terms when possible.
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => GaussianRational::new(&self.re * &rhs.re, BigRational::zero()),
            (true, false) => GaussianRational::new(&self.re * &rhs.re, &self.re * &rhs.im),
            (false, true) => GaussianRational::new(&self.re * &rhs.re, &self.im * &rhs.re),
            (false, false) => GaussianRational::new(
                &self.re * &rhs.re - &self.im * &rhs.im,
                &self.re * &rhs.im + &self.im * &rhs.re,
            ),
        }
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -self.clone()
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "({})", self.re),
            (true, false) => write!(f, "({})*i", self.im),
            (false, false) => write!(f, "({} + {}*i)", self.re, self.im),
        }
    }
}

/// A formal parameter of the coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    /// Planck's constant, rendered `hb`.
    Hbar,
    /// The inverse-square coupling `a_i` of site `i` (1-based).
    A(u16),
}

impl Param {
    /// Slot of this parameter in an exponent vector: `hb` is 0, `a_i` is `i`.
    pub fn slot(self) -> usize {
        match self {
            Param::Hbar => 0,
            Param::A(i) => i as usize,
        }
    }

    fn from_slot(slot: usize) -> Self {
        if slot == 0 {
            Param::Hbar
        } else {
            Param::A(slot as u16)
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Hbar => write!(f, "hb"),
            Param::A(i) => write!(f, "a{i}"),
        }
    }
}

impl FromStr for Param {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "hb" {
            return Ok(Param::Hbar);
        }
        s.strip_prefix('a')
            .and_then(|rest| rest.parse::<u16>().ok())
            .filter(|&i| i >= 1)
            .map(Param::A)
            .ok_or_else(|| AlgebraError::UnknownParameter(s.to_string()))
    }
}

/// Values for a subset of the parameters.
pub type Bindings = BTreeMap<Param, GaussianRational>;

/// Exponent vector over `(hb, a1, a2, ...)` with trailing zeros trimmed.
///
/// Ordered by descending graded-lex: higher total degree first, ties broken
/// by the larger exponent in the earliest slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParamExp(SmallVec<[u16; 8]>);

impl ParamExp {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_slots(slots: &[u16]) -> Self {
        let mut v: SmallVec<[u16; 8]> = SmallVec::from_slice(slots);
        while v.last() == Some(&0) {
            v.pop();
        }
        Self(v)
    }

    pub fn of(param: Param, power: u16) -> Self {
        let mut v: SmallVec<[u16; 8]> = SmallVec::from_elem(0, param.slot() + 1);
        v[param.slot()] = power;
        Self::from_slots(&v)
    }

    pub fn get(&self, param: Param) -> u16 {
        self.0.get(param.slot()).copied().unwrap_or(0)
    }

    pub fn hbar_power(&self) -> u16 {
        self.get(Param::Hbar)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Self) -> Self {
        let len = self.0.len().max(other.0.len());
        let mut v: SmallVec<[u16; 8]> = SmallVec::with_capacity(len);
        for slot in 0..len {
            let a = self.0.get(slot).copied().unwrap_or(0);
            let b = other.0.get(slot).copied().unwrap_or(0);
            v.push(a.checked_add(b).expect("parameter exponent overflow"));
        }
        Self(v)
    }

    fn with(&self, param: Param, power: u16) -> Self {
        let mut v = self.0.clone();
        if v.len() <= param.slot() {
            v.resize(param.slot() + 1, 0);
        }
        v[param.slot()] = power;
        Self::from_slots(&v)
    }

    fn iter(&self) -> impl Iterator<Item = (Param, u16)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(slot, &e)| (Param::from_slot(slot), e))
    }
}

impl Ord for ParamExp {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            let len = self.0.len().max(other.0.len());
            for slot in 0..len {
                let a = self.0.get(slot).copied().unwrap_or(0);
                let b = other.0.get(slot).copied().unwrap_or(0);
                match b.cmp(&a) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for ParamExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `hb, a1..an` with Gaussian-rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParamScalar {
    terms: BTreeMap<ParamExp, GaussianRational>,
}

impl ParamScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(ParamExp::one(), c)
    }

    pub fn from_integer(v: i64) -> Self {
        Self::constant(GaussianRational::from_integer(v))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::constant(GaussianRational::ratio(num, den))
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    pub fn hbar() -> Self {
        Self::param(Param::Hbar)
    }

    /// The parameter `a_i`, 1-based.
    pub fn a(i: usize) -> Self {
        Self::param(Param::A(i as u16))
    }

    pub fn param(p: Param) -> Self {
        Self::term(ParamExp::of(p, 1), GaussianRational::one())
    }

    pub fn term(exp: ParamExp, coeff: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no parameter occurs.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(ParamExp::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamExp, &GaussianRational)> {
        self.terms.iter()
    }

    /// Smallest power of `hb` over all terms (0 for the zero scalar).
    pub fn min_hbar_power(&self) -> u16 {
        self.terms.keys().map(ParamExp::hbar_power).min().unwrap_or(0)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiply by `hb^k`.
    pub fn mul_hbar_pow(&self, k: u16) -> Self {
        if k == 0 {
            return self.clone();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.with(Param::Hbar, e.hbar_power() + k), v.clone()))
                .collect(),
        }
    }

    /// Divide by `hb^k`; fails if some term carries fewer than `k` powers.
    pub fn divide_by_hbar(&self, k: u16) -> Result<Self> {
        if let Some((e, c)) = self.terms.iter().find(|(e, _)| e.hbar_power() < k) {
            return Err(AlgebraError::NotDivisible {
                power: k as u32,
                term: render_term(e, c),
            });
        }
        Ok(Self {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.with(Param::Hbar, e.hbar_power() - k), v.clone()))
                .collect(),
        })
    }

    /// Replace bound parameters by their values; the rest stay symbolic.
    pub fn substitute(&self, bindings: &Bindings) -> Self {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut out = Self::zero();
        for (exp, coeff) in &self.terms {
            let mut c = coeff.clone();
            let mut rest = exp.clone();
            for (param, power) in exp.iter() {
                if let Some(v) = bindings.get(&param) {
                    c = &c * &v.pow(power as u32);
                    rest = rest.with(param, 0);
                }
            }
            out.accumulate(rest, c);
        }
        out
    }

    /// Add `coeff * exp` in place.
    pub(crate) fn accumulate(&mut self, exp: ParamExp, coeff: GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn add_assign_ref(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.accumulate(e.clone(), c.clone());
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl From<GaussianRational> for ParamScalar {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for ParamScalar {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl Add for &ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Add for ParamScalar {
    type Output = ParamScalar;
    fn add(mut self, rhs: ParamScalar) -> ParamScalar {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for &ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.accumulate(e.clone(), -c);
        }
        out
    }
}

impl Sub for ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: ParamScalar) -> ParamScalar {
        &self - &rhs
    }
}

impl Mul for &ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = ParamScalar::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.accumulate(ea.mul(eb), ca * cb);
            }
        }
        out
    }
}

impl Mul for ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: ParamScalar) -> ParamScalar {
        &self * &rhs
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        -&self
    }
}

fn render_term(exp: &ParamExp, coeff: &GaussianRational) -> String {
    let mut s = coeff.to_string();
    for (param, power) in exp.iter() {
        if power == 1 {
            s.push_str(&format!("*{param}"));
        } else {
            s.push_str(&format!("*{param}^{power}"));
        }
    }
    s
}

impl fmt::Display for ParamScalar {
    /// Renders e.g. `(3/16)*hb^2 + (-1/4)*a1`; zero renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self.terms.iter().map(|(e, c)| render_term(e, c)).collect();
        write!(f, "{}", rendered.join(" + "))
    }
}
