//! Exponent data shared by phase-space functions and normal-ordered operators.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use smallvec::SmallVec;

use crate::scalar::{GaussianRational, ParamScalar};

pub(crate) type XExps = SmallVec<[i32; 6]>;
pub(crate) type PExps = SmallVec<[u32; 6]>;

/// `x_1^{e_1} .. x_n^{e_n} p_1^{f_1} .. p_n^{f_n}` with Laurent exponents in
/// `x` and polynomial exponents in `p`.
///
/// For operators the same data denotes the normal-ordered word with every
/// `x` factor to the left of every `p` factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub(crate) x: XExps,
    pub(crate) p: PExps,
}

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Self {
            x: SmallVec::from_elem(0, dim),
            p: SmallVec::from_elem(0, dim),
        }
    }

    /// # Panics
    /// Panics if the two slices differ in length.
    pub fn new(x: &[i32], p: &[u32]) -> Self {
        assert_eq!(x.len(), p.len(), "x and p exponent vectors must share a length");
        Self {
            x: SmallVec::from_slice(x),
            p: SmallVec::from_slice(p),
        }
    }

    /// `x_site^power`, site 1-based.
    pub fn x_pow(dim: usize, site: usize, power: i32) -> Self {
        let mut m = Self::one(dim);
        m.x[site - 1] = power;
        m
    }

    /// `p_site^power`, site 1-based.
    pub fn p_pow(dim: usize, site: usize, power: u32) -> Self {
        let mut m = Self::one(dim);
        m.p[site - 1] = power;
        m
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn x_exps(&self) -> &[i32] {
        &self.x
    }

    pub fn p_exps(&self) -> &[u32] {
        &self.p
    }

    pub fn is_one(&self) -> bool {
        self.x.iter().all(|&e| e == 0) && self.p.iter().all(|&e| e == 0)
    }

    /// Signed total degree.
    pub fn degree(&self) -> i64 {
        self.x.iter().map(|&e| e as i64).sum::<i64>() + self.p.iter().map(|&e| e as i64).sum::<i64>()
    }

    /// Commutative product of the exponent data.
    pub(crate) fn mul(&self, other: &Self) -> Self {
        Self {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            p: self.p.iter().zip(&other.p).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Ord for Monomial {
    /// Descending graded-lex on the concatenation `(x_1..x_n, p_1..p_n)`.
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            let lhs = self.x.iter().map(|&e| e as i64).chain(self.p.iter().map(|&e| e as i64));
            let rhs = other.x.iter().map(|&e| e as i64).chain(other.p.iter().map(|&e| e as i64));
            for (a, b) in lhs.zip(rhs) {
                match b.cmp(&a) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            self.dim().cmp(&other.dim())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    /// `x1^-2 * x2^2 * p1`; the empty product renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        for (i, &e) in self.x.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("x{}", i + 1)),
                _ => factors.push(format!("x{}^{}", i + 1, e)),
            }
        }
        for (i, &e) in self.p.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("p{}", i + 1)),
                _ => factors.push(format!("p{}^{}", i + 1, e)),
            }
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join(" * "))
        }
    }
}

/// Hash-based sum of terms, flushed into canonical ordered form at the end.
#[derive(Default)]
pub(crate) struct TermAccumulator {
    terms: HashMap<Monomial, ParamScalar>,
}

impl TermAccumulator {
    pub(crate) fn with_capacity(cap: usize) -> Self {
        Self {
            terms: HashMap::with_capacity(cap),
        }
    }

    pub(crate) fn add(&mut self, m: Monomial, c: &ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => slot.add_assign_ref(c),
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub(crate) fn add_owned(&mut self, m: Monomial, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => slot.add_assign_ref(&c),
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, m: Monomial, c: &ParamScalar, k: &GaussianRational) {
        self.add_owned(m, c.scale(k));
    }

    pub(crate) fn finish(self) -> BTreeMap<Monomial, ParamScalar> {
        self.terms.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// `lhs + rhs` (or `lhs - rhs` when `negate`), dropping cancelled terms.
pub(crate) fn merge_terms(
    lhs: &BTreeMap<Monomial, ParamScalar>,
    rhs: &BTreeMap<Monomial, ParamScalar>,
    negate: bool,
) -> BTreeMap<Monomial, ParamScalar> {
    let mut out = lhs.clone();
    for (m, c) in rhs {
        let c = if negate { -c } else { c.clone() };
        match out.get_mut(m) {
            Some(slot) => {
                slot.add_assign_ref(&c);
                if slot.is_zero() {
                    out.remove(m);
                }
            }
            None => {
                out.insert(m.clone(), c);
            }
        }
    }
    out
}

/// One rendered term: `coeff * monomial`, parenthesising multi-term scalars.
pub(crate) fn render_term(m: &Monomial, c: &ParamScalar) -> String {
    let scalar = if c.len() == 1 { c.to_string() } else { format!("({c})") };
    if m.is_one() {
        scalar
    } else {
        format!("{scalar} * {m}")
    }
}
