//! Mode-tagged observables and the [`Algebra`] context that combines them.
//!
//! Classical observables live in [`PhaseFunction`] with the Poisson bracket;
//! quantum ones in [`WeylOperator`] with the scaled commutator
//! `[A, B] / (i hb)`. Relations written once against [`Algebra`] hold in both
//! modes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::phase::PhaseFunction;
use crate::scalar::{Bindings, Param, ParamScalar};
use crate::weyl::WeylOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraMode {
    Classical,
    Quantum,
}

impl AlgebraMode {
    pub fn as_str(self) -> &'static str {
        match self {
            AlgebraMode::Classical => "classical",
            AlgebraMode::Quantum => "quantum",
        }
    }
}

impl fmt::Display for AlgebraMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgebraMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "classical" => Ok(AlgebraMode::Classical),
            "quantum" => Ok(AlgebraMode::Quantum),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Observable {
    Classical(PhaseFunction),
    Quantum(WeylOperator),
}

impl Observable {
    pub fn mode(&self) -> AlgebraMode {
        match self {
            Observable::Classical(_) => AlgebraMode::Classical,
            Observable::Quantum(_) => AlgebraMode::Quantum,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Observable::Classical(f) => f.dim(),
            Observable::Quantum(a) => a.dim(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Observable::Classical(f) => f.is_zero(),
            Observable::Quantum(a) => a.is_zero(),
        }
    }

    pub fn term_count(&self) -> usize {
        match self {
            Observable::Classical(f) => f.len(),
            Observable::Quantum(a) => a.len(),
        }
    }

    pub fn render_terms(&self, limit: usize) -> Vec<String> {
        match self {
            Observable::Classical(f) => f.render_terms(limit),
            Observable::Quantum(a) => a.render_terms(limit),
        }
    }

    pub fn as_classical(&self) -> Option<&PhaseFunction> {
        match self {
            Observable::Classical(f) => Some(f),
            Observable::Quantum(_) => None,
        }
    }

    pub fn as_quantum(&self) -> Option<&WeylOperator> {
        match self {
            Observable::Quantum(a) => Some(a),
            Observable::Classical(_) => None,
        }
    }

    pub fn substitute_params(&self, bindings: &Bindings) -> Self {
        match self {
            Observable::Classical(f) => Observable::Classical(f.substitute_params(bindings)),
            Observable::Quantum(a) => Observable::Quantum(a.substitute_params(bindings)),
        }
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Observable::Classical(x) => x.fmt(f),
            Observable::Quantum(x) => x.fmt(f),
        }
    }
}

/// Arithmetic context: a mode, an ambient dimension `n`, and optional
/// parameter values applied to every result.
///
/// With empty bindings everything is exact and symbolic. With bindings the
/// context computes the image under the substitution homomorphism, which is
/// what the randomized fast mode uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    mode: AlgebraMode,
    dim: usize,
    bindings: Bindings,
}

impl Algebra {
    pub fn new(mode: AlgebraMode, dim: usize) -> Self {
        Self::with_bindings(mode, dim, Bindings::new())
    }

    /// A context that specialises the given parameters. A binding for `hb`
    /// is ignored in classical mode.
    pub fn with_bindings(mode: AlgebraMode, dim: usize, mut bindings: Bindings) -> Self {
        if mode == AlgebraMode::Classical {
            bindings.remove(&Param::Hbar);
        }
        Self { mode, dim, bindings }
    }

    pub fn classical(dim: usize) -> Self {
        Self::new(AlgebraMode::Classical, dim)
    }

    pub fn quantum(dim: usize) -> Self {
        Self::new(AlgebraMode::Quantum, dim)
    }

    pub fn mode(&self) -> AlgebraMode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bindings(&self) -> &Bindings {
        &self.bindings
    }

    fn finish(&self, o: Observable) -> Observable {
        if self.bindings.is_empty() {
            o
        } else {
            o.substitute_params(&self.bindings)
        }
    }

    /// A scalar with this context's bindings applied.
    pub fn lift(&self, s: &ParamScalar) -> ParamScalar {
        s.substitute(&self.bindings)
    }

    pub fn constant(&self, c: ParamScalar) -> Observable {
        let c = self.lift(&c);
        match self.mode {
            AlgebraMode::Classical => Observable::Classical(PhaseFunction::constant(self.dim, c)),
            AlgebraMode::Quantum => Observable::Quantum(WeylOperator::constant(self.dim, c)),
        }
    }

    pub fn zero(&self) -> Observable {
        self.constant(ParamScalar::zero())
    }

    pub fn one(&self) -> Observable {
        self.constant(ParamScalar::one())
    }

    /// `x_site^power` (1-based site).
    pub fn x_pow(&self, site: usize, power: i32) -> Observable {
        match self.mode {
            AlgebraMode::Classical => Observable::Classical(PhaseFunction::x_pow(self.dim, site, power)),
            AlgebraMode::Quantum => Observable::Quantum(WeylOperator::x_pow(self.dim, site, power)),
        }
    }

    pub fn x(&self, site: usize) -> Observable {
        self.x_pow(site, 1)
    }

    pub fn p(&self, site: usize) -> Observable {
        match self.mode {
            AlgebraMode::Classical => Observable::Classical(PhaseFunction::p(self.dim, site)),
            AlgebraMode::Quantum => Observable::Quantum(WeylOperator::p(self.dim, site)),
        }
    }

    fn check(&self, o: &Observable) -> Result<()> {
        if o.mode() != self.mode {
            return Err(AlgebraError::ModeMismatch);
        }
        if o.dim() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                left: self.dim,
                right: o.dim(),
            });
        }
        Ok(())
    }

    fn binary(
        &self,
        a: &Observable,
        b: &Observable,
        classical: impl FnOnce(&PhaseFunction, &PhaseFunction) -> Result<PhaseFunction>,
        quantum: impl FnOnce(&WeylOperator, &WeylOperator) -> Result<WeylOperator>,
    ) -> Result<Observable> {
        self.check(a)?;
        self.check(b)?;
        let out = match (a, b) {
            (Observable::Classical(x), Observable::Classical(y)) => Observable::Classical(classical(x, y)?),
            (Observable::Quantum(x), Observable::Quantum(y)) => Observable::Quantum(quantum(x, y)?),
            _ => return Err(AlgebraError::ModeMismatch),
        };
        Ok(self.finish(out))
    }

    pub fn add(&self, a: &Observable, b: &Observable) -> Result<Observable> {
        self.binary(a, b, PhaseFunction::try_add, WeylOperator::try_add)
    }

    pub fn sub(&self, a: &Observable, b: &Observable) -> Result<Observable> {
        self.binary(a, b, PhaseFunction::try_sub, WeylOperator::try_sub)
    }

    /// Ordered product `a b`.
    pub fn mul(&self, a: &Observable, b: &Observable) -> Result<Observable> {
        self.binary(a, b, PhaseFunction::try_mul, WeylOperator::try_mul)
    }

    /// `{a, b}` classically, `[a, b] / (i hb)` quantum mechanically.
    pub fn bracket(&self, a: &Observable, b: &Observable) -> Result<Observable> {
        self.binary(a, b, PhaseFunction::poisson_bracket, WeylOperator::scaled_commutator)
    }

    /// `ab + ba`; classically this is `2ab`.
    pub fn anticommutator(&self, a: &Observable, b: &Observable) -> Result<Observable> {
        let ab = self.mul(a, b)?;
        let ba = self.mul(b, a)?;
        self.add(&ab, &ba)
    }

    /// Sum of the six orderings of `abc`; classically `6abc`.
    pub fn symmetrize3(&self, a: &Observable, b: &Observable, c: &Observable) -> Result<Observable> {
        let first = self.mul(a, &self.anticommutator(b, c)?)?;
        let second = self.mul(b, &self.anticommutator(a, c)?)?;
        let third = self.mul(c, &self.anticommutator(a, b)?)?;
        self.add(&self.add(&first, &second)?, &third)
    }

    pub fn scale(&self, a: &Observable, c: &ParamScalar) -> Result<Observable> {
        self.check(a)?;
        let c = self.lift(c);
        let out = match a {
            Observable::Classical(f) => Observable::Classical(f.scale(&c)),
            Observable::Quantum(op) => Observable::Quantum(op.scale(&c)),
        };
        Ok(self.finish(out))
    }

    pub fn scale_ratio(&self, a: &Observable, num: i64, den: i64) -> Result<Observable> {
        self.scale(a, &ParamScalar::ratio(num, den))
    }

    pub fn neg(&self, a: &Observable) -> Result<Observable> {
        self.scale(a, &ParamScalar::from_integer(-1))
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Observable>) -> Result<Observable> {
        let mut acc = self.zero();
        for item in items {
            acc = self.add(&acc, item)?;
        }
        Ok(acc)
    }

    /// Linear combination `sum c_i o_i` with integer weights.
    pub fn combine(&self, items: &[(i64, &Observable)]) -> Result<Observable> {
        let mut acc = self.zero();
        for &(w, o) in items {
            acc = match w {
                1 => self.add(&acc, o)?,
                -1 => self.sub(&acc, o)?,
                _ => self.add(&acc, &self.scale(o, &ParamScalar::from_integer(w))?)?,
            };
        }
        Ok(acc)
    }

    /// Apply this context's bindings to an observable built elsewhere.
    pub fn adopt(&self, o: &Observable) -> Result<Observable> {
        self.check(o)?;
        Ok(self.finish(o.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;

    #[test]
    fn mode_mismatch_is_an_error() {
        let c = Algebra::classical(2);
        let q = Algebra::quantum(2);
        assert_eq!(c.add(&c.x(1), &q.x(1)), Err(AlgebraError::ModeMismatch));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let c2 = Algebra::classical(2);
        let c3 = Algebra::classical(3);
        assert!(matches!(c2.mul(&c2.x(1), &c3.x(1)), Err(AlgebraError::DimensionMismatch { .. })));
    }

    #[test]
    fn bracket_of_canonical_pair_is_one_in_both_modes() {
        for alg in [Algebra::classical(1), Algebra::quantum(1)] {
            assert_eq!(alg.bracket(&alg.x(1), &alg.p(1)).unwrap(), alg.one());
        }
    }

    #[test]
    fn classical_anticommutator_doubles() {
        let alg = Algebra::classical(2);
        let a = alg.mul(&alg.x(1), &alg.p(2)).unwrap();
        let b = alg.p(1);
        let expected = alg.scale(&alg.mul(&a, &b).unwrap(), &2.into()).unwrap();
        assert_eq!(alg.anticommutator(&a, &b).unwrap(), expected);
    }

    #[test]
    fn bound_hbar_still_divides() {
        let mut b = Bindings::new();
        b.insert(Param::Hbar, GaussianRational::ratio(3, 7));
        let alg = Algebra::with_bindings(AlgebraMode::Quantum, 1, b);
        let xp = alg.mul(&alg.x(1), &alg.p(1)).unwrap();
        // [xp, x] / (i hb) = -x
        assert_eq!(alg.bracket(&xp, &alg.x(1)).unwrap(), alg.neg(&alg.x(1)).unwrap());
        let px = alg.mul(&alg.p(1), &alg.x(1)).unwrap();
        let shift = alg.sub(&xp, &px).unwrap();
        assert_eq!(shift, alg.constant(ParamScalar::constant(GaussianRational::ratio(3, 7) * GaussianRational::i())));
    }
}
