//! sl(2,R) generators realised on a chain of sites, and the left/right
//! partial Casimirs obtained from them.
//!
//! The coproduct is primitive, so the generator on a range of sites is the
//! sum of the one-site realisations over that range:
//!
//! * classical: `J+ = ½ Σ (p_j² + a_j / x_j²)`, `J- = ½ Σ x_j²`, `J3 = ½ Σ x_j p_j`
//! * quantum: the same words in `x̂, p̂`, with `Ĵ3 = ½ Σ (x̂_j p̂_j - i hb / 2)`

use std::fmt;

use rand::Rng;

use crate::error::{AlgebraError, Result};
use crate::observable::{Algebra, AlgebraMode, Observable};
use crate::report::CheckSet;
use crate::report::RelationReport;
use crate::scalar::{GaussianRational, ParamScalar};

/// A contiguous, 1-based, inclusive range of sites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SiteRange {
    lo: usize,
    hi: usize,
}

impl SiteRange {
    pub fn new(lo: usize, hi: usize, n: usize) -> Result<Self> {
        if lo < 1 || lo > hi || hi > n {
            return Err(AlgebraError::BadRange { lo, hi, n });
        }
        Ok(Self { lo, hi })
    }

    /// Sites `1..=m`.
    pub fn left(m: usize, n: usize) -> Result<Self> {
        Self::new(1, m, n)
    }

    /// Sites `n-m+1..=n`.
    pub fn right(m: usize, n: usize) -> Result<Self> {
        if m == 0 || m > n {
            return Err(AlgebraError::BadRange { lo: n + 1 - m.min(n + 1), hi: n, n });
        }
        Self::new(n - m + 1, n, n)
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn sites(&self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Plus,
    Minus,
    Three,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::Plus => "J+",
            Generator::Minus => "J-",
            Generator::Three => "J3",
        })
    }
}

/// A polynomial in the n-site generators `J+, J-, J3` with scalar
/// coefficients. Products keep their factor order, which matters in the
/// quantum mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HamiltonianSpec {
    Constant(ParamScalar),
    Gen(Generator),
    Sum(Vec<HamiltonianSpec>),
    Product(Vec<HamiltonianSpec>),
    Scaled(ParamScalar, Box<HamiltonianSpec>),
}

impl HamiltonianSpec {
    /// `J+ + ω² J-`: the isotropic oscillator with inverse-square terms.
    pub fn oscillator(omega: GaussianRational) -> Self {
        HamiltonianSpec::Sum(vec![
            HamiltonianSpec::Gen(Generator::Plus),
            HamiltonianSpec::Scaled(ParamScalar::constant(omega.pow(2)), Box::new(HamiltonianSpec::Gen(Generator::Minus))),
        ])
    }

    /// A random expression tree of bounded depth with small rational
    /// coefficients.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> Self {
        let leaf = |rng: &mut R| match rng.gen_range(0..4) {
            0 => HamiltonianSpec::Gen(Generator::Plus),
            1 => HamiltonianSpec::Gen(Generator::Minus),
            2 => HamiltonianSpec::Gen(Generator::Three),
            _ => HamiltonianSpec::Constant(ParamScalar::ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4))),
        };
        if depth == 0 {
            return leaf(rng);
        }
        match rng.gen_range(0..4) {
            0 => leaf(rng),
            1 => HamiltonianSpec::Sum((0..rng.gen_range(2..=3)).map(|_| Self::random(rng, depth - 1)).collect()),
            2 => HamiltonianSpec::Product((0..2).map(|_| Self::random(rng, depth - 1)).collect()),
            _ => HamiltonianSpec::Scaled(
                ParamScalar::ratio(rng.gen_range(-7..=7), rng.gen_range(1..=5)),
                Box::new(Self::random(rng, depth - 1)),
            ),
        }
    }
}

impl Algebra {
    /// The generator `which` realised on the sites of `range`.
    pub fn generator(&self, range: SiteRange, which: Generator) -> Result<Observable> {
        if range.hi() > self.dim() {
            return Err(AlgebraError::BadRange {
                lo: range.lo(),
                hi: range.hi(),
                n: self.dim(),
            });
        }
        let half = ParamScalar::ratio(1, 2);
        let mut acc = self.zero();
        for j in range.sites() {
            let site = match which {
                Generator::Plus => {
                    let p2 = self.mul(&self.p(j), &self.p(j))?;
                    let inv = self.scale(&self.x_pow(j, -2), &ParamScalar::a(j))?;
                    self.add(&p2, &inv)?
                }
                Generator::Minus => self.x_pow(j, 2),
                Generator::Three => {
                    let xp = self.mul(&self.x(j), &self.p(j))?;
                    match self.mode() {
                        AlgebraMode::Classical => xp,
                        AlgebraMode::Quantum => {
                            let shift = (&ParamScalar::i() * &ParamScalar::hbar()).scale(&GaussianRational::ratio(1, 2));
                            self.sub(&xp, &self.constant(shift))?
                        }
                    }
                }
            };
            acc = self.add(&acc, &site)?;
        }
        self.scale(&acc, &half)
    }

    /// `J3² - J+ J-` classically; `Ĵ3² - ½(Ĵ+Ĵ- + Ĵ-Ĵ+)` quantum mechanically.
    pub fn casimir_of_generators(&self, jp: &Observable, jm: &Observable, j3: &Observable) -> Result<Observable> {
        let j3sq = self.mul(j3, j3)?;
        let cross = match self.mode() {
            AlgebraMode::Classical => self.mul(jp, jm)?,
            AlgebraMode::Quantum => self.scale_ratio(&self.anticommutator(jp, jm)?, 1, 2)?,
        };
        self.sub(&j3sq, &cross)
    }

    fn range_casimir(&self, range: SiteRange) -> Result<Observable> {
        let jp = self.generator(range, Generator::Plus)?;
        let jm = self.generator(range, Generator::Minus)?;
        let j3 = self.generator(range, Generator::Three)?;
        self.casimir_of_generators(&jp, &jm, &j3)
    }

    /// `C^[m]`, the Casimir of sites `1..=m`.
    pub fn left_casimir(&self, m: usize) -> Result<Observable> {
        self.range_casimir(SiteRange::left(m, self.dim())?)
    }

    /// `C_[m]`, the Casimir of sites `n-m+1..=n`.
    pub fn right_casimir(&self, m: usize) -> Result<Observable> {
        self.range_casimir(SiteRange::right(m, self.dim())?)
    }

    /// Realise a Hamiltonian spec on the full chain.
    pub fn sample_hamiltonian(&self, spec: &HamiltonianSpec) -> Result<Observable> {
        let full = SiteRange::new(1, self.dim(), self.dim())?;
        self.realise(spec, full)
    }

    fn realise(&self, spec: &HamiltonianSpec, range: SiteRange) -> Result<Observable> {
        match spec {
            HamiltonianSpec::Constant(c) => Ok(self.constant(c.clone())),
            HamiltonianSpec::Gen(g) => self.generator(range, *g),
            HamiltonianSpec::Sum(items) => {
                let mut acc = self.zero();
                for item in items {
                    acc = self.add(&acc, &self.realise(item, range)?)?;
                }
                Ok(acc)
            }
            HamiltonianSpec::Product(items) => {
                let mut acc = self.one();
                for item in items {
                    acc = self.mul(&acc, &self.realise(item, range)?)?;
                }
                Ok(acc)
            }
            HamiltonianSpec::Scaled(c, inner) => self.scale(&self.realise(inner, range)?, c),
        }
    }
}

/// The sl(2,R) brackets `{J-, J+} = 2 J3`, `{J3, J±} = ±J±` on every range of
/// sites (quantum: with `[·,·]/(i hb)`).
pub fn verify_closure(alg: &Algebra) -> Vec<RelationReport> {
    let n = alg.dim();
    let mut checks = CheckSet::new();
    for lo in 1..=n {
        for hi in lo..=n {
            let idx = vec![lo, hi];
            checks.push("closure.minus_plus", idx.clone(), move || {
                let r = SiteRange::new(lo, hi, n)?;
                let (jp, jm, j3) = (alg.generator(r, Generator::Plus)?, alg.generator(r, Generator::Minus)?, alg.generator(r, Generator::Three)?);
                alg.sub(&alg.bracket(&jm, &jp)?, &alg.scale_ratio(&j3, 2, 1)?)
            });
            checks.push("closure.three_plus", idx.clone(), move || {
                let r = SiteRange::new(lo, hi, n)?;
                let (jp, j3) = (alg.generator(r, Generator::Plus)?, alg.generator(r, Generator::Three)?);
                alg.sub(&alg.bracket(&j3, &jp)?, &jp)
            });
            checks.push("closure.three_minus", idx, move || {
                let r = SiteRange::new(lo, hi, n)?;
                let (jm, j3) = (alg.generator(r, Generator::Minus)?, alg.generator(r, Generator::Three)?);
                alg.add(&alg.bracket(&j3, &jm)?, &jm)
            });
        }
    }
    checks.run()
}

/// One-site Casimir values and top-level coassociativity `C^[n] = C_[n]`.
pub fn verify_casimir_values(alg: &Algebra) -> Vec<RelationReport> {
    let n = alg.dim();
    let one_site = |i: usize| -> ParamScalar {
        let quarter = ParamScalar::a(i).scale(&GaussianRational::ratio(-1, 4));
        match alg.mode() {
            AlgebraMode::Classical => quarter,
            AlgebraMode::Quantum => &ParamScalar::hbar().pow(2).scale(&GaussianRational::ratio(3, 16)) + &quarter,
        }
    };
    let mut checks = CheckSet::new();
    checks.push("casimir.left_one_site", vec![1], move || alg.sub(&alg.left_casimir(1)?, &alg.constant(one_site(1))));
    checks.push("casimir.right_one_site", vec![n], move || alg.sub(&alg.right_casimir(1)?, &alg.constant(one_site(n))));
    checks.push("casimir.coassociativity", vec![n], move || alg.sub(&alg.left_casimir(n)?, &alg.right_casimir(n)?));
    checks.run()
}

/// `{C^[m], C^[m']} = 0` and `{C_[m], C_[m']} = 0` for all `m < m'`.
pub fn verify_involution(alg: &Algebra) -> Result<Vec<RelationReport>> {
    let n = alg.dim();
    let left: Vec<Observable> = (1..=n).map(|m| alg.left_casimir(m)).collect::<Result<_>>()?;
    let right: Vec<Observable> = (1..=n).map(|m| alg.right_casimir(m)).collect::<Result<_>>()?;
    let mut checks = CheckSet::new();
    for m in 1..=n {
        for mm in m + 1..=n {
            let (a, b) = (&left[m - 1], &left[mm - 1]);
            checks.push("involution.left", vec![m, mm], move || alg.bracket(a, b));
            let (a, b) = (&right[m - 1], &right[mm - 1]);
            checks.push("involution.right", vec![m, mm], move || alg.bracket(a, b));
        }
    }
    Ok(checks.run())
}

/// `{C^[m], H} = 0` and `{C_[m], H} = 0` for each Hamiltonian spec.
pub fn verify_hamiltonian_symmetry(alg: &Algebra, specs: &[HamiltonianSpec]) -> Result<Vec<RelationReport>> {
    let n = alg.dim();
    let left: Vec<Observable> = (1..=n).map(|m| alg.left_casimir(m)).collect::<Result<_>>()?;
    let right: Vec<Observable> = (1..=n).map(|m| alg.right_casimir(m)).collect::<Result<_>>()?;
    let hams: Vec<Observable> = specs.iter().map(|s| alg.sample_hamiltonian(s)).collect::<Result<_>>()?;
    let mut checks = CheckSet::new();
    for (h, ham) in hams.iter().enumerate() {
        for m in 1..=n {
            let c = &left[m - 1];
            checks.push("symmetry.left", vec![h, m], move || alg.bracket(c, ham));
            let c = &right[m - 1];
            checks.push("symmetry.right", vec![h, m], move || alg.bracket(c, ham));
        }
    }
    Ok(checks.run())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::PhaseFunction;
    use crate::monomial::Monomial;
    use crate::weyl::WeylOperator;

    #[test]
    fn classical_one_site_j3() {
        let alg = Algebra::classical(1);
        let j3 = alg.generator(SiteRange::new(1, 1, 1).unwrap(), Generator::Three).unwrap();
        let expected = PhaseFunction::from_term(Monomial::new(&[1], &[1]), ParamScalar::ratio(1, 2));
        assert_eq!(j3, Observable::Classical(expected));
    }

    #[test]
    fn quantum_one_site_j3() {
        let alg = Algebra::quantum(1);
        let j3 = alg.generator(SiteRange::new(1, 1, 1).unwrap(), Generator::Three).unwrap();
        let shift = (&ParamScalar::i() * &ParamScalar::hbar()).scale(&GaussianRational::ratio(-1, 4));
        let expected = WeylOperator::from_terms(
            1,
            [(Monomial::new(&[1], &[1]), ParamScalar::ratio(1, 2)), (Monomial::one(1), shift)],
        );
        assert_eq!(j3, Observable::Quantum(expected));
    }

    #[test]
    fn classical_three_site_j_minus() {
        let alg = Algebra::classical(3);
        let jm = alg.generator(SiteRange::new(1, 3, 3).unwrap(), Generator::Minus).unwrap();
        let expected = PhaseFunction::from_terms(
            3,
            (1..=3).map(|i| (Monomial::x_pow(3, i, 2), ParamScalar::ratio(1, 2))),
        );
        assert_eq!(jm, Observable::Classical(expected));
    }

    #[test]
    fn bad_ranges() {
        assert!(SiteRange::new(0, 1, 3).is_err());
        assert!(SiteRange::new(2, 1, 3).is_err());
        assert!(SiteRange::new(1, 4, 3).is_err());
        assert!(Algebra::classical(3).left_casimir(0).is_err());
        assert!(Algebra::classical(3).right_casimir(4).is_err());
    }

    #[test]
    fn one_site_casimirs() {
        let c = Algebra::classical(1);
        assert_eq!(c.left_casimir(1).unwrap(), c.constant(ParamScalar::a(1).scale(&GaussianRational::ratio(-1, 4))));
        let q = Algebra::quantum(1);
        let expected = &ParamScalar::hbar().pow(2).scale(&GaussianRational::ratio(3, 16)) + &ParamScalar::a(1).scale(&GaussianRational::ratio(-1, 4));
        assert_eq!(q.left_casimir(1).unwrap(), q.constant(expected));
    }

    #[test]
    fn casimir_of_trivial_generators() {
        let alg = Algebra::classical(2);
        let c = alg.casimir_of_generators(&alg.zero(), &alg.zero(), &alg.one()).unwrap();
        assert_eq!(c, alg.one());
    }

    #[test]
    fn right_casimir_example_n4() {
        let alg = Algebra::classical(4);
        let r2 = alg.right_casimir(2).unwrap();
        let l34 = alg
            .sub(&alg.mul(&alg.x(3), &alg.p(4)).unwrap(), &alg.mul(&alg.x(4), &alg.p(3)).unwrap())
            .unwrap();
        let x3sq_over_x4sq = alg.mul(&alg.x_pow(3, 2), &alg.x_pow(4, -2)).unwrap();
        let x4sq_over_x3sq = alg.mul(&alg.x_pow(4, 2), &alg.x_pow(3, -2)).unwrap();
        let inner = alg
            .sum([
                &alg.mul(&l34, &l34).unwrap(),
                &alg.scale(&x4sq_over_x3sq, &ParamScalar::a(3)).unwrap(),
                &alg.scale(&x3sq_over_x4sq, &ParamScalar::a(4)).unwrap(),
                &alg.constant(&ParamScalar::a(3) + &ParamScalar::a(4)),
            ])
            .unwrap();
        assert_eq!(r2, alg.scale_ratio(&inner, -1, 4).unwrap());
    }

    #[test]
    fn constant_hamiltonian_commutes_with_everything() {
        let alg = Algebra::quantum(2);
        let h = alg.sample_hamiltonian(&HamiltonianSpec::Constant(ParamScalar::ratio(7, 3))).unwrap();
        assert!(alg.bracket(&h, &alg.x(1)).unwrap().is_zero());
        assert!(alg.bracket(&h, &alg.p(2)).unwrap().is_zero());
    }

    #[test]
    fn kinetic_hamiltonian_is_j_plus() {
        let alg = Algebra::classical(3);
        let h = alg.sample_hamiltonian(&HamiltonianSpec::Gen(Generator::Plus)).unwrap();
        let jp = alg.generator(SiteRange::new(1, 3, 3).unwrap(), Generator::Plus).unwrap();
        assert_eq!(h, jp);
    }
}
