use crate::coalgebra::{Generator, SiteRange};
use crate::error::{AlgebraError, Result};
use crate::observable::{Algebra, AlgebraMode, Observable};
use crate::report::{CheckSet, RelationReport};
use crate::scalar::{Bindings, Param};

use super::substructure::substructure_casimir;
use super::RacahBasis;

fn classical_part(o: &Observable) -> Result<&crate::phase::PhaseFunction> {
    o.as_classical().ok_or(AlgebraError::ModeMismatch)
}

fn quantum_part(o: &Observable) -> Result<&crate::weyl::WeylOperator> {
    o.as_quantum().ok_or(AlgebraError::ModeMismatch)
}

/// `lim [Â, B̂]/(i hb) - {A, B}`.
fn bracket_residual(qa: &Observable, qb: &Observable, ca: &Observable, cb: &Observable) -> Result<Observable> {
    let lim = quantum_part(qa)?.semiclassical_bracket(quantum_part(qb)?)?;
    let classical = classical_part(ca)?.poisson_bracket(classical_part(cb)?)?;
    Ok(Observable::Classical(lim.try_sub(&classical)?))
}

/// `lim Â - A`.
fn value_residual(q: &Observable, c: &Observable) -> Result<Observable> {
    let lim = quantum_part(q)?.semiclassical_limit();
    Ok(Observable::Classical(lim.try_sub(classical_part(c)?)?))
}

/// A named list of matching quantum and classical observables.
struct Paired {
    quantum: Vec<Observable>,
    classical: Vec<Observable>,
}

impl Paired {
    fn build(q: &Algebra, c: &Algebra, f: impl Fn(&Algebra) -> Result<Vec<Observable>>) -> Result<Self> {
        Ok(Self {
            quantum: f(q)?,
            classical: f(c)?,
        })
    }

    fn push_pairs<'a>(&'a self, checks: &mut CheckSet<'a>, name: &str, prefix: &[usize]) {
        for a in 0..self.quantum.len() {
            checks.push(format!("{name}.value"), [prefix, &[a]].concat(), move || {
                value_residual(&self.quantum[a], &self.classical[a])
            });
            for b in a + 1..self.quantum.len() {
                checks.push(format!("{name}.bracket"), [prefix, &[a, b]].concat(), move || {
                    bracket_residual(&self.quantum[a], &self.quantum[b], &self.classical[a], &self.classical[b])
                });
            }
        }
    }
}

/// Semiclassical limits of the quantum construction against the classical
/// one: the sl(2) generators, the Racah `P` and `F`, every substructure's
/// generators, and the substructure Casimirs. `hb` stays symbolic; the
/// bindings may fix the `a_i`.
pub fn verify_classical_limit(n: usize, bindings: &Bindings) -> Result<Vec<RelationReport>> {
    if n < 3 {
        return Err(AlgebraError::BadIndices { indices: vec![n], n });
    }
    let mut bindings = bindings.clone();
    bindings.remove(&Param::Hbar);
    let q = Algebra::with_bindings(AlgebraMode::Quantum, n, bindings.clone());
    let c = Algebra::with_bindings(AlgebraMode::Classical, n, bindings);
    let qb = RacahBasis::new(&q)?;
    let cb = RacahBasis::new(&c)?;

    let sl2 = Paired::build(&q, &c, |alg| {
        let full = SiteRange::new(1, n, n)?;
        [Generator::Plus, Generator::Minus, Generator::Three]
            .into_iter()
            .map(|g| alg.generator(full, g))
            .collect()
    })?;
    let racah_of = |b: &RacahBasis| -> Result<Vec<Observable>> {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(b.p(i, j)?);
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    out.push(b.f(i, j, k)?);
                }
            }
        }
        Ok(out)
    };
    let racah = Paired {
        quantum: racah_of(&qb)?,
        classical: racah_of(&cb)?,
    };
    let mut subs = Vec::new();
    for k in 2..n {
        let hq = qb.substructure(k)?;
        let hc = cb.substructure(k)?;
        let gens = |h: &super::SubstructureHandle| h.generators().iter().map(|(_, g)| (*g).clone()).collect::<Vec<_>>();
        subs.push((
            k,
            Paired {
                quantum: gens(&hq),
                classical: gens(&hc),
            },
            hq,
            hc,
        ));
    }

    let mut checks = CheckSet::new();
    sl2.push_pairs(&mut checks, "limit.sl2", &[]);
    racah.push_pairs(&mut checks, "limit.racah", &[]);
    for (k, paired, hq, hc) in &subs {
        paired.push_pairs(&mut checks, "limit.substructure", &[*k]);
        checks.push("limit.casimir", vec![*k], move || {
            value_residual(&substructure_casimir(hq)?, &substructure_casimir(hc)?)
        });
    }
    Ok(checks.run())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_limit_passes() {
        let reports = verify_classical_limit(3, &Bindings::new()).unwrap();
        assert!(!reports.is_empty());
        for r in &reports {
            assert!(r.passed(), "{} {:?}: {:?}", r.check_name, r.index_tuple, r.residual_preview);
        }
    }

    #[test]
    fn small_n_rejected() {
        assert!(verify_classical_limit(2, &Bindings::new()).is_err());
    }
}
