use crate::error::{AlgebraError, Result};
use crate::observable::{Algebra, AlgebraMode, Observable};
use crate::report::{CheckSet, RelationReport};
use crate::scalar::{GaussianRational, ParamScalar};

use super::{IndexSubset, RacahBasis};

/// The generators of the `k`-th substructure `S_(n,k)`: the central elements
/// `𝓛_{k-1}, C_k, 𝓡_{k+1}, 𝓛_n`, the generators `𝓛_k, 𝓡_k, 𝓜_k`, and
/// `𝓕_k = ½{𝓛_k, 𝓡_k}`.
///
/// Fields are public so individual generators can be perturbed.
#[derive(Clone, Debug)]
pub struct SubstructureHandle {
    pub n: usize,
    pub k: usize,
    pub l_prev: Observable,
    pub c_k: Observable,
    pub r_next: Observable,
    pub l_k: Observable,
    pub r_k: Observable,
    pub m_k: Observable,
    pub l_n: Observable,
    pub f_k: Observable,
    alg: Algebra,
}

impl SubstructureHandle {
    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn mode(&self) -> AlgebraMode {
        self.alg.mode()
    }

    /// `[𝓛_{k-1}, C_k, 𝓡_{k+1}, 𝓛_k, 𝓡_k, 𝓜_k, 𝓛_n, 𝓕_k]`.
    pub fn generators(&self) -> [(&'static str, &Observable); 8] {
        [
            ("l_prev", &self.l_prev),
            ("c_k", &self.c_k),
            ("r_next", &self.r_next),
            ("l_k", &self.l_k),
            ("r_k", &self.r_k),
            ("m_k", &self.m_k),
            ("l_n", &self.l_n),
            ("f_k", &self.f_k),
        ]
    }

    fn central(&self) -> [&Observable; 4] {
        [&self.l_prev, &self.c_k, &self.r_next, &self.l_n]
    }
}

impl RacahBasis {
    /// `S_(n,k)` from the subsets `{1..k-1}`, `{k}`, `{k+1..n}`.
    pub fn substructure(&self, k: usize) -> Result<SubstructureHandle> {
        let n = self.n();
        if n < 3 || k < 2 || k + 1 > n {
            return Err(AlgebraError::BadIndices { indices: vec![k], n });
        }
        let alg = self.algebra();
        let m_set: Vec<usize> = (1..=n).filter(|&i| i != k).collect();
        let l_k = self.left(k)?;
        let r_k = self.right(k)?;
        let f_k = alg.scale_ratio(&alg.bracket(&l_k, &r_k)?, 1, 2)?;
        Ok(SubstructureHandle {
            n,
            k,
            l_prev: self.left(k - 1)?,
            c_k: self.c(k)?.clone(),
            r_next: self.right(k + 1)?,
            l_k,
            r_k,
            m_k: self.subset_casimir(&IndexSubset::new(&m_set, n)?)?,
            l_n: self.left(n)?,
            f_k,
            alg: alg.clone(),
        })
    }
}

/// Every relation of `S_(n,k)` as a residual: the cyclic forms of `𝓕_k`, the
/// three brackets with `𝓕_k`, the lifted DK relations, the zero sum, the
/// `𝓜_k`-eliminated quadratic forms, the linear relation, `𝓛_n = 𝓡_1`, and
/// centrality of `𝓛_{k-1}, C_k, 𝓡_{k+1}, 𝓛_n`.
pub fn verify_substructure(h: &SubstructureHandle) -> Vec<RelationReport> {
    let alg = &h.alg;
    let k = h.k;
    let (l, r, m, f) = (&h.l_k, &h.r_k, &h.m_k, &h.f_k);
    let (lp, ck, rn, ln) = (&h.l_prev, &h.c_k, &h.r_next, &h.l_n);
    let mut checks = CheckSet::new();
    let idx = vec![k];

    checks.push("substructure.linear_relation", idx.clone(), move || {
        let rhs = alg.combine(&[(1, ln), (-1, l), (-1, r), (1, lp), (1, ck), (1, rn)])?;
        alg.sub(m, &rhs)
    });
    checks.push("substructure.top_casimir", idx.clone(), move || alg.sub(ln, &alg.right_casimir(alg.dim())?));
    checks.push("substructure.f_cyclic_rm", idx.clone(), move || {
        alg.sub(&alg.scale_ratio(&alg.bracket(r, m)?, 1, 2)?, f)
    });
    checks.push("substructure.f_cyclic_ml", idx.clone(), move || {
        alg.sub(&alg.scale_ratio(&alg.bracket(m, l)?, 1, 2)?, f)
    });
    checks.push("substructure.bracket_l", idx.clone(), move || {
        let rhs = alg.combine(&[
            (1, &alg.mul(r, l)?),
            (-1, &alg.mul(l, m)?),
            (1, &alg.mul(&alg.sub(ck, lp)?, &alg.sub(rn, ln)?)?),
        ])?;
        alg.sub(&alg.bracket(l, f)?, &rhs)
    });
    checks.push("substructure.bracket_r", idx.clone(), move || {
        let rhs = alg.combine(&[
            (1, &alg.mul(m, r)?),
            (-1, &alg.mul(r, l)?),
            (1, &alg.mul(&alg.sub(rn, ck)?, &alg.sub(lp, ln)?)?),
        ])?;
        alg.sub(&alg.bracket(r, f)?, &rhs)
    });
    checks.push("substructure.bracket_m", idx.clone(), move || {
        let rhs = alg.combine(&[
            (1, &alg.mul(l, m)?),
            (-1, &alg.mul(m, r)?),
            (1, &alg.mul(&alg.sub(lp, rn)?, &alg.sub(ck, ln)?)?),
        ])?;
        alg.sub(&alg.bracket(m, f)?, &rhs)
    });
    checks.push("substructure.dk_r", idx.clone(), move || alg.bracket(r, &alg.add(l, m)?));
    checks.push("substructure.dk_l", idx.clone(), move || alg.bracket(l, &alg.add(m, r)?));
    checks.push("substructure.dk_m", idx.clone(), move || alg.bracket(m, &alg.add(l, r)?));
    checks.push("substructure.zero_sum", idx.clone(), move || {
        alg.sum([&alg.bracket(l, f)?, &alg.bracket(r, f)?, &alg.bracket(m, f)?])
    });
    checks.push("substructure.quadratic_l", idx.clone(), move || {
        let centre = alg.sum([ln, lp, ck, rn])?;
        let rhs = alg.combine(&[
            (1, &alg.mul(l, l)?),
            (1, &alg.anticommutator(r, l)?),
            (-1, &alg.mul(&centre, l)?),
            (1, &alg.mul(&alg.sub(ck, lp)?, &alg.sub(rn, ln)?)?),
        ])?;
        alg.sub(&alg.bracket(l, f)?, &rhs)
    });
    checks.push("substructure.quadratic_r", idx.clone(), move || {
        let centre = alg.sum([ln, lp, ck, rn])?;
        let rhs = alg.combine(&[
            (-1, &alg.mul(r, r)?),
            (-1, &alg.anticommutator(l, r)?),
            (1, &alg.mul(&centre, r)?),
            (1, &alg.mul(&alg.sub(rn, ck)?, &alg.sub(lp, ln)?)?),
        ])?;
        alg.sub(&alg.bracket(r, f)?, &rhs)
    });
    for (ci, c) in h.central().into_iter().enumerate() {
        for (gi, g) in [l, r, m].into_iter().enumerate() {
            checks.push("substructure.central", vec![k, ci, gi], move || alg.bracket(c, g));
        }
    }
    checks.run()
}

/// The `hb²/3` block of the quantum substructure Casimir; zero classically.
pub fn quantum_correction_block(h: &SubstructureHandle) -> Result<Observable> {
    let alg = &h.alg;
    if alg.mode() == AlgebraMode::Classical {
        return Ok(alg.zero());
    }
    let (l, r, m) = (&h.l_k, &h.r_k, &h.m_k);
    let (lp, ck, rn, ln) = (&h.l_prev, &h.c_k, &h.r_next, &h.l_n);
    let inner = alg.combine(&[
        (1, &alg.anticommutator(l, m)?),
        (1, &alg.anticommutator(l, r)?),
        (1, &alg.anticommutator(m, r)?),
        (1, &alg.mul(&alg.sub(ck, lp)?, &alg.sub(rn, ln)?)?),
        (-1, &alg.mul(&alg.sub(rn, ck)?, &alg.sub(lp, ln)?)?),
    ])?;
    let third_hb2 = ParamScalar::hbar().pow(2).scale(&GaussianRational::ratio(1, 3));
    alg.scale(&inner, &third_hb2)
}

/// `𝓚_k = 𝓕_k² + ⅙{𝓛_k, 𝓜_k, 𝓡_k} + (𝓡_{k+1} - C_k)(𝓛_{k-1} - 𝓛_n)𝓛_k
/// - (C_k - 𝓛_{k-1})(𝓡_{k+1} - 𝓛_n)𝓡_k`, plus the quantum correction block.
/// Classically the symmetrizer term is `𝓛_k𝓜_k𝓡_k`.
pub fn substructure_casimir(h: &SubstructureHandle) -> Result<Observable> {
    let alg = &h.alg;
    let (l, r, m, f) = (&h.l_k, &h.r_k, &h.m_k, &h.f_k);
    let (lp, ck, rn, ln) = (&h.l_prev, &h.c_k, &h.r_next, &h.l_n);
    let sym = alg.scale_ratio(&alg.symmetrize3(l, m, r)?, 1, 6)?;
    let left = alg.mul(&alg.mul(&alg.sub(rn, ck)?, &alg.sub(lp, ln)?)?, l)?;
    let right = alg.mul(&alg.mul(&alg.sub(ck, lp)?, &alg.sub(rn, ln)?)?, r)?;
    alg.combine(&[
        (1, &alg.mul(f, f)?),
        (1, &sym),
        (1, &left),
        (-1, &right),
        (1, &quantum_correction_block(h)?),
    ])
}

/// `{K, G}` for `G` in `𝓛_k, 𝓡_k, 𝓜_k, 𝓕_k`.
pub fn verify_casimir_candidate(h: &SubstructureHandle, casimir: &Observable) -> Vec<RelationReport> {
    let alg = &h.alg;
    let mut checks = CheckSet::new();
    for (name, g) in [
        ("casimir.commutes_l", &h.l_k),
        ("casimir.commutes_r", &h.r_k),
        ("casimir.commutes_m", &h.m_k),
        ("casimir.commutes_f", &h.f_k),
    ] {
        checks.push(name, vec![h.k], move || alg.bracket(casimir, g));
    }
    checks.run()
}

/// Centrality of [`substructure_casimir`] in its substructure.
pub fn verify_casimir_centrality(h: &SubstructureHandle) -> Vec<RelationReport> {
    match substructure_casimir(h) {
        Ok(k) => verify_casimir_candidate(h, &k),
        Err(e) => vec![RelationReport::from_residual("casimir.build", vec![h.k], Err(e), 0)],
    }
}

/// `{𝓡_{i+1}, 𝓛_j} = 0` for all `j <= i < n`.
pub fn verify_cross_chain(basis: &RacahBasis) -> Result<Vec<RelationReport>> {
    let alg = basis.algebra();
    let n = basis.n();
    let lefts: Vec<Observable> = (1..n).map(|j| basis.left(j)).collect::<Result<_>>()?;
    let rights: Vec<Observable> = (2..=n).map(|i| basis.right(i)).collect::<Result<_>>()?;
    let mut checks = CheckSet::new();
    for i in 1..n {
        for j in 1..=i {
            let (r, l) = (&rights[i - 1], &lefts[j - 1]);
            checks.push("cross_chain", vec![i + 1, j], move || alg.bracket(r, l));
        }
    }
    Ok(checks.run())
}
