//! Racah generators built from the realised Casimirs: the two-index `C_ij`,
//! one-index `C_i`, subset Casimirs `C_K`, and `P_ij`, `F_ijk`.

mod graph;
mod limit;
mod relations;
mod substructure;

use std::collections::BTreeMap;
use std::fmt;

pub use graph::{chain_graph_edges, chain_graph_nodes, emit_chain_graph, ChainEdge, ChainNode, EdgeKind};
pub use limit::verify_classical_limit;
pub use relations::{explore_racah_relations, verify_racah_relations};
pub use substructure::{
    quantum_correction_block, substructure_casimir, verify_casimir_candidate, verify_casimir_centrality,
    verify_cross_chain, verify_substructure, SubstructureHandle,
};

use crate::error::{AlgebraError, Result};
use crate::observable::{Algebra, AlgebraMode, Observable};
use crate::report::{CheckSet, RelationReport};
use crate::scalar::{GaussianRational, ParamScalar};

/// A nonempty, strictly increasing set of 1-based site indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSubset(Vec<usize>);

impl IndexSubset {
    /// Sorts and validates `indices` against `1..=n`.
    pub fn new(indices: &[usize], n: usize) -> Result<Self> {
        let mut v = indices.to_vec();
        v.sort_unstable();
        let dup = v.windows(2).any(|w| w[0] == w[1]);
        if v.is_empty() || dup || v[0] == 0 || *v.last().unwrap() > n {
            return Err(AlgebraError::BadIndices {
                indices: indices.to_vec(),
                n,
            });
        }
        Ok(Self(v))
    }

    /// `lo..=hi`.
    pub fn contiguous(lo: usize, hi: usize, n: usize) -> Result<Self> {
        if lo > hi {
            return Err(AlgebraError::BadIndices { indices: vec![lo, hi], n });
        }
        Self::new(&(lo..=hi).collect::<Vec<_>>(), n)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn bad(indices: &[usize], n: usize) -> AlgebraError {
    AlgebraError::BadIndices {
        indices: indices.to_vec(),
        n,
    }
}

impl Algebra {
    /// `C_ij = -¼(L_ij² + a_i x_j²/x_i² + a_j x_i²/x_j² + a_i + a_j)`, with an
    /// extra `-hb²` inside the bracket in quantum mode.
    pub fn two_index_c(&self, i: usize, j: usize) -> Result<Observable> {
        let n = self.dim();
        if i == 0 || i >= j || j > n {
            return Err(bad(&[i, j], n));
        }
        let l = self.sub(&self.mul(&self.x(i), &self.p(j))?, &self.mul(&self.x(j), &self.p(i))?)?;
        let l2 = self.mul(&l, &l)?;
        let xj2_xi2 = self.mul(&self.x_pow(j, 2), &self.x_pow(i, -2))?;
        let xi2_xj2 = self.mul(&self.x_pow(i, 2), &self.x_pow(j, -2))?;
        let mut constant = &ParamScalar::a(i) + &ParamScalar::a(j);
        if self.mode() == AlgebraMode::Quantum {
            constant = &constant - &ParamScalar::hbar().pow(2);
        }
        let inner = self.sum([
            &l2,
            &self.scale(&xj2_xi2, &ParamScalar::a(i))?,
            &self.scale(&xi2_xj2, &ParamScalar::a(j))?,
            &self.constant(constant),
        ])?;
        self.scale_ratio(&inner, -1, 4)
    }

    /// `C_i = -a_i/4` classically, `(3hb² - 4a_i)/16` quantum mechanically.
    pub fn one_index_c(&self, i: usize) -> Result<Observable> {
        let n = self.dim();
        if i == 0 || i > n {
            return Err(bad(&[i], n));
        }
        let mut c = ParamScalar::a(i).scale(&GaussianRational::ratio(-1, 4));
        if self.mode() == AlgebraMode::Quantum {
            c = &c + &ParamScalar::hbar().pow(2).scale(&GaussianRational::ratio(3, 16));
        }
        Ok(self.constant(c))
    }

    /// `C_K = Σ_{i<j∈K} C_ij - (|K|-2) Σ_{i∈K} C_i`.
    pub fn subset_casimir(&self, subset: &IndexSubset) -> Result<Observable> {
        RacahBasis::new(self)?.subset_casimir(subset)
    }

    /// `P_ij = C_ij - C_i - C_j`, symmetric in `i, j`.
    pub fn racah_p(&self, i: usize, j: usize) -> Result<Observable> {
        RacahBasis::new(self)?.p(i, j)
    }

    /// `F_ijk = ½{P_ij, P_jk}`; in quantum mode the bracket is `[·,·]/(i hb)`.
    pub fn racah_f(&self, i: usize, j: usize, k: usize) -> Result<Observable> {
        RacahBasis::new(self)?.f(i, j, k)
    }

    /// The substructure `S_(n,k)` built from a fresh basis.
    pub fn substructure(&self, k: usize) -> Result<SubstructureHandle> {
        RacahBasis::new(self)?.substructure(k)
    }
}

/// Precomputed one- and two-index Casimirs for one algebra context.
///
/// The tables are public so that callers can perturb individual entries;
/// everything derived from a basis (`P`, `F`, subset Casimirs,
/// substructures) reads them.
#[derive(Clone, Debug)]
pub struct RacahBasis {
    alg: Algebra,
    /// `C_i` at position `i - 1`.
    pub singles: Vec<Observable>,
    /// `C_ij` keyed by `(i, j)` with `i < j`.
    pub pairs: BTreeMap<(usize, usize), Observable>,
}

impl RacahBasis {
    pub fn new(alg: &Algebra) -> Result<Self> {
        let n = alg.dim();
        let singles = (1..=n).map(|i| alg.one_index_c(i)).collect::<Result<_>>()?;
        let mut pairs = BTreeMap::new();
        for i in 1..=n {
            for j in i + 1..=n {
                pairs.insert((i, j), alg.two_index_c(i, j)?);
            }
        }
        Ok(Self {
            alg: alg.clone(),
            singles,
            pairs,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn n(&self) -> usize {
        self.alg.dim()
    }

    pub fn c(&self, i: usize) -> Result<&Observable> {
        if i == 0 || i > self.n() {
            return Err(bad(&[i], self.n()));
        }
        Ok(&self.singles[i - 1])
    }

    /// `C_ij` for either order of `i != j`.
    pub fn c2(&self, i: usize, j: usize) -> Result<&Observable> {
        let key = (i.min(j), i.max(j));
        self.pairs.get(&key).filter(|_| i != j).ok_or_else(|| bad(&[i, j], self.n()))
    }

    pub fn p(&self, i: usize, j: usize) -> Result<Observable> {
        let alg = &self.alg;
        alg.sub(&alg.sub(self.c2(i, j)?, self.c(i)?)?, self.c(j)?)
    }

    pub fn f(&self, i: usize, j: usize, k: usize) -> Result<Observable> {
        if i == j || j == k || i == k {
            return Err(bad(&[i, j, k], self.n()));
        }
        let alg = &self.alg;
        alg.scale_ratio(&alg.bracket(&self.p(i, j)?, &self.p(j, k)?)?, 1, 2)
    }

    pub fn subset_casimir(&self, subset: &IndexSubset) -> Result<Observable> {
        let alg = &self.alg;
        let idx = subset.indices();
        if *idx.last().unwrap() > self.n() {
            return Err(bad(idx, self.n()));
        }
        let mut acc = alg.zero();
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                acc = alg.add(&acc, self.c2(i, j)?)?;
            }
        }
        let weight = idx.len() as i64 - 2;
        if weight != 0 {
            let singles = alg.sum(idx.iter().map(|&i| &self.singles[i - 1]))?;
            acc = alg.sub(&acc, &alg.scale(&singles, &ParamScalar::from_integer(weight))?)?;
        }
        Ok(acc)
    }

    /// `𝓛_m = C_{1..m}`.
    pub fn left(&self, m: usize) -> Result<Observable> {
        self.subset_casimir(&IndexSubset::contiguous(1, m, self.n())?)
    }

    /// `𝓡_m = C_{m..n}`.
    pub fn right(&self, m: usize) -> Result<Observable> {
        self.subset_casimir(&IndexSubset::contiguous(m, self.n(), self.n())?)
    }

    /// `Σ_{i<j} P_ij + Σ_i C_i` over `lo..=hi`.
    fn dual_form(&self, lo: usize, hi: usize) -> Result<Observable> {
        let alg = &self.alg;
        let mut acc = alg.zero();
        for i in lo..=hi {
            acc = alg.add(&acc, self.c(i)?)?;
            for j in i + 1..=hi {
                acc = alg.add(&acc, &self.p(i, j)?)?;
            }
        }
        Ok(acc)
    }
}

/// Left and right Casimirs from the coalgebra agree with the subset-Casimir
/// formula and with `Σ P_ij + Σ C_i`, for every `m`.
pub fn verify_identifications(basis: &RacahBasis) -> Vec<RelationReport> {
    let alg = basis.algebra();
    let n = basis.n();
    let mut checks = CheckSet::new();
    for m in 1..=n {
        checks.push("ident.subset_left", vec![m], move || alg.sub(&alg.left_casimir(m)?, &basis.left(m)?));
        checks.push("ident.subset_right", vec![m], move || {
            alg.sub(&alg.right_casimir(m)?, &basis.right(n + 1 - m)?)
        });
        checks.push("ident.dual_left", vec![m], move || alg.sub(&alg.left_casimir(m)?, &basis.dual_form(1, m)?));
        checks.push("ident.dual_right", vec![m], move || {
            alg.sub(&alg.right_casimir(m)?, &basis.dual_form(n + 1 - m, n)?)
        });
    }
    checks.run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Bindings, Param};

    #[test]
    fn index_subset_validation() {
        assert_eq!(IndexSubset::new(&[3, 1], 3).unwrap().indices(), &[1, 3]);
        assert!(IndexSubset::new(&[], 3).is_err());
        assert!(IndexSubset::new(&[1, 1], 3).is_err());
        assert!(IndexSubset::new(&[0], 3).is_err());
        assert!(IndexSubset::new(&[4], 3).is_err());
        assert_eq!(IndexSubset::new(&[1, 3], 3).unwrap().to_string(), "{1,3}");
    }

    #[test]
    fn two_index_c_rejects_bad_order() {
        let alg = Algebra::classical(3);
        assert!(matches!(alg.two_index_c(2, 1), Err(AlgebraError::BadIndices { .. })));
        assert!(alg.two_index_c(1, 4).is_err());
        assert!(alg.one_index_c(0).is_err());
    }

    #[test]
    fn c12_is_two_site_casimir() {
        for alg in [Algebra::classical(2), Algebra::quantum(2)] {
            assert_eq!(alg.two_index_c(1, 2).unwrap(), alg.left_casimir(2).unwrap());
        }
    }

    #[test]
    fn quantum_c12_limit_is_classical() {
        let q = Algebra::quantum(3).two_index_c(1, 2).unwrap();
        let c = Algebra::classical(3).two_index_c(1, 2).unwrap();
        assert_eq!(&q.as_quantum().unwrap().semiclassical_limit(), c.as_classical().unwrap());
    }

    #[test]
    fn one_index_values() {
        let c = Algebra::classical(3);
        assert_eq!(c.one_index_c(1).unwrap(), c.constant(ParamScalar::a(1).scale(&GaussianRational::ratio(-1, 4))));
        let q = Algebra::quantum(3);
        let expected = &ParamScalar::hbar().pow(2).scale(&GaussianRational::ratio(3, 16))
            + &ParamScalar::a(2).scale(&GaussianRational::ratio(-1, 4));
        assert_eq!(q.one_index_c(2).unwrap(), q.constant(expected));
        let mut b = Bindings::new();
        b.insert(Param::Hbar, GaussianRational::zero());
        assert_eq!(q.one_index_c(2).unwrap().substitute_params(&b).to_string(), "(-1/4)*a2");
    }

    #[test]
    fn p_is_symmetric_and_constant_free() {
        let alg = Algebra::classical(3);
        assert_eq!(alg.racah_p(1, 2).unwrap(), alg.racah_p(2, 1).unwrap());
        let l = alg.sub(&alg.mul(&alg.x(1), &alg.p(2)).unwrap(), &alg.mul(&alg.x(2), &alg.p(1)).unwrap()).unwrap();
        let inner = alg
            .sum([
                &alg.mul(&l, &l).unwrap(),
                &alg.scale(&alg.mul(&alg.x_pow(2, 2), &alg.x_pow(1, -2)).unwrap(), &ParamScalar::a(1)).unwrap(),
                &alg.scale(&alg.mul(&alg.x_pow(1, 2), &alg.x_pow(2, -2)).unwrap(), &ParamScalar::a(2)).unwrap(),
            ])
            .unwrap();
        assert_eq!(alg.racah_p(1, 2).unwrap(), alg.scale_ratio(&inner, -1, 4).unwrap());
        assert!(alg.racah_p(1, 1).is_err());
    }

    #[test]
    fn f_antisymmetry_and_cyclic_forms() {
        let alg = Algebra::classical(3);
        let f123 = alg.racah_f(1, 2, 3).unwrap();
        assert!(!f123.is_zero());
        assert_eq!(alg.neg(&alg.racah_f(2, 1, 3).unwrap()).unwrap(), f123);
        assert_eq!(alg.neg(&alg.racah_f(1, 3, 2).unwrap()).unwrap(), f123);
        let half = |a: &Observable, b: &Observable| alg.scale_ratio(&alg.bracket(a, b).unwrap(), 1, 2).unwrap();
        let (c12, c23, c13) = (
            alg.two_index_c(1, 2).unwrap(),
            alg.two_index_c(2, 3).unwrap(),
            alg.two_index_c(1, 3).unwrap(),
        );
        assert_eq!(half(&c12, &c23), f123);
        assert_eq!(half(&c23, &c13), f123);
        assert_eq!(half(&c13, &c12), f123);
        assert!(alg.racah_f(1, 1, 2).is_err());
    }

    #[test]
    fn subset_casimir_examples() {
        let alg = Algebra::classical(4);
        for m in 1..=4 {
            let k = IndexSubset::contiguous(1, m, 4).unwrap();
            assert_eq!(alg.subset_casimir(&k).unwrap(), alg.left_casimir(m).unwrap());
        }
        let single = IndexSubset::new(&[1], 4).unwrap();
        assert_eq!(alg.subset_casimir(&single).unwrap(), alg.one_index_c(1).unwrap());
    }

    #[test]
    fn m2_linear_relation_n3() {
        let alg = Algebra::classical(3);
        let b = RacahBasis::new(&alg).unwrap();
        let m2 = b.subset_casimir(&IndexSubset::new(&[1, 3], 3).unwrap()).unwrap();
        assert_eq!(&m2, b.c2(1, 3).unwrap());
        let c123 = b.subset_casimir(&IndexSubset::contiguous(1, 3, 3).unwrap()).unwrap();
        let linear = alg
            .combine(&[
                (1, b.c2(1, 2).unwrap()),
                (1, b.c2(1, 3).unwrap()),
                (1, b.c2(2, 3).unwrap()),
                (-1, b.c(1).unwrap()),
                (-1, b.c(2).unwrap()),
                (-1, b.c(3).unwrap()),
            ])
            .unwrap();
        assert_eq!(c123, linear);
    }

    #[test]
    fn identifications_pass_small() {
        for alg in [Algebra::classical(3), Algebra::quantum(3)] {
            let b = RacahBasis::new(&alg).unwrap();
            let reports = verify_identifications(&b);
            assert_eq!(reports.len(), 12);
            for r in &reports {
                assert!(r.passed(), "{} {:?}: {:?}", r.check_name, r.index_tuple, r.residual_preview);
            }
        }
    }
}
