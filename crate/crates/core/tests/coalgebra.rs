mod common;

use common::*;
use racah_core::coalgebra::*;
use racah_core::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn assert_all_pass(reports: &[RelationReport]) {
    assert!(!reports.is_empty());
    for r in reports {
        assert!(r.passed(), "{} {:?}: {:?}", r.check_name, r.index_tuple, r.residual_preview);
    }
}

#[test]
fn closure_on_every_range() {
    for n in [1, 3, 4] {
        for alg in [Algebra::classical(n), Algebra::quantum(n)] {
            let reports = verify_closure(&alg);
            assert_eq!(reports.len(), 3 * n * (n + 1) / 2);
            assert_all_pass(&reports);
        }
    }
}

#[test]
fn classical_left_casimirs_match_coordinate_formula() {
    let alg = Algebra::classical(4);
    for m in 1..=4 {
        let expected = classical_casimir_oracle(4, 1, m);
        assert_eq!(alg.left_casimir(m).unwrap(), Observable::Classical(expected), "m = {m}");
    }
}

#[test]
fn classical_right_casimirs_match_coordinate_formula() {
    let alg = Algebra::classical(4);
    for m in 1..=4 {
        let expected = classical_casimir_oracle(4, 5 - m, 4);
        assert_eq!(alg.right_casimir(m).unwrap(), Observable::Classical(expected), "m = {m}");
    }
}

#[test]
fn one_site_casimir_values() {
    let c = Algebra::classical(3);
    assert_eq!(c.left_casimir(1).unwrap().to_string(), "(-1/4)*a1");
    assert_eq!(c.right_casimir(1).unwrap().to_string(), "(-1/4)*a3");
    let q = Algebra::quantum(3);
    assert_eq!(q.left_casimir(1).unwrap(), q.constant(quantum_one_site_casimir(1)));
    assert_eq!(q.left_casimir(1).unwrap().to_string(), "((3/16)*hb^2 + (-1/4)*a1)");
}

#[test]
fn casimir_value_suite_passes() {
    for n in [3, 4] {
        for alg in [Algebra::classical(n), Algebra::quantum(n)] {
            assert_all_pass(&verify_casimir_values(&alg));
        }
    }
}

#[test]
fn involution_suite_passes() {
    for alg in [Algebra::classical(3), Algebra::quantum(3)] {
        let reports = verify_involution(&alg).unwrap();
        assert_eq!(reports.len(), 6);
        assert_all_pass(&reports);
    }
}

#[test]
fn hamiltonians_commute_with_casimirs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut specs: Vec<HamiltonianSpec> = (0..3).map(|_| HamiltonianSpec::random(&mut rng, 2)).collect();
    specs.push(HamiltonianSpec::oscillator(GaussianRational::ratio(3, 2)));
    for alg in [Algebra::classical(3), Algebra::quantum(3)] {
        assert_all_pass(&verify_hamiltonian_symmetry(&alg, &specs).unwrap());
    }
}

#[test]
fn non_symmetric_observable_is_detected() {
    let alg = Algebra::classical(3);
    let c2 = alg.left_casimir(2).unwrap();
    assert!(!alg.bracket(&c2, &alg.p(1)).unwrap().is_zero());
}

#[test]
fn oscillator_spec_expands() {
    let alg = Algebra::classical(2);
    let h = alg.sample_hamiltonian(&HamiltonianSpec::oscillator(GaussianRational::from_integer(2))).unwrap();
    let full = SiteRange::new(1, 2, 2).unwrap();
    let jp = alg.generator(full, Generator::Plus).unwrap();
    let jm = alg.generator(full, Generator::Minus).unwrap();
    assert_eq!(h, alg.add(&jp, &alg.scale_ratio(&jm, 4, 1).unwrap()).unwrap());
}
