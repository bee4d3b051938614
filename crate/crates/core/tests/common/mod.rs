#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use racah_core::*;

pub const DIM: usize = 2;

// ---------------------------------------------------------------- strategies

pub fn arb_gaussian() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -3i64..=3, 1i64..=3).prop_map(|(a, b, c, d)| {
        GaussianRational::ratio(a, b) + GaussianRational::ratio(c, d) * GaussianRational::i()
    })
}

pub fn arb_nonzero_gaussian() -> impl Strategy<Value = GaussianRational> {
    arb_gaussian().prop_filter("nonzero", |g| !g.is_zero())
}

/// Up to three terms over `hb, a1, a2` with exponents at most 2.
pub fn arb_param_scalar() -> impl Strategy<Value = ParamScalar> {
    prop::collection::vec((prop::array::uniform3(0u16..=2), arb_gaussian()), 0..=3).prop_map(|terms| {
        let mut acc = ParamScalar::zero();
        for (slots, c) in terms {
            acc = &acc + &ParamScalar::term(ParamExp::from_slots(&slots), c);
        }
        acc
    })
}

pub fn arb_bindings() -> impl Strategy<Value = Bindings> {
    (arb_gaussian(), arb_gaussian(), any::<bool>()).prop_map(|(h, a, with_h)| {
        let mut b = Bindings::new();
        b.insert(Param::A(1), a);
        if with_h {
            b.insert(Param::Hbar, h);
        }
        b
    })
}

pub fn arb_monomial(dim: usize) -> impl Strategy<Value = Monomial> {
    (prop::collection::vec(-2i32..=2, dim), prop::collection::vec(0u32..=2, dim)).prop_map(|(x, p)| Monomial::new(&x, &p))
}

fn small_scalar() -> impl Strategy<Value = ParamScalar> {
    prop_oneof![
        3 => arb_gaussian().prop_map(ParamScalar::constant),
        1 => arb_param_scalar(),
    ]
}

pub fn arb_phase(dim: usize) -> impl Strategy<Value = PhaseFunction> {
    prop::collection::vec((arb_monomial(dim), small_scalar()), 0..=3)
        .prop_map(move |terms| PhaseFunction::from_terms(dim, terms))
}

pub fn arb_weyl(dim: usize) -> impl Strategy<Value = WeylOperator> {
    prop::collection::vec((arb_monomial(dim), small_scalar()), 0..=3)
        .prop_map(move |terms| WeylOperator::from_terms(dim, terms))
}

// ------------------------------------------------------ normal-order oracle

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    /// `x̂_site^power`, 0-based site.
    X(usize, i32),
    /// `p̂_site`, 0-based site.
    P(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Redex {
    Leftmost,
    Rightmost,
}

pub fn word_of(m: &Monomial) -> Vec<Letter> {
    let mut w = Vec::new();
    for (s, &e) in m.x_exps().iter().enumerate() {
        if e != 0 {
            w.push(Letter::X(s, e));
        }
    }
    for (s, &e) in m.p_exps().iter().enumerate() {
        for _ in 0..e {
            w.push(Letter::P(s));
        }
    }
    w
}

/// Rewrites one `p̂_s x̂_t^e` at a time: sites differ or `e = 0` means a plain
/// swap; otherwise `p̂ x̂^e = x̂^e p̂ - i hb e x̂^(e-1)`.
pub fn naive_normal_order(dim: usize, word: Vec<Letter>, coeff: ParamScalar, redex: Redex, out: &mut Vec<(Monomial, ParamScalar)>) {
    let positions = (0..word.len().saturating_sub(1)).filter(|&k| matches!((word[k], word[k + 1]), (Letter::P(_), Letter::X(..))));
    let found = match redex {
        Redex::Leftmost => positions.min(),
        Redex::Rightmost => positions.max(),
    };
    let Some(k) = found else {
        let mut x = vec![0i32; dim];
        let mut p = vec![0u32; dim];
        for l in word {
            match l {
                Letter::X(s, e) => x[s] += e,
                Letter::P(s) => p[s] += 1,
            }
        }
        out.push((Monomial::new(&x, &p), coeff));
        return;
    };
    let (Letter::P(s), Letter::X(t, e)) = (word[k], word[k + 1]) else { unreachable!() };
    let mut swapped = word.clone();
    swapped.swap(k, k + 1);
    naive_normal_order(dim, swapped, coeff.clone(), redex, out);
    if s == t && e != 0 {
        let mut contracted = word;
        contracted[k + 1] = Letter::X(t, e - 1);
        contracted.remove(k);
        let minus_i_hb_e = (&ParamScalar::i() * &ParamScalar::hbar()).scale(&GaussianRational::from_integer(-(e as i64)));
        naive_normal_order(dim, contracted, &coeff * &minus_i_hb_e, redex, out);
    }
}

pub fn naive_product(a: &WeylOperator, b: &WeylOperator, redex: Redex) -> WeylOperator {
    let dim = a.dim();
    let mut out = Vec::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let mut w = word_of(ma);
            w.extend(word_of(mb));
            naive_normal_order(dim, w, ca * cb, redex, &mut out);
        }
    }
    WeylOperator::from_terms(dim, out)
}

// ------------------------------------------------------- Casimir oracles

fn angular(dim: usize, i: usize, j: usize) -> PhaseFunction {
    let xi_pj = &PhaseFunction::x(dim, i) * &PhaseFunction::p(dim, j);
    let xj_pi = &PhaseFunction::x(dim, j) * &PhaseFunction::p(dim, i);
    &xi_pj - &xj_pi
}

/// `-¼(Σ_{i<j} (L_ij² + a_i x_j²/x_i² + a_j x_i²/x_j²) + Σ a_i)` over
/// `lo..=hi`, written directly in phase-space coordinates.
pub fn classical_casimir_oracle(dim: usize, lo: usize, hi: usize) -> PhaseFunction {
    let mut acc = PhaseFunction::zero(dim);
    for i in lo..=hi {
        acc = &acc + &PhaseFunction::constant(dim, ParamScalar::a(i));
        for j in i + 1..=hi {
            let l = angular(dim, i, j);
            let ratio = |num: usize, den: usize| &PhaseFunction::x_pow(dim, num, 2) * &PhaseFunction::x_pow(dim, den, -2);
            acc = &acc + &(&l * &l);
            acc = &acc + &ratio(j, i).scale(&ParamScalar::a(i));
            acc = &acc + &ratio(i, j).scale(&ParamScalar::a(j));
        }
    }
    acc.scale(&ParamScalar::ratio(-1, 4))
}

pub fn quantum_one_site_casimir(i: usize) -> ParamScalar {
    &ParamScalar::hbar().pow(2).scale(&GaussianRational::ratio(3, 16)) + &ParamScalar::a(i).scale(&GaussianRational::ratio(-1, 4))
}

// ------------------------------------------------------------- properties

#[allow(clippy::eq_op)]
pub fn scalar_ring(a: &ParamScalar, b: &ParamScalar, c: &ParamScalar) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert!((a - a).is_zero());
    prop_assert_eq!(a * &ParamScalar::one(), a.clone());
    Ok(())
}

pub fn substitution_homomorphism(a: &ParamScalar, b: &ParamScalar, bind: &Bindings) -> Result<(), TestCaseError> {
    prop_assert_eq!((a * b).substitute(bind), &a.substitute(bind) * &b.substitute(bind));
    prop_assert_eq!((a + b).substitute(bind), &a.substitute(bind) + &b.substitute(bind));
    Ok(())
}

pub fn gaussian_inverse(g: &GaussianRational) -> Result<(), TestCaseError> {
    let inv = g.inv().expect("nonzero");
    prop_assert!((g * &inv).is_one());
    Ok(())
}

pub fn phase_ring(a: &PhaseFunction, b: &PhaseFunction, c: &PhaseFunction) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    Ok(())
}

pub fn poisson_antisymmetry(a: &PhaseFunction, b: &PhaseFunction) -> Result<(), TestCaseError> {
    let ab = a.poisson_bracket(b).unwrap();
    let ba = b.poisson_bracket(a).unwrap();
    prop_assert!((&ab + &ba).is_zero());
    Ok(())
}

pub fn poisson_jacobi(a: &PhaseFunction, b: &PhaseFunction, c: &PhaseFunction) -> Result<(), TestCaseError> {
    let pb = |x: &PhaseFunction, y: &PhaseFunction| x.poisson_bracket(y).unwrap();
    let sum = &(&pb(a, &pb(b, c)) + &pb(b, &pb(c, a))) + &pb(c, &pb(a, b));
    prop_assert!(sum.is_zero(), "jacobi residual {}", sum);
    Ok(())
}

pub fn poisson_leibniz(a: &PhaseFunction, b: &PhaseFunction, c: &PhaseFunction) -> Result<(), TestCaseError> {
    let pb = |x: &PhaseFunction, y: &PhaseFunction| x.poisson_bracket(y).unwrap();
    prop_assert_eq!(pb(a, &(b * c)), &(&pb(a, b) * c) + &(b * &pb(a, c)));
    Ok(())
}

pub fn weyl_associativity(a: &WeylOperator, b: &WeylOperator, c: &WeylOperator) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    Ok(())
}

pub fn weyl_confluence(a: &WeylOperator, b: &WeylOperator) -> Result<(), TestCaseError> {
    let engine = a * b;
    let left = naive_product(a, b, Redex::Leftmost);
    let right = naive_product(a, b, Redex::Rightmost);
    prop_assert_eq!(&left, &right);
    prop_assert_eq!(&engine, &left);
    Ok(())
}

pub fn commutator_antisymmetry(a: &WeylOperator, b: &WeylOperator) -> Result<(), TestCaseError> {
    let ab = a.commutator(b).unwrap();
    let ba = b.commutator(a).unwrap();
    prop_assert!((&ab + &ba).is_zero());
    Ok(())
}

pub fn commutator_jacobi(a: &WeylOperator, b: &WeylOperator, c: &WeylOperator) -> Result<(), TestCaseError> {
    let cm = |x: &WeylOperator, y: &WeylOperator| x.commutator(y).unwrap();
    let sum = &(&cm(a, &cm(b, c)) + &cm(b, &cm(c, a))) + &cm(c, &cm(a, b));
    prop_assert!(sum.is_zero(), "jacobi residual {}", sum);
    Ok(())
}

pub fn commutator_leibniz(a: &WeylOperator, b: &WeylOperator, c: &WeylOperator) -> Result<(), TestCaseError> {
    let cm = |x: &WeylOperator, y: &WeylOperator| x.commutator(y).unwrap();
    prop_assert_eq!(cm(a, &(b * c)), &(&cm(a, b) * c) + &(b * &cm(a, c)));
    Ok(())
}

pub fn semiclassical_correspondence(a: &WeylOperator, b: &WeylOperator) -> Result<(), TestCaseError> {
    let lim = a.semiclassical_bracket(b).unwrap();
    let classical = a.semiclassical_limit().poisson_bracket(&b.semiclassical_limit()).unwrap();
    prop_assert_eq!(lim, classical);
    Ok(())
}
