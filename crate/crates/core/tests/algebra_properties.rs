use num_complex::Complex64;
use proptest::prelude::*;

use torus_quant::equivariant::{egorov_function_defect, rho_projective};
use torus_quant::exact_phase::PlanckConstant;
use torus_quant::lattice::{
    decompose, evaluate_word, symplectic_form, GammaElement, Generator, GeneratorWord,
    LatticeVector,
};
use torus_quant::qtorus::{
    compose, gamma_act, multiply, pointwise_product, poisson_bracket, star, AlgebraElement,
};
use torus_quant::weyl::{quantize, scalar_part};

fn planck() -> impl Strategy<Value = PlanckConstant> {
    prop::sample::select(vec![
        (1, 2),
        (1, 3),
        (2, 5),
        (3, 7),
        (3, 8),
        (5, 12),
        (-1, 4),
    ])
    .prop_map(|(m, n)| PlanckConstant::new(m, n).unwrap())
}

fn vector(r: i64) -> impl Strategy<Value = LatticeVector> {
    (-r..=r, -r..=r).prop_map(|(m, n)| LatticeVector::new(m, n))
}

fn element() -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((vector(4), -1.0..1.0f64, -1.0..1.0f64), 1..5).prop_map(|terms| {
        AlgebraElement::from_terms(
            terms
                .into_iter()
                .map(|(v, re, im)| (v, Complex64::new(re, im))),
        )
    })
}

fn word() -> impl Strategy<Value = GeneratorWord> {
    prop::collection::vec((any::<bool>(), any::<bool>()), 0..16).prop_map(|tokens| {
        let mut w = GeneratorWord::new();
        for (s, up) in tokens {
            w.push(
                if s { Generator::S } else { Generator::T },
                if up { 1 } else { -1 },
            );
        }
        w
    })
}

fn gamma() -> impl Strategy<Value = GammaElement> {
    word().prop_map(|w| evaluate_word(&w).unwrap())
}

fn close(a: &AlgebraElement, b: &AlgebraElement, tol: f64) -> bool {
    a.sub(b).max_abs() < tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiply_associative(h in planck(), x in element(), y in element(), z in element()) {
        let lhs = multiply(h, &multiply(h, &x, &y), &z);
        let rhs = multiply(h, &x, &multiply(h, &y, &z));
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn star_reverses_products(h in planck(), x in element(), y in element()) {
        let lhs = star(&multiply(h, &x, &y));
        let rhs = multiply(h, &star(&y), &star(&x));
        prop_assert!(close(&lhs, &rhs, 1e-12));
        prop_assert_eq!(star(&star(&x)), x);
    }

    #[test]
    fn gamma_act_is_automorphism(h in planck(), b in gamma(), x in element(), y in element()) {
        let lhs = gamma_act(&b, &multiply(h, &x, &y));
        let rhs = multiply(h, &gamma_act(&b, &x), &gamma_act(&b, &y));
        prop_assert!(close(&lhs, &rhs, 1e-12));
        prop_assert_eq!(gamma_act(&b.inverse(), &gamma_act(&b, &x)), x);
    }

    #[test]
    fn form_is_invariant(b in gamma(), xi in vector(50), eta in vector(50)) {
        prop_assert_eq!(symplectic_form(b.apply(xi), b.apply(eta)), symplectic_form(xi, eta));
    }

    #[test]
    fn jacobi(a in vector(4), b in vector(4), c in vector(4)) {
        let (x, y, z) = (AlgebraElement::basis(a), AlgebraElement::basis(b), AlgebraElement::basis(c));
        let cyc = poisson_bracket(&x, &poisson_bracket(&y, &z))
            .add(&poisson_bracket(&y, &poisson_bracket(&z, &x)))
            .add(&poisson_bracket(&z, &poisson_bracket(&x, &y)));
        prop_assert!(cyc.max_abs() < 1e-9);
    }

    #[test]
    fn leibniz(x in element(), y in element(), z in element()) {
        let lhs = poisson_bracket(&x, &pointwise_product(&y, &z));
        let rhs = pointwise_product(&poisson_bracket(&x, &y), &z)
            .add(&pointwise_product(&y, &poisson_bracket(&x, &z)));
        prop_assert!(close(&lhs, &rhs, 1e-12 * (1.0 + lhs.max_abs())));
    }

    #[test]
    fn decompose_round_trip(b in gamma()) {
        let w = decompose(&b).unwrap();
        prop_assert_eq!(evaluate_word(&w).unwrap(), b);
    }

    #[test]
    fn quantize_is_star_morphism(h in planck(), x in element(), y in element()) {
        let lhs = quantize(h, &multiply(h, &x, &y));
        let rhs = &quantize(h, &x) * &quantize(h, &y);
        prop_assert!((lhs - rhs).max_abs() < 1e-12);
        prop_assert!((quantize(h, &star(&x)) - quantize(h, &x).adjoint()).max_abs() < 1e-14);
    }

    #[test]
    fn egorov_on_functions(h in planck(), b in gamma(), f in element()) {
        prop_assert!(egorov_function_defect(h, &b, &f).unwrap() < 1e-10);
    }

    #[test]
    fn projective_cocycle_is_scalar(h in planck(), b1 in gamma(), b2 in gamma()) {
        let a = &rho_projective(h, &b1).unwrap() * &rho_projective(h, &b2).unwrap();
        let c = &a * &rho_projective(h, &(b1 * b2)).unwrap().inverse().unwrap();
        let k = scalar_part(&c, 1e-10);
        prop_assert!(k.is_some());
        prop_assert!((k.unwrap().norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn compose_is_pullback(b in gamma(), xi in vector(6)) {
        let f = AlgebraElement::basis(xi);
        prop_assert_eq!(compose(&f, &b), AlgebraElement::basis(b.transpose().apply(xi)));
    }
}

#[test]
fn decompose_handles_large_entries() {
    let mut rng_state = 12345u64;
    for _ in 0..500 {
        // a deterministic walk through long products of T^k and S
        let mut b = GammaElement::IDENTITY;
        for _ in 0..8 {
            rng_state = rng_state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let k = ((rng_state >> 33) % 41) as i64 - 20;
            b = b * GammaElement::t_power(k) * GammaElement::S;
        }
        let w = decompose(&b).unwrap();
        assert_eq!(evaluate_word(&w).unwrap(), b);
        assert!(w.len() <= 40, "{} letters for {b}", w.len());
    }
}
