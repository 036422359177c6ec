//! Verification suites run by the command-line tool.
//!
//! Each suite runs a fixed list of checks for one Planck constant and records
//! every failure with its inputs; randomized checks draw from a seeded stream,
//! so an outcome is a pure function of `(ℏ, suite, seed, tol)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::characters::{act, canonical_fixed, character_of_rep, fixed_point_scan, CHARACTER_TOL};
use crate::equivariant::{
    egorov_defect_oriented, enumerate_liftings, lifting_character_ratio, rewrite_word, LinearRep,
    ProjectiveRep, EGOROV_ORIENTATION, SCHUR_TOL,
};
use crate::error::{Error, Result};
use crate::exact_phase::{PlanckConstant, RootOfUnity};
use crate::json::Float;
use crate::lattice::{decompose, evaluate_word, symplectic_form, GammaElement, LatticeVector};
use crate::qtorus::AlgebraElement;
use crate::random::{random_gamma, seeded};
use crate::semiclassics::{
    correspondence_defect, monomial_correspondence_defect, monomial_product_defect, product_defect,
};
use crate::weyl::{
    commutant_dimension, hilbert_schmidt_gram, monomial_compose, pi_monomial, trace_monomial,
};

/// Largest `N` for which the `O(N⁶)` commutant and `O(N⁴)` Gram checks run.
pub const DENSE_CHECK_MAX_N: i64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Egorov,
    Characters,
    Liftings,
    Semiclassics,
    All,
}

impl Suite {
    pub const PARTS: [Suite; 5] = [
        Suite::Relations,
        Suite::Egorov,
        Suite::Characters,
        Suite::Liftings,
        Suite::Semiclassics,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Egorov => "egorov",
            Suite::Characters => "characters",
            Suite::Liftings => "liftings",
            Suite::Semiclassics => "semiclassics",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::PARTS
            .iter()
            .chain([Suite::All].iter())
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Failure {
    pub check: String,
    pub inputs: String,
    pub expected: String,
    pub got: String,
    pub tolerance: Float,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct VerificationOutcome {
    pub suite: String,
    pub hbar: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl VerificationOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub h: PlanckConstant,
    pub seed: u64,
    /// Overrides the tolerance of the numerical Egorov and multiplicativity checks.
    pub tol: Option<f64>,
}

struct Recorder {
    checks: usize,
    failures: Vec<Failure>,
}

impl Recorder {
    fn exact(
        &mut self,
        check: &str,
        inputs: impl FnOnce() -> String,
        ok: bool,
        expected: &str,
        got: impl FnOnce() -> String,
    ) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                check: check.into(),
                inputs: inputs(),
                expected: expected.into(),
                got: got(),
                tolerance: Float(0.0),
            });
        }
    }

    /// Passes when `value < tol`.
    fn below(&mut self, check: &str, inputs: impl FnOnce() -> String, value: f64, tol: f64) {
        self.checks += 1;
        if value.is_nan() || value >= tol {
            self.failures.push(Failure {
                check: check.into(),
                inputs: inputs(),
                expected: format!("< {tol:e}"),
                got: format!("{value:.16e}"),
                tolerance: Float(tol),
            });
        }
    }

    fn result<T>(
        &mut self,
        check: &str,
        inputs: impl FnOnce() -> String,
        r: Result<T>,
    ) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(Failure {
                    check: check.into(),
                    inputs: inputs(),
                    expected: "success".into(),
                    got: e.to_string(),
                    tolerance: Float(0.0),
                });
                None
            }
        }
    }
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> VerificationOutcome {
    let mut rec = Recorder {
        checks: 0,
        failures: Vec::new(),
    };
    let parts: Vec<Suite> = if suite == Suite::All {
        Suite::PARTS.to_vec()
    } else {
        vec![suite]
    };
    for p in parts {
        match p {
            Suite::Relations => relations(&mut rec, cfg),
            Suite::Egorov => egorov(&mut rec, cfg),
            Suite::Characters => characters(&mut rec, cfg),
            Suite::Liftings => liftings(&mut rec, cfg),
            Suite::Semiclassics => semiclassics(&mut rec, cfg),
            Suite::All => unreachable!(),
        }
    }
    VerificationOutcome {
        suite: suite.name().into(),
        hbar: cfg.h.to_string(),
        seed: cfg.seed,
        note: None,
        checks: rec.checks,
        failures: rec.failures,
    }
}

fn relations(rec: &mut Recorder, cfg: &VerifyConfig) {
    let h = cfg.h;
    let big_n = h.denominator();
    let order = h.phase_order();
    let r = 4;
    let box_vectors: Vec<LatticeVector> = (-r..=r)
        .flat_map(|m| (-r..=r).map(move |n| LatticeVector::new(m, n)))
        .collect();
    for &xi in &box_vectors {
        for &eta in &box_vectors {
            let lhs = pi_monomial(h, xi + eta);
            let prod = monomial_compose(&pi_monomial(h, xi), &pi_monomial(h, eta)).expect("same h");
            let twist = RootOfUnity::new(
                order,
                (h.numerator() as i128 * symplectic_form(xi, eta) as i128).rem_euclid(order as i128)
                    as i64,
            );
            let rhs = prod.times_root(twist);
            rec.exact(
                "pi_relation",
                || format!("xi={xi} eta={eta}"),
                lhs == rhs,
                "π(ξ+η) = ζ^{Mω}π(ξ)π(η)",
                || format!("{:?} vs {:?}", lhs.phase_exponents(), rhs.phase_exponents()),
            );
        }
    }
    let q0 = canonical_fixed(h);
    let t = 2 * big_n.min(8);
    for m in -t..=t {
        for n in -t..=t {
            let xi = LatticeVector::new(m, n);
            let tr = trace_monomial(&pi_monomial(h, xi));
            if xi.is_multiple_of(big_n) {
                let expect = big_n as f64
                    * crate::characters::evaluate(h, &q0, LatticeVector::new(m / big_n, n / big_n));
                let mut target = crate::exact_phase::CyclotomicSum::zero(order);
                let sign_exp = if expect.re < 0.0 { big_n } else { 0 };
                target.add_root(RootOfUnity::new(order, sign_exp), big_n);
                rec.exact(
                    "trace_lattice",
                    || format!("xi={xi}"),
                    tr.equals(&target),
                    &format!("{}", expect.re),
                    || format!("{}", tr.to_complex()),
                );
            } else {
                rec.exact(
                    "trace_zero",
                    || format!("xi={xi}"),
                    tr.is_zero(),
                    "0",
                    || format!("{}", tr.to_complex()),
                );
            }
        }
    }
    for &xi in &box_vectors {
        let u = pi_monomial(h, xi).to_dense();
        rec.below(
            "pi_unitary",
            || format!("xi={xi}"),
            u.unitarity_defect(),
            1e-13,
        );
    }
    if big_n <= DENSE_CHECK_MAX_N {
        let d = commutant_dimension(h);
        rec.exact(
            "commutant_dimension",
            || format!("h={h}"),
            d == 1,
            "1",
            || d.to_string(),
        );
        let gram = hilbert_schmidt_gram(h);
        let mut ok = true;
        for (i, row) in gram.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                let mut target = crate::exact_phase::CyclotomicSum::zero(order);
                if i == j {
                    target.add_root(RootOfUnity::one(order), big_n);
                }
                ok &= entry.equals(&target);
            }
        }
        rec.exact(
            "hilbert_schmidt_gram",
            || format!("h={h}"),
            ok,
            "N·I",
            || "not N·I".into(),
        );
    }
}

fn egorov(rec: &mut Recorder, cfg: &VerifyConfig) {
    let h = cfg.h;
    let tol = cfg.tol.unwrap_or(1e-10);
    let rep = ProjectiveRep::new(h);
    let mut rng = seeded(cfg.seed);
    let mut elements = vec![GammaElement::S, GammaElement::T];
    for _ in 0..20 {
        elements.push(random_gamma(&mut rng, 20).0);
    }
    for b in &elements {
        for m in -3..=3 {
            for n in -3..=3 {
                let xi = LatticeVector::new(m, n);
                let inputs = || format!("B={b} xi={xi}");
                if let Some(d) = rec.result(
                    "egorov",
                    inputs,
                    egorov_defect_oriented(&rep, b, xi, EGOROV_ORIENTATION),
                ) {
                    rec.below("egorov", inputs, d, tol);
                }
            }
        }
        if let Some(rho) = rec.result("rho_projective", || format!("B={b}"), rep.element(b)) {
            let len = decompose(b).map(|w| w.token_count()).unwrap_or(1).max(1) as f64;
            rec.below(
                "rho_unitary",
                || format!("B={b}"),
                rho.unitarity_defect(),
                len * 1e-13,
            );
        }
    }
}

fn characters(rec: &mut Recorder, cfg: &VerifyConfig) {
    let h = cfg.h;
    let q0 = canonical_fixed(h);
    if let Some(q) = rec.result("character_of_rep", || format!("h={h}"), character_of_rep(h)) {
        rec.below(
            "character_of_rep",
            || format!("h={h}"),
            q.distance(&q0),
            CHARACTER_TOL,
        );
    }
    for (name, b) in [("S", GammaElement::S), ("T", GammaElement::T)] {
        rec.below(
            "q0_fixed",
            || format!("B={name}"),
            act(h, &b, &q0).distance(&q0),
            CHARACTER_TOL,
        );
    }
    let found = fixed_point_scan(h, 12);
    rec.exact(
        "fixed_point_unique",
        || "K=12".into(),
        found.len() == 1,
        "1",
        || found.len().to_string(),
    );
}

fn liftings(rec: &mut Recorder, cfg: &VerifyConfig) {
    let h = cfg.h;
    let tol = cfg.tol.unwrap_or(1e-8);
    let Some(ls) = rec.result(
        "enumerate_liftings",
        || format!("h={h}"),
        enumerate_liftings(h),
    ) else {
        return;
    };
    rec.exact(
        "lifting_count",
        || format!("h={h}"),
        ls.len() == 12,
        "12",
        || ls.len().to_string(),
    );
    let mut rng = seeded(cfg.seed);
    let pairs: Vec<(GammaElement, GammaElement)> = (0..20)
        .map(|_| (random_gamma(&mut rng, 20).0, random_gamma(&mut rng, 20).0))
        .collect();
    for l in &ls {
        let lin = LinearRep::new(h, *l);
        let res = lin.relation_residuals();
        for (name, r) in ["Z²=1", "S²=Z", "B³=Z"].iter().zip(res) {
            rec.below(
                "lifting_relation",
                || format!("lifting={} relation={name}", l.index),
                r,
                SCHUR_TOL,
            );
        }
        for (b1, b2) in &pairs {
            let (Ok(r1), Ok(r2), Ok(r12)) =
                (lin.element(b1), lin.element(b2), lin.element(&(*b1 * *b2)))
            else {
                rec.result::<()>(
                    "multiplicative",
                    || format!("B1={b1} B2={b2}"),
                    Err(Error::Overflow("decomposing")),
                );
                continue;
            };
            let d = (&r1 * &r2 - r12).operator_norm();
            rec.below(
                "multiplicative",
                || format!("lifting={} B1={b1} B2={b2}", l.index),
                d,
                tol,
            );
        }
        let mut wrng = seeded(cfg.seed ^ 0x5eed);
        for _ in 0..10 {
            let (b, w) = random_gamma(&mut wrng, 20);
            let rewritten = rewrite_word(&mut wrng, &w, 3);
            let same = evaluate_word(&rewritten).ok() == Some(b);
            rec.exact(
                "rewrite_evaluates",
                || format!("B={b}"),
                same,
                &b.to_string(),
                || rewritten.to_string(),
            );
            if let Ok(euclid) = lin.element(&b) {
                let d = (euclid - lin.word(&rewritten)).operator_norm();
                rec.below(
                    "word_independence",
                    || format!("lifting={} B={b}", l.index),
                    d,
                    1e-9,
                );
                let len = rewritten.token_count().max(1) as f64;
                rec.below(
                    "rho_linear_unitary",
                    || format!("lifting={} B={b}", l.index),
                    lin.word(&rewritten).unitarity_defect(),
                    len * 1e-13,
                );
            }
        }
    }
    let mut chis: Vec<Complex64> = Vec::new();
    for l in &ls {
        let chi = lifting_character_ratio(h, l, &ls[0], &GammaElement::T);
        if let Some(chi) = rec.result("character_ratio", || format!("lifting={}", l.index), chi) {
            let distinct = chis.iter().all(|c| (c - chi).norm() > 1e-6);
            rec.exact(
                "characters_distinct",
                || format!("lifting={}", l.index),
                distinct,
                "distinct",
                || format!("{chi}"),
            );
            chis.push(chi);
        }
    }
}

fn semiclassics(rec: &mut Recorder, cfg: &VerifyConfig) {
    let h = cfg.h;
    for (xi, eta) in [((1, 0), (0, 1)), ((2, -1), (1, 1)), ((1, 1), (3, 3))] {
        let (xi, eta) = (
            LatticeVector::new(xi.0, xi.1),
            LatticeVector::new(eta.0, eta.1),
        );
        let (f, g) = (AlgebraElement::basis(xi), AlgebraElement::basis(eta));
        let w = symplectic_form(xi, eta);
        let inputs = || format!("xi={xi} eta={eta}");
        rec.below(
            "product_closed_form",
            inputs,
            (product_defect(h, &f, &g) - monomial_product_defect(h, w)).abs(),
            1e-12,
        );
        if h.numerator() != 0 {
            let d = correspondence_defect(h, &f, &g) - monomial_correspondence_defect(h, w);
            rec.below(
                "correspondence_closed_form",
                inputs,
                d.abs(),
                1e-10 * h.denominator().max(1) as f64,
            );
        }
    }
}
