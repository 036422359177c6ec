//! The quantum torus `A_ℏ` as a finitely supported coefficient algebra.
//!
//! An [`AlgebraElement`] is a finite sum `Σ a_ξ s(ξ)`. The same coefficients
//! also describe the classical trigonometric polynomial `Σ a_ξ e_ξ` with
//! `e_ξ(x) = e^{2πi⟨x,ξ⟩}`, so one type serves both sides of the quantization:
//! [`multiply`] is the twisted product, [`pointwise_product`] the classical one.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::exact_phase::PlanckConstant;
use crate::lattice::{symplectic_form, GammaElement, LatticeVector};

/// Coefficients with modulus at or below this are dropped.
pub const PRUNE_THRESHOLD: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<LatticeVector, Complex64>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    /// The unit `s(0)`, i.e. the constant function 1.
    pub fn one() -> Self {
        AlgebraElement::monomial(LatticeVector::ZERO, Complex64::new(1.0, 0.0))
    }

    pub fn monomial(xi: LatticeVector, coeff: Complex64) -> Self {
        let mut x = AlgebraElement::zero();
        x.add_term(xi, coeff);
        x
    }

    /// `s(ξ)` with coefficient 1.
    pub fn basis(xi: LatticeVector) -> Self {
        AlgebraElement::monomial(xi, Complex64::new(1.0, 0.0))
    }

    pub fn from_terms<I: IntoIterator<Item = (LatticeVector, Complex64)>>(terms: I) -> Self {
        let mut x = AlgebraElement::zero();
        for (xi, c) in terms {
            x.add_term(xi, c);
        }
        x
    }

    pub fn add_term(&mut self, xi: LatticeVector, coeff: Complex64) {
        let entry = self.terms.entry(xi).or_insert(Complex64::new(0.0, 0.0));
        *entry += coeff;
        if entry.norm() <= PRUNE_THRESHOLD {
            self.terms.remove(&xi);
        }
    }

    pub fn coefficient(&self, xi: LatticeVector) -> Complex64 {
        self.terms.get(&xi).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (LatticeVector, Complex64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (xi, c) in other.terms() {
            out.add_term(xi, c);
        }
        out
    }

    pub fn scale(&self, k: Complex64) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms().map(|(xi, c)| (xi, c * k)))
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `f* = f` within `tol`, i.e. the classical function is real valued.
    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.sub(&star(self)).max_abs() <= tol
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn digest(&self) -> String {
        let json = serde_json::to_string(&self.to_json()).expect("serializing terms");
        Sha256::digest(json.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn to_json(&self) -> AlgebraElementJson {
        AlgebraElementJson {
            terms: self
                .terms()
                .map(|(xi, c)| TermJson {
                    m: xi.m,
                    n: xi.n,
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }

    /// Duplicate `(m, n)` entries are summed.
    pub fn from_json(j: &AlgebraElementJson) -> Self {
        AlgebraElement::from_terms(
            j.terms
                .iter()
                .map(|t| (LatticeVector::new(t.m, t.n), Complex64::new(t.re, t.im))),
        )
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: AlgebraElementJson = serde_json::from_str(s)?;
        Ok(AlgebraElement::from_json(&j))
    }
}

/// File schema: `{"terms":[{"m":int,"n":int,"re":float,"im":float}, ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraElementJson {
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub m: i64,
    pub n: i64,
    pub re: f64,
    pub im: f64,
}

fn convolve(
    x: &AlgebraElement,
    y: &AlgebraElement,
    kernel: impl Fn(LatticeVector, LatticeVector) -> Complex64,
) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (xi, a) in x.terms() {
        for (eta, b) in y.terms() {
            let k = kernel(xi, eta);
            if k != Complex64::new(0.0, 0.0) {
                out.add_term(xi + eta, a * b * k);
            }
        }
    }
    out
}

/// Twisted product: bilinear extension of `s(ξ)s(η) = e^{−πiℏω(ξ,η)} s(ξ+η)`.
pub fn multiply(h: PlanckConstant, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    convolve(x, y, |xi, eta| {
        h.half_phase(-symplectic_form(xi, eta)).to_complex()
    })
}

/// Antilinear involution with `s(ξ)* = s(−ξ)`.
pub fn star(x: &AlgebraElement) -> AlgebraElement {
    AlgebraElement::from_terms(x.terms().map(|(xi, c)| (-xi, c.conj())))
}

/// Pushes every mode forward: `s(ξ) ↦ s(Bξ)`.
pub fn gamma_act(b: &GammaElement, x: &AlgebraElement) -> AlgebraElement {
    AlgebraElement::from_terms(x.terms().map(|(xi, c)| (b.apply(xi), c)))
}

/// Classical composition `f ↦ f∘B`, which sends the mode `e_ξ` to `e_{Bᵀξ}`.
pub fn compose(x: &AlgebraElement, b: &GammaElement) -> AlgebraElement {
    gamma_act(&b.transpose(), x)
}

/// Untwisted convolution: the product of trigonometric polynomials.
pub fn pointwise_product(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    convolve(x, y, |_, _| Complex64::new(1.0, 0.0))
}

/// Bilinear extension of `{e_ξ, e_η} = 2π·ω(ξ,η)·e_{ξ+η}`.
pub fn poisson_bracket(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    convolve(x, y, |xi, eta| {
        Complex64::new(2.0 * PI * symplectic_form(xi, eta) as f64, 0.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{evaluate_word, GeneratorWord};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn h(m: i64, n: i64) -> PlanckConstant {
        PlanckConstant::new(m, n).unwrap()
    }

    fn close(x: &AlgebraElement, y: &AlgebraElement, tol: f64) -> bool {
        x.sub(y).max_abs() < tol
    }

    #[test]
    fn multiply_examples() {
        let hb = h(2, 5);
        let e1 = AlgebraElement::basis(LatticeVector::E1);
        let e2 = AlgebraElement::basis(LatticeVector::E2);
        let expect = AlgebraElement::monomial(
            LatticeVector::new(1, 1),
            Complex64::from_polar(1.0, -PI * hb.value()),
        );
        assert!(close(&multiply(hb, &e1, &e2), &expect, 1e-15));

        let x = AlgebraElement::from_terms([
            (LatticeVector::new(2, -1), c(0.5, 1.0)),
            (LatticeVector::new(0, 3), c(-2.0, 0.0)),
        ]);
        assert_eq!(multiply(hb, &AlgebraElement::one(), &x), x);

        let xi = LatticeVector::new(3, -4);
        let prod = multiply(hb, &AlgebraElement::basis(xi), &AlgebraElement::basis(-xi));
        assert_eq!(prod, AlgebraElement::one());
    }

    #[test]
    fn recovers_defining_relation() {
        // s(ξ+η) = e^{πiℏω(ξ,η)} s(ξ) s(η)
        let hb = h(3, 7);
        for (xi, eta) in [((1, 0), (0, 1)), ((2, -3), (5, 1)), ((-4, 4), (1, 7))] {
            let (xi, eta) = (
                LatticeVector::new(xi.0, xi.1),
                LatticeVector::new(eta.0, eta.1),
            );
            let prod = multiply(hb, &AlgebraElement::basis(xi), &AlgebraElement::basis(eta));
            let lhs = prod.scale(hb.half_phase(symplectic_form(xi, eta)).to_complex());
            assert!(close(&lhs, &AlgebraElement::basis(xi + eta), 1e-14));
        }
    }

    #[test]
    fn star_examples() {
        let xi = LatticeVector::new(2, 5);
        assert_eq!(star(&AlgebraElement::basis(xi)), AlgebraElement::basis(-xi));
        let ione = AlgebraElement::monomial(LatticeVector::ZERO, c(0.0, 1.0));
        assert_eq!(
            star(&ione),
            AlgebraElement::monomial(LatticeVector::ZERO, c(0.0, -1.0))
        );
        let x = AlgebraElement::from_terms([(xi, c(1.0, 2.0)), (LatticeVector::E1, c(0.0, -3.0))]);
        assert_eq!(star(&star(&x)), x);
    }

    #[test]
    fn gamma_act_examples() {
        let x = AlgebraElement::from_terms([
            (LatticeVector::new(1, 2), c(1.0, 0.5)),
            (LatticeVector::new(-3, 0), c(2.0, 0.0)),
        ]);
        assert_eq!(gamma_act(&GammaElement::IDENTITY, &x), x);
        assert_eq!(
            gamma_act(&GammaElement::S, &AlgebraElement::basis(LatticeVector::E1)),
            AlgebraElement::basis(LatticeVector::E2)
        );
        let b = GammaElement::new(2, 3, 1, 2).unwrap();
        assert_eq!(gamma_act(&b.inverse(), &gamma_act(&b, &x)), x);
    }

    #[test]
    fn pointwise_examples() {
        let (xi, eta) = (LatticeVector::new(1, 2), LatticeVector::new(-1, 1));
        let (ex, ey) = (AlgebraElement::basis(xi), AlgebraElement::basis(eta));
        assert_eq!(pointwise_product(&ex, &ey), AlgebraElement::basis(xi + eta));
        assert_eq!(pointwise_product(&AlgebraElement::one(), &ex), ex);
        let s = ex.add(&ey);
        let expect = AlgebraElement::from_terms([
            (xi.scale(2), c(1.0, 0.0)),
            (xi + eta, c(2.0, 0.0)),
            (eta.scale(2), c(1.0, 0.0)),
        ]);
        assert_eq!(pointwise_product(&s, &s), expect);
    }

    #[test]
    fn poisson_examples() {
        let xi = LatticeVector::new(2, 1);
        let ex = AlgebraElement::basis(xi);
        assert!(poisson_bracket(&ex, &ex).is_empty());
        let br = poisson_bracket(
            &AlgebraElement::basis(LatticeVector::E1),
            &AlgebraElement::basis(LatticeVector::E2),
        );
        assert_eq!(
            br,
            AlgebraElement::monomial(LatticeVector::new(1, 1), c(2.0 * PI, 0.0))
        );
        let x = AlgebraElement::from_terms([
            (xi, c(1.0, 1.0)),
            (LatticeVector::new(0, 4), c(3.0, 0.0)),
        ]);
        assert!(poisson_bracket(&x, &AlgebraElement::one()).is_empty());
    }

    #[test]
    fn compose_uses_transpose() {
        // (e_{(1,0)} ∘ T)(x1, x2) = e^{2πi(x1+x2)}
        let f = AlgebraElement::basis(LatticeVector::E1);
        assert_eq!(
            compose(&f, &GammaElement::T),
            AlgebraElement::basis(LatticeVector::new(1, 1))
        );
        let b1 = GammaElement::new(2, 1, 1, 1).unwrap();
        let b2 = evaluate_word(&GeneratorWord::from_letters([
            crate::lattice::Letter {
                generator: crate::lattice::Generator::S,
                exponent: 1,
            },
            crate::lattice::Letter {
                generator: crate::lattice::Generator::T,
                exponent: -3,
            },
        ]))
        .unwrap();
        assert_eq!(compose(&compose(&f, &b1), &b2), compose(&f, &(b1 * b2)));
    }

    #[test]
    fn json_sums_duplicates() {
        let x = AlgebraElement::from_json_str(
            r#"{"terms":[{"m":1,"n":0,"re":1.0,"im":0.0},{"m":1,"n":0,"re":0.5,"im":2.0},{"m":0,"n":0,"re":1.0,"im":0.0},{"m":0,"n":0,"re":-1.0,"im":0.0}]}"#,
        )
        .unwrap();
        assert_eq!(x, AlgebraElement::monomial(LatticeVector::E1, c(1.5, 2.0)));
        assert_eq!(AlgebraElement::from_json(&x.to_json()), x);
        assert!(AlgebraElement::from_json_str("{\"terms\": 3}").is_err());
        assert_eq!(x.digest().len(), 64);
    }
}
