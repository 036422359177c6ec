//! Twisted characters `q : Λ* → ℂ*` with `q(ξ+η) = (−1)^{MN·ω(ξ,η)} q(ξ)q(η)`.
//!
//! Every irreducible representation `π` of `A_ℏ` determines one through
//! `π(Nξ) = q_π(ξ)·I`, and the canonical representation is the one whose
//! character is fixed by all of `SL₂(ℤ)`:
//! `q₀(m,n) = (−1)^{MN(mn+m+n)}`.
//!
//! A twisted character is determined by its values on `e₁` and `e₂`; the
//! cocycle `(−1)^{MN·mn}` reconstructs the rest.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_phase::PlanckConstant;
use crate::json::{complex_pair, Float};
use crate::lattice::{GammaElement, LatticeVector};
use crate::qtorus::AlgebraElement;
use crate::weyl::{quantize, scalar_part};

/// Comparison tolerance for character values.
pub const CHARACTER_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistedCharacter {
    pub q1: Complex64,
    pub q2: Complex64,
}

impl TwistedCharacter {
    pub fn new(q1: Complex64, q2: Complex64) -> Self {
        TwistedCharacter { q1, q2 }
    }

    /// Max distance between the defining values.
    pub fn distance(&self, other: &TwistedCharacter) -> f64 {
        (self.q1 - other.q1).norm().max((self.q2 - other.q2).norm())
    }

    pub fn approx_eq(&self, other: &TwistedCharacter, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (self.q1.norm() - 1.0).abs() <= tol && (self.q2.norm() - 1.0).abs() <= tol
    }

    pub fn to_json(&self) -> CharacterJson {
        CharacterJson {
            q1: complex_pair(self.q1),
            q2: complex_pair(self.q2),
        }
    }
}

/// Output schema `{"q1":[re,im],"q2":[re,im]}`.
#[derive(Debug, Clone, Serialize)]
pub struct CharacterJson {
    pub q1: [Float; 2],
    pub q2: [Float; 2],
}

fn sign(parity: i64) -> f64 {
    if parity.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `q(m,n) = (−1)^{MN·mn} q₁^m q₂^n`.
pub fn evaluate(h: PlanckConstant, q: &TwistedCharacter, xi: LatticeVector) -> Complex64 {
    let cocycle = sign(h.mn_parity() * (xi.m.rem_euclid(2) * xi.n.rem_euclid(2)));
    q.q1.powi(xi.m as i32) * q.q2.powi(xi.n as i32) * cocycle
}

/// `q^B(ξ) = q(B⁻¹ξ)`.
pub fn act(h: PlanckConstant, b: &GammaElement, q: &TwistedCharacter) -> TwistedCharacter {
    let inv = b.inverse();
    TwistedCharacter {
        q1: evaluate(h, q, inv.apply(LatticeVector::E1)),
        q2: evaluate(h, q, inv.apply(LatticeVector::E2)),
    }
}

/// The `SL₂(ℤ)`-fixed character `q₀`, with `q₁ = q₂ = (−1)^{MN}`.
pub fn canonical_fixed(h: PlanckConstant) -> TwistedCharacter {
    let s = Complex64::new(sign(h.mn_parity()), 0.0);
    TwistedCharacter::new(s, s)
}

/// Reads the character of the canonical representation off `π(N e₁)` and `π(N e₂)`.
pub fn character_of_rep(h: PlanckConstant) -> Result<TwistedCharacter> {
    let n = h.denominator();
    let value = |xi: LatticeVector| {
        let op = quantize(h, &AlgebraElement::basis(xi.scale(n)));
        scalar_part(&op, CHARACTER_TOL)
            .ok_or_else(|| Error::Inconsistency(format!("π({}) is not scalar", xi.scale(n))))
    };
    Ok(TwistedCharacter::new(
        value(LatticeVector::E1)?,
        value(LatticeVector::E2)?,
    ))
}

/// `χ(m,n) = χ₁^m χ₂^n` acting by multiplication.
pub fn twist_by(q: &TwistedCharacter, chi1: Complex64, chi2: Complex64) -> TwistedCharacter {
    TwistedCharacter::new(q.q1 * chi1, q.q2 * chi2)
}

/// Tolerance for the fixed-point test in [`fixed_point_scan`].
pub const SCAN_TOL: f64 = 1e-10;

/// Scans `q₀·χ` for `χ` on the `K × K` grid of pairs of `K`-th roots of unity
/// and returns those fixed by both `S` and `T`.
pub fn fixed_point_scan(h: PlanckConstant, k: usize) -> Vec<TwistedCharacter> {
    assert!(k >= 1, "grid size must be positive");
    let q0 = canonical_fixed(h);
    let root = |j: usize| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / k as f64);
    let mut fixed = Vec::new();
    for a in 0..k {
        for b in 0..k {
            let q = twist_by(&q0, root(a), root(b));
            let by_s = act(h, &GammaElement::S, &q).approx_eq(&q, SCAN_TOL);
            let by_t = act(h, &GammaElement::T, &q).approx_eq(&q, SCAN_TOL);
            if by_s && by_t {
                fixed.push(q);
            }
        }
    }
    fixed
}
