//! Quantization of the symplectic 2-torus at rational Planck constant `ℏ = M/N`,
//! together with the projective `SL₂(ℤ)` representation that makes it
//! equivariant.
//!
//! - [`qtorus`]: the twisted algebra `A_ℏ`.
//! - [`weyl`]: its canonical `N`-dimensional representation `π`, exact on monomials.
//! - [`characters`]: twisted characters and the `SL₂(ℤ)`-fixed one.
//! - [`equivariant`]: `ρ`, Egorov's identity, and the twelve linear liftings.
//! - [`semiclassics`]: the `ℏ → 0` defects.
//!
//! ```
//! use torus_quant::equivariant::egorov_defect;
//! use torus_quant::exact_phase::PlanckConstant;
//! use torus_quant::lattice::{GammaElement, LatticeVector};
//!
//! let h: PlanckConstant = "2/5".parse().unwrap();
//! let b = GammaElement::new(2, 1, 1, 1).unwrap();
//! assert!(egorov_defect(h, &b, LatticeVector::new(1, 0)).unwrap() < 1e-12);
//! ```
//!
//! The guide under `book/` covers the conventions in detail.

pub mod characters;
pub mod equivariant;
pub mod error;
pub mod exact_phase;
pub mod json;
pub mod lattice;
pub mod operator;
pub mod qtorus;
pub mod random;
pub mod semiclassics;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use exact_phase::PlanckConstant;
pub use lattice::{GammaElement, LatticeVector};
pub use qtorus::AlgebraElement;

// The guide's snippets run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/quantum-torus.md")]
    pub mod quantum_torus {}
    #[doc = include_str!("../../../book/src/canonical-representation.md")]
    pub mod canonical_representation {}
    #[doc = include_str!("../../../book/src/twisted-characters.md")]
    pub mod twisted_characters {}
    #[doc = include_str!("../../../book/src/egorov.md")]
    pub mod egorov {}
    #[doc = include_str!("../../../book/src/liftings.md")]
    pub mod liftings {}
    #[doc = include_str!("../../../book/src/semiclassics.md")]
    pub mod semiclassics {}
    #[doc = include_str!("../../../book/src/conventions.md")]
    pub mod conventions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
