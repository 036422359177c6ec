//! The canonical `N`-dimensional representation `π` of `A_ℏ` on `L²(ℤ/Nℤ)`
//! and Weyl quantization of algebra elements.
//!
//! For `ℏ = M/N` the monomial `π(m, n)` is the clock-and-shift operator
//!
//! ```text
//! [π(m,n) f](x) = α(m,−n) · ψ(−n·x) · f(x + m)
//! ```
//!
//! with `α(m,n) = (−1)^{M(m+n)} e^{πiℏmn}` and `ψ(t) = e^{2πiℏt}`. The sign of
//! the second coordinate is what makes `π` satisfy
//! `π(ξ+η) = e^{πiℏω(ξ,η)} π(ξ)π(η)` for `ω(e₁, e₂) = 1`; see the conventions
//! chapter of the guide.
//!
//! Monomials are kept as exact [`MonomialOperator`]s (a cyclic shift and a
//! diagonal of `2N`-th roots of unity), so every algebraic identity between
//! them is an equality of integer arrays.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_phase::{phase_alpha, phase_psi, CyclotomicSum, PlanckConstant, RootOfUnity};
use crate::lattice::LatticeVector;
use crate::operator::DenseOperator;
use crate::qtorus::AlgebraElement;

/// `[A f](x) = ζ_{2N}^{k(x)} f(x + shift)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOperator {
    order: i64,
    shift: usize,
    phases: Vec<i64>,
}

impl MonomialOperator {
    pub fn identity(h: PlanckConstant) -> Self {
        MonomialOperator {
            order: h.phase_order(),
            shift: 0,
            phases: vec![0; h.dim()],
        }
    }

    /// Builds from raw parts, reducing the shift mod `dim` and phases mod `order`.
    pub fn from_parts(order: i64, shift: i64, phases: Vec<i64>) -> Result<Self> {
        if phases.is_empty() || order <= 0 {
            return Err(Error::Parse(
                "monomial needs a positive dimension and order".into(),
            ));
        }
        let dim = phases.len() as i64;
        Ok(MonomialOperator {
            order,
            shift: shift.rem_euclid(dim) as usize,
            phases: phases.into_iter().map(|k| k.rem_euclid(order)).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.phases.len()
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn phase_exponents(&self) -> &[i64] {
        &self.phases
    }

    /// The phase multiplying `f(x + shift)` in row `x`.
    pub fn phase(&self, x: usize) -> RootOfUnity {
        RootOfUnity::new(self.order, self.phases[x])
    }

    pub fn times_root(&self, r: RootOfUnity) -> MonomialOperator {
        assert_eq!(r.order(), self.order);
        let phases = self
            .phases
            .iter()
            .map(|&k| (k + r.exponent()) % self.order)
            .collect();
        MonomialOperator {
            order: self.order,
            shift: self.shift,
            phases,
        }
    }

    /// Conjugate transpose: `[A* f](y) = ζ^{−k(y−s)} f(y − s)`.
    pub fn adjoint(&self) -> MonomialOperator {
        let n = self.dim();
        let phases = (0..n)
            .map(|y| (-self.phases[(y + n - self.shift) % n]).rem_euclid(self.order))
            .collect();
        MonomialOperator {
            order: self.order,
            shift: (n - self.shift) % n,
            phases,
        }
    }

    /// `Some(c)` when the operator is `c·I`.
    pub fn as_scalar(&self) -> Option<RootOfUnity> {
        if self.shift != 0 || self.phases.iter().any(|&k| k != self.phases[0]) {
            return None;
        }
        Some(RootOfUnity::new(self.order, self.phases[0]))
    }

    pub fn to_dense(&self) -> DenseOperator {
        monomial_to_dense(self)
    }

    pub fn to_json(&self) -> MonomialOperatorJson {
        MonomialOperatorJson {
            n: self.dim(),
            shift: self.shift,
            phase_exponents: self.phases.clone(),
            order: self.order,
        }
    }

    pub fn from_json(j: &MonomialOperatorJson) -> Result<Self> {
        if j.phase_exponents.len() != j.n {
            return Err(Error::Parse("phase_exponents length differs from n".into()));
        }
        MonomialOperator::from_parts(j.order, j.shift as i64, j.phase_exponents.clone())
    }
}

/// Schema: `{"n": N, "shift": s, "phase_exponents": [k_0, ...], "order": 2N}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOperatorJson {
    pub n: usize,
    pub shift: usize,
    pub phase_exponents: Vec<i64>,
    pub order: i64,
}

/// `π(ξ)` as an exact monomial operator.
pub fn pi_monomial(h: PlanckConstant, xi: LatticeVector) -> MonomialOperator {
    let dim = h.dim();
    let order = h.phase_order();
    let big_n = h.denominator();
    let m = xi.m.rem_euclid(order);
    let n = xi.n.rem_euclid(order);
    let constant = phase_alpha(h, m, -n);
    // ψ(−n·x) for x in 0..N; ψ is N-periodic so n can be reduced mod N first
    let step = phase_psi(h, -(n % big_n));
    let phases = (0..dim as i64)
        .map(|x| (constant * step.pow(x)).exponent())
        .collect();
    MonomialOperator {
        order,
        shift: m.rem_euclid(big_n) as usize,
        phases,
    }
}

/// Exact product `a·b`.
pub fn monomial_compose(a: &MonomialOperator, b: &MonomialOperator) -> Result<MonomialOperator> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    if a.order != b.order {
        return Err(Error::Inconsistency(format!(
            "phase orders {} and {} differ",
            a.order, b.order
        )));
    }
    let n = a.dim();
    // [ABf](x) = ζ^{kA(x)} [Bf](x+sA) = ζ^{kA(x) + kB(x+sA)} f(x+sA+sB)
    let phases = (0..n)
        .map(|x| (a.phases[x] + b.phases[(x + a.shift) % n]) % a.order)
        .collect();
    Ok(MonomialOperator {
        order: a.order,
        shift: (a.shift + b.shift) % n,
        phases,
    })
}

pub fn monomial_to_dense(a: &MonomialOperator) -> DenseOperator {
    let n = a.dim();
    let mut out = DenseOperator::zeros(n);
    for x in 0..n {
        out.set(x, (x + a.shift) % n, a.phase(x).to_complex());
    }
    out
}

/// `π(f) = Σ a_ξ π(ξ)` over the finite support of `f`.
pub fn quantize(h: PlanckConstant, f: &AlgebraElement) -> DenseOperator {
    let n = h.dim();
    let mut out = DenseOperator::zeros(n);
    for (xi, coeff) in f.terms() {
        let mono = pi_monomial(h, xi);
        for x in 0..n {
            let col = (x + mono.shift) % n;
            out.set(x, col, out.get(x, col) + coeff * mono.phase(x).to_complex());
        }
    }
    out
}

/// Exact trace as a sum of roots of unity; identically zero when the shift is nonzero.
pub fn trace_monomial(a: &MonomialOperator) -> CyclotomicSum {
    let mut sum = CyclotomicSum::zero(a.order);
    if a.shift == 0 {
        for x in 0..a.dim() {
            sum.add_root(a.phase(x), 1);
        }
    }
    sum
}

/// `Some(c)` with `c = tr(A)/N` if `‖A − c·I‖ < tol`.
pub fn scalar_part(a: &DenseOperator, tol: f64) -> Option<Complex64> {
    let n = a.dim();
    if n == 0 {
        return None;
    }
    let c = a.trace() / n as f64;
    let residual = a - &DenseOperator::identity(n).scale(c);
    (residual.operator_norm() < tol).then_some(c)
}

/// Relative singular-value cutoff used for the numerical rank in [`commutant_dimension`].
pub const RANK_TOL: f64 = 1e-9;

/// Dimension of `{X : Xπ(e₁) = π(e₁)X, Xπ(e₂) = π(e₂)X}`, from the null space of
/// the stacked `2N² × N²` linear system.
pub fn commutant_dimension(h: PlanckConstant) -> usize {
    let n = h.dim();
    let gens = [
        pi_monomial(h, LatticeVector::E1),
        pi_monomial(h, LatticeVector::E2),
    ];
    let unknowns = n * n;
    let mut system = DMatrix::<Complex64>::zeros(2 * unknowns, unknowns);
    for (g, a) in gens.iter().enumerate() {
        let base = g * unknowns;
        // A has entry a_k at (k, σ(k)) with σ(k) = k + shift
        let sigma = |k: usize| (k + a.shift) % n;
        for i in 0..n {
            for k in 0..n {
                // (XA)_{i,σ(k)} += X_{ik} a_k
                system[(base + i * n + sigma(k), i * n + k)] += a.phase(k).to_complex();
                // (AX)_{i,k} = a_i X_{σ(i),k}
                system[(base + i * n + k, sigma(i) * n + k)] -= a.phase(i).to_complex();
            }
        }
    }
    let svd = system.svd(false, false);
    let top = svd.singular_values.max();
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > RANK_TOL * top.max(1.0))
        .count();
    unknowns - rank
}

/// Spectral norm; see [`DenseOperator::operator_norm`].
pub fn operator_norm(a: &DenseOperator) -> f64 {
    a.operator_norm()
}

/// Exact Hilbert–Schmidt Gram matrix `tr(π(ξ)π(η)*)` over `ξ, η ∈ [0,N)²`,
/// indexed by `m·N + n`.
pub fn hilbert_schmidt_gram(h: PlanckConstant) -> Vec<Vec<CyclotomicSum>> {
    let n = h.denominator();
    let basis: Vec<MonomialOperator> = (0..n)
        .flat_map(|m| (0..n).map(move |k| LatticeVector::new(m, k)))
        .map(|xi| pi_monomial(h, xi))
        .collect();
    basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| {
                    trace_monomial(&monomial_compose(a, &b.adjoint()).expect("same dimension"))
                })
                .collect()
        })
        .collect()
}
