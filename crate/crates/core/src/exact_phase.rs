//! Exact arithmetic for the phases that appear in the canonical representation.
//!
//! Every phase produced by the quantization at `ℏ = M/N` is a `2N`-th root of
//! unity, so it is stored as an exponent modulo `2N`. Sums of such phases (traces
//! of monomial operators) are kept as integer combinations of powers of
//! `ζ = e^{2πi/2N}`; zero-testing reduces modulo the cyclotomic polynomial, so no
//! floating point ever enters an identity check on monomials.

use std::fmt;
use std::ops::{Mul, MulAssign};
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest accepted denominator. Exponent products are done in `i128` after
/// reducing every factor modulo `2N`, which stays exact far past this bound.
pub const MAX_DENOMINATOR: i64 = 1 << 31;

/// A rational Planck constant `ℏ = M/N` in lowest terms with `N ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PlanckConstant {
    m: i64,
    n: i64,
}

impl PlanckConstant {
    /// Reduces `m/n`, moving the sign into the numerator.
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = gcd(m.unsigned_abs(), n.unsigned_abs()) as i64;
        let (mut m, mut n) = (m / g, n / g);
        if n < 0 {
            m = m.checked_neg().ok_or(Error::Overflow("normalizing sign"))?;
            n = -n;
        }
        if n > MAX_DENOMINATOR {
            return Err(Error::DenominatorTooLarge(n));
        }
        Ok(PlanckConstant { m, n })
    }

    pub fn numerator(&self) -> i64 {
        self.m
    }

    /// Also the dimension of the canonical representation.
    pub fn denominator(&self) -> i64 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    /// The order `2N` of the cyclic group holding every phase.
    pub fn phase_order(&self) -> i64 {
        2 * self.n
    }

    pub fn value(&self) -> f64 {
        self.m as f64 / self.n as f64
    }

    /// Parity of `M`: the sign exponent of the quadratic phase in `ρ(T)`.
    pub fn epsilon(&self) -> i64 {
        self.m.rem_euclid(2)
    }

    /// Parity of `MN`, the exponent in the twisted-character cocycle.
    pub fn mn_parity(&self) -> i64 {
        (self.m.rem_euclid(2) * self.n.rem_euclid(2)) % 2
    }

    /// `ζ_{2N}^{M·k} = e^{πiℏk}`.
    pub fn half_phase(&self, k: i64) -> RootOfUnity {
        let order = self.phase_order();
        RootOfUnity::new(order, mul_mod(&[self.m, k], order))
    }
}

impl fmt::Display for PlanckConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.m, self.n)
    }
}

impl FromStr for PlanckConstant {
    type Err = Error;

    /// Accepts `M/N` or a bare integer `M`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a fraction M/N, got {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        let m: i64 = num.parse().map_err(|_| bad())?;
        let n: i64 = den.parse().map_err(|_| bad())?;
        PlanckConstant::new(m, n)
    }
}

/// Convenience constructor matching the usual `make_planck(M, N)` call shape.
pub fn make_planck(m: i64, n: i64) -> Result<PlanckConstant> {
    PlanckConstant::new(m, n)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Product of `factors` modulo `order`, reduced into `[0, order)`.
pub(crate) fn mul_mod(factors: &[i64], order: i64) -> i64 {
    let order = order as i128;
    factors.iter().fold(1i128, |acc, &f| {
        (acc * (f as i128).rem_euclid(order)) % order
    }) as i64
}

/// `ζ_order^exponent` with `ζ_k = e^{2πi/k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    order: i64,
    exponent: i64,
}

impl RootOfUnity {
    pub fn new(order: i64, exponent: i64) -> Self {
        assert!(order > 0, "root of unity order must be positive");
        RootOfUnity {
            order,
            exponent: exponent.rem_euclid(order),
        }
    }

    pub fn one(order: i64) -> Self {
        RootOfUnity::new(order, 0)
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0
    }

    pub fn inv(&self) -> Self {
        RootOfUnity::new(self.order, -self.exponent)
    }

    pub fn pow(&self, k: i64) -> Self {
        RootOfUnity::new(self.order, mul_mod(&[self.exponent, k], self.order))
    }

    pub fn to_complex(&self) -> Complex64 {
        root_to_complex(*self)
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;

    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        assert_eq!(
            self.order, rhs.order,
            "multiplying roots of different orders"
        );
        RootOfUnity::new(self.order, (self.exponent + rhs.exponent) % self.order)
    }
}

impl MulAssign for RootOfUnity {
    fn mul_assign(&mut self, rhs: RootOfUnity) {
        *self = *self * rhs;
    }
}

/// Evaluates `e^{2πi·exponent/order}`. Quarter turns are returned exactly.
pub fn root_to_complex(r: RootOfUnity) -> Complex64 {
    let (k, n) = (r.exponent, r.order);
    if (4 * k as i128) % n as i128 == 0 {
        return match (4 * k as i128) / n as i128 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    // symmetric reduction keeps the angle in (-π, π]
    let k = if 2 * k > n { k - n } else { k };
    let theta = std::f64::consts::TAU * (k as f64) / (n as f64);
    Complex64::new(theta.cos(), theta.sin())
}

/// `α(m,n) = (−1)^{M(m+n)} e^{πiℏmn}` as `ζ_{2N}^{NM(m+n) + Mmn}`.
pub fn phase_alpha(h: PlanckConstant, m: i64, n: i64) -> RootOfUnity {
    let order = h.phase_order();
    let sign = mul_mod(
        &[h.n, h.m, m.rem_euclid(order) + n.rem_euclid(order)],
        order,
    );
    let quad = mul_mod(&[h.m, m, n], order);
    RootOfUnity::new(order, sign + quad)
}

/// The additive character `ψ(t) = e^{2πiℏt} = ζ_{2N}^{2Mt}`; depends only on `t mod N`.
pub fn phase_psi(h: PlanckConstant, t: i64) -> RootOfUnity {
    let order = h.phase_order();
    RootOfUnity::new(order, mul_mod(&[2, h.m, t], order))
}

/// An integer combination `Σ_j c_j ζ^j` of powers of a fixed root `ζ = ζ_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicSum {
    order: i64,
    counts: Vec<i64>,
}

impl CyclotomicSum {
    pub fn zero(order: i64) -> Self {
        assert!(order > 0);
        CyclotomicSum {
            order,
            counts: vec![0; order as usize],
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn add_root(&mut self, r: RootOfUnity, times: i64) {
        assert_eq!(r.order, self.order);
        self.counts[r.exponent as usize] += times;
    }

    /// Coefficient of `ζ^j`.
    pub fn count(&self, j: usize) -> i64 {
        self.counts[j]
    }

    pub fn to_complex(&self) -> Complex64 {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| root_to_complex(RootOfUnity::new(self.order, j as i64)) * c as f64)
            .sum()
    }

    /// Exact test: reduces `Σ c_j x^j` modulo the cyclotomic polynomial `Φ_order`.
    pub fn is_zero(&self) -> bool {
        if self.counts.iter().all(|&c| c == 0) {
            return true;
        }
        let phi = cyclotomic_polynomial(self.order as usize);
        let deg = phi.len() - 1;
        let mut p: Vec<i128> = self.counts.iter().map(|&c| c as i128).collect();
        for i in (deg..p.len()).rev() {
            let c = p[i];
            if c != 0 {
                for (k, &a) in phi.iter().enumerate() {
                    p[i - deg + k] -= c * a;
                }
            }
        }
        p.iter().all(|&c| c == 0)
    }

    /// Exact equality of the represented complex numbers.
    pub fn equals(&self, other: &CyclotomicSum) -> bool {
        assert_eq!(self.order, other.order);
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(a, b)| a - b)
            .collect();
        CyclotomicSum {
            order: self.order,
            counts,
        }
        .is_zero()
    }
}

/// Integer coefficients (lowest degree first) of `Φ_n(x) = Π_{d|n} (x^d − 1)^{μ(n/d)}`.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i128> {
    assert!(n > 0);
    let divisors: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut poly = vec![1i128];
    // multiply first so every division below is exact
    for &d in &divisors {
        if mobius(n / d) == 1 {
            let mut next = vec![0i128; poly.len() + d];
            for (i, &c) in poly.iter().enumerate() {
                next[i + d] += c;
                next[i] -= c;
            }
            poly = next;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            // p = q·(x^d − 1)  ⇒  q[i] = q[i−d] − p[i]
            let len = poly.len() - d;
            let mut q = vec![0i128; len];
            for i in 0..len {
                q[i] = if i >= d { q[i - d] } else { 0 } - poly[i];
            }
            poly = q;
        }
    }
    poly
}

fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}
