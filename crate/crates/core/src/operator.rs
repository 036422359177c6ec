//! Dense operators on `L²(ℤ/Nℤ)`.
//!
//! The Hilbert space carries the counting-measure inner product
//! `⟨f, g⟩ = Σ_x f(x)·conj(g(x))`, under which the normalized finite Fourier
//! transform is unitary and adjoints are conjugate transposes.

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::{complex_pair, Float};

/// Relative stopping tolerance of the power iteration in [`DenseOperator::operator_norm`].
pub const POWER_METHOD_TOL: f64 = 1e-12;
const POWER_METHOD_MAX_ITER: usize = 20_000;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    m: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn from_matrix(m: DMatrix<Complex64>) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "operators are square");
        DenseOperator { m }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        DenseOperator {
            m: DMatrix::from_fn(n, n, f),
        }
    }

    pub fn identity(n: usize) -> Self {
        DenseOperator {
            m: DMatrix::identity(n, n),
        }
    }

    pub fn zeros(n: usize) -> Self {
        DenseOperator {
            m: DMatrix::zeros(n, n),
        }
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let n = entries.len();
        DenseOperator::from_fn(n, |i, j| {
            if i == j {
                entries[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.m[(i, j)] = z;
    }

    pub fn scale(&self, k: Complex64) -> DenseOperator {
        DenseOperator { m: &self.m * k }
    }

    pub fn adjoint(&self) -> DenseOperator {
        DenseOperator {
            m: self.m.adjoint(),
        }
    }

    pub fn try_mul(&self, o: &DenseOperator) -> Result<DenseOperator> {
        self.check_dim(o)?;
        Ok(DenseOperator { m: &self.m * &o.m })
    }

    fn check_dim(&self, o: &DenseOperator) -> Result<()> {
        if self.dim() != o.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: o.dim(),
            });
        }
        Ok(())
    }

    pub fn inverse(&self) -> Result<DenseOperator> {
        self.m
            .clone()
            .try_inverse()
            .map(|m| DenseOperator { m })
            .ok_or_else(|| Error::Inconsistency("singular operator".into()))
    }

    /// `self^k` for `k ≥ 0` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> DenseOperator {
        let mut base = self.clone();
        let mut acc = DenseOperator::identity(self.dim());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Spectral norm by power iteration on `A*A` from a fixed start vector.
    pub fn operator_norm(&self) -> f64 {
        operator_norm(self)
    }

    /// `‖U*U − I‖`.
    pub fn unitarity_defect(&self) -> f64 {
        (&self.adjoint() * self - DenseOperator::identity(self.dim())).operator_norm()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        (self - &self.adjoint()).operator_norm()
    }

    /// Multiplies by the unit scalar that makes the first nonzero entry, in
    /// row-major order, positive real.
    pub fn phase_normalized(&self) -> DenseOperator {
        let n = self.dim();
        let max = self.max_abs();
        for i in 0..n {
            for j in 0..n {
                let z = self.m[(i, j)];
                if z.norm() > 1e-9 * max {
                    return self.scale(z.conj() / z.norm());
                }
            }
        }
        self.clone()
    }

    pub fn to_json(&self) -> DenseOperatorJsonOut {
        let n = self.dim();
        DenseOperatorJsonOut {
            n,
            rows: (0..n)
                .map(|i| (0..n).map(|j| complex_pair(self.m[(i, j)])).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &DenseOperatorJson) -> Result<Self> {
        if j.rows.len() != j.n || j.rows.iter().any(|r| r.len() != j.n) {
            return Err(Error::Parse(format!(
                "operator rows do not form a {0}x{0} matrix",
                j.n
            )));
        }
        Ok(DenseOperator::from_fn(j.n, |i, k| {
            let [re, im] = j.rows[i][k];
            Complex64::new(re, im)
        }))
    }
}

/// Read schema: `{"n": N, "rows": [[[re,im],...], ...]}`.
#[derive(Debug, Clone, Deserialize)]
pub struct DenseOperatorJson {
    pub n: usize,
    pub rows: Vec<Vec<[f64; 2]>>,
}

/// Write side of the same schema, with fixed-width floats.
#[derive(Debug, Clone, Serialize)]
pub struct DenseOperatorJsonOut {
    pub n: usize,
    pub rows: Vec<Vec<[Float; 2]>>,
}

impl<'a> Mul<&'a DenseOperator> for &'a DenseOperator {
    type Output = DenseOperator;

    /// Panics on dimension mismatch; see [`DenseOperator::try_mul`].
    fn mul(self, o: &DenseOperator) -> DenseOperator {
        self.try_mul(o).expect("operator dimensions differ")
    }
}

impl<'a> Add<&'a DenseOperator> for &'a DenseOperator {
    type Output = DenseOperator;
    fn add(self, o: &DenseOperator) -> DenseOperator {
        self.check_dim(o).expect("operator dimensions differ");
        DenseOperator { m: &self.m + &o.m }
    }
}

impl<'a> Sub<&'a DenseOperator> for &'a DenseOperator {
    type Output = DenseOperator;
    fn sub(self, o: &DenseOperator) -> DenseOperator {
        self.check_dim(o).expect("operator dimensions differ");
        DenseOperator { m: &self.m - &o.m }
    }
}

impl Sub for DenseOperator {
    type Output = DenseOperator;
    fn sub(self, o: DenseOperator) -> DenseOperator {
        &self - &o
    }
}

impl Add for DenseOperator {
    type Output = DenseOperator;
    fn add(self, o: DenseOperator) -> DenseOperator {
        &self + &o
    }
}

fn start_vector(n: usize) -> Vec<Complex64> {
    // fixed, with no special alignment to the Fourier or position bases
    let v: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = k as f64 + 1.0;
            Complex64::new(1.0 + 0.5 * (1.3 * t).sin(), 0.25 * (0.7 * t).cos())
        })
        .collect();
    normalize(v).0
}

fn normalize(v: Vec<Complex64>) -> (Vec<Complex64>, f64) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return (v, 0.0);
    }
    (v.into_iter().map(|z| z / norm).collect(), norm)
}

fn matvec(a: &DMatrix<Complex64>, v: &[Complex64], adjoint: bool) -> Vec<Complex64> {
    let n = a.nrows();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if adjoint {
                        a[(j, i)].conj() * v[j]
                    } else {
                        a[(i, j)] * v[j]
                    }
                })
                .sum()
        })
        .collect()
}

/// Largest singular value via power iteration on `A*A`, stopping when the
/// estimate changes by less than [`POWER_METHOD_TOL`] relative.
pub fn operator_norm(a: &DenseOperator) -> f64 {
    let n = a.dim();
    if n == 0 || a.max_abs() == 0.0 {
        return 0.0;
    }
    let mut v = start_vector(n);
    let mut sigma = 0.0;
    for _ in 0..POWER_METHOD_MAX_ITER {
        let w = matvec(&a.m, &v, false);
        let next = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let (u, unorm) = normalize(matvec(&a.m, &w, true));
        if unorm == 0.0 {
            return next;
        }
        v = u;
        let done = (next - sigma).abs() <= POWER_METHOD_TOL * next;
        sigma = next;
        if done {
            break;
        }
    }
    matvec(&a.m, &v, false)
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
        .max(sigma)
}
