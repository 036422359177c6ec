//! The two `ℏ → 0` limits of Weyl quantization, measured in operator norm:
//!
//! ```text
//! product:         ‖π(fg) − π(f)π(g)‖
//! correspondence:  ‖(i/ℏ)[π(f), π(g)] − π({f, g})‖
//! ```
//!
//! For monomials with `ω(ξ, η) = w` both have closed forms,
//! `2|sin(πℏw/2)|` and `|2 sin(πℏw)/ℏ − 2πw|`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_phase::PlanckConstant;
use crate::json::Float;
use crate::qtorus::{pointwise_product, poisson_bracket, AlgebraElement};
use crate::weyl::quantize;

/// Name of the norm recorded in report metadata.
pub const NORM_NAME: &str = "spectral (power iteration on A*A)";

pub fn product_defect(h: PlanckConstant, f: &AlgebraElement, g: &AlgebraElement) -> f64 {
    let lhs = quantize(h, &pointwise_product(f, g));
    let rhs = &quantize(h, f) * &quantize(h, g);
    (lhs - rhs).operator_norm()
}

/// Panics if `ℏ = 0`, which [`PlanckConstant`] cannot represent with `N ≥ 1`
/// unless `M = 0`.
pub fn correspondence_defect(h: PlanckConstant, f: &AlgebraElement, g: &AlgebraElement) -> f64 {
    assert!(h.numerator() != 0, "correspondence defect needs ℏ ≠ 0");
    let (pf, pg) = (quantize(h, f), quantize(h, g));
    let commutator = &(&pf * &pg) - &(&pg * &pf);
    // i/ℏ = i·N/M, from the exact fraction
    let factor = Complex64::new(0.0, h.denominator() as f64 / h.numerator() as f64);
    (commutator.scale(factor) - quantize(h, &poisson_bracket(f, g))).operator_norm()
}

/// Closed form of [`product_defect`] for two monomials with `ω = w`.
pub fn monomial_product_defect(h: PlanckConstant, w: i64) -> f64 {
    2.0 * (std::f64::consts::PI * h.value() * w as f64 / 2.0)
        .sin()
        .abs()
}

/// Closed form of [`correspondence_defect`] for two monomials with `ω = w`.
pub fn monomial_correspondence_defect(h: PlanckConstant, w: i64) -> f64 {
    let pi = std::f64::consts::PI;
    let hb = h.value();
    (2.0 * (pi * hb * w as f64).sin() / hb - 2.0 * pi * w as f64).abs()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanEntry {
    pub h: PlanckConstant,
    pub product_defect: f64,
    pub correspondence_defect: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    /// Sorted by decreasing `ℏ`.
    pub entries: Vec<ScanEntry>,
    pub f_digest: String,
    pub g_digest: String,
    pub norm: &'static str,
}

/// `ℏ = 1/8, 1/16, 1/32, 1/64`.
pub fn default_hbars() -> Vec<PlanckConstant> {
    [8, 16, 32, 64]
        .iter()
        .map(|&n| PlanckConstant::new(1, n).expect("valid"))
        .collect()
}

pub fn scan(
    f: &AlgebraElement,
    g: &AlgebraElement,
    hbars: &[PlanckConstant],
) -> Result<ScanReport> {
    if hbars.is_empty() {
        return Err(Error::Parse("empty list of Planck constants".into()));
    }
    let mut sorted = hbars.to_vec();
    // exact comparison of M/N by cross-multiplication, largest first
    sorted.sort_by(|a, b| {
        let lhs = b.numerator() as i128 * a.denominator() as i128;
        let rhs = a.numerator() as i128 * b.denominator() as i128;
        lhs.cmp(&rhs)
    });
    let entries = sorted
        .into_iter()
        .map(|h| ScanEntry {
            h,
            product_defect: product_defect(h, f, g),
            correspondence_defect: correspondence_defect(h, f, g),
        })
        .collect();
    Ok(ScanReport {
        entries,
        f_digest: f.digest(),
        g_digest: g.digest(),
        norm: NORM_NAME,
    })
}

#[derive(Debug, Serialize)]
struct ScanEntryJson {
    #[serde(rename = "M")]
    m: i64,
    #[serde(rename = "N")]
    n: i64,
    hbar: Float,
    product_defect: Float,
    correspondence_defect: Float,
}

#[derive(Debug, Serialize)]
struct ScanReportJson<'a> {
    entries: Vec<ScanEntryJson>,
    f_digest: &'a str,
    g_digest: &'a str,
    norm: &'a str,
}

impl ScanReport {
    pub fn to_json_string(&self) -> String {
        let j = ScanReportJson {
            entries: self
                .entries
                .iter()
                .map(|e| ScanEntryJson {
                    m: e.h.numerator(),
                    n: e.h.denominator(),
                    hbar: Float(e.h.value()),
                    product_defect: Float(e.product_defect),
                    correspondence_defect: Float(e.correspondence_defect),
                })
                .collect(),
            f_digest: &self.f_digest,
            g_digest: &self.g_digest,
            norm: self.norm,
        };
        crate::json::to_string_pretty(&j)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("M,N,hbar,product_defect,correspondence_defect\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{:.16e},{:.16e},{:.16e}\n",
                e.h.numerator(),
                e.h.denominator(),
                e.h.value(),
                e.product_defect,
                e.correspondence_defect
            ));
        }
        out
    }
}
