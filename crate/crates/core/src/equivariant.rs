//! The projective representation `ρ` of `SL₂(ℤ)` on `L²(ℤ/Nℤ)`, the Egorov
//! identity, and the twelve linear liftings.
//!
//! On generators,
//!
//! ```text
//! [ρ(T) f](x) = (−1)^{εx} e^{−πiℏx²} f(x),        ε = M mod 2
//! [ρ(S) f](x) = N^{−1/2} Σ_y e^{2πiℏxy} f(y)
//! ```
//!
//! and these intertwine `π` as `ρ(B)⁻¹ π(ξ) ρ(B) = π(Bᵀξ)`, which on functions
//! reads `ρ(B)⁻¹ π(f) ρ(B) = π(f∘B)`. The transpose is forced: conjugation
//! reverses products, so the lattice side must be an anti-homomorphism too.
//!
//! Arbitrary elements are evaluated along [`decompose`]. For the projective `ρ`
//! different words may differ by a unit scalar; a [`Lifting`] fixes the scalars
//! so the result is word-independent.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_phase::{PlanckConstant, RootOfUnity};
use crate::json::{complex_pair, Float};
use crate::lattice::{decompose, GammaElement, Generator, GeneratorWord, LatticeVector, Letter};
use crate::operator::DenseOperator;
use crate::qtorus::{compose, AlgebraElement};
use crate::weyl::{pi_monomial, quantize, scalar_part};

/// Tolerance for the Schur scalar extractions and relation residuals.
pub const SCHUR_TOL: f64 = 1e-11;

/// Ways to attach a lattice vector to `B` on the right-hand side of Egorov.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `Bξ`
    Forward,
    /// `B⁻¹ξ`
    Inverse,
    /// `Bᵀξ`, i.e. `ξ∘B`
    Pullback,
    /// `B⁻ᵀξ`
    Contragredient,
}

impl Orientation {
    pub const ALL: [Orientation; 4] = [
        Orientation::Forward,
        Orientation::Inverse,
        Orientation::Pullback,
        Orientation::Contragredient,
    ];

    pub fn target(self, b: &GammaElement, xi: LatticeVector) -> LatticeVector {
        match self {
            Orientation::Forward => b.apply(xi),
            Orientation::Inverse => b.inverse().apply(xi),
            Orientation::Pullback => b.pullback(xi),
            Orientation::Contragredient => b.inverse().pullback(xi),
        }
    }
}

/// The orientation under which the generator formulas satisfy Egorov exactly.
pub const EGOROV_ORIENTATION: Orientation = Orientation::Pullback;

/// `ρ(T)` and `ρ(S)` for one Planck constant, with the exact phase data needed
/// to raise them to integer powers.
#[derive(Debug, Clone)]
pub struct ProjectiveRep {
    h: PlanckConstant,
    t_exponents: Vec<i64>,
    /// `F⁰, F¹, F², F³`; `F² = (x ↦ −x)` and `F³ = F̄` exactly
    fourier_powers: [DenseOperator; 4],
}

impl ProjectiveRep {
    pub fn new(h: PlanckConstant) -> Self {
        let n = h.dim();
        let big_n = h.denominator();
        let m = h.numerator();
        let order = h.phase_order();
        let t_exponents = (0..big_n)
            .map(|x| {
                let e = (big_n as i128 * m as i128 * x as i128 - m as i128 * x as i128 * x as i128)
                    .rem_euclid(order as i128);
                e as i64
            })
            .collect();
        let scale = 1.0 / (n as f64).sqrt();
        let f = DenseOperator::from_fn(n, |x, y| {
            let e = (2 * (m as i128) * (x as i128) * (y as i128)).rem_euclid(order as i128) as i64;
            RootOfUnity::new(order, e).to_complex() * scale
        });
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let parity = DenseOperator::from_fn(n, |x, y| if (x + y) % n == 0 { one } else { zero });
        let f3 = DenseOperator::from_fn(n, |x, y| f.get(x, y).conj());
        ProjectiveRep {
            h,
            t_exponents,
            fourier_powers: [DenseOperator::identity(n), f, parity, f3],
        }
    }

    pub fn planck(&self) -> PlanckConstant {
        self.h
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn u_t(&self) -> DenseOperator {
        self.t_power(1)
    }

    pub fn u_s(&self) -> DenseOperator {
        self.fourier_powers[1].clone()
    }

    /// Exact exponents `k(x)` with `ρ(T) = diag(ζ_{2N}^{k(x)})`.
    pub fn t_exponents(&self) -> &[i64] {
        &self.t_exponents
    }

    pub fn t_power(&self, k: i64) -> DenseOperator {
        let order = self.h.phase_order();
        let diag: Vec<Complex64> = self
            .t_exponents
            .iter()
            .map(|&e| {
                RootOfUnity::new(
                    order,
                    ((e as i128 * k as i128).rem_euclid(order as i128)) as i64,
                )
                .to_complex()
            })
            .collect();
        DenseOperator::diagonal(&diag)
    }

    pub fn s_power(&self, k: i64) -> DenseOperator {
        self.fourier_powers[k.rem_euclid(4) as usize].clone()
    }

    pub fn letter(&self, l: &Letter) -> DenseOperator {
        match l.generator {
            Generator::S => self.s_power(l.exponent),
            Generator::T => self.t_power(l.exponent),
        }
    }

    pub fn word(&self, w: &GeneratorWord) -> DenseOperator {
        w.letters()
            .iter()
            .fold(DenseOperator::identity(self.dim()), |acc, l| {
                &acc * &self.letter(l)
            })
    }

    /// `ρ(B)` up to a unit scalar, along the Euclidean factorization.
    pub fn element(&self, b: &GammaElement) -> Result<DenseOperator> {
        Ok(self.word(&decompose(b)?))
    }
}

/// Diagonal `ρ(T)`: entry `(−1)^{εx} e^{−πiMx²/N}`.
pub fn rho_t(h: PlanckConstant) -> DenseOperator {
    ProjectiveRep::new(h).u_t()
}

/// Finite Fourier transform `e^{2πiMxy/N}/√N`.
pub fn rho_s(h: PlanckConstant) -> DenseOperator {
    ProjectiveRep::new(h).u_s()
}

pub fn rho_projective(h: PlanckConstant, b: &GammaElement) -> Result<DenseOperator> {
    ProjectiveRep::new(h).element(b)
}

/// `‖ρ(B)⁻¹ π(ξ) ρ(B) − π(target)‖` for a chosen orientation.
pub fn egorov_defect_oriented(
    rep: &ProjectiveRep,
    b: &GammaElement,
    xi: LatticeVector,
    orientation: Orientation,
) -> Result<f64> {
    let rho = rep.element(b)?;
    let h = rep.planck();
    let lhs = &(&rho.inverse()? * &pi_monomial(h, xi).to_dense()) * &rho;
    let rhs = pi_monomial(h, orientation.target(b, xi)).to_dense();
    Ok((lhs - rhs).operator_norm())
}

/// `‖ρ(B)⁻¹ π(ξ) ρ(B) − π(Bᵀξ)‖`. The scalar ambiguity of `ρ` cancels.
pub fn egorov_defect(h: PlanckConstant, b: &GammaElement, xi: LatticeVector) -> Result<f64> {
    egorov_defect_oriented(&ProjectiveRep::new(h), b, xi, EGOROV_ORIENTATION)
}

/// `‖ρ(B)⁻¹ π(f) ρ(B) − π(f∘B)‖`.
pub fn egorov_function_defect(
    h: PlanckConstant,
    b: &GammaElement,
    f: &AlgebraElement,
) -> Result<f64> {
    let rho = rho_projective(h, b)?;
    let lhs = &(&rho.inverse()? * &quantize(h, f)) * &rho;
    Ok((lhs - quantize(h, &compose(f, b))).operator_norm())
}

/// Scalars `(c_Z, c_S, c_B)` making `ρ(S) = c_S·U_S`, `ρ(B) = c_B·U_S·U_T`,
/// `ρ(Z) = c_Z·U_S²` satisfy `Z² = 1`, `S² = B³ = Z` with `B = ST`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lifting {
    pub index: usize,
    pub c_z: Complex64,
    pub c_s: Complex64,
    pub c_b: Complex64,
}

impl Lifting {
    /// `ρ(T) = ρ(S)⁻¹ρ(B) = (c_B/c_S)·U_T`.
    pub fn c_t(&self) -> Complex64 {
        self.c_b / self.c_s
    }

    pub fn to_json(&self) -> LiftingJson {
        LiftingJson {
            index: self.index,
            c_z: complex_pair(self.c_z),
            c_s: complex_pair(self.c_s),
            c_b: complex_pair(self.c_b),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftingJson {
    pub index: usize,
    pub c_z: [Float; 2],
    pub c_s: [Float; 2],
    pub c_b: [Float; 2],
}

fn unit_power(c: Complex64, k: i64) -> Complex64 {
    // unit scalars: keep the modulus at 1 for long exponents
    Complex64::from_polar(1.0, c.arg() * k as f64)
}

fn scalar_or_fail(a: &DenseOperator, what: &str) -> Result<Complex64> {
    scalar_part(a, SCHUR_TOL).ok_or_else(|| Error::Inconsistency(format!("{what} is not scalar")))
}

/// All twelve liftings, ordered by `index = 6·z + 3·s + b` where `z`, `s`, `b`
/// pick the principal root (0) or its successive rotations.
pub fn enumerate_liftings(h: PlanckConstant) -> Result<Vec<Lifting>> {
    let rep = ProjectiveRep::new(h);
    let v_z = rep.s_power(2);
    let v_b = &rep.u_s() * &rep.u_t();
    let lambda = scalar_or_fail(&(&v_z * &v_z), "U_S⁴")?;
    let mu = scalar_or_fail(&(&v_b.pow(3) * &v_z.inverse()?), "(U_S U_T)³ U_S⁻²")?;
    let z0 = (Complex64::new(1.0, 0.0) / lambda).sqrt();
    let third = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
    let mut out = Vec::with_capacity(12);
    for (zi, c_z) in [z0, -z0].into_iter().enumerate() {
        let s0 = c_z.sqrt();
        for (si, c_s) in [s0, -s0].into_iter().enumerate() {
            let b0 = (c_z / mu).powf(1.0 / 3.0);
            for bi in 0..3 {
                let c_b = b0 * third.powi(bi as i32);
                out.push(Lifting {
                    index: 6 * zi + 3 * si + bi,
                    c_z,
                    c_s,
                    c_b,
                });
            }
        }
    }
    Ok(out)
}

pub fn lifting_by_index(h: PlanckConstant, k: usize) -> Result<Lifting> {
    if k >= 12 {
        return Err(Error::LiftingIndex(k));
    }
    Ok(enumerate_liftings(h)?[k])
}

/// A lifted representation, ready to evaluate words.
#[derive(Debug, Clone)]
pub struct LinearRep {
    rep: ProjectiveRep,
    lifting: Lifting,
}

impl LinearRep {
    pub fn new(h: PlanckConstant, lifting: Lifting) -> Self {
        LinearRep {
            rep: ProjectiveRep::new(h),
            lifting,
        }
    }

    pub fn lifting(&self) -> &Lifting {
        &self.lifting
    }

    pub fn letter(&self, l: &Letter) -> DenseOperator {
        let c = match l.generator {
            // c_S⁴ = c_Z² = 1, so S-exponents reduce mod 4 together with F
            Generator::S => unit_power(self.lifting.c_s, l.exponent.rem_euclid(4)),
            Generator::T => unit_power(self.lifting.c_t(), l.exponent),
        };
        self.rep.letter(l).scale(c)
    }

    pub fn word(&self, w: &GeneratorWord) -> DenseOperator {
        w.letters()
            .iter()
            .fold(DenseOperator::identity(self.rep.dim()), |acc, l| {
                &acc * &self.letter(l)
            })
    }

    pub fn element(&self, b: &GammaElement) -> Result<DenseOperator> {
        Ok(self.word(&decompose(b)?))
    }

    pub fn rho_s(&self) -> DenseOperator {
        self.rep.u_s().scale(self.lifting.c_s)
    }

    pub fn rho_b(&self) -> DenseOperator {
        (&self.rep.u_s() * &self.rep.u_t()).scale(self.lifting.c_b)
    }

    pub fn rho_z(&self) -> DenseOperator {
        self.rep.s_power(2).scale(self.lifting.c_z)
    }

    /// `‖ρ(Z)² − I‖, ‖ρ(S)² − ρ(Z)‖, ‖ρ(B)³ − ρ(Z)‖`.
    pub fn relation_residuals(&self) -> [f64; 3] {
        let z = self.rho_z();
        let s = self.rho_s();
        let id = DenseOperator::identity(self.rep.dim());
        [
            (&(&z * &z) - &id).operator_norm(),
            (&(&s * &s) - &z).operator_norm(),
            (&self.rho_b().pow(3) - &z).operator_norm(),
        ]
    }
}

pub fn rho_linear(h: PlanckConstant, lifting: &Lifting, b: &GammaElement) -> Result<DenseOperator> {
    LinearRep::new(h, *lifting).element(b)
}

/// `χ(B)` with `ρ₁(B) = χ(B)·ρ₂(B)`, checked to be a 12th root of unity.
pub fn lifting_character_ratio(
    h: PlanckConstant,
    l1: &Lifting,
    l2: &Lifting,
    b: &GammaElement,
) -> Result<Complex64> {
    let r1 = rho_linear(h, l1, b)?;
    let r2 = rho_linear(h, l2, b)?;
    let chi = scalar_part(&(&r1 * &r2.inverse()?), 1e-9)
        .ok_or_else(|| Error::Inconsistency(format!("ρ₁({b})ρ₂({b})⁻¹ is not scalar")))?;
    if (chi.powi(12) - 1.0).norm() > 1e-9 {
        return Err(Error::Inconsistency(format!(
            "χ({b}) = {chi} is not a 12th root of unity"
        )));
    }
    Ok(chi)
}

/// Words that evaluate to the identity in `SL₂(ℤ)` and in every lifting.
pub fn relators() -> Vec<GeneratorWord> {
    let l = |generator, exponent| Letter {
        generator,
        exponent,
    };
    use Generator::{S, T};
    vec![
        GeneratorWord::from_letters([l(S, 4)]),
        GeneratorWord::from_letters([
            l(S, 1),
            l(T, 1),
            l(S, 1),
            l(T, 1),
            l(S, 1),
            l(T, 1),
            l(S, -2),
        ]),
        GeneratorWord::from_letters([l(S, 2), l(T, 1), l(S, -2), l(T, -1)]),
    ]
}

/// Rewrites `w` into another word for the same element by splicing in
/// `insertions` relators, each randomly inverted and conjugated by a short
/// random word, at random positions.
pub fn rewrite_word(rng: &mut impl Rng, w: &GeneratorWord, insertions: usize) -> GeneratorWord {
    let rels = relators();
    let mut letters: Vec<Letter> = w.letters().to_vec();
    for _ in 0..insertions {
        let mut r = rels[rng.random_range(0..rels.len())].clone();
        if rng.random_bool(0.5) {
            r = r.inverse();
        }
        let conj = crate::random::random_word(rng, 3);
        let mut piece = conj.clone();
        piece.extend(&r);
        piece.extend(&conj.inverse());
        let at = rng.random_range(0..=letters.len());
        letters.splice(at..at, piece.letters().iter().copied());
    }
    GeneratorWord::from_letters(letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::evaluate_word;
    use crate::random::{random_gamma, seeded};

    fn h(m: i64, n: i64) -> PlanckConstant {
        PlanckConstant::new(m, n).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rho_t_examples() {
        let t = rho_t(h(1, 2));
        assert!((t.get(0, 0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((t.get(1, 1) - c(0.0, 1.0)).norm() < 1e-15);
        let t = rho_t(h(1, 3));
        let pi = std::f64::consts::PI;
        let expect = [
            c(1.0, 0.0),
            -Complex64::from_polar(1.0, -pi / 3.0),
            Complex64::from_polar(1.0, -4.0 * pi / 3.0),
        ];
        for (x, e) in expect.iter().enumerate() {
            assert!((t.get(x, x) - e).norm() < 1e-15);
        }
        for hb in [h(3, 8), h(2, 7), h(-1, 5)] {
            assert_eq!(rho_t(hb).get(0, 0), c(1.0, 0.0));
        }
    }

    #[test]
    fn rho_s_examples() {
        assert_eq!(rho_s(h(3, 1)), DenseOperator::identity(1));
        let s = rho_s(h(1, 2));
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let expect =
            DenseOperator::from_fn(2, |i, j| c(if i == 1 && j == 1 { -r } else { r }, 0.0));
        assert!((s - expect).max_abs() < 1e-15);
        for hb in [h(1, 3), h(3, 8), h(5, 12), h(1, 25)] {
            let rep = ProjectiveRep::new(hb);
            assert!(rep.u_s().unitarity_defect() < 1e-13);
            assert!(rep.u_t().unitarity_defect() < 1e-13);
            // exact F², F³ agree with the products
            let f = rep.u_s();
            assert!((&f * &f - rep.s_power(2)).max_abs() < 1e-13);
            assert!((&rep.s_power(2) * &f - rep.s_power(3)).max_abs() < 1e-13);
            assert!((&rep.s_power(3) * &f - rep.s_power(0)).max_abs() < 1e-13);
        }
    }

    #[test]
    fn projective_examples() {
        let hb = h(2, 5);
        let rep = ProjectiveRep::new(hb);
        assert_eq!(
            rep.element(&GammaElement::IDENTITY).unwrap(),
            DenseOperator::identity(5)
        );
        assert_eq!(rep.element(&GammaElement::T).unwrap(), rho_t(hb));
        // two words for the same element differ by a scalar
        let b = GammaElement::new(2, 1, 1, 1).unwrap();
        let a1 = rep.element(&b).unwrap();
        let w2 = rewrite_word(&mut seeded(5), &decompose(&b).unwrap(), 3);
        assert_eq!(evaluate_word(&w2).unwrap(), b);
        let a2 = rep.word(&w2);
        let ratio = &a1 * &a2.inverse().unwrap();
        let k = scalar_part(&ratio, 1e-10).unwrap();
        assert!((k.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn orientation_is_pullback() {
        for hb in [h(1, 3), h(3, 8), h(2, 5)] {
            let rep = ProjectiveRep::new(hb);
            let passing: Vec<Orientation> = Orientation::ALL
                .into_iter()
                .filter(|&o| {
                    [GammaElement::S, GammaElement::T].iter().all(|b| {
                        [
                            LatticeVector::E1,
                            LatticeVector::E2,
                            LatticeVector::new(2, -1),
                        ]
                        .iter()
                        .all(|&xi| egorov_defect_oriented(&rep, b, xi, o).unwrap() < 1e-12)
                    })
                })
                .collect();
            assert_eq!(passing, vec![EGOROV_ORIENTATION]);
        }
    }

    #[test]
    fn egorov_examples() {
        let hb = h(1, 5);
        for m in -2..=2 {
            for n in -2..=2 {
                let xi = LatticeVector::new(m, n);
                assert!(egorov_defect(hb, &GammaElement::IDENTITY, xi).unwrap() < 1e-14);
                assert!(egorov_defect(hb, &GammaElement::T, xi).unwrap() < 1e-12);
                assert!(egorov_defect(hb, &GammaElement::S, xi).unwrap() < 1e-12);
            }
        }
        let mut rng = seeded(11);
        for _ in 0..10 {
            let (b, _) = random_gamma(&mut rng, 12);
            let f = crate::random::random_element(&mut rng, 4, 3);
            assert!(egorov_function_defect(h(3, 8), &b, &f).unwrap() < 1e-10);
        }
    }

    #[test]
    fn twelve_liftings() {
        for hb in [h(1, 2), h(1, 3), h(3, 8), h(2, 5)] {
            let ls = enumerate_liftings(hb).unwrap();
            assert_eq!(ls.len(), 12);
            for (k, l) in ls.iter().enumerate() {
                assert_eq!(l.index, k);
                for s in [l.c_z, l.c_s, l.c_b] {
                    assert!((s.norm() - 1.0).abs() < 1e-12);
                }
                let res = LinearRep::new(hb, *l).relation_residuals();
                assert!(res.iter().all(|&r| r < SCHUR_TOL), "{res:?}");
            }
            for i in 0..12 {
                for j in 0..i {
                    let d = (ls[i].c_s - ls[j].c_s)
                        .norm()
                        .max((ls[i].c_b - ls[j].c_b).norm());
                    assert!(d > 1e-6);
                }
            }
        }
        assert!(matches!(
            lifting_by_index(h(1, 3), 12),
            Err(Error::LiftingIndex(12))
        ));
    }

    #[test]
    fn linear_is_multiplicative() {
        let hb = h(1, 3);
        let mut rng = seeded(2);
        for l in enumerate_liftings(hb).unwrap() {
            let lin = LinearRep::new(hb, l);
            assert_eq!(
                lin.element(&GammaElement::IDENTITY).unwrap(),
                DenseOperator::identity(3)
            );
            let z = lin.element(&GammaElement::MINUS_IDENTITY).unwrap();
            assert!((&z * &z - DenseOperator::identity(3)).operator_norm() < SCHUR_TOL);
            for _ in 0..10 {
                let (b1, _) = random_gamma(&mut rng, 20);
                let (b2, _) = random_gamma(&mut rng, 20);
                let lhs = &lin.element(&b1).unwrap() * &lin.element(&b2).unwrap();
                let rhs = lin.element(&(b1 * b2)).unwrap();
                assert!((lhs - rhs).operator_norm() < 1e-8);
            }
        }
    }

    #[test]
    fn character_ratios() {
        let hb = h(2, 5);
        let ls = enumerate_liftings(hb).unwrap();
        let t = GammaElement::T;
        assert!((lifting_character_ratio(hb, &ls[4], &ls[4], &t).unwrap() - 1.0).norm() < 1e-12);
        let mut values: Vec<Complex64> = Vec::new();
        for l in &ls {
            let chi = lifting_character_ratio(hb, l, &ls[0], &t).unwrap();
            assert!(values.iter().all(|v| (v - chi).norm() > 1e-6));
            values.push(chi);
        }
        let (b1, b2) = (
            GammaElement::new(2, 1, 1, 1).unwrap(),
            GammaElement::new(1, 0, -3, 1).unwrap(),
        );
        let chi = |b: &GammaElement| lifting_character_ratio(hb, &ls[7], &ls[2], b).unwrap();
        assert!((chi(&(b1 * b2)) - chi(&b1) * chi(&b2)).norm() < 1e-9);
    }

    #[test]
    fn relators_are_trivial() {
        for r in relators() {
            assert_eq!(evaluate_word(&r).unwrap(), GammaElement::IDENTITY);
        }
        let hb = h(3, 7);
        let lin = LinearRep::new(hb, enumerate_liftings(hb).unwrap()[5]);
        for r in relators() {
            assert!((lin.word(&r) - DenseOperator::identity(7)).operator_norm() < 1e-11);
        }
    }
}
