//! The dual lattice `Λ* ≅ ℤ²`, its symplectic form, and `SL₂(ℤ)`.
//!
//! Lattice vectors are columns in the symplectic basis `(e₁, e₂)` with
//! `ω(e₁, e₂) = 1`, and a [`GammaElement`] acts on them from the left.
//! Group elements are written as words in the two generators
//!
//! ```text
//! S = [[0, -1], [1, 0]]      T = [[1, 1], [0, 1]]
//! ```
//!
//! stored run-length encoded, so `T^1000` is one letter.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticeVector {
    pub m: i64,
    pub n: i64,
}

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector { m: 0, n: 0 };
    pub const E1: LatticeVector = LatticeVector { m: 1, n: 0 };
    pub const E2: LatticeVector = LatticeVector { m: 0, n: 1 };

    pub const fn new(m: i64, n: i64) -> Self {
        LatticeVector { m, n }
    }

    pub fn scale(self, k: i64) -> Self {
        LatticeVector::new(self.m * k, self.n * k)
    }

    /// Whether the vector lies in `N·Λ*`.
    pub fn is_multiple_of(self, n: i64) -> bool {
        self.m.rem_euclid(n) == 0 && self.n.rem_euclid(n) == 0
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, o: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.m + o.m, self.n + o.n)
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, o: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.m - o.m, self.n - o.n)
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector::new(-self.m, -self.n)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

impl FromStr for LatticeVector {
    type Err = Error;

    /// Parses `m,n`.
    fn from_str(s: &str) -> Result<Self> {
        let v = parse_ints(s, 2)?;
        Ok(LatticeVector::new(v[0], v[1]))
    }
}

fn parse_ints(s: &str, count: usize) -> Result<Vec<i64>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != count {
        return Err(Error::Parse(format!(
            "expected {count} comma-separated integers, got {s:?}"
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<i64>()
                .map_err(|_| Error::Parse(format!("not an integer: {p:?}")))
        })
        .collect()
}

/// `ω(ξ, η) = m₁n₂ − n₁m₂`.
pub fn symplectic_form(xi: LatticeVector, eta: LatticeVector) -> i64 {
    xi.m * eta.n - xi.n * eta.m
}

/// An element of `SL₂(ℤ)`, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GammaElement {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl GammaElement {
    pub const IDENTITY: GammaElement = GammaElement {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    pub const S: GammaElement = GammaElement {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };
    pub const T: GammaElement = GammaElement {
        a: 1,
        b: 1,
        c: 0,
        d: 1,
    };
    pub const MINUS_IDENTITY: GammaElement = GammaElement {
        a: -1,
        b: 0,
        c: 0,
        d: -1,
    };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(Error::NotUnimodular { det });
        }
        Ok(GammaElement { a, b, c, d })
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn inverse(&self) -> GammaElement {
        GammaElement {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn transpose(&self) -> GammaElement {
        GammaElement {
            a: self.a,
            b: self.c,
            c: self.b,
            d: self.d,
        }
    }

    pub fn checked_mul(&self, o: &GammaElement) -> Result<GammaElement> {
        let ov = || Error::Overflow("multiplying SL2(Z) elements");
        let dot = |x: i64, y: i64, z: i64, w: i64| -> Result<i64> {
            x.checked_mul(y)
                .and_then(|p| z.checked_mul(w).and_then(|q| p.checked_add(q)))
                .ok_or_else(ov)
        };
        Ok(GammaElement {
            a: dot(self.a, o.a, self.b, o.c)?,
            b: dot(self.a, o.b, self.b, o.d)?,
            c: dot(self.c, o.a, self.d, o.c)?,
            d: dot(self.c, o.b, self.d, o.d)?,
        })
    }

    pub fn max_abs_entry(&self) -> u64 {
        self.entries()
            .iter()
            .map(|e| e.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// `T^k`.
    pub fn t_power(k: i64) -> GammaElement {
        GammaElement {
            a: 1,
            b: k,
            c: 0,
            d: 1,
        }
    }

    /// `S^k`, periodic with period 4.
    pub fn s_power(k: i64) -> GammaElement {
        match k.rem_euclid(4) {
            0 => GammaElement::IDENTITY,
            1 => GammaElement::S,
            2 => GammaElement::MINUS_IDENTITY,
            _ => GammaElement::S.inverse(),
        }
    }

    /// Left action on column vectors: `(m,n) ↦ (am+bn, cm+dn)`.
    pub fn apply(&self, xi: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.a * xi.m + self.b * xi.n, self.c * xi.m + self.d * xi.n)
    }

    /// The pullback `ξ ↦ ξ∘B`, i.e. `Bᵀξ`. This is how `B` moves Fourier
    /// modes under `f ↦ f∘B`.
    pub fn pullback(&self, xi: LatticeVector) -> LatticeVector {
        self.transpose().apply(xi)
    }
}

impl Mul for GammaElement {
    type Output = GammaElement;

    /// Panics on overflow; use [`GammaElement::checked_mul`] for untrusted sizes.
    fn mul(self, o: GammaElement) -> GammaElement {
        self.checked_mul(&o).expect("SL2(Z) product overflowed i64")
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for GammaElement {
    type Err = Error;

    /// Parses `a,b,c,d`.
    fn from_str(s: &str) -> Result<Self> {
        let v = parse_ints(s, 4)?;
        GammaElement::new(v[0], v[1], v[2], v[3])
    }
}

/// Free function form of [`GammaElement::apply`].
pub fn apply(b: &GammaElement, xi: LatticeVector) -> LatticeVector {
    b.apply(xi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    S,
    T,
}

impl Generator {
    pub fn matrix(self) -> GammaElement {
        match self {
            Generator::S => GammaElement::S,
            Generator::T => GammaElement::T,
        }
    }
}

/// `generator^exponent`, with a nonzero exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub exponent: i64,
}

impl Letter {
    pub fn matrix(&self) -> GammaElement {
        match self.generator {
            Generator::S => GammaElement::s_power(self.exponent),
            Generator::T => GammaElement::t_power(self.exponent),
        }
    }

    pub fn inverse(&self) -> Letter {
        Letter {
            generator: self.generator,
            exponent: -self.exponent,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.generator {
            Generator::S => "S",
            Generator::T => "T",
        };
        match self.exponent {
            1 => write!(f, "{g}"),
            e => write!(f, "{g}^{e}"),
        }
    }
}

/// A word over `{S, T}` with integer exponents; adjacent letters with the same
/// generator are merged and zero exponents dropped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GeneratorWord {
    letters: Vec<Letter>,
}

impl GeneratorWord {
    pub fn new() -> Self {
        GeneratorWord::default()
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = GeneratorWord::new();
        for l in letters {
            w.push(l.generator, l.exponent);
        }
        w
    }

    pub fn push(&mut self, generator: Generator, exponent: i64) {
        if exponent == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.generator == generator {
                last.exponent += exponent;
                if last.exponent == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push(Letter {
            generator,
            exponent,
        });
    }

    pub fn extend(&mut self, other: &GeneratorWord) {
        for l in &other.letters {
            self.push(l.generator, l.exponent);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Number of run-length letters.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of single-generator tokens `S^{±1}`, `T^{±1}` when fully expanded.
    pub fn token_count(&self) -> u64 {
        self.letters.iter().map(|l| l.exponent.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord::from_letters(self.letters.iter().rev().map(Letter::inverse))
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(Letter::to_string).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// Product of the letters, left to right.
pub fn evaluate_word(w: &GeneratorWord) -> Result<GammaElement> {
    w.letters.iter().try_fold(GammaElement::IDENTITY, |acc, l| {
        acc.checked_mul(&l.matrix())
    })
}

/// Writes `B` as a word in `S` and `T` by running the Euclidean algorithm on
/// its first column. The number of letters is `O(log max|entry|)`.
pub fn decompose(b: &GammaElement) -> Result<GeneratorWord> {
    let [mut a, mut bb, mut c, mut d] = b.entries();
    let det = a as i128 * d as i128 - bb as i128 * c as i128;
    if det != 1 {
        return Err(Error::NotUnimodular { det });
    }
    let mut word = GeneratorWord::new();
    // invariant: B = word · [[a, bb], [c, d]]
    while c != 0 {
        // nearest-integer quotient: |remainder| ≤ |c|/2, so entries at least halve
        let mut q = a.div_euclid(c);
        if 2 * (a - q * c) > c.abs() {
            q += c.signum();
        }
        // T^{-q}: subtract q times the second row from the first
        a -= q * c;
        bb -= q * d;
        word.push(Generator::T, q);
        // S^{-1} = [[0,1],[-1,0]]: rows (c, d), (-a, -bb)
        (a, bb, c, d) = (c, d, -a, -bb);
        word.push(Generator::S, 1);
    }
    // upper triangular with a = d = ±1
    if a == 1 {
        word.push(Generator::T, bb);
    } else {
        // [[-1, bb], [0, -1]] = S²·T^{-bb}
        word.push(Generator::S, 2);
        word.push(Generator::T, -bb);
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64, c: i64, d: i64) -> GammaElement {
        GammaElement::new(a, b, c, d).unwrap()
    }

    #[test]
    fn form_examples() {
        assert_eq!(symplectic_form(LatticeVector::E1, LatticeVector::E2), 1);
        let xi = LatticeVector::new(4, -9);
        assert_eq!(symplectic_form(xi, xi), 0);
        assert_eq!(
            symplectic_form(LatticeVector::new(2, 3), LatticeVector::new(1, 1)),
            -1
        );
    }

    #[test]
    fn apply_examples() {
        let v = LatticeVector::new(5, 7);
        assert_eq!(GammaElement::IDENTITY.apply(v), v);
        assert_eq!(GammaElement::S.apply(LatticeVector::E1), LatticeVector::E2);
        assert_eq!(
            GammaElement::T.apply(LatticeVector::E2),
            LatticeVector::new(1, 1)
        );
        assert_eq!(
            GammaElement::T.pullback(LatticeVector::E1),
            LatticeVector::new(1, 1)
        );
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(matches!(
            GammaElement::new(2, 0, 0, 1),
            Err(Error::NotUnimodular { det: 2 })
        ));
        assert!("1,2,3".parse::<GammaElement>().is_err());
        assert_eq!("1,1,0,1".parse::<GammaElement>().unwrap(), GammaElement::T);
    }

    #[test]
    fn decompose_examples() {
        let t = decompose(&GammaElement::T).unwrap();
        assert_eq!(
            t.letters(),
            &[Letter {
                generator: Generator::T,
                exponent: 1
            }]
        );
        let s = decompose(&GammaElement::S).unwrap();
        assert_eq!(
            s.letters(),
            &[Letter {
                generator: Generator::S,
                exponent: 1
            }]
        );

        let lower = g(1, 0, 1, 1);
        let w = decompose(&lower).unwrap();
        assert_eq!(evaluate_word(&w).unwrap(), lower);
        let s_tinv_sinv = GammaElement::S * GammaElement::T.inverse() * GammaElement::S.inverse();
        assert_eq!(s_tinv_sinv, lower);
    }

    #[test]
    fn evaluate_examples() {
        let mut w = GeneratorWord::new();
        for _ in 0..4 {
            w.letters.push(Letter {
                generator: Generator::S,
                exponent: 1,
            });
        }
        assert_eq!(evaluate_word(&w).unwrap(), GammaElement::IDENTITY);
        assert_eq!(
            evaluate_word(&GeneratorWord::new()).unwrap(),
            GammaElement::IDENTITY
        );
        let s2 = GeneratorWord::from_letters([Letter {
            generator: Generator::S,
            exponent: 2,
        }]);
        assert_eq!(evaluate_word(&s2).unwrap(), GammaElement::MINUS_IDENTITY);
    }

    #[test]
    fn presentation_relations_hold_in_integers() {
        let st = GammaElement::S * GammaElement::T;
        assert_eq!(st * st * st, GammaElement::MINUS_IDENTITY);
        assert_eq!(
            GammaElement::S * GammaElement::S,
            GammaElement::MINUS_IDENTITY
        );
    }

    #[test]
    fn decomposition_is_short_for_large_entries() {
        // ratios of consecutive Fibonacci numbers are the worst case for Euclid
        let mut fib = vec![0i64, 1];
        while fib.len() < 80 {
            let k = fib.len();
            fib.push(fib[k - 1] + fib[k - 2]);
        }
        // det [[F(k+1), F(k)], [F(k), F(k-1)]] = (-1)^k
        let k = 78;
        let b = g(fib[k + 1], fib[k], fib[k], fib[k - 1]);
        let w = decompose(&b).unwrap();
        assert_eq!(evaluate_word(&w).unwrap(), b);
        assert!(w.len() <= 2 * k + 4, "{} letters", w.len());
        let big = g(1, 1_000_000, 0, 1);
        assert_eq!(decompose(&big).unwrap().len(), 1);
    }

    #[test]
    fn overflow_is_reported() {
        let w = GeneratorWord::from_letters([
            Letter {
                generator: Generator::T,
                exponent: i64::MAX / 2,
            },
            Letter {
                generator: Generator::S,
                exponent: 1,
            },
            Letter {
                generator: Generator::T,
                exponent: i64::MAX / 2,
            },
            Letter {
                generator: Generator::S,
                exponent: 1,
            },
            Letter {
                generator: Generator::T,
                exponent: i64::MAX / 2,
            },
        ]);
        assert!(matches!(evaluate_word(&w), Err(Error::Overflow(_))));
    }
}
