//! Prime-field arithmetic.
//!
//! Every computation in the crate happens over a prime field `F_p` with
//! `p` odd and `e | p - 1`, where `e` is the exponent of the grading group.
//! The divisibility condition puts every value a bi-character can take
//! (a root of unity of order dividing `e`) inside the field.

mod poly;

pub use poly::{roots_in_field, Poly, RootReport};

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Largest modulus accepted. Keeps every product of two residues inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("exponent {e} does not divide p - 1 = {}", .p - 1)]
    NoRootsOfUnity { p: u64, e: u64 },
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("modulus {0} exceeds the supported range")]
    TooLarge(u64),
}

/// A field element: a residue in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Scalar(u64);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The prime field `F_p` together with the grading exponent `e` it was chosen for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFieldSpec")]
pub struct FieldSpec {
    p: u64,
    e: u64,
}

#[derive(Deserialize)]
struct RawFieldSpec {
    p: u64,
    e: u64,
}

impl TryFrom<RawFieldSpec> for FieldSpec {
    type Error = ScalarError;

    fn try_from(raw: RawFieldSpec) -> Result<Self, Self::Error> {
        FieldSpec::new(raw.p, raw.e)
    }
}

impl FieldSpec {
    pub fn new(p: u64, e: u64) -> Result<Self, ScalarError> {
        if e == 0 {
            return Err(ScalarError::ZeroExponent);
        }
        if p >= MAX_MODULUS {
            return Err(ScalarError::TooLarge(p));
        }
        if p == 2 {
            return Err(ScalarError::CharacteristicTwo);
        }
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        if !(p - 1).is_multiple_of(e) {
            return Err(ScalarError::NoRootsOfUnity { p, e });
        }
        Ok(FieldSpec { p, e })
    }

    /// Smallest prime `p >= max(3, min_p)` with `e | p - 1`.
    ///
    /// Panics if `e` is zero or the search leaves the supported range.
    pub fn for_group(e: u64, min_p: u64) -> FieldSpec {
        assert!(e >= 1, "grading exponent must be positive");
        let mut p = min_p.max(3);
        // Only p = 1 (mod e) can work; jump straight to that residue class.
        let r = (p - 1) % e;
        if r != 0 {
            p += e - r;
        }
        loop {
            assert!(p < MAX_MODULUS, "no admissible prime below 2^31 for exponent {e}");
            if p != 2 && is_prime(p) {
                return FieldSpec { p, e };
            }
            p += e;
        }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn e(&self) -> u64 {
        self.e
    }

    /// Reduces an arbitrary integer into the field.
    #[inline]
    pub fn elem(&self, v: i64) -> Scalar {
        Scalar(v.rem_euclid(self.p as i64) as u64)
    }

    /// Wraps a residue, rejecting values outside `[0, p)`.
    pub fn checked(&self, v: u64) -> Option<Scalar> {
        (v < self.p).then_some(Scalar(v))
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let s = a.0 + b.0;
        Scalar(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        Scalar(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        Scalar(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        Scalar(a.0 * b.0 % self.p)
    }

    pub fn pow(&self, a: Scalar, mut exp: u64) -> Scalar {
        let mut base = a;
        let mut acc = Scalar::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn minus_one(&self) -> Scalar {
        Scalar(self.p - 1)
    }

    /// A generator of the multiplicative group.
    pub fn primitive_root(&self) -> Scalar {
        let order = self.p - 1;
        let primes = prime_factors(order);
        (2..self.p)
            .map(Scalar)
            .find(|&g| primes.iter().all(|&q| self.pow(g, order / q) != Scalar::ONE))
            .unwrap_or(Scalar::ONE) // p = 3 has generator 2, so this is only hit for p < 3
    }

    /// An element of exact multiplicative order `d`, if `d | p - 1`.
    pub fn root_of_unity(&self, d: u64) -> Option<Scalar> {
        if d == 0 || !(self.p - 1).is_multiple_of(d) {
            return None;
        }
        Some(self.pow(self.primitive_root(), (self.p - 1) / d))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Scalar) -> u64 {
        assert!(!a.is_zero());
        let mut n = self.p - 1;
        for q in prime_factors(self.p - 1) {
            while n.is_multiple_of(q) && self.pow(a, n / q) == Scalar::ONE {
                n /= q;
            }
        }
        n
    }

    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        (0..self.p).map(Scalar)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn smallest_admissible_prime() {
        assert_eq!(FieldSpec::for_group(1, 3).p(), 3);
        assert_eq!(FieldSpec::for_group(2, 3).p(), 3);
        assert_eq!(FieldSpec::for_group(4, 3).p(), 5);
        assert_eq!(FieldSpec::for_group(3, 3).p(), 7);
        assert_eq!(FieldSpec::for_group(1, 1).p(), 3);
        assert_eq!(FieldSpec::for_group(6, 20).p(), 31);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(FieldSpec::new(2, 1), Err(ScalarError::CharacteristicTwo));
        assert_eq!(FieldSpec::new(9, 2), Err(ScalarError::NotPrime(9)));
        assert_eq!(FieldSpec::new(7, 4), Err(ScalarError::NoRootsOfUnity { p: 7, e: 4 }));
        assert_eq!(FieldSpec::new(7, 0), Err(ScalarError::ZeroExponent));
        assert!(FieldSpec::new(13, 4).is_ok());
    }

    #[test]
    fn field_spec_json_is_validated() {
        let f: FieldSpec = serde_json::from_str(r#"{"p":5,"e":4}"#).unwrap();
        assert_eq!(f, FieldSpec::new(5, 4).unwrap());
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":5,"e":3}"#).is_err());
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"p":5,"e":4}"#);
    }

    #[test]
    fn roots_of_unity_have_exact_order() {
        for (p, e) in [(5, 4), (7, 3), (7, 6), (13, 12), (31, 6), (3, 2)] {
            let f = FieldSpec::new(p, e).unwrap();
            let w = f.root_of_unity(e).unwrap();
            assert_eq!(f.order(w), e, "p={p} e={e}");
        }
        let f = FieldSpec::new(7, 1).unwrap();
        assert_eq!(f.root_of_unity(4), None);
    }

    proptest! {
        #[test]
        fn field_axioms(a in 0u64..101, b in 0u64..101, c in 0u64..101) {
            let f = FieldSpec::new(101, 4).unwrap();
            let (a, b, c) = (Scalar(a), Scalar(b), Scalar(c));
            prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
            prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), Scalar::ZERO);
            prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a)), Scalar::ONE);
            }
        }
    }
}
