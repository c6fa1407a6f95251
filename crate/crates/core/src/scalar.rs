//! Exact scalars in the tower Q ⊂ Q(i) ⊂ Q(i, √2).
//!
//! Every coefficient the hypercomplex construction needs lives in this field:
//! unit phases built from ±1, ±i and (√2/2)(1 ± i), the √2/2 mixing
//! coefficients of the Cayley transforms, and the eighth roots of unity that
//! appear in their spectral decomposition.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::traits::{One, Signed, Zero};
use num::{BigInt, BigRational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Arbitrary-precision rational, always normalised with a positive denominator.
pub type Rational = BigRational;

/// Builds the rational `num/den`. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// An element `c0 + c1·i + c2·√2 + c3·i√2` of Q(i, √2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TowerScalar {
    c: [Rational; 4],
}

impl TowerScalar {
    pub fn new(c0: Rational, c1: Rational, c2: Rational, c3: Rational) -> Self {
        TowerScalar { c: [c0, c1, c2, c3] }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        TowerScalar { c: [r, Rational::zero(), Rational::zero(), Rational::zero()] }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    pub fn sqrt2() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    /// `a + b·i` with rational parts.
    pub fn gaussian(a: Rational, b: Rational) -> Self {
        Self::new(a, b, Rational::zero(), Rational::zero())
    }

    /// The primitive eighth root of unity `e^{iπk/4}`.
    pub fn eighth_root(k: i64) -> Self {
        let h = rat(1, 2);
        let z = Rational::zero;
        match k.rem_euclid(8) {
            0 => Self::one(),
            1 => Self::new(z(), z(), h.clone(), h),
            2 => Self::i(),
            3 => Self::new(z(), z(), -h.clone(), h),
            4 => Self::from_int(-1),
            5 => Self::new(z(), z(), -h.clone(), -h),
            6 => -Self::i(),
            _ => Self::new(z(), z(), h.clone(), -h),
        }
    }

    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// True when the element lies in Q.
    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    /// True when the element lies in the real subfield Q(√2).
    pub fn is_real(&self) -> bool {
        self.c[1].is_zero() && self.c[3].is_zero()
    }

    /// Complex conjugation: negates the `i` and `i√2` coordinates.
    pub fn conj(&self) -> Self {
        Self::new(self.c[0].clone(), -self.c[1].clone(), self.c[2].clone(), -self.c[3].clone())
    }

    /// `s · conj(s)`, an element of Q(√2).
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    pub fn is_unit_modulus(&self) -> bool {
        self.norm_sq().is_one()
    }

    /// Sign of a real element `a + b√2`; `None` when the element is not real.
    pub fn real_sign(&self) -> Option<i8> {
        if !self.is_real() {
            return None;
        }
        let (a, b) = (&self.c[0], &self.c[2]);
        let sa = sign_of(a);
        let sb = sign_of(b);
        if sa == 0 || sb == 0 || sa == sb {
            return Some(if sa != 0 { sa } else { sb });
        }
        // Opposite signs: compare a² against 2b².
        let a2 = a * a;
        let b2 = b * b * rat_int(2);
        Some(if a2 > b2 { sa } else { sb })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        TowerScalar { c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r] }
    }

    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // Write s = u + v√2 with u, v ∈ Q(i). Then s·(u − v√2) = u² − 2v² ∈ Q(i).
        let u = Self::gaussian(self.c[0].clone(), self.c[1].clone());
        let v = Self::gaussian(self.c[2].clone(), self.c[3].clone());
        let conj2 = &u - &(&v * &Self::sqrt2());
        let w = &(&u * &u) - &(&(&v * &v) * &Self::from_int(2));
        // w = p + qi, w⁻¹ = (p − qi)/(p² + q²)
        let (p, q) = (&w.c[0], &w.c[1]);
        let n = p * p + q * q;
        let w_inv = Self::gaussian(p / &n, -(q / &n));
        Some(&conj2 * &w_inv)
    }

    pub fn inv(&self) -> Result<Self, Error> {
        self.checked_inv().ok_or(Error::DivisionByZero)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        let f = |r: &Rational| -> f64 {
            use num::ToPrimitive;
            r.to_f64().unwrap_or(f64::NAN)
        };
        let s = std::f64::consts::SQRT_2;
        (f(&self.c[0]) + s * f(&self.c[2]), f(&self.c[1]) + s * f(&self.c[3]))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn mul_parts(x: &[Rational; 4], y: &[Rational; 4]) -> [Rational; 4] {
    let [a, b, c, d] = x;
    let [e, f, g, h] = y;
    let mut out: [Rational; 4] = Default::default();
    // Skipping zero partial products keeps the common rational and Gaussian cases cheap.
    let mut acc = |slot: usize, k: i64, p: &Rational, q: &Rational| {
        if p.is_zero() || q.is_zero() {
            return;
        }
        let t = p * q;
        match k {
            1 => out[slot] += t,
            -1 => out[slot] -= t,
            2 => out[slot] += &t + &t,
            _ => out[slot] -= &t + &t,
        }
    };
    // basis products: i·i = −1, √2·√2 = 2, i·i√2 = −√2, √2·i√2 = 2i, i√2·i√2 = −2
    acc(0, 1, a, e);
    acc(0, -1, b, f);
    acc(0, 2, c, g);
    acc(0, -2, d, h);
    acc(1, 1, a, f);
    acc(1, 1, b, e);
    acc(1, 2, c, h);
    acc(1, 2, d, g);
    acc(2, 1, a, g);
    acc(2, 1, c, e);
    acc(2, -1, b, h);
    acc(2, -1, d, f);
    acc(3, 1, a, h);
    acc(3, 1, d, e);
    acc(3, 1, b, g);
    acc(3, 1, c, f);
    out
}

impl<'a> Add<&'a TowerScalar> for &'a TowerScalar {
    type Output = TowerScalar;
    fn add(self, rhs: &TowerScalar) -> TowerScalar {
        TowerScalar {
            c: [&self.c[0] + &rhs.c[0], &self.c[1] + &rhs.c[1], &self.c[2] + &rhs.c[2], &self.c[3] + &rhs.c[3]],
        }
    }
}

impl<'a> Sub<&'a TowerScalar> for &'a TowerScalar {
    type Output = TowerScalar;
    fn sub(self, rhs: &TowerScalar) -> TowerScalar {
        TowerScalar {
            c: [&self.c[0] - &rhs.c[0], &self.c[1] - &rhs.c[1], &self.c[2] - &rhs.c[2], &self.c[3] - &rhs.c[3]],
        }
    }
}

impl<'a> Mul<&'a TowerScalar> for &'a TowerScalar {
    type Output = TowerScalar;
    fn mul(self, rhs: &TowerScalar) -> TowerScalar {
        TowerScalar { c: mul_parts(&self.c, &rhs.c) }
    }
}

impl<'a> Div<&'a TowerScalar> for &'a TowerScalar {
    type Output = TowerScalar;
    /// Panics on division by zero; use [`TowerScalar::inv`] for a fallible version.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &TowerScalar) -> TowerScalar {
        let inv = rhs.checked_inv().expect("division by zero in Q(i, √2)");
        self * &inv
    }
}

impl Neg for &TowerScalar {
    type Output = TowerScalar;
    fn neg(self) -> TowerScalar {
        TowerScalar { c: [-self.c[0].clone(), -self.c[1].clone(), -self.c[2].clone(), -self.c[3].clone()] }
    }
}

impl Neg for TowerScalar {
    type Output = TowerScalar;
    fn neg(self) -> TowerScalar {
        let [a, b, c, d] = self.c;
        TowerScalar { c: [-a, -b, -c, -d] }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<TowerScalar> for TowerScalar {
            type Output = TowerScalar;
            fn $m(self, rhs: TowerScalar) -> TowerScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a TowerScalar> for TowerScalar {
            type Output = TowerScalar;
            fn $m(self, rhs: &TowerScalar) -> TowerScalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<TowerScalar> for &'a TowerScalar {
            type Output = TowerScalar;
            fn $m(self, rhs: TowerScalar) -> TowerScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&TowerScalar> for TowerScalar {
    fn add_assign(&mut self, rhs: &TowerScalar) {
        for k in 0..4 {
            if !rhs.c[k].is_zero() {
                self.c[k] += &rhs.c[k];
            }
        }
    }
}

impl SubAssign<&TowerScalar> for TowerScalar {
    fn sub_assign(&mut self, rhs: &TowerScalar) {
        for k in 0..4 {
            if !rhs.c[k].is_zero() {
                self.c[k] -= &rhs.c[k];
            }
        }
    }
}

impl MulAssign<&TowerScalar> for TowerScalar {
    fn mul_assign(&mut self, rhs: &TowerScalar) {
        self.c = mul_parts(&self.c, &rhs.c);
    }
}

impl From<i64> for TowerScalar {
    fn from(n: i64) -> Self {
        TowerScalar::from_int(n)
    }
}

impl From<Rational> for TowerScalar {
    fn from(r: Rational) -> Self {
        TowerScalar::from_rational(r)
    }
}

const SUFFIXES: [&str; 4] = ["", "i", "√2", "i√2"];

impl fmt::Display for TowerScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, r) in self.c.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{r}")?;
            } else {
                write!(f, "({r}){}", SUFFIXES[k])?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TowerScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_coefficient(text: &str, whole: &str) -> Result<Rational, Error> {
    let t = text.trim();
    let t = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t).trim();
    match t {
        "" | "+" => Ok(Rational::one()),
        "-" => Ok(-Rational::one()),
        _ => Rational::from_str(t).map_err(|_| Error::Parse(format!("bad scalar `{whole}`"))),
    }
}

impl FromStr for TowerScalar {
    type Err = Error;

    /// Parses the rendering produced by `Display`, e.g. `1/2 + (-3)i + (1/2)√2`.
    /// `sqrt2` is accepted as a spelling of `√2`, and bare `i` / `-i` as unit terms.
    fn from_str(s: &str) -> Result<Self, Error> {
        let norm = s.replace("sqrt2", "√2");
        let mut out = TowerScalar::zero();
        if norm.trim().is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        for term in norm.split(" + ") {
            let term = term.trim();
            let (slot, body) = if let Some(b) = term.strip_suffix("i√2") {
                (3, b)
            } else if let Some(b) = term.strip_suffix("√2") {
                (2, b)
            } else if let Some(b) = term.strip_suffix('i') {
                (1, b)
            } else {
                (0, term)
            };
            if slot == 0 && body.trim().is_empty() {
                return Err(Error::Parse(format!("bad scalar `{s}`")));
            }
            let r = parse_coefficient(body, s)?;
            out.c[slot] += r;
        }
        Ok(out)
    }
}

impl Serialize for TowerScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TowerScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ts(s: &str) -> TowerScalar {
        s.parse().unwrap()
    }

    #[test]
    fn spec_products() {
        let a = TowerScalar::gaussian(rat_int(1), rat_int(1));
        let b = TowerScalar::gaussian(rat_int(1), rat_int(-1));
        assert_eq!(&a * &b, TowerScalar::from_int(2));

        let h = TowerScalar::sqrt2().scale(&rat(1, 2));
        assert_eq!(&h * &h, TowerScalar::from_rational(rat(1, 2)));

        assert_eq!(TowerScalar::sqrt2().inv().unwrap(), h);
    }

    #[test]
    fn conjugation() {
        assert_eq!(TowerScalar::i().conj(), -TowerScalar::i());
        assert_eq!(TowerScalar::sqrt2().conj(), TowerScalar::sqrt2());
        let z = TowerScalar::gaussian(rat(3, 5), rat(4, 5));
        assert_eq!(z.conj(), TowerScalar::gaussian(rat(3, 5), rat(-4, 5)));
    }

    #[test]
    fn unit_modulus() {
        assert!(TowerScalar::gaussian(rat(3, 5), rat(4, 5)).is_unit_modulus());
        assert!(TowerScalar::eighth_root(1).is_unit_modulus());
        assert!(!TowerScalar::from_int(2).is_unit_modulus());
        for k in 0..8 {
            assert_eq!(TowerScalar::eighth_root(k).pow(8), TowerScalar::one());
        }
        assert_eq!(TowerScalar::eighth_root(1).pow(2), TowerScalar::i());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(TowerScalar::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn rendering() {
        assert_eq!(TowerScalar::zero().to_string(), "0");
        let z = TowerScalar::new(rat(1, 2), rat(-3, 1), rat(0, 1), rat(2, 7));
        assert_eq!(z.to_string(), "1/2 + (-3)i + (2/7)i√2");
        assert_eq!(ts("1/2 + (-3)i + (2/7)i√2"), z);
        assert_eq!(ts("i"), TowerScalar::i());
        assert_eq!(ts("-i"), -TowerScalar::i());
        assert_eq!(ts("(1/2)sqrt2 + (1/2)i√2"), TowerScalar::eighth_root(1));
        assert!("".parse::<TowerScalar>().is_err());
        assert!("1/0x".parse::<TowerScalar>().is_err());
    }

    #[test]
    fn real_sign() {
        // 3 − 2√2 > 0, 1 − √2 < 0
        let a = TowerScalar::new(rat_int(3), rat_int(0), rat_int(-2), rat_int(0));
        assert_eq!(a.real_sign(), Some(1));
        let b = TowerScalar::new(rat_int(1), rat_int(0), rat_int(-1), rat_int(0));
        assert_eq!(b.real_sign(), Some(-1));
        assert_eq!(TowerScalar::i().real_sign(), None);
        assert_eq!(TowerScalar::zero().real_sign(), Some(0));
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
    }

    fn scalar() -> impl Strategy<Value = TowerScalar> {
        (small_rat(), small_rat(), small_rat(), small_rat()).prop_map(|(a, b, c, d)| TowerScalar::new(a, b, c, d))
    }

    proptest! {
        #[test]
        fn field_laws(a in scalar(), b in scalar(), c in scalar()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn conj_is_automorphism(a in scalar(), b in scalar()) {
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert!(a.norm_sq().is_real());
        }

        #[test]
        fn text_round_trip(a in scalar()) {
            let back: TowerScalar = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
