//! Numbers of the form `a + b·√d` with rational `a`, `b` and square-free `d`,
//! plus a tagged floating-point fallback.
//!
//! Arithmetic between two irrational values requires they share a radicand;
//! mixing fields is an invariant violation and panics, the same way shape
//! mismatches panic in dense matrix libraries. Use [`AlgebraicScalar::field`]
//! to check compatibility up front.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact element of `Q(√d)`. Canonical: `coeff == 0` iff `radicand == 0`,
/// and `radicand` is square-free and never 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    rational: BigRational,
    coeff: BigRational,
    radicand: u64,
}

impl QuadraticSurd {
    pub fn new(rational: BigRational, coeff: BigRational, radicand: u64) -> Self {
        if coeff.is_zero() || radicand == 0 {
            return QuadraticSurd {
                rational,
                coeff: BigRational::zero(),
                radicand: 0,
            };
        }
        let (square, free) = split_square(radicand);
        let coeff = coeff * BigRational::from_integer(BigInt::from(square));
        if free == 1 {
            return QuadraticSurd {
                rational: rational + coeff,
                coeff: BigRational::zero(),
                radicand: 0,
            };
        }
        QuadraticSurd {
            rational,
            coeff,
            radicand: free,
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn surd_coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radicand == 0
    }

    /// Galois conjugate `a - b√d`.
    pub fn conjugate(&self) -> Self {
        QuadraticSurd {
            rational: self.rational.clone(),
            coeff: -self.coeff.clone(),
            radicand: self.radicand,
        }
    }

    /// Field norm `a² - b²d`.
    pub fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(BigInt::from(self.radicand));
        &self.rational * &self.rational - &self.coeff * &self.coeff * d
    }

    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.rational);
        let sb = sign_of(&self.coeff);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with b²d
        let d = BigRational::from_integer(BigInt::from(self.radicand));
        let lhs = &self.rational * &self.rational;
        let rhs = &self.coeff * &self.coeff * d;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        if self.radicand == 0 {
            return a;
        }
        let b = self.coeff.to_f64().unwrap_or(f64::NAN);
        a + b * (self.radicand as f64).sqrt()
    }

    fn field_with(&self, other: &Self) -> u64 {
        match (self.radicand, other.radicand) {
            (0, d) | (d, 0) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("incompatible quadratic fields Q(√{d}) and Q(√{e})"),
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        let d = self.field_with(other);
        QuadraticSurd::new(
            &self.rational + &other.rational,
            &self.coeff + &other.coeff,
            d,
        )
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let d = self.field_with(other);
        let dq = BigRational::from_integer(BigInt::from(d));
        let rational = &self.rational * &other.rational + &self.coeff * &other.coeff * dq;
        let coeff = &self.rational * &other.coeff + &self.coeff * &other.rational;
        QuadraticSurd::new(rational, coeff, d)
    }

    fn recip(&self) -> Option<Self> {
        let norm = self.norm();
        if norm.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(QuadraticSurd::new(
            c.rational / &norm,
            c.coeff / &norm,
            c.radicand,
        ))
    }
}

fn sign_of(q: &BigRational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Splits `n = s² · f` with `f` square-free.
pub fn split_square(mut n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 0);
    }
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    free *= n;
    (square, free)
}

/// Scalar in exact `Q(√d)` arithmetic, or an approximate float coming from
/// the eigensolver fallback.
#[derive(Clone, Debug)]
pub enum AlgebraicScalar {
    Exact(QuadraticSurd),
    Float(f64),
}

impl AlgebraicScalar {
    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        AlgebraicScalar::Exact(QuadraticSurd::new(q, BigRational::zero(), 0))
    }

    /// `a + b√d`, normalized.
    pub fn surd(a: BigRational, b: BigRational, d: u64) -> Self {
        AlgebraicScalar::Exact(QuadraticSurd::new(a, b, d))
    }

    /// `√n` for a non-negative integer.
    pub fn sqrt_int(n: u64) -> Self {
        Self::surd(BigRational::zero(), BigRational::one(), n)
    }

    /// The two roots `(s ± √(s² - 4p)) / 2` of `x² - s·x + p`, larger first.
    /// Returns `None` when the discriminant is negative.
    pub fn quadratic_roots(s: &BigInt, p: &BigInt) -> Option<(Self, Self)> {
        let disc = s * s - BigInt::from(4) * p;
        if disc.is_negative() {
            return None;
        }
        let disc = disc.to_u64()?;
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let a = BigRational::from_integer(s.clone()) * &half;
        Some((
            Self::surd(a.clone(), half.clone(), disc),
            Self::surd(a, -half, disc),
        ))
    }

    pub fn float(x: f64) -> Self {
        AlgebraicScalar::Float(x)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, AlgebraicScalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&QuadraticSurd> {
        match self {
            AlgebraicScalar::Exact(q) => Some(q),
            AlgebraicScalar::Float(_) => None,
        }
    }

    /// Square-free radicand of the field this value lives in (0 for rationals
    /// and floats).
    pub fn field(&self) -> u64 {
        match self {
            AlgebraicScalar::Exact(q) => q.radicand,
            AlgebraicScalar::Float(_) => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            AlgebraicScalar::Exact(q) => q.rational.is_zero() && q.radicand == 0,
            AlgebraicScalar::Float(x) => *x == 0.0,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, AlgebraicScalar::Exact(q) if q.radicand == 0)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            AlgebraicScalar::Exact(q) if q.radicand == 0 => Some(&q.rational),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            AlgebraicScalar::Exact(q) => q.to_f64(),
            AlgebraicScalar::Float(x) => *x,
        }
    }

    /// Exact sign for exact values; floats use the sign of the payload.
    pub fn signum(&self) -> i32 {
        match self {
            AlgebraicScalar::Exact(q) => q.signum(),
            AlgebraicScalar::Float(x) => {
                if *x > 0.0 {
                    1
                } else if *x < 0.0 {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        match (self, other) {
            (AlgebraicScalar::Exact(a), AlgebraicScalar::Exact(b)) => {
                b.recip().map(|r| AlgebraicScalar::Exact(a.mul_ref(&r)))
            }
            _ => {
                let d = other.to_f64();
                (d != 0.0).then(|| AlgebraicScalar::Float(self.to_f64() / d))
            }
        }
    }

    pub fn recip(&self) -> Option<Self> {
        Self::one().checked_div(self)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Total order by value. Exact values in a common field compare exactly;
    /// values in different quadratic fields are never equal, so comparing
    /// their float images decides.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self, other) {
            (AlgebraicScalar::Exact(a), AlgebraicScalar::Exact(b))
                if a.radicand == 0 || b.radicand == 0 || a.radicand == b.radicand =>
            {
                match (self - other).signum() {
                    1 => Ordering::Greater,
                    -1 => Ordering::Less,
                    _ => Ordering::Equal,
                }
            }
            _ => self
                .to_f64()
                .partial_cmp(&other.to_f64())
                .unwrap_or(Ordering::Equal),
        }
    }

    /// Equality up to `tol` when either side is a float; exact otherwise.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.is_exact() && other.is_exact() {
            self == other
        } else {
            (self.to_f64() - other.to_f64()).abs() <= tol
        }
    }
}

impl PartialEq for AlgebraicScalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (AlgebraicScalar::Exact(a), AlgebraicScalar::Exact(b)) => a == b,
            (AlgebraicScalar::Float(a), AlgebraicScalar::Float(b)) => a == b,
            _ => false,
        }
    }
}

impl From<i64> for AlgebraicScalar {
    fn from(n: i64) -> Self {
        AlgebraicScalar::from_int(n)
    }
}

impl From<BigRational> for AlgebraicScalar {
    fn from(q: BigRational) -> Self {
        AlgebraicScalar::from_rational(q)
    }
}

impl Neg for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn neg(self) -> AlgebraicScalar {
        match self {
            AlgebraicScalar::Exact(q) => AlgebraicScalar::Exact(QuadraticSurd {
                rational: -q.rational.clone(),
                coeff: -q.coeff.clone(),
                radicand: q.radicand,
            }),
            AlgebraicScalar::Float(x) => AlgebraicScalar::Float(-x),
        }
    }
}

impl Neg for AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn neg(self) -> AlgebraicScalar {
        -&self
    }
}

impl Add for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn add(self, rhs: &AlgebraicScalar) -> AlgebraicScalar {
        match (self, rhs) {
            (AlgebraicScalar::Exact(a), AlgebraicScalar::Exact(b)) => {
                AlgebraicScalar::Exact(a.add_ref(b))
            }
            _ => AlgebraicScalar::Float(self.to_f64() + rhs.to_f64()),
        }
    }
}

impl Sub for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn sub(self, rhs: &AlgebraicScalar) -> AlgebraicScalar {
        self + &(-rhs)
    }
}

impl Mul for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn mul(self, rhs: &AlgebraicScalar) -> AlgebraicScalar {
        match (self, rhs) {
            (AlgebraicScalar::Exact(a), AlgebraicScalar::Exact(b)) => {
                AlgebraicScalar::Exact(a.mul_ref(b))
            }
            _ => AlgebraicScalar::Float(self.to_f64() * rhs.to_f64()),
        }
    }
}

/// Panics on division by zero; see [`AlgebraicScalar::checked_div`].
impl Div for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn div(self, rhs: &AlgebraicScalar) -> AlgebraicScalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for AlgebraicScalar {
            type Output = AlgebraicScalar;
            fn $m(self, rhs: AlgebraicScalar) -> AlgebraicScalar { (&self).$m(&rhs) }
        }
        impl $tr<&AlgebraicScalar> for AlgebraicScalar {
            type Output = AlgebraicScalar;
            fn $m(self, rhs: &AlgebraicScalar) -> AlgebraicScalar { (&self).$m(rhs) }
        }
        impl $tr<AlgebraicScalar> for &AlgebraicScalar {
            type Output = AlgebraicScalar;
            fn $m(self, rhs: AlgebraicScalar) -> AlgebraicScalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for AlgebraicScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(AlgebraicScalar::zero(), |a, b| a + b)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical text form: `a`, `c√d`, or `a + c√d` / `a - c√d`, rationals in
/// lowest terms (`1/2 + 1/2√5`); unit coefficients are dropped (`-√2`).
/// Floats print with 17 significant digits.
impl fmt::Display for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicScalar::Float(x) => write!(f, "{:.16e}", x),
            AlgebraicScalar::Exact(q) => {
                if q.radicand == 0 {
                    return write!(f, "{}", fmt_rational(&q.rational));
                }
                let mag = q.coeff.abs();
                let coeff = if mag.is_one() {
                    String::new()
                } else {
                    fmt_rational(&mag)
                };
                let neg = q.coeff.is_negative();
                if q.rational.is_zero() {
                    write!(f, "{}{}√{}", if neg { "-" } else { "" }, coeff, q.radicand)
                } else {
                    write!(
                        f,
                        "{} {} {}√{}",
                        fmt_rational(&q.rational),
                        if neg { "-" } else { "+" },
                        coeff,
                        q.radicand
                    )
                }
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for AlgebraicScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some((head, radicand)) = compact.split_once('√') else {
            if compact.contains(['.', 'e', 'E']) || compact.contains("inf") || compact == "NaN" {
                return compact
                    .parse::<f64>()
                    .map(AlgebraicScalar::Float)
                    .map_err(|_| Error::Parse(format!("bad float '{s}'")));
            }
            return parse_rational(&compact).map(AlgebraicScalar::from_rational);
        };
        let radicand: u64 = radicand
            .parse()
            .map_err(|_| Error::Parse(format!("bad radicand in '{s}'")))?;
        // split "a±c" at the last sign that is not leading
        let split = head
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .next_back();
        let (rational, coeff) = match split {
            Some(i) => (parse_rational(&head[..i])?, &head[i..]),
            None => (BigRational::zero(), head),
        };
        let coeff = match coeff {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            c => parse_rational(c)?,
        };
        Ok(AlgebraicScalar::surd(rational, coeff, radicand))
    }
}

impl Serialize for AlgebraicScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AlgebraicScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> AlgebraicScalar {
        x.parse().unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(AlgebraicScalar::sqrt_int(20).to_string(), "2√5");
        assert_eq!(AlgebraicScalar::sqrt_int(16).to_string(), "4");
        assert_eq!(AlgebraicScalar::sqrt_int(0).to_string(), "0");
        let (hi, lo) = AlgebraicScalar::quadratic_roots(&BigInt::from(-1), &BigInt::from(-1)).unwrap();
        assert_eq!(hi.to_string(), "-1/2 + 1/2√5");
        assert_eq!(lo.to_string(), "-1/2 - 1/2√5");
        assert_eq!((-AlgebraicScalar::sqrt_int(2)).to_string(), "-√2");
        assert_eq!(AlgebraicScalar::from_frac(6, -4).to_string(), "-3/2");
    }

    #[test]
    fn parse_round_trip() {
        for text in ["0", "-3/2", "√5", "-√2", "1 + √3", "1 - √5", "1/2 - 1/2√13", "-7/3√7"] {
            assert_eq!(s(text).to_string(), text);
        }
        assert!(!s("1.5000000000000000e0").is_exact());
        assert!("1/0".parse::<AlgebraicScalar>().is_err());
    }

    #[test]
    fn field_arithmetic() {
        let phi = s("1/2 + 1/2√5");
        // φ² = φ + 1
        assert_eq!(&phi * &phi, &phi + &AlgebraicScalar::one());
        let inv = phi.recip().unwrap();
        assert_eq!(&phi * &inv, AlgebraicScalar::one());
        assert_eq!(&s("√2") * &s("√2"), AlgebraicScalar::from_int(2));
        assert!(AlgebraicScalar::zero().recip().is_none());
    }

    #[test]
    fn exact_sign() {
        assert_eq!(s("2 - √5").signum(), -1);
        assert_eq!(s("3 - √5").signum(), 1);
        assert_eq!(s("-3 + √5").signum(), -1);
        assert_eq!(s("1 - √5").cmp_value(&s("-2")), Ordering::Greater);
        assert_eq!(s("√2").cmp_value(&s("√3")), Ordering::Less);
    }

    #[test]
    #[should_panic(expected = "incompatible quadratic fields")]
    fn mixing_fields_panics() {
        let _ = s("√2") + s("√3");
    }

    #[test]
    fn square_split() {
        assert_eq!(split_square(72), (6, 2));
        assert_eq!(split_square(13), (1, 13));
        assert_eq!(split_square(49), (7, 1));
    }
}
