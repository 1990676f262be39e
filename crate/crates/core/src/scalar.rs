//! Exact scalars: arbitrary-precision rationals and elements `p + r*sqrt(D)`
//! of a real quadratic field.
//!
//! Every comparison in this module is decided with integer arithmetic. Floating
//! point only appears in [`QuadExt::to_f64`] and [`QuadExt::f64_bounds`], which
//! are for printing and for certified root extraction in the property harness.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number. Always reduced with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim());
            let d = BigInt::from_str(d.trim());
            match (n, d) {
                (Ok(n), Ok(d)) if !d.is_zero() => Some(Rat::new(n, d)),
                _ => None,
            }
        }
        None => BigInt::from_str(s).ok().map(Rat::from_integer),
    };
    parsed.ok_or_else(|| Error::InvalidScalar(format!("cannot parse `{s}` as a rational")))
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Huge numerators or denominators: scale through the integer part.
        let n = x.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Floor of a rational as an `i64`.
pub fn floor_i64(x: &Rat) -> i64 {
    x.floor().to_integer().to_i64().expect("coordinate out of i64 range")
}

pub fn ceil_i64(x: &Rat) -> i64 {
    x.ceil().to_integer().to_i64().expect("coordinate out of i64 range")
}

/// Field operations shared by the exact linear algebra and LP code.
pub trait Scalar: Clone + fmt::Debug + PartialEq {
    fn nil() -> Self;
    fn unit() -> Self;
    fn from_rat(x: Rat) -> Self;
    fn is_nil(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn cmp_exact(&self, other: &Self) -> Ordering;

    fn signum_exact(&self) -> Ordering {
        self.cmp_exact(&Self::nil())
    }
}

impl Scalar for Rat {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn from_rat(x: Rat) -> Self {
        x
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn cmp_exact(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

/// Element `rational + radical * sqrt(disc)` of a real quadratic field.
///
/// Canonical values have a square-free `disc`, and `disc == 1` exactly when
/// the radical coefficient is zero. Arithmetic operators panic when two values
/// live in different quadratic fields; use the `checked_*` methods to get an
/// error instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    rational: Rat,
    radical: Rat,
    disc: u64,
}

fn square_free_split(n: u64) -> (u64, u64) {
    // n = s^2 * f with f square-free; returns (s, f).
    let mut s = 1u64;
    let mut f = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            f *= p;
        }
        p += 1;
    }
    f *= rest;
    (s, f)
}

/// Integer square root if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl QuadExt {
    /// Builds and canonicalizes `rational + radical * sqrt(disc)`.
    pub fn new(rational: Rat, radical: Rat, disc: i64) -> Result<Self> {
        if disc <= 0 {
            return Err(Error::InvalidScalar(format!(
                "discriminant must be positive, got {disc}"
            )));
        }
        Ok(Self::canonical(rational, radical, disc as u64))
    }

    fn canonical(rational: Rat, radical: Rat, disc: u64) -> Self {
        if Zero::is_zero(&radical) {
            return QuadExt {
                rational,
                radical,
                disc: 1,
            };
        }
        let (s, f) = square_free_split(disc);
        let radical = radical * Rat::from_integer(BigInt::from(s));
        if f == 1 {
            QuadExt {
                rational: rational + radical,
                radical: Zero::zero(),
                disc: 1,
            }
        } else {
            QuadExt {
                rational,
                radical,
                disc: f,
            }
        }
    }

    pub fn from_rat(x: Rat) -> Self {
        QuadExt {
            rational: x,
            radical: Zero::zero(),
            disc: 1,
        }
    }

    /// `sqrt(n)` for a nonnegative rational `n`.
    pub fn sqrt_of(n: &Rat) -> Result<Self> {
        if n.is_negative() {
            return Err(Error::InvalidScalar(format!("sqrt of negative value {n}")));
        }
        if Zero::is_zero(n) {
            return Ok(Self::from_rat(Zero::zero()));
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let pq = n.numer() * n.denom();
        let coeff = Rat::new(BigInt::one(), n.denom().clone());
        match exact_sqrt(&pq) {
            Some(r) => Ok(Self::from_rat(coeff * Rat::from_integer(r))),
            None => {
                let pq = pq.to_u64().ok_or_else(|| {
                    Error::InvalidScalar("radicand too large for a quadratic field".into())
                })?;
                Ok(Self::canonical(Zero::zero(), coeff, pq))
            }
        }
    }

    pub fn rational_part(&self) -> &Rat {
        &self.rational
    }

    pub fn radical_coefficient(&self) -> &Rat {
        &self.radical
    }

    pub fn discriminant(&self) -> u64 {
        self.disc
    }

    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.radical)
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.rational)
    }

    fn common_disc(&self, other: &Self) -> Result<u64> {
        if self.is_rational() {
            Ok(other.disc)
        } else if other.is_rational() || self.disc == other.disc {
            Ok(self.disc)
        } else {
            Err(Error::InvalidComparison(format!(
                "values live in Q(sqrt({})) and Q(sqrt({}))",
                self.disc, other.disc
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let disc = self.common_disc(other)?;
        Ok(Self::canonical(
            &self.rational + &other.rational,
            &self.radical + &other.radical,
            disc,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let disc = self.common_disc(other)?;
        let d = Rat::from_integer(BigInt::from(disc));
        let rational = &self.rational * &other.rational + &self.radical * &other.radical * d;
        let radical = &self.rational * &other.radical + &self.radical * &other.rational;
        Ok(Self::canonical(rational, radical, disc))
    }

    pub fn conjugate(&self) -> Self {
        QuadExt {
            rational: self.rational.clone(),
            radical: -&self.radical,
            disc: self.disc,
        }
    }

    /// Field norm `p^2 - r^2 D`.
    pub fn norm(&self) -> Rat {
        &self.rational * &self.rational
            - &self.radical * &self.radical * Rat::from_integer(BigInt::from(self.disc))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::InvalidScalar("division by zero".into()));
        }
        let n = other.norm();
        let num = self.checked_mul(&other.conjugate())?;
        Ok(Self::canonical(num.rational / &n, num.radical / &n, num.disc))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self::canonical(&self.rational * k, &self.radical * k, self.disc)
    }

    pub fn is_zero(&self) -> bool {
        Zero::is_zero(&self.rational) && Zero::is_zero(&self.radical)
    }

    /// Exact sign, decided by comparing `p^2` with `r^2 D` when the two terms
    /// have opposite signs.
    pub fn signum(&self) -> Ordering {
        let sp = self.rational.cmp(&Zero::zero());
        let sr = self.radical.cmp(&Zero::zero());
        if sr == Ordering::Equal {
            return sp;
        }
        if sp == Ordering::Equal || sp == sr {
            return sr;
        }
        let p2 = &self.rational * &self.rational;
        let r2d = &self.radical * &self.radical * Rat::from_integer(BigInt::from(self.disc));
        match p2.cmp(&r2d) {
            Ordering::Greater => sp,
            Ordering::Less => sr,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.rational) + rat_to_f64(&self.radical) * (self.disc as f64).sqrt()
    }

    /// Interval `[lo, hi]` guaranteed to contain the exact value.
    pub fn f64_bounds(&self) -> (f64, f64) {
        let p = rat_to_f64(&self.rational);
        let r = rat_to_f64(&self.radical) * (self.disc as f64).sqrt();
        let v = p + r;
        // Conversions and sqrt each cost at most a couple of ulps of the
        // operand magnitudes.
        let err = 8.0 * f64::EPSILON * (p.abs() + r.abs()) + f64::MIN_POSITIVE;
        (v - err, v + err)
    }
}

/// Exact total order on values of a common quadratic field.
pub fn quad_compare(a: &QuadExt, b: &QuadExt) -> Result<Ordering> {
    Ok(a.checked_sub(b)?.signum())
}

/// Returns an equal value with square-free discriminant.
pub fn canonicalize(value: &QuadExt) -> QuadExt {
    QuadExt::canonical(value.rational.clone(), value.radical.clone(), value.disc)
}

impl From<Rat> for QuadExt {
    fn from(x: Rat) -> Self {
        QuadExt::from_rat(x)
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            rational: -&self.rational,
            radical: -&self.radical,
            disc: self.disc,
        }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

macro_rules! forward_quad_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                self.$checked(rhs).expect("mixed quadratic fields")
            }
        }
        impl $trait<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$checked(&rhs).expect("mixed quadratic fields")
            }
        }
    };
}

forward_quad_op!(Add, add, checked_add);
forward_quad_op!(Sub, sub, checked_sub);
forward_quad_op!(Mul, mul, checked_mul);

impl Scalar for QuadExt {
    fn nil() -> Self {
        QuadExt::from_rat(Zero::zero())
    }
    fn unit() -> Self {
        QuadExt::from_rat(One::one())
    }
    fn from_rat(x: Rat) -> Self {
        QuadExt::from_rat(x)
    }
    fn is_nil(&self) -> bool {
        QuadExt::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self.checked_div(other).expect("mixed quadratic fields")
    }
    fn neg(&self) -> Self {
        -self
    }
    fn cmp_exact(&self, other: &Self) -> Ordering {
        quad_compare(self, other).expect("mixed quadratic fields")
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.rational);
        }
        let abs_r = self.radical.abs();
        if Zero::is_zero(&self.rational) {
            let sign = if self.radical.is_negative() { "-" } else { "" };
            return write!(f, "{sign}{abs_r}*sqrt({})", self.disc);
        }
        let op = if self.radical.is_negative() { '-' } else { '+' };
        write!(f, "{} {op} {abs_r}*sqrt({})", self.rational, self.disc)
    }
}

impl FromStr for QuadExt {
    type Err = Error;

    /// Accepts the output of `Display`: `p`, `r*sqrt(D)`, `p + r*sqrt(D)` and
    /// `p - r*sqrt(D)`, with `sqrt(D)` allowed in place of `1*sqrt(D)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidScalar(format!("cannot parse `{s}` as a quadratic value"));
        let text = s.trim();
        let Some(sqrt_at) = text.find("sqrt(") else {
            return Ok(QuadExt::from_rat(parse_rat(text)?));
        };
        let close = text[sqrt_at..].find(')').ok_or_else(bad)? + sqrt_at;
        if close + 1 != text.len() {
            return Err(bad());
        }
        let disc: i64 = text[sqrt_at + 5..close].trim().parse().map_err(|_| bad())?;
        let head = text[..sqrt_at].trim_end();
        let head = head.strip_suffix('*').unwrap_or(head).trim_end();
        // Split `head` into an optional rational part and the signed radical coefficient.
        let split = head
            .char_indices()
            .rev()
            .find(|&(i, c)| (c == '+' || c == '-') && i > 0 && head[..i].trim_end().len() < i)
            .map(|(i, _)| i);
        let (rational, coeff) = match split {
            Some(i) => (parse_rat(&head[..i])?, head[i..].replace(' ', "")),
            None => (Zero::zero(), head.replace(' ', "")),
        };
        let radical = match coeff.as_str() {
            "" | "+" => One::one(),
            "-" => -Rat::one(),
            c => parse_rat(c.strip_prefix('+').unwrap_or(c))?,
        };
        QuadExt::new(rational, radical, disc)
    }
}

/// Finite sum `sum_D c_D sqrt(D)` over distinct square-free `D`.
///
/// Square roots of distinct square-free integers are linearly independent
/// over the rationals, so equality is decided coefficient by coefficient.
/// Used where values from several quadratic fields have to be combined.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RadicalSum {
    terms: BTreeMap<u64, Rat>,
}

impl RadicalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_quad(q: &QuadExt) -> Self {
        let mut s = Self::zero();
        s.add_term(1, q.rational_part().clone());
        s.add_term(q.discriminant(), q.radical_coefficient().clone());
        s
    }

    fn add_term(&mut self, disc: u64, coeff: Rat) {
        if Zero::is_zero(&coeff) {
            return;
        }
        let entry = self.terms.entry(disc).or_insert_with(Zero::zero);
        *entry += coeff;
        if Zero::is_zero(entry) {
            self.terms.remove(&disc);
        }
    }

    pub fn add_scaled(&mut self, other: &RadicalSum, k: &Rat) {
        for (d, c) in &other.terms {
            self.add_term(*d, c * k);
        }
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&d| d == 1)
    }

    pub fn rational_part(&self) -> Rat {
        self.terms.get(&1).cloned().unwrap_or_else(Zero::zero)
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, c)| rat_to_f64(c) * (*d as f64).sqrt())
            .sum()
    }
}

impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| {
                if *d == 1 {
                    c.to_string()
                } else {
                    format!("{c}*sqrt({d})")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Exact value `n!` as a rational.
pub fn factorial(n: u32) -> Rat {
    Rat::from_integer((1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)))
}

pub fn pow(x: &Rat, e: u32) -> Rat {
    num_traits::pow(x.clone(), e as usize)
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn is_integral(x: &Rat) -> bool {
    x.is_integer()
}

pub fn sign_of(x: &BigInt) -> Ordering {
    match x.sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: Rat, r: Rat, d: i64) -> QuadExt {
        QuadExt::new(p, r, d).unwrap()
    }

    fn golden_volume() -> QuadExt {
        q(rat(-7, 2), rat(5, 2), 5)
    }

    #[test]
    fn canonicalize_extracts_squares() {
        let v = q(int(0), int(1), 8);
        assert_eq!(v.rational_part(), &int(0));
        assert_eq!(v.radical_coefficient(), &int(2));
        assert_eq!(v.discriminant(), 2);
    }

    #[test]
    fn zero_radical_normalizes_discriminant() {
        let v = q(int(3), int(0), 5);
        assert_eq!(v.discriminant(), 1);
        assert_eq!(v.rational_part(), &int(3));
    }

    #[test]
    fn golden_instance_is_already_canonical() {
        let v = golden_volume();
        assert_eq!(canonicalize(&v), v);
        assert_eq!(v.discriminant(), 5);
    }

    #[test]
    fn perfect_square_discriminant_folds_into_rational_part() {
        let v = q(int(1), int(3), 4);
        assert!(v.is_rational());
        assert_eq!(v.rational_part(), &int(7));
    }

    #[test]
    fn nonpositive_discriminant_is_rejected() {
        assert!(matches!(
            QuadExt::new(int(1), int(1), 0),
            Err(Error::InvalidScalar(_))
        ));
        assert!(QuadExt::new(int(1), int(1), -3).is_err());
    }

    #[test]
    fn compare_examples() {
        let sqrt5 = q(int(0), int(1), 5);
        assert_eq!(quad_compare(&sqrt5, &int(2).into()).unwrap(), Ordering::Greater);
        let conj = q(rat(-1, 2), rat(1, 2), 5);
        assert_eq!(quad_compare(&conj, &int(0).into()).unwrap(), Ordering::Greater);
        assert_eq!(
            quad_compare(&golden_volume(), &int(2).into()).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = q(int(0), int(1), 5);
        let b = q(int(0), int(1), 2);
        assert!(matches!(
            quad_compare(&a, &b),
            Err(Error::InvalidComparison(_))
        ));
    }

    #[test]
    fn golden_ratio_relations() {
        // sigma = (sqrt5 - 1)/2 satisfies sigma^2 + sigma = 1 and 5 sigma - 1 = (5 sqrt5 - 7)/2.
        let sigma = q(rat(-1, 2), rat(1, 2), 5);
        let s2 = &sigma * &sigma;
        assert_eq!(&s2 + &sigma, int(1).into());
        let five_sigma_minus_one = &sigma.scale(&int(5)) - &QuadExt::from(int(1));
        assert_eq!(five_sigma_minus_one, golden_volume());
        let inv = QuadExt::from(int(1)).checked_div(&sigma).unwrap();
        assert_eq!(inv, &sigma + &QuadExt::from(int(1)));
    }

    #[test]
    fn display_and_parse_round_trip() {
        for v in [
            golden_volume(),
            q(int(0), rat(-3, 4), 7),
            q(rat(5, 3), int(-1), 2),
            q(int(4), int(0), 1),
        ] {
            let text = v.to_string();
            assert_eq!(text.parse::<QuadExt>().unwrap(), v, "{text}");
        }
        assert_eq!(golden_volume().to_string(), "-7/2 + 5/2*sqrt(5)");
        assert_eq!("sqrt(8)".parse::<QuadExt>().unwrap(), q(int(0), int(2), 2));
    }

    #[test]
    fn sqrt_of_rationals() {
        assert_eq!(QuadExt::sqrt_of(&rat(9, 4)).unwrap(), rat(3, 2).into());
        let s = QuadExt::sqrt_of(&rat(1, 2)).unwrap();
        assert_eq!(&s * &s, rat(1, 2).into());
    }

    #[test]
    fn radical_sums_separate_fields() {
        let mut s = RadicalSum::from_quad(&q(int(1), int(1), 2));
        s.add_scaled(&RadicalSum::from_quad(&q(int(0), int(1), 3)), &int(2));
        s.add_scaled(&RadicalSum::from_quad(&q(int(1), int(1), 2)), &int(-1));
        assert!(!s.is_rational());
        assert_eq!(s, RadicalSum::from_quad(&q(int(0), int(2), 3)));
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-60i64..60, 1i64..12).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn rat_field_laws(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        }

        #[test]
        fn canonicalize_is_idempotent(p in small_rat(), r in small_rat(), d in 1i64..200) {
            let v = QuadExt::new(p, r, d).unwrap();
            prop_assert_eq!(canonicalize(&v), v.clone());
        }

        #[test]
        fn rat_text_round_trip(a in small_rat()) {
            prop_assert_eq!(parse_rat(&a.to_string()).unwrap(), a);
        }
    }

    #[test]
    fn compare_agrees_with_floats_on_random_values() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let discs = [2i64, 3, 5, 6, 7, 10, 11, 13];
        for _ in 0..10_000 {
            let d = discs[rng.gen_range(0..discs.len())];
            let a = q(
                rat(rng.gen_range(-500..500), rng.gen_range(1..30)),
                rat(rng.gen_range(-500..500), rng.gen_range(1..30)),
                d,
            );
            let b = q(
                rat(rng.gen_range(-500..500), rng.gen_range(1..30)),
                rat(rng.gen_range(-500..500), rng.gen_range(1..30)),
                d,
            );
            let exact = quad_compare(&a, &b).unwrap();
            let fa = a.to_f64();
            let fb = b.to_f64();
            if (fa - fb).abs() > 1e-9 * (1.0 + fa.abs() + fb.abs()) {
                assert_eq!(exact, fa.partial_cmp(&fb).unwrap(), "{a} vs {b}");
            }
            let (lo, hi) = a.f64_bounds();
            assert!(lo <= fa && fa <= hi);
        }
    }
}
