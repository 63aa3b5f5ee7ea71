//! Exact rational arithmetic and truncated power series in the activity `z`.
//!
//! A [`TruncatedSeries`] of order `K` stores the coefficients `c_0..=c_K` of
//! `Σ c_n z^n mod z^{K+1}`. Binary operations truncate to the smaller order
//! of their operands, and the order takes part in equality, so two series
//! that agree only up to a lower order never compare equal.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series must have constant term 1, found {0}")]
    NonUnitConstant(String),
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational as `"num/den"`, including `"/1"` for integers.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational, SeriesError> {
    let bad = || SeriesError::BadRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Very large numerators/denominators: go through logarithms.
        let sign = if r.is_negative() { -1.0 } else { 1.0 };
        let ln = big_ln(&r.numer().abs()) - big_ln(r.denom());
        sign * ln.exp()
    })
}

/// Natural log of a positive big integer, stable for values beyond `f64` range.
pub fn big_ln(n: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().expect("64-bit prefix").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Serde adapter for a single rational as a `"num/den"` string.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// One `{"n": .., "value": "num/den"}` record of a serialized series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub n: usize,
    #[serde(with = "rational_serde")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series from `c_0..=c_K`. Panics on an empty list: order is at least 0.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series of order K needs K+1 coefficients");
        Self { coeffs }
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(int).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, Rational::one())
    }

    /// `c z^power`, or zero if `power` exceeds the order.
    pub fn monomial(order: usize, power: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// `a(z) -> a(-z)`.
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 1 { -c } else { c.clone() })
            .collect();
        Self { coeffs }
    }

    /// `z d/dz`: `c_n -> n c_n`.
    pub fn zddz(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(n, c)| c * int(n as i64)).collect();
        Self { coeffs }
    }

    fn require_unit(&self) -> Result<(), SeriesError> {
        if self.coeffs[0].is_one() {
            Ok(())
        } else {
            Err(SeriesError::NonUnitConstant(rational_to_string(&self.coeffs[0])))
        }
    }

    /// `ln a` for `a_0 = 1`, from `n b_n = n a_n - Σ_{k<n} k b_k a_{n-k}`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        self.require_unit()?;
        let a = &self.coeffs;
        let mut b = vec![Rational::zero(); a.len()];
        for n in 1..a.len() {
            let mut acc = &a[n] * int(n as i64);
            for k in 1..n {
                acc -= &b[k] * int(k as i64) * &a[n - k];
            }
            b[n] = acc / int(n as i64);
        }
        Ok(Self { coeffs: b })
    }

    /// The square root with constant term `+1`, for `a_0 = 1`.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        self.require_unit()?;
        let a = &self.coeffs;
        let mut b = vec![Rational::zero(); a.len()];
        b[0] = Rational::one();
        let two = int(2);
        for n in 1..a.len() {
            let mut acc = a[n].clone();
            for k in 1..n {
                acc -= &b[k] * &b[n - k];
            }
            b[n] = acc / &two;
        }
        Ok(Self { coeffs: b })
    }

    pub fn to_entries(&self) -> Vec<Coefficient> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, value)| Coefficient { n, value: value.clone() })
            .collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }
}

pub fn series_add(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let k = a.order().min(b.order());
    TruncatedSeries { coeffs: (0..=k).map(|n| &a.coeffs[n] + &b.coeffs[n]).collect() }
}

/// Cauchy product mod `z^{K+1}`, `K` the smaller operand order.
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let k = a.order().min(b.order());
    let mut out = vec![Rational::zero(); k + 1];
    for (i, ai) in a.coeffs.iter().take(k + 1).enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().take(k + 1 - i).enumerate() {
            out[i + j] += ai * bj;
        }
    }
    TruncatedSeries { coeffs: out }
}

pub fn series_log(a: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    a.log()
}

pub fn series_sqrt(a: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    a.sqrt()
}

pub fn series_zddz(a: &TruncatedSeries) -> TruncatedSeries {
    a.zddz()
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        series_add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        series_add(self, &-rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        series_mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let abs = c.abs();
            match n {
                0 => write!(f, "{abs}")?,
                1 if abs.is_one() => f.write_str("z")?,
                1 => write!(f, "({abs})z")?,
                _ if abs.is_one() => write!(f, "z^{n}")?,
                _ => write!(f, "({abs})z^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_entries().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let mut entries = Vec::<Coefficient>::deserialize(d)?;
        entries.sort_by_key(|e| e.n);
        if entries.is_empty() || entries.iter().enumerate().any(|(i, e)| e.n != i) {
            return Err(D::Error::custom("series entries must cover n = 0..=K exactly once"));
        }
        Ok(Self::new(entries.into_iter().map(|e| e.value).collect()))
    }
}
