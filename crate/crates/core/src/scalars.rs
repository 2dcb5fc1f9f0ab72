//! Exact coefficient arithmetic.
//!
//! [`GaussianRational`] is an element of Q(i). [`TauScalar`] is a Laurent
//! polynomial in a formal symbol `tau` standing for 2πi, with Gaussian
//! rational coefficients. Since 2πi is transcendental over Q(i), equality of
//! Laurent polynomials coincides with equality of the complex numbers they
//! denote, so every comparison in this crate is exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element `re + im·i` of the Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::new(rat(n, d), BigRational::zero())
    }

    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(rat(re.0, re.1), rat(im.0, im.1))
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|²`, an exact nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    /// The rational `q` with `self = q · other`, if one exists.
    pub fn real_ratio(&self, other: &Self) -> Option<BigRational> {
        let q = self.checked_div(other).ok()?;
        q.is_real().then_some(q.re)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Integer value if `self` is a real integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.im.is_zero() && self.re.is_integer()).then(|| self.re.to_integer())
    }

    /// Render as a multiplicative factor: `(negative, body)` where an empty
    /// body means the factor is ±1.
    fn factor_parts(&self) -> (bool, String) {
        if self.im.is_zero() {
            let neg = self.re.is_negative();
            let a = self.re.abs();
            let body = if a.is_one() { String::new() } else { fmt_rat(&a) };
            (neg, body)
        } else if self.re.is_zero() {
            let neg = self.im.is_negative();
            let a = self.im.abs();
            let body = if a.is_one() {
                "i".to_string()
            } else {
                format!("{}i", fmt_rat(&a))
            };
            (neg, body)
        } else {
            (false, format!("({self})"))
        }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_body = |a: &BigRational| {
            if a.is_one() {
                "i".to_string()
            } else {
                format!("{}i", fmt_rat(a))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => {
                let sign = if self.im.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}", im_body(&self.im.abs()))
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{sign}{}", fmt_rat(&self.re), im_body(&self.im.abs()))
            }
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::from_rational(&self.re * &o.re);
        }
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned_binop {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, o: &'a $t) -> $t {
                (&self).$m(o)
            }
        }
    };
}

forward_owned_binop!(GaussianRational, Add, add);
forward_owned_binop!(GaussianRational, Sub, sub);
forward_owned_binop!(GaussianRational, Mul, mul);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

/// Laurent polynomial in `tau = 2πi` with Gaussian rational coefficients.
///
/// Canonical form: no zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TauScalar {
    terms: BTreeMap<i32, GaussianRational>,
}

impl TauScalar {
    /// `c · tau^k`.
    pub fn monomial(c: GaussianRational, k: i32) -> Self {
        let mut s = TauScalar::zero();
        if !c.is_zero() {
            s.terms.insert(k, c);
        }
        s
    }

    pub fn tau() -> Self {
        Self::tau_pow(1)
    }

    pub fn tau_pow(k: i32) -> Self {
        Self::monomial(GaussianRational::one(), k)
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(GaussianRational::from_int(n), 0)
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::monomial(GaussianRational::from_ratio(n, d), 0)
    }

    pub fn i() -> Self {
        Self::monomial(GaussianRational::i(), 0)
    }

    /// Build from raw terms, dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i32, GaussianRational)>>(it: I) -> Self {
        let mut s = TauScalar::zero();
        for (k, c) in it {
            s.add_term(k, &c);
        }
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &GaussianRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: i32) -> GaussianRational {
        self.terms.get(&k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    fn add_term(&mut self, k: i32, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(GaussianRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// Re-establish canonical form (drops explicit zeros).
    pub fn normalize(&self) -> Self {
        TauScalar {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// The Gaussian rational value if no power of tau occurs.
    pub fn as_gaussian(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn is_tau_free(&self) -> bool {
        self.as_gaussian().is_some()
    }

    /// `Some((c, k))` when `self = c·tau^k` with `c ≠ 0`.
    pub fn as_monomial(&self) -> Option<(&GaussianRational, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (c, *k))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return TauScalar::zero();
        }
        TauScalar {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&GaussianRational::from_int(n))
    }

    /// Multiply by `tau^k`.
    pub fn shift(&self, k: i32) -> Self {
        TauScalar {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Exact division; the divisor must be a single power of tau.
    pub fn divide(&self, b: &TauScalar) -> Result<TauScalar> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (c, k) = b.as_monomial().ok_or(Error::NotMonomial)?;
        Ok(self.scale(&c.inv()?).shift(-k))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = TauScalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Approximate complex value with τ ↦ 2πi, accurate to `precision`
    /// decimal digits in each of the real and imaginary parts.
    pub fn numeric_eval(&self, precision: u32) -> NumericComplex {
        let precision = precision.max(1);
        let max_exp = self.terms.keys().map(|k| k.unsigned_abs()).max().unwrap_or(0);
        let coeff_digits: usize = self
            .terms
            .values()
            .map(|c| {
                let mag = c.re.abs() + c.im.abs();
                mag.to_integer().to_string().len() + 1
            })
            .sum();
        // 2π < 10, so each power of tau can cost at most one digit.
        let guard = 10 + coeff_digits + 2 * max_exp as usize;
        let pi = pi_rational(precision as usize + guard);
        let two_pi = &pi * BigRational::from_integer(2.into());
        let mut re = BigRational::zero();
        let mut im = BigRational::zero();
        for (k, c) in &self.terms {
            let mag = pow_rational(&two_pi, *k);
            // i^k
            let (ir, ii) = match k.rem_euclid(4) {
                0 => (1, 0),
                1 => (0, 1),
                2 => (-1, 0),
                _ => (0, -1),
            };
            let z = GaussianRational::new(
                BigRational::from_integer(ir.into()),
                BigRational::from_integer(ii.into()),
            );
            let term = (c * &z).scale(&mag);
            re += term.re;
            im += term.im;
        }
        NumericComplex { re, im, precision }
    }
}

fn pow_rational(x: &BigRational, k: i32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= x;
    }
    if k < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// π as a rational with absolute error below `10^-digits`, via Machin's
/// formula in fixed point.
fn pi_rational(digits: usize) -> BigRational {
    let scale = BigInt::from(10).pow(digits as u32 + 5);
    let atan_inv = |n: i64| -> BigInt {
        // atan(1/n) · scale
        let n2 = BigInt::from(n * n);
        let mut term = &scale / BigInt::from(n);
        let mut sum = term.clone();
        let mut k = 1i64;
        loop {
            term = &term / &n2;
            if term.is_zero() {
                break;
            }
            let t = &term / BigInt::from(2 * k + 1);
            if k % 2 == 1 {
                sum -= t;
            } else {
                sum += t;
            }
            k += 1;
        }
        sum
    };
    let fixed = atan_inv(5) * 16 - atan_inv(239) * 4;
    BigRational::new(fixed, scale)
}

/// Result of [`TauScalar::numeric_eval`]: a rational approximation of a
/// complex number.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericComplex {
    pub re: BigRational,
    pub im: BigRational,
    pub precision: u32,
}

impl NumericComplex {
    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

fn fmt_decimal(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = r * BigRational::from_integer(scale.clone());
    let n = scaled.round().to_integer();
    let neg = n.is_negative();
    let (q, rem) = n.abs().div_rem(&scale);
    let frac = format!("{:0>width$}", rem.to_string(), width = digits as usize);
    format!("{}{}.{}", if neg { "-" } else { "" }, q, frac)
}

impl fmt::Display for NumericComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im = fmt_decimal(&self.im, self.precision);
        if im.starts_with('-') {
            write!(f, "{} - {}i", fmt_decimal(&self.re, self.precision), &im[1..])
        } else {
            write!(f, "{} + {}i", fmt_decimal(&self.re, self.precision), im)
        }
    }
}

impl Zero for TauScalar {
    fn zero() -> Self {
        TauScalar::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for TauScalar {
    fn one() -> Self {
        TauScalar::from_int(1)
    }
}

impl<'a> Add<&'a TauScalar> for &'a TauScalar {
    type Output = TauScalar;
    fn add(self, o: &TauScalar) -> TauScalar {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl<'a> Sub<&'a TauScalar> for &'a TauScalar {
    type Output = TauScalar;
    fn sub(self, o: &TauScalar) -> TauScalar {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl<'a> Mul<&'a TauScalar> for &'a TauScalar {
    type Output = TauScalar;
    fn mul(self, o: &TauScalar) -> TauScalar {
        let mut r = TauScalar::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                r.add_term(ka + kb, &(ca * cb));
            }
        }
        r
    }
}

impl Neg for &TauScalar {
    type Output = TauScalar;
    fn neg(self) -> TauScalar {
        TauScalar {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for TauScalar {
    type Output = TauScalar;
    fn neg(self) -> TauScalar {
        -&self
    }
}

forward_owned_binop!(TauScalar, Add, add);
forward_owned_binop!(TauScalar, Sub, sub);
forward_owned_binop!(TauScalar, Mul, mul);

impl AddAssign<&TauScalar> for TauScalar {
    fn add_assign(&mut self, o: &TauScalar) {
        for (k, c) in &o.terms {
            self.add_term(*k, c);
        }
    }
}

impl SubAssign<&TauScalar> for TauScalar {
    fn sub_assign(&mut self, o: &TauScalar) {
        for (k, c) in &o.terms {
            self.add_term(*k, &-c);
        }
    }
}

impl MulAssign<&TauScalar> for TauScalar {
    fn mul_assign(&mut self, o: &TauScalar) {
        *self = &*self * o;
    }
}

impl Div<&TauScalar> for &TauScalar {
    type Output = Result<TauScalar>;
    fn div(self, o: &TauScalar) -> Result<TauScalar> {
        self.divide(o)
    }
}

impl From<GaussianRational> for TauScalar {
    fn from(c: GaussianRational) -> Self {
        TauScalar::monomial(c, 0)
    }
}

impl From<i64> for TauScalar {
    fn from(n: i64) -> Self {
        TauScalar::from_int(n)
    }
}

impl TauScalar {
    /// Render as a multiplicative factor in front of a monomial:
    /// `(negative, body)`, with an empty body meaning ±1.
    pub(crate) fn factor_parts(&self) -> (bool, String) {
        match self.as_monomial() {
            Some((c, 0)) => c.factor_parts(),
            Some((c, k)) => {
                let (neg, body) = c.factor_parts();
                let t = tau_factor(k);
                if body.is_empty() {
                    (neg, t)
                } else {
                    (neg, format!("{body}*{t}"))
                }
            }
            None => (false, format!("({self})")),
        }
    }
}

fn tau_factor(k: i32) -> String {
    if k == 1 {
        "tau".to_string()
    } else {
        format!("tau^{k}")
    }
}

impl fmt::Display for TauScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            let (neg, body) = if *k == 0 {
                let (neg, body) = c.factor_parts();
                (neg, if body.is_empty() { "1".to_string() } else { body })
            } else {
                let (neg, body) = c.factor_parts();
                let t = tau_factor(*k);
                (neg, if body.is_empty() { t } else { format!("{body}*{t}") })
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}
