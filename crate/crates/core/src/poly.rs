//! Exact polynomial and rational-function arithmetic in one variable `t`.
//!
//! Coefficients are arbitrary-precision integers stored densely, index = degree.
//! Rational functions are kept in a canonical reduced form (common polynomial
//! factors removed, unit content, positive leading denominator coefficient), so
//! structural equality and cross-multiplication equality coincide.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division is not exact; remainder {remainder}")]
    DivisionNotExact { remainder: IntPolynomial },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("reversal bound {bound} is below the degree {degree}")]
    InvalidBound { bound: usize, degree: usize },
    #[error("denominator vanishes at t = 0; no Taylor expansion")]
    PoleAtZero,
    #[error("series coefficient of t^{index} is not an integer: {value}")]
    NonIntegralSeries { index: usize, value: BigRational },
    #[error("rational function with zero denominator")]
    ZeroDenominator,
}

/// Polynomial in `t` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `t`
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    /// `c * t^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    /// `t - 1`
    pub fn t_minus_one() -> Self {
        Self::from_i64(&[-1, 1])
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^k`; zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Drop all terms of degree above `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        Self::new(self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }

    /// Largest `k` with `t^k` dividing `self`; zero for the zero polynomial.
    pub fn lowest_degree(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// `t^bound * p(1/t)`: the coefficient of `t^k` moves to `t^(bound-k)`.
    pub fn reverse(&self, bound: usize) -> Result<Self, PolyError> {
        match self.degree() {
            None => Ok(Self::zero()),
            Some(deg) if deg > bound => Err(PolyError::InvalidBound { bound, degree: deg }),
            Some(_) => {
                let mut coeffs = vec![BigInt::zero(); bound + 1];
                for (k, c) in self.coeffs.iter().enumerate() {
                    coeffs[bound - k] = c.clone();
                }
                Ok(Self::new(coeffs))
            }
        }
    }

    /// Quotient `self / divisor` when the division leaves no remainder in `Z[t]`.
    pub fn exact_divide(&self, divisor: &IntPolynomial) -> Result<Self, PolyError> {
        let (q, r) = self.div_rem_integral(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::DivisionNotExact { remainder: r })
        }
    }

    /// Long division that stays in `Z[t]`. Stops as soon as the leading
    /// coefficient of the running remainder is not divisible by the divisor's
    /// leading coefficient; the returned remainder is then the running one.
    fn div_rem_integral(&self, divisor: &IntPolynomial) -> Result<(Self, Self), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(dd).max(1)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let (q, r) = rem[top].div_rem(&lead);
            if !r.is_zero() {
                break;
            }
            let shift = top - dd;
            for (k, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] -= &q * c;
            }
            quot[shift] = q;
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// gcd of all coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// `self / content`, with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading_coefficient().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    fn pseudo_remainder(&self, divisor: &IntPolynomial) -> Self {
        let dd = divisor.degree().expect("nonzero divisor");
        let lead = &divisor.coeffs[dd];
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let lr = rem.coeffs[dr].clone();
            rem = &rem.scale(lead) - &divisor.scale(&lr).shift(dr - dd);
        }
        rem
    }

    /// Primitive gcd over `Z[t]` (primitive remainder sequence), positive leading
    /// coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPolynomial) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_remainder(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Lagrange-free conversion to rational coefficients.
    pub fn to_rational(&self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

fn write_terms<C: fmt::Display + Signed + One + Zero + Clone>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, C)>,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let unit = mag.is_one();
        match k {
            0 => write!(f, "{mag}")?,
            1 if unit => write!(f, "t")?,
            1 => write!(f, "{mag}t")?,
            _ if unit => write!(f, "t^{k}")?,
            _ => write!(f, "{mag}t^{k}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .map(|(k, c)| (k as i64, c.clone())),
        )
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(IntPolynomial, Add add, Sub sub, Mul mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

/// JSON integers where they fit in 64 bits, decimal strings beyond.
pub(crate) fn serialize_bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

struct BigIntSerde<'a>(&'a BigInt);

impl Serialize for BigIntSerde<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_bigint(self.0, s)
    }
}

struct BigIntVisitor;

impl<'de> Visitor<'de> for BigIntVisitor {
    type Value = BigInt;
    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "an integer or a decimal string")
    }
    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
        Ok(v.into())
    }
    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
        Ok(v.into())
    }
    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
        v.parse().map_err(|_| E::custom(format!("not an integer: {v:?}")))
    }
}

struct BigIntDe(BigInt);

impl<'de> Deserialize<'de> for BigIntDe {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(BigIntVisitor).map(BigIntDe)
    }
}

pub(crate) fn serialize_bigints<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&BigIntSerde(x))?;
    }
    seq.end()
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_bigints(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct SeqVisitor;
        impl<'de> Visitor<'de> for SeqVisitor {
            type Value = IntPolynomial;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an array of integer coefficients")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<IntPolynomial, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(BigIntDe(c)) = seq.next_element()? {
                    coeffs.push(c);
                }
                Ok(IntPolynomial::new(coeffs))
            }
        }
        d.deserialize_seq(SeqVisitor)
    }
}

/// Quotient of two integer polynomials, always in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalFunction {
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: IntPolynomial, den: IntPolynomial) -> Self {
        if num.is_zero() {
            return RationalFunction {
                num,
                den: IntPolynomial::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
            (
                num.exact_divide(&g).expect("gcd divides numerator"),
                den.exact_divide(&g).expect("gcd divides denominator"),
            )
        } else {
            (num, den)
        };
        let mut c = num.content().gcd(&den.content());
        if den.leading_coefficient().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        if !c.is_one() {
            num = IntPolynomial::new(num.coeffs.iter().map(|x| x / &c).collect());
            den = IntPolynomial::new(den.coeffs.iter().map(|x| x / &c).collect());
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: IntPolynomial) -> Self {
        RationalFunction {
            num: p,
            den: IntPolynomial::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(IntPolynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(IntPolynomial::one())
    }

    /// `t^k` for any integer `k`.
    pub fn t_pow(k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(IntPolynomial::monomial(1, k as usize))
        } else {
            RationalFunction {
                num: IntPolynomial::one(),
                den: IntPolynomial::monomial(1, (-k) as usize),
            }
        }
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The numerator when the denominator is `1`.
    pub fn as_polynomial(&self) -> Option<&IntPolynomial> {
        (self.den == IntPolynomial::one()).then_some(&self.num)
    }

    pub fn recip(&self) -> Result<Self, PolyError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RationalFunction) -> Result<Self, PolyError> {
        if rhs.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::canonical(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e >= 0 {
            self.clone()
        } else {
            self.recip().expect("nonzero base for negative power")
        };
        let k = e.unsigned_abs();
        RationalFunction {
            num: base.num.pow(k),
            den: base.den.pow(k),
        }
    }

    /// `f(1/t)`, computed as `reverse(num, D) / reverse(den, D)` with
    /// `D = max(deg num, deg den)`.
    pub fn substitute_reciprocal(&self) -> Self {
        let d = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        let num = self.num.reverse(d).expect("bound covers degree");
        let den = self.den.reverse(d).expect("bound covers degree");
        Self::canonical(num, den)
    }

    /// Equality by cross-multiplication.
    pub fn equals(&self, other: &RationalFunction) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// First `order + 1` Taylor coefficients at `t = 0`.
    pub fn series_expand(&self, order: usize) -> Result<Vec<BigRational>, PolyError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(PolyError::PoleAtZero);
        }
        let d0 = BigRational::from_integer(d0);
        let mut out: Vec<BigRational> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = BigRational::from_integer(self.num.coeff(k));
            for j in 1..=k.min(self.den.coeffs.len().saturating_sub(1)) {
                acc -= BigRational::from_integer(self.den.coeff(j)) * &out[k - j];
            }
            out.push(acc / &d0);
        }
        Ok(out)
    }

    /// Like [`series_expand`](Self::series_expand) but requires integral coefficients.
    pub fn series_expand_integral(&self, order: usize) -> Result<Vec<BigInt>, PolyError> {
        self.series_expand(order)?
            .into_iter()
            .enumerate()
            .map(|(index, v)| {
                if v.is_integer() {
                    Ok(v.to_integer())
                } else {
                    Err(PolyError::NonIntegralSeries { index, value: v })
                }
            })
            .collect()
    }
}

impl PartialEq<IntPolynomial> for RationalFunction {
    fn eq(&self, other: &IntPolynomial) -> bool {
        self.as_polynomial() == Some(other)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == IntPolynomial::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl From<IntPolynomial> for RationalFunction {
    fn from(p: IntPolynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_owned!(RationalFunction, Add add, Sub sub, Mul mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RationalFunction", 2)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: IntPolynomial,
            den: IntPolynomial,
        }
        let raw = Raw::deserialize(d)?;
        RationalFunction::new(raw.num, raw.den).map_err(de::Error::custom)
    }
}

/// `t^lowest * body(t)`, a polynomial in `t` and `1/t`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    lowest: i64,
    body: IntPolynomial,
}

impl LaurentPolynomial {
    pub fn new(lowest: i64, body: IntPolynomial) -> Self {
        if body.is_zero() {
            return LaurentPolynomial { lowest: 0, body };
        }
        let k = body.lowest_degree();
        let body = IntPolynomial::new(body.coeffs[k..].to_vec());
        LaurentPolynomial {
            lowest: lowest + k as i64,
            body,
        }
    }

    pub fn from_poly(p: IntPolynomial) -> Self {
        Self::new(0, p)
    }

    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        Self::new(k, IntPolynomial::constant(c))
    }

    /// Exponent of the lowest nonzero term (0 for the zero polynomial).
    pub fn lowest_exponent(&self) -> i64 {
        self.lowest
    }

    pub fn highest_exponent(&self) -> Option<i64> {
        self.body.degree().map(|d| self.lowest + d as i64)
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        if k < self.lowest {
            BigInt::zero()
        } else {
            self.body.coeff((k - self.lowest) as usize)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// No negative exponents.
    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || self.lowest >= 0
    }

    pub fn to_polynomial(&self) -> Option<IntPolynomial> {
        self.is_polynomial().then(|| {
            if self.is_zero() {
                IntPolynomial::zero()
            } else {
                self.body.shift(self.lowest as usize)
            }
        })
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        &RationalFunction::from_poly(self.body.clone()) * &RationalFunction::t_pow(self.lowest)
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.lowest.min(rhs.lowest);
        let a = self.body.shift((self.lowest - low) as usize);
        let b = rhs.body.shift((rhs.lowest - low) as usize);
        LaurentPolynomial::new(low, &a + &b)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            lowest: self.lowest,
            body: -&self.body,
        }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        LaurentPolynomial::new(self.lowest + rhs.lowest, &self.body * &rhs.body)
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.body
                .coeffs
                .iter()
                .enumerate()
                .rev()
                .map(|(k, c)| (self.lowest + k as i64, c.clone())),
        )
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LaurentPolynomial", 2)?;
        st.serialize_field("lowest_exponent", &self.lowest)?;
        st.serialize_field("coefficients", &self.body)?;
        st.end()
    }
}

/// Polynomial with exact rational coefficients (Ehrhart polynomials).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(x.into()))
    }

    /// Unique polynomial of degree `<= values.len() - 1` through
    /// `(0, values[0]), (1, values[1]), ...` (Newton forward differences).
    pub fn interpolate_from_zero(values: &[BigInt]) -> Self {
        Self::interpolate_from(0, values)
    }

    /// Interpolant through `(start + k, values[k])`.
    pub fn interpolate_from(start: i64, values: &[BigInt]) -> Self {
        // Newton form in the falling basis binom(x - start, k).
        let mut diffs: Vec<BigInt> = values.to_vec();
        let mut leading = Vec::with_capacity(values.len());
        for level in 0..values.len() {
            leading.push(diffs[0].clone());
            diffs = (0..values.len() - level - 1)
                .map(|i| &diffs[i + 1] - &diffs[i])
                .collect();
        }
        let mut result = RatPolynomial::default();
        // basis_k(x) = prod_{j<k} (x - start - j) / k!
        let mut basis = RatPolynomial::new(vec![BigRational::one()]);
        for (k, c) in leading.iter().enumerate() {
            result = result.add(&basis.scale(&BigRational::from_integer(c.clone())));
            let shift = BigRational::from_integer(BigInt::from(-(start + k as i64)));
            let factor = RatPolynomial::new(vec![shift, BigRational::one()]);
            basis = basis
                .mul(&factor)
                .scale(&BigRational::new(BigInt::one(), BigInt::from(k + 1)));
        }
        result
    }

    pub fn add(&self, rhs: &RatPolynomial) -> RatPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &RatPolynomial, k: usize| p.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero);
        RatPolynomial::new((0..len).map(|k| get(self, k) + get(rhs, k)).collect())
    }

    pub fn mul(&self, rhs: &RatPolynomial) -> RatPolynomial {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return RatPolynomial::default();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPolynomial::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().map(|x| x * c).collect())
    }
}

impl fmt::Debug for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPolynomial({self})")
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let mag_s = if mag.is_integer() {
                mag.to_integer().to_string()
            } else {
                format!("({mag})")
            };
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag_s}")?,
                (1, true) => write!(f, "m")?,
                (1, false) => write!(f, "{mag_s}m")?,
                (_, true) => write!(f, "m^{k}")?,
                (_, false) => write!(f, "{mag_s}m^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for RatPolynomial {
    /// Coefficients as `"p/q"` strings (or integers when integral).
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            if c.is_integer() {
                seq.serialize_element(&BigIntSerde(&c.to_integer()))?;
            } else {
                seq.serialize_element(&c.to_string())?;
            }
        }
        seq.end()
    }
}

/// `Σ_{m≥0} q(m) t^m` as a rational function, for a polynomial `q` of degree
/// at most `degree_bound` given by its values `q(0), ..., q(degree_bound)`.
pub fn polynomial_generating_function(values: &[BigInt]) -> RationalFunction {
    let r = values.len().saturating_sub(1);
    let denominator = IntPolynomial::from_i64(&[1, -1]).pow(r as u32 + 1);
    let partial = IntPolynomial::new(values.to_vec());
    let numerator = (&denominator * &partial).truncate(r);
    RationalFunction::canonical(numerator, denominator)
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Entrywise comparison helper for `≥` on coefficient vectors of unequal length.
pub fn dominates(a: &IntPolynomial, b: &IntPolynomial) -> bool {
    let len = a.coeffs.len().max(b.coeffs.len());
    (0..len).all(|k| a.coeff(k).cmp(&b.coeff(k)) != Ordering::Less)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(&[0, -1, 0, 1]).exact_divide(&p(&[-1, 1])).unwrap(), p(&[0, 1, 1]));
        match p(&[1, 0, 1]).exact_divide(&p(&[-1, 1])) {
            Err(PolyError::DivisionNotExact { remainder }) => assert_eq!(remainder, p(&[2])),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(p(&[1]).exact_divide(&IntPolynomial::zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn reversal() {
        assert_eq!(p(&[1, 1, 1]).reverse(2).unwrap(), p(&[1, 1, 1]));
        assert_eq!(p(&[1, 2]).reverse(3).unwrap(), p(&[0, 0, 2, 1]));
        assert_eq!(p(&[0, -1, 0, 1]).reverse(3).unwrap(), p(&[1, 0, -1]));
        assert_eq!(
            p(&[1, 1, 1]).reverse(1),
            Err(PolyError::InvalidBound { bound: 1, degree: 2 })
        );
    }

    #[test]
    fn zero_degree_is_sentinel() {
        assert_eq!(IntPolynomial::zero().degree(), None);
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[3]).degree(), Some(0));
    }

    #[test]
    fn rational_function_ops() {
        assert!(rf(&[-1, 0, 1], &[-1, 1]).equals(&rf(&[1, 1], &[1])));
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), rf(&[1, 1], &[1]));
        let g = rf(&[1], &[1, -1]);
        assert_eq!(&g * &g, rf(&[1], &[1, -2, 1]));
        let e = rf(&[1, 1], &[1, -2, 1]);
        assert_eq!(e.substitute_reciprocal(), rf(&[0, 1, 1], &[1, -2, 1]));
        assert_eq!(&rf(&[1], &[0, 1]) + &rf(&[1], &[0, 1]), rf(&[2], &[0, 1]));
    }

    #[test]
    fn canonical_sign_and_content() {
        let f = rf(&[2, 2], &[-4, 0]);
        assert_eq!(f.numerator(), &p(&[-1, -1]));
        assert_eq!(f.denominator(), &p(&[2]));
        assert_eq!(RationalFunction::new(p(&[1]), IntPolynomial::zero()), Err(PolyError::ZeroDenominator));
    }

    #[test]
    fn series() {
        assert_eq!(rf(&[1, 1], &[1, -2, 1]).series_expand_integral(3).unwrap(), ints(&[1, 3, 5, 7]));
        assert_eq!(rf(&[1], &[1, -1]).series_expand_integral(2).unwrap(), ints(&[1, 1, 1]));
        assert_eq!(
            rf(&[1, 1], &[1, -3, 3, -1]).series_expand_integral(2).unwrap(),
            ints(&[1, 4, 9])
        );
        assert_eq!(rf(&[1], &[0, 1]).series_expand(2), Err(PolyError::PoleAtZero));
        let half = rf(&[1], &[2]).series_expand(1).unwrap();
        assert_eq!(half[0], BigRational::new(1.into(), 2.into()));
        assert!(matches!(
            rf(&[1], &[2]).series_expand_integral(1),
            Err(PolyError::NonIntegralSeries { index: 0, .. })
        ));
    }

    #[test]
    fn gcd_cancels_common_factor() {
        let a = &p(&[-1, 1]) * &p(&[2, 3]);
        let b = &p(&[-1, 1]) * &p(&[5, 0, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn interpolation_recovers_square() {
        let vals = ints(&[1, 4, 9]);
        let q = RatPolynomial::interpolate_from_zero(&vals);
        assert_eq!(q, p(&[1, 2, 1]).to_rational());
        let shifted = RatPolynomial::interpolate_from(1, &ints(&[1, 3, 5]));
        assert_eq!(shifted, p(&[-1, 2]).to_rational());
    }

    #[test]
    fn generating_function_of_polynomial_values() {
        let gf = polynomial_generating_function(&ints(&[1, 3]));
        assert_eq!(gf, rf(&[1, 1], &[1, -2, 1]));
    }

    #[test]
    fn laurent_normalizes() {
        let l = LaurentPolynomial::new(-3, p(&[0, 0, 1]));
        assert_eq!(l.lowest_exponent(), -1);
        assert!(!l.is_polynomial());
        let sum = &l + &LaurentPolynomial::monomial(-1, -1);
        assert!(sum.is_zero() && sum.is_polynomial());
        assert_eq!(l.to_string(), "t^-1");
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, -1, 0, 1]).to_string(), "t^3 - t");
        assert_eq!(p(&[1, 6, 1]).to_string(), "t^2 + 6t + 1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let big = IntPolynomial::new(vec![BigInt::from(1) << 70, BigInt::from(-2)]);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, "[\"1180591620717411303424\",-2]");
        let back: IntPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, big);
        let f = rf(&[1, 1], &[1, -2, 1]);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"num":[1,1],"den":[1,-2,1]}"#);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 4), BigInt::zero());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_poly() -> impl Strategy<Value = IntPolynomial> {
            proptest::collection::vec(-5i64..=5, 0..6).prop_map(|v| IntPolynomial::from_i64(&v))
        }

        fn nonzero_poly() -> impl Strategy<Value = IntPolynomial> {
            small_poly().prop_filter("nonzero", |p| !p.is_zero())
        }

        proptest! {
            #[test]
            fn reverse_is_involution(q in small_poly(), extra in 0usize..4) {
                let d = q.degree().unwrap_or(0) + extra;
                prop_assert_eq!(q.reverse(d).unwrap().reverse(d).unwrap(), q);
            }

            #[test]
            fn common_factor_cancels(a in small_poly(), b in nonzero_poly(), s in nonzero_poly()) {
                let lhs = RationalFunction::new(&a * &s, &b * &s).unwrap();
                let rhs = RationalFunction::new(a, b).unwrap();
                prop_assert!(lhs.equals(&rhs));
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn product_divides_back(a in small_poly(), b in nonzero_poly()) {
                prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), a);
            }

            #[test]
            fn series_of_product_matches(a in small_poly(), k in 0u32..4) {
                // a / (1 - t)^k times (1 - t)^k gives back a.
                let den = IntPolynomial::from_i64(&[1, -1]).pow(k);
                let f = RationalFunction::new(a.clone(), den.clone()).unwrap();
                let coeffs = f.series_expand_integral(8).unwrap();
                let back = (&IntPolynomial::new(coeffs) * &den).truncate(8);
                prop_assert_eq!(back, a.truncate(8));
            }
        }
    }
}
