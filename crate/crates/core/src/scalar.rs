//! Exact rational scalars and vectors.
//!
//! Everything in the kernel is computed over `Q`. Euclidean norms are never
//! formed; comparisons go through squared norms.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Index, IndexMut, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact rational number, always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Scalar(BigRational::from_integer(v))
    }

    /// `num / den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big_ratio(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Scalar(BigRational::new(num, den)))
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    /// `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar(self.0.recip()))
        }
    }

    pub fn ceil_int(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Smallest nonnegative integer `r` with `r * r >= self`, for `self >= 0`.
    pub fn sqrt_ceil(&self) -> BigInt {
        if !self.is_positive() {
            return BigInt::zero();
        }
        let c = self.ceil_int();
        let r = num_integer::Roots::sqrt(&c);
        if &r * &r < c {
            r + 1
        } else {
            r
        }
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Decimal rendering rounded to `digits` significant digits. Display only.
    pub fn to_decimal(&self, digits: u32) -> String {
        decimal_string(&self.0, digits)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar(v)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error from parsing the `"p/q"` / `"p"` textual form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScalarError {
    pub input: String,
}

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational `{}`", self.input)
    }
}

impl core::error::Error for ParseScalarError {}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError {
            input: s.to_string(),
        };
        let t = s.trim();
        let parse_int = |x: &str| -> Option<BigInt> {
            let x = x.trim();
            let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            x.parse::<BigInt>().ok()
        };
        match t.split_once('/') {
            Some((n, d)) => {
                let n = parse_int(n).ok_or_else(err)?;
                let d = parse_int(d).ok_or_else(err)?;
                Scalar::from_big_ratio(n, d).ok_or_else(err)
            }
            None => parse_int(t).map(Scalar::from_bigint).ok_or_else(err),
        }
    }
}

fn decimal_string(v: &BigRational, digits: u32) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let neg = v.is_negative();
    let a = v.abs();
    let ten = BigInt::from(10);
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e: i64 = 0;
    let mut scaled = a.clone();
    let ten_r = BigRational::from_integer(ten.clone());
    while scaled >= ten_r {
        scaled /= &ten_r;
        e += 1;
    }
    while scaled < BigRational::one() {
        scaled *= &ten_r;
        e -= 1;
    }
    // integer mantissa with `digits` digits, rounded half away from zero
    let shift = digits as i64 - 1 - e;
    let pow = |k: i64| -> BigInt { num_traits::pow(ten.clone(), k as usize) };
    let m = if shift >= 0 {
        &a * BigRational::from_integer(pow(shift))
    } else {
        &a / BigRational::from_integer(pow(-shift))
    };
    let twice = &m * BigRational::from_integer(BigInt::from(2));
    let mut mant = (twice.to_integer() + BigInt::one()).div_floor(&BigInt::from(2));
    let mut shift = shift;
    if mant >= pow(digits as i64) {
        mant /= &ten;
        shift -= 1;
    }
    let s = mant.to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if shift <= 0 {
        out.push_str(&s);
        for _ in 0..(-shift) {
            out.push('0');
        }
        return out;
    }
    let shift = shift as usize;
    let (int_part, frac_part) = if s.len() > shift {
        (s[..s.len() - shift].to_string(), s[s.len() - shift..].to_string())
    } else {
        let mut f = String::new();
        for _ in 0..(shift - s.len()) {
            f.push('0');
        }
        f.push_str(&s);
        ("0".to_string(), f)
    };
    let frac = frac_part.trim_end_matches('0');
    out.push_str(&int_part);
    if !frac.is_empty() {
        out.push('.');
        out.push_str(frac);
    }
    out
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl core::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

/// A vector (or point) of fixed ambient dimension with rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Vector(Vec<Scalar>);

/// Points and vectors share a representation.
pub type Point = Vector;

impl Vector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(alloc::vec![Scalar::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = Scalar::one();
        v
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> Scalar {
        self.dot(self)
    }

    pub fn dist_sq(&self, other: &Vector) -> Scalar {
        (self - other).norm_sq()
    }

    pub fn scale(&self, k: &Scalar) -> Vector {
        Vector(self.0.iter().map(|c| c * k).collect())
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> Scalar {
        self.0
            .iter()
            .map(Scalar::abs)
            .max()
            .unwrap_or_else(Scalar::zero)
    }

    /// Positive multiple with coprime integer coordinates. Zero stays zero.
    pub fn primitive(&self) -> Vector {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for c in &self.0 {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for i in &ints {
            g = g.gcd(i);
        }
        Vector(ints.into_iter().map(|i| Scalar::from_bigint(i / &g)).collect())
    }

    /// True if `other = t * self` for some `t > 0`.
    pub fn positively_parallel(&self, other: &Vector) -> bool {
        !self.is_zero() && !other.is_zero() && self.primitive() == other.primitive()
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.0[i]
    }
}

impl Add<&Vector> for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), rhs.dim());
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Vector> for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), rhs.dim());
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromIterator<Scalar> for Vector {
    fn from_iter<I: IntoIterator<Item = Scalar>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

/// Lexicographic comparison, used for deterministic ordering of points.
pub fn lex_cmp(a: &Vector, b: &Vector) -> Ordering {
    a.0.cmp(&b.0)
}
