//! Elements of the Gaussian field Q(i).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rational) -> Rational {
    let (n, d) = (r.numer(), r.denom());
    if !n.is_negative() && n < d {
        return r.clone();
    }
    // gcd(n mod d, d) = gcd(n, d) = 1, so the result is already reduced
    Rational::new_raw(n.mod_floor(d), d.clone())
}

/// Builds `n/d` from machine integers. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// An exact element `re + im·i` of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(Rational::from_integer(n.into()), Rational::zero())
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(Rational::from_integer(re.into()), Rational::from_integer(im.into()))
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// Field norm `re² + im²`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidScalar("inverse of zero".into()));
        }
        let n = self.norm();
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// True when both components are integers, i.e. the value lies in Z[i].
    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplication by `i^n`.
    pub fn mul_i_pow(&self, n: u8) -> Self {
        match n % 4 {
            0 => self.clone(),
            1 => Self::new(-&self.im, self.re.clone()),
            2 => -self,
            _ => Self::new(self.im.clone(), -&self.re),
        }
    }

    /// Reduces both components into `[0, 1)`, i.e. modulo Z[i].
    pub fn reduce_mod_gaussian_integers(&self) -> Self {
        Self::new(frac(&self.re), frac(&self.im))
    }

    /// Least common multiple of the two component denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
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

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        // one-component factors dominate: blade images have unit entries
        if o.im.is_zero() {
            return GaussianRational::new(&self.re * &o.re, &self.im * &o.re);
        }
        if o.re.is_zero() {
            return GaussianRational::new(-(&self.im * &o.im), &self.re * &o.im);
        }
        if self.im.is_zero() {
            return GaussianRational::new(&self.re * &o.re, &self.re * &o.im);
        }
        if self.re.is_zero() {
            return GaussianRational::new(-(&self.im * &o.im), &self.im * &o.re);
        }
        GaussianRational::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                (&self).$m(&o)
            }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &GaussianRational) -> GaussianRational {
                (&self).$m(o)
            }
        }
        impl $tr<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

/// Canonical text form: `a/b+c/di`, with zero parts omitted and unit
/// imaginary parts written `i` / `-i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_text = |im: &Rational| -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "-i".to_string()
            } else {
                format!("{im}i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", im_text(&self.im)),
            (false, false) => {
                if self.im.is_positive() {
                    write!(f, "{}+{}", self.re, im_text(&self.im))
                } else {
                    write!(f, "{}{}", self.re, im_text(&self.im))
                }
            }
        }
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts sums of signed parts, each a rational `a` / `a/b` optionally
    /// suffixed by `i`, or a bare `i`: `3/2`, `-i`, `5/4-1/2i`, `1+i`.
    fn from_str(s: &str) -> Result<Self> {
        parse_gaussian_at(s, 0)
    }
}

/// Parses a Gaussian-rational literal; `base` offsets error positions.
pub(crate) fn parse_gaussian_at(s: &str, base: usize) -> Result<GaussianRational> {
    let bytes = s.as_bytes();
    let err = |pos: usize, message: &str| Error::Syntax { offset: base + pos, message: message.to_string() };
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let read_uint = |pos: &mut usize| -> Option<BigInt> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (start < *pos).then(|| s[start..*pos].parse().expect("digits"))
    };

    let mut value = GaussianRational::zero();
    let mut parts = 0;
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(err(pos, "empty scalar literal"));
    }
    while pos < bytes.len() {
        let mut negative = false;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            negative = bytes[pos] == b'-';
            pos += 1;
            skip_ws(&mut pos);
        } else if parts > 0 {
            return Err(err(pos, "expected '+' or '-'"));
        }
        let magnitude = match read_uint(&mut pos) {
            Some(n) => {
                let mut r = Rational::from_integer(n);
                if pos < bytes.len() && bytes[pos] == b'/' {
                    pos += 1;
                    let d = read_uint(&mut pos).ok_or_else(|| err(pos, "expected denominator"))?;
                    if d.is_zero() {
                        return Err(err(pos, "zero denominator"));
                    }
                    r /= Rational::from_integer(d);
                }
                Some(r)
            }
            None => None,
        };
        skip_ws(&mut pos);
        let imaginary = pos < bytes.len() && bytes[pos] == b'i';
        if imaginary {
            pos += 1;
        }
        let magnitude = match (magnitude, imaginary) {
            (Some(r), _) => r,
            (None, true) => Rational::one(),
            (None, false) => return Err(err(pos, "expected number or 'i'")),
        };
        let magnitude = if negative { -magnitude } else { magnitude };
        let part = if imaginary {
            GaussianRational::new(Rational::zero(), magnitude)
        } else {
            GaussianRational::real(magnitude)
        };
        value += &part;
        parts += 1;
        skip_ws(&mut pos);
    }
    Ok(value)
}
