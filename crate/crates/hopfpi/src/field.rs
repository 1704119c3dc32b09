//! Exact ground fields: the rationals and prime fields GF(p).
//!
//! A [`Field`] is a small copyable descriptor used to manufacture constants.
//! A [`Scalar`] carries its own field tag, so arithmetic needs no context.
//! Combining scalars from different fields is a programming error and panics.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    /// The rational numbers with arbitrary-precision numerators and denominators.
    Rational,
    /// The prime field of the given order.
    Prime(u64),
}

impl Field {
    /// Builds GF(p), rejecting `p` that is not prime or does not fit in 32 bits.
    pub fn prime(p: u64) -> Result<Field> {
        if p > u64::from(u32::MAX) {
            return Err(Error::Field(format!("modulus {p} exceeds 32 bits")));
        }
        if !is_prime(p) {
            return Err(Error::Field(format!("modulus {p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Modular {
                value: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    /// The fraction `num / den`, or `None` when `den` vanishes in the field.
    pub fn fraction(self, num: i64, den: i64) -> Option<Scalar> {
        self.from_i64(den).inv().map(|d| &self.from_i64(num) * &d)
    }

    /// Parses a scalar in the exact text syntax: `"p/q"` or `"n"` for the
    /// rationals and a decimal integer for prime fields.
    pub fn parse(self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::Parse(format!("malformed scalar {text:?}"));
        match self {
            Field::Rational => {
                let (num, den) = match text.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (text, "1"),
                };
                let num: BigInt = num.parse().map_err(|_| bad())?;
                let den: BigInt = den.parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {text:?}")));
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            Field::Prime(p) => {
                let n: BigInt = text.parse().map_err(|_| bad())?;
                let r = ((n % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                let value = u64::try_from(r).map_err(|_| bad())?;
                Ok(Scalar::Modular { value, p })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact element of a [`Field`].
///
/// Rationals are kept in lowest terms with a positive denominator, residues
/// satisfy `0 <= value < p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, p } => Scalar::Modular {
                value: pow_mod(*value, *p - 2, *p),
                p: *p,
            },
        })
    }

    /// Integer power, negative exponents allowed for nonzero scalars.
    pub fn pow(&self, e: i64) -> Option<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field().one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    /// Writes the scalar in the exact text syntax accepted by [`Field::parse`].
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!(
        "scalars from different fields: {} and {}",
        a.field(),
        b.field()
    )
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, p }, Scalar::Modular { value: b, p: q }) if p == q => {
                Scalar::Modular {
                    value: ((u128::from(*a) + u128::from(*b)) % u128::from(*p)) as u64,
                    p: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, p }, Scalar::Modular { value: b, p: q }) if p == q => {
                Scalar::Modular {
                    value: mul_mod(*a, *b, *p),
                    p: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, p } => Scalar::Modular {
                value: (*p - *value) % *p,
                p: *p,
            },
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            _ => *self = &*self + rhs,
        }
    }
}

/// True when the rational scalar is negative; residues are never negative.
pub fn is_negative(s: &Scalar) -> bool {
    matches!(s, Scalar::Rational(r) if r.is_negative())
}
