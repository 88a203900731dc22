use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// The ground field: characteristic 0 means the rationals, otherwise GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    #[serde(rename = "char")]
    characteristic: u64,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    /// Largest supported prime; keeps residue products inside a `u64`.
    pub const MAX_PRIME: u64 = u32::MAX as u64;

    pub fn new(characteristic: u64) -> Result<Self, LinalgError> {
        if characteristic == 0 {
            return Ok(Self::RATIONALS);
        }
        if characteristic > Self::MAX_PRIME || !is_prime(characteristic) {
            return Err(LinalgError::BadCharacteristic(characteristic));
        }
        Ok(FieldSpec { characteristic })
    }

    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        if p == 0 {
            return Err(LinalgError::BadCharacteristic(0));
        }
        Self::new(p)
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(&self) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rational(BigRational::zero()),
            p => Scalar::Residue { value: 0, modulus: p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            p => Scalar::Residue { value: n.rem_euclid(p as i64) as u64, modulus: p },
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, LinalgError> {
        let d = self.from_i64(den);
        let inv = d.inv().ok_or(LinalgError::DivisionByZero)?;
        Ok(&self.from_i64(num) * &inv)
    }

    /// Parses "3", "-2", "3/2". Over GF(p) a fraction is interpreted as num·den⁻¹.
    pub fn parse(&self, text: &str) -> Result<Scalar, LinalgError> {
        let text = text.trim();
        let bad = || LinalgError::Parse(text.to_string());
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().map_err(|_| bad())?,
                d.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (text.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(LinalgError::DivisionByZero);
        }
        match self.characteristic {
            0 => Ok(Scalar::Rational(BigRational::new(num, den))),
            p => {
                let pb = BigInt::from(p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = ((x % &pb) + &pb) % &pb;
                    r.to_u64().expect("residue fits")
                };
                let n = Scalar::Residue { value: reduce(&num), modulus: p };
                let d = Scalar::Residue { value: reduce(&den), modulus: p };
                let dinv = d.inv().ok_or(LinalgError::DivisionByZero)?;
                Ok(&n * &dinv)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "GF({p})"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::RATIONALS,
            Scalar::Residue { modulus, .. } => FieldSpec { characteristic: *modulus },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    /// Small integers only; used for printing and seeded sampling.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) if q.is_integer() => q.to_integer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => i64::try_from(*value).ok(),
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            (Scalar::Residue { value, modulus }, Scalar::Residue { value: b, modulus: m }) => {
                debug_assert_eq!(modulus, m);
                *value = (*value + b) % *modulus;
            }
            _ => panic!("mixed fields"),
        }
    }

    /// self -= a·b without allocating an intermediate where possible.
    pub fn sub_mul_assign(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        match (self, a, b) {
            (Scalar::Rational(s), Scalar::Rational(x), Scalar::Rational(y)) => *s -= x * y,
            (
                Scalar::Residue { value, modulus },
                Scalar::Residue { value: x, .. },
                Scalar::Residue { value: y, .. },
            ) => {
                let prod = (x * y) % *modulus;
                *value = (*value + *modulus - prod) % *modulus;
            }
            _ => panic!("mixed fields"),
        }
    }

    pub fn add_mul_assign(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        match (self, a, b) {
            (Scalar::Rational(s), Scalar::Rational(x), Scalar::Rational(y)) => *s += x * y,
            (
                Scalar::Residue { value, modulus },
                Scalar::Residue { value: x, .. },
                Scalar::Residue { value: y, .. },
            ) => {
                *value = (*value + (x * y) % *modulus) % *modulus;
            }
            _ => panic!("mixed fields"),
        }
    }

    /// Numerator and denominator as integers when over ℚ.
    pub(crate) fn rational_parts(&self) -> Option<(BigInt, BigInt)> {
        self.as_rational().map(|q| (q.numer().clone(), q.denom().clone()))
    }
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { value: (a + modulus - b) % modulus, modulus: *modulus }
            }
            _ => panic!("mixed fields"),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { value: a * b % modulus, modulus: *modulus }
            }
            _ => panic!("mixed fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: (modulus - value) % modulus, modulus: *modulus }
            }
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_characteristic() {
        assert!(FieldSpec::new(6).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(7).is_ok());
    }

    #[test]
    fn residue_inverse() {
        let f = FieldSpec::prime(7).unwrap();
        assert_eq!(f.from_i64(2).inv().unwrap(), f.from_i64(4));
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn parse_fractions() {
        let q = FieldSpec::RATIONALS;
        assert_eq!(q.parse("3/2").unwrap().to_string(), "3/2");
        assert_eq!(q.parse("-4/2").unwrap().to_string(), "-2");
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(3));
        assert_eq!(f.parse("-1").unwrap(), f.from_i64(4));
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("abc").is_err());
    }
}
