use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest characteristic accepted for prime fields. Products of two
/// residues then fit comfortably in a `u64`.
pub const MAX_CHARACTERISTIC: u64 = (1 << 31) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    PrimeField,
    Rationals,
}

/// Coefficient field: a prime field `F_p` or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    // 0 encodes Q
    characteristic: u64,
}

/// A field element. Prime-field residues are stored reduced in `[0, p)`,
/// rationals in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod(u64),
    Rat(BigRational),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_CHARACTERISTIC || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec { characteristic: p })
    }

    pub fn rationals() -> Self {
        Self::RATIONALS
    }

    pub fn kind(&self) -> FieldKind {
        if self.characteristic == 0 {
            FieldKind::Rationals
        } else {
            FieldKind::PrimeField
        }
    }

    /// `Some(p)` for `F_p`, `None` for Q.
    pub fn characteristic(&self) -> Option<u64> {
        (self.characteristic != 0).then_some(self.characteristic)
    }

    pub fn zero(&self) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::zero()),
            _ => Scalar::Mod(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::one()),
            _ => Scalar::Mod(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            p => Scalar::Mod(v.rem_euclid(p as i64) as u64),
        }
    }

    /// `num / den` in this field. Panics if `den` is zero in the field.
    pub fn ratio(&self, num: i64, den: i64) -> Scalar {
        self.mul(&self.from_i64(num), &self.inv(&self.from_i64(den)))
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (s, self.characteristic) {
            (Scalar::Rat(_), 0) => true,
            (Scalar::Mod(v), p) if p != 0 => *v < p,
            _ => false,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % self.characteristic),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + self.characteristic - y) % self.characteristic),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod(x * y % self.characteristic),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Mod(0) => Scalar::Mod(0),
            Scalar::Mod(x) => Scalar::Mod(self.characteristic - x),
            Scalar::Rat(x) => Scalar::Rat(-x),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match a {
            Scalar::Mod(x) => Scalar::Mod(inv_mod(*x, self.characteristic)),
            Scalar::Rat(x) => Scalar::Rat(x.recip()),
        }
    }

    /// Parses the canonical textual encoding: residues `0..p` for prime
    /// fields, `"a/b"` (lowest terms, `b > 0`) or `"a"` for rationals.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        match self.characteristic {
            0 => parse_rational(text).map(Scalar::Rat),
            p => {
                let v: i128 = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("not an integer: {text:?}")))?;
                if v < 0 || v >= p as i128 {
                    return Err(Error::Field(format!("{v} is not a residue in [0, {p})")));
                }
                Ok(Scalar::Mod(v as u64))
            }
        }
    }
}

fn inv_mod(x: u64, p: u64) -> u64 {
    let (mut a, mut b) = (x as i64, p as i64);
    let (mut u, mut v) = (1i64, 0i64);
    while b != 0 {
        let q = a / b;
        (a, b) = (b, a - q * b);
        (u, v) = (v, u - q * v);
    }
    debug_assert_eq!(a, 1);
    u.rem_euclid(p as i64) as u64
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("malformed rational {text:?}"));
    let parse_int = |s: &str| -> Result<BigInt> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    match text.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(text)?)),
        Some((n, d)) => {
            let num = parse_int(n)?;
            let den = parse_int(d)?;
            if !den.is_positive() {
                return Err(Error::Parse(format!("denominator must be positive in {text:?}")));
            }
            if !num.gcd(&den).is_one() {
                return Err(Error::Parse(format!("{text:?} is not in lowest terms")));
            }
            Ok(BigRational::new_raw(num, den))
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod(v) => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(v) => write!(f, "{v}"),
            Scalar::Rat(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Scalar::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F_{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_is_checked() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(7919).is_ok());
        assert_eq!(FieldSpec::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldSpec::prime(91), Err(Error::NotPrime(91)));
        assert!(FieldSpec::prime(0).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::prime(7).unwrap();
        let three = f.from_i64(3);
        assert_eq!(f.mul(&three, &f.inv(&three)), f.one());
        assert_eq!(f.from_i64(-1), Scalar::Mod(6));
        assert_eq!(f.sub(&Scalar::Mod(2), &Scalar::Mod(5)), Scalar::Mod(4));
        for x in 1..7 {
            let s = Scalar::Mod(x);
            assert!(f.mul(&s, &f.inv(&s)).is_one());
        }
    }

    #[test]
    fn rational_encoding() {
        let q = FieldSpec::rationals();
        assert_eq!(q.parse_scalar("-3/4").unwrap().to_string(), "-3/4");
        assert_eq!(q.parse_scalar("5").unwrap().to_string(), "5");
        assert_eq!(q.ratio(2, 4).to_string(), "1/2");
        assert!(matches!(q.parse_scalar("2/4"), Err(Error::Parse(_))));
        assert!(matches!(q.parse_scalar("1/-2"), Err(Error::Parse(_))));
        assert!(matches!(q.parse_scalar("1/0"), Err(Error::Parse(_))));
        assert!(matches!(q.parse_scalar("x"), Err(Error::Parse(_))));
    }

    #[test]
    fn residue_range() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(f.parse_scalar("4").unwrap(), Scalar::Mod(4));
        assert!(matches!(f.parse_scalar("5"), Err(Error::Field(_))));
        assert!(matches!(f.parse_scalar("-1"), Err(Error::Field(_))));
    }
}
