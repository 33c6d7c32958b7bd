use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LinalgError;

/// Coefficient field for exact computations: the rationals or a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

/// An element of a [`FieldSpec`].
///
/// Residues are always stored reduced into `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a is a nonzero residue.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

impl FieldSpec {
    pub const Q: FieldSpec = FieldSpec::Rationals;
    pub const F2: FieldSpec = FieldSpec::Prime(2);
    pub const F3: FieldSpec = FieldSpec::Prime(3);

    /// The prime field `F_p`, rejecting composite moduli.
    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(_) => Scalar::Residue(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::one()),
            FieldSpec::Prime(_) => Scalar::Residue(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.into())),
            FieldSpec::Prime(p) => Scalar::Residue(v.rem_euclid(*p as i64) as u64),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Scalar::Residue(r.to_u64().expect("residue fits"))
            }
        }
    }

    /// Maps a rational into the field; fails over `F_p` when `p` divides the denominator.
    pub fn from_rational(&self, v: &BigRational) -> Result<Scalar, LinalgError> {
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rational(v.clone())),
            FieldSpec::Prime(p) => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                match (num, den) {
                    (Scalar::Residue(_), Scalar::Residue(0)) => {
                        Err(LinalgError::NotRepresentable(v.to_string(), *p))
                    }
                    (Scalar::Residue(n), Scalar::Residue(d)) => {
                        Ok(Scalar::Residue(mul_mod(n, inv_mod(d, *p), *p)))
                    }
                    _ => unreachable!(),
                }
            }
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (FieldSpec::Rationals, Scalar::Rational(_)) => true,
            (FieldSpec::Prime(p), Scalar::Residue(r)) => r < p,
            _ => false,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x + y)
            }
            (FieldSpec::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (FieldSpec::Prime(p), Scalar::Residue(x)) => Scalar::Residue((p - x) % p),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x * y)
            }
            (FieldSpec::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(mul_mod(*x, *y, *p))
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        Some(match (self, a) {
            (FieldSpec::Rationals, Scalar::Rational(x)) => Scalar::Rational(x.recip()),
            (FieldSpec::Prime(p), Scalar::Residue(x)) => Scalar::Residue(inv_mod(*x, *p)),
            _ => panic!("scalar does not belong to {self}"),
        })
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Residue(r) => *r == 0,
        }
    }

    /// Canonical text form: `"p/q"` (or `"p"` when integral) for rationals, the residue otherwise.
    pub fn to_text(&self) -> String {
        match self {
            Scalar::Rational(x) => x.to_string(),
            Scalar::Residue(r) => r.to_string(),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(x) if x.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, LinalgError> {
    let bad = || LinalgError::BadScalar(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = LinalgError;

    /// Accepts `"Q"` and `"F<p>"` for a prime `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = t.strip_prefix('F') {
            if let Ok(p) = rest.parse::<u64>() {
                return FieldSpec::prime(p);
            }
        }
        Err(LinalgError::UnknownField(s.to_string()))
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_tokens() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("F7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert!("F6".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(5).to_string(), "F5");
    }

    #[test]
    fn prime_arithmetic() {
        let f = FieldSpec::Prime(7);
        let a = f.from_i64(-3);
        assert_eq!(a, Scalar::Residue(4));
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), f.one());
        assert_eq!(f.from_rational(&parse_rational("1/2").unwrap()).unwrap(), Scalar::Residue(4));
        assert!(FieldSpec::F2.from_rational(&parse_rational("1/2").unwrap()).is_err());
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(12), vec![2, 3]);
        assert_eq!(prime_factors(97), vec![97]);
        assert!(prime_factors(1).is_empty());
    }
}
