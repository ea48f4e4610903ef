use std::fmt;
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::Reciprocal;
use malachite_base::num::basic::traits::{One, Zero};
use malachite_nz::natural::Natural;
use malachite_q::Rational;
use serde::{Deserialize, Serialize};

use super::LinError;

/// Field element. Prime-field elements are stored as integers in `[0, p)`.
pub type Scalar = Rational;

/// The ground field of every k-linear computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    #[default]
    Rationals,
    PrimeField { p: u64 },
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField { p } => write!(f, "F_{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = LinError;

    /// Accepts `Q`, `rationals`, `F_7`, `GF(7)`, `p=7` or a bare prime.
    fn from_str(s: &str) -> Result<Self, LinError> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        if lower == "q" || lower == "rationals" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = lower
            .trim_start_matches("f_")
            .trim_start_matches("gf(")
            .trim_start_matches("p=")
            .trim_start_matches("prime:")
            .trim_end_matches(')');
        let p: u64 = digits
            .parse()
            .map_err(|_| LinError::Parse(format!("unknown field `{t}`")))?;
        FieldSpec::prime(p)
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

fn as_u64(x: &Scalar) -> u64 {
    u64::try_from(x.numerator_ref()).expect("prime field element out of range")
}

fn pow_mod(mut b: u128, mut e: u64, p: u128) -> u128 {
    let mut acc = 1u128;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, LinError> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(LinError::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField { p })
    }

    pub fn zero(&self) -> Scalar {
        Rational::ZERO
    }

    pub fn one(&self) -> Scalar {
        Rational::ONE
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.reduce(Rational::from(n))
    }

    pub fn from_ratio(&self, n: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        self.reduce(Rational::from_signeds(n, d))
    }

    /// Maps an arbitrary rational into the field (for `F_p`, `n/d ↦ n·d⁻¹ mod p`).
    pub fn reduce(&self, x: Rational) -> Scalar {
        match *self {
            FieldSpec::Rationals => x,
            FieldSpec::PrimeField { p } => {
                let pn = Natural::from(p);
                let neg = x < 0u32;
                let n = u64::try_from(&(x.numerator_ref() % &pn)).unwrap() as u128;
                let d = u64::try_from(&(x.denominator_ref() % &pn)).unwrap() as u128;
                assert!(d != 0, "denominator divisible by {p}");
                let p128 = p as u128;
                let mut v = n * pow_mod(d, p - 2, p128) % p128;
                if neg && v != 0 {
                    v = p128 - v;
                }
                Rational::from(v as u64)
            }
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match *self {
            FieldSpec::Rationals => true,
            FieldSpec::PrimeField { p } => {
                *x >= 0u32 && *x.denominator_ref() == 1u32 && *x.numerator_ref() < p
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match *self {
            FieldSpec::Rationals => a + b,
            FieldSpec::PrimeField { p } => {
                Rational::from(((as_u64(a) as u128 + as_u64(b) as u128) % p as u128) as u64)
            }
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match *self {
            FieldSpec::Rationals => a - b,
            FieldSpec::PrimeField { p } => {
                let p = p as u128;
                Rational::from(((as_u64(a) as u128 + p - as_u64(b) as u128) % p) as u64)
            }
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.sub(&Rational::ZERO, a)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match *self {
            FieldSpec::Rationals => a * b,
            FieldSpec::PrimeField { p } => {
                Rational::from(((as_u64(a) as u128 * as_u64(b) as u128) % p as u128) as u64)
            }
        }
    }

    /// `a + b·c`
    pub fn mul_add(&self, a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
        match *self {
            FieldSpec::Rationals => a + b * c,
            FieldSpec::PrimeField { p } => {
                let p = p as u128;
                let v = (as_u64(a) as u128 + as_u64(b) as u128 * as_u64(c) as u128 % p) % p;
                Rational::from(v as u64)
            }
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if *a == 0u32 {
            return None;
        }
        Some(match *self {
            FieldSpec::Rationals => a.clone().reciprocal(),
            FieldSpec::PrimeField { p } => {
                Rational::from(pow_mod(as_u64(a) as u128, p - 2, p as u128) as u64)
            }
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// Parses `"3/4"`, `"-2"`, or `"2 mod 7"` (the modulus must match).
    pub fn parse(&self, s: &str) -> Result<Scalar, LinError> {
        let t = s.trim();
        let (body, modulus) = match t.split_once("mod") {
            Some((b, m)) => (b.trim(), Some(m.trim())),
            None => (t, None),
        };
        if let Some(m) = modulus {
            let m: u64 = m
                .parse()
                .map_err(|_| LinError::Parse(format!("bad modulus in `{t}`")))?;
            if *self != (FieldSpec::PrimeField { p: m }) {
                return Err(LinError::Parse(format!("`{t}` is not an element of {self}")));
            }
        }
        let x = Rational::from_str(body).map_err(|_| LinError::Parse(format!("bad scalar `{t}`")))?;
        if let FieldSpec::PrimeField { p } = *self {
            if (x.denominator_ref() % Natural::from(p)) == 0u32 {
                return Err(LinError::Parse(format!("`{t}` has a denominator divisible by {p}")));
            }
        }
        Ok(self.reduce(x))
    }

    pub fn format(&self, x: &Scalar) -> String {
        match *self {
            FieldSpec::Rationals => x.to_string(),
            FieldSpec::PrimeField { p } => format!("{x} mod {p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::prime(7).unwrap();
        let a = f.from_i64(5);
        let b = f.from_i64(4);
        assert_eq!(f.add(&a, &b), f.from_i64(2));
        assert_eq!(f.mul(&a, &b), f.from_i64(6));
        assert_eq!(f.sub(&b, &a), f.from_i64(6));
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        assert_eq!(f.from_ratio(1, 2), f.from_i64(4));
        assert_eq!(f.from_i64(-1), f.from_i64(6));
    }

    #[test]
    fn parse_and_format() {
        let q = FieldSpec::Rationals;
        assert_eq!(q.parse("3/4").unwrap(), Rational::from_signeds(3, 4));
        assert_eq!(q.format(&q.parse("-6/8").unwrap()), "-3/4");
        let f = FieldSpec::prime(7).unwrap();
        assert_eq!(f.parse("2 mod 7").unwrap(), f.from_i64(2));
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(4));
        assert!(f.parse("2 mod 5").is_err());
        assert!(f.parse("1/7").is_err());
        assert_eq!(f.format(&f.from_i64(3)), "3 mod 7");
        assert!(FieldSpec::prime(9).is_err());
        assert_eq!("F_5".parse::<FieldSpec>().unwrap(), FieldSpec::PrimeField { p: 5 });
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
    }
}
