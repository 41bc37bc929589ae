use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

/// Exact scalar storage shared by every domain. Integer and prime-field
/// matrices only ever hold integral values.
pub type Scalar = BigRational;

/// Coefficient ring for modules and matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientDomain {
    Rationals,
    Integers,
    PrimeField(u64),
}

impl CoefficientDomain {
    /// Validated prime field constructor.
    pub fn prime_field(p: u64) -> Result<Self, Error> {
        if is_prime(p) {
            Ok(CoefficientDomain::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientDomain::Integers)
    }

    /// Canonical representative of `x` in this domain.
    ///
    /// Panics if `x` is not integral and the domain is not the rationals.
    pub fn normalize(&self, x: Scalar) -> Scalar {
        match self {
            CoefficientDomain::Rationals => x,
            CoefficientDomain::Integers => {
                assert!(x.is_integer(), "non-integral entry {x} over Z");
                x
            }
            CoefficientDomain::PrimeField(p) => {
                assert!(x.is_integer(), "non-integral entry {x} over F_{p}");
                let r = x.to_integer().mod_floor(&BigInt::from(*p));
                BigRational::from_integer(r)
            }
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match self {
            CoefficientDomain::Rationals => true,
            CoefficientDomain::Integers => x.is_integer(),
            CoefficientDomain::PrimeField(p) => {
                x.is_integer() && {
                    let v = x.to_integer();
                    v >= BigInt::zero() && v < BigInt::from(*p)
                }
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.normalize(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.normalize(-a)
    }
}

impl fmt::Display for CoefficientDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientDomain::Rationals => write!(f, "Q"),
            CoefficientDomain::Integers => write!(f, "Z"),
            CoefficientDomain::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for CoefficientDomain {
    type Err = Error;

    /// Accepts `Q`, `Z` and `F<p>` for a prime `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Q" | "q" => Ok(CoefficientDomain::Rationals),
            "Z" | "z" => Ok(CoefficientDomain::Integers),
            _ => {
                let rest = s
                    .strip_prefix('F')
                    .or_else(|| s.strip_prefix('f'))
                    .ok_or_else(|| Error::UnsupportedDomain(s.to_string()))?;
                let p: u64 = rest
                    .parse()
                    .map_err(|_| Error::UnsupportedDomain(s.to_string()))?;
                CoefficientDomain::prime_field(p)
            }
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_domain_strings() {
        assert_eq!(
            "Q".parse::<CoefficientDomain>().unwrap(),
            CoefficientDomain::Rationals
        );
        assert_eq!(
            "Z".parse::<CoefficientDomain>().unwrap(),
            CoefficientDomain::Integers
        );
        assert_eq!(
            "F2".parse::<CoefficientDomain>().unwrap(),
            CoefficientDomain::PrimeField(2)
        );
        assert_eq!(
            "F7".parse::<CoefficientDomain>().unwrap(),
            CoefficientDomain::PrimeField(7)
        );
        assert!("F4".parse::<CoefficientDomain>().is_err());
        assert!("R".parse::<CoefficientDomain>().is_err());
        assert!("F".parse::<CoefficientDomain>().is_err());
    }

    #[test]
    fn prime_field_reduces() {
        let f3 = CoefficientDomain::PrimeField(3);
        assert_eq!(f3.from_i64(-1), f3.from_i64(2));
        assert_eq!(f3.mul(&f3.from_i64(2), &f3.from_i64(2)), f3.one());
        assert!(f3.contains(&f3.from_i64(5)));
        assert!(!f3.contains(&BigRational::from_integer(BigInt::from(5))));
    }
}
