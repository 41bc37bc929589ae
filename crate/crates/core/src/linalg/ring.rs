//! Working arithmetic for the elimination kernels.
//!
//! `ExactMatrix` stores rationals; the kernels convert into one of these
//! rings first so that integer and modular elimination avoid rational
//! normalisation in their inner loops.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::domain::Scalar;

pub(crate) trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn unit_inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Euclidean size; only compared, never interpreted.
    fn size(&self, a: &Self::Elem) -> BigInt;
    /// `a | b`.
    fn divides(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    /// `b / a`, assuming `a | b`.
    fn exact_div(&self, b: &Self::Elem, a: &Self::Elem) -> Self::Elem;
    /// `(g, s, t, u, v)` with `s a + t b = g`, `u a + v b = 0` and
    /// `s v - t u = 1`.
    #[allow(clippy::type_complexity)]
    fn gcd_ext(
        &self,
        a: &Self::Elem,
        b: &Self::Elem,
    ) -> (Self::Elem, Self::Elem, Self::Elem, Self::Elem, Self::Elem);
    /// Unit `c` such that `c a` is the preferred associate of `a`.
    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem;
    fn embed(&self, x: &Scalar) -> Self::Elem;
    fn to_scalar(&self, a: &Self::Elem) -> Scalar;
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct IntRing;

impl Ring for IntRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn unit_inv(&self, a: &BigInt) -> BigInt {
        debug_assert!(self.is_unit(a));
        a.clone()
    }
    fn size(&self, a: &BigInt) -> BigInt {
        a.abs()
    }
    fn divides(&self, a: &BigInt, b: &BigInt) -> bool {
        if a.is_zero() {
            b.is_zero()
        } else {
            b.is_multiple_of(a)
        }
    }
    fn exact_div(&self, b: &BigInt, a: &BigInt) -> BigInt {
        b / a
    }
    fn gcd_ext(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt, BigInt, BigInt) {
        let e = a.extended_gcd(b);
        let g = e.gcd;
        if g.is_zero() {
            return (
                g,
                BigInt::one(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::one(),
            );
        }
        let u = -(b / &g);
        let v = a / &g;
        (g, e.x, e.y, u, v)
    }
    fn normalizing_unit(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
    fn embed(&self, x: &Scalar) -> BigInt {
        debug_assert!(x.is_integer());
        x.to_integer()
    }
    fn to_scalar(&self, a: &BigInt) -> Scalar {
        BigRational::from_integer(a.clone())
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct RationalField;

impl Ring for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn unit_inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn size(&self, a: &BigRational) -> BigInt {
        // Prefer small heights so that bases stay readable.
        a.numer().abs() + a.denom()
    }
    fn divides(&self, a: &BigRational, b: &BigRational) -> bool {
        !a.is_zero() || b.is_zero()
    }
    fn exact_div(&self, b: &BigRational, a: &BigRational) -> BigRational {
        b / a
    }
    fn gcd_ext(
        &self,
        a: &BigRational,
        b: &BigRational,
    ) -> (
        BigRational,
        BigRational,
        BigRational,
        BigRational,
        BigRational,
    ) {
        field_gcd_ext(self, a, b)
    }
    fn normalizing_unit(&self, a: &BigRational) -> BigRational {
        if a.is_zero() {
            BigRational::one()
        } else {
            a.recip()
        }
    }
    fn embed(&self, x: &Scalar) -> BigRational {
        x.clone()
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        a.clone()
    }
}

/// Integers modulo a prime `p`, held in `[0, p)`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let p = self.p as u128;
        let mut acc: u128 = 1;
        let mut b = base as u128 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        base = acc as u64;
        base
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn unit_inv(&self, a: &u64) -> u64 {
        debug_assert!(*a != 0);
        self.pow(*a, self.p - 2)
    }
    fn size(&self, a: &u64) -> BigInt {
        BigInt::from(u64::from(*a != 0))
    }
    fn divides(&self, a: &u64, b: &u64) -> bool {
        *a != 0 || *b == 0
    }
    fn exact_div(&self, b: &u64, a: &u64) -> u64 {
        self.mul(b, &self.unit_inv(a))
    }
    fn gcd_ext(&self, a: &u64, b: &u64) -> (u64, u64, u64, u64, u64) {
        field_gcd_ext(self, a, b)
    }
    fn normalizing_unit(&self, a: &u64) -> u64 {
        if *a == 0 {
            1
        } else {
            self.unit_inv(a)
        }
    }
    fn embed(&self, x: &Scalar) -> u64 {
        debug_assert!(x.is_integer());
        let r = x.to_integer().mod_floor(&BigInt::from(self.p));
        u64::try_from(r).expect("reduced residue fits in u64")
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        BigRational::from_integer(BigInt::from(*a))
    }
}

#[allow(clippy::type_complexity)]
fn field_gcd_ext<R: Ring>(
    ring: &R,
    a: &R::Elem,
    b: &R::Elem,
) -> (R::Elem, R::Elem, R::Elem, R::Elem, R::Elem) {
    if !ring.is_zero(a) {
        let u = ring.neg(&ring.exact_div(b, a));
        (a.clone(), ring.one(), ring.zero(), u, ring.one())
    } else if !ring.is_zero(b) {
        (
            b.clone(),
            ring.zero(),
            ring.one(),
            ring.neg(&ring.one()),
            ring.zero(),
        )
    } else {
        (
            ring.zero(),
            ring.one(),
            ring.zero(),
            ring.zero(),
            ring.one(),
        )
    }
}

/// Runs `f` with the working ring matching `domain`.
macro_rules! with_ring {
    ($domain:expr, |$ring:ident| $body:expr) => {
        match $domain {
            $crate::linalg::CoefficientDomain::Integers => {
                let $ring = $crate::linalg::ring::IntRing;
                $body
            }
            $crate::linalg::CoefficientDomain::Rationals => {
                let $ring = $crate::linalg::ring::RationalField;
                $body
            }
            $crate::linalg::CoefficientDomain::PrimeField(p) => {
                let $ring = $crate::linalg::ring::PrimeField { p };
                $body
            }
        }
    };
}
pub(crate) use with_ring;

#[cfg(test)]
mod tests {
    use super::*;

    fn check_gcd<R: Ring>(ring: &R, a: R::Elem, b: R::Elem) {
        let (g, s, t, u, v) = ring.gcd_ext(&a, &b);
        assert_eq!(ring.add(&ring.mul(&s, &a), &ring.mul(&t, &b)), g);
        assert!(ring.is_zero(&ring.add(&ring.mul(&u, &a), &ring.mul(&v, &b))));
        let det = ring.sub(&ring.mul(&s, &v), &ring.mul(&t, &u));
        assert_eq!(det, ring.one());
    }

    #[test]
    fn gcd_ext_is_unimodular() {
        for (a, b) in [(12, 18), (-4, 6), (0, 5), (5, 0), (0, 0), (7, -3)] {
            check_gcd(&IntRing, BigInt::from(a), BigInt::from(b));
        }
        let f5 = PrimeField { p: 5 };
        for (a, b) in [(2, 3), (0, 4), (4, 0), (0, 0)] {
            check_gcd(&f5, a, b);
        }
    }

    #[test]
    fn prime_field_inverse() {
        let f7 = PrimeField { p: 7 };
        for a in 1..7 {
            assert_eq!(f7.mul(&a, &f7.unit_inv(&a)), 1);
        }
    }
}
