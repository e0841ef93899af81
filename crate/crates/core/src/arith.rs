//! Base ring arithmetic.
//!
//! The base ring is the integers. The algorithms in [`crate::linalg`] only need
//! Euclidean division and unit normalization, so they are written against the
//! [`EuclideanDomain`] trait; module-level code (structure invariants, Hilbert
//! functions) additionally needs element factorization, which lives here for
//! the integer instance.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// An element of the base ring.
pub type Integer = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("cannot factorize zero")]
    ZeroFactorization,
    #[error("{0} is not a prime")]
    NotPrime(Integer),
}

/// Operations needed by Smith normal form and lattice computations.
///
/// Implementors must be Euclidean domains: `div_rem(a, b)` returns `(q, r)`
/// with `a = q*b + r` and `r = 0` or `norm(r) < norm(b)`.
pub trait EuclideanDomain:
    Clone
    + Eq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Norm: Ord;

    fn norm(&self) -> Self::Norm;

    fn div_rem_euclid(&self, other: &Self) -> (Self, Self);

    /// A unit `u` such that `u * self` is the canonical associate of `self`.
    fn normalizing_unit(&self) -> Self;

    fn is_unit(&self) -> bool;

    fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem_euclid(self).1.is_zero()
    }

    /// Exact quotient `self / other`, or `None` if `other` does not divide `self`.
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return if self.is_zero() { Some(Self::zero()) } else { None };
        }
        let (q, r) = self.div_rem_euclid(other);
        r.is_zero().then_some(q)
    }
}

impl EuclideanDomain for BigInt {
    type Norm = BigInt;

    fn norm(&self) -> BigInt {
        self.abs()
    }

    fn div_rem_euclid(&self, other: &Self) -> (Self, Self) {
        self.div_mod_floor(other)
    }

    fn normalizing_unit(&self) -> Self {
        if self.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }

    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

/// A positive prime integer, canonical representative of a maximal ideal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(Integer);

impl Prime {
    /// Accepts `p` up to sign; the stored representative is positive.
    pub fn new(p: impl Into<Integer>) -> Result<Self, ArithError> {
        let p = p.into().abs();
        if is_prime(&p) {
            Ok(Prime(p))
        } else {
            Err(ArithError::NotPrime(p))
        }
    }

    /// Panics if `p` is not prime. Meant for literals in tests and examples.
    pub fn of(p: u64) -> Self {
        Prime::new(p).expect("not a prime")
    }

    pub fn value(&self) -> &Integer {
        &self.0
    }

    pub fn pow(&self, n: u32) -> Integer {
        num_traits::pow(self.0.clone(), n as usize)
    }
}

impl fmt::Debug for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Prime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let n: Integer = s.trim().parse().map_err(|_| format!("invalid integer {s:?}"))?;
        Prime::new(n).map_err(|e| e.to_string())
    }
}

impl Serialize for Prime {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Prime {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Nonnegative greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &Integer, b: &Integer) -> Integer {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: &Integer, b: &Integer) -> Integer {
    if a.is_zero() || b.is_zero() {
        return Integer::zero();
    }
    (a * b).abs() / gcd(a, b)
}

const SIEVE_LIMIT: usize = 1 << 12;

fn small_primes() -> &'static [u64] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut composite = vec![false; SIEVE_LIMIT + 1];
        let mut out = Vec::new();
        for i in 2..=SIEVE_LIMIT {
            if !composite[i] {
                out.push(i as u64);
                let mut j = i * i;
                while j <= SIEVE_LIMIT {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

/// Prime factorization of `|n|` with strictly increasing primes.
///
/// Trial division by sieved small primes, then by odd candidates past the
/// sieve bound.
pub fn factorize(n: &Integer) -> Result<Vec<(Prime, u32)>, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroFactorization);
    }
    let mut rest = n.abs();
    let mut out = Vec::new();
    let mut push = |d: Integer, rest: &mut Integer| {
        let mut e = 0u32;
        while (&*rest % &d).is_zero() {
            *rest /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((Prime(d), e));
        }
    };
    for &p in small_primes() {
        let d = Integer::from(p);
        if &d * &d > rest {
            break;
        }
        push(d, &mut rest);
    }
    let mut d = Integer::from(small_primes().last().copied().unwrap_or(2) + 2);
    while &d * &d <= rest {
        push(d.clone(), &mut rest);
        d += 2;
    }
    if !rest.is_one() {
        out.push((Prime(rest), 1));
    }
    Ok(out)
}

pub fn is_prime(n: &Integer) -> bool {
    if n < &Integer::from(2) {
        return false;
    }
    matches!(factorize(n).as_deref(), Ok([(_, 1)]))
}

/// Number of prime factors counted with multiplicity.
pub fn omega_total(n: &Integer) -> Result<u32, ArithError> {
    Ok(factorize(n)?.iter().map(|(_, e)| e).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn int(n: i64) -> Integer {
        Integer::from(n)
    }

    fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while n > 1 {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        out
    }

    fn plain(f: &[(Prime, u32)]) -> Vec<(u64, u32)> {
        f.iter().map(|(p, e)| (p.value().to_u64().unwrap(), *e)).collect()
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(plain(&factorize(&int(12)).unwrap()), vec![(2, 2), (3, 1)]);
        assert_eq!(plain(&factorize(&int(1)).unwrap()), vec![]);
        assert_eq!(plain(&factorize(&int(-8)).unwrap()), vec![(2, 3)]);
        assert_eq!(factorize(&int(0)), Err(ArithError::ZeroFactorization));
    }

    #[test]
    fn factorize_past_sieve() {
        let big = int(4099 * 4099 * 2);
        assert_eq!(plain(&factorize(&big).unwrap()), vec![(2, 1), (4099, 2)]);
        let p = int(1_000_000_007);
        assert_eq!(plain(&factorize(&p).unwrap()), vec![(1_000_000_007, 1)]);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&int(4), &int(6)), int(2));
        assert_eq!(gcd(&int(0), &int(0)), int(0));
        assert_eq!(gcd(&int(-3), &int(0)), int(3));
        assert_eq!(lcm(&int(4), &int(6)), int(12));
    }

    #[test]
    fn primes_are_positive() {
        assert_eq!(Prime::new(-7).unwrap(), Prime::of(7));
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(9).is_err());
        assert!("11".parse::<Prime>().is_ok());
    }

    proptest! {
        #[test]
        fn factorization_recomposes(n in 1u64..200_000) {
            let f = factorize(&Integer::from(n)).unwrap();
            prop_assert_eq!(plain(&f), trial_division(n));
            let prod = f.iter().fold(Integer::one(), |acc, (p, e)| acc * p.pow(*e));
            prop_assert_eq!(prod, Integer::from(n));
            prop_assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
        }

        #[test]
        fn gcd_laws(a in 0i64..10_000, b in 0i64..10_000, c in 0i64..10_000) {
            let (a, b, c) = (int(a), int(b), int(c));
            prop_assert_eq!(gcd(&a, &b), gcd(&b, &a));
            prop_assert_eq!(gcd(&gcd(&a, &b), &c), gcd(&a, &gcd(&b, &c)));
            prop_assert_eq!(gcd(&a, &a), a.clone());
            let g = gcd(&a, &b);
            if !g.is_zero() {
                prop_assert!((&a % &g).is_zero() && (&b % &g).is_zero());
            }
        }
    }
}
