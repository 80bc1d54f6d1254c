//! Elements of `Z[1/p]`, kept in the normal form `unit · p^(-exponent)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{big_pow, Rat};

/// An element `unit · p^(-exponent)` of `Z[1/p]`.
///
/// Invariants: if `unit != 0` then `p ∤ unit`; if `unit == 0` then
/// `exponent == 0`. The prime travels with the value so that every operation
/// can renormalize without outside context.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PLocal {
    unit: BigInt,
    exponent: u32,
    p: u64,
}

impl PLocal {
    pub fn zero(p: u64) -> PLocal {
        PLocal { unit: BigInt::zero(), exponent: 0, p }
    }

    pub fn one(p: u64) -> PLocal {
        PLocal::from_int(1, p)
    }

    pub fn from_int(n: i64, p: u64) -> PLocal {
        PLocal::normalized(BigInt::from(n), 0, p)
    }

    pub fn from_bigint(n: BigInt, p: u64) -> PLocal {
        PLocal::normalized(n, 0, p)
    }

    /// `num · p^(-exponent)` with arbitrary `num`.
    pub fn from_parts(num: BigInt, exponent: u32, p: u64) -> PLocal {
        PLocal::normalized(num, exponent, p)
    }

    /// Converts a rational whose denominator is a power of `p`.
    pub fn from_rat(r: &Rat, p: u64) -> Option<PLocal> {
        let mut den = r.denom();
        let bp = BigInt::from(p);
        let mut exponent = 0u32;
        while !den.is_one() {
            let (q, rem) = den.div_rem(&bp);
            if !rem.is_zero() {
                return None;
            }
            den = q;
            exponent += 1;
        }
        Some(PLocal::normalized(r.numer(), exponent, p))
    }

    fn normalized(mut unit: BigInt, mut exponent: u32, p: u64) -> PLocal {
        if unit.is_zero() {
            return PLocal::zero(p);
        }
        let bp = BigInt::from(p);
        while exponent > 0 {
            let (q, rem) = unit.div_rem(&bp);
            if !rem.is_zero() {
                break;
            }
            unit = q;
            exponent -= 1;
        }
        PLocal { unit, exponent, p }
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0 && self.unit.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.exponent == 0
    }

    pub fn to_rat(&self) -> Rat {
        Rat::from_bigints(self.unit.clone(), big_pow(self.p, self.exponent))
    }

    /// Multiplication by `p`.
    pub fn mul_p(&self) -> PLocal {
        if self.is_zero() {
            self.clone()
        } else if self.exponent > 0 {
            PLocal { unit: self.unit.clone(), exponent: self.exponent - 1, p: self.p }
        } else {
            PLocal { unit: &self.unit * self.p, exponent: 0, p: self.p }
        }
    }

    /// Division by `p`; always stays inside `Z[1/p]`.
    pub fn div_p(&self) -> PLocal {
        if self.is_zero() {
            return self.clone();
        }
        if self.exponent == 0 && self.unit.is_multiple_of(&BigInt::from(self.p)) {
            return PLocal::normalized(&self.unit / self.p, 0, self.p);
        }
        PLocal { unit: self.unit.clone(), exponent: self.exponent + 1, p: self.p }
    }

    /// The representative of `self mod Z` lying in `[0, 1)`.
    pub fn fractional_part(&self) -> PLocal {
        if self.exponent == 0 {
            return PLocal::zero(self.p);
        }
        let modulus = big_pow(self.p, self.exponent);
        PLocal::normalized(self.unit.mod_floor(&modulus), self.exponent, self.p)
    }

    fn check_prime(&self, other: &PLocal) {
        assert_eq!(self.p, other.p, "mixing Z[1/p] scalars of different primes");
    }
}

impl fmt::Display for PLocal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_rat(), f)
    }
}

impl fmt::Debug for PLocal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (p={})", self.to_rat(), self.p)
    }
}

impl Add for &PLocal {
    type Output = PLocal;
    fn add(self, rhs: &PLocal) -> PLocal {
        self.check_prime(rhs);
        let e = self.exponent.max(rhs.exponent);
        let a = &self.unit * big_pow(self.p, e - self.exponent);
        let b = &rhs.unit * big_pow(self.p, e - rhs.exponent);
        PLocal::normalized(a + b, e, self.p)
    }
}

impl Sub for &PLocal {
    type Output = PLocal;
    fn sub(self, rhs: &PLocal) -> PLocal {
        self + &(-rhs)
    }
}

impl Mul for &PLocal {
    type Output = PLocal;
    fn mul(self, rhs: &PLocal) -> PLocal {
        self.check_prime(rhs);
        // p is prime and divides neither unit, so the product is already normal
        if self.is_zero() || rhs.is_zero() {
            return PLocal::zero(self.p);
        }
        PLocal { unit: &self.unit * &rhs.unit, exponent: self.exponent + rhs.exponent, p: self.p }
    }
}

impl Neg for &PLocal {
    type Output = PLocal;
    fn neg(self) -> PLocal {
        PLocal { unit: -&self.unit, exponent: self.exponent, p: self.p }
    }
}

impl PartialOrd for PLocal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        if self.p != other.p {
            return None;
        }
        Some(self.to_rat().cmp(&other.to_rat()))
    }
}

impl PLocal {
    pub fn is_negative(&self) -> bool {
        self.unit.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normal_form() {
        let x = PLocal::from_parts(BigInt::from(12), 2, 2);
        assert_eq!(x.unit(), &BigInt::from(3));
        assert_eq!(x.exponent(), 0);
        assert_eq!(PLocal::from_parts(BigInt::from(0), 5, 3).exponent(), 0);
        assert_eq!(PLocal::from_rat(&Rat::new(3, 8), 2).unwrap().exponent(), 3);
        assert!(PLocal::from_rat(&Rat::new(1, 6), 2).is_none());
    }

    #[test]
    fn fractional_parts() {
        let f = |n, d, p| PLocal::from_rat(&Rat::new(n, d), p).unwrap().fractional_part().to_rat();
        assert_eq!(f(3, 2, 2), Rat::new(1, 2));
        assert_eq!(f(-1, 4, 2), Rat::new(3, 4));
        assert_eq!(f(7, 1, 3), Rat::ZERO);
        assert_eq!(f(-10, 9, 3), Rat::new(8, 9));
    }

    #[test]
    fn scaling_by_p() {
        let x = PLocal::from_rat(&Rat::new(1, 3), 3).unwrap();
        assert!(x.mul_p().is_one());
        assert_eq!(PLocal::from_int(1, 3).div_p(), x);
        assert_eq!(PLocal::from_int(9, 3).div_p().to_rat(), Rat::from_int(3));
    }

    fn arb(p: u64) -> impl Strategy<Value = PLocal> {
        (-1000i64..1000, 0u32..5).prop_map(move |(n, e)| PLocal::from_parts(BigInt::from(n), e, p))
    }

    proptest! {
        #[test]
        fn ring_ops_match_rationals(x in arb(3), y in arb(3)) {
            prop_assert_eq!((&x + &y).to_rat(), x.to_rat() + y.to_rat());
            prop_assert_eq!((&x - &y).to_rat(), x.to_rat() - y.to_rat());
            prop_assert_eq!((&x * &y).to_rat(), x.to_rat() * y.to_rat());
            prop_assert_eq!(x.mul_p().div_p(), x.clone());
            let fp = x.fractional_part().to_rat();
            prop_assert!(fp >= Rat::ZERO && fp < Rat::ONE);
            prop_assert!((x.to_rat() - fp).is_integer());
        }
    }
}
