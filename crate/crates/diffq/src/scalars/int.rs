//! Integers that stay inline while they fit in an `i64`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

/// `S` whenever the value fits in `i64`, so the derived equality is exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Z {
    S(i64),
    B(BigInt),
}

impl Z {
    pub fn big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(s) => Z::S(s),
            None => Z::B(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Z::S(s) => BigInt::from(*s),
            Z::B(b) => b.clone(),
        }
    }

    fn wide(x: i128) -> Self {
        match i64::try_from(x) {
            Ok(s) => Z::S(s),
            Err(_) => Z::B(BigInt::from(x)),
        }
    }

    pub fn zero() -> Self {
        Z::S(0)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Z::S(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Z::S(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Z::S(s) => *s < 0,
            Z::B(b) => b.is_negative(),
        }
    }

    pub fn add(&self, o: &Z) -> Z {
        match (self, o) {
            (Z::S(a), Z::S(b)) => Z::wide(*a as i128 + *b as i128),
            _ => Z::big(self.to_big() + o.to_big()),
        }
    }

    pub fn mul(&self, o: &Z) -> Z {
        match (self, o) {
            (Z::S(a), Z::S(b)) => Z::wide(*a as i128 * *b as i128),
            _ => Z::big(self.to_big() * o.to_big()),
        }
    }

    pub fn neg(&self) -> Z {
        match self {
            Z::S(s) => Z::wide(-(*s as i128)),
            Z::B(b) => Z::big(-b),
        }
    }

    pub fn abs(&self) -> Z {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Non-negative gcd.
    pub fn gcd(&self, o: &Z) -> Z {
        match (self, o) {
            (Z::S(a), Z::S(b)) => Z::wide((*a as i128).gcd(&(*b as i128))),
            _ => Z::big(self.to_big().gcd(&o.to_big())),
        }
    }

    /// Truncating division, exact in every use.
    pub fn div(&self, o: &Z) -> Z {
        match (self, o) {
            (Z::S(a), Z::S(b)) => Z::wide(*a as i128 / *b as i128),
            _ => Z::big(self.to_big() / o.to_big()),
        }
    }

    pub fn is_multiple_of(&self, o: &Z) -> bool {
        match (self, o) {
            (Z::S(a), Z::S(b)) => (*a as i128) % (*b as i128) == 0,
            _ => self.to_big().is_multiple_of(&o.to_big()),
        }
    }
}

impl From<i64> for Z {
    fn from(s: i64) -> Self {
        Z::S(s)
    }
}

impl One for Z {
    fn one() -> Self {
        Z::S(1)
    }
}

impl core::ops::Mul for Z {
    type Output = Z;
    fn mul(self, o: Z) -> Z {
        Z::mul(&self, &o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let m = Z::S(i64::MAX);
        let s = m.add(&Z::S(1));
        assert!(matches!(s, Z::B(_)));
        assert_eq!(s.add(&Z::S(-1)), m);
        assert_eq!(Z::S(i64::MIN).neg().to_big(), -BigInt::from(i64::MIN));
        assert_eq!(m.mul(&m).div(&m), m);
        assert_eq!(Z::S(12).gcd(&Z::S(-18)), Z::S(6));
    }
}
