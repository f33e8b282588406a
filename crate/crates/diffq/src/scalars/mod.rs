//! Exact coefficient arithmetic.
//!
//! [`Scalar`] is an element of Q(t) where `t = q^(1/L)`; the root order `L`
//! lives in a [`Tower`]. Cyclotomic coefficients appear only through
//! [`Cyc`], and truncated z-series through [`ZSeries`].

mod cyclo;
mod frac;
mod int;
mod poly;
mod render;
mod series;

use alloc::format;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use cyclo::{cyclotomic_poly, euler_phi, Cyc, Cyclo};
pub use frac::Scalar;
pub use poly::ZPoly;
pub use render::parse_scalar;
pub use series::{binomial_series, double_pochhammer, StratifiedSeries, ZSeries};

use crate::{Error, Result};

/// Arbitrary precision rational.
pub type Rat = num_rational::BigRational;

pub fn rat(a: i64, b: i64) -> Rat {
    Rat::new(BigInt::from(a), BigInt::from(b))
}

pub fn rat_int(a: i64) -> Rat {
    Rat::from_integer(BigInt::from(a))
}

/// Field operations used by generic code (series, linear algebra, cyclotomic
/// extensions).
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_rat(r: &Rat) -> Self;
}

impl Field for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar::inv(self))
        }
    }
    fn from_rat(r: &Rat) -> Self {
        Scalar::from_rat(r.clone())
    }
}

/// Root order of `t = q^(1/L)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tower {
    pub l: u32,
}

impl Tower {
    pub fn new(l: u32) -> Self {
        assert!(l >= 1);
        Tower { l }
    }

    /// Smallest tower for the (n, n', d) data of a computation: `L = 2 n d`.
    pub fn for_params(n: u32, d: u32) -> Self {
        Tower { l: 2 * n.max(1) * d.max(1) }
    }

    /// Exponent of t representing `q^r`.
    pub fn t_exp(&self, r: &Rat) -> Result<i64> {
        let e = r * rat_int(self.l as i64);
        if !e.is_integer() {
            return Err(Error::NotRepresentable(format!("{}", r), self.l));
        }
        i64::try_from(e.to_integer()).map_err(|_| Error::Invalid(format!("exponent {} too large", r)))
    }

    /// `q^r` as a Scalar.
    pub fn q_pow(&self, r: &Rat) -> Result<Scalar> {
        Ok(Scalar::t_pow(self.t_exp(r)?))
    }

    /// `q^(a/b)`; panics if not representable.
    pub fn q(&self, a: i64, b: i64) -> Scalar {
        self.q_pow(&rat(a, b)).expect("q-power not representable in this tower")
    }

    /// `q^(x/2) - q^(-x/2)` for rational x.
    pub fn qbracket(&self, x: &Rat) -> Result<Scalar> {
        let h = x / rat_int(2);
        Ok(self.q_pow(&h)? - self.q_pow(&-h)?)
    }
}
