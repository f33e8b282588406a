use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::ZPoly;
use super::Rat;

/// Element of Q(t): `coef * t^shift * num(t) / den(t)`.
///
/// Canonical form: `num`, `den` primitive with positive leading coefficient,
/// nonzero constant terms, coprime. Zero is `coef = 0` with trivial parts, so
/// structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    coef: Rat,
    shift: i64,
    num: ZPoly,
    den: ZPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { coef: Rat::zero(), shift: 0, num: ZPoly::one(), den: ZPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Scalar { coef: r, shift: 0, num: ZPoly::one(), den: ZPoly::one() }
    }

    pub fn from_int(a: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(a)))
    }

    pub fn ratio(a: i64, b: i64) -> Self {
        Self::from_rat(Rat::new(BigInt::from(a), BigInt::from(b)))
    }

    /// `t^k`
    pub fn t_pow(k: i64) -> Self {
        Scalar { coef: Rat::one(), shift: k, num: ZPoly::one(), den: ZPoly::one() }
    }

    /// `c * t^k`
    pub fn monomial(c: Rat, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Scalar { coef: c, shift: k, num: ZPoly::one(), den: ZPoly::one() }
    }

    /// Laurent polynomial `sum c[i] t^(low + i)`.
    pub fn laurent(low: i64, c: &[i64]) -> Self {
        Self::from_parts(Rat::one(), low, ZPoly::from_i64(c), ZPoly::one())
    }

    pub fn poly(p: &ZPoly) -> Self {
        Self::from_parts(Rat::one(), 0, p.clone(), ZPoly::one())
    }

    /// Build from arbitrary (not necessarily reduced) parts.
    pub fn from_parts(coef: Rat, shift: i64, num: ZPoly, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if coef.is_zero() || num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        Self::normalize(coef, shift, num, den)
    }

    /// Normalize parts already known to be coprime.
    fn normalize(coef: Rat, shift: i64, num: ZPoly, den: ZPoly) -> Self {
        let vn = num.valuation();
        let vd = den.valuation();
        let num = if vn > 0 { num.shift_down(vn) } else { num };
        let den = if vd > 0 { den.shift_down(vd) } else { den };
        let (cn, num) = num.primitive();
        let (cd, den) = den.primitive();
        let coef = coef * Rat::new(cn, cd);
        Scalar { coef, shift: shift + vn as i64 - vd as i64, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.coef.is_one() && self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the value is `c t^k`.
    pub fn is_monomial(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value, if constant.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.shift == 0 && self.is_monomial() {
            Some(self.coef.clone())
        } else {
            None
        }
    }

    pub fn coef(&self) -> &Rat {
        &self.coef
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn num(&self) -> &ZPoly {
        &self.num
    }

    pub fn den(&self) -> &ZPoly {
        &self.den
    }

    /// Numerator and denominator as integer Laurent-free polynomials with
    /// the rational coefficient and t-shift distributed.
    pub fn numer_denom(&self) -> (ZPoly, ZPoly) {
        if self.is_zero() {
            return (ZPoly::zero(), ZPoly::one());
        }
        let n = self.num.scale(self.coef.numer());
        let d = self.den.scale(self.coef.denom());
        if self.shift >= 0 {
            (n.shift_up(self.shift as usize), d)
        } else {
            (n, d.shift_up((-self.shift) as usize))
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Scalar { coef: self.coef.recip(), shift: -self.shift, num: self.den.clone(), den: self.num.clone() }
    }

    pub fn checked_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            None
        } else {
            Some(self * &o.inv())
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().pow(-e);
        }
        if self.is_zero() {
            return if e == 0 { Self::one() } else { Self::zero() };
        }
        let e32 = e as u32;
        Scalar {
            coef: num_traits::pow(self.coef.clone(), e as usize),
            shift: self.shift * e,
            num: self.num.pow(e32),
            den: self.den.pow(e32),
        }
    }

    /// Substitute `t -> t^k` for `k >= 1`.
    pub fn t_substitute(&self, k: u32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let spread = |p: &ZPoly| {
            let mut c = Vec::with_capacity(p.len() * k as usize);
            for (i, a) in p.coeffs().iter().enumerate() {
                if i > 0 {
                    for _ in 1..k {
                        c.push(BigInt::zero());
                    }
                }
                c.push(a.clone());
            }
            ZPoly::from_coeffs(c)
        };
        // coprimality survives t -> t^k
        Self::normalize(self.coef.clone(), self.shift * k as i64, spread(&self.num), spread(&self.den))
    }

    /// If this is `± t^k` return `(sign, k)`.
    pub fn as_signed_t_power(&self) -> Option<(i32, i64)> {
        if !self.is_monomial() {
            return None;
        }
        if self.coef.is_one() {
            Some((1, self.shift))
        } else if (-self.coef.clone()).is_one() {
            Some((-1, self.shift))
        } else {
            None
        }
    }

    fn add_impl(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.num == o.num && self.den == o.den && self.shift == o.shift {
            let c = &self.coef + &o.coef;
            if c.is_zero() {
                return Self::zero();
            }
            return Scalar { coef: c, shift: self.shift, num: self.num.clone(), den: self.den.clone() };
        }
        let shift = self.shift.min(o.shift);
        if self.den.is_one() && o.den.is_one() {
            return Self::add_laurent(self, o, shift);
        }
        // common rational scale: coef = (a1/b1), (a2/b2)
        let l = self.coef.denom().lcm(o.coef.denom());
        let s1 = self.coef.numer() * (&l / self.coef.denom());
        let s2 = o.coef.numer() * (&l / o.coef.denom());
        let g = if self.den == o.den { self.den.clone() } else { self.den.gcd(&o.den) };
        let (d1, d2) = if g.is_one() {
            (self.den.clone(), o.den.clone())
        } else {
            (self.den.div_exact(&g).unwrap(), o.den.div_exact(&g).unwrap())
        };
        let t1 = self.num.mul(&d2).scale(&s1).shift_up((self.shift - shift) as usize);
        let t2 = o.num.mul(&d1).scale(&s2).shift_up((o.shift - shift) as usize);
        let n = t1.add(&t2);
        if n.is_zero() {
            return Self::zero();
        }
        let coef = Rat::new(BigInt::one(), l);
        if g.is_one() {
            return Self::normalize(coef, shift, n, d1.mul(&o.den));
        }
        let h = n.gcd(&g);
        if h.is_one() {
            Self::normalize(coef, shift, n, d1.mul(&o.den))
        } else {
            let n = n.div_exact(&h).unwrap();
            let den = d1.mul(&o.den).div_exact(&h).unwrap();
            Self::normalize(coef, shift, n, den)
        }
    }

    /// Sum of two Laurent polynomials: `coef t^shift num` each.
    fn add_laurent(a: &Self, b: &Self, shift: i64) -> Self {
        let l = a.coef.denom().lcm(b.coef.denom());
        let s1 = a.coef.numer() * (&l / a.coef.denom());
        let s2 = b.coef.numer() * (&l / b.coef.denom());
        let (o1, o2) = ((a.shift - shift) as usize, (b.shift - shift) as usize);
        let n = a.num.scale(&s1).shift_up(o1).add(&b.num.scale(&s2).shift_up(o2));
        if n.is_zero() {
            return Self::zero();
        }
        Self::normalize(Rat::new(BigInt::one(), l), shift, n, ZPoly::one())
    }

    fn mul_impl(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let coef = &self.coef * &o.coef;
        let shift = self.shift + o.shift;
        if self.is_monomial() {
            return Scalar { coef, shift, num: o.num.clone(), den: o.den.clone() };
        }
        if o.is_monomial() {
            return Scalar { coef, shift, num: self.num.clone(), den: self.den.clone() };
        }
        if self.den.is_one() && o.den.is_one() {
            // primitive times primitive is primitive, and constant terms stay nonzero
            return Scalar { coef, shift, num: self.num.mul(&o.num), den: ZPoly::one() };
        }
        let cancel = |a: &ZPoly, b: &ZPoly| -> (ZPoly, ZPoly) {
            let g = a.gcd(b);
            if g.is_one() {
                (a.clone(), b.clone())
            } else {
                (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap())
            }
        };
        let (n1, d2) = cancel(&self.num, &o.den);
        let (n2, d1) = cancel(&o.num, &self.den);
        Self::normalize(coef, shift, n1.mul(&n2), d1.mul(&d2))
    }

    /// Evaluate at an integer point (for randomized rank checks).
    /// `None` if the denominator vanishes there.
    pub fn eval_mod(&self, t: u64, p: u64) -> Option<u64> {
        let ev = |poly: &ZPoly| -> u64 {
            let mut acc: u128 = 0;
            for a in poly.coeffs().iter().rev() {
                acc = (acc * t as u128 + bigmod(a, p) as u128) % p as u128;
            }
            acc as u64
        };
        let n = mulmod(ev(&self.num), bigmod(self.coef.numer(), p), p);
        let d = mulmod(ev(&self.den), bigmod(self.coef.denom(), p), p);
        if d == 0 {
            return None;
        }
        let tp = if self.shift >= 0 {
            powmod(t, self.shift as u64, p)
        } else {
            let ti = powmod(t, p - 2, p);
            powmod(ti, (-self.shift) as u64, p)
        };
        Some(mulmod(mulmod(n, tp, p), powmod(d, p - 2, p), p))
    }
}

pub(crate) fn bigmod(a: &BigInt, p: u64) -> u64 {
    let m = a.mod_floor(&BigInt::from(p));
    let (_, digits) = m.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(a: i64) -> Self {
        Scalar::from_int(a)
    }
}

impl From<Rat> for Scalar {
    fn from(a: Rat) -> Self {
        Scalar::from_rat(a)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: &'a Scalar) -> Scalar {
                self.$imp(o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$imp(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &'a Scalar) -> Scalar {
                (&self).$imp(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$imp(&o)
            }
        }
    };
}

impl Scalar {
    fn sub_impl(&self, o: &Self) -> Self {
        self.add_impl(&-o)
    }
    fn div_impl(&self, o: &Self) -> Self {
        self.checked_div(o).expect("division by zero")
    }
}

binop!(Add, add, add_impl);
binop!(Sub, sub, sub_impl);
binop!(Mul, mul, mul_impl);
binop!(Div, div, div_impl);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(mut self) -> Scalar {
        self.coef = -self.coef;
        self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = self.add_impl(o);
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self = self.add_impl(&o);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = self.sub_impl(o);
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, o: Scalar) {
        *self = self.sub_impl(&o);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = self.mul_impl(o);
    }
}

impl MulAssign<Scalar> for Scalar {
    fn mul_assign(&mut self, o: Scalar) {
        *self = self.mul_impl(&o);
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render(self))
    }
}
