//! Cyclotomic extensions `F(ζ_M)` of a field `F`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::poly::ZPoly;
use super::{Field, Rat};

/// The M-th cyclotomic polynomial over Z.
pub fn cyclotomic_poly(m: u32) -> ZPoly {
    assert!(m >= 1);
    let mut p = ZPoly::monomial(BigInt::one(), m as usize).sub(&ZPoly::one());
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = p.div_exact(&cyclotomic_poly(d)).unwrap();
        }
    }
    p
}

pub fn euler_phi(m: u32) -> usize {
    cyclotomic_poly(m).degree()
}

/// Element `Σ c_i ζ^i` of `F(ζ_M)`, reduced modulo the M-th cyclotomic
/// polynomial, so `coeffs.len() == φ(M)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyc<F> {
    order: u32,
    coeffs: Vec<F>,
}

/// Element of Q(ζ_M).
pub type Cyclo = Cyc<Rat>;

impl<F: Field> Cyc<F> {
    pub fn zero(order: u32) -> Self {
        Cyc { order, coeffs: vec![F::zero(); euler_phi(order)] }
    }

    pub fn from_base(order: u32, a: F) -> Self {
        let mut c = Self::zero(order);
        c.coeffs[0] = a;
        c
    }

    pub fn one(order: u32) -> Self {
        Self::from_base(order, F::one())
    }

    /// `ζ_M^k` for any integer k.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let k = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![F::zero(); k + 1];
        raw[k] = F::one();
        Self::reduce(order, raw)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    fn reduce(order: u32, mut raw: Vec<F>) -> Self {
        let phi = cyclotomic_poly(order);
        let d = phi.degree();
        let pc: Vec<F> = phi.coeffs().iter().map(|c| F::from_rat(&Rat::from_integer(c.clone()))).collect();
        // Φ_M is monic
        while raw.len() > d {
            let top = raw.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let s = raw.len() - d;
            for j in 0..d {
                let v = top.mul(&pc[j]);
                raw[s + j] = raw[s + j].sub(&v);
            }
        }
        raw.resize(d, F::zero());
        Cyc { order, coeffs: raw }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The base-field value, if the element lies in F.
    pub fn as_base(&self) -> Option<&F> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order);
        Cyc { order: self.order, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order);
        Cyc { order: self.order, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        Cyc { order: self.order, coeffs: self.coeffs.iter().map(|a| a.neg()).collect() }
    }

    pub fn scale(&self, a: &F) -> Self {
        Cyc { order: self.order, coeffs: self.coeffs.iter().map(|c| c.mul(a)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order);
        let n = self.coeffs.len();
        let mut raw = vec![F::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] = raw[i + j].add(&a.mul(b));
                }
            }
        }
        Self::reduce(self.order, raw)
    }

    /// Inverse via the extended Euclidean algorithm against Φ_M.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi: Vec<F> = cyclotomic_poly(self.order)
            .coeffs()
            .iter()
            .map(|c| F::from_rat(&Rat::from_integer(c.clone())))
            .collect();
        let mut r0 = trim(phi);
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<F> = Vec::new();
        let mut s1: Vec<F> = vec![F::one()];
        while !(r1.len() == 1) {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            if r1.is_empty() {
                return None;
            }
        }
        let c = r1[0].inv()?;
        let s: Vec<F> = s1.iter().map(|x| x.mul(&c)).collect();
        Some(Self::reduce(self.order, s))
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut r = Self::one(self.order);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }
}

fn trim<F: Field>(mut v: Vec<F>) -> Vec<F> {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

fn poly_sub<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(F::zero);
        let y = b.get(i).cloned().unwrap_or_else(F::zero);
        r.push(x.sub(&y));
    }
    trim(r)
}

fn poly_mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] = r[i + j].add(&x.mul(y));
        }
    }
    trim(r)
}

fn poly_divrem<F: Field>(a: &[F], b: &[F]) -> (Vec<F>, Vec<F>) {
    let mut r = a.to_vec();
    let lb = b.last().unwrap().inv().unwrap();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![F::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let s = r.len() - b.len();
        let c = r.last().unwrap().mul(&lb);
        for (j, y) in b.iter().enumerate() {
            r[s + j] = r[s + j].sub(&c.mul(y));
        }
        q[s] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

impl<F: Field> fmt::Debug for Cyc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})*zeta{}^{}", c, self.order, i)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), ZPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), ZPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), ZPoly::from_i64(&[1, -1, 1]));
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn root_of_unity_sums() {
        for m in 1..=8u32 {
            let z = Cyclo::zeta_pow(m, 1);
            assert_eq!(z.pow(m as u64), Cyclo::one(m));
            for k in -5i64..=9 {
                let mut s = Cyclo::zero(m);
                for j in 0..m as i64 {
                    s = s.add(&Cyclo::zeta_pow(m, j * k));
                }
                let expect = if k % m as i64 == 0 { m as i64 } else { 0 };
                assert_eq!(s, Cyclo::from_base(m, Rat::from_integer(expect.into())));
            }
        }
    }

    #[test]
    fn inverse() {
        let m = 6;
        let x = Cyclo::zeta_pow(m, 1).add(&Cyclo::from_base(m, Rat::from_integer(3.into())));
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), Cyclo::one(m));
    }
}
