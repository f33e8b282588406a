use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::int::Z;

/// Dense polynomial in `t` with integer coefficients; `c[i]` is the
/// coefficient of `t^i`. No trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZPoly {
    c: Vec<Z>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly { c: vec![Z::S(1)] }
    }

    pub fn constant(a: BigInt) -> Self {
        Self::from_coeffs(vec![a])
    }

    /// `a * t^k`
    pub fn monomial(a: BigInt, k: usize) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Z::zero(); k + 1];
        c[k] = Z::big(a);
        ZPoly { c }
    }

    pub fn from_coeffs(c: Vec<BigInt>) -> Self {
        Self::from_z(c.into_iter().map(Z::big).collect())
    }

    fn from_z(mut c: Vec<Z>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::from_z(c.iter().map(|&x| Z::S(x)).collect())
    }

    pub fn coeffs(&self) -> Vec<BigInt> {
        self.c.iter().map(Z::to_big).collect()
    }

    /// Number of stored coefficients, `degree + 1` unless zero.
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.c.last().expect("lead of zero polynomial").to_big()
    }

    /// Number of leading zero coefficients at `t^0`.
    pub fn valuation(&self) -> usize {
        self.c.iter().take_while(|x| x.is_zero()).count()
    }

    /// Divide by `t^k`; caller guarantees `k <= valuation`.
    pub fn shift_down(&self, k: usize) -> Self {
        ZPoly { c: self.c[k..].to_vec() }
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Z::zero(); k];
        c.extend(self.c.iter().cloned());
        ZPoly { c }
    }

    fn content_z(&self) -> Z {
        let mut g = Z::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn content(&self) -> BigInt {
        self.content_z().to_big()
    }

    fn scale_z(&self, a: &Z) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        if a.is_one() {
            return self.clone();
        }
        ZPoly { c: self.c.iter().map(|x| x.mul(a)).collect() }
    }

    pub fn scale(&self, a: &BigInt) -> Self {
        self.scale_z(&Z::big(a.clone()))
    }

    fn div_scalar_z(&self, a: &Z) -> Self {
        ZPoly { c: self.c.iter().map(|x| x.div(a)).collect() }
    }

    /// Exact division of every coefficient by `a`.
    pub fn div_scalar(&self, a: &BigInt) -> Self {
        self.div_scalar_z(&Z::big(a.clone()))
    }

    /// Primitive part with positive leading coefficient, and the signed content.
    pub fn primitive(&self) -> (BigInt, Self) {
        if self.is_zero() {
            return (BigInt::zero(), Self::zero());
        }
        let mut g = self.content_z();
        if self.c.last().unwrap().is_negative() {
            g = g.neg();
        }
        if g.is_one() {
            return (BigInt::one(), self.clone());
        }
        let p = self.div_scalar_z(&g);
        (g.to_big(), p)
    }

    pub fn neg(&self) -> Self {
        ZPoly { c: self.c.iter().map(Z::neg).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let (long, short) = if self.c.len() >= o.c.len() { (self, o) } else { (o, self) };
        let mut c = long.c.clone();
        for (i, x) in short.c.iter().enumerate() {
            c[i] = c[i].add(x);
        }
        Self::from_z(c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.c.len() == 1 {
            return o.scale_z(&self.c[0]);
        }
        if o.c.len() == 1 {
            return self.scale_z(&o.c[0]);
        }
        let mut c = vec![Z::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] = c[i + j].add(&x.mul(y));
                }
            }
        }
        Self::from_z(c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a.to_big();
        }
        acc
    }

    /// Quotient if `d` divides `self` exactly in Z[t].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.c.len() == 1 {
            let a = &d.c[0];
            if self.c.iter().all(|x| x.is_multiple_of(a)) {
                return Some(self.div_scalar_z(a));
            }
            return None;
        }
        if self.c.len() < d.c.len() {
            return None;
        }
        let mut r = self.c.clone();
        let dl = d.c.last().unwrap();
        let dd = d.degree();
        let mut q = vec![Z::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let top = &r[i + dd];
            if top.is_zero() {
                continue;
            }
            if !top.is_multiple_of(dl) {
                return None;
            }
            let qi = top.div(dl);
            let nq = qi.neg();
            for (j, y) in d.c.iter().enumerate() {
                if !y.is_zero() {
                    r[i + j] = r[i + j].add(&nq.mul(y));
                }
            }
            q[i] = qi;
        }
        if r.iter().all(|x| x.is_zero()) {
            Some(Self::from_z(q))
        } else {
            None
        }
    }

    /// Pseudo-remainder `lc(d)^(deg f - deg d + 1) f mod d`.
    fn prem(&self, d: &Self) -> Self {
        let mut r: Vec<BigInt> = self.coeffs();
        let dc = d.coeffs();
        let dd = d.degree();
        let dl = d.lead();
        while r.len() > dd && !r.is_empty() {
            let top = r.last().unwrap().clone();
            let shift = r.len() - 1 - dd;
            for x in r.iter_mut() {
                *x *= &dl;
            }
            for (j, y) in dc.iter().enumerate() {
                r[shift + j] -= &top * y;
            }
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Self::from_coeffs(r)
    }

    fn max_norm(&self) -> BigInt {
        self.c.iter().map(|x| x.abs().to_big()).max().unwrap_or_default()
    }

    /// Primitive gcd with positive leading coefficient. Both inputs nonzero.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.primitive().1;
        }
        if o.is_zero() {
            return self.primitive().1;
        }
        if self.c.len() == 1 || o.c.len() == 1 {
            return Self::one();
        }
        let (_, a) = self.primitive();
        let (_, b) = o.primitive();
        if a == b {
            return a;
        }
        let (small, big) = if a.degree() <= b.degree() { (&a, &b) } else { (&b, &a) };
        if big.div_exact(small).is_some() {
            return small.clone();
        }
        if let Some(g) = heuristic_gcd(&a, &b) {
            return g;
        }
        prs_gcd(a, b)
    }
}

/// Heuristic gcd: evaluate at a large integer, take the integer gcd and
/// reconstruct from its balanced digits. Accepted only if it divides both.
fn heuristic_gcd(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let bound = a.max_norm().min(b.max_norm());
    let mut xi: BigInt = bound * 2u32 + 29u32;
    for _ in 0..6 {
        let va = a.eval(&xi);
        let vb = b.eval(&xi);
        if va.is_zero() || vb.is_zero() {
            xi = xi * 73794u32 / 27011u32 + 1u32;
            continue;
        }
        let g = va.gcd(&vb);
        let h = interpolate(&g, &xi).primitive().1;
        if !h.is_zero() && a.div_exact(&h).is_some() && b.div_exact(&h).is_some() {
            return Some(h);
        }
        xi = xi * 73794u32 / 27011u32 + 1u32;
    }
    None
}

fn interpolate(g: &BigInt, xi: &BigInt) -> ZPoly {
    let mut c = Vec::new();
    let mut g = g.clone();
    let half = xi / 2u32;
    while !g.is_zero() {
        let mut r = g.mod_floor(xi);
        if r > half {
            r -= xi;
        }
        g = (&g - &r) / xi;
        c.push(r);
    }
    ZPoly::from_coeffs(c)
}

fn prs_gcd(mut a: ZPoly, mut b: ZPoly) -> ZPoly {
    if a.degree() < b.degree() {
        core::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.prem(&b);
        a = b;
        b = if r.is_zero() { r } else { r.primitive().1 };
        if b.c.len() == 1 {
            return ZPoly::one();
        }
    }
    a.primitive().1
}

impl ZPoly {
    /// Sign of the leading coefficient.
    pub fn lead_sign(&self) -> Ordering {
        match self.c.last() {
            Some(x) if x.is_negative() => Ordering::Less,
            Some(_) => Ordering::Greater,
            None => Ordering::Equal,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (1 - t^6) and (1 - t^4) share 1 - t^2
        let a = ZPoly::from_i64(&[1, 0, 0, 0, 0, 0, -1]);
        let b = ZPoly::from_i64(&[1, 0, 0, 0, -1]);
        assert_eq!(a.gcd(&b), ZPoly::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn prs_agrees_with_heuristic() {
        let f = ZPoly::from_i64(&[3, 1, 4, 1, 5]).mul(&ZPoly::from_i64(&[2, 7, 1]));
        let g = ZPoly::from_i64(&[-9, 2, 6]).mul(&ZPoly::from_i64(&[2, 7, 1]));
        let h = heuristic_gcd(&f, &g).unwrap();
        assert_eq!(h, prs_gcd(f.clone(), g.clone()));
        assert_eq!(h, ZPoly::from_i64(&[2, 7, 1]));
    }

    #[test]
    fn exact_division() {
        let f = ZPoly::from_i64(&[1, 0, 0, -1]);
        let q = f.div_exact(&ZPoly::from_i64(&[1, -1])).unwrap();
        assert_eq!(q, ZPoly::from_i64(&[1, 1, 1]));
        assert!(f.div_exact(&ZPoly::from_i64(&[1, 1])).is_none());
    }
}
