use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{rat, rat_int, Field, Rat, Scalar, Tower};
use crate::{Error, Result};

/// Truncated series `z^offset * Σ_{m=0}^{K} c_m z^(m/step)`, exact through
/// `z^(offset + K/step)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZSeries<S> {
    offset: Rat,
    step: u32,
    coeffs: Vec<S>,
}

impl<S: Field> ZSeries<S> {
    pub fn new(offset: Rat, step: u32, coeffs: Vec<S>) -> Self {
        assert!(step >= 1 && !coeffs.is_empty());
        ZSeries { offset, step, coeffs }
    }

    /// The constant `c`, known through index `order`.
    pub fn constant(c: S, step: u32, order: usize) -> Self {
        let mut v = vec![S::zero(); order + 1];
        v[0] = c;
        ZSeries { offset: rat_int(0), step, coeffs: v }
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn step(&self) -> u32 {
        self.step
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Truncation order K, in units of 1/step.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Highest exponent known exactly.
    pub fn end(&self) -> Rat {
        &self.offset + rat(self.order() as i64, self.step as i64)
    }

    /// Coefficient of `z^e`; `None` past the truncation order.
    pub fn coeff(&self, e: &Rat) -> Option<S> {
        if e > &self.end() {
            return None;
        }
        if e < &self.offset {
            return Some(S::zero());
        }
        let idx = (e - &self.offset) * rat_int(self.step as i64);
        if !idx.is_integer() {
            return Some(S::zero());
        }
        Some(self.coeffs[idx.to_integer().to_usize().unwrap()].clone())
    }

    /// Re-express with a finer step (a multiple of the current one).
    pub fn restep(&self, s: u32) -> Self {
        assert!(s.is_multiple_of(self.step), "step {} does not refine {}", s, self.step);
        if s == self.step {
            return self.clone();
        }
        let k = (s / self.step) as usize;
        let mut c = vec![S::zero(); self.order() * k + 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i * k] = x.clone();
        }
        ZSeries { offset: self.offset.clone(), step: s, coeffs: c }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(order + 1);
        ZSeries { offset: self.offset.clone(), step: self.step, coeffs: c }
    }

    fn common_step(&self, o: &Self) -> (Self, Self) {
        let s = (self.step as u64).lcm(&(o.step as u64)) as u32;
        (self.restep(s), o.restep(s))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let (a, b) = self.common_step(o);
        let diff = (&a.offset - &b.offset) * rat_int(a.step as i64);
        if !diff.is_integer() {
            return Err(Error::Incommensurate(format!("{}", a.offset), format!("{}", b.offset)));
        }
        let offset = if a.offset <= b.offset { a.offset.clone() } else { b.offset.clone() };
        let end = if a.end() <= b.end() { a.end() } else { b.end() };
        if end < offset {
            return Err(Error::Invalid("series sum has no exactly known terms".into()));
        }
        let s = rat_int(a.step as i64);
        let len = ((&end - &offset) * &s).to_integer().to_usize().unwrap() + 1;
        let mut c = vec![S::zero(); len];
        for src in [&a, &b] {
            let sh = ((&src.offset - &offset) * &s).to_integer().to_usize().unwrap();
            for (i, x) in src.coeffs.iter().enumerate() {
                if i + sh < len {
                    c[i + sh] = c[i + sh].add(x);
                }
            }
        }
        Ok(ZSeries { offset, step: a.step, coeffs: c })
    }

    pub fn neg(&self) -> Self {
        ZSeries { offset: self.offset.clone(), step: self.step, coeffs: self.coeffs.iter().map(|x| x.neg()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, a: &S) -> Self {
        ZSeries { offset: self.offset.clone(), step: self.step, coeffs: self.coeffs.iter().map(|x| x.mul(a)).collect() }
    }

    /// Multiply by `z^e`.
    pub fn shift(&self, e: &Rat) -> Self {
        ZSeries { offset: &self.offset + e, step: self.step, coeffs: self.coeffs.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = self.common_step(o);
        let k = a.order().min(b.order());
        let mut c = vec![S::zero(); k + 1];
        for i in 0..=k {
            if a.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(k - i) {
                if !b.coeffs[j].is_zero() {
                    c[i + j] = c[i + j].add(&a.coeffs[i].mul(&b.coeffs[j]));
                }
            }
        }
        ZSeries { offset: &a.offset + &b.offset, step: a.step, coeffs: c }
    }

    /// `exp` of a series with zero offset and zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !Zero::is_zero(&self.offset) || !self.coeffs[0].is_zero() {
            return Err(Error::Invalid("exp needs a series without constant term".into()));
        }
        let k = self.order();
        let mut f = vec![S::zero(); k + 1];
        f[0] = S::one();
        for m in 1..=k {
            let mut acc = S::zero();
            for j in 1..=m {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                let t = self.coeffs[j].mul(&f[m - j]).mul(&S::from_rat(&rat_int(j as i64)));
                acc = acc.add(&t);
            }
            f[m] = acc.mul(&S::from_rat(&rat(1, m as i64)));
        }
        Ok(ZSeries { offset: rat_int(0), step: self.step, coeffs: f })
    }

    /// First exponent (within the common known range) where the two differ.
    pub fn first_difference(&self, o: &Self) -> Result<Option<Rat>> {
        let d = self.sub(o)?;
        for (i, x) in d.coeffs.iter().enumerate() {
            if !x.is_zero() {
                return Ok(Some(&d.offset + rat(i as i64, d.step as i64)));
            }
        }
        Ok(None)
    }
}

/// Sum of series whose offsets fall in different classes mod `1/step`.
#[derive(Clone, Debug, PartialEq)]
pub struct StratifiedSeries<S> {
    strata: Vec<ZSeries<S>>,
}

impl<S: Field> Default for StratifiedSeries<S> {
    fn default() -> Self {
        StratifiedSeries { strata: Vec::new() }
    }
}

impl<S: Field> StratifiedSeries<S> {
    pub fn strata(&self) -> &[ZSeries<S>] {
        &self.strata
    }

    pub fn push(&mut self, s: ZSeries<S>) {
        for st in self.strata.iter_mut() {
            if let Ok(sum) = st.add(&s) {
                *st = sum;
                return;
            }
        }
        self.strata.push(s);
        self.strata.sort_by(|a, b| a.offset().cmp(b.offset()));
    }

    /// Coefficient of `z^e`, summed over strata.
    pub fn coeff(&self, e: &Rat) -> Option<S> {
        let mut acc = S::zero();
        for st in &self.strata {
            acc = acc.add(&st.coeff(e)?);
        }
        Some(acc)
    }
}

/// `(1 - ρ x)^e` through `x^order`.
pub fn binomial_series<S: Field>(rho: &S, e: &Rat, order: usize) -> ZSeries<S> {
    let mut c = Vec::with_capacity(order + 1);
    let mut b = rat_int(1);
    let mut p = S::one();
    let mrho = rho.neg();
    for m in 0..=order {
        c.push(p.mul(&S::from_rat(&b)));
        b = b * (e - rat_int(m as i64)) / rat_int(m as i64 + 1);
        p = p.mul(&mrho);
    }
    ZSeries::new(rat_int(0), 1, c)
}

/// `(a z^r; q^e1, q^e2)_∞ = exp(-Σ_k (a z^r)^k / (k (1 - q^(k e1)) (1 - q^(k e2))))`
/// through z-order `order` measured in steps of `1/denominator(r)`.
pub fn double_pochhammer(
    tower: &Tower,
    a: &Scalar,
    r: &Rat,
    e1: &Rat,
    e2: &Rat,
    order: usize,
) -> Result<ZSeries<Scalar>> {
    if !r.is_positive() {
        return Err(Error::Invalid(format!("double Pochhammer needs a z-dependent argument, got z^{}", r)));
    }
    if Zero::is_zero(e1) || Zero::is_zero(e2) {
        return Err(Error::Invalid("double Pochhammer with q-exponent 0 is singular".into()));
    }
    let step = r.denom().to_u32().ok_or_else(|| Error::Invalid("step too large".into()))?;
    let p = r.numer().to_usize().unwrap();
    let mut g = vec![Scalar::zero(); order + 1];
    let q1 = tower.q_pow(e1)?;
    let q2 = tower.q_pow(e2)?;
    let mut k = 1usize;
    while k * p <= order {
        let kk = k as i64;
        let den = Scalar::from_int(kk) * (Scalar::one() - q1.pow(kk)) * (Scalar::one() - q2.pow(kk));
        g[k * p] = -(a.pow(kk) / den);
        k += 1;
    }
    ZSeries::new(rat_int(0), step, g).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_half() {
        let s = binomial_series(&rat_int(1), &rat(1, 2), 2);
        assert_eq!(s.coeffs(), &[rat_int(1), rat(-1, 2), rat(-1, 8)]);
        let s = binomial_series(&rat_int(1), &rat_int(1), 3);
        assert_eq!(s.coeffs(), &[rat_int(1), rat_int(-1), rat_int(0), rat_int(0)]);
    }

    #[test]
    fn pochhammer_first_coefficient() {
        let tw = Tower::new(2);
        let q = tw.q(1, 1);
        let s = double_pochhammer(&tw, &q, &rat_int(1), &rat_int(1), &rat_int(1), 3).unwrap();
        let one = Scalar::one();
        assert_eq!(s.coeffs()[1], -(&q / ((&one - &q) * (&one - &q))));
        let z = double_pochhammer(&tw, &Scalar::zero(), &rat_int(1), &rat_int(1), &rat_int(1), 3).unwrap();
        assert_eq!(z, ZSeries::constant(Scalar::one(), 1, 3));
        assert!(double_pochhammer(&tw, &q, &rat_int(0), &rat_int(1), &rat_int(1), 3).is_err());
    }

    #[test]
    fn offsets_must_be_commensurate() {
        let a = ZSeries::new(rat(1, 2), 1, vec![rat_int(1)]);
        let b = ZSeries::new(rat_int(0), 1, vec![rat_int(1)]);
        assert!(a.add(&b).is_err());
        let mut st = StratifiedSeries::default();
        st.push(a);
        st.push(b);
        assert_eq!(st.strata().len(), 2);
    }
}
