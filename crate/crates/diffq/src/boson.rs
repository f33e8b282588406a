//! Heisenberg Fock spaces in the monomial basis and mode extraction of
//! normally ordered exponentials.
//!
//! A basis vector is `Π_b Π_{k ∈ μ_b} a_b[-k] |0⟩` for a tuple of partitions
//! `μ_b`, with `[a_b[j], a_c[k]] = j δ_{bc} δ_{j+k,0}`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_bigint::BigInt;
use num_traits::One;

use crate::fock::tuples_of_degree;
use crate::partitions::Partition;
use crate::scalars::{Rat, Scalar};
use crate::vector::LinComb;

/// Oscillator content, one partition of mode numbers per boson.
pub type Osc = Vec<Partition>;

pub fn osc_degree(o: &Osc) -> usize {
    o.iter().map(|p| p.size()).sum()
}

fn multiplicities(p: &Partition) -> Vec<(usize, usize)> {
    let mut m: BTreeMap<usize, usize> = BTreeMap::new();
    for &k in p.parts() {
        *m.entry(k).or_insert(0) += 1;
    }
    m.into_iter().collect()
}

fn from_multiplicities(m: &[(usize, usize)]) -> Partition {
    let mut parts = Vec::new();
    for &(k, c) in m {
        parts.extend(std::iter::repeat_n(k, c));
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(parts)
}

fn merge(x: &Partition, y: &Partition) -> Partition {
    let mut parts = x.parts().to_vec();
    parts.extend_from_slice(y.parts());
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(parts)
}

fn binomial(m: usize, r: usize) -> Scalar {
    let mut c = BigInt::one();
    for i in 0..r {
        c = c * (m - i) / (i + 1);
    }
    Scalar::from_rat(Rat::from_integer(c))
}

fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |a, k| a * k)
}

/// `a_b[k]` on a basis vector: `k ∂/∂p_k` for `k > 0`, multiplication for
/// `k < 0`.
pub fn heisenberg(b: usize, k: i64, o: &Osc) -> LinComb<Osc> {
    assert!(k != 0);
    let mut out = LinComb::zero();
    if k < 0 {
        let mut n = o.clone();
        n[b] = merge(&o[b], &Partition::new(vec![(-k) as usize]));
        out.add_term(n, Scalar::one());
        return out;
    }
    let ku = k as usize;
    let mut m = multiplicities(&o[b]);
    if let Some(e) = m.iter_mut().find(|e| e.0 == ku) {
        let c = e.1;
        e.1 -= 1;
        let mut n = o.clone();
        n[b] = from_multiplicities(&m);
        out.add_term(n, Scalar::from_int(k * c as i64));
    }
    out
}

type Coef = Box<dyn Fn(usize, i64) -> Scalar>;

/// `:exp(Σ_{b, j≠0} f(b, j) a_b[j] w^(-j)):`, creation part to the left.
/// With a Gram vector `g`, `[a_b[j], a_b[-j]] = j g_b`.
pub struct Vertex {
    species: usize,
    f: Coef,
    gram: Vec<Scalar>,
    creation: RefCell<BTreeMap<usize, Vec<(Osc, Scalar)>>>,
}

impl Vertex {
    pub fn new(species: usize, f: impl Fn(usize, i64) -> Scalar + 'static) -> Self {
        Vertex { species, f: Box::new(f), gram: vec![Scalar::one(); species], creation: RefCell::new(BTreeMap::new()) }
    }

    pub fn with_gram(gram: Vec<Scalar>, f: impl Fn(usize, i64) -> Scalar + 'static) -> Self {
        Vertex { species: gram.len(), f: Box::new(f), gram, creation: RefCell::new(BTreeMap::new()) }
    }

    pub fn species(&self) -> usize {
        self.species
    }

    /// Terms of `[w^N] exp(Σ_{b, j>0} f(b, -j) a_b[-j] w^j) |0⟩`.
    fn creation_terms(&self, n: usize) -> Vec<(Osc, Scalar)> {
        if let Some(v) = self.creation.borrow().get(&n) {
            return v.clone();
        }
        let mut out = Vec::new();
        for t in tuples_of_degree(self.species, n) {
            let mut c = Scalar::one();
            for (b, p) in t.iter().enumerate() {
                for (j, m) in multiplicities(p) {
                    c = c * (self.f)(b, -(j as i64)).pow(m as i64) * Scalar::from_rat(Rat::new(BigInt::one(), factorial(m)));
                }
            }
            if !c.is_zero() {
                out.push((t, c));
            }
        }
        self.creation.borrow_mut().insert(n, out.clone());
        out
    }

    /// `[w^target]` of the operator applied to a basis vector.
    pub fn mode(&self, o: &Osc, target: i64) -> LinComb<Osc> {
        // annihilation part: p_{b,j} -> p_{b,j} + j g_b f(b,j) w^(-j)
        let slots: Vec<(usize, usize, usize)> =
            o.iter().enumerate().flat_map(|(b, p)| multiplicities(p).into_iter().map(move |(j, m)| (b, j, m))).collect();
        let mut out = LinComb::zero();
        let mut choice = vec![0usize; slots.len()];
        loop {
            let drop: usize = slots.iter().zip(&choice).map(|(s, r)| s.1 * r).sum();
            let need = target + drop as i64;
            if need >= 0 {
                let mut c = Scalar::one();
                let mut rest: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.species];
                for (&(b, j, m), &r) in slots.iter().zip(&choice) {
                    if r > 0 {
                        c = c * ((self.f)(b, j as i64) * Scalar::from_int(j as i64) * &self.gram[b]).pow(r as i64) * binomial(m, r);
                    }
                    rest[b].push((j, m - r));
                }
                if !c.is_zero() {
                    let rest: Osc = rest.iter().map(|m| from_multiplicities(m)).collect();
                    for (t, d) in self.creation_terms(need as usize) {
                        let merged: Osc = rest.iter().zip(&t).map(|(x, y)| merge(x, y)).collect();
                        out.add_term(merged, &c * &d);
                    }
                }
            }
            // next choice
            let mut i = 0;
            loop {
                if i == slots.len() {
                    return out;
                }
                if choice[i] < slots[i].2 {
                    choice[i] += 1;
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }
}

/// All oscillator tuples of total degree `<= d`.
pub fn osc_window(species: usize, d: usize) -> Vec<Osc> {
    (0..=d).flat_map(|k| tuples_of_degree(species, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn heisenberg_commutator() {
        for o in osc_window(2, 4) {
            for (j, k) in [(1i64, -1i64), (2, -2), (1, -2), (3, -1)] {
                let v = LinComb::basis(o.clone());
                let apply = |k: i64, v: &LinComb<Osc>| -> LinComb<Osc> {
                    let mut r = LinComb::zero();
                    for (x, c) in v.iter() {
                        r.add_assign_scaled(&heisenberg(0, k, x), c);
                    }
                    r
                };
                let lhs = apply(j, &apply(k, &v)).sub(&apply(k, &apply(j, &v)));
                let rhs = if j + k == 0 { v.scale(&Scalar::from_int(j)) } else { LinComb::zero() };
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn exponential_of_one_mode() {
        // :exp(x a[-1] w + y a[1] w^-1): on a[-1]|0⟩, w^0 part: 1·a[-1] + x y·a[-1]
        let x = Scalar::t_pow(1);
        let y = Scalar::t_pow(2);
        let (x2, y2) = (x.clone(), y.clone());
        let v = Vertex::new(1, move |_, j| match j {
            -1 => x2.clone(),
            1 => y2.clone(),
            _ => Scalar::zero(),
        });
        let r = v.mode(&vec![p(&[1])], 0);
        assert_eq!(r.coeff(&vec![p(&[1])]), Scalar::one() + &x * &y);
        let r = v.mode(&vec![p(&[])], 2);
        assert_eq!(r.coeff(&vec![p(&[1, 1])]), &x * &x * Scalar::ratio(1, 2));
        let r = v.mode(&vec![p(&[1])], -1);
        assert_eq!(r.coeff(&vec![p(&[])]), y);
    }
}
