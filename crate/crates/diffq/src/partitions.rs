//! Young diagrams: hooks, contents, ribbons, Maya diagrams, n-cores and
//! n-quotients, and the root lattice `Q_(n)`.
//!
//! Boxes are `(i, j)` with row `i` and column `j`, both 1-based; the content
//! is `c(s) = i - j`.
//!
//! A partition `λ` with charge `l` is the Maya diagram occupying
//! `{ l + i - λ_{i+1} : i >= 0 }`. These are the exponents of the
//! semi-infinite monomial `x^(l-λ_1) ∧ x^(l+1-λ_2) ∧ ...`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalars::{rat, Rat, Scalar};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

/// One box of a diagram with its hook length and content.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxData {
    pub row: usize,
    pub col: usize,
    pub hook: usize,
    pub content: i64,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Panics unless `parts` is weakly decreasing; trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        assert!(parts.windows(2).all(|w| w[0] >= w[1]), "parts must be weakly decreasing: {:?}", parts);
        Partition { parts }
    }

    pub fn try_new(parts: Vec<usize>) -> Result<Self> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).all(|w| w[0] >= w[1]) {
            Ok(Partition { parts })
        } else {
            Err(Error::Invalid(alloc::format!("not a partition: {:?}", parts)))
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_i` with 1-based `i`; zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let w = self.part(1);
        let parts = (1..=w).map(|j| self.parts.iter().filter(|&&p| p >= j).count()).collect();
        Partition { parts }
    }

    pub fn contains_box(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && self.part(i) >= j
    }

    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().enumerate().flat_map(|(r, &p)| (1..=p).map(move |c| (r + 1, c)))
    }

    pub fn hooks_contents(&self) -> Vec<BoxData> {
        let conj = self.conjugate();
        self.boxes()
            .map(|(i, j)| BoxData {
                row: i,
                col: j,
                hook: self.part(i) - j + conj.part(j) - i + 1,
                content: i as i64 - j as i64,
            })
            .collect()
    }

    /// `c(λ) = Σ_s c(s)`.
    pub fn content_sum(&self) -> i64 {
        self.boxes().map(|(i, j)| i as i64 - j as i64).sum()
    }

    /// Frobenius coordinates `(p, q)`: `p_k = λ_k - k + 1`, `q_k = λ'_k - k + 1`
    /// over the diagonal boxes, so `|λ| = Σ (p_k + q_k - 1)`.
    pub fn frobenius(&self) -> (Vec<usize>, Vec<usize>) {
        let conj = self.conjugate();
        let d = (1..).take_while(|&k| self.part(k) >= k).count();
        let p = (1..=d).map(|k| self.part(k) + 1 - k).collect();
        let q = (1..=d).map(|k| conj.part(k) + 1 - k).collect();
        (p, q)
    }

    pub fn from_frobenius(p: &[usize], q: &[usize]) -> Result<Self> {
        if p.len() != q.len()
            || p.windows(2).any(|w| w[0] <= w[1])
            || q.windows(2).any(|w| w[0] <= w[1])
            || p.iter().chain(q.iter()).any(|&x| x == 0)
        {
            return Err(Error::Invalid("bad Frobenius coordinates".into()));
        }
        let d = p.len();
        let mut parts: Vec<usize> = (0..d).map(|k| p[k] + k).collect();
        // rows below the diagonal block come from the legs
        let rows = q.first().map_or(0, |&q0| q0);
        for i in (d + 1)..=rows {
            let cnt = q.iter().enumerate().filter(|(k, &qk)| qk + k >= i).count();
            parts.push(cnt);
        }
        Partition::try_new(parts)
    }

    /// Occupied positions `l + i - λ_{i+1}` for `i = 0..count`.
    pub fn maya_positions(&self, charge: i64, count: usize) -> Vec<i64> {
        (0..count).map(|i| charge + i as i64 - self.part(i + 1) as i64).collect()
    }

    /// Rebuild from the first `count` occupied positions (ascending) of a
    /// charge-`charge` Maya diagram whose positions `>= charge + count` are
    /// all occupied.
    pub fn from_maya_positions(charge: i64, pos: &[i64]) -> Self {
        let parts = pos.iter().enumerate().map(|(i, &s)| (charge + i as i64 - s) as usize).collect();
        Partition::new(parts)
    }

    /// All `μ ⊃ λ` with `μ \ λ` a `b`-ribbon, with `ht(μ \ λ)`.
    pub fn add_ribbons(&self, b: usize) -> Vec<(Partition, usize)> {
        assert!(b >= 1);
        let count = self.len() + b + 1;
        let pos = self.maya_positions(0, count);
        let occ: BTreeSet<i64> = pos.iter().copied().collect();
        let mut out = Vec::new();
        for (idx, &k) in pos.iter().enumerate() {
            let target = k - b as i64;
            if occ.contains(&target) {
                continue;
            }
            let ht = occ.range((target + 1)..k).count();
            let mut np = pos.clone();
            np[idx] = target;
            np.sort_unstable();
            out.push((Partition::from_maya_positions(0, &np), ht));
        }
        out.sort();
        out
    }

    /// All `μ ⊂ λ` with `λ \ μ` a `b`-ribbon, with `ht(λ \ μ)`.
    pub fn remove_ribbons(&self, b: usize) -> Vec<(Partition, usize)> {
        assert!(b >= 1);
        let count = self.len() + b + 1;
        let pos = self.maya_positions(0, count);
        let occ: BTreeSet<i64> = pos.iter().copied().collect();
        let lim = count as i64;
        let mut out = Vec::new();
        for (idx, &k) in pos.iter().enumerate() {
            let target = k + b as i64;
            if occ.contains(&target) || target >= lim {
                continue;
            }
            let ht = occ.range((k + 1)..target).count();
            let mut np = pos.clone();
            np[idx] = target;
            np.sort_unstable();
            out.push((Partition::from_maya_positions(0, &np), ht));
        }
        out.sort();
        out
    }

    /// Boxes of `self \ inner` (caller guarantees containment).
    pub fn skew_boxes(&self, inner: &Partition) -> Vec<(usize, usize)> {
        self.boxes().filter(|&(i, j)| !inner.contains_box(i, j)).collect()
    }

    /// All partitions of `m`, in reverse lexicographic order.
    pub fn all_of_size(m: usize) -> Vec<Partition> {
        fn rec(m: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if m == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=m.min(max)).rev() {
                cur.push(p);
                rec(m - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, m, &mut Vec::new(), &mut out);
        out
    }

    /// Number of partitions of each size `0..=m`.
    pub fn counts(m: usize) -> Vec<u64> {
        let mut p = vec![0u64; m + 1];
        p[0] = 1;
        for k in 1..=m {
            for s in k..=m {
                p[s] += p[s - k];
            }
        }
        p
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "]")
    }
}

impl core::str::FromStr for Partition {
    type Err = Error;
    /// Literal syntax `[4,2,1]`; `[]` is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(alloc::format!("partition literal must look like [4,2,1]: {}", s)))?;
        let mut parts = Vec::new();
        for tok in inner.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            parts.push(tok.parse::<usize>().map_err(|_| Error::Parse(alloc::format!("bad part {:?}", tok)))?);
        }
        Partition::try_new(parts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChargedPartition {
    pub partition: Partition,
    pub charge: i64,
}

/// Maya diagram: charge `l` plus the finite difference from the charge-`l`
/// vacuum `{l, l+1, ...}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MayaDiagram {
    pub charge: i64,
    /// occupied positions below `charge`, ascending
    pub extra: Vec<i64>,
    /// empty positions at or above `charge`, ascending
    pub holes: Vec<i64>,
}

impl MayaDiagram {
    pub fn is_occupied(&self, k: i64) -> bool {
        if k < self.charge {
            self.extra.binary_search(&k).is_ok()
        } else {
            self.holes.binary_search(&k).is_err()
        }
    }

    /// Build from any finite occupation pattern: `occ` lists the occupied
    /// positions below `top`; everything `>= top` is occupied.
    pub fn from_occupied(occ: &[i64], top: i64) -> Self {
        let mut occ: Vec<i64> = occ.iter().copied().filter(|&k| k < top).collect();
        occ.sort_unstable();
        occ.dedup();
        let count = occ.len() as i64;
        // occupied positions are s_0 < s_1 < ... with s_count = top
        let charge = top - count;
        let extra = occ.iter().copied().filter(|&k| k < charge).collect();
        let holes = (charge..top).filter(|k| occ.binary_search(k).is_err()).collect();
        MayaDiagram { charge, extra, holes }
    }
}

impl From<&ChargedPartition> for MayaDiagram {
    fn from(c: &ChargedPartition) -> Self {
        let count = c.partition.len();
        let pos = c.partition.maya_positions(c.charge, count);
        MayaDiagram::from_occupied(&pos, c.charge + count as i64)
    }
}

impl From<&MayaDiagram> for ChargedPartition {
    fn from(m: &MayaDiagram) -> Self {
        let top = m.holes.last().map_or(m.charge, |&h| h + 1);
        let bottom = m.extra.first().copied().unwrap_or(m.charge);
        let pos: Vec<i64> = (bottom..top).filter(|&k| m.is_occupied(k)).collect();
        let count = pos.len() as i64;
        let charge = top - count;
        debug_assert_eq!(charge, m.charge);
        ChargedPartition { partition: Partition::from_maya_positions(charge, &pos), charge }
    }
}

/// Point of `Q_(n) = { l ∈ Z^n : Σ l_i = 0 }`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    l: Vec<i64>,
}

impl LatticePoint {
    pub fn new(l: Vec<i64>) -> Result<Self> {
        if l.is_empty() || l.iter().sum::<i64>() != 0 {
            return Err(Error::Invalid(alloc::format!("{:?} is not in Q_(n)", l)));
        }
        Ok(LatticePoint { l })
    }

    pub fn zero(n: usize) -> Self {
        LatticePoint { l: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.l.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.l
    }

    /// `½ Σ ((l_i + i/n)^2 - (i/n)^2)`, which equals `|core|/n`.
    pub fn norm(&self) -> Rat {
        let n = self.n() as i64;
        let mut s = rat(0, 1);
        for (i, &li) in self.l.iter().enumerate() {
            let x = rat(li, 1) + rat(i as i64, n);
            let y = rat(i as i64, n);
            s += &x * &x - &y * &y;
        }
        s / rat(2, 1)
    }

    /// The `(i, j, k)` triples with multiplicity `l_i - l_j - k`: `l_i > l_j`,
    /// `k = 0..l_i-l_j` when `i > j` and `k = 1..l_i-l_j` when `i < j`.
    pub fn ijk_triples(&self) -> Vec<(usize, usize, i64, i64)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let d = self.l[i] - self.l[j];
                if d <= 0 {
                    continue;
                }
                let k0 = if i > j { 0 } else { 1 };
                for k in k0..d {
                    out.push((i, j, k, d - k));
                }
            }
        }
        out
    }

    /// The n-core with these residue charges.
    pub fn core(&self) -> Partition {
        let n = self.n() as i64;
        let lo = self.l.iter().copied().min().unwrap_or(0);
        let hi = self.l.iter().copied().max().unwrap_or(0);
        // positions n*m + r with m >= l_r; all positions >= n*hi are occupied
        let top = n * hi.max(0) + n;
        let bottom = n * lo.min(0);
        let occ: Vec<i64> = (bottom..top)
            .filter(|&k| {
                let r = k.rem_euclid(n);
                let m = k.div_euclid(n);
                m >= self.l[r as usize]
            })
            .collect();
        let cp = ChargedPartition::from(&MayaDiagram::from_occupied(&occ, top));
        debug_assert_eq!(cp.charge, 0);
        cp.partition
    }
}

/// n-quotient data of a charge-0 partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreQuotient {
    pub core: Partition,
    pub charges: LatticePoint,
    pub quotients: Vec<Partition>,
}

/// Split the Maya diagram of `λ` (charge 0) by residues mod n. Residue `r`
/// positions `n m + r` form a Maya diagram in `m` with charge `l_r`.
pub fn core_quotient(lambda: &Partition, n: usize) -> CoreQuotient {
    assert!(n >= 1);
    let ni = n as i64;
    let count = lambda.len();
    let pos = lambda.maya_positions(0, count);
    // everything >= top is occupied; round top up to a multiple of n
    let top = (count as i64 + ni - 1).div_euclid(ni) * ni;
    let mut charges = Vec::with_capacity(n);
    let mut quotients = Vec::with_capacity(n);
    for r in 0..ni {
        let occ: Vec<i64> = pos
            .iter()
            .copied()
            .chain((count as i64)..top)
            .filter(|k| k.rem_euclid(ni) == r)
            .map(|k| k.div_euclid(ni))
            .collect();
        let md = MayaDiagram::from_occupied(&occ, top / ni);
        let cp = ChargedPartition::from(&md);
        charges.push(cp.charge);
        quotients.push(cp.partition);
    }
    let charges = LatticePoint::new(charges).expect("residue charges sum to zero");
    CoreQuotient { core: charges.core(), charges, quotients }
}

/// Inverse of [`core_quotient`].
pub fn from_core_quotient(charges: &LatticePoint, quotients: &[Partition]) -> Partition {
    let n = charges.n() as i64;
    assert_eq!(quotients.len(), charges.n());
    let mut occ = Vec::new();
    let mut top = i64::MIN;
    for r in 0..n {
        let c = charges.coords()[r as usize];
        let qlen = quotients[r as usize].len();
        let mpos = quotients[r as usize].maya_positions(c, qlen);
        occ.extend(mpos.iter().map(|m| n * m + r));
        top = top.max(n * (c + qlen as i64) + n);
    }
    for r in 0..n {
        let c = charges.coords()[r as usize];
        let qlen = quotients[r as usize].len() as i64;
        let mut m = c + qlen;
        while n * m + r < top {
            occ.push(n * m + r);
            m += 1;
        }
    }
    let cp = ChargedPartition::from(&MayaDiagram::from_occupied(&occ, top));
    assert_eq!(cp.charge, 0);
    cp.partition
}

/// Sign relating `|λ⟩` in one Fock module to `⊗_r |λ^(r)⟩` in the tensor
/// product of residue components: the parity of re-sorting the occupied
/// positions into residue-major order, measured relative to the core.
pub fn residue_sign(lambda: &Partition, n: usize) -> i32 {
    let inv = |p: &Partition| -> usize {
        let ni = n as i64;
        let count = p.len().max(lambda.len()) + 2 * n;
        let top = (count as i64 + ni - 1).div_euclid(ni) * ni;
        let pos = p.maya_positions(0, top as usize);
        let mut inv = 0usize;
        for a in 0..pos.len() {
            for b in (a + 1)..pos.len() {
                if pos[a].rem_euclid(ni) > pos[b].rem_euclid(ni) {
                    inv += 1;
                }
            }
        }
        inv
    };
    let cq = core_quotient(lambda, n);
    let d = inv(lambda) as i64 - inv(&cq.core) as i64;
    if d.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `Q^(h/2) - Q^(-h/2)` where `t^half = Q^(1/2)`.
pub fn qbracket(half: i64, h: i64) -> Scalar {
    Scalar::t_pow(half * h) - Scalar::t_pow(-half * h)
}

/// `Π_(i,j,k) (Q^((nk+i-j)/2) - Q^(-(nk+i-j)/2))^(l_i-l_j-k)` with
/// `t^half = Q^(1/2)`.
pub fn hook_product_core(l: &LatticePoint, half: i64) -> Scalar {
    let n = l.n() as i64;
    let mut acc = Scalar::one();
    for (i, j, k, m) in l.ijk_triples() {
        let h = n * k + i as i64 - j as i64;
        acc *= qbracket(half, h).pow(m);
    }
    acc
}

/// `Π_{s∈λ} (Q^(h(s)/2) - Q^(-h(s)/2))`.
pub fn hook_product(lambda: &Partition, half: i64) -> Scalar {
    let mut acc = Scalar::one();
    for b in lambda.hooks_contents() {
        acc *= qbracket(half, b.hook as i64);
    }
    acc
}

/// All `l ∈ Q_(n)` with `norm(l) <= bound`, sorted.
pub fn enumerate_lattice(n: usize, bound: &Rat) -> Vec<LatticePoint> {
    assert!(n >= 1);
    // (|l_i| - 1)^2 <= 2 B + n bounds each coordinate
    let b = bound.to_integer();
    let b: i64 = i64::try_from(&b).unwrap_or(i64::MAX / 4).max(0);
    let mut r = 1i64;
    while (r - 1) * (r - 1) <= 2 * b + 2 + n as i64 {
        r += 1;
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(i: usize, n: usize, r: i64, cur: &mut Vec<i64>, bound: &Rat, out: &mut Vec<LatticePoint>) {
        if i == n - 1 {
            let s: i64 = cur[..n - 1].iter().sum();
            cur[n - 1] = -s;
            let p = LatticePoint { l: cur.clone() };
            if &p.norm() <= bound {
                out.push(p);
            }
            return;
        }
        for v in -r..=r {
            cur[i] = v;
            rec(i + 1, n, r, cur, bound, out);
        }
    }
    rec(0, n, r, &mut cur, bound, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn hooks_of_21() {
        let hc = p(&[2, 1]).hooks_contents();
        let mut hooks: Vec<usize> = hc.iter().map(|b| b.hook).collect();
        hooks.sort();
        assert_eq!(hooks, vec![1, 1, 3]);
        let mut cs: Vec<i64> = hc.iter().map(|b| b.content).collect();
        cs.sort();
        assert_eq!(cs, vec![-1, 0, 1]);
        assert!(Partition::empty().hooks_contents().is_empty());
    }

    #[test]
    fn ribbons_from_empty_are_hooks() {
        for b in 1..6 {
            let r = Partition::empty().add_ribbons(b);
            assert_eq!(r.len(), b);
            for (mu, ht) in r {
                assert_eq!(mu.size(), b);
                assert_eq!(mu.part(1), b - ht);
                assert_eq!(mu.len(), ht + 1);
            }
        }
    }

    #[test]
    fn remove_ribbons_of_22() {
        assert_eq!(p(&[2, 2]).remove_ribbons(2), vec![(p(&[1, 1]), 1), (p(&[2]), 0)]);
        assert_eq!(p(&[2, 2]).remove_ribbons(1), vec![(p(&[2, 1]), 0)]);
        assert_eq!(p(&[2, 2]).remove_ribbons(3), vec![(p(&[1]), 1)]);
        assert!(p(&[2, 2]).remove_ribbons(4).is_empty());
    }

    #[test]
    fn frobenius_round_trip() {
        for m in 0..9 {
            for lam in Partition::all_of_size(m) {
                let (a, b) = lam.frobenius();
                let s: usize = a.iter().zip(&b).map(|(x, y)| x + y - 1).sum();
                assert_eq!(s, m);
                assert_eq!(Partition::from_frobenius(&a, &b).unwrap(), lam);
            }
        }
    }

    #[test]
    fn core_of_211() {
        let cq = core_quotient(&p(&[2, 1, 1]), 2);
        assert_eq!(cq.core, p(&[]));
        assert_eq!(cq.charges.coords(), &[0, 0]);
        assert_eq!(from_core_quotient(&cq.charges, &cq.quotients), p(&[2, 1, 1]));
        let cq = core_quotient(&p(&[3, 1, 1]), 2);
        assert_eq!(cq.core, p(&[1]));
        assert_eq!(cq.charges.coords(), &[1, -1]);
    }

    #[test]
    fn lattice_norm_example() {
        let l = LatticePoint::new(vec![1, -1]).unwrap();
        assert_eq!(l.norm(), rat(1, 2));
        assert_eq!(l.core(), p(&[1]));
        assert_eq!(enumerate_lattice(2, &rat(0, 1)), vec![LatticePoint::zero(2)]);
        assert_eq!(
            enumerate_lattice(2, &rat(1, 2)),
            vec![LatticePoint::new(vec![0, 0]).unwrap(), LatticePoint::new(vec![1, -1]).unwrap()]
        );
    }

    #[test]
    fn literal_syntax() {
        assert_eq!("[4,2,1]".parse::<Partition>().unwrap(), p(&[4, 2, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("[1,2]".parse::<Partition>().is_err());
        assert_eq!(alloc::format!("{}", p(&[3, 1])), "[3,1]");
    }
}
