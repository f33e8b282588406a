//! Twisted Fock modules `F_u^σ` for `σ` with bottom row `(n', n)`,
//! `gcd(n, n') = 1`, in four realizations:
//!
//! * restriction of the `Diff_(q^(1/n))` Fock module `F_(u^(1/n))` along
//!   `E^tw_{a,b} = E_{a, a n' + b n}`
//! * n bosons `a_0, …, a_(n-1)` with lattice `Q_(n)` and cocycles `ε_{a,b}`
//! * n charged fermions (for `n' ≢ 0 mod n`)
//! * one boson, whose currents are root-of-unity averages of the untwisted one
//!
//! All share `t = q^(1/2n)`, `u^(1/n) = t^u_root`, and the grading in units
//! of `1/n` in which `E^tw_k` has degree `-(n' + n k)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::boson::{heisenberg, osc_degree, osc_window, Osc, Vertex};
use crate::fock::{act_e, character, window_basis, FockConfig, Tuple};
use crate::partitions::{enumerate_lattice, LatticePoint, Partition};
use crate::relations::{chevalley_relations, graded_trace, serre_relations, Chevalley, Memo, ModeModule};
use crate::scalars::{rat, rat_int, Cyclo, Scalar};
use crate::vector::LinComb;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistedParams {
    pub n: usize,
    /// `n'`
    pub ntw: i64,
    /// `u^(1/n) = t^u_root`
    pub u_root: i64,
}

impl TwistedParams {
    pub fn new(n: usize, ntw: i64, u_root: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("n must be positive".into()));
        }
        if ntw.rem_euclid(n as i64) != 0 && num_integer::gcd(n as i64, ntw) != 1 {
            return Err(Error::Invalid(format!("gcd({}, {}) != 1", n, ntw)));
        }
        Ok(TwistedParams { n, ntw, u_root })
    }

    fn ni(&self) -> i64 {
        self.n as i64
    }

    /// `q^(k/2) = t^(n k)`
    pub fn q_half(&self, k: i64) -> Scalar {
        Scalar::t_pow(self.ni() * k)
    }

    fn u_pow(&self, s: i64) -> Scalar {
        Scalar::t_pow(self.u_root * s)
    }
}

/// Charges in `Q_(n)` with one partition per boson or fermion.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeState {
    pub l: Vec<i64>,
    pub osc: Osc,
}

pub(crate) fn lattice_degree(n: usize, s: &LatticeState) -> usize {
    let lp = LatticePoint::new(s.l.clone()).expect("state in Q_(n)");
    let d = lp.norm() * rat_int(n as i64);
    d.to_integer().to_usize().unwrap() + n * osc_degree(&s.osc)
}

pub(crate) fn lattice_window(n: usize, deg: usize) -> Vec<LatticeState> {
    let mut out = Vec::new();
    for l in enumerate_lattice(n, &rat(deg as i64, n as i64)) {
        let base = (l.norm() * rat_int(n as i64)).to_integer().to_usize().unwrap();
        for osc in osc_window(n, (deg - base) / n) {
            out.push(LatticeState { l: l.coords().to_vec(), osc });
        }
    }
    out
}

pub(crate) fn apply_linear<K: Ord + Clone>(v: &LinComb<K>, f: impl Fn(&K) -> LinComb<K>) -> LinComb<K> {
    let mut out = LinComb::zero();
    for (k, c) in v.iter() {
        out.add_assign_scaled(&f(k), c);
    }
    out
}

/// `F_(u^(1/n))` of `Diff_(q^(1/n))` restricted to the twisted subalgebra.
pub struct Restriction {
    pub params: TwistedParams,
    cfg: FockConfig,
}

impl Restriction {
    pub fn new(params: TwistedParams) -> Self {
        let cfg = FockConfig::new(vec![Scalar::t_pow(params.u_root)], 1, usize::MAX / 4);
        Restriction { params, cfg }
    }

    /// `E^tw_{a,b}`
    pub fn act(&self, a: i64, b: i64, v: &LinComb<Tuple>) -> LinComb<Tuple> {
        act_e(a, a * self.params.ntw + b * self.params.ni(), v, &self.cfg)
    }
}

impl ModeModule for Restriction {
    type Key = Tuple;

    fn apply(&self, op: Chevalley, v: &LinComb<Tuple>) -> LinComb<Tuple> {
        let (a, k) = op.label();
        self.act(a, k, v)
    }

    fn window(&self, deg: usize) -> Vec<Tuple> {
        window_basis(1, deg)
    }

    fn central(&self) -> (i64, i64) {
        (self.params.ni(), self.params.ntw)
    }

    fn q_half(&self, k: i64) -> Scalar {
        self.params.q_half(k)
    }
}

/// One summand `(a, b)` of a bosonic current.
struct BosonTerm {
    a: usize,
    b: usize,
    /// `z`-exponent before zero modes
    shift: i64,
    /// constant prefactor
    pre: Scalar,
    vertex: Vertex,
}

/// `F^(na) ⊗ C[Q_(n)]` with
///
/// ```text
/// E(z) = Σ_{b-a ≡ -n'} u^(1/n) q^((a+b-n)/2n) z^((n'-a+b)/n + 1)
///          :exp(φ_b(q^(1/2) z) - φ_a(q^(-1/2) z)): ε_{a,b}
/// F(z) = Σ_{b-a ≡ n'} u^(-1/n) q^((n-a-b)/2n) z^((-n'-a+b)/n + 1)
///          :exp(φ_b(q^(-1/2) z) - φ_a(q^(1/2) z)): ε_{a,b}
/// H_k  = Σ_b a_b[k]
/// ```
///
/// where `ε_{a,b} = Π_{min(a,b) ≤ r < max(a,b)} (-1)^(a_r[0])`, times `-1` when
/// `a > b`. Without a constant on one of the two orderings `[E_a, F_b]`
/// fails; putting it on `a < b` instead gives the automorphism `E -> -E`,
/// `F -> -F`, which for odd `n` no longer matches the restriction.
///
/// For `n > 1` the currents need `n' ≢ 0 mod n`.
pub struct LatticeBoson {
    pub params: TwistedParams,
    e_terms: Vec<BosonTerm>,
    f_terms: Vec<BosonTerm>,
}

impl LatticeBoson {
    pub fn new(params: TwistedParams) -> Result<Self> {
        let n = params.ni();
        if n > 1 && params.ntw.rem_euclid(n) == 0 {
            return Err(Error::Invalid("the lattice currents need n' ≢ 0 mod n".into()));
        }
        let mut e_terms = Vec::new();
        let mut f_terms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let (ua, ub) = (a as usize, b as usize);
                if (b - a + params.ntw).rem_euclid(n) == 0 {
                    let vertex = Vertex::new(params.n, move |c, j| {
                        let mut s = Scalar::zero();
                        if c == ub {
                            s += Scalar::t_pow(-n * j);
                        }
                        if c == ua {
                            s -= Scalar::t_pow(n * j);
                        }
                        s * Scalar::ratio(1, j)
                    });
                    e_terms.push(BosonTerm {
                        a: ua,
                        b: ub,
                        shift: (params.ntw - a + b) / n + 1,
                        pre: params.u_pow(1) * Scalar::t_pow(a + b - n),
                        vertex,
                    });
                }
                if (b - a - params.ntw).rem_euclid(n) == 0 {
                    let vertex = Vertex::new(params.n, move |c, j| {
                        let mut s = Scalar::zero();
                        if c == ub {
                            s += Scalar::t_pow(n * j);
                        }
                        if c == ua {
                            s -= Scalar::t_pow(-n * j);
                        }
                        s * Scalar::ratio(1, j)
                    });
                    f_terms.push(BosonTerm {
                        a: ua,
                        b: ub,
                        shift: (-params.ntw - a + b) / n + 1,
                        pre: params.u_pow(-1) * Scalar::t_pow(n - a - b),
                        vertex,
                    });
                }
            }
        }
        Ok(LatticeBoson { params, e_terms, f_terms })
    }

    fn current(&self, terms: &[BosonTerm], sign: i64, k: i64, s: &LatticeState) -> LinComb<LatticeState> {
        let n = self.params.ni();
        let mut out = LinComb::zero();
        for t in terms {
            let (la, lb) = (s.l[t.a], s.l[t.b]);
            let lo = t.a.min(t.b);
            let hi = t.a.max(t.b);
            let mut eps: i64 = s.l[lo..hi].iter().sum();
            if t.a > t.b {
                eps += 1;
            }
            let mut c = &t.pre * &Scalar::t_pow(sign * n * (la + lb));
            if eps.rem_euclid(2) == 1 {
                c = -c;
            }
            let zero_modes = if t.a == t.b { 0 } else { lb - la };
            let target = -k - t.shift - zero_modes;
            let mut l = s.l.clone();
            l[t.b] += 1;
            l[t.a] -= 1;
            for (o, x) in t.vertex.mode(&s.osc, target).iter() {
                out.add_term(LatticeState { l: l.clone(), osc: o.clone() }, x * &c);
            }
        }
        out
    }
}

impl ModeModule for LatticeBoson {
    type Key = LatticeState;

    fn apply(&self, op: Chevalley, v: &LinComb<LatticeState>) -> LinComb<LatticeState> {
        apply_linear(v, |s| match op {
            Chevalley::E(k) => self.current(&self.e_terms, 1, k, s),
            Chevalley::F(k) => self.current(&self.f_terms, -1, k, s),
            Chevalley::H(k) => {
                let mut out = LinComb::zero();
                for b in 0..self.params.n {
                    for (o, c) in heisenberg(b, k, &s.osc).iter() {
                        out.add_term(LatticeState { l: s.l.clone(), osc: o.clone() }, c.clone());
                    }
                }
                out
            }
        })
    }

    fn window(&self, deg: usize) -> Vec<LatticeState> {
        lattice_window(self.params.n, deg)
    }

    fn central(&self) -> (i64, i64) {
        (self.params.ni(), self.params.ntw)
    }

    fn q_half(&self, k: i64) -> Scalar {
        self.params.q_half(k)
    }
}

/// Occupied sites of one fermion: everything below `floor`, plus `occ`.
#[derive(Clone, Debug)]
struct Sea {
    occ: Vec<i64>,
}

fn seas(s: &LatticeState, floor: i64) -> Vec<Sea> {
    s.l.iter()
        .zip(&s.osc)
        .map(|(&l, mu)| {
            let len = mu.len() as i64;
            let mut occ: Vec<i64> = (0..mu.len()).map(|i| l - 1 - i as i64 + mu.part(i + 1) as i64).collect();
            occ.extend(floor..l - len);
            occ.sort_unstable();
            Sea { occ }
        })
        .collect()
}

fn from_seas(seas: &[Sea], floor: i64) -> LatticeState {
    let mut l = Vec::new();
    let mut osc = Vec::new();
    for s in seas {
        let charge = floor + s.occ.len() as i64;
        let parts: Vec<usize> = s.occ.iter().rev().enumerate().map(|(i, &x)| (x - (charge - 1 - i as i64)) as usize).collect();
        l.push(charge);
        osc.push(Partition::new(parts));
    }
    LatticeState { l, osc }
}

/// n charged fermions with `{ψ_a[i], ψ*_b[j]} = δ_{ab} δ_{i+j,0}` on the
/// charge-`Q_(n)` sector; `ψ*_b[j]` fills site `-j` of fermion `b`,
/// `ψ_a[i]` empties site `i`. Signs follow the order of `n x + a`.
///
/// ```text
/// E(z) = Σ_{b-a ≡ -n'} u^(1/n) q^(-1/2) z ψ_a(q^(-1/2)z) ψ*_b(q^(1/2)z) z^((n'-a+b)/n) q^((a+b)/2n)
/// F(z) = Σ_{b-a ≡ n'} u^(-1/n) q^(1/2) z ψ_a(q^(1/2)z) ψ*_b(q^(-1/2)z) z^((-n'-a+b)/n) q^(-(a+b)/2n)
/// H_k  = Σ_a Σ_{i+j=k} ψ_a[i] ψ*_a[j]
/// ```
pub struct Fermion {
    pub params: TwistedParams,
}

impl Fermion {
    pub fn new(params: TwistedParams) -> Result<Self> {
        if params.ntw.rem_euclid(params.ni()) == 0 {
            return Err(Error::Invalid("the fermionic currents need n' ≢ 0 mod n".into()));
        }
        Ok(Fermion { params })
    }

    /// `Σ_i w(i) ψ_a[i] ψ*_b[m - i]` on a basis state.
    fn bilinear(&self, a: usize, b: usize, m: i64, s: &LatticeState, w: impl Fn(i64) -> Scalar) -> LinComb<LatticeState> {
        let n = self.params.ni();
        let lowest = s.l.iter().zip(&s.osc).map(|(&l, mu)| l - mu.len() as i64).min().unwrap();
        let floor = lowest - m.abs() - 2;
        let base = seas(s, floor);
        let above = |sea: &[Sea], pos: i64| -> usize {
            sea.iter().enumerate().map(|(c, sc)| sc.occ.iter().filter(|&&x| n * x + c as i64 > pos).count()).sum()
        };
        let mut out = LinComb::zero();
        let top = base[a].occ.last().copied().unwrap_or(floor);
        for &i in base[a].occ.iter().filter(|&&i| i <= top) {
            let site = i - m;
            if site < floor || base[b].occ.binary_search(&site).is_ok() {
                continue;
            }
            let mut sea = base.clone();
            let mut sign = above(&sea, n * site + b as i64);
            let at = sea[b].occ.binary_search(&site).unwrap_err();
            sea[b].occ.insert(at, site);
            sign += above(&sea, n * i + a as i64);
            let at = sea[a].occ.binary_search(&i).unwrap();
            sea[a].occ.remove(at);
            let mut c = w(i);
            if sign % 2 == 1 {
                c = -c;
            }
            out.add_term(from_seas(&sea, floor), c);
        }
        out
    }
}

impl ModeModule for Fermion {
    type Key = LatticeState;

    fn apply(&self, op: Chevalley, v: &LinComb<LatticeState>) -> LinComb<LatticeState> {
        let n = self.params.ni();
        let ntw = self.params.ntw;
        let p = self.params;
        apply_linear(v, |s| {
            let mut out = LinComb::zero();
            match op {
                Chevalley::E(k) => {
                    for a in 0..n {
                        for b in 0..n {
                            if (b - a + ntw).rem_euclid(n) != 0 {
                                continue;
                            }
                            let m = k + (ntw - a + b) / n;
                            let pre = p.u_pow(1) * Scalar::t_pow(a + b);
                            let t = self.bilinear(a as usize, b as usize, m, s, |i| &pre * &Scalar::t_pow(n * (2 * i - m)));
                            out = out.add(&t);
                        }
                    }
                }
                Chevalley::F(k) => {
                    for a in 0..n {
                        for b in 0..n {
                            if (b - a - ntw).rem_euclid(n) != 0 {
                                continue;
                            }
                            let m = k + (-ntw - a + b) / n;
                            let pre = p.u_pow(-1) * Scalar::t_pow(-a - b);
                            let t = self.bilinear(a as usize, b as usize, m, s, |i| &pre * &Scalar::t_pow(n * (m - 2 * i)));
                            out = out.add(&t);
                        }
                    }
                }
                Chevalley::H(k) => {
                    assert!(k != 0);
                    for a in 0..self.params.n {
                        out = out.add(&self.bilinear(a, a, k, s, |_| Scalar::one()));
                    }
                }
            }
            out
        })
    }

    fn window(&self, deg: usize) -> Vec<LatticeState> {
        lattice_window(self.params.n, deg)
    }

    fn central(&self) -> (i64, i64) {
        (self.params.ni(), self.params.ntw)
    }

    fn q_half(&self, k: i64) -> Scalar {
        self.params.q_half(k)
    }
}

/// `Σ_{l < n} ζ_n^(l e)` computed in Q(ζ_n).
fn root_sum(n: u32, e: i64) -> Scalar {
    let mut s = Cyclo::zero(n);
    for l in 0..n as i64 {
        s = s.add(&Cyclo::zeta_pow(n, l * e));
    }
    Scalar::from_rat(s.as_base().expect("root-of-unity sums are rational").clone())
}

/// One boson `a_k` with `H_k = a_(nk)` and
///
/// ```text
/// E(z) = z^(n'/n) u^(1/n) / (n(1-q^(1/n))) Σ_l ζ^(l n') :exp(Σ_k (q^(-k/2n) - q^(k/2n))/k a_k ζ^(-kl) z^(-k/n)):
/// F(z) = z^(-n'/n) u^(-1/n) / (n(1-q^(-1/n))) Σ_l ζ^(-l n') :exp(Σ_k (q^(k/2n) - q^(-k/2n))/k a_k ζ^(-kl) z^(-k/n)):
/// ```
///
/// with `ζ = exp(2πi/n)`. The l-th summand is the l = 0 one at `ζ^l z^(1/n)`,
/// so a coefficient of `z^(m/n)` picks up `Σ_l ζ^(l(m ± n'))`, computed in
/// Q(ζ_n); only integer powers of z survive.
pub struct StrangeBoson {
    pub params: TwistedParams,
    e: Vertex,
    f: Vertex,
    /// `Σ_l ζ^(l r)` for `r = 0..n`
    sums: Vec<Scalar>,
}

impl StrangeBoson {
    pub fn new(params: TwistedParams) -> Self {
        let e = Vertex::new(1, |_, j| (Scalar::t_pow(-j) - Scalar::t_pow(j)) * Scalar::ratio(1, j));
        let f = Vertex::new(1, |_, j| (Scalar::t_pow(j) - Scalar::t_pow(-j)) * Scalar::ratio(1, j));
        let sums = (0..params.ni()).map(|r| root_sum(params.n as u32, r)).collect();
        StrangeBoson { params, e, f, sums }
    }

    /// `Σ_{l < n} ζ_n^(l e)`
    pub fn root_sum(&self, e: i64) -> Scalar {
        self.sums[e.rem_euclid(self.params.ni()) as usize].clone()
    }

    /// Coefficient of `z^(-m/n)` of `E(z)` (`sign = 1`) or `F(z)` on a basis
    /// vector, for any integer m. Zero unless `n | m`.
    pub fn fractional_mode(&self, sign: i64, m: i64, o: &Osc) -> LinComb<Osc> {
        let p = self.params;
        let one = Scalar::one();
        let (vertex, pre) = if sign > 0 {
            (&self.e, p.u_pow(1) / (Scalar::from_int(p.ni()) * (&one - Scalar::t_pow(2))))
        } else {
            (&self.f, p.u_pow(-1) / (Scalar::from_int(p.ni()) * (&one - Scalar::t_pow(-2))))
        };
        // z^(±n'/n) w^e = z^(-m/n) with w = z^(1/n)
        let e = -m - sign * p.ntw;
        let filter = self.root_sum(e + sign * p.ntw);
        if filter.is_zero() {
            return LinComb::zero();
        }
        vertex.mode(o, e).scale(&(pre * filter))
    }
}

impl ModeModule for StrangeBoson {
    type Key = Osc;

    fn apply(&self, op: Chevalley, v: &LinComb<Osc>) -> LinComb<Osc> {
        let n = self.params.ni();
        apply_linear(v, |o| match op {
            Chevalley::E(k) => self.fractional_mode(1, n * k, o),
            Chevalley::F(k) => self.fractional_mode(-1, n * k, o),
            Chevalley::H(k) => heisenberg(0, n * k, o),
        })
    }

    fn window(&self, deg: usize) -> Vec<Osc> {
        osc_window(1, deg)
    }

    fn central(&self) -> (i64, i64) {
        (self.params.ni(), self.params.ntw)
    }

    fn q_half(&self, k: i64) -> Scalar {
        self.params.q_half(k)
    }
}

/// Degree in units of `1/n` of a basis key, per realization.
pub trait Graded: ModeModule {
    fn degree(&self, k: &Self::Key) -> usize;

    fn character(&self, deg: usize) -> Vec<u64> {
        let mut c = vec![0u64; deg + 1];
        for k in self.window(deg) {
            c[self.degree(&k)] += 1;
        }
        c
    }
}

impl Graded for Restriction {
    fn degree(&self, k: &Tuple) -> usize {
        k[0].size()
    }
}

impl Graded for LatticeBoson {
    fn degree(&self, k: &LatticeState) -> usize {
        lattice_degree(self.params.n, k)
    }
}

impl Graded for Fermion {
    fn degree(&self, k: &LatticeState) -> usize {
        lattice_degree(self.params.n, k)
    }
}

impl Graded for StrangeBoson {
    fn degree(&self, k: &Osc) -> usize {
        osc_degree(k)
    }
}

/// Graded traces `Tr(H_-1 H_1 𝔮^deg)`, `Tr(E_j F_-j 𝔮^deg)` for
/// `j ∈ -modes..=modes` and `Tr(E_-n' E_0^(n-1) 𝔮^deg)`, each through `deg`.
/// The last one is odd under `E -> -E` when `n` is odd.
#[derive(Clone, Debug, PartialEq)]
pub struct Fingerprint {
    pub character: Vec<u64>,
    pub hh: Vec<Scalar>,
    pub ef: Vec<(i64, Vec<Scalar>)>,
    pub e_power: Vec<Scalar>,
}

pub fn fingerprint<M: Graded>(m: &M, modes: i64, deg: usize) -> Fingerprint {
    let hh = graded_trace(m, &[Chevalley::H(-1), Chevalley::H(1)], deg, |k| m.degree(k));
    let ef = (-modes..=modes).map(|j| (j, graded_trace(m, &[Chevalley::E(j), Chevalley::F(-j)], deg, |k| m.degree(k)))).collect();
    let (n, ntw) = m.central();
    let mut word = vec![Chevalley::E(0); n as usize - 1];
    word.push(Chevalley::E(-ntw));
    let e_power = graded_trace(m, &word, deg, |k| m.degree(k));
    Fingerprint { character: m.character(deg), hh, ef, e_power }
}

/// Outcome of the relation checks on one realization.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport {
    pub realization: &'static str,
    pub central: (i64, i64),
    pub checked: usize,
    pub failure: Option<alloc::string::String>,
}

/// Chevalley and Serre relations with the realization's `(c, c')`.
pub fn relation_report<M: ModeModule>(name: &'static str, m: &M, modes: i64, window: usize) -> RelationReport {
    let m = &Memo::new(m);
    let mut checked = 0;
    let mut failure = None;
    match chevalley_relations(m, modes, window) {
        Ok(k) => checked += k,
        Err(c) => failure = Some(format!("{} on {:?}", c.relation, c.input)),
    }
    if failure.is_none() {
        for sign in [1, -1] {
            match serre_relations(m, sign, 1, window.min(2)) {
                Ok(k) => checked += k,
                Err(c) => {
                    failure = Some(format!("{} on {:?}", c.relation, c.input));
                    break;
                }
            }
        }
    }
    RelationReport { realization: name, central: m.central(), checked, failure }
}

/// Character form of the restriction decomposition for `d = gcd(n, n')`:
/// `F^[1/n]|` against `Σ_{l ∈ Q_(d)} Π_α χ_α(l_α)`, where `χ_α(l_α)` sums
/// `𝔮^(n ν(x))` over charges `x` of the bosons `a ≡ α mod d` with total `l_α`,
/// times their oscillators. Degrees in units of `1/n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionReport {
    pub d: usize,
    /// partition counts, the restricted Fock module
    pub ambient: Vec<u64>,
    pub lattice_sum: Vec<u64>,
    /// `(l, lowest degree)` for the summands that reach the window
    pub summands: Vec<(Vec<i64>, i64)>,
    /// whether every `χ_α(l_α)` is `𝔮^h Π_k (1-𝔮^(kd))^-1` through the window
    pub factors_are_twisted_fock: bool,
}

impl DecompositionReport {
    pub fn pass(&self) -> bool {
        self.ambient == self.lattice_sum && self.factors_are_twisted_fock
    }
}

/// Integer vectors of length `m` with entries in `-x..=x` summing to `total`.
fn charge_vectors(m: usize, x: i64, total: i64) -> Vec<Vec<i64>> {
    if m == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in -x..=x {
        for mut rest in charge_vectors(m - 1, x, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `χ_α(l_α)` as exponent (doubled, units `1/n`) to count, exponents `< cap`.
fn class_character(n: usize, d: usize, alpha: usize, total: i64, x: i64, cap: i64) -> BTreeMap<i64, u64> {
    let m = n / d;
    let ni = n as i64;
    let osc = character(m, (cap.max(0) as usize) / (2 * n) + 1);
    let mut out = BTreeMap::new();
    for charges in charge_vectors(m, x, total) {
        // 2 n ν = Σ n x_a^2 + 2 a x_a
        let e: i64 = charges.iter().enumerate().map(|(i, &c)| ni * c * c + 2 * (alpha + d * i) as i64 * c).sum();
        for (k, &count) in osc.iter().enumerate() {
            let f = e + 2 * ni * k as i64;
            if f < cap {
                *out.entry(f).or_insert(0) += count;
            }
        }
    }
    out
}

pub fn decomposition_check(n: usize, ntw: i64, deg: usize) -> DecompositionReport {
    assert!(n >= 1);
    let d = num_integer::gcd(n as i64, ntw) as usize;
    let d = if d == 0 { n } else { d };
    let ni = n as i64;
    // per boson n x^2 + 2 a x >= -n, so a class is bounded below by -n m
    let slack = 2 * ni * ni;
    let cap = 2 * deg as i64 + slack + 2;
    let x = num_integer::Roots::sqrt(&((2 * deg as i64 + slack) / ni)) + ni + 1;
    let partitions = Partition::counts(deg + slack as usize);
    let mut lattice = vec![0u64; deg + 1];
    let mut summands = Vec::new();
    let mut twisted_fock = true;
    let mut memo: BTreeMap<(usize, i64), BTreeMap<i64, u64>> = BTreeMap::new();
    for l in charge_vectors(d, x, 0) {
        let mut prod: BTreeMap<i64, u64> = BTreeMap::from([(0, 1)]);
        for (alpha, &la) in l.iter().enumerate() {
            let chi = memo.entry((alpha, la)).or_insert_with(|| class_character(n, d, alpha, la, x, cap)).clone();
            if let Some((&h, _)) = chi.iter().next() {
                // 𝔮^h Σ p(k) 𝔮^(d k), doubled exponents
                let expect_ok = chi.iter().all(|(&e, &c)| {
                    let j = e - h;
                    let want = if j % (2 * d as i64) == 0 { partitions[(j / (2 * d as i64)) as usize] } else { 0 };
                    e + slack >= cap || c == want
                }) && (0..(cap - h)).step_by(2 * d).all(|j| chi.contains_key(&(h + j)) || h + j + slack >= cap);
                twisted_fock &= expect_ok;
            }
            let mut next = BTreeMap::new();
            for (&e1, &c1) in &prod {
                for (&e2, &c2) in &chi {
                    if e1 + e2 < cap {
                        *next.entry(e1 + e2).or_insert(0) += c1 * c2;
                    }
                }
            }
            prod = next;
        }
        let low = match prod.keys().next() {
            Some(&low) if low <= 2 * deg as i64 => low,
            _ => continue,
        };
        summands.push((l.clone(), low / 2));
        for (&e, &c) in &prod {
            if e >= 0 && e <= 2 * deg as i64 {
                assert!(e % 2 == 0, "summand degree off the 1/n grid");
                lattice[(e / 2) as usize] += c;
            }
        }
    }
    DecompositionReport { d, ambient: Partition::counts(deg), lattice_sum: lattice, summands, factors_are_twisted_fock: twisted_fock }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, ntw: i64) -> TwistedParams {
        TwistedParams::new(n, ntw, 3).unwrap()
    }

    #[test]
    fn characters_are_one_over_eta() {
        for (n, ntw) in [(2usize, 1i64), (3, 1), (2, 0), (3, 2)] {
            let p = params(n, ntw);
            let expect = character(1, 8);
            assert_eq!(Restriction::new(p).character(8), expect);
            assert_eq!(StrangeBoson::new(p).character(8), expect);
            if ntw != 0 {
                assert_eq!(LatticeBoson::new(p).unwrap().character(8), expect);
                assert_eq!(Fermion::new(p).unwrap().character(8), expect);
            }
        }
    }

    #[test]
    fn relations_hold_in_every_realization() {
        for (n, ntw) in [(2usize, 1i64), (3, 1)] {
            let p = params(n, ntw);
            for r in [
                relation_report("restriction", &Restriction::new(p), 1, 3),
                relation_report("boson", &LatticeBoson::new(p).unwrap(), 1, 3),
                relation_report("fermion", &Fermion::new(p).unwrap(), 1, 3),
                relation_report("strange", &StrangeBoson::new(p), 1, 3),
            ] {
                assert_eq!(r.failure, None, "{} ({},{})", r.realization, n, ntw);
                assert_eq!(r.central, (n as i64, ntw));
            }
        }
    }

    #[test]
    fn fingerprints_agree() {
        for (n, ntw) in [(2usize, 1i64), (3, 1)] {
            let p = params(n, ntw);
            let f = fingerprint(&Restriction::new(p), 1, 4);
            assert_eq!(fingerprint(&LatticeBoson::new(p).unwrap(), 1, 4), f);
            assert_eq!(fingerprint(&Fermion::new(p).unwrap(), 1, 4), f);
            assert_eq!(fingerprint(&StrangeBoson::new(p), 1, 4), f);
        }
    }

    #[test]
    fn only_integer_powers_survive() {
        let s = StrangeBoson::new(params(3, 1));
        let o: Osc = vec![Partition::new(vec![2, 1])];
        for m in -7..=7 {
            let v = s.fractional_mode(1, m, &o);
            if m % 3 != 0 {
                assert!(v.is_zero());
            }
        }
        assert_eq!(s.root_sum(3), Scalar::from_int(3));
        assert!(s.root_sum(1).is_zero());
    }

    #[test]
    fn decomposition_characters() {
        for (n, ntw) in [(2usize, 0i64), (2, 1), (3, 1), (3, 0), (4, 2)] {
            let r = decomposition_check(n, ntw, 8);
            assert!(r.pass(), "({},{}) {:?}", n, ntw, r);
        }
        let r = decomposition_check(2, 0, 8);
        assert_eq!(r.d, 2);
        assert_eq!(r.summands.iter().find(|s| s.0 == vec![1, -1]).map(|s| s.1), Some(1));
        let r = decomposition_check(3, 1, 8);
        assert_eq!(r.summands, vec![(vec![0], 0)]);
        assert_eq!(r.lattice_sum[0], 1);
    }
}
