//! Normally ordered exponentials of free bosons, their regular products and
//! the q-W currents built from them.
//!
//! A [`VertexOperator`] is
//!
//! ```text
//! z^zpow e^(Σ shift_b Q_b) (-1)^(Σ cocycle_b a_b[0]) Π_b z^(α_b a_b[0]) t^(β_b a_b[0])
//!     :exp(Σ_(b,ρ) w Σ_(k≠0) a_b[k] (ρ z)^(-k) / k):
//! ```
//!
//! with `ρ = t^at`; a current is a [`CurrentSum`], i.e. a linear combination
//! of these. Zero modes act on the incoming state, before the translation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::boson::{heisenberg, osc_degree, osc_window, Vertex};
use crate::fock::{act_e, act_single, FockConfig, Tuple};
use crate::partitions::{LatticePoint, Partition};
use crate::scalars::{binomial_series, rat, rat_int, Rat, Scalar};
use crate::twisted::{lattice_window, LatticeState, TwistedParams};
use crate::vector::LinComb;
use crate::{Error, Result};

/// `[a_b[j], a_b[k]] = gram · j δ_{j+k,0}`; an odd boson has only odd modes.
#[derive(Clone, Debug, PartialEq)]
pub struct Boson {
    pub gram: Rat,
    pub odd: bool,
}

/// The Fock space the vertex operators act on.
#[derive(Clone, Debug, PartialEq)]
pub struct Context {
    pub bosons: Vec<Boson>,
    /// whether the space carries `C[Q_(n)]`, `n` the number of bosons
    pub lattice: bool,
    /// `a_b[k]` comes with `z^(-k scale)`
    pub scale: Rat,
    /// `t^half = q^(1/2)`
    pub half: i64,
}

impl Context {
    /// `n` standard bosons with lattice `Q_(n)`.
    pub fn lattice(n: usize, half: i64) -> Self {
        Context { bosons: vec![Boson { gram: rat_int(1), odd: false }; n], lattice: true, scale: rat_int(1), half }
    }

    /// `n` standard bosons without zero modes.
    pub fn oscillators(n: usize, half: i64) -> Self {
        Context { bosons: vec![Boson { gram: rat_int(1), odd: false }; n], lattice: false, scale: rat_int(1), half }
    }

    pub fn species(&self) -> usize {
        self.bosons.len()
    }

    pub fn q_half(&self, k: i64) -> Scalar {
        Scalar::t_pow(self.half * k)
    }

    fn bracket(&self) -> Scalar {
        self.q_half(1) - self.q_half(-1)
    }

    /// `scale · |osc|` plus `norm(l)` on the lattice.
    pub fn degree(&self, s: &LatticeState) -> Rat {
        let mut d = &self.scale * rat_int(osc_degree(&s.osc) as i64);
        if self.lattice {
            d += LatticePoint::new(s.l.clone()).expect("state in Q_(n)").norm();
        }
        d
    }

    /// Basis states of degree `<= deg`.
    pub fn window(&self, deg: &Rat) -> Vec<LatticeState> {
        let n = self.species();
        let mut out: Vec<LatticeState> = if self.lattice {
            let top = (deg * rat_int(n as i64)).floor().to_integer().to_usize().unwrap_or(0);
            lattice_window(n, top)
        } else {
            let top = (deg / &self.scale).floor().to_integer().to_usize().unwrap_or(0);
            osc_window(n, top).into_iter().map(|osc| LatticeState { l: Vec::new(), osc }).collect()
        };
        out.retain(|s| {
            s.osc.iter().zip(&self.bosons).all(|(p, b)| !b.odd || p.parts().iter().all(|k| k % 2 == 1)) && &self.degree(s) <= deg
        });
        out
    }

    pub fn vacuum(&self) -> LatticeState {
        let l = if self.lattice { vec![0; self.species()] } else { Vec::new() };
        LatticeState { l, osc: vec![Partition::empty(); self.species()] }
    }
}

/// One normally ordered exponential; see the module docs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct VertexOperator {
    pub zpow: Rat,
    /// `(boson, at) -> w`
    pub profile: BTreeMap<(usize, i64), Rat>,
    /// `(α_b, β_b)`, empty without a lattice
    pub zero: Vec<(Rat, Rat)>,
    pub shift: Vec<i64>,
    pub cocycle: Vec<u8>,
}

/// A current: a finite linear combination of vertex operators.
pub type CurrentSum = LinComb<VertexOperator>;

impl VertexOperator {
    /// The identity operator.
    pub fn one(ctx: &Context) -> Self {
        let n = if ctx.lattice { ctx.species() } else { 0 };
        VertexOperator {
            zpow: rat_int(0),
            profile: BTreeMap::new(),
            zero: vec![(rat_int(0), rat_int(0)); n],
            shift: vec![0; n],
            cocycle: vec![0; n],
        }
    }

    /// Adds `w φ_b(t^at z)`; with a lattice this includes `w Q_b` and
    /// `w a_b[0] log(t^at z)`, so `w` must then be an integer.
    pub fn insert_field(&mut self, b: usize, at: i64, w: &Rat) {
        *self.profile.entry((b, at)).or_insert_with(Rat::zero) += w;
        if !self.zero.is_empty() {
            assert!(w.is_integer(), "lattice insertions need integer weight");
            self.zero[b].0 += w;
            self.zero[b].1 += w * rat_int(at);
            self.shift[b] += w.to_integer().to_i64().unwrap();
        }
    }

    /// Adds `w Σ_(k≠0) a_b[k] (t^at z)^(-k) / k` without zero modes.
    pub fn insert_oscillators(&mut self, b: usize, at: i64, w: &Rat) {
        *self.profile.entry((b, at)).or_insert_with(Rat::zero) += w;
    }

    /// Canonical form: zero weights dropped, zero modes and cocycles taken
    /// modulo the all-ones vector (`Σ a_b[0] = 0` on `Q_(n)`).
    pub fn normalized(mut self) -> Self {
        self.profile.retain(|_, w| !w.is_zero());
        if let Some(last) = self.zero.last().cloned() {
            for z in self.zero.iter_mut() {
                z.0 -= &last.0;
                z.1 -= &last.1;
            }
        }
        if self.cocycle.last() == Some(&1) {
            for c in self.cocycle.iter_mut() {
                *c ^= 1;
            }
        }
        self
    }

    /// `V(t^at z) = factor · V'(z)`.
    pub fn rescale(&self, at: i64) -> Result<(Scalar, VertexOperator)> {
        let e = &self.zpow * rat_int(at);
        if !e.is_integer() {
            return Err(Error::Invalid(format!("(t^{} z)^{} is not a power of t", at, self.zpow)));
        }
        let mut v = self.clone();
        v.profile = self.profile.iter().map(|(&(b, a), w)| ((b, a + at), w.clone())).collect();
        for z in v.zero.iter_mut() {
            z.1 = &z.1 + &z.0 * rat_int(at);
        }
        Ok((Scalar::t_pow(e.to_integer().to_i64().unwrap()), v))
    }

    /// `Π_b x_b y_b` for `x = α` or `β` against an integer vector.
    fn zero_pairing(&self, l: &[i64]) -> (Rat, Rat, u8) {
        let mut a = rat_int(0);
        let mut b = rat_int(0);
        let mut c = 0i64;
        for (i, &li) in l.iter().enumerate() {
            a += &self.zero[i].0 * rat_int(li);
            b += &self.zero[i].1 * rat_int(li);
            c += self.cocycle[i] as i64 * li;
        }
        (a, b, c.rem_euclid(2) as u8)
    }

    /// The oscillator coefficient `f(b, j)` of `a_b[j] z^(-j scale)`.
    fn coefficient(&self, ctx: &Context, b: usize, j: i64) -> Scalar {
        if ctx.bosons[b].odd && j % 2 == 0 {
            return Scalar::zero();
        }
        let mut s = Scalar::zero();
        for (&(c, at), w) in &self.profile {
            if c == b {
                s += Scalar::from_rat(w.clone()) * Scalar::t_pow(-at * j);
            }
        }
        s * Scalar::ratio(1, j)
    }
}

pub fn current(terms: Vec<(Scalar, VertexOperator)>) -> CurrentSum {
    terms.into_iter().map(|(c, v)| (v.normalized(), c)).collect()
}

/// `V(z) -> V(t^at z)` termwise.
pub fn rescale(a: &CurrentSum, at: i64) -> Result<CurrentSum> {
    let mut out = CurrentSum::zero();
    for (v, c) in a.iter() {
        let (f, w) = v.rescale(at)?;
        out.add_term(w.normalized(), c * &f);
    }
    Ok(out)
}

/// `z^e V(z)`.
pub fn times_z(a: &CurrentSum, e: &Rat) -> CurrentSum {
    a.iter()
        .map(|(v, c)| {
            let mut w = v.clone();
            w.zpow += e;
            (w, c.clone())
        })
        .collect()
}

/// A declared pole of `A(z)B(w)` along `w = t^at z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pole {
    pub at: i64,
    pub order: u32,
}

/// `A(z)B(w) = Π_m (1 - t^m w/z)^(E_m) :A(z)B(w):` for two exponentials:
/// the map `m -> E_m`. Fails on odd bosons, whose contraction is not of this
/// form.
pub fn contraction(ctx: &Context, a: &VertexOperator, b: &VertexOperator) -> Result<BTreeMap<i64, Rat>> {
    let mut out: BTreeMap<i64, Rat> = BTreeMap::new();
    for (&(i, ai), wi) in &a.profile {
        for (&(j, aj), wj) in &b.profile {
            if i != j {
                continue;
            }
            if ctx.bosons[i].odd {
                return Err(Error::Invalid("contraction of odd bosons is not a finite product".into()));
            }
            *out.entry(aj - ai).or_insert_with(Rat::zero) += wi * wj * &ctx.bosons[i].gram;
        }
    }
    out.retain(|_, e| !e.is_zero());
    Ok(out)
}

/// The regular product `A(z)B(t^at z)` with poles of `A(z)B(w)` declared
/// along `w = t^(p.at) z`. Each contraction factor is checked against the
/// declaration; the cleared product is then evaluated at `w = t^at z`.
pub fn regular_product(ctx: &Context, a: &CurrentSum, b: &CurrentSum, at: i64, poles: &[Pole]) -> Result<CurrentSum> {
    if poles.iter().any(|p| p.at == at) {
        return Err(Error::Invalid(format!("evaluation point t^{} is a declared pole", at)));
    }
    let mut out = CurrentSum::zero();
    for (va, ca) in a.iter() {
        for (vb, cb) in b.iter() {
            let mut c = ca * cb;
            let mut vanish = false;
            let mut orders: BTreeMap<i64, i64> = BTreeMap::new();
            for (m, e) in contraction(ctx, va, vb)? {
                if !e.is_integer() {
                    return Err(Error::Invalid(format!("fractional contraction (1 - t^{} x)^({})", m, e)));
                }
                let e = e.to_integer().to_i64().unwrap();
                if e < 0 {
                    *orders.entry(-m).or_insert(0) += -e;
                }
                if m + at == 0 {
                    if e > 0 {
                        vanish = true;
                    }
                    continue;
                }
                c *= (Scalar::one() - Scalar::t_pow(m + at)).pow(e);
            }
            for (x, ord) in orders {
                let declared = poles.iter().find(|p| p.at == x).map_or(0, |p| p.order as i64);
                if ord > declared {
                    return Err(Error::Pole(format!("(1 - t^{} w/z)^(-{}) with {} declared", -x, ord, declared)));
                }
            }
            if vanish {
                continue;
            }
            let (f, vb) = vb.rescale(at)?;
            c *= f;
            let mut v = va.clone();
            if !va.zero.is_empty() {
                let (za, tb, sign) = va.zero_pairing(&vb.shift);
                v.zpow += za;
                if !tb.is_integer() {
                    return Err(Error::Invalid("zero modes leave the tower".into()));
                }
                c *= Scalar::t_pow(tb.to_integer().to_i64().unwrap());
                if sign == 1 {
                    c = -c;
                }
                for i in 0..v.zero.len() {
                    v.zero[i].0 += &vb.zero[i].0;
                    v.zero[i].1 += &vb.zero[i].1;
                    v.shift[i] += vb.shift[i];
                    v.cocycle[i] ^= vb.cocycle[i];
                }
            }
            v.zpow += &vb.zpow;
            for (k, w) in &vb.profile {
                *v.profile.entry(*k).or_insert_with(Rat::zero) += w;
            }
            out.add_term(v.normalized(), c);
        }
    }
    Ok(out)
}

/// Modes of a current on its context. `mode(m)` is the coefficient of
/// `z^(-m)`; images of basis states are cached.
pub struct ModeAction<'a> {
    ctx: &'a Context,
    terms: Vec<(Scalar, VertexOperator, Vertex)>,
    memo: RefCell<BTreeMap<(Rat, LatticeState), LinComb<LatticeState>>>,
}

impl<'a> ModeAction<'a> {
    pub fn new(ctx: &'a Context, a: &CurrentSum) -> Self {
        let gram: Vec<Scalar> = ctx.bosons.iter().map(|b| Scalar::from_rat(b.gram.clone())).collect();
        let terms = a
            .iter()
            .map(|(v, c)| {
                let vv = v.clone();
                let cc = ctx.clone();
                let vertex = Vertex::with_gram(gram.clone(), move |b, j| vv.coefficient(&cc, b, j));
                (c.clone(), v.clone(), vertex)
            })
            .collect();
        ModeAction { ctx, terms, memo: RefCell::new(BTreeMap::new()) }
    }

    fn on_basis(&self, m: &Rat, s: &LatticeState) -> LinComb<LatticeState> {
        let key = (m.clone(), s.clone());
        if let Some(x) = self.memo.borrow().get(&key) {
            return x.clone();
        }
        let mut out = LinComb::zero();
        for (c, v, vertex) in &self.terms {
            let mut c = c.clone();
            let mut zp = v.zpow.clone();
            let mut l = s.l.clone();
            if !v.zero.is_empty() {
                let (za, tb, sign) = v.zero_pairing(&s.l);
                zp += za;
                c *= Scalar::t_pow(tb.to_integer().to_i64().expect("integral zero modes"));
                if sign == 1 {
                    c = -c;
                }
                for (x, d) in l.iter_mut().zip(&v.shift) {
                    *x += d;
                }
            }
            let target = (-m - zp) / &self.ctx.scale;
            if !target.is_integer() {
                continue;
            }
            let target = target.to_integer().to_i64().unwrap();
            for (o, x) in vertex.mode(&s.osc, target).iter() {
                out.add_term(LatticeState { l: l.clone(), osc: o.clone() }, x * &c);
            }
        }
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    pub fn apply(&self, m: &Rat, v: &LinComb<LatticeState>) -> LinComb<LatticeState> {
        let mut out = LinComb::zero();
        for (s, c) in v.iter() {
            out.add_assign_scaled(&self.on_basis(m, s), c);
        }
        out
    }
}

/// Coefficients of `f_{k,n}(x) = (1-qx)^((n-k)/n) (1-q^-1 x)^((n-k)/n) / (1-x)^(2(n-k)/n)`
/// through `x^order`, with `t^half = q^(1/2)`.
pub fn f_coefficients(k: usize, n: usize, order: usize, half: i64) -> Vec<Scalar> {
    assert!(1 <= k && k < n);
    let e = rat((n - k) as i64, n as i64);
    let q = Scalar::t_pow(2 * half);
    let a = binomial_series(&q, &e, order);
    let b = binomial_series(&q.inv(), &e, order);
    let c = binomial_series(&Scalar::one(), &(-&e * rat_int(2)), order);
    a.mul(&b).mul(&c).coeffs().to_vec()
}

/// A failed W-relation: the mode pair, input state and both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct WCounterexample {
    pub relation: String,
    pub input: LatticeState,
    pub lhs: LinComb<LatticeState>,
    pub rhs: LinComb<LatticeState>,
}

/// The quadratic relation
///
/// ```text
/// Σ_l f_{k,n}[l] (T_1[r-l] T_k[s+l] - T_k[s-l] T_1[r+l]) = -(q^(1/2)-q^(-1/2))² (k r - s) T_(k+1)[r+s]
/// ```
///
/// on basis states of degree `<= deg`, for `r ∈ r_modes`, `s ∈ s_modes`.
/// The currents must lower the degree by their mode number; the l-sum is cut
/// where both `T_k[s+l]` and `T_1[r+l]` annihilate the state, and that tail
/// is checked to vanish. Returns the number of cases.
#[allow(clippy::too_many_arguments)]
pub fn w_relation_check(
    ctx: &Context,
    t1: &CurrentSum,
    tk: &CurrentSum,
    tk1: &CurrentSum,
    k: usize,
    n: usize,
    r_modes: &[Rat],
    s_modes: &[Rat],
    deg: &Rat,
) -> core::result::Result<usize, WCounterexample> {
    let a1 = ModeAction::new(ctx, t1);
    let ak = ModeAction::new(ctx, tk);
    let ak1 = ModeAction::new(ctx, tk1);
    let br2 = ctx.bracket() * ctx.bracket();
    let mut f = f_coefficients(k, n, 0, ctx.half);
    let mut checked = 0;
    for state in ctx.window(deg) {
        let d = ctx.degree(&state);
        let v = LinComb::basis(state.clone());
        // T1[a] Tk[b] v and Tk[b] T1[a] v recur across (r, s, l) with r + s fixed
        let mut xs: BTreeMap<(Rat, Rat), LinComb<LatticeState>> = BTreeMap::new();
        let mut ys: BTreeMap<(Rat, Rat), LinComb<LatticeState>> = BTreeMap::new();
        for r in r_modes {
            for s in s_modes {
                let top = core::cmp::max((&d - s).floor(), (&d - r).floor());
                let top = if top.is_negative() { 0 } else { top.to_integer().to_usize().unwrap() };
                if f.len() <= top {
                    f = f_coefficients(k, n, top + 1, ctx.half);
                }
                let tail = rat_int(top as i64 + 1);
                let fail = |relation: String, lhs, rhs| WCounterexample { relation, input: state.clone(), lhs, rhs };
                for extra in 0..2 {
                    let e = &tail + rat_int(extra);
                    if !ak.apply(&(s + &e), &v).is_zero() || !a1.apply(&(r + &e), &v).is_zero() {
                        return Err(fail(format!("l-sum tail at r = {}, s = {}", r, s), LinComb::zero(), LinComb::zero()));
                    }
                }
                let mut lhs = LinComb::zero();
                for (l, fl) in f.iter().enumerate().take(top + 1) {
                    let l = rat_int(l as i64);
                    let (xa, xb) = (r - &l, s + &l);
                    let x = xs.entry((xa.clone(), xb.clone())).or_insert_with(|| a1.apply(&xa, &ak.apply(&xb, &v)));
                    let (yb, ya) = (s - &l, r + &l);
                    let y = ys.entry((yb.clone(), ya.clone())).or_insert_with(|| ak.apply(&yb, &a1.apply(&ya, &v)));
                    lhs.add_assign_scaled(&x.sub(y), fl);
                }
                let coef = -&br2 * Scalar::from_rat(rat_int(k as i64) * r - s);
                let rhs = ak1.apply(&(r + s), &v).scale(&coef);
                if lhs != rhs {
                    return Err(fail(format!("W relation at r = {}, s = {}", r, s), lhs, rhs));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// `Σ_b a_b[j]` on a state of a standard context.
fn heisenberg_total(ctx: &Context, j: i64, v: &LinComb<LatticeState>) -> LinComb<LatticeState> {
    let mut out = LinComb::zero();
    for (s, c) in v.iter() {
        for b in 0..ctx.species() {
            for (o, x) in heisenberg(b, j, &s.osc).iter() {
                out.add_term(LatticeState { l: s.l.clone(), osc: o.clone() }, c * x);
            }
        }
    }
    out
}

/// `[Σ_b a_b[j], T[m]] = 0` for `0 < |j| <= modes` and `m` in `t_modes`.
pub fn commutes_with_heisenberg(ctx: &Context, t: &CurrentSum, t_modes: &[Rat], modes: i64, deg: &Rat) -> bool {
    let a = ModeAction::new(ctx, t);
    for state in ctx.window(deg) {
        let v = LinComb::basis(state);
        for j in (-modes..=modes).filter(|&j| j != 0) {
            for m in t_modes {
                let x = heisenberg_total(ctx, j, &a.apply(m, &v));
                let y = a.apply(m, &heisenberg_total(ctx, j, &v));
                if x != y {
                    return false;
                }
            }
        }
    }
    true
}

fn e_poles(half: i64) -> [Pole; 2] {
    [Pole { at: 2 * half, order: 1 }, Pole { at: -2 * half, order: 1 }]
}

/// `E^k(z) = E(z) E^(k-1)(z)` by regular products with the simple poles at
/// `w = q^(±1) z`.
pub fn e_power(ctx: &Context, e: &CurrentSum, k: usize) -> Result<CurrentSum> {
    assert!(k >= 1);
    let mut p = e.clone();
    for _ in 1..k {
        p = regular_product(ctx, e, &p, 0, &e_poles(ctx.half))?;
    }
    Ok(p)
}

/// `exp(-(k/n) φ_-(z)) A(z) exp(-(k/n) φ_+(z))` with `φ = Σ_b φ_b(q^(1/2) z) - φ_b(q^(-1/2) z)`
/// on oscillators.
pub fn dress(ctx: &Context, a: &CurrentSum, k: usize, n: usize) -> CurrentSum {
    let w = rat(k as i64, n as i64);
    a.iter()
        .map(|(v, c)| {
            let mut v = v.clone();
            for b in 0..ctx.species() {
                v.insert_oscillators(b, -ctx.half, &w);
                v.insert_oscillators(b, ctx.half, &-&w);
            }
            (v.normalized(), c.clone())
        })
        .collect()
}

/// `:exp(φ(z)):` of [`dress`], times `c z^zpow`.
pub fn exp_phi(ctx: &Context, c: Scalar, zpow: Rat) -> CurrentSum {
    let mut v = VertexOperator::one(ctx);
    v.zpow = zpow;
    for b in 0..ctx.species() {
        v.insert_oscillators(b, ctx.half, &rat_int(1));
        v.insert_oscillators(b, -ctx.half, &rat_int(-1));
    }
    LinComb::basis(v.normalized()).scale(&c)
}

/// `E(z)` of the twisted Fock module on `n` bosons with lattice `Q_(n)`:
///
/// ```text
/// Σ_{b-a ≡ -n'} u^(1/n) q^((a+b-n)/2n) z^((n'-a+b)/n + 1) :exp(φ_b(q^(1/2) z) - φ_a(q^(-1/2) z)): ε_{a,b}
/// ```
///
/// with the cocycle of [`crate::twisted::LatticeBoson`]. Here `t = q^(1/2n)`.
pub fn twisted_e(p: &TwistedParams) -> Result<(Context, CurrentSum)> {
    let n = p.n as i64;
    if n > 1 && p.ntw.rem_euclid(n) == 0 {
        return Err(Error::Invalid("the lattice currents need n' ≢ 0 mod n".into()));
    }
    let ctx = Context::lattice(p.n, n);
    let mut terms = Vec::new();
    for a in 0..p.n {
        for b in 0..p.n {
            let (ai, bi) = (a as i64, b as i64);
            if (bi - ai + p.ntw).rem_euclid(n) != 0 {
                continue;
            }
            let mut v = VertexOperator::one(&ctx);
            v.zpow = rat_int((p.ntw - ai + bi) / n + 1);
            v.insert_field(b, n, &rat_int(1));
            v.insert_field(a, -n, &rat_int(-1));
            for r in a.min(b)..a.max(b) {
                v.cocycle[r] = 1;
            }
            let mut c = Scalar::t_pow(p.u_root + ai + bi - n);
            if a > b {
                c = -c;
            }
            terms.push((c, v));
        }
    }
    let e = current(terms);
    Ok((ctx, e))
}

/// `T̃_k(z) = (1/k!) exp(-(k/n) φ_-) E^k(z) exp(-(k/n) φ_+)` regraded to
/// `z^(-k n'/n) T̃_k(z)`, which carries the twisted modes `r ∈ k n'/n + Z`.
pub fn twisted_t(ctx: &Context, e: &CurrentSum, p: &TwistedParams, k: usize) -> Result<CurrentSum> {
    let ek = e_power(ctx, e, k)?;
    let fact: i64 = (1..=k as i64).product();
    let t = dress(ctx, &ek, k, p.n).scale(&Scalar::ratio(1, fact));
    Ok(times_z(&t, &rat(-(k as i64) * p.ntw, p.n as i64)))
}

/// Outcome of [`ideal_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct IdealReport {
    /// `E^n` as computed
    pub power: CurrentSum,
    /// `n! μ^n z^n' :exp φ(z):` with `μ^n = -q^(-1/2) u / (q^(1/2)-q^(-1/2))^n`
    pub expected: CurrentSum,
    /// number of terms left in `E^(n+1)`
    pub next_terms: usize,
}

impl IdealReport {
    pub fn pass(&self) -> bool {
        self.power == self.expected && self.next_terms == 0
    }
}

/// `E^n(z) = n! μ^n z^n' :exp φ(z):` and `E^(n+1)(z) = 0` on the twisted Fock
/// module, as identities of currents.
pub fn ideal_check(p: &TwistedParams) -> Result<IdealReport> {
    let (ctx, e) = twisted_e(p)?;
    let power = e_power(&ctx, &e, p.n)?;
    let next = regular_product(&ctx, &e, &power, 0, &e_poles(ctx.half))?;
    let u = Scalar::t_pow(p.n as i64 * p.u_root);
    let fact: i64 = (1..=p.n as i64).product();
    let mu_n = -(ctx.q_half(-1) * u) * ctx.bracket().pow(-(p.n as i64));
    let expected = exp_phi(&ctx, mu_n * Scalar::from_int(fact), rat_int(p.ntw));
    Ok(IdealReport { power, expected, next_terms: next.len() })
}

/// `T(z) = c z^zpow [u :exp(η(q^(1/2) z) - η(q^(-1/2) z)): + u^-1 :exp(η(q^(-1/2) z) - η(q^(1/2) z)):]`
/// on one boson `η` with `[η[j], η[k]] = j/2 δ_{j+k,0}`, `u = t^u_exp`.
pub fn standard_t(half: i64, u_exp: i64, c: Scalar, zpow: i64) -> (Context, CurrentSum) {
    let ctx = Context { bosons: vec![Boson { gram: rat(1, 2), odd: false }], lattice: false, scale: rat_int(1), half };
    let mut terms = Vec::new();
    for sign in [1i64, -1] {
        let mut v = VertexOperator::one(&ctx);
        v.zpow = rat_int(zpow);
        v.insert_oscillators(0, half, &rat_int(sign));
        v.insert_oscillators(0, -half, &rat_int(-sign));
        terms.push((&c * Scalar::t_pow(sign * u_exp), v));
    }
    let t = current(terms);
    (ctx, t)
}

/// `T(z) = (q^(1/4)+q^(-1/4))/2 [:exp(Σ_(r odd) (q^(-r/4)-q^(r/4))/r J_r z^(-r/2)): + (J -> -J)]`
/// on the odd modes `[J_r, J_s] = r δ_{r+s,0}`; here `t = q^(1/4)`.
pub fn odd_t() -> (Context, CurrentSum) {
    let ctx = Context { bosons: vec![Boson { gram: rat_int(1), odd: true }], lattice: false, scale: rat(1, 2), half: 2 };
    let c = (Scalar::t_pow(1) + Scalar::t_pow(-1)) * Scalar::ratio(1, 2);
    let mut terms = Vec::new();
    for sign in [1i64, -1] {
        let mut v = VertexOperator::one(&ctx);
        v.insert_oscillators(0, 1, &rat_int(sign));
        v.insert_oscillators(0, -1, &rat_int(-sign));
        terms.push((c.clone(), v));
    }
    let t = current(terms);
    (ctx, t)
}

/// ```text
/// T^tw(z) = (q^(1/2)-q^(-1/2)) [z^(1/2) :exp(η(q^(1/2) z) + η(q^(-1/2) z)): + z^(3/2) :exp(-η(q^(1/2) z) - η(q^(-1/2) z)):]
/// ```
///
/// with `η = (φ_0 - φ_1)/2` on two bosons with lattice `Q_(2)`, so that
/// `η` carries `Q` and `η[0]` with `[η[0], Q] = 1/2`; here `t = q^(1/2)`.
pub fn twisted_example_t() -> (Context, CurrentSum) {
    let ctx = Context::lattice(2, 1);
    let h = rat(1, 2);
    let mut terms = Vec::new();
    for (sign, zpow) in [(1i64, rat(1, 2)), (-1, rat(3, 2))] {
        let mut v = VertexOperator::one(&ctx);
        v.zpow = zpow;
        for at in [1i64, -1] {
            for (b, w) in [(0usize, &h * rat_int(sign)), (1, -&h * rat_int(sign))] {
                v.insert_oscillators(b, at, &w);
                // zero modes and lattice: η[0] log(q^(±1/2) z) + Q.
                v.zero[b].0 += &w;
                v.zero[b].1 += &w * rat_int(at);
            }
        }
        v.shift = vec![sign, -sign];
        terms.push((ctx.bracket(), v));
    }
    let t = current(terms);
    (ctx, t)
}

/// The identity current, `T_0 = T_n = 1` after regrading.
pub fn unit(ctx: &Context, c: Scalar) -> CurrentSum {
    LinComb::basis(VertexOperator::one(ctx)).scale(&c)
}

/// Mode numbers `r ∈ offset + Z` with `|r| <= bound`.
pub fn modes_in(offset: &Rat, bound: &Rat) -> Vec<Rat> {
    let frac = offset - offset.floor();
    let mut out = Vec::new();
    let mut r = &frac - bound.ceil() - rat_int(1);
    while &r <= bound {
        if &r.abs() <= bound {
            out.push(r.clone());
        }
        r += rat_int(1);
    }
    out
}

/// The boson state `Π a_b[-k] |0⟩` as a vector of `F_(u_1) ⊗ … ⊗ F_(u_d)`,
/// with `a_b[-k]` acting as `E_{0,-k}` on factor `b`.
pub fn boson_to_fock(s: &LatticeState, cfg: &FockConfig) -> LinComb<Tuple> {
    let mut v: LinComb<Tuple> = LinComb::basis(vec![Partition::empty(); cfg.factors()]);
    for (b, p) in s.osc.iter().enumerate() {
        for &k in p.parts() {
            let mut w = LinComb::zero();
            for (t, c) in v.iter() {
                for (mu, x) in act_single(0, -(k as i64), &t[b], &cfg.params[b], cfg) {
                    let mut nt = t.clone();
                    nt[b] = mu;
                    w.add_term(nt, c * &x);
                }
            }
            v = w;
        }
    }
    v
}

/// `E(z) = Σ_i u_i/(1-q) :exp(φ_i(q^(1/2) z) - φ_i(q^(-1/2) z)):` on `d`
/// bosons, the bosonization of `F_(u_1) ⊗ … ⊗ F_(u_d)`.
pub fn untwisted_e(cfg: &FockConfig) -> (Context, CurrentSum) {
    let ctx = Context::oscillators(cfg.factors(), cfg.half);
    let den = (Scalar::one() - cfg.q_int(1)).inv();
    let terms = cfg
        .params
        .iter()
        .enumerate()
        .map(|(i, u)| {
            let mut v = VertexOperator::one(&ctx);
            v.insert_oscillators(i, cfg.half, &rat_int(1));
            v.insert_oscillators(i, -cfg.half, &rat_int(-1));
            (u * &den, v)
        })
        .collect();
    let e = current(terms);
    (ctx, e)
}

/// `:E(w)E(w):_m = Σ_{j <= 0} E_j E_(m-j) + Σ_{j > 0} E_(m-j) E_j` on a
/// vector of degree `<= deg`.
fn normal_square(m: i64, v: &LinComb<Tuple>, deg: i64, cfg: &FockConfig) -> LinComb<Tuple> {
    let mut out = LinComb::zero();
    for j in (m - deg)..=0 {
        out = out.add(&act_e(1, j, &act_e(1, m - j, v, cfg), cfg));
    }
    for j in 1..=deg {
        out = out.add(&act_e(1, m - j, &act_e(1, j, v, cfg), cfg));
    }
    out
}

/// Both sides of `E²(w) = (q-1)^-1 E_2(q^-1 w) + q (q-1)^-1 E_2(w) + :E(w)E(w):`
/// on one state: the left by regular products of vertex operators, the right
/// from the ribbon actions of `E_{1,k}` and `E_{2,k}`. The current in this
/// identity is `E_2(w) = Σ_k q^(-k/2) E_{2,k} w^(-k)`, the normalization
/// for which `[E(z), E(w)] = δ(w/qz) E_2(w/q) - δ(qw/z) E_2(w)`.
pub fn e_squared_sides(cfg: &FockConfig, m: i64, s: &LatticeState) -> Result<(LinComb<Tuple>, LinComb<Tuple>)> {
    let (ctx, e) = untwisted_e(cfg);
    let sq = e_power(&ctx, &e, 2)?;
    let left_b = ModeAction::new(&ctx, &sq).apply(&rat_int(m), &LinComb::basis(s.clone()));
    let mut left = LinComb::zero();
    for (x, c) in left_b.iter() {
        left.add_assign_scaled(&boson_to_fock(x, cfg), c);
    }
    let deg = osc_degree(&s.osc) as i64;
    let cfg = cfg.with_degree((deg + 2 * m.abs() + 2) as usize);
    let v = boson_to_fock(s, &cfg);
    let q = cfg.q_int(1);
    let inv = (&q - Scalar::one()).inv();
    let e2 = act_e(2, m, &v, &cfg).scale(&(&inv * (Scalar::t_pow(cfg.half * m) + &q * Scalar::t_pow(-cfg.half * m))));
    let right = e2.add(&normal_square(m, &v, deg, &cfg));
    Ok((left, right))
}

/// One named check of [`verify_walgebra`].
#[derive(Clone, Debug, PartialEq)]
pub struct WReport {
    pub name: String,
    pub checked: usize,
    pub failure: Option<String>,
}

impl WReport {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }

    fn from_relation(name: String, r: core::result::Result<usize, WCounterexample>) -> Self {
        match r {
            Ok(checked) => WReport { name, checked, failure: None },
            Err(c) => WReport { name, checked: 0, failure: Some(format!("{} on {:?}", c.relation, c.input)) },
        }
    }

    fn equality<T: PartialEq + core::fmt::Debug>(name: &str, lhs: &T, rhs: &T) -> Self {
        let failure = if lhs == rhs { None } else { Some(format!("{:?} != {:?}", lhs, rhs)) };
        WReport { name: name.into(), checked: 1, failure }
    }
}

/// Int TT for the standard and odd bosonizations of the q-Virasoro current,
/// modes `|r|, |s| <= modes`, states of degree `<= deg`.
pub fn verify_virasoro_bosonizations(modes: i64, deg: &Rat) -> Vec<WReport> {
    let rs = modes_in(&rat_int(0), &rat_int(modes));
    let (ctx, t) = standard_t(1, 5, Scalar::one(), 0);
    let one = unit(&ctx, Scalar::one());
    let mut out = vec![WReport::from_relation("Int TT, standard bosonization".into(), w_relation_check(&ctx, &t, &t, &one, 1, 2, &rs, &rs, deg))];
    let (ctx, t) = odd_t();
    let one = unit(&ctx, Scalar::one());
    out.push(WReport::from_relation("Int TT, odd bosonization".into(), w_relation_check(&ctx, &t, &t, &one, 1, 2, &rs, &rs, deg)));
    out
}

/// Int TT for the twisted (2,1) bosonization with the boundary `T_2 = -1`,
/// half-integer modes `|r|, |s| <= modes`.
pub fn verify_twisted_example(modes: i64, deg: &Rat) -> WReport {
    let (ctx, t) = twisted_example_t();
    let hs = modes_in(&rat(1, 2), &rat_int(modes));
    let minus_one = unit(&ctx, Scalar::from_int(-1));
    WReport::from_relation("Int TT, twisted (2,1) bosonization".into(), w_relation_check(&ctx, &t, &t, &minus_one, 1, 2, &hs, &hs, deg))
}

/// The currents `T̃_1, …, T̃_n` built from `E` on the twisted Fock module
/// (`n' ≢ 0`) or on `F_(u_1) ⊗ … ⊗ F_(u_n)` (`n' = 0`), the relations between
/// consecutive ones, the scalar `T̃_n`, and `[H, T̃_k] = 0`.
pub fn verify_walgebra(n: usize, ntw: i64, u_root: i64, modes: i64, deg: &Rat) -> Result<Vec<WReport>> {
    if n < 2 {
        return Err(Error::Invalid("the W currents need n >= 2".into()));
    }
    let (ctx, e, expected) = if ntw == 0 {
        let params: Vec<Scalar> = (0..n as i64).map(|i| Scalar::t_pow(u_root + 3 * i)).collect();
        let cfg = FockConfig::new(params.clone(), 1, 0);
        let (ctx, e) = untwisted_e(&cfg);
        // E^n has one term per ordering of distinct bosons
        let prod = params.iter().fold(Scalar::one(), |a, u| a * u);
        let value = prod * (Scalar::one() - cfg.q_int(1)).pow(-(n as i64));
        (ctx, e, value)
    } else {
        let p = TwistedParams::new(n, ntw, u_root)?;
        let (ctx, e) = twisted_e(&p)?;
        let u = Scalar::t_pow(n as i64 * u_root);
        let value = -(ctx.q_half(-1) * u) * ctx.bracket().pow(-(n as i64));
        (ctx, e, value)
    };
    let p = TwistedParams { n, ntw, u_root };
    let ts: Vec<CurrentSum> = (1..=n).map(|k| twisted_t(&ctx, &e, &p, k)).collect::<Result<_>>()?;
    let bound = rat_int(modes);
    let offset = |k: usize| rat(k as i64 * ntw, n as i64);
    let mut out = Vec::new();
    for k in 1..n {
        let r = modes_in(&offset(1), &bound);
        let s = modes_in(&offset(k), &bound);
        let name = format!("T1 Tk relation, k = {}", k);
        out.push(WReport::from_relation(name, w_relation_check(&ctx, &ts[0], &ts[k - 1], &ts[k], k, n, &r, &s, deg)));
    }
    out.push(WReport::equality("T_n scalar", &ts[n - 1], &unit(&ctx, expected)));
    let higher = regular_product(&ctx, &e, &e_power(&ctx, &e, n)?, 0, &e_poles(ctx.half))?;
    out.push(WReport::equality("E^(n+1) = 0", &higher.len(), &0));
    for (k, t) in ts.iter().enumerate().take(n - 1) {
        let ok = commutes_with_heisenberg(&ctx, t, &modes_in(&offset(k + 1), &bound), 2, deg);
        let name = format!("[H, T{}] = 0", k + 1);
        out.push(WReport { name, checked: 1, failure: if ok { None } else { Some("nonzero commutator".into()) } });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::{Chevalley, ModeModule};
    use crate::twisted::LatticeBoson;

    fn assert_all(reports: &[WReport]) {
        for r in reports {
            assert!(r.pass(), "{}: {:?}", r.name, r.failure);
        }
    }

    #[test]
    fn f_coefficients_of_virasoro() {
        let f = f_coefficients(1, 2, 3, 1);
        let q = Scalar::t_pow(2);
        assert_eq!(f[0], Scalar::one());
        assert_eq!(f[1], Scalar::one() - (&q + q.inv()) * Scalar::ratio(1, 2));
        assert_eq!(f.len(), 4);
    }

    #[test]
    fn contraction_of_e_with_itself() {
        let p = TwistedParams::new(2, 1, 1).unwrap();
        let (ctx, e) = twisted_e(&p).unwrap();
        let terms: Vec<&VertexOperator> = e.keys().collect();
        assert_eq!(terms.len(), 2);
        // a term alone is regular at w = z with a double zero
        assert_eq!(contraction(&ctx, terms[0], terms[0]).unwrap(), BTreeMap::from([(0, rat_int(2))]));
        // across terms, simple poles at w = q^(±1) z with q = t^4
        assert_eq!(contraction(&ctx, terms[0], terms[1]).unwrap(), BTreeMap::from([(-4, rat_int(-1)), (4, rat_int(-1))]));
    }

    #[test]
    fn undeclared_pole_is_an_error() {
        let p = TwistedParams::new(2, 1, 1).unwrap();
        let (ctx, e) = twisted_e(&p).unwrap();
        assert!(matches!(regular_product(&ctx, &e, &e, 0, &[]), Err(Error::Pole(_))));
        assert!(regular_product(&ctx, &e, &e, 2 * ctx.half, &e_poles(ctx.half)).is_err());
        assert!(regular_product(&ctx, &e, &e, 0, &e_poles(ctx.half)).is_ok());
    }

    #[test]
    fn lattice_e_is_the_lattice_boson() {
        for (n, ntw) in [(2usize, 1i64), (3, 1)] {
            let p = TwistedParams::new(n, ntw, 1).unwrap();
            let (ctx, e) = twisted_e(&p).unwrap();
            let lb = LatticeBoson::new(p).unwrap();
            let act = ModeAction::new(&ctx, &e);
            for s in ctx.window(&rat_int(2)) {
                let v = LinComb::basis(s.clone());
                for k in -2..=2 {
                    assert_eq!(act.apply(&rat_int(k), &v), lb.apply(Chevalley::E(k), &v), "{:?} {}", s, k);
                }
            }
        }
    }

    #[test]
    fn ideal_of_twisted_fock() {
        for (n, ntw) in [(2usize, 1i64), (3, 1)] {
            let rep = ideal_check(&TwistedParams::new(n, ntw, 1).unwrap()).unwrap();
            assert!(rep.pass(), "({},{}) {:?}", n, ntw, rep);
        }
    }

    #[test]
    fn bosonizations_small_window() {
        assert_all(&verify_virasoro_bosonizations(2, &rat_int(2)));
        assert!(verify_twisted_example(2, &rat_int(2)).pass());
    }

    #[test]
    fn displayed_prefactors_fail() {
        // -(q^(1/2)-q^(-1/2)) z on the standard current, T_2 = +1 on the twisted one
        let rs = modes_in(&rat_int(0), &rat_int(2));
        let br = Scalar::t_pow(1) - Scalar::t_pow(-1);
        let (ctx, t) = standard_t(1, 5, -br, 1);
        let one = unit(&ctx, Scalar::one());
        assert!(w_relation_check(&ctx, &t, &t, &one, 1, 2, &rs, &rs, &rat_int(1)).is_err());
        let (ctx, t) = twisted_example_t();
        let hs = modes_in(&rat(1, 2), &rat_int(2));
        let one = unit(&ctx, Scalar::one());
        assert!(w_relation_check(&ctx, &t, &t, &one, 1, 2, &hs, &hs, &rat_int(1)).is_err());
    }

    #[test]
    fn dressed_currents() {
        assert_all(&verify_walgebra(2, 1, 1, 2, &rat_int(2)).unwrap());
        assert_all(&verify_walgebra(3, 1, 1, 2, &rat_int(1)).unwrap());
        assert_all(&verify_walgebra(2, 0, 1, 2, &rat_int(2)).unwrap());
        assert_all(&verify_walgebra(3, 0, 1, 1, &rat_int(1)).unwrap());
    }

    #[test]
    fn e_squared_two_routes() {
        let cfg = FockConfig::new(vec![Scalar::t_pow(3), Scalar::t_pow(-4)], 1, 10);
        let ctx = Context::oscillators(2, 1);
        for s in ctx.window(&rat_int(2)) {
            for m in -2..=2 {
                let (l, r) = e_squared_sides(&cfg, m, &s).unwrap();
                assert_eq!(l, r, "{:?} {}", s, m);
            }
        }
    }

    #[test]
    fn modes_in_cosets() {
        assert_eq!(modes_in(&rat(1, 2), &rat_int(1)), vec![rat(-1, 2), rat(1, 2)]);
        assert_eq!(modes_in(&rat(4, 3), &rat_int(1)), vec![rat(-2, 3), rat(1, 3)]);
        assert_eq!(modes_in(&rat_int(0), &rat_int(1)).len(), 3);
    }
}
