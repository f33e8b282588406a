//! Generic checks of the current relations of `Diff_q` with central charges
//! `(c, c')` on any module given by its Chevalley modes.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::fock::Tuple;
use crate::scalars::Scalar;
use crate::vector::LinComb;

/// `E_k = E_{1,k}`, `F_k = E_{-1,k}`, `H_k = E_{0,k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chevalley {
    E(i64),
    F(i64),
    H(i64),
}

impl Chevalley {
    pub fn label(self) -> (i64, i64) {
        match self {
            Chevalley::E(k) => (1, k),
            Chevalley::F(k) => (-1, k),
            Chevalley::H(k) => (0, k),
        }
    }

    pub fn from_label(a: i64, k: i64) -> Self {
        match a {
            1 => Chevalley::E(k),
            -1 => Chevalley::F(k),
            0 => Chevalley::H(k),
            _ => panic!("E_({},{}) is not a Chevalley generator", a, k),
        }
    }
}

/// A violated relation: the basis vector and both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample<K: Ord = Tuple> {
    pub relation: String,
    pub input: K,
    pub lhs: LinComb<K>,
    pub rhs: LinComb<K>,
}

/// A module on which the Chevalley modes act. `H(0)` is never requested.
pub trait ModeModule {
    type Key: Ord + Clone + Debug;

    fn apply(&self, op: Chevalley, v: &LinComb<Self::Key>) -> LinComb<Self::Key>;

    /// Basis vectors of degree `<= deg`, in whatever unit the module grades by.
    fn window(&self, deg: usize) -> Vec<Self::Key>;

    /// `(c, c')`
    fn central(&self) -> (i64, i64);

    /// `q^(k/2)`
    fn q_half(&self, k: i64) -> Scalar;
}

fn commutator<M: ModeModule>(m: &M, x: Chevalley, y: Chevalley, v: &LinComb<M::Key>) -> LinComb<M::Key> {
    m.apply(x, &m.apply(y, v)).sub(&m.apply(y, &m.apply(x, v)))
}

/// Mode forms of the Chevalley relations for modes in `-modes..=modes` on
/// basis vectors of degree `<= window`:
///
/// * `[H_k, H_l] = k c δ_{k+l,0}`
/// * `[H_k, E_l] = (q^(-k/2) - q^(k/2)) E_{k+l}`, `[H_k, F_l] = (q^(k/2) - q^(-k/2)) F_{k+l}`
/// * `[E_a, F_b] = (q^((a+b)/2) - q^(-(a+b)/2)) H_{a+b} + (c' + c a) δ_{a+b,0}`
/// * `[E_{a+2},E_b] - (q+q^-1)[E_{a+1},E_{b+1}] + [E_a,E_{b+2}] = 0`, same for F
///
/// Returns the number of (vector, mode pair) cases checked.
pub fn chevalley_relations<M: ModeModule>(
    m: &M,
    modes: i64,
    window: usize,
) -> core::result::Result<usize, Counterexample<M::Key>> {
    use Chevalley::*;
    let (c, cp) = m.central();
    let qq = m.q_half(2) + m.q_half(-2);
    let br = |k: i64| m.q_half(k) - m.q_half(-k);
    let mut checked = 0usize;
    for key in m.window(window) {
        let v = LinComb::basis(key.clone());
        let fail = |rel: String, lhs: LinComb<M::Key>, rhs: LinComb<M::Key>| Counterexample { relation: rel, input: key.clone(), lhs, rhs };
        for k in -modes..=modes {
            for l in -modes..=modes {
                if k != 0 && l != 0 {
                    let lhs = commutator(m, H(k), H(l), &v);
                    let rhs = if k + l == 0 { v.scale(&Scalar::from_int(k * c)) } else { LinComb::zero() };
                    if lhs != rhs {
                        return Err(fail(format!("[H_{}, H_{}]", k, l), lhs, rhs));
                    }
                }
                if k != 0 {
                    let lhs = commutator(m, H(k), E(l), &v);
                    let rhs = m.apply(E(k + l), &v).scale(&-br(k));
                    if lhs != rhs {
                        return Err(fail(format!("[H_{}, E_{}]", k, l), lhs, rhs));
                    }
                    let lhs = commutator(m, H(k), F(l), &v);
                    let rhs = m.apply(F(k + l), &v).scale(&br(k));
                    if lhs != rhs {
                        return Err(fail(format!("[H_{}, F_{}]", k, l), lhs, rhs));
                    }
                }
                let lhs = commutator(m, E(k), F(l), &v);
                let rhs = if k + l == 0 {
                    v.scale(&Scalar::from_int(cp + c * k))
                } else {
                    m.apply(H(k + l), &v).scale(&br(k + l))
                };
                if lhs != rhs {
                    return Err(fail(format!("[E_{}, F_{}]", k, l), lhs, rhs));
                }
                for (name, g) in [("E", E as fn(i64) -> Chevalley), ("F", F as fn(i64) -> Chevalley)] {
                    let lhs = commutator(m, g(k + 2), g(l), &v)
                        .sub(&commutator(m, g(k + 1), g(l + 1), &v).scale(&qq))
                        .add(&commutator(m, g(k), g(l + 2), &v));
                    if !lhs.is_zero() {
                        return Err(fail(format!("{} locality at modes ({}, {})", name, k, l), lhs, LinComb::zero()));
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// Mode form of the cubic Serre relation
/// `z2/z3 [E(z1),[E(z2),E(z3)]] + cyclic = 0`: for all `a, b, c`,
/// `[E_a,[E_{b+1},E_{c-1}]] + [E_b,[E_{c+1},E_{a-1}]] + [E_c,[E_{a+1},E_{b-1}]] = 0`.
/// `sign = 1` for E, `-1` for F.
pub fn serre_relations<M: ModeModule>(
    m: &M,
    sign: i64,
    modes: i64,
    window: usize,
) -> core::result::Result<usize, Counterexample<M::Key>> {
    let g = |k: i64| Chevalley::from_label(sign, k);
    let mut checked = 0;
    for key in m.window(window) {
        let v = LinComb::basis(key.clone());
        let nest = |x: i64, y: i64, w: i64| -> LinComb<M::Key> {
            let inner = |u: &LinComb<M::Key>| commutator(m, g(y), g(w), u);
            m.apply(g(x), &inner(&v)).sub(&inner(&m.apply(g(x), &v)))
        };
        for a in -modes..=modes {
            for b in -modes..=modes {
                for c in -modes..=modes {
                    let s = nest(a, b + 1, c - 1).add(&nest(b, c + 1, a - 1)).add(&nest(c, a + 1, b - 1));
                    if !s.is_zero() {
                        return Err(Counterexample {
                            relation: format!("Serre ({}) at ({}, {}, {})", sign, a, b, c),
                            input: key.clone(),
                            lhs: s,
                            rhs: LinComb::zero(),
                        });
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

/// `Σ_{deg v = d} ⟨v*, X v⟩` for `d = 0..=deg`, `X` a degree-zero word in the
/// modes (applied right to left), with `degree` the grading of basis keys.
pub fn graded_trace<M: ModeModule>(m: &M, word: &[Chevalley], deg: usize, degree: impl Fn(&M::Key) -> usize) -> Vec<Scalar> {
    let mut out = alloc::vec![Scalar::zero(); deg + 1];
    for key in m.window(deg) {
        let mut v = LinComb::basis(key.clone());
        for op in word.iter().rev() {
            v = m.apply(*op, &v);
        }
        out[degree(&key)] += v.coeff(&key);
    }
    out
}

/// Caches the action of each mode on each basis vector.
pub struct Memo<'a, M: ModeModule> {
    inner: &'a M,
    cache: core::cell::RefCell<alloc::collections::BTreeMap<((i64, i64), M::Key), LinComb<M::Key>>>,
}

impl<'a, M: ModeModule> Memo<'a, M> {
    pub fn new(inner: &'a M) -> Self {
        Memo { inner, cache: Default::default() }
    }
}

impl<M: ModeModule> ModeModule for Memo<'_, M> {
    type Key = M::Key;

    fn apply(&self, op: Chevalley, v: &LinComb<M::Key>) -> LinComb<M::Key> {
        let mut out = LinComb::zero();
        for (k, c) in v.iter() {
            let key = (op.label(), k.clone());
            let hit = self.cache.borrow().get(&key).cloned();
            let image = match hit {
                Some(x) => x,
                None => {
                    let x = self.inner.apply(op, &LinComb::basis(k.clone()));
                    self.cache.borrow_mut().insert(key, x.clone());
                    x
                }
            };
            out.add_assign_scaled(&image, c);
        }
        out
    }

    fn window(&self, deg: usize) -> Vec<M::Key> {
        self.inner.window(deg)
    }

    fn central(&self) -> (i64, i64) {
        self.inner.central()
    }

    fn q_half(&self, k: i64) -> Scalar {
        self.inner.q_half(k)
    }
}
