//! Whittaker vectors in `F_{u_1}⊗…⊗F_{u_N}`.
//!
//! `W(z|u) = Σ_d z^d w_d` is stored by its components `w_d`; the defining
//! conditions on `w_d` are, for `1 <= k <= d`,
//!
//! ```text
//! E_{0,k} w_d = w_{d-k} / (q^(k/2) - q^(-k/2))
//! E_{Nk,k} w_d = ((-q^(-1/2))^N u_1⋯u_N)^k / (q^(-k/2) - q^(k/2)) w_{d-k}
//! E_{k1,k2} w_d = 0                           (N k2 > k1 > 0)
//! ```

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use alloc::collections::BTreeMap;

use crate::fock::{act_e, exp_raising, i_tau, shapovalov, tuples_of_degree, FockConfig, GradedVector, Tuple};
use crate::linalg::{certified_rows, solve_square};
use crate::partitions::{core_quotient, enumerate_lattice, from_core_quotient, hook_product, hook_product_core, residue_sign, LatticePoint, Partition};
use crate::scalars::{rat, rat_int, Rat, Scalar, ZSeries};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct WhittakerVector {
    pub cfg: FockConfig,
    /// `components[d]` is the degree-d piece (its `z^d` is implicit)
    pub components: Vec<GradedVector>,
}

impl WhittakerVector {
    pub fn degree(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, d: usize) -> &GradedVector {
        &self.components[d]
    }

    /// `W(1|u)` truncated at the stored degree.
    pub fn at_one(&self) -> GradedVector {
        let mut v = GradedVector::zero();
        for c in &self.components {
            v = v.add(c);
        }
        v
    }

    fn from_total(cfg: FockConfig, v: &GradedVector, degree: usize) -> Self {
        let components = (0..=degree).map(|d| v.component(d)).collect();
        WhittakerVector { cfg, components }
    }
}

/// `q^(-c(λ)/2) / Π_{s∈λ} (q^(h(s)/2) - q^(-h(s)/2))` with `t^half = q^(1/2)`.
pub fn single_coefficient(lambda: &Partition, half: i64) -> Scalar {
    Scalar::t_pow(-half * lambda.content_sum()) / hook_product(lambda, half)
}

/// Closed form for one Fock factor (it does not depend on `u`).
pub fn whittaker_single(cfg: &FockConfig, degree: usize) -> WhittakerVector {
    assert_eq!(cfg.factors(), 1);
    let components = (0..=degree)
        .map(|d| {
            let mut v = GradedVector::zero();
            for lam in Partition::all_of_size(d) {
                let c = single_coefficient(&lam, cfg.half);
                v.add_term(vec![lam], c);
            }
            v
        })
        .collect();
    WhittakerVector { cfg: cfg.with_degree(degree), components }
}

/// `exp(Σ_k a_{-k} / (k (q^(k/2) - q^(-k/2)))) |∅⟩` with `a_{-k} = E_{0,-k}`.
pub fn whittaker_exponential(cfg: &FockConfig, degree: usize) -> WhittakerVector {
    assert_eq!(cfg.factors(), 1);
    let cfg = cfg.with_degree(degree);
    let ops: Vec<(i64, i64, Scalar)> = (1..=degree as i64)
        .map(|k| (0, -k, (Scalar::from_int(k) * cfg.bracket(k)).inv()))
        .collect();
    let v = exp_raising(&GradedVector::vacuum(1), &ops, &cfg);
    WhittakerVector::from_total(cfg, &v, degree)
}

/// Eigenvalue of `E_{a,b}` (`b > 0`, `0 <= a <= N b`) on `W` per unit `z^b`.
pub fn eigenvalue(cfg: &FockConfig, a: i64, b: i64) -> Scalar {
    let n = cfg.factors() as i64;
    assert!(b > 0 && 0 <= a && a <= n * b);
    if a == 0 {
        return cfg.bracket(b).inv();
    }
    if a == n * b {
        let mut base = cfg.q_pow(&rat(-n, 2));
        if n % 2 == 1 {
            base = -base;
        }
        for u in &cfg.params {
            base *= u;
        }
        return base.pow(b) / (-cfg.bracket(b));
    }
    Scalar::zero()
}

/// The operators `E_{a,b}` with `0 <= a <= N b`, `1 <= b <= d`: the `E_{0,k}`
/// first, then the `E_{Nk,k}`, then the annihilators by `(b, a)`.
pub fn conditions(n: usize, d: usize) -> Vec<(i64, i64)> {
    let n = n as i64;
    let d = d as i64;
    let mut out: Vec<(i64, i64)> = (1..=d).map(|k| (0, k)).collect();
    out.extend((1..=d).map(|k| (n * k, k)));
    for b in 1..=d {
        for a in 1..n * b {
            out.push((a, b));
        }
    }
    out
}

/// Degree-by-degree exact solve of the Whittaker conditions. Uniqueness at
/// every degree is certified (full column rank).
pub fn whittaker_solve(cfg: &FockConfig, degree: usize) -> Result<WhittakerVector> {
    let cfg = cfg.with_degree(degree);
    let n = cfg.factors();
    let mut comps = vec![GradedVector::vacuum(n)];
    for d in 1..=degree {
        let cols = tuples_of_degree(n, d);
        let conds = conditions(n, d);
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut rhs: Vec<Scalar> = Vec::new();
        for &(a, b) in &conds {
            let lower = &comps[d - b as usize];
            let eig = eigenvalue(&cfg, a, b);
            let targets = tuples_of_degree(n, d - b as usize);
            let index: BTreeMap<&Tuple, usize> = targets.iter().enumerate().map(|(i, t)| (t, i)).collect();
            let mut block = vec![vec![Scalar::zero(); cols.len()]; targets.len()];
            for (j, c) in cols.iter().enumerate() {
                let img = act_e(a, b, &GradedVector::basis(c.clone()), &cfg);
                for (t, x) in img.iter() {
                    block[index[t]][j] = x.clone();
                }
            }
            for (i, t) in targets.iter().enumerate() {
                rows.push(core::mem::take(&mut block[i]));
                rhs.push(&eig * &lower.coeff(t));
            }
        }
        let chosen = certified_rows(&rows, cols.len());
        if chosen.len() < cols.len() {
            return Err(Error::Solve { degree: d, reason: format!("rank {} below dimension {}", chosen.len(), cols.len()) });
        }
        let a: Vec<Vec<Scalar>> = chosen.iter().map(|&i| rows[i].clone()).collect();
        let b: Vec<Scalar> = chosen.iter().map(|&i| rhs[i].clone()).collect();
        let x = solve_square(a, b).ok_or_else(|| Error::Solve { degree: d, reason: "selected minor is singular".into() })?;
        // every equation, not only the selected ones
        for (row, r) in rows.iter().zip(&rhs) {
            let mut s = Scalar::zero();
            for (c, xj) in row.iter().zip(&x) {
                if !c.is_zero() && !xj.is_zero() {
                    s += c * xj;
                }
            }
            if &s != r {
                return Err(Error::Solve { degree: d, reason: "conditions are inconsistent".into() });
            }
        }
        let mut w = GradedVector::zero();
        for (c, xj) in cols.into_iter().zip(x) {
            w.add_term(c, xj);
        }
        comps.push(w);
    }
    Ok(WhittakerVector { cfg, components: comps })
}

/// Recheck every defining condition on the stored components; returns the
/// number of (operator, degree) pairs checked.
pub fn residuals(w: &WhittakerVector) -> Result<usize> {
    let cfg = &w.cfg;
    let mut checked = 0;
    for d in 1..=w.degree() {
        for (a, b) in conditions(cfg.factors(), d) {
            let lhs = act_e(a, b, &w.components[d], cfg);
            let rhs = w.components[d - b as usize].scale(&eigenvalue(cfg, a, b));
            if lhs != rhs {
                return Err(Error::Invalid(format!("E_({},{}) condition fails at degree {}", a, b, d)));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Which sign convention for the `E_{mk,k}` eigenvalue of `W_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WmSign {
    /// `(-q^(-1/2))^n u_1⋯u_n`, as for `W`
    Standard,
    /// `(-q^(1/2))^n u_1⋯u_n`
    Appendix,
}

/// Check that `I_τ^(n-m) W` satisfies the `W_m` conditions for `b <= deg`:
/// `E_{-(n-m)k,k}` with eigenvalue `1/(q^(k/2)-q^(-k/2))`, `E_{mk,k}` with the
/// chosen eigenvalue, and `E_{a,b} = 0` for `-(n-m)b < a < mb`.
pub fn w_m_residuals(w: &WhittakerVector, m: i64, sign: WmSign) -> Result<usize> {
    let cfg = &w.cfg;
    let n = cfg.factors() as i64;
    let p = n - m;
    let v: Vec<GradedVector> = w.components.iter().map(|c| i_tau(c, cfg, p)).collect();
    let mut lead = match sign {
        WmSign::Standard => cfg.q_pow(&rat(-n, 2)),
        WmSign::Appendix => cfg.q_pow(&rat(n, 2)),
    };
    if n % 2 == 1 {
        lead = -lead;
    }
    for u in &cfg.params {
        lead *= u;
    }
    let mut checked = 0;
    for d in 1..=w.degree() {
        for b in 1..=d as i64 {
            for a in -p * b..=m * b {
                let eig = if a == -p * b {
                    cfg.bracket(b).inv()
                } else if a == m * b {
                    lead.pow(b) / (-cfg.bracket(b))
                } else {
                    Scalar::zero()
                };
                if (a, b) == (0, 0) {
                    continue;
                }
                let lhs = act_e(a, b, &v[d], cfg);
                let rhs = v[d - b as usize].scale(&eig);
                if lhs != rhs {
                    return Err(Error::Invalid(format!("W_{} condition E_({},{}) fails at degree {}", m, a, b, d)));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// `Σ_d z^d ⟨left_d, right_d⟩_ss` where `left` lives in the dual module
/// `F_{q/u_N}⊗…⊗F_{q/u_1}` (typically at z = 1) and `right` in `⊗F_{u_i}`.
pub fn pairing_series(left: &WhittakerVector, right: &WhittakerVector, degree: usize) -> ZSeries<Scalar> {
    assert!(left.degree() >= degree && right.degree() >= degree);
    let c = (0..=degree).map(|d| shapovalov(&right.components[d], &left.components[d])).collect();
    ZSeries::new(rat_int(0), 1, c)
}

/// `u_r = q^(r/n + l_r)` as t-powers with `t = q^(1/2n)`.
pub fn decomposition_params(l: &LatticePoint) -> Vec<Scalar> {
    let n = l.n() as i64;
    l.coords().iter().enumerate().map(|(r, &lr)| Scalar::t_pow(2 * r as i64 + 2 * n * lr)).collect()
}

/// Fock configuration of the summand labelled by `l` (`t = q^(1/2n)`).
pub fn summand_config(l: &LatticePoint, degree: usize) -> FockConfig {
    FockConfig::new(decomposition_params(l), l.n() as i64, degree)
}

/// The dual summand `F_{q^(1/n - l_{n-1}) … }`, i.e. `q/u` reversed.
pub fn dual_summand_config(l: &LatticePoint, degree: usize) -> FockConfig {
    summand_config(l, degree).dual()
}

/// Identification `|λ⟩ ↦ ε(λ) |λ^(0)⟩⊗…⊗|λ^(n-1)⟩` of the ambient Fock
/// module of `Diff_{q^(1/n)}` with the sum of the summands.
pub fn residue_map(lambda: &Partition, n: usize) -> (LatticePoint, Tuple, i32) {
    let cq = core_quotient(lambda, n);
    (cq.charges, cq.quotients, residue_sign(lambda, n))
}

/// Map an ambient vector into the summands; returns one vector per lattice
/// point present.
pub fn split_vector(v: &GradedVector, n: usize) -> BTreeMap<Vec<i64>, GradedVector> {
    let mut out: BTreeMap<Vec<i64>, GradedVector> = BTreeMap::new();
    for (t, c) in v.iter() {
        assert_eq!(t.len(), 1);
        let (l, quot, s) = residue_map(&t[0], n);
        let c = if s < 0 { -c } else { c.clone() };
        out.entry(l.coords().to_vec()).or_default().add_term(quot, c);
    }
    out
}

/// Component of the ambient Whittaker vector for one lattice point.
#[derive(Clone, Debug, PartialEq)]
pub struct DecomposedComponent {
    pub l: LatticePoint,
    /// `q^(-c(core)/2n) / Π_(i,j,k)(…)^(l_i-l_j-k)`
    pub prefactor: Scalar,
    /// `½ Σ ((l_i + i/n)^2 - (i/n)^2)`
    pub z_exponent: Rat,
    /// ambient coefficients divided by the prefactor
    pub component: WhittakerVector,
}

pub fn prefactor(l: &LatticePoint) -> Scalar {
    let core = l.core();
    Scalar::t_pow(-core.content_sum()) / hook_product_core(l, 1)
}

/// Split `W(z^(1/n)|1)` of `Diff_{q^(1/n)}` over all `l` with
/// `norm(l) <= bound`, keeping quotient degrees `<= degree`.
pub fn whittaker_decompose(n: usize, degree: usize, bound: &Rat) -> Vec<DecomposedComponent> {
    enumerate_lattice(n, bound)
        .into_iter()
        .map(|l| {
            let pre = prefactor(&l);
            let inv = pre.inv();
            let components = (0..=degree)
                .map(|d| {
                    let mut v = GradedVector::zero();
                    for quot in tuples_of_degree(n, d) {
                        let lam = from_core_quotient(&l, &quot);
                        let mut c = single_coefficient(&lam, 1) * &inv;
                        if residue_sign(&lam, n) < 0 {
                            c = -c;
                        }
                        v.add_term(quot, c);
                    }
                    v
                })
                .collect();
            DecomposedComponent {
                z_exponent: l.norm(),
                prefactor: pre,
                component: WhittakerVector { cfg: summand_config(&l, degree), components },
                l,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn single_low_degrees() {
        let cfg = FockConfig::new(vec![Scalar::t_pow(1)], 1, 3);
        let w = whittaker_single(&cfg, 2);
        assert_eq!(w.components[0], GradedVector::vacuum(1));
        assert_eq!(w.components[1], GradedVector::basis(vec![p(&[1])]).scale(&cfg.bracket(1).inv()));
    }

    #[test]
    fn three_characterizations_agree() {
        let cfg = FockConfig::new(vec![Scalar::t_pow(3)], 1, 5);
        let a = whittaker_single(&cfg, 5);
        let b = whittaker_exponential(&cfg, 5);
        let c = whittaker_solve(&cfg, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        residuals(&a).unwrap();
    }

    #[test]
    fn solve_two_factors() {
        let cfg = FockConfig::new(vec![Scalar::t_pow(1), Scalar::t_pow(4)], 1, 3);
        assert!(cfg.irreducible_within(6));
        let w = whittaker_solve(&cfg, 3).unwrap();
        residuals(&w).unwrap();
        // degree 1: E_{0,1} and E_{2,1} fix the two coefficients
        let one = p(&[1]);
        let e = Partition::empty();
        let x = w.components[1].coeff(&vec![one.clone(), e.clone()]);
        let y = w.components[1].coeff(&vec![e, one]);
        let u1 = &cfg.params[0];
        let u2 = &cfg.params[1];
        let q = cfg.q_int(1);
        // E_{0,1}: x + y = 1/(q^½ - q^-½); E_{2,1}: q^-1 (u1^2 x + u2^2 y) = λ_1
        let s = cfg.bracket(1).inv();
        let lam = eigenvalue(&cfg, 2, 1) * &q;
        let xe = (&lam - u2 * u2 * &s) / (u1 * u1 - u2 * u2);
        assert_eq!(x, xe);
        assert_eq!(y, &s - &xe);
    }

    #[test]
    fn i_tau_gives_w_m() {
        let cfg = FockConfig::new(vec![Scalar::t_pow(2), Scalar::t_pow(7)], 1, 3);
        let w = whittaker_solve(&cfg, 3).unwrap();
        w_m_residuals(&w, 1, WmSign::Standard).unwrap();
        w_m_residuals(&w, 0, WmSign::Standard).unwrap();
        assert!(w_m_residuals(&w, 1, WmSign::Appendix).is_err());
    }

    #[test]
    fn u1_pairing_is_pochhammer() {
        use crate::scalars::{double_pochhammer, Tower};
        let cfg = FockConfig::new(vec![Scalar::t_pow(2)], 1, 5);
        let w = whittaker_single(&cfg, 5);
        let wd = whittaker_single(&cfg.dual(), 5);
        let s = pairing_series(&wd, &w, 5);
        let tw = Tower::new(2);
        let expect = double_pochhammer(&tw, &tw.q(1, 1), &rat_int(1), &rat_int(1), &rat_int(1), 5).unwrap();
        assert_eq!(s, expect);
    }

    #[test]
    fn residue_map_is_a_homomorphism() {
        // E^{[1/n]}_{a,nb} on the ambient module versus E_{a,b} on the summands
        for n in [2usize, 3] {
            let amb = FockConfig::new(vec![Scalar::one()], 1, 40);
            for size in 0..=7 {
                for lam in Partition::all_of_size(size) {
                    let (l, _, _) = residue_map(&lam, n);
                    let cfg = summand_config(&l, 40);
                    let src = split_vector(&GradedVector::basis(vec![lam.clone()]), n);
                    let src = &src[&l.coords().to_vec()];
                    for (a, b) in [(1, 1), (1, -1), (0, 1), (0, -2), (-1, 1), (2, -1), (1, 0), (-2, 0)] {
                        let img = act_e(a, n as i64 * b, &GradedVector::basis(vec![lam.clone()]), &amb);
                        let split = split_vector(&img, n);
                        let lhs = split.get(l.coords()).cloned().unwrap_or_default();
                        assert!(split.len() <= 1);
                        let rhs = act_e(a, b, src, &cfg);
                        assert_eq!(lhs, rhs, "n={} λ={} E_({},{})", n, lam, a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn decomposition_matches_solver() {
        let bound = rat(1, 2);
        for c in whittaker_decompose(2, 3, &bound) {
            let w = whittaker_solve(&c.component.cfg, 3).unwrap();
            assert_eq!(c.component, w, "l = {:?}", c.l);
        }
        let l = LatticePoint::new(vec![1, -1]).unwrap();
        assert_eq!(l.norm(), rat(1, 2));
    }
}
