//! Normalized conformal blocks and the lattice-sum identity
//!
//! ```text
//! (q^(1/n) z^(1/n); q^(1/n), q^(1/n))_∞
//!   = Σ_{l ∈ Q_(n)} z^norm(l) (-1)^|core(l)| / Π_(i,j,k)(…)^(2(l_i-l_j-k))
//!       ⟨W(1|q/u_{n-1}, …, q/u_0), W(z|u_0, …, u_{n-1})⟩,   u_i = q^(i/n + l_i)
//! ```
//!
//! in which both sides are series in `z^(1/n)` over Q(q^(1/2n)). The
//! transcendental one-loop constants and the common offset `z^(Σ i²/2n²)`
//! of the un-normalized statement cancel and are not computed.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::partitions::{enumerate_lattice, hook_product, hook_product_core, LatticePoint};
use crate::scalars::{double_pochhammer, rat, rat_int, Rat, Scalar, Tower, ZSeries};
use crate::whittaker::{dual_summand_config, pairing_series, summand_config, whittaker_solve};
use crate::fock::FockConfig;
use crate::{Error, Result};

/// `(q^(1/n) z^(1/n); q^(1/n), q^(1/n))_∞` through `z^(order/n)`.
pub fn lhs_series(n: usize, order: usize) -> Result<ZSeries<Scalar>> {
    assert!(n >= 1);
    let tw = Tower::for_params(n as u32, 1);
    let e = rat(1, n as i64);
    double_pochhammer(&tw, &tw.q_pow(&e)?, &e, &e, &e, order)
}

/// `(-1)^|core(l)| / Π_(i,j,k) (q^((k+(i-j)/n)/2) - q^(-(k+(i-j)/n)/2))^(2(l_i-l_j-k))`.
pub fn one_loop_factor(l: &LatticePoint) -> Scalar {
    let h = hook_product_core(l, 1);
    let r = (&h * &h).inv();
    if l.core().size() % 2 == 1 {
        -r
    } else {
        r
    }
}

/// One lattice point's contribution.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeTerm {
    pub l: LatticePoint,
    /// Whittaker degree used
    pub degree: usize,
    /// `z^norm(l) · factor · ⟨W, W⟩`, as a series in `z^(1/n)`
    pub series: ZSeries<Scalar>,
}

/// Contribution of `l` through `z^(order/n)`; `None` if `norm(l)` is past the
/// order.
pub fn rhs_term(l: &LatticePoint, order: usize) -> Result<Option<LatticeTerm>> {
    let n = l.n();
    let norm_steps = &l.norm() * rat_int(n as i64);
    if !norm_steps.is_integer() {
        return Err(Error::Invalid("lattice norm is not a multiple of 1/n".into()));
    }
    let ns = norm_steps.to_integer().to_usize().ok_or_else(|| Error::Invalid("negative norm".into()))?;
    if ns > order {
        return Ok(None);
    }
    let degree = (order - ns) / n;
    let cfg = summand_config(l, degree);
    let right = whittaker_solve(&cfg, degree)?;
    let left = whittaker_solve(&dual_summand_config(l, degree), degree)?;
    let pair = pairing_series(&left, &right, degree).scale(&one_loop_factor(l));
    // spread over z^(1/n) steps, then shift by z^norm
    let mut c = alloc::vec![Scalar::zero(); order - ns + 1];
    for (d, x) in pair.coeffs().iter().enumerate() {
        c[d * n] = x.clone();
    }
    let series = ZSeries::new(rat_int(0), n as u32, c).shift(&l.norm());
    Ok(Some(LatticeTerm { l: l.clone(), degree, series }))
}

/// Lattice points whose terms reach `z^(order/n)`.
pub fn contributing_points(n: usize, order: usize) -> Vec<LatticePoint> {
    enumerate_lattice(n, &rat(order as i64, n as i64))
}

/// Sum the lattice terms into one series on `[0, order/n]`.
pub fn sum_terms(n: usize, order: usize, terms: &[LatticeTerm]) -> Result<ZSeries<Scalar>> {
    let mut total = ZSeries::constant(Scalar::zero(), n as u32, order);
    for t in terms {
        let sh = (t.l.norm() * rat_int(n as i64)).to_integer().to_usize().unwrap();
        let mut c = total.coeffs().to_vec();
        for (i, x) in t.series.coeffs().iter().enumerate() {
            c[sh + i] += x;
        }
        total = ZSeries::new(rat_int(0), n as u32, c);
    }
    Ok(total)
}

pub fn rhs_series(n: usize, order: usize) -> Result<(ZSeries<Scalar>, Vec<LatticeTerm>)> {
    let mut terms = Vec::new();
    for l in contributing_points(n, order) {
        if let Some(t) = rhs_term(&l, order)? {
            terms.push(t);
        }
    }
    Ok((sum_terms(n, order, &terms)?, terms))
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub n: usize,
    /// in units of `z^(1/n)`
    pub order: usize,
    /// `(exponent, lhs, rhs)`
    pub coefficients: Vec<(Rat, Scalar, Scalar)>,
    pub lattice: Vec<LatticePoint>,
    pub pass: bool,
}

/// Compare both sides coefficient by coefficient.
pub fn report(n: usize, order: usize, lhs: &ZSeries<Scalar>, rhs: &ZSeries<Scalar>, terms: &[LatticeTerm]) -> IdentityReport {
    let coefficients: Vec<(Rat, Scalar, Scalar)> = (0..=order)
        .map(|i| {
            let e = rat(i as i64, n as i64);
            (e.clone(), lhs.coeff(&e).unwrap(), rhs.coeff(&e).unwrap())
        })
        .collect();
    let pass = coefficients.iter().all(|(_, a, b)| a == b);
    IdentityReport { n, order, coefficients, lattice: terms.iter().map(|t| t.l.clone()).collect(), pass }
}

pub fn verify_identity(n: usize, order: usize) -> Result<IdentityReport> {
    let lhs = lhs_series(n, order)?;
    let (rhs, terms) = rhs_series(n, order)?;
    Ok(report(n, order, &lhs, &rhs, &terms))
}

/// Normalized block `z^(Σ γ_i²/2) ⟨W(1|q/u_N, …, q/u_1), W(z|u)⟩` for
/// `u_i = q^(γ_i)`, without the z-independent one-loop product.
/// Returns the series (integer steps in z) and the configuration used.
pub fn z_function(gammas: &[Rat], degree: usize) -> Result<(ZSeries<Scalar>, FockConfig)> {
    if gammas.is_empty() {
        return Err(Error::Invalid("no parameters".into()));
    }
    let mut den = num_bigint::BigInt::from(1);
    for g in gammas {
        den = den.lcm(g.denom());
    }
    let l = den.to_i64().ok_or_else(|| Error::Invalid("denominator too large".into()))?;
    // t = q^(1/2l), so q^(1/2) = t^l and q^γ = t^(2 l γ)
    let params = gammas
        .iter()
        .map(|g| {
            let e = g * rat_int(2 * l);
            Scalar::t_pow(e.to_integer().to_i64().unwrap())
        })
        .collect();
    let cfg = FockConfig::new(params, l, degree);
    let right = whittaker_solve(&cfg, degree)?;
    let left = whittaker_solve(&cfg.dual(), degree)?;
    let offset: Rat = gammas.iter().map(|g| g * g).fold(rat_int(0), |a, b| a + b) / rat_int(2);
    Ok((pairing_series(&left, &right, degree).shift(&offset), cfg))
}

/// The hook-product form of the one-loop factor, for cross-checking
/// [`one_loop_factor`].
pub fn one_loop_from_core(l: &LatticePoint) -> Scalar {
    let core = l.core();
    let h = hook_product(&core, 1);
    let r = (&h * &h).inv();
    if core.size() % 2 == 1 {
        -r
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lhs_first_coefficients() {
        for n in [2usize, 3] {
            let s = lhs_series(n, 3).unwrap();
            assert!(s.coeffs()[0].is_one());
            let tw = Tower::for_params(n as u32, 1);
            let q = tw.q(1, n as i64);
            let one = Scalar::one();
            assert_eq!(s.coeffs()[1], -(&q / ((&one - &q) * (&one - &q))));
        }
    }

    #[test]
    fn identity_n2_low_order() {
        let r = verify_identity(2, 2).unwrap();
        assert!(r.pass, "{:?}", r.coefficients);
    }

    #[test]
    fn one_loop_two_ways() {
        for n in [2usize, 3] {
            for l in enumerate_lattice(n, &rat_int(3)) {
                assert_eq!(one_loop_factor(&l), one_loop_from_core(&l));
            }
        }
    }

    #[test]
    fn z_function_offsets() {
        let (s, _) = z_function(&[rat_int(0)], 4).unwrap();
        assert_eq!(s.offset(), &rat_int(0));
        let (s, _) = z_function(&[rat_int(1), rat(1, 2) - rat_int(1)], 1).unwrap();
        assert_eq!(s.offset(), &(rat_int(1) / rat_int(2) + rat(1, 8)));
        assert!(s.coeffs()[0].is_one());
    }

    #[test]
    fn l_zero_term_is_z_function() {
        let n = 2;
        let l = LatticePoint::zero(n);
        let t = rhs_term(&l, 4).unwrap().unwrap();
        let (z, _) = z_function(&[rat_int(0), rat(1, 2)], 2).unwrap();
        for d in 0..=2 {
            let e = rat_int(d);
            let zc = z.coeff(&(&e + z.offset())).unwrap();
            assert_eq!(t.series.coeff(&e).unwrap(), zc);
        }
    }
}
