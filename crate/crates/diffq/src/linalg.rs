//! Exact linear algebra over Q(t), with rank certified by reduction at a
//! point modulo a large prime.
//!
//! If a minor is nonzero after specializing `t` mod p it is nonzero over
//! Q(t), so a full rank found modularly is a proof, not a heuristic.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalars::Scalar;

/// 2^61 - 1
pub const PRIME: u64 = 2_305_843_009_213_693_951;

const POINTS: [u64; 4] = [982_451_653, 1_000_000_007, 77_777_777_777, 31_415_926_535];

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn submod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + PRIME - b
    }
}

fn invmod(a: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a;
    let mut e = PRIME - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    r
}

/// Greedy choice of rows independent mod p at `t = point`; returns the
/// chosen row indices (at most `ncols`). `None` if some entry has a pole
/// at the point.
fn independent_rows_at(rows: &[Vec<Scalar>], ncols: usize, point: u64) -> Option<Vec<usize>> {
    // reduced basis: (pivot column, row) with row[pivot] == 1
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut chosen = Vec::new();
    for (ri, row) in rows.iter().enumerate() {
        if basis.len() == ncols {
            break;
        }
        let mut v = Vec::with_capacity(ncols);
        for x in row {
            v.push(if x.is_zero() { 0 } else { x.eval_mod(point, PRIME)? });
        }
        for (pc, b) in &basis {
            let f = v[*pc];
            if f != 0 {
                for (vj, bj) in v.iter_mut().zip(b) {
                    *vj = submod(*vj, mulmod(f, *bj));
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = invmod(v[pc]);
            for x in v.iter_mut() {
                *x = mulmod(*x, inv);
            }
            basis.push((pc, v));
            chosen.push(ri);
        }
    }
    Some(chosen)
}

/// Rows forming a certified basis of the row space of `rows`, or the largest
/// independent set found if the rank is below `ncols`.
pub fn certified_rows(rows: &[Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for &p in &POINTS {
        if let Some(c) = independent_rows_at(rows, ncols, p) {
            if c.len() > best.len() {
                best = c;
            }
            if best.len() == ncols {
                break;
            }
        }
    }
    best
}

fn weight(x: &Scalar) -> usize {
    if x.is_monomial() {
        0
    } else {
        1 + x.num().degree() + x.den().degree()
    }
}

/// Solve the square system `a x = b` exactly, choosing the simplest pivot
/// in each column. `None` if singular.
pub fn solve_square(mut a: Vec<Vec<Scalar>>, mut b: Vec<Scalar>) -> Option<Vec<Scalar>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|r| r.len() == n));
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let mut piv = None;
        let mut best = usize::MAX;
        for r in col..n {
            let x = &a[perm[r]][col];
            if !x.is_zero() {
                let w = weight(x);
                if w < best {
                    best = w;
                    piv = Some(r);
                }
            }
        }
        let pr = piv?;
        perm.swap(col, pr);
        let p = perm[col];
        let inv = a[p][col].inv();
        let prow: Vec<Scalar> = a[p][col..].iter().map(|x| x * &inv).collect();
        let pb = &b[p] * &inv;
        a[p].splice(col.., prow.iter().cloned());
        b[p] = pb.clone();
        for &r in &perm[col + 1..] {
            let f = a[r][col].clone();
            if f.is_zero() {
                continue;
            }
            for j in col..n {
                if !prow[j - col].is_zero() {
                    let d = &f * &prow[j - col];
                    a[r][j] -= d;
                }
            }
            let d = &f * &pb;
            b[r] -= d;
        }
    }
    let mut x = vec![Scalar::zero(); n];
    for col in (0..n).rev() {
        let p = perm[col];
        let mut s = b[p].clone();
        for j in col + 1..n {
            if !a[p][j].is_zero() {
                s -= &a[p][j] * &x[j];
            }
        }
        x[col] = s;
    }
    Some(x)
}

/// Rank of a matrix over Q(t), certified from below by the modular rank.
pub fn certified_rank(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    certified_rows(rows, ncols).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(k: i64) -> Scalar {
        Scalar::t_pow(k)
    }

    #[test]
    fn solves_small_system() {
        let a = vec![vec![t(1), Scalar::one()], vec![Scalar::one(), t(-1)]];
        let x = vec![t(2), Scalar::from_int(3)];
        let b: Vec<Scalar> = a.iter().map(|r| &r[0] * &x[0] + &r[1] * &x[1]).collect();
        // singular: second row = first / t
        assert!(solve_square(a.clone(), b).is_none());
        let a = vec![vec![t(1), Scalar::one()], vec![Scalar::one(), t(1)]];
        let b: Vec<Scalar> = a.iter().map(|r| &r[0] * &x[0] + &r[1] * &x[1]).collect();
        assert_eq!(solve_square(a, b).unwrap(), x);
    }

    #[test]
    fn rank_certification() {
        let rows = vec![
            vec![t(1), Scalar::one(), Scalar::zero()],
            vec![t(2), t(1), Scalar::zero()],
            vec![Scalar::zero(), Scalar::one(), Scalar::one() - t(1)],
        ];
        assert_eq!(certified_rows(&rows, 3), vec![0, 2]);
        assert_eq!(certified_rank(&rows, 3), 2);
    }
}
