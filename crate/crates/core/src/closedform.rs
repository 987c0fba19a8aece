//! Closed formulas that only hold on rectangles.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::engine::poly_det;
use crate::error::{Error, Result};
use crate::polyring::Poly;
use crate::tuple::IncTuple;

/// Binomial coefficient, zero whenever `k < 0`, `n < 0` or `k > n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `sum_k C(m-a, k) C(n-b, k) t^k`: paths from `(a, n)` to `(m, b)` in the
/// `m x n` rectangle, counted by corners.
pub fn rect_single_poly(m: u32, n: u32, a: u32, b: u32) -> Poly {
    let right = i64::from(m) - i64::from(a);
    let down = i64::from(n) - i64::from(b);
    let top = right.min(down).max(-1);
    Poly::from_coeffs(
        (0..=top)
            .map(|k| binom(right, k) * binom(down, k))
            .collect(),
    )
}

fn check_rect_hypotheses(m: u32, n: u32, a: &IncTuple, b: &IncTuple) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Ok(());
    }
    if a[0] != 1 || b[0] != 1 {
        return Err(Error::Precondition(format!(
            "need a_1 = b_1 = 1, got a = ({a}), b = ({b})"
        )));
    }
    if a.last() > Some(m) || b.last() > Some(n) {
        return Err(Error::Precondition(format!(
            "endpoints ({a}), ({b}) exceed the {m}x{n} rectangle"
        )));
    }
    Ok(())
}

/// Entry `(i, j)` (1-based) of the determinant for families on a rectangle:
/// `sum_k C(m - a_i + i - j, k) C(n - b_j + j - i, k + j - i) t^k`.
pub fn kk_entry(m: u32, n: u32, a: &IncTuple, b: &IncTuple, i: usize, j: usize) -> Poly {
    let (ii, jj) = (i as i64, j as i64);
    let upper1 = i64::from(m) - i64::from(a[i - 1]) + ii - jj;
    let upper2 = i64::from(n) - i64::from(b[j - 1]) + jj - ii;
    let shift = jj - ii;
    // C(upper1, k) vanishes for k > upper1.
    let top = upper1.max(-1);
    Poly::from_coeffs(
        (0..=top)
            .map(|k| binom(upper1, k) * binom(upper2, k + shift))
            .collect(),
    )
}

/// Determinant formula for the corner polynomial of non-intersecting
/// families on the `m x n` rectangle, with `1 = a_1 < ... < a_r <= m` and
/// `1 = b_1 < ... < b_r <= n`.
pub fn kk_det(m: u32, n: u32, a: &IncTuple, b: &IncTuple) -> Result<Poly> {
    check_rect_hypotheses(m, n, a, b)?;
    let r = a.len();
    let grid: Vec<Vec<Poly>> = (1..=r)
        .map(|i| (1..=r).map(|j| kk_entry(m, n, a, b, i, j)).collect())
        .collect();
    poly_det(&grid)
}

/// `t^{-C(r,2)} det[rect_single_poly(m, n, i, j)]` for `i, j = 1..r`.
pub fn conca_herzog_det(m: u32, n: u32, r: u32) -> Result<Poly> {
    if r > m.min(n) {
        return Err(Error::Precondition(format!(
            "r = {r} exceeds min(m, n) = {}",
            m.min(n)
        )));
    }
    let grid: Vec<Vec<Poly>> = (1..=r)
        .map(|i| (1..=r).map(|j| rect_single_poly(m, n, i, j)).collect())
        .collect();
    poly_det(&grid)?.div_t_power(pairs(r as usize))
}

/// `C(r, 2)`.
pub fn pairs(r: usize) -> usize {
    r * r.saturating_sub(1) / 2
}
