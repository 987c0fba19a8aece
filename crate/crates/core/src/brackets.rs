//! Transfer weights between endpoint tuples of consecutive columns.
//!
//! `[c/b]` is the weight of a path that leaves one column at row `c` and
//! ends at row `b` of the next: `t` when it turns a corner, `1` when it
//! runs straight across, `0` when it would have to climb.

use crate::engine::poly_det;
use crate::error::{Error, Result};
use crate::polyring::Poly;
use crate::tuple::IncTuple;

/// `t` if `c > b`, `1` if `c == b`, `0` if `c < b`.
pub fn sq_scalar(c: u32, b: u32) -> Poly {
    match c.cmp(&b) {
        std::cmp::Ordering::Greater => Poly::t(),
        std::cmp::Ordering::Equal => Poly::one(),
        std::cmp::Ordering::Less => Poly::zero(),
    }
}

fn same_len(c: &IncTuple, b: &IncTuple) -> Result<()> {
    if c.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: c.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// Zero when `c_i >= b_{i+1}` for some `i`, else the product of `[c_i/b_i]`.
pub fn sq_tuple(c: &IncTuple, b: &IncTuple) -> Result<Poly> {
    same_len(c, b)?;
    Ok(sq_tuple_unchecked(c, b))
}

pub(crate) fn sq_tuple_unchecked(c: &[u32], b: &[u32]) -> Poly {
    if c.iter()
        .zip(b.iter().skip(1))
        .any(|(ci, bnext)| ci >= bnext)
    {
        return Poly::zero();
    }
    // The product is t^(number of strict descents) or zero.
    let mut corners = 0;
    for (&ci, &bi) in c.iter().zip(b) {
        match ci.cmp(&bi) {
            std::cmp::Ordering::Less => return Poly::zero(),
            std::cmp::Ordering::Greater => corners += 1,
            std::cmp::Ordering::Equal => {}
        }
    }
    Poly::monomial(1, corners)
}

/// Signed sum over permutations `s` of the entries of `c` of
/// `sign(s) [s(c_1)/b_1] ... [s(c_l)/b_l]`, computed as the determinant of
/// the matrix with entry `(i, j) = [c_j / b_i]`.
pub fn curly(c: &IncTuple, b: &IncTuple) -> Result<Poly> {
    same_len(c, b)?;
    Ok(curly_unchecked(c, b))
}

pub(crate) fn curly_unchecked(c: &[u32], b: &[u32]) -> Poly {
    let grid: Vec<Vec<Poly>> = b
        .iter()
        .map(|&bi| c.iter().map(|&cj| sq_scalar(cj, bi)).collect())
        .collect();
    poly_det(&grid).expect("square by construction")
}
