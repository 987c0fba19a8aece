//! The integer coefficients `A(b; c)` and the three transfer sums built from
//! them.
//!
//! `A` is defined recursively on pairs of equal-length increasing tuples:
//! for length 2, `A(b1, b2; c1, c2) = 1` when `b2 = c2` and `b1 <= c1`, and
//! `0` otherwise; for length `l > 2` it vanishes unless `b_l = c_l`, and is
//! then the sum of `A(b_1..b_{l-1}; c')` over all `c' <= (c_1..c_{l-1})`.
//!
//! By induction `A(b; c)` is nonzero only when `b <= c` componentwise and
//! `b_l = c_l`; all sums below are restricted to that support.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::brackets::{curly_unchecked, sq_tuple_unchecked};
use crate::error::{Error, Result};
use crate::polyring::Poly;
use crate::tuple::IncTuple;

thread_local! {
    static MEMO: RefCell<HashMap<(IncTuple, IncTuple), BigInt>> = RefCell::new(HashMap::new());
}

fn check_pair(b: &IncTuple, c: &IncTuple, min_len: usize) -> Result<()> {
    if b.len() != c.len() {
        return Err(Error::LengthMismatch {
            left: b.len(),
            right: c.len(),
        });
    }
    if b.len() < min_len {
        return Err(Error::Precondition(format!(
            "tuples must have length >= {min_len}, got {}",
            b.len()
        )));
    }
    Ok(())
}

/// `A(b; c)` for tuples of equal length `l >= 2`.
pub fn a_coeff(b: &IncTuple, c: &IncTuple) -> Result<BigInt> {
    check_pair(b, c, 2)?;
    Ok(a_rec(b, c))
}

fn a_rec(b: &IncTuple, c: &IncTuple) -> BigInt {
    let l = b.len();
    if b[l - 1] != c[l - 1] || !b.le(c) {
        return BigInt::zero();
    }
    if l == 2 {
        // b2 == c2 and b1 <= c1
        return BigInt::from(1);
    }
    let key = (b.clone(), c.clone());
    if let Some(v) = MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return v;
    }
    // c' ranges over b' <= c' <= (c_1, .., c_{l-2}, b_{l-1}).
    let head = b.init();
    let ranges: Vec<(u32, u32)> = (0..l - 1)
        .map(|i| {
            if i + 2 == l {
                (b[i], b[i])
            } else {
                (b[i], c[i])
            }
        })
        .collect();
    let total: BigInt = IncTuple::in_boxes(&ranges)
        .iter()
        .map(|cp| a_rec(&head, cp))
        .sum();
    MEMO.with(|m| m.borrow_mut().insert(key, total.clone()));
    total
}

/// `sum_d A(d; c) {d / b} (1 - t)^{sum (c_i - d_i)}`.
pub fn b1(b: &IncTuple, c: &IncTuple) -> Result<Poly> {
    check_pair(b, c, 2)?;
    let l = c.len();
    let ranges: Vec<(u32, u32)> = (0..l)
        .map(|i| if i + 1 == l { (c[i], c[i]) } else { (1, c[i]) })
        .collect();
    let mut total = Poly::zero();
    for d in IncTuple::in_boxes(&ranges) {
        let a = a_rec(&d, c);
        if a.is_zero() {
            continue;
        }
        let weight = curly_unchecked(&d, b);
        if weight.is_zero() {
            continue;
        }
        let gap = d.gap_to(c) as usize;
        total += &(&(&Poly::constant(a) * &weight) * &Poly::one_minus_t_pow(gap));
    }
    Ok(total)
}

/// `sum_d A(b; d) [c / d] (1 - t)^{sum (d_i - b_i)}`.
pub fn b2(b: &IncTuple, c: &IncTuple) -> Result<Poly> {
    check_pair(b, c, 2)?;
    let l = b.len();
    if b[l - 1] > c[l - 1] {
        return Ok(Poly::zero());
    }
    // [c/d] needs d <= c; A(b; d) needs d >= b and d_l = b_l.
    let ranges: Vec<(u32, u32)> = (0..l)
        .map(|i| {
            if i + 1 == l {
                (b[i], b[i])
            } else {
                (b[i], c[i])
            }
        })
        .collect();
    let mut total = Poly::zero();
    for d in IncTuple::in_boxes(&ranges) {
        let weight = sq_tuple_unchecked(c, &d);
        if weight.is_zero() {
            continue;
        }
        let a = a_rec(b, &d);
        if a.is_zero() {
            continue;
        }
        let gap = b.gap_to(&d) as usize;
        total += &(&(&Poly::constant(a) * &weight) * &Poly::one_minus_t_pow(gap));
    }
    Ok(total)
}

/// `sum_{d_1=b_1}^{b_2-1} ... sum_{d_{l-1}=b_{l-1}}^{b_l-1}
/// A(d; c_1..c_{l-1}) (1 - t)^{sum (c_i - d_i)}`, defined for `l >= 3` and
/// `b_l = c_l`.
pub fn b3(b: &IncTuple, c: &IncTuple) -> Result<Poly> {
    check_pair(b, c, 3)?;
    let l = b.len();
    if b[l - 1] != c[l - 1] {
        return Err(Error::Precondition(format!(
            "last entries differ: b_l = {}, c_l = {}",
            b[l - 1],
            c[l - 1]
        )));
    }
    let head_c = c.init();
    let mut total = Poly::zero();
    for d in IncTuple::in_boxes(&nested_windows(b)) {
        let a = a_rec(&d, &head_c);
        if a.is_zero() {
            continue;
        }
        let gap = d.gap_to(&head_c);
        if gap < 0 {
            continue;
        }
        total += &(&Poly::constant(a) * &Poly::one_minus_t_pow(gap as usize));
    }
    Ok(total)
}

/// The boxes `[b_i, b_{i+1} - 1]` for `i = 1..l-1`.
pub fn nested_windows(b: &[u32]) -> Vec<(u32, u32)> {
    b.windows(2).map(|w| (w[0], w[1] - 1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tup(s: &str) -> IncTuple {
        s.parse().unwrap()
    }

    fn a(b: &str, c: &str) -> BigInt {
        a_coeff(&tup(b), &tup(c)).unwrap()
    }

    /// The definition with no support restriction: every c' in S_{l-1}
    /// below c contributes.
    fn a_unrestricted(b: &IncTuple, c: &IncTuple) -> BigInt {
        let l = b.len();
        if l == 2 {
            return BigInt::from(u8::from(b[1] == c[1] && b[0] <= c[0]));
        }
        if b[l - 1] != c[l - 1] {
            return BigInt::zero();
        }
        let head_b = b.init();
        let head_c = c.init();
        let ranges: Vec<(u32, u32)> = head_c.iter().map(|&x| (1, x)).collect();
        IncTuple::in_boxes(&ranges)
            .iter()
            .map(|cp| a_unrestricted(&head_b, cp))
            .sum()
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(a("1,3", "2,3"), BigInt::from(1));
        assert_eq!(a("1,2,3", "1,2,4"), BigInt::zero());
        assert_eq!(a("1,3,4", "2,3,4"), BigInt::from(2));
        assert_eq!(a("2,3", "1,3"), BigInt::zero());
        assert!(a_coeff(&tup("1"), &tup("1")).is_err());
        assert!(a_coeff(&tup("1,2"), &tup("1,2,3")).is_err());
    }

    #[test]
    fn support_and_sign() {
        for l in 2..=4 {
            let tuples = IncTuple::all(l, 8);
            for b in &tuples {
                for c in &tuples {
                    let v = a_rec(b, c);
                    assert_eq!(v, a_unrestricted(b, c), "b={b} c={c}");
                    assert!(v >= BigInt::zero());
                    if !v.is_zero() {
                        assert!(b.le(c) && b[l - 1] == c[l - 1]);
                    }
                }
            }
        }
    }

    #[test]
    fn length_three_closed_form() {
        for b in IncTuple::all(3, 8) {
            for c in IncTuple::all(3, 8) {
                let expected = if b.le(&c) && b[2] == c[2] {
                    let v = i64::from(c[0].min(b[1] - 1)) - i64::from(b[0]) + 1;
                    BigInt::from(v.max(0))
                } else {
                    BigInt::zero()
                };
                assert_eq!(a_rec(&b, &c), expected, "b={b} c={c}");
            }
        }
    }

    #[test]
    fn b_form_examples() {
        let p = |c: &[i64]| Poly::from_i64s(c);
        assert_eq!(b1(&tup("1,2,4"), &tup("1,2,4")).unwrap(), Poly::one());
        // c_1 <= b_2 - 1 and b_1 <= c_1: the value is [c_2/b_2].
        assert_eq!(b1(&tup("1,3"), &tup("2,4")).unwrap(), Poly::t());
        assert_eq!(b2(&tup("1,3"), &tup("2,4")).unwrap(), Poly::t());
        // c_1 >= b_2: both vanish.
        assert_eq!(b1(&tup("1,2"), &tup("2,3")).unwrap(), Poly::zero());
        assert_eq!(b2(&tup("1,2"), &tup("2,3")).unwrap(), Poly::zero());
        assert_eq!(b1(&tup("1,2"), &tup("3,4")).unwrap(), Poly::zero());
        assert_eq!(b2(&tup("1,3,5"), &tup("1,3,5")).unwrap(), Poly::one());
        assert_eq!(b3(&tup("1,2,4"), &tup("1,2,4")).unwrap(), Poly::one());
        assert_eq!(
            b3(&tup("1,3,4"), &tup("2,3,4")).unwrap(),
            b1(&tup("1,3,4"), &tup("2,3,4")).unwrap()
        );
        assert_eq!(b3(&tup("1,3,4"), &tup("2,3,4")).unwrap(), p(&[2, -1]));
        assert!(b3(&tup("1,2"), &tup("1,2")).is_err());
        assert!(b3(&tup("1,2,3"), &tup("1,2,4")).is_err());
    }

    #[test]
    fn b3_last_entry_stability() {
        let b = tup("1,2,4");
        let c = tup("1,3,4");
        let base = b3(&b, &c).unwrap();
        for last in 4..=10 {
            let b2_ = b.with_last(last).unwrap();
            let c2_ = c.with_last(last).unwrap();
            assert_eq!(b3(&b2_, &c2_).unwrap(), base);
        }
    }

    /// B1 and B2 summed over every d in S_l with entries up to the largest
    /// input entry plus 3, using the unrestricted coefficient.
    fn wide_sums(b: &IncTuple, c: &IncTuple) -> (Poly, Poly) {
        let l = b.len();
        let top = b.iter().chain(c.iter()).copied().max().unwrap() + 3;
        let mut s1 = Poly::zero();
        let mut s2 = Poly::zero();
        for d in IncTuple::all(l, top) {
            let a1 = a_unrestricted(&d, c);
            if !a1.is_zero() {
                let gap = d.gap_to(c);
                assert!(gap >= 0);
                s1 += &(&(&Poly::constant(a1) * &curly_unchecked(&d, b))
                    * &Poly::one_minus_t_pow(gap as usize));
            }
            let a2 = a_unrestricted(b, &d);
            if !a2.is_zero() {
                let gap = b.gap_to(&d);
                assert!(gap >= 0);
                s2 += &(&(&Poly::constant(a2) * &sq_tuple_unchecked(c, &d))
                    * &Poly::one_minus_t_pow(gap as usize));
            }
        }
        (s1, s2)
    }

    #[test]
    fn restricted_sums_match_wide_windows() {
        for l in 2..=3 {
            let tuples = IncTuple::all(l, 6);
            for b in &tuples {
                for c in &tuples {
                    let (w1, w2) = wide_sums(b, c);
                    assert_eq!(b1(b, c).unwrap(), w1, "b1 b={b} c={c}");
                    assert_eq!(b2(b, c).unwrap(), w2, "b2 b={b} c={c}");
                }
            }
        }
    }
}
