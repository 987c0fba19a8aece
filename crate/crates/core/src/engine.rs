//! Fast exact computation of the corner polynomials `W` and `W~`, the
//! one-column recursions for both, and the right-hand side of the main
//! expansion of `t^{-C(r,2)} W~` in terms of `W`.
//!
//! Notation: for a region with `m` columns and start points `P_i = (a_i, n)`,
//! `W(b)` is the corner polynomial of non-intersecting families ending at
//! `Q_i = (m, b_i)`, and `W~(b) = det[W(P_i, Q_j)]`.

use num_bigint::BigUint;

use crate::acoeff::a_coeff;
use crate::brackets::{curly_unchecked, sq_tuple_unchecked};
use crate::closedform::pairs;
use crate::counts::{Count, Wide};
use crate::error::{Error, Result};
use crate::polyring::Poly;
use crate::region::{Cell, EndpointSpec, LadderRegion};
use crate::tuple::IncTuple;

/// Determinant of a square matrix of polynomials.
///
/// Laplace expansion along successive rows, memoized on the set of columns
/// already used: `2^r * r` polynomial products and no division.
pub fn poly_det(grid: &[Vec<Poly>]) -> Result<Poly> {
    let r = grid.len();
    if let Some((row, len)) = grid
        .iter()
        .enumerate()
        .map(|(i, row)| (i, row.len()))
        .find(|&(_, len)| len != r)
    {
        return Err(Error::NotSquare { rows: r, row, len });
    }
    if r > 24 {
        return Err(Error::Precondition(format!(
            "{r}x{r} determinant is too large for subset expansion"
        )));
    }
    // minors[S] = det of rows 0..|S| restricted to the columns in S.
    let mut minors = vec![Poly::zero(); 1 << r];
    minors[0] = Poly::one();
    for mask in 1usize..(1 << r) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = Poly::zero();
        for (col, entry) in grid[row].iter().enumerate() {
            if mask & (1 << col) == 0 {
                continue;
            }
            let rest = mask & !(1 << col);
            if minors[rest].is_zero() || entry.is_zero() {
                continue;
            }
            let term = entry * &minors[rest];
            // Sign of the cofactor: columns of S to the right of `col`.
            if (rest >> col).count_ones() % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        minors[mask] = acc;
    }
    Ok(minors.pop().expect("nonempty"))
}

/// Corner polynomial of single paths from `from` down to `to`.
///
/// Column sweep over exit rows: a path entering a column horizontally at
/// row `d` and leaving it at row `e < d` turns a corner at `(column, d)`.
pub fn single_path_poly(region: &LadderRegion, from: Cell, to: Cell) -> Poly {
    if !region.contains(from) || !region.contains(to) || !to.precedes(&from) {
        return Poly::zero();
    }
    let floor = to.j as usize;
    // exits[row] for rows floor..=n; the start column has no corner.
    let mut exits = vec![Poly::zero(); region.n() as usize + 1];
    for slot in exits.iter_mut().take(from.j as usize + 1).skip(floor) {
        *slot = Poly::one();
    }
    for col in from.i + 1..=to.i {
        let top = region.height(col) as usize;
        let mut next = vec![Poly::zero(); exits.len()];
        // above = sum of exits[d] for d > e within the column.
        let mut above = Poly::zero();
        for e in (floor..=top).rev() {
            let mut val = above.shift(1);
            val += &exits[e];
            above += &exits[e];
            next[e] = val;
        }
        exits = next;
    }
    std::mem::take(&mut exits[floor])
}

/// Corner polynomial `W` of non-intersecting families, by a left-to-right
/// transfer over columns.
///
/// The state after a column is the increasing tuple of exit rows of the
/// paths started so far. Between consecutive columns the exit tuples `d`
/// and `e` are weighted by the tuple bracket `[d / e]`; a path starting in a
/// column enters at the top row and is charged no corner there. The
/// bracket is applied one path at a time, from the topmost path down, which
/// keeps every intermediate tuple increasing.
pub fn family_poly(region: &LadderRegion, spec: &EndpointSpec) -> Result<Poly> {
    spec.validate(region)?;
    let layout = Layout::new(region.n(), spec.r())?;
    // Every partial count is at most the number of r-tuples of monotone
    // paths, below 2^(r (m + n)).
    let bits = spec.r() as u64 * u64::from(region.m() + region.n()) + 1;
    Ok(match bits {
        0..=64 => sweep::<Wide<1>>(region, spec, &layout),
        65..=128 => sweep::<Wide<2>>(region, spec, &layout),
        129..=256 => sweep::<Wide<4>>(region, spec, &layout),
        257..=512 => sweep::<Wide<8>>(region, spec, &layout),
        _ => sweep::<BigUint>(region, spec, &layout),
    })
}

/// Largest number of exit tuples the dense transfer will allocate.
const MAX_STATES: usize = 1 << 24;

/// Colex ranking of increasing tuples over `1..=n`: the tuple
/// `x_0 < x_1 < ...` has rank `sum_i C(x_i - 1, i + 1)`, so the `k`-tuples
/// fill `0..C(n, k)`.
struct Layout {
    n: u32,
    /// `binom[x][j] = C(x, j)` for `x <= n`, `j <= r + 1`.
    binom: Vec<Vec<usize>>,
}

impl Layout {
    fn new(n: u32, r: usize) -> Result<Self> {
        let mut binom = vec![vec![0usize; r + 2]; n as usize + 1];
        for x in 0..=n as usize {
            binom[x][0] = 1;
            for j in 1..=r + 1 {
                let v = if x == 0 {
                    0
                } else {
                    binom[x - 1][j - 1].saturating_add(binom[x - 1][j])
                };
                binom[x][j] = v.min(MAX_STATES + 1);
            }
        }
        let widest = (0..=r).map(|k| binom[n as usize][k]).max().unwrap_or(1);
        if widest > MAX_STATES {
            return Err(Error::Precondition(format!(
                "{widest} exit tuples exceed the transfer limit {MAX_STATES}"
            )));
        }
        Ok(Layout { n, binom })
    }

    fn count(&self, k: usize) -> usize {
        self.binom[self.n as usize][k]
    }

    fn c(&self, x: u32, j: usize) -> usize {
        self.binom[x as usize][j]
    }

    fn rank(&self, tuple: &[u32]) -> usize {
        tuple
            .iter()
            .enumerate()
            .map(|(i, &x)| self.c(x - 1, i + 1))
            .sum()
    }

    /// Every increasing `k`-tuple over `1..=n`, in lexicographic order.
    fn for_each(&self, k: usize, mut f: impl FnMut(&[u32])) {
        if k as u32 > self.n {
            return;
        }
        let mut cur: Vec<u32> = (1..=k as u32).collect();
        loop {
            f(&cur);
            // Advance the rightmost entry that still has room.
            let Some(i) = (0..k).rev().find(|&i| cur[i] < self.n - (k - 1 - i) as u32) else {
                return;
            };
            cur[i] += 1;
            for j in i + 1..k {
                cur[j] = cur[j - 1] + 1;
            }
        }
    }
}

/// Coefficients of a polynomial with nonnegative coefficients, lowest
/// first; empty means zero and no stored vector is all zeros.
type Counts<C> = Vec<C>;

fn sweep<C: Count>(region: &LadderRegion, spec: &EndpointSpec, layout: &Layout) -> Poly {
    let r = spec.r();
    let n = region.n();
    let b = &spec.b;
    let mut states: Vec<Counts<C>> = vec![vec![C::one()]];
    let mut active = 0usize;
    for col in 1..=region.m() {
        let top = region.height(col);
        if active > 0 && top < n {
            layout.for_each(active, |t| {
                if t[active - 1] > top {
                    states[layout.rank(t)].clear();
                }
            });
        }
        let entering = active;
        if active < r && spec.a[active] == col {
            let floor = b[active];
            let mut grown: Vec<Counts<C>> = vec![Vec::new(); layout.count(active + 1)];
            let mut key = Vec::with_capacity(active + 1);
            layout.for_each(active, |t| {
                let counts = &states[layout.rank(t)];
                if counts.is_empty() {
                    return;
                }
                let lo = t.last().map_or(1, |&d| d + 1).max(floor);
                key.clear();
                key.extend_from_slice(t);
                key.push(0);
                for e in lo..=n {
                    key[active] = e;
                    grown[layout.rank(&key)] = counts.clone();
                }
            });
            states = grown;
            active += 1;
        }
        for idx in (0..entering).rev() {
            descend_one(&mut states, layout, active, idx, b[idx]);
        }
    }
    if active < r {
        return Poly::zero();
    }
    let counts = std::mem::take(&mut states[layout.rank(b)]);
    Poly::from_coeffs(counts.iter().map(Count::to_bigint).collect())
}

/// Moves path `idx` of `k` active paths down its column: the entry at row
/// `d` goes to every exit row `e` with `max(lower neighbour + 1, floor) <= e
/// <= d`, weighted by `[d/e]`. Each line of tuples that differ only in
/// coordinate `idx` is updated in place from the top, with `above`
/// holding the sum of the old entries for `d > e`.
fn descend_one<C: Count>(
    states: &mut [Counts<C>],
    layout: &Layout,
    k: usize,
    idx: usize,
    floor: u32,
) {
    let mut above: Counts<C> = Vec::new();
    let mut scratch: Counts<C> = Vec::new();
    layout.for_each(k - 1, |rest| {
        let lower = if idx > 0 { rest[idx - 1] } else { 0 }.max(floor.saturating_sub(1));
        let upper = if idx + 1 < k { rest[idx] - 1 } else { layout.n };
        if lower >= upper {
            return;
        }
        let base: usize = rest
            .iter()
            .enumerate()
            .map(|(i, &x)| layout.c(x - 1, if i < idx { i + 1 } else { i + 2 }))
            .sum();
        above.clear();
        for e in (lower + 1..=upper).rev() {
            let slot = &mut states[base + layout.c(e - 1, idx + 1)];
            if above.is_empty() {
                // Nothing from above: the entry stays and seeds the sum.
                above.extend_from_slice(slot);
                continue;
            }
            scratch.clear();
            scratch.extend_from_slice(&above);
            add_counts(&mut scratch, slot);
            add_shifted(slot, &above);
            std::mem::swap(&mut above, &mut scratch);
        }
    });
}

fn add_counts<C: Count>(acc: &mut Counts<C>, other: &[C]) {
    if acc.len() < other.len() {
        acc.resize(other.len(), C::default());
    }
    for (a, o) in acc.iter_mut().zip(other) {
        a.add_assign(o);
    }
}

/// `acc += t * other`.
fn add_shifted<C: Count>(acc: &mut Counts<C>, other: &[C]) {
    if acc.len() < other.len() + 1 {
        acc.resize(other.len() + 1, C::default());
    }
    for (a, o) in acc[1..].iter_mut().zip(other) {
        a.add_assign(o);
    }
}

fn single_grid(region: &LadderRegion, spec: &EndpointSpec) -> Vec<Vec<Poly>> {
    (0..spec.r())
        .map(|i| {
            (0..spec.r())
                .map(|j| single_path_poly(region, spec.start(region, i), spec.end(region, j)))
                .collect()
        })
        .collect()
}

/// `W~ = det[W(P_i, Q_j)]`.
pub fn wtilde(region: &LadderRegion, spec: &EndpointSpec) -> Result<Poly> {
    spec.validate(region)?;
    poly_det(&single_grid(region, spec))
}

fn check_peelable(region: &LadderRegion, spec: &EndpointSpec) -> Result<LadderRegion> {
    spec.validate(region)?;
    let last_start = spec.a.last().unwrap_or(0);
    if region.m() <= last_start.max(1) {
        return Err(Error::Precondition(format!(
            "cannot peel column {} when a path starts in column {last_start}",
            region.m()
        )));
    }
    region.truncate(region.m() - 1)
}

/// `sum_d {d / b} W~_{m-1}(d)` over `d` in `S_r` with `(m, d_r)` in the
/// region, where `W~_{m-1}` is taken on the first `m - 1` columns.
pub fn wtilde_step(region: &LadderRegion, spec: &EndpointSpec) -> Result<Poly> {
    let inner = check_peelable(region, spec)?;
    let top = region.height(region.m());
    let mut total = Poly::zero();
    for d in IncTuple::all(spec.r(), top) {
        let weight = curly_unchecked(&d, &spec.b);
        if weight.is_zero() {
            continue;
        }
        let sub = EndpointSpec {
            a: spec.a.clone(),
            b: d,
        };
        total += &(&weight * &wtilde(&inner, &sub)?);
    }
    Ok(total)
}

/// Exit tuples `d` of column `m - 1` that can reach `b` in column `m`:
/// `b_i <= d_i < b_{i+1}` and `d_r <= top`.
pub fn peel_window(b: &IncTuple, top: u32) -> Vec<IncTuple> {
    let ranges: Vec<(u32, u32)> = (0..b.len())
        .map(|i| (b[i], b.get(i + 1).map_or(top, |&next| next - 1)))
        .collect();
    IncTuple::in_boxes(&ranges)
}

/// `sum_d [d / b] W_{m-1}(d)` over `d` in `S_r` with `(m, d_r)` in the
/// region.
pub fn family_peel(region: &LadderRegion, spec: &EndpointSpec) -> Result<Poly> {
    let inner = check_peelable(region, spec)?;
    let top = region.height(region.m());
    let mut total = Poly::zero();
    for d in peel_window(&spec.b, top) {
        let weight = sq_tuple_unchecked(&d, &spec.b);
        if weight.is_zero() {
            continue;
        }
        let sub = EndpointSpec {
            a: spec.a.clone(),
            b: d,
        };
        total += &(&weight * &family_poly(&inner, &sub)?);
    }
    Ok(total)
}

/// `sum_c A(b; c) (1 - t)^{sum (c_i - b_i)} W(c)` for start columns
/// `a_i = i`. The sum runs over the support of `A`: `c >= b` and `c_r = b_r`.
/// For a single path `A` is the identity.
pub fn main_rhs(region: &LadderRegion, spec: &EndpointSpec) -> Result<Poly> {
    spec.validate(region)?;
    if !spec.has_standard_starts() {
        return Err(Error::Precondition(format!(
            "start columns must be 1..r, got ({})",
            spec.a
        )));
    }
    let r = spec.r();
    if r <= 1 {
        return family_poly(region, spec);
    }
    let b = &spec.b;
    let b_r = b[r - 1];
    let ranges: Vec<(u32, u32)> = (0..r).map(|i| (b[i], b_r)).collect();
    let mut total = Poly::zero();
    for c in IncTuple::in_boxes(&ranges) {
        if c[r - 1] != b_r {
            continue;
        }
        let coeff = a_coeff(b, &c)?;
        if coeff == 0.into() {
            continue;
        }
        let w = family_poly(region, &EndpointSpec::standard(c.clone()))?;
        if w.is_zero() {
            continue;
        }
        let factor = &Poly::constant(coeff) * &Poly::one_minus_t_pow(b.gap_to(&c) as usize);
        total += &(&factor * &w);
    }
    Ok(total)
}

/// `t^{-C(r,2)} W~`, failing with [`Error::NotDivisible`] if the division
/// is not exact.
pub fn normalized_wtilde(region: &LadderRegion, spec: &EndpointSpec) -> Result<Poly> {
    wtilde(region, spec)?.div_t_power(pairs(spec.r()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::rect_single_poly;
    use crate::oracle::{family_poly_oracle, single_poly_oracle};

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    fn region(g: &[u32]) -> LadderRegion {
        LadderRegion::from_profile(g.to_vec()).unwrap()
    }

    fn std_spec(b: &str) -> EndpointSpec {
        EndpointSpec::standard(b.parse().unwrap())
    }

    #[test]
    fn determinants() {
        let id: Vec<Vec<Poly>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| if i == j { Poly::one() } else { Poly::zero() })
                    .collect()
            })
            .collect();
        assert_eq!(poly_det(&id).unwrap(), Poly::one());
        assert_eq!(
            poly_det(&[vec![p(&[1, 1]), p(&[1])], vec![p(&[1]), p(&[1])]]).unwrap(),
            Poly::t()
        );
        assert_eq!(
            poly_det(&[vec![p(&[1, 4, 1]), p(&[1])], vec![p(&[1, 2]), p(&[1])]]).unwrap(),
            p(&[0, 2, 1])
        );
        assert_eq!(poly_det(&[]).unwrap(), Poly::one());
        assert!(matches!(
            poly_det(&[vec![Poly::one(), Poly::one()]]),
            Err(Error::NotSquare { .. })
        ));
        // Integer 3x3 determinant with known value -3.
        let m = [[1, 2, 3], [4, 5, 6], [7, 8, 10]];
        let grid: Vec<Vec<Poly>> = m
            .iter()
            .map(|row| row.iter().map(|&v| Poly::constant(v)).collect())
            .collect();
        assert_eq!(poly_det(&grid).unwrap(), Poly::constant(-3));
    }

    #[test]
    fn single_paths() {
        let ladder = region(&[3, 3, 2]);
        assert_eq!(
            single_path_poly(&ladder, Cell::new(1, 3), Cell::new(3, 1)),
            p(&[1, 3, 1])
        );
        assert_eq!(
            single_path_poly(&ladder, Cell::new(2, 3), Cell::new(3, 2)),
            Poly::one()
        );
        assert!(single_path_poly(&ladder, Cell::new(2, 1), Cell::new(1, 1)).is_zero());
        assert!(single_path_poly(&ladder, Cell::new(1, 3), Cell::new(3, 3)).is_zero());
        for m in 1..=6 {
            for n in 1..=6 {
                let rect = LadderRegion::rectangle(m, n).unwrap();
                for a in 1..=m {
                    for b in 1..=n {
                        assert_eq!(
                            single_path_poly(&rect, Cell::new(a, n), Cell::new(m, b)),
                            rect_single_poly(m, n, a, b)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn single_paths_match_enumeration_on_ladders() {
        for m in 1..=5 {
            for n in 1..=5 {
                for reg in LadderRegion::all_profiles(m, n, 1) {
                    for from_i in 1..=m {
                        for to_j in 1..=reg.height(m) {
                            let from = Cell::new(from_i, reg.height(from_i));
                            let to = Cell::new(m, to_j);
                            assert_eq!(
                                single_path_poly(&reg, from, to),
                                single_poly_oracle(&reg, from, to)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn family_examples() {
        assert_eq!(
            family_poly(&region(&[3, 3, 3]), &std_spec("1,3")).unwrap(),
            p(&[1, 2])
        );
        assert_eq!(
            family_poly(&region(&[3, 3, 2]), &std_spec("1,2")).unwrap(),
            Poly::one()
        );
        assert_eq!(
            family_poly(&region(&[2, 2]), &std_spec("1,2")).unwrap(),
            Poly::one()
        );
        assert_eq!(
            family_poly(&region(&[2, 2]), &std_spec("")).unwrap(),
            Poly::one()
        );
        assert!(family_poly(&region(&[3, 3, 2]), &std_spec("1,3")).is_err());
    }

    #[test]
    fn family_matches_enumeration_on_small_ladders() {
        for m in 1..=4 {
            for n in 1..=4 {
                for r in 1..=3u32.min(m) {
                    for reg in LadderRegion::all_profiles(m, n, r) {
                        for b in IncTuple::all(r as usize, reg.height(m)) {
                            let spec = EndpointSpec::standard(b);
                            assert_eq!(
                                family_poly(&reg, &spec).unwrap(),
                                family_poly_oracle(&reg, &spec).unwrap(),
                                "{reg} {spec:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn family_with_spread_starts() {
        let rect = LadderRegion::rectangle(5, 4).unwrap();
        for a in IncTuple::all(2, 5) {
            for b in IncTuple::all(2, 4) {
                let spec = EndpointSpec::new(a.clone(), b).unwrap();
                assert_eq!(
                    family_poly(&rect, &spec).unwrap(),
                    family_poly_oracle(&rect, &spec).unwrap()
                );
            }
        }
    }

    #[test]
    fn wtilde_examples() {
        assert_eq!(
            wtilde(&region(&[2, 2]), &std_spec("1,2")).unwrap(),
            Poly::t()
        );
        assert_eq!(
            wtilde(&region(&[3, 3, 3]), &std_spec("1,3")).unwrap(),
            p(&[0, 2, 1])
        );
        assert_eq!(
            wtilde(&region(&[3, 3, 2]), &std_spec("1,2")).unwrap(),
            Poly::t()
        );
    }

    #[test]
    fn one_column_peels() {
        // The second path starts in the last column, so nothing can be peeled.
        let sq = region(&[2, 2]);
        assert!(matches!(
            wtilde_step(&sq, &std_spec("1,2")),
            Err(Error::Precondition(_))
        ));
        assert!(family_peel(&sq, &std_spec("1,2")).is_err());
        let rect = region(&[3, 3, 3]);
        assert_eq!(wtilde_step(&rect, &std_spec("1,3")).unwrap(), p(&[0, 2, 1]));
        assert!(wtilde_step(&region(&[2]), &std_spec("1")).is_err());
        let ladder = region(&[4, 4, 3, 2]);
        for b in IncTuple::all(2, 2) {
            let spec = EndpointSpec::standard(b);
            assert_eq!(
                wtilde_step(&ladder, &spec).unwrap(),
                wtilde(&ladder, &spec).unwrap()
            );
            assert_eq!(
                family_peel(&ladder, &spec).unwrap(),
                family_poly(&ladder, &spec).unwrap()
            );
        }
        // Single path: a plain sum of scalar brackets.
        let spec = std_spec("1");
        let inner = ladder.truncate(3).unwrap();
        let by_hand: Poly = (1..=2)
            .map(|d| {
                &crate::brackets::sq_scalar(d, 1)
                    * &family_poly(&inner, &std_spec(&d.to_string())).unwrap()
            })
            .sum();
        assert_eq!(wtilde_step(&ladder, &spec).unwrap(), by_hand);
    }

    #[test]
    fn peel_window_covers_all_nonzero_brackets() {
        for r in 1..=3 {
            for b in IncTuple::all(r, 6) {
                for top in b.last().unwrap()..=7 {
                    let window = peel_window(&b, top);
                    let wide: Vec<IncTuple> = IncTuple::all(r, top + 3)
                        .into_iter()
                        .filter(|d| {
                            d.last().unwrap() <= top && !sq_tuple_unchecked(d, &b).is_zero()
                        })
                        .collect();
                    assert_eq!(window, wide, "b={b} top={top}");
                }
            }
        }
    }

    #[test]
    fn main_rhs_examples() {
        assert_eq!(
            main_rhs(&region(&[3, 3, 3]), &std_spec("1,3")).unwrap(),
            p(&[2, 1])
        );
        assert_eq!(
            main_rhs(&region(&[3, 3, 2]), &std_spec("1,2")).unwrap(),
            Poly::one()
        );
        let rect = region(&[4, 4, 4, 4]);
        let spec = std_spec("1,2,3");
        assert_eq!(
            main_rhs(&rect, &spec).unwrap(),
            family_poly(&rect, &spec).unwrap()
        );
        let spread = EndpointSpec::new("1,3".parse().unwrap(), "1,2".parse().unwrap()).unwrap();
        assert!(main_rhs(&rect, &spread).is_err());
    }

    #[test]
    fn normalized_wtilde_examples() {
        assert_eq!(
            normalized_wtilde(&region(&[3, 3, 3]), &std_spec("1,3")).unwrap(),
            p(&[2, 1])
        );
        assert_eq!(
            normalized_wtilde(&region(&[3, 3, 2]), &std_spec("1,2")).unwrap(),
            Poly::one()
        );
    }
}
