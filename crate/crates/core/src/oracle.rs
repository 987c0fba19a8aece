//! Brute-force enumeration of paths and non-intersecting families.
//!
//! Everything here is exponential and meant as ground truth for small
//! regions. Enumeration is depth first, trying the downward step before the
//! rightward one, so the output order is deterministic.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::polyring::Poly;
use crate::region::{Cell, EndpointSpec, LadderRegion};

/// Default number of search nodes a family enumeration may visit.
pub const DEFAULT_STEP_BUDGET: u64 = 20_000_000;

/// A maximal chain from a start cell down to an end cell, listed in path
/// order. Each step either decreases `j` or increases `i` by one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathChain {
    cells: Vec<Cell>,
}

impl PathChain {
    /// Checks that consecutive cells differ by one unit step and that every
    /// cell lies in `region`.
    pub fn new(region: &LadderRegion, cells: Vec<Cell>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Precondition("a path has at least one cell".into()));
        }
        if let Some(bad) = cells.iter().find(|c| !region.contains(**c)) {
            return Err(Error::Precondition(format!(
                "cell {bad} is outside the region"
            )));
        }
        for w in cells.windows(2) {
            let down = w[1].i == w[0].i && w[1].j + 1 == w[0].j;
            let right = w[1].i == w[0].i + 1 && w[1].j == w[0].j;
            if !(down || right) {
                return Err(Error::Precondition(format!(
                    "{} -> {} is not a unit step",
                    w[0], w[1]
                )));
            }
        }
        Ok(PathChain { cells })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn start(&self) -> Cell {
        self.cells[0]
    }

    pub fn end(&self) -> Cell {
        *self.cells.last().expect("nonempty")
    }
}

/// Number of cells `(i, j)` of the path such that `(i-1, j)` and `(i, j-1)`
/// are on the path too.
pub fn corner_count(path: &PathChain) -> usize {
    corners_of(path.cells())
}

fn corners_of(cells: &[Cell]) -> usize {
    let on_path = |c: Cell| cells.contains(&c);
    cells
        .iter()
        .filter(|c| {
            c.i > 1
                && c.j > 1
                && on_path(Cell::new(c.i - 1, c.j))
                && on_path(Cell::new(c.i, c.j - 1))
        })
        .count()
}

/// Iterator over all paths from `from` to `to` inside a region.
pub struct SinglePaths<'a> {
    region: &'a LadderRegion,
    to: Cell,
    // Current partial path and, per cell, how many successors were tried.
    cells: Vec<Cell>,
    tried: Vec<u8>,
    done: bool,
}

impl<'a> SinglePaths<'a> {
    fn successor(&self, cell: Cell, choice: u8) -> Option<Cell> {
        let next = match choice {
            0 if cell.j > self.to.j => Cell::new(cell.i, cell.j - 1),
            1 if cell.i < self.to.i => Cell::new(cell.i + 1, cell.j),
            _ => return None,
        };
        self.region.contains(next).then_some(next)
    }
}

impl Iterator for SinglePaths<'_> {
    type Item = PathChain;

    fn next(&mut self) -> Option<PathChain> {
        while !self.done {
            let Some(&cur) = self.cells.last() else {
                self.done = true;
                break;
            };
            let depth = self.cells.len() - 1;
            if cur == self.to && self.tried[depth] == 0 {
                self.tried[depth] = 2;
                return Some(PathChain {
                    cells: self.cells.clone(),
                });
            }
            if self.tried[depth] >= 2 {
                self.cells.pop();
                self.tried.pop();
                continue;
            }
            let choice = self.tried[depth];
            self.tried[depth] += 1;
            if let Some(next) = self.successor(cur, choice) {
                self.cells.push(next);
                self.tried.push(0);
            }
        }
        None
    }
}

/// Streams every path from `from` down to `to` inside `region`, each once.
/// The stream is empty when no path exists.
pub fn enumerate_single(region: &LadderRegion, from: Cell, to: Cell) -> SinglePaths<'_> {
    let feasible = region.contains(from) && region.contains(to) && to.precedes(&from);
    SinglePaths {
        region,
        to,
        cells: if feasible { vec![from] } else { Vec::new() },
        tried: if feasible { vec![0] } else { Vec::new() },
        done: !feasible,
    }
}

/// `sum over paths of t^corners`, by enumeration.
pub fn single_poly_oracle(region: &LadderRegion, from: Cell, to: Cell) -> Poly {
    let mut hist: Vec<u64> = Vec::new();
    for path in enumerate_single(region, from, to) {
        bump(&mut hist, corner_count(&path));
    }
    hist_to_poly(&hist)
}

fn bump(hist: &mut Vec<u64>, k: usize) {
    if hist.len() <= k {
        hist.resize(k + 1, 0);
    }
    hist[k] += 1;
}

fn hist_to_poly(hist: &[u64]) -> Poly {
    Poly::from_coeffs(hist.iter().map(|&c| BigInt::from(c)).collect())
}

/// Corner polynomial of all `r`-tuples of pairwise cell-disjoint paths
/// `P_i -> Q_i`, by exhaustive search with the default step budget.
pub fn family_poly_oracle(region: &LadderRegion, spec: &EndpointSpec) -> Result<Poly> {
    family_poly_oracle_with_budget(region, spec, DEFAULT_STEP_BUDGET)
}

/// As [`family_poly_oracle`], failing with [`Error::BudgetExceeded`] once
/// more than `budget` search nodes have been visited.
pub fn family_poly_oracle_with_budget(
    region: &LadderRegion,
    spec: &EndpointSpec,
    budget: u64,
) -> Result<Poly> {
    spec.validate(region)?;
    let order: Vec<usize> = (0..spec.r()).collect();
    FamilySearch::new(region, spec, &order, budget).run()
}

/// Same enumeration with the paths laid down in the given order.
pub fn family_poly_oracle_in_order(
    region: &LadderRegion,
    spec: &EndpointSpec,
    order: &[usize],
    budget: u64,
) -> Result<Poly> {
    spec.validate(region)?;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..spec.r()).collect::<Vec<_>>() {
        return Err(Error::Precondition(format!(
            "{order:?} is not a permutation of the paths"
        )));
    }
    FamilySearch::new(region, spec, order, budget).run()
}

struct FamilySearch<'a> {
    region: &'a LadderRegion,
    ends: Vec<(Cell, Cell)>,
    occupied: Vec<bool>,
    path: Vec<Cell>,
    corners: Vec<usize>,
    hist: Vec<u64>,
    steps: u64,
    budget: u64,
}

impl<'a> FamilySearch<'a> {
    fn new(region: &'a LadderRegion, spec: &EndpointSpec, order: &[usize], budget: u64) -> Self {
        FamilySearch {
            region,
            ends: order
                .iter()
                .map(|&k| (spec.start(region, k), spec.end(region, k)))
                .collect(),
            occupied: vec![false; (region.m() * region.n()) as usize],
            path: Vec::new(),
            corners: Vec::new(),
            hist: Vec::new(),
            steps: 0,
            budget,
        }
    }

    fn slot(&self, c: Cell) -> usize {
        ((c.i - 1) * self.region.n() + (c.j - 1)) as usize
    }

    fn run(mut self) -> Result<Poly> {
        self.start_path(0)?;
        Ok(hist_to_poly(&self.hist))
    }

    fn start_path(&mut self, k: usize) -> Result<()> {
        if k == self.ends.len() {
            bump(&mut self.hist, self.corners.iter().sum());
            return Ok(());
        }
        let (from, to) = self.ends[k];
        if !to.precedes(&from) || self.occupied[self.slot(from)] {
            return Ok(());
        }
        let base = self.path.len();
        self.extend(k, base, from)?;
        debug_assert_eq!(self.path.len(), base);
        Ok(())
    }

    fn extend(&mut self, k: usize, base: usize, cell: Cell) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let slot = self.slot(cell);
        self.occupied[slot] = true;
        self.path.push(cell);
        let to = self.ends[k].1;
        if cell == to {
            self.corners.push(corners_of(&self.path[base..]));
            // The finished path stays occupied while later paths are laid.
            let tail = self.path.split_off(base);
            self.start_path(k + 1)?;
            self.path.extend(tail);
            self.corners.pop();
        } else {
            let down = Cell::new(cell.i, cell.j.wrapping_sub(1));
            let right = Cell::new(cell.i + 1, cell.j);
            for next in [down, right] {
                if next.j >= to.j
                    && next.i <= to.i
                    && self.region.contains(next)
                    && !self.occupied[self.slot(next)]
                {
                    self.extend(k, base, next)?;
                }
            }
        }
        self.path.pop();
        self.occupied[slot] = false;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuple::IncTuple;

    fn region(g: &[u32]) -> LadderRegion {
        LadderRegion::from_profile(g.to_vec()).unwrap()
    }

    fn chain(region: &LadderRegion, cells: &[(u32, u32)]) -> PathChain {
        PathChain::new(
            region,
            cells.iter().map(|&(i, j)| Cell::new(i, j)).collect(),
        )
        .unwrap()
    }

    fn family(b: &str) -> EndpointSpec {
        EndpointSpec::standard(b.parse().unwrap())
    }

    #[test]
    fn corners_by_definition() {
        let sq = region(&[2, 2]);
        assert_eq!(corner_count(&chain(&sq, &[(1, 2), (1, 1), (2, 1)])), 0);
        assert_eq!(corner_count(&chain(&sq, &[(1, 2), (2, 2), (2, 1)])), 1);
        assert_eq!(corner_count(&chain(&sq, &[(2, 2)])), 0);
        assert!(PathChain::new(&sq, vec![Cell::new(1, 2), Cell::new(2, 1)]).is_err());
        assert!(PathChain::new(&sq, vec![Cell::new(1, 3)]).is_err());
    }

    #[test]
    fn single_path_enumeration() {
        let sq = region(&[2, 2]);
        let paths: Vec<_> = enumerate_single(&sq, Cell::new(1, 2), Cell::new(2, 1)).collect();
        assert_eq!(paths.len(), 2);
        // down before right
        assert_eq!(paths[0].cells()[1], Cell::new(1, 1));
        assert_eq!(
            enumerate_single(&sq, Cell::new(2, 2), Cell::new(2, 2)).count(),
            1
        );
        let ladder = region(&[3, 3, 2]);
        assert_eq!(
            enumerate_single(&ladder, Cell::new(1, 3), Cell::new(3, 1)).count(),
            5
        );
        // Q not below-right of P
        assert_eq!(
            enumerate_single(&sq, Cell::new(2, 1), Cell::new(1, 2)).count(),
            0
        );
        for p in enumerate_single(&ladder, Cell::new(1, 3), Cell::new(3, 1)) {
            assert!(PathChain::new(&ladder, p.cells().to_vec()).is_ok());
            assert_eq!(p.start(), Cell::new(1, 3));
            assert_eq!(p.end(), Cell::new(3, 1));
        }
    }

    #[test]
    fn single_polynomials() {
        let sq = region(&[2, 2]);
        assert_eq!(
            single_poly_oracle(&sq, Cell::new(1, 2), Cell::new(2, 1)),
            Poly::from_i64s(&[1, 1])
        );
        let column = region(&[5]);
        assert_eq!(
            single_poly_oracle(&column, Cell::new(1, 5), Cell::new(1, 2)),
            Poly::one()
        );
        let ladder = region(&[3, 3, 2]);
        assert_eq!(
            single_poly_oracle(&ladder, Cell::new(1, 3), Cell::new(3, 1)),
            Poly::from_i64s(&[1, 3, 1])
        );
        assert!(single_poly_oracle(&ladder, Cell::new(3, 2), Cell::new(2, 1)).is_zero());
    }

    #[test]
    fn family_polynomials() {
        let sq = region(&[2, 2]);
        assert_eq!(
            family_poly_oracle(&sq, &family("1,2")).unwrap(),
            Poly::one()
        );
        let rect = region(&[3, 3, 3]);
        assert_eq!(
            family_poly_oracle(&rect, &family("1,3")).unwrap(),
            Poly::from_i64s(&[1, 2])
        );
        let ladder = region(&[3, 3, 2]);
        assert_eq!(
            family_poly_oracle(&ladder, &family("1,2")).unwrap(),
            Poly::one()
        );
        assert_eq!(
            family_poly_oracle(&ladder, &family("")).unwrap(),
            Poly::one()
        );
        // Both paths would need cell (2,3)... a = (1,2) on a 2-column, 1-row strip is impossible.
        let strip = region(&[1, 1]);
        assert!(family_poly_oracle(
            &strip,
            &EndpointSpec::new("1,2".parse().unwrap(), "1,2".parse().unwrap()).unwrap()
        )
        .is_err());
    }

    #[test]
    fn single_member_family_matches_single_path() {
        let ladder = region(&[4, 4, 3, 2]);
        for b in 1..=2 {
            let spec = family(&b.to_string());
            assert_eq!(
                family_poly_oracle(&ladder, &spec).unwrap(),
                single_poly_oracle(&ladder, Cell::new(1, 4), Cell::new(4, b))
            );
        }
    }

    #[test]
    fn order_independence() {
        let rect = region(&[4, 4, 4, 4]);
        let spec = EndpointSpec::new("1,2,3".parse().unwrap(), "1,2,4".parse().unwrap()).unwrap();
        let base = family_poly_oracle(&rect, &spec).unwrap();
        for order in [[0, 1, 2], [2, 1, 0], [1, 0, 2], [2, 0, 1]] {
            assert_eq!(
                family_poly_oracle_in_order(&rect, &spec, &order, DEFAULT_STEP_BUDGET).unwrap(),
                base
            );
        }
        assert!(family_poly_oracle_in_order(&rect, &spec, &[0, 0, 1], 10).is_err());
    }

    #[test]
    fn budget_guard() {
        let rect = region(&[6; 6]);
        let spec = family("1,2,3");
        assert_eq!(
            family_poly_oracle_with_budget(&rect, &spec, 50),
            Err(Error::BudgetExceeded(50))
        );
    }

    #[test]
    fn point_paths_block_their_cell() {
        // Path 2 is the single point (2,2) and path 1 must avoid it.
        let sq = region(&[2, 2]);
        let spec = EndpointSpec::new(
            IncTuple::new(vec![1, 2]).unwrap(),
            IncTuple::new(vec![1, 2]).unwrap(),
        )
        .unwrap();
        assert_eq!(family_poly_oracle(&sq, &spec).unwrap(), Poly::one());
        let rect = region(&[3, 3, 3]);
        let spec = EndpointSpec::new("1,3".parse().unwrap(), "1,3".parse().unwrap()).unwrap();
        // Path 1 avoids (3,3): the 6 paths (1,3)->(3,1) minus the one through (3,3).
        assert_eq!(
            family_poly_oracle(&rect, &spec).unwrap(),
            Poly::from_i64s(&[1, 3, 1])
        );
    }
}
