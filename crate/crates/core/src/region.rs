//! One-sided ladder regions and path endpoints.
//!
//! A region is the set of cells `(i, j)` with `1 <= i <= m` and
//! `1 <= j <= g(i)`, where the column profile `g` is non-increasing and
//! starts at `g(1) = n`. The rectangle is the case `g = n` everywhere.
//!
//! Cells are ordered by `(i, j) <= (i', j')` iff `i >= i'` and `j <= j'`;
//! paths run from a cell on the top row down and to the right.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tuple::IncTuple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub i: u32,
    pub j: u32,
}

impl Cell {
    pub const fn new(i: u32, j: u32) -> Self {
        Cell { i, j }
    }

    /// `self <= other` in the region's partial order.
    pub fn precedes(&self, other: &Cell) -> bool {
        self.i >= other.i && self.j <= other.j
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LadderRegion {
    m: u32,
    n: u32,
    profile: Vec<u32>,
}

impl LadderRegion {
    pub fn new(m: u32, n: u32, profile: Vec<u32>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidProfile(format!(
                "dimensions must be positive, got {m}x{n}"
            )));
        }
        if profile.len() != m as usize {
            return Err(Error::InvalidProfile(format!(
                "expected {m} column heights, got {}",
                profile.len()
            )));
        }
        if profile[0] != n {
            return Err(Error::InvalidProfile(format!(
                "g(1) = {} but n = {n}",
                profile[0]
            )));
        }
        for (idx, &h) in profile.iter().enumerate() {
            if h == 0 || h > n {
                return Err(Error::InvalidProfile(format!(
                    "g({}) = {h} outside 1..={n}",
                    idx + 1
                )));
            }
        }
        if let Some(idx) = profile.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::InvalidProfile(format!(
                "g({}) = {} < g({}) = {}; profile must be non-increasing",
                idx + 1,
                profile[idx],
                idx + 2,
                profile[idx + 1]
            )));
        }
        Ok(LadderRegion { m, n, profile })
    }

    pub fn rectangle(m: u32, n: u32) -> Result<Self> {
        LadderRegion::new(m, n, vec![n; m as usize])
    }

    /// Region from its profile alone; `m` and `n` are implied.
    pub fn from_profile(profile: Vec<u32>) -> Result<Self> {
        let m = profile.len() as u32;
        let n = profile.first().copied().unwrap_or(0);
        LadderRegion::new(m, n, profile)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn profile(&self) -> &[u32] {
        &self.profile
    }

    pub fn is_rectangle(&self) -> bool {
        self.profile.iter().all(|&h| h == self.n)
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.i >= 1
            && cell.i <= self.m
            && cell.j >= 1
            && cell.j <= self.profile[cell.i as usize - 1]
    }

    /// Highest row available in column `i`.
    pub fn column_max(&self, i: u32) -> Result<u32> {
        if i == 0 || i > self.m {
            return Err(Error::ColumnOutOfRange {
                column: i as usize,
                m: self.m as usize,
            });
        }
        Ok(self.profile[i as usize - 1])
    }

    /// Unchecked `g(i)` for `1 <= i <= m`.
    pub(crate) fn height(&self, i: u32) -> u32 {
        self.profile[i as usize - 1]
    }

    /// The region restricted to columns `1..=m'`.
    pub fn truncate(&self, m: u32) -> Result<Self> {
        if m == 0 || m > self.m {
            return Err(Error::ColumnOutOfRange {
                column: m as usize,
                m: self.m as usize,
            });
        }
        LadderRegion::new(m, self.n, self.profile[..m as usize].to_vec())
    }

    /// Canonical file form: `"m n\ng(1) ... g(m)\n"`.
    pub fn to_file_string(&self) -> String {
        let g: Vec<String> = self.profile.iter().map(ToString::to_string).collect();
        format!("{} {}\n{}\n", self.m, self.n, g.join(" "))
    }

    /// Parses the two-line region file format.
    pub fn parse_file(text: &str) -> Result<Self> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        let lines: Vec<&str> = body.split('\n').collect();
        if lines.len() != 2 {
            return Err(Error::Syntax {
                line: lines.len().min(3),
                col: 1,
                msg: format!("expected exactly 2 lines, found {}", lines.len()),
            });
        }
        let header = parse_line(lines[0], 1)?;
        if header.len() != 2 {
            return Err(Error::Syntax {
                line: 1,
                col: 1,
                msg: format!("expected `m n`, found {} integers", header.len()),
            });
        }
        let (m, n) = (header[0], header[1]);
        let g = parse_line(lines[1], 2)?;
        if g.len() != m as usize {
            return Err(Error::Syntax {
                line: 2,
                col: 1,
                msg: format!("expected {m} column heights, found {}", g.len()),
            });
        }
        LadderRegion::new(m, n, g).map_err(|e| match e {
            Error::InvalidProfile(msg) => Error::Syntax {
                line: 2,
                col: 1,
                msg,
            },
            other => other,
        })
    }

    /// Resolves a region argument: a preset `rectMxN`, an inline profile
    /// `g:3,3,2`, or a path to a region file.
    pub fn from_arg(arg: &str) -> Result<Self> {
        if let Some(dims) = arg.strip_prefix("rect") {
            if let Some((m, n)) = dims.split_once('x') {
                if let (Ok(m), Ok(n)) = (m.parse(), n.parse()) {
                    return LadderRegion::rectangle(m, n);
                }
            }
        }
        if let Some(list) = arg.strip_prefix("g:") {
            let profile = list
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad profile entry `{tok}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            return LadderRegion::from_profile(profile);
        }
        let text = std::fs::read_to_string(arg)
            .map_err(|e| Error::Parse(format!("cannot read region file `{arg}`: {e}")))?;
        LadderRegion::parse_file(&text)
    }

    /// Inline argument form accepted by [`LadderRegion::from_arg`].
    pub fn to_arg(&self) -> String {
        if self.is_rectangle() {
            return format!("rect{}x{}", self.m, self.n);
        }
        let g: Vec<String> = self.profile.iter().map(ToString::to_string).collect();
        format!("g:{}", g.join(","))
    }

    /// Every valid profile with `m` columns and `n` rows whose first `full`
    /// columns have full height `n`.
    pub fn all_profiles(m: u32, n: u32, full: u32) -> Vec<LadderRegion> {
        fn rec(m: usize, n: u32, full: usize, cur: &mut Vec<u32>, out: &mut Vec<LadderRegion>) {
            if cur.len() == m {
                out.push(
                    LadderRegion::new(m as u32, n, cur.clone()).expect("valid by construction"),
                );
                return;
            }
            let hi = cur.last().copied().unwrap_or(n);
            let lo = if cur.len() < full { n } else { 1 };
            for h in lo..=hi {
                cur.push(h);
                rec(m, n, full, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(
            m as usize,
            n,
            full.max(1) as usize,
            &mut Vec::new(),
            &mut out,
        );
        out
    }
}

fn parse_line(line: &str, lineno: usize) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    let mut col = 1;
    for tok in line.split(' ') {
        if tok.is_empty() {
            return Err(Error::Syntax {
                line: lineno,
                col,
                msg: "expected a single space between integers".into(),
            });
        }
        let v = tok.parse::<u32>().map_err(|_| Error::Syntax {
            line: lineno,
            col,
            msg: format!("`{tok}` is not a non-negative integer"),
        })?;
        out.push(v);
        col += tok.len() + 1;
    }
    Ok(out)
}

impl FromStr for LadderRegion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LadderRegion::parse_file(s)
    }
}

impl fmt::Display for LadderRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_arg())
    }
}

/// Start columns `a` and end heights `b` of an `r`-family:
/// `P_i = (a_i, n)` and `Q_i = (m, b_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EndpointSpec {
    pub a: IncTuple,
    pub b: IncTuple,
}

impl EndpointSpec {
    pub fn new(a: IncTuple, b: IncTuple) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                left: a.len(),
                right: b.len(),
            });
        }
        Ok(EndpointSpec { a, b })
    }

    /// Start columns `a_i = i`.
    pub fn standard(b: IncTuple) -> Self {
        EndpointSpec {
            a: IncTuple::identity(b.len()),
            b,
        }
    }

    pub fn r(&self) -> usize {
        self.b.len()
    }

    pub fn has_standard_starts(&self) -> bool {
        self.a
            .iter()
            .enumerate()
            .all(|(idx, &a)| a as usize == idx + 1)
    }

    pub fn start(&self, region: &LadderRegion, idx: usize) -> Cell {
        Cell::new(self.a[idx], region.n())
    }

    pub fn end(&self, region: &LadderRegion, idx: usize) -> Cell {
        Cell::new(region.m(), self.b[idx])
    }

    pub fn validate(&self, region: &LadderRegion) -> Result<()> {
        let Some((a_r, b_r)) = self.a.last().zip(self.b.last()) else {
            return Ok(());
        };
        if a_r > region.m() {
            return Err(Error::InvalidEndpoints(format!(
                "a_r = {a_r} exceeds m = {}",
                region.m()
            )));
        }
        if region.height(a_r) != region.n() {
            return Err(Error::InvalidEndpoints(format!(
                "start column {a_r} does not reach row {}",
                region.n()
            )));
        }
        let top = region.height(region.m());
        if b_r > top {
            return Err(Error::InvalidEndpoints(format!(
                "b_r = {b_r} exceeds g(m) = {top}"
            )));
        }
        Ok(())
    }
}
