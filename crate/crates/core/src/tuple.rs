//! Strictly increasing tuples of positive integers.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A strictly increasing tuple `b_1 < b_2 < ... < b_l` of positive integers.
///
/// The empty tuple is allowed; it stands for an empty family of paths.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IncTuple(Vec<u32>);

impl IncTuple {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let increasing = entries.windows(2).all(|w| w[0] < w[1]);
        if !increasing || entries.first().is_some_and(|&e| e == 0) {
            return Err(Error::NotIncreasing(entries));
        }
        Ok(IncTuple(entries))
    }

    /// `(1, 2, ..., l)`.
    pub fn identity(l: usize) -> Self {
        IncTuple((1..=l as u32).collect())
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// Componentwise `self <= other`; tuples of different length are incomparable.
    pub fn le(&self, other: &IncTuple) -> bool {
        self.len() == other.len() && self.iter().zip(other.iter()).all(|(x, y)| x <= y)
    }

    /// Drops the last entry.
    pub fn init(&self) -> IncTuple {
        let mut v = self.0.clone();
        v.pop();
        IncTuple(v)
    }

    /// Replaces the last entry; `None` if the result is not increasing.
    pub fn with_last(&self, last: u32) -> Option<IncTuple> {
        let mut v = self.0.clone();
        *v.last_mut()? = last;
        IncTuple::new(v).ok()
    }

    pub fn push(&self, last: u32) -> Option<IncTuple> {
        let mut v = self.0.clone();
        v.push(last);
        IncTuple::new(v).ok()
    }

    /// `sum(other_i - self_i)` as a signed integer.
    pub fn gap_to(&self, other: &IncTuple) -> i64 {
        self.iter()
            .zip(other.iter())
            .map(|(&x, &y)| i64::from(y) - i64::from(x))
            .sum()
    }

    /// All strictly increasing tuples of length `len` with entries in `1..=max`,
    /// in lexicographic order.
    pub fn all(len: usize, max: u32) -> Vec<IncTuple> {
        IncTuple::in_boxes(&vec![(1, max); len])
    }

    /// All strictly increasing tuples whose i-th entry lies in `ranges[i]`
    /// (inclusive), in lexicographic order.
    pub fn in_boxes(ranges: &[(u32, u32)]) -> Vec<IncTuple> {
        fn rec(ranges: &[(u32, u32)], cur: &mut Vec<u32>, out: &mut Vec<IncTuple>) {
            let k = cur.len();
            if k == ranges.len() {
                out.push(IncTuple(cur.clone()));
                return;
            }
            let (lo, hi) = ranges[k];
            let lo = lo.max(cur.last().map_or(1, |&x| x + 1));
            for v in lo..=hi {
                cur.push(v);
                rec(ranges, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(ranges, &mut Vec::with_capacity(ranges.len()), &mut out);
        out
    }

    /// Tuples `d` with `lower <= d <= upper` componentwise.
    pub fn between(lower: &IncTuple, upper: &IncTuple) -> Vec<IncTuple> {
        if lower.len() != upper.len() {
            return Vec::new();
        }
        let ranges: Vec<(u32, u32)> = lower
            .iter()
            .zip(upper.iter())
            .map(|(&l, &u)| (l, u))
            .collect();
        IncTuple::in_boxes(&ranges)
    }
}

impl Deref for IncTuple {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for IncTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Comma-separated list, e.g. `1,3,4`. The empty string is the empty tuple.
impl FromStr for IncTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(IncTuple::default());
        }
        let entries = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad list entry `{tok}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        IncTuple::new(entries)
    }
}
