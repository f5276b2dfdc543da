//! Integer partitions: representation, enumeration, conjugation and the
//! two counting functions the identity is built on.
//!
//! - [`count_min_part`]: `a_m`, partitions of `m` with every part `>= t`
//! - [`count_greatest_part`]: `b_{i,j}`, partitions of `i` with greatest part exactly `j`
//! - [`verify_lemma1`]: `a_m = sum_{i + u*j = m} b_{i,j}`

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive parts. The empty partition is allowed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Validates that `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(invalid(&parts, "parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid(&parts, "parts must be weakly decreasing"));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts into decreasing order and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest part; 0 for the empty partition.
    pub fn greatest_part(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// The `i`-th part with 1-based indexing, or 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Multiplicity of the greatest part (0 for the empty partition).
    pub fn greatest_part_multiplicity(&self) -> usize {
        let g = self.greatest_part();
        self.0.iter().take_while(|&&x| x == g).count()
    }

    /// Transposes the Young diagram: `conj_i = #{k : parts[k] >= i}`.
    pub fn conjugate(&self) -> Partition {
        let width = self.greatest_part();
        let mut out = vec![0usize; width];
        for &row in &self.0 {
            for c in out.iter_mut().take(row) {
                *c += 1;
            }
        }
        Partition(out)
    }
}

fn invalid(parts: &[usize], reason: &str) -> Error {
    Error::InvalidPartition {
        input: format!("{parts:?}"),
        reason: reason.to_string(),
    }
}

impl fmt::Display for Partition {
    /// Comma-separated parts; `-` for the empty partition.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let mut first = true;
        for p in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `"3,2,1"`; the empty partition is `""` or `"-"`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "-" {
            return Ok(Partition::empty());
        }
        let err = |reason: &str| Error::InvalidPartition {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| err("parts must be non-negative integers")))
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(err("parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(err("parts must be weakly decreasing"));
        }
        Ok(Partition(parts))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Upper bound on the width (largest part) of a box. `Unbounded` compares
/// greater than every finite width.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoxBound {
    Finite(usize),
    Unbounded,
}

impl BoxBound {
    pub fn admits(self, part: usize) -> bool {
        match self {
            BoxBound::Finite(w) => part <= w,
            BoxBound::Unbounded => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            BoxBound::Finite(w) => Some(w),
            BoxBound::Unbounded => None,
        }
    }
}

impl From<usize> for BoxBound {
    fn from(w: usize) -> Self {
        BoxBound::Finite(w)
    }
}

impl fmt::Display for BoxBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoxBound::Finite(w) => write!(f, "{w}"),
            BoxBound::Unbounded => f.write_str("inf"),
        }
    }
}

/// All partitions of `n` in decreasing-lexicographic order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, usize::MAX, &mut cur, &mut out);
    out
}

/// All partitions of `n` whose parts are at most `max_part`, decreasing-lex.
pub fn enumerate_partitions_bounded(n: usize, max_part: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, max_part.min(n), usize::MAX, &mut cur, &mut out);
    out
}

// Appends every partition of `rest` with parts <= `max_part` and at most
// `max_len - cur.len()` further parts, in decreasing-lex order.
fn fill(rest: usize, max_part: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    if cur.len() >= max_len {
        return;
    }
    for k in (1..=max_part.min(rest)).rev() {
        cur.push(k);
        fill(rest - k, k, max_len, cur, out);
        cur.pop();
    }
}

/// Number of partitions of `m` with every part at least `t` (`a_m` for
/// `t = u + 1`). Panics if `t == 0`.
pub fn count_min_part(m: usize, t: usize) -> u64 {
    assert!(t >= 1, "minimum part must be at least 1");
    let mut ways = vec![0u64; m + 1];
    ways[0] = 1;
    for part in t..=m {
        for s in part..=m {
            ways[s] += ways[s - part];
        }
    }
    ways[m]
}

/// Number of partitions of `i` into parts of size at most `j`.
pub fn count_max_part(i: usize, j: usize) -> u64 {
    let mut ways = vec![0u64; i + 1];
    ways[0] = 1;
    for part in 1..=j.min(i) {
        for s in part..=i {
            ways[s] += ways[s - part];
        }
    }
    ways[i]
}

/// Number of partitions of `i` with greatest part exactly `j` (`b_{i,j}`).
/// `b_{0,0} = 1` via the empty partition.
pub fn count_greatest_part(i: usize, j: usize) -> u64 {
    if j > i {
        return 0;
    }
    if j == 0 {
        return u64::from(i == 0);
    }
    count_max_part(i - j, j)
}

/// Partitions with at most `height` parts, every part admitted by `width`,
/// and size at most `max_size` when given. Ordered by size, then
/// decreasing-lex within a size.
pub fn enumerate_box_partitions(
    height: usize,
    width: BoxBound,
    max_size: Option<usize>,
) -> Result<Vec<Partition>> {
    let size_cap = match (width, max_size) {
        (BoxBound::Unbounded, None) => return Err(Error::UnboundedWithoutCutoff),
        (BoxBound::Finite(w), None) => w * height,
        (BoxBound::Finite(w), Some(s)) => s.min(w * height),
        (BoxBound::Unbounded, Some(s)) => s,
    };
    let max_part = width.finite().unwrap_or(size_cap);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for size in 0..=size_cap {
        fill(size, max_part.min(size), height, &mut cur, &mut out);
    }
    Ok(out)
}

/// Left and right sides of `a_m = sum_{i + u*j = m} b_{i,j}`.
///
/// For `u = 0` the index set is `{(m, j)}` and is cut at `j = m`, since
/// `b_{m,j} = 0` beyond.
pub fn lemma1_sides(m: usize, u: usize) -> (u64, u64) {
    let lhs = count_min_part(m, u + 1);
    let rhs = match m.checked_div(u) {
        None => (0..=m).map(|j| count_greatest_part(m, j)).sum(),
        Some(top) => (0..=top).map(|j| count_greatest_part(m - u * j, j)).sum(),
    };
    (lhs, rhs)
}

pub fn verify_lemma1(m: usize, u: usize) -> bool {
    let (lhs, rhs) = lemma1_sides(m, u);
    lhs == rhs
}
