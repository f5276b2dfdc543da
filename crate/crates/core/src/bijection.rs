//! Stacked Durfee squares.
//!
//! A partition `nu` of `N` with greatest part `n` is cut into a partition
//! `mu` of `n` plus one box partition per square, and back. Let `D` be the
//! Young diagram of `nu'` (it has `n` rows). Squares are stacked down the
//! left edge of `D`: `mu_1` is the largest `s` with cell `(s, s)` in `D`,
//! and `mu_i` the largest `s` with cell `(mu_1 + ... + mu_{i-1} + s, s)` in
//! `D`. The cells of band `i` lying right of its square form a partition
//! with at most `mu_i` parts, each at most `mu_{i-1} - mu_i` (no bound for
//! the first band). Cells are addressed (row, column) from 1.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{BoxBound, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DurfeeDecomposition {
    pub mu: Partition,
    pub boxes: Vec<Partition>,
}

impl DurfeeDecomposition {
    pub fn empty() -> Self {
        DurfeeDecomposition { mu: Partition::empty(), boxes: Vec::new() }
    }

    /// Width bound of the `i`-th box (0-based): `mu_{i-1} - mu_i`, unbounded
    /// for the first.
    pub fn width_bound(&self, i: usize) -> BoxBound {
        if i == 0 {
            BoxBound::Unbounded
        } else {
            let mu = self.mu.parts();
            BoxBound::Finite(mu[i - 1] - mu[i])
        }
    }

    /// `sum mu_i^2`.
    pub fn square_cells(&self) -> usize {
        self.mu.parts().iter().map(|m| m * m).sum()
    }

    /// `sum M_i`, the cells outside the squares.
    pub fn box_cells(&self) -> usize {
        self.boxes.iter().map(Partition::size).sum()
    }

    /// Size of the partition this witness encodes.
    pub fn total_size(&self) -> usize {
        self.square_cells() + self.box_cells()
    }

    /// Checks the shape constraints on every box.
    pub fn validate(&self) -> Result<()> {
        let m = self.mu.len();
        if self.boxes.len() != m {
            return Err(Error::InvalidWitness(format!(
                "{} squares but {} box partitions",
                m,
                self.boxes.len()
            )));
        }
        for (i, (b, &side)) in self.boxes.iter().zip(self.mu.parts()).enumerate() {
            if b.len() > side {
                return Err(Error::InvalidWitness(format!(
                    "box {} has {} parts, more than its height {}",
                    i + 1,
                    b.len(),
                    side
                )));
            }
            let bound = self.width_bound(i);
            if !bound.admits(b.greatest_part()) {
                return Err(Error::InvalidWitness(format!(
                    "box {} has a part {} wider than {}",
                    i + 1,
                    b.greatest_part(),
                    bound
                )));
            }
        }
        Ok(())
    }

    /// Row lengths of `D` grouped by band.
    fn bands(&self) -> Vec<Vec<usize>> {
        self.mu
            .parts()
            .iter()
            .zip(&self.boxes)
            .map(|(&side, b)| (1..=side).map(|r| side + b.part(r)).collect())
            .collect()
    }
}

/// Splits `nu` into stacked squares and box partitions.
pub fn decompose(nu: &Partition) -> DurfeeDecomposition {
    let rows = nu.conjugate();
    let height = rows.len();
    let mut mu = Vec::new();
    let mut boxes = Vec::new();
    let mut top = 0usize;
    while top < height {
        // rows are weakly decreasing, so the admissible sides form a prefix
        let mut side = 0usize;
        while top + side < height && rows.part(top + side + 1) > side {
            side += 1;
        }
        let extra: Vec<usize> = (top + 1..=top + side)
            .map(|r| rows.part(r) - side)
            .filter(|&x| x > 0)
            .collect();
        mu.push(side);
        boxes.push(Partition::new(extra).expect("row lengths are weakly decreasing"));
        top += side;
    }
    let d = DurfeeDecomposition {
        mu: Partition::new(mu).expect("stacked squares shrink"),
        boxes,
    };
    debug_assert!(d.validate().is_ok(), "decompose produced an invalid witness");
    d
}

/// Rebuilds `nu` from a witness, rejecting witnesses that violate the box
/// bounds or do not give a valid Young diagram.
pub fn compose(d: &DurfeeDecomposition) -> Result<Partition> {
    d.validate()?;
    let rows: Vec<usize> = d.bands().into_iter().flatten().collect();
    if let Some(w) = rows.windows(2).position(|w| w[0] < w[1]) {
        return Err(Error::InvalidWitness(format!(
            "rebuilt row {} is shorter than row {}",
            w + 1,
            w + 2
        )));
    }
    Ok(Partition::new(rows).expect("checked above").conjugate())
}

/// ASCII picture of `D`: `#` for square cells, `o` for box cells, `|`
/// after each square and a rule between bands.
pub fn render_diagram(d: &DurfeeDecomposition) -> String {
    let mut out = String::new();
    if d.mu.is_empty() {
        out.push_str("(empty diagram)\n");
        return out;
    }
    for (i, band) in d.bands().iter().enumerate() {
        let side = d.mu.parts()[i];
        if i > 0 {
            let _ = writeln!(out, "{}+", "-".repeat(side.max(d.mu.parts()[i - 1])));
        }
        for &len in band {
            let _ = writeln!(out, "{}|{}", "#".repeat(side), "o".repeat(len - side));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn witness(mu: &str, boxes: &[&str]) -> DurfeeDecomposition {
        DurfeeDecomposition { mu: part(mu), boxes: boxes.iter().map(|b| part(b)).collect() }
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(&Partition::empty()), DurfeeDecomposition::empty());
        assert_eq!(decompose(&part("3,2,1")), witness("2,1", &["1", "-"]));
        assert_eq!(decompose(&part("1,1,1,1")), witness("1", &["3"]));
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(&DurfeeDecomposition::empty()).unwrap(), Partition::empty());
        assert_eq!(compose(&witness("2,1", &["1", "-"])).unwrap(), part("3,2,1"));
        assert_eq!(compose(&witness("1", &["3"])).unwrap(), part("1,1,1,1"));
    }

    #[test]
    fn compose_rejects_invalid() {
        // second box wider than mu_1 - mu_2 = 0
        assert!(matches!(compose(&witness("1,1", &["-", "1"])), Err(Error::InvalidWitness(_))));
        // box taller than its square
        assert!(matches!(compose(&witness("1", &["1,1"])), Err(Error::InvalidWitness(_))));
        assert!(matches!(compose(&witness("2", &[])), Err(Error::InvalidWitness(_))));
        assert!(matches!(compose(&witness("-", &["1"])), Err(Error::InvalidWitness(_))));
    }

    #[test]
    fn render() {
        let text = render_diagram(&decompose(&part("3,2,1")));
        assert_eq!(text, "##|o\n##|\n--+\n#|\n");
    }

    #[test]
    fn witness_json() {
        let d = witness("2,1", &["1", "-"]);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"mu":"2,1","boxes":["1","-"]}"#);
        assert_eq!(serde_json::from_str::<DurfeeDecomposition>(&s).unwrap(), d);
    }
}
