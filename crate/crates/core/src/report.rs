use serde::{Deserialize, Serialize};

use crate::rational::ExactRational;

/// Outcome of an exact coefficient-by-coefficient comparison.
///
/// Field order matches the JSON schema
/// `{"u", "degree", "equal", "first_mismatch", "lhs", "rhs"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub u: usize,
    pub degree: usize,
    pub equal: bool,
    pub first_mismatch: Option<usize>,
    pub lhs: Vec<ExactRational>,
    pub rhs: Vec<ExactRational>,
}

impl VerificationReport {
    /// Compares two coefficient sequences of equal length.
    pub fn compare(u: usize, degree: usize, lhs: Vec<ExactRational>, rhs: Vec<ExactRational>) -> Self {
        let first_mismatch = first_difference(&lhs, &rhs);
        VerificationReport {
            u,
            degree,
            equal: first_mismatch.is_none(),
            first_mismatch,
            lhs,
            rhs,
        }
    }

    /// Like [`compare`](Self::compare) but a degree counts as mismatched if
    /// any of the `extra` sequences disagrees with `lhs` there.
    pub fn compare_with(
        u: usize,
        degree: usize,
        lhs: Vec<ExactRational>,
        rhs: Vec<ExactRational>,
        extra: &[&[ExactRational]],
    ) -> Self {
        let mismatch = std::iter::once(first_difference(&lhs, &rhs))
            .chain(extra.iter().map(|e| first_difference(&lhs, e)))
            .flatten()
            .min();
        VerificationReport {
            u,
            degree,
            equal: mismatch.is_none(),
            first_mismatch: mismatch,
            lhs,
            rhs,
        }
    }

    /// `degree,lhs_coeff,rhs_coeff` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,lhs_coeff,rhs_coeff\n");
        for (k, (l, r)) in self.lhs.iter().zip(&self.rhs).enumerate() {
            out.push_str(&format!("{k},{l},{r}\n"));
        }
        out
    }
}

fn first_difference(a: &[ExactRational], b: &[ExactRational]) -> Option<usize> {
    let common = a.len().min(b.len());
    (0..common)
        .find(|&k| a[k] != b[k])
        .or((a.len() != b.len()).then_some(common))
}
