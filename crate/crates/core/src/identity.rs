//! The weighted sum over finite abelian p-groups against its Euler product.
//!
//! Two levels of checking:
//! - formal: [`theorem_qseries_check`] compares, for degrees `0..=N`,
//!   `sum_n f_n(q) q^{nu}` (computed from `b`-counts and again from Durfee
//!   squares) with `prod_{j>u} (1-q^j)^{-1}`. Exact, tolerance zero.
//! - numeric: at `q = 1/p` the group sum is evaluated layer by layer
//!   (`|G| = p^n`) as exact rationals, both from automorphism orders and from
//!   the `psi` form, and compared with partial Euler products.
//!   No tail bound is known here, so the numeric layer only checks
//!   monotonicity and that partial sums stay below a large partial product.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{aut_order, is_prime, shape_from_partition};
use crate::partitions::{enumerate_partitions, BoxBound, Partition};
use crate::qseries::{euler_product_tail, weighted_durfee_sum, weighted_f_sum, QSeries};
use crate::rational::ExactRational;

pub use crate::report::VerificationReport;

/// The two independent left-hand sides: `sum_n f_n(q) q^{nu}` from
/// `b`-counts and from Durfee squares.
pub fn theorem_lhs_forms(u: usize, order: usize) -> (QSeries, QSeries) {
    rayon::join(|| weighted_f_sum(u, order), || weighted_durfee_sum(u, order))
}

/// Exact formal check through degree `order`. The report's `lhs` is the
/// direct `b`-count form; a degree is a mismatch if either left-hand form
/// differs from the product there.
pub fn theorem_qseries_check(u: usize, order: usize) -> VerificationReport {
    let (direct, durfee) = theorem_lhs_forms(u, order);
    let rhs = euler_product_tail(u, order);
    VerificationReport::compare_with(
        u,
        order,
        direct.into_coeffs(),
        rhs.into_coeffs(),
        &[durfee.coeffs()],
    )
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn inv_p_pow(p: u64, k: usize) -> ExactRational {
    ExactRational::new(1, p).pow(k)
}

/// `p^{-u n} sum_{lambda |- n} 1 / |Aut(G_lambda)|`.
pub fn layer_sum_direct(p: u64, u: usize, n: usize) -> Result<ExactRational> {
    require_prime(p)?;
    let parts = enumerate_partitions(n);
    let inner: ExactRational = parts
        .par_iter()
        .map(|lambda| {
            let shape = shape_from_partition(lambda, p).expect("p checked prime");
            ExactRational::from_biguint(&aut_order(&shape)).recip()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    Ok(inner * inv_p_pow(p, u * n))
}

/// `sum_{n=0}^{n_max}` of [`layer_sum_direct`]: the group sum over
/// `|G| <= p^{n_max}`.
pub fn lhs_partial_sum(p: u64, u: usize, n_max: usize) -> Result<ExactRational> {
    Ok(lhs_partial_sums(p, u, n_max)?.pop().expect("at least one layer"))
}

/// Running partial sums for `n_max = 0, 1, ..., n_max`.
pub fn lhs_partial_sums(p: u64, u: usize, n_max: usize) -> Result<Vec<ExactRational>> {
    let mut acc = ExactRational::zero();
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        acc += &layer_sum_direct(p, u, n)?;
        out.push(acc.clone());
    }
    Ok(out)
}

/// `prod_{j=u+1}^{J} (1 - p^{-j})^{-1}`; the empty product when `J <= u`.
pub fn rhs_partial_product(p: u64, u: usize, terms: usize) -> Result<ExactRational> {
    require_prime(p)?;
    let one = ExactRational::one();
    Ok(((u + 1)..=terms)
        .map(|j| (&one - &inv_p_pow(p, j)).recip())
        .product())
}

/// `prod_{i=1}^{k} (1 - q^i)` at a rational `q`.
fn q_pochhammer(q: &ExactRational, k: usize) -> ExactRational {
    let one = ExactRational::one();
    (1..=k).map(|i| &one - &q.pow(i)).product()
}

/// `psi_{a,b}(q)` at a rational `q != 1` from its product form
/// `(q;q)_{a+b} / ((q;q)_a (q;q)_b)`, or `1 / (q;q)_a` for unbounded `b`.
pub fn psi_at(a: usize, b: BoxBound, q: &ExactRational) -> ExactRational {
    match b {
        BoxBound::Unbounded => q_pochhammer(q, a).recip(),
        BoxBound::Finite(b) => q_pochhammer(q, a + b) / (q_pochhammer(q, a) * q_pochhammer(q, b)),
    }
}

/// `q^{nu} sum_{mu |- n} prod_i psi_{mu_i, mu_{i-1} - mu_i}(q) q^{sum mu_i^2}`
/// at `q = 1/p`, exactly.
pub fn layer_sum_exact(p: u64, u: usize, n: usize) -> Result<ExactRational> {
    require_prime(p)?;
    let q = ExactRational::new(1, p);
    let total: ExactRational = enumerate_partitions(n)
        .iter()
        .map(|mu| durfee_term_at(mu, &q))
        .sum();
    Ok(total * q.pow(u * n))
}

fn durfee_term_at(mu: &Partition, q: &ExactRational) -> ExactRational {
    let mut prev = BoxBound::Unbounded;
    let mut term = ExactRational::one();
    let mut squares = 0usize;
    for &m in mu.parts() {
        let width = match prev {
            BoxBound::Unbounded => BoxBound::Unbounded,
            BoxBound::Finite(p) => BoxBound::Finite(p - m),
        };
        term *= &psi_at(m, width, q);
        squares += m * m;
        prev = BoxBound::Finite(m);
    }
    term * q.pow(squares)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n_max: usize,
    pub partial_sum: ExactRational,
    /// Truncated, not rounded.
    pub decimal: String,
}

/// Partial sums of the group side next to a partial Euler product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub p: u64,
    pub u: usize,
    pub product_terms: usize,
    pub digits: usize,
    pub rows: Vec<ConvergenceRow>,
    pub product: ExactRational,
    pub product_decimal: String,
    /// `product - last partial sum`; may be negative when `product_terms` is small.
    pub gap: ExactRational,
    pub gap_decimal: String,
    pub monotone: bool,
    /// `J` of the reference product used for the upper-bound check.
    pub reference_terms: usize,
    pub below_reference: bool,
}

impl ConvergenceReport {
    pub fn ok(&self) -> bool {
        self.monotone && self.below_reference
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n_max,partial_sum,decimal\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.n_max, r.partial_sum, r.decimal));
        }
        out
    }
}

/// Reference `J` for the upper-bound check: far past any partial sum
/// this crate can enumerate.
pub const REFERENCE_TERMS: usize = 200;

/// Tabulates partial sums for `n = 0..=n_max` against the partial product at
/// `product_terms`. Partial sums must increase strictly and stay below the
/// partial product at `max(product_terms, u + 200)` plus a margin of
/// `2 p^{-J}` times that product.
pub fn convergence_report(
    p: u64,
    u: usize,
    n_max: usize,
    product_terms: usize,
    digits: usize,
) -> Result<ConvergenceReport> {
    let sums = lhs_partial_sums(p, u, n_max)?;
    let product = rhs_partial_product(p, u, product_terms)?;
    let last = sums.last().expect("at least one layer").clone();
    let gap = &product - &last;

    let reference_terms = product_terms.max(u + REFERENCE_TERMS);
    let reference = rhs_partial_product(p, u, reference_terms)?;
    let margin = &reference * &(ExactRational::from(2) * inv_p_pow(p, reference_terms));
    let bound = &reference + &margin;

    let monotone = sums.windows(2).all(|w| w[0] < w[1]);
    let below_reference = sums.iter().all(|s| s < &bound);
    let rows = sums
        .into_iter()
        .enumerate()
        .map(|(n, s)| ConvergenceRow { n_max: n, decimal: s.to_decimal_truncated(digits), partial_sum: s })
        .collect();
    Ok(ConvergenceReport {
        p,
        u,
        product_terms,
        digits,
        rows,
        product_decimal: product.to_decimal_truncated(digits),
        product,
        gap_decimal: gap.to_decimal_truncated(digits),
        gap,
        monotone,
        reference_terms,
        below_reference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(lhs_partial_sum(2, 0, 0).unwrap(), r(1, 1));
        assert_eq!(lhs_partial_sum(2, 0, 1).unwrap(), r(2, 1));
        assert_eq!(lhs_partial_sum(2, 0, 2).unwrap(), r(8, 3));
        assert_eq!(lhs_partial_sum(4, 0, 2), Err(Error::NotPrime(4)));
    }

    #[test]
    fn partial_product_examples() {
        for (p, u) in [(2, 0), (3, 2), (5, 1)] {
            assert!(rhs_partial_product(p, u, u).unwrap().is_one());
        }
        assert_eq!(rhs_partial_product(2, 0, 1).unwrap(), r(2, 1));
        assert_eq!(rhs_partial_product(2, 0, 2).unwrap(), r(8, 3));
    }

    #[test]
    fn layer_examples() {
        for p in [2, 3, 5] {
            assert!(layer_sum_exact(p, 1, 0).unwrap().is_one());
        }
        assert_eq!(layer_sum_exact(2, 0, 1).unwrap(), r(1, 1));
        assert_eq!(layer_sum_exact(2, 0, 2).unwrap(), r(2, 3));
        assert_eq!(layer_sum_direct(2, 0, 2).unwrap(), r(2, 3));
    }

    #[test]
    fn theorem_small() {
        for u in 0..4 {
            let rep = theorem_qseries_check(u, 0);
            assert!(rep.equal);
            assert_eq!(rep.lhs, vec![ExactRational::one()]);
            assert_eq!(rep.rhs, vec![ExactRational::one()]);
        }
        assert!(theorem_qseries_check(2, 15).equal);
    }

    #[test]
    fn trivial_report() {
        let rep = convergence_report(3, 2, 0, 2, 4).unwrap();
        assert_eq!(rep.rows.len(), 1);
        assert!(rep.rows[0].partial_sum.is_one());
        assert!(rep.product.is_one());
        assert!(rep.gap.is_zero());
        assert!(rep.ok());
    }
}
