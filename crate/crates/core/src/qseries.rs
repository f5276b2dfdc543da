//! Truncated formal power series in `q` with exact rational coefficients.
//!
//! A [`QSeries`] of truncation order `N` stores the coefficients of
//! `q^0 ..= q^N`; arithmetic is exact modulo `q^{N+1}` and mixing orders
//! truncates to the smaller one.
//!
//! Series built here:
//! - [`euler_product_tail`]: `prod_{j > u} (1 - q^j)^{-1}`
//! - [`gaussian_binomial`]: `psi_{a,b}(q)`, partitions in an `a x b` box
//! - [`f_n_series`] / [`f_n_via_durfee`]: `f_n(q)` from `b`-counts and from
//!   stacked Durfee squares

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::{count_greatest_part, Partition};
use crate::rational::ExactRational;
use crate::report::VerificationReport;

pub use crate::partitions::BoxBound;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<ExactRational>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![ExactRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, ExactRational::one(), order)
    }

    /// `c * q^k` (zero if `k > order`).
    pub fn monomial(k: usize, c: ExactRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Series whose truncation order is `coeffs.len() - 1`. Panics on an
    /// empty vector.
    pub fn from_coeffs(coeffs: Vec<ExactRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least the constant term");
        QSeries { coeffs }
    }

    pub fn from_integers<T: Copy + Into<ExactRational>>(values: &[T]) -> Self {
        Self::from_coeffs(values.iter().map(|&v| v.into()).collect())
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactRational> {
        self.coeffs
    }

    /// Coefficient of `q^k`; zero above the truncation order.
    pub fn coeff(&self, k: usize) -> ExactRational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn truncate(&self, order: usize) -> QSeries {
        let order = order.min(self.truncation());
        QSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Multiply by `q^k`, dropping degrees past the truncation order.
    pub fn shift(&self, k: usize) -> QSeries {
        let n = self.truncation();
        let mut out = Self::zero(n);
        for d in k..=n {
            out.coeffs[d] = self.coeffs[d - k].clone();
        }
        out
    }

    pub fn scale(&self, c: &ExactRational) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplicative inverse modulo `q^{N+1}`.
    pub fn invert(&self) -> Result<QSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = c0.recip();
        let n = self.truncation();
        let mut out: Vec<ExactRational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = ExactRational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &(&self.coeffs[j] * &out[k - j]);
                }
            }
            out.push(-(acc * &inv0));
        }
        Ok(QSeries { coeffs: out })
    }

    /// Divides in place by `1 - q^j` (`j >= 1`), i.e. multiplies by the
    /// geometric series `1 + q^j + q^{2j} + ...`.
    pub fn divide_by_one_minus_q_pow(&mut self, j: usize) {
        assert!(j >= 1);
        for k in j..self.coeffs.len() {
            let prev = self.coeffs[k - j].clone();
            self.coeffs[k] += &prev;
        }
    }

    /// Whether every coefficient is a non-negative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer() && !c.is_negative())
    }

    /// Evaluates the truncated polynomial at `q = x`.
    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * x + c)
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let n = self.truncation().min(rhs.truncation());
        QSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let n = self.truncation().min(rhs.truncation());
        QSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.truncation().min(rhs.truncation());
        let mut out = QSeries::zero(n);
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += &(a * b);
                }
            }
        }
        out
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    truncation: usize,
    coeffs: Vec<ExactRational>,
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson { truncation: self.truncation(), coeffs: self.coeffs.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.truncation + 1 {
            return Err(serde::de::Error::custom(format!(
                "truncation {} needs {} coefficients, got {}",
                raw.truncation,
                raw.truncation + 1,
                raw.coeffs.len()
            )));
        }
        Ok(QSeries { coeffs: raw.coeffs })
    }
}

/// `prod_{j=u+1}^{N} (1 - q^j)^{-1} mod q^{N+1}`. Factors with `j > N`
/// are `1` modulo `q^{N+1}`, so this is the full infinite product.
pub fn euler_product_tail(u: usize, order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    for j in (u + 1)..=order {
        s.divide_by_one_minus_q_pow(j);
    }
    s
}

/// `psi_{a,b}(q)`: the coefficient of `q^n` counts partitions of `n` with
/// at most `a` parts, each at most `b`.
///
/// Finite `b` uses the q-Pascal recurrence
/// `psi_{a,b} = psi_{a-1,b} + q^a psi_{a,b-1}`; unbounded `b` inverts
/// `prod_{i=1}^{a} (1 - q^i)`.
pub fn gaussian_binomial(a: usize, b: BoxBound, order: usize) -> QSeries {
    match b {
        BoxBound::Unbounded => {
            let mut s = QSeries::one(order);
            for i in 1..=a.min(order) {
                s.divide_by_one_minus_q_pow(i);
            }
            s
        }
        BoxBound::Finite(b) => {
            // row[j] holds psi_{i,j} for the current i
            let mut row = vec![QSeries::one(order); b + 1];
            for i in 1..=a {
                let mut next = Vec::with_capacity(b + 1);
                next.push(QSeries::one(order));
                for j in 1..=b {
                    let s = &row[j] + &next[j - 1].shift(i);
                    next.push(s);
                }
                row = next;
            }
            row.pop().expect("row has b + 1 entries")
        }
    }
}

/// Per-call memo for [`gaussian_binomial`] at a fixed truncation order.
#[derive(Debug)]
pub struct PsiCache {
    order: usize,
    table: HashMap<(usize, BoxBound), QSeries>,
}

impl PsiCache {
    pub fn new(order: usize) -> Self {
        PsiCache { order, table: HashMap::new() }
    }

    pub fn get(&mut self, a: usize, b: BoxBound) -> &QSeries {
        let order = self.order;
        self.table.entry((a, b)).or_insert_with(|| gaussian_binomial(a, b, order))
    }
}

/// `f_n(q) = sum_N b_{N,n} q^N`, truncated at `order`.
pub fn f_n_series(n: usize, order: usize) -> QSeries {
    QSeries::from_coeffs(
        (0..=order)
            .map(|k| ExactRational::from(count_greatest_part(k, n)))
            .collect(),
    )
}

/// Partitions `mu` of `n` with `sum mu_i^2 <= max_square_sum`, i.e. those
/// whose Durfee term survives truncation. Decreasing-lex order.
pub fn durfee_shapes(n: usize, max_square_sum: usize) -> Vec<Partition> {
    fn go(rest: usize, max_part: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::new(cur.clone()).expect("built in decreasing order"));
            return;
        }
        // every remaining part costs at least its own size in squares
        if rest > budget {
            return;
        }
        for k in (1..=max_part.min(rest)).rev() {
            if k * k > budget {
                continue;
            }
            cur.push(k);
            go(rest - k, k, budget - k * k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_square_sum, &mut Vec::new(), &mut out);
    out
}

/// `sum_{mu |- n} prod_i psi_{mu_i, mu_{i-1} - mu_i}(q) * q^{sum mu_i^2}`
/// with `mu_0 = infinity`. Shapes with `sum mu_i^2 > order` contribute
/// nothing modulo `q^{order+1}` and are skipped.
pub fn f_n_via_durfee(n: usize, order: usize) -> QSeries {
    let mut cache = PsiCache::new(order);
    f_n_via_durfee_cached(n, &mut cache)
}

pub fn f_n_via_durfee_cached(n: usize, cache: &mut PsiCache) -> QSeries {
    let order = cache.order;
    let mut total = QSeries::zero(order);
    for mu in durfee_shapes(n, order) {
        let squares: usize = mu.parts().iter().map(|m| m * m).sum();
        let mut term = QSeries::one(order);
        let mut prev = BoxBound::Unbounded;
        for &m in mu.parts() {
            let width = match prev {
                BoxBound::Unbounded => BoxBound::Unbounded,
                BoxBound::Finite(p) => BoxBound::Finite(p - m),
            };
            term = &term * cache.get(m, width);
            prev = BoxBound::Finite(m);
        }
        total = &total + &term.shift(squares);
    }
    total
}

/// `sum_{n} f_n(q) q^{n u}` from direct `b`-counts. Terms with `n u > order`
/// vanish; for `u = 0` the sum stops at `n = order` because `b_{N,n} = 0`
/// for `n > N`.
pub fn weighted_f_sum(u: usize, order: usize) -> QSeries {
    let mut total = QSeries::zero(order);
    for n in 0..=order {
        if n * u > order {
            break;
        }
        total = &total + &f_n_series(n, order).shift(n * u);
    }
    total
}

/// Same sum as [`weighted_f_sum`] with each `f_n` built from Durfee squares.
pub fn weighted_durfee_sum(u: usize, order: usize) -> QSeries {
    let mut cache = PsiCache::new(order);
    let mut total = QSeries::zero(order);
    for n in 0..=order {
        if n * u > order {
            break;
        }
        total = &total + &f_n_via_durfee_cached(n, &mut cache).shift(n * u);
    }
    total
}

/// Compares `prod_{j>u} (1-q^j)^{-1}` (lhs) against `sum_n f_n(q) q^{nu}`
/// (rhs) for degrees `0..=order`.
pub fn verify_lemma2(u: usize, order: usize) -> VerificationReport {
    let lhs = euler_product_tail(u, order);
    let rhs = weighted_f_sum(u, order);
    VerificationReport::compare(u, order, lhs.into_coeffs(), rhs.into_coeffs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries) -> Vec<String> {
        s.coeffs().iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn ring_examples() {
        let a = QSeries::from_integers(&[1, 1, 0]);
        let b = QSeries::from_integers(&[1, -1, 0]);
        assert_eq!(&a * &b, QSeries::from_integers(&[1, 0, -1]));
        let g = QSeries::from_integers(&[1, -1, 0, 0, 0]).invert().unwrap();
        assert_eq!(g, QSeries::from_integers(&[1, 1, 1, 1, 1]));
        let s = QSeries::from_integers(&[1, 1, 0, 0]).shift(2);
        assert_eq!(s, QSeries::from_integers(&[0, 0, 1, 1]));
    }

    #[test]
    fn invert_requires_unit() {
        assert_eq!(QSeries::from_integers(&[0, 1, 2]).invert(), Err(Error::NotAUnit));
    }

    #[test]
    fn mismatched_orders_truncate() {
        let a = QSeries::from_integers(&[1, 2, 3, 4]);
        let b = QSeries::from_integers(&[1, 1]);
        assert_eq!((&a + &b).truncation(), 1);
        assert_eq!(&a * &b, QSeries::from_integers(&[1, 3]));
    }

    #[test]
    fn euler_tail_examples() {
        assert_eq!(ints(&euler_product_tail(0, 5)), ["1", "1", "2", "3", "5", "7"]);
        assert_eq!(ints(&euler_product_tail(3, 4)), ["1", "0", "0", "0", "1"]);
        for u in 0..4 {
            assert_eq!(ints(&euler_product_tail(u, 0)), ["1"]);
        }
    }

    #[test]
    fn gaussian_examples() {
        assert_eq!(gaussian_binomial(3, 0.into(), 4), QSeries::one(4));
        assert_eq!(ints(&gaussian_binomial(1, 1.into(), 4)), ["1", "1", "0", "0", "0"]);
        assert_eq!(ints(&gaussian_binomial(2, 2.into(), 4)), ["1", "1", "2", "1", "1"]);
        assert_eq!(gaussian_binomial(0, BoxBound::Unbounded, 3), QSeries::one(3));
        assert_eq!(ints(&gaussian_binomial(1, BoxBound::Unbounded, 3)), ["1", "1", "1", "1"]);
    }

    #[test]
    fn f_n_examples() {
        assert_eq!(f_n_series(0, 5), QSeries::one(5));
        assert_eq!(ints(&f_n_series(1, 4)), ["0", "1", "1", "1", "1"]);
        assert_eq!(f_n_series(2, 4).coeff(4), ExactRational::from(2));
        assert_eq!(f_n_via_durfee(0, 5), QSeries::one(5));
        assert_eq!(ints(&f_n_via_durfee(1, 4)), ["0", "1", "1", "1", "1"]);
        assert_eq!(f_n_via_durfee(2, 6), f_n_series(2, 6));
    }

    #[test]
    fn durfee_shapes_prune() {
        let all: Vec<String> = durfee_shapes(4, 100).iter().map(|p| p.to_string()).collect();
        assert_eq!(all, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        let cut: Vec<String> = durfee_shapes(4, 6).iter().map(|p| p.to_string()).collect();
        assert_eq!(cut, ["2,1,1", "1,1,1,1"]);
        assert!(durfee_shapes(3, 2).is_empty());
    }

    #[test]
    fn lemma2_examples() {
        assert!(verify_lemma2(0, 20).equal);
        assert!(verify_lemma2(1, 20).equal);
        for u in 0..4 {
            let r = verify_lemma2(u, 0);
            assert!(r.equal);
            assert_eq!(r.lhs, vec![ExactRational::one()]);
        }
    }

    #[test]
    fn json_shape() {
        let s = QSeries::from_coeffs(vec![ExactRational::one(), ExactRational::new(1, 2)]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"truncation":1,"coeffs":["1","1/2"]}"#);
        let back: QSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<QSeries>(r#"{"truncation":3,"coeffs":["1"]}"#).is_err());
    }
}
