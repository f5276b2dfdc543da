//! Finite abelian p-groups and the order of their automorphism groups.
//!
//! A group `prod_i (Z/p^{e_i})^{r_i}` with `e_1 > ... > e_k > 0` is a
//! [`PGroupShape`]; it corresponds to the partition with part `e_i`
//! repeated `r_i` times. Three routes to `|Aut(G)|`:
//!
//! - [`aut_order`]: the type-exponent product formula, integerized
//! - [`aut_order_via_conjugate`]: the same formula rewritten through the
//!   conjugate partition, exponent `sum (lambda'_i)^2`
//! - [`aut_order_bruteforce`]: direct enumeration of homomorphisms

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn big_pow(p: u64, exp: usize) -> BigUint {
    num_traits::pow(BigUint::from(p), exp)
}

/// `prod_{s=1}^{r} (p^s - 1)`.
fn unit_factor(p: u64, r: usize) -> BigUint {
    (1..=r).fold(BigUint::one(), |acc, s| acc * (big_pow(p, s) - 1u32))
}

/// Finite abelian p-group as `(exponent, multiplicity)` pairs with strictly
/// decreasing exponents and positive multiplicities. No pairs is the
/// trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PGroupShape {
    p: u64,
    pairs: Vec<(usize, usize)>,
}

impl PGroupShape {
    /// Pairs with multiplicity zero are dropped; they contribute only
    /// empty factors.
    pub fn new(p: u64, pairs: Vec<(usize, usize)>) -> Result<Self> {
        require_prime(p)?;
        let pairs: Vec<_> = pairs.into_iter().filter(|&(_, r)| r > 0).collect();
        if pairs.iter().any(|&(e, _)| e == 0) {
            return Err(Error::InvalidShape("exponents must be positive".into()));
        }
        if pairs.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(Error::InvalidShape("exponents must be strictly decreasing".into()));
        }
        Ok(PGroupShape { p, pairs })
    }

    pub fn trivial(p: u64) -> Result<Self> {
        Self::new(p, Vec::new())
    }

    /// Groups equal parts of `lambda` into `(exponent, multiplicity)` pairs.
    pub fn from_partition(lambda: &Partition, p: u64) -> Result<Self> {
        require_prime(p)?;
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for &part in lambda.parts() {
            match pairs.last_mut() {
                Some((e, r)) if *e == part => *r += 1,
                _ => pairs.push((part, 1)),
            }
        }
        Ok(PGroupShape { p, pairs })
    }

    pub fn to_partition(&self) -> Partition {
        let parts = self
            .pairs
            .iter()
            .flat_map(|&(e, r)| std::iter::repeat_n(e, r))
            .collect();
        Partition::new(parts).expect("pairs are strictly decreasing")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn is_trivial(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `log_p |G| = sum e_i r_i`.
    pub fn order_exponent(&self) -> usize {
        self.pairs.iter().map(|&(e, r)| e * r).sum()
    }

    pub fn order(&self) -> BigUint {
        big_pow(self.p, self.order_exponent())
    }
}

pub fn shape_from_partition(lambda: &Partition, p: u64) -> Result<PGroupShape> {
    PGroupShape::from_partition(lambda, p)
}

/// `|Aut(G)| = prod_i prod_{s=1}^{r_i} (1 - p^{-s}) * p^{E}` with
/// `E = sum_{i,j} min(e_i, e_j) r_i r_j`, evaluated as
/// `prod_i prod_s (p^s - 1) * p^{E - sum_i r_i (r_i + 1) / 2}`.
pub fn aut_order(shape: &PGroupShape) -> BigUint {
    let p = shape.p;
    let pairs = &shape.pairs;
    let mut exponent = 0usize;
    for &(ei, ri) in pairs {
        for &(ej, rj) in pairs {
            exponent += ei.min(ej) * ri * rj;
        }
    }
    let triangular: usize = pairs.iter().map(|&(_, r)| r * (r + 1) / 2).sum();
    let units = pairs
        .iter()
        .fold(BigUint::one(), |acc, &(_, r)| acc * unit_factor(p, r));
    // E >= sum r_i^2 >= sum r_i (r_i + 1) / 2
    units * big_pow(p, exponent - triangular)
}

/// The conjugate-partition form: with `nu = lambda'` and
/// `d_i = nu_i - nu_{i+1}`,
/// `|Aut(G_lambda)| = prod_i prod_{s=1}^{d_i} (1 - p^{-s}) * p^{sum nu_i^2}`.
pub fn aut_order_via_conjugate(lambda: &Partition, p: u64) -> Result<BigUint> {
    require_prime(p)?;
    let nu = lambda.conjugate();
    let squares: usize = nu.parts().iter().map(|x| x * x).sum();
    let mut units = BigUint::one();
    let mut triangular = 0usize;
    for i in 1..=nu.len() {
        let d = nu.part(i) - nu.part(i + 1);
        units *= unit_factor(p, d);
        triangular += d * (d + 1) / 2;
    }
    Ok(units * big_pow(p, squares - triangular))
}

/// Both sides of `sum_{i,j} min(i,j) d_i d_j = sum_i nu_i^2` where
/// `nu = lambda'` and `d_i = nu_i - nu_{i+1}`.
pub fn min_sum_sides(lambda: &Partition) -> (usize, usize) {
    let nu = lambda.conjugate();
    let m = nu.len();
    let d: Vec<usize> = (1..=m).map(|i| nu.part(i) - nu.part(i + 1)).collect();
    let mut lhs = 0;
    for i in 1..=m {
        for j in 1..=m {
            lhs += i.min(j) * d[i - 1] * d[j - 1];
        }
    }
    let rhs = nu.parts().iter().map(|x| x * x).sum();
    (lhs, rhs)
}

pub fn min_sum_identity_check(lambda: &Partition) -> bool {
    let (lhs, rhs) = min_sum_sides(lambda);
    lhs == rhs
}

/// Largest homomorphism space the brute-force oracle will enumerate.
pub const BRUTE_FORCE_LIMIT: u64 = 1 << 24;

/// `sum_{i,j} min(lambda_i, lambda_j)`: `|Hom(G, G)| = p^` this.
pub fn hom_space_exponent(lambda: &Partition) -> usize {
    let parts = lambda.parts();
    parts
        .iter()
        .map(|&a| parts.iter().map(|&b| a.min(b)).sum::<usize>())
        .sum()
}

/// Whether the brute-force oracle accepts `(lambda, p)`.
pub fn within_bruteforce_bound(lambda: &Partition, p: u64) -> bool {
    let exp = u32::try_from(hom_space_exponent(lambda)).unwrap_or(u32::MAX);
    p.checked_pow(exp).is_some_and(|size| size <= BRUTE_FORCE_LIMIT)
}

/// Counts automorphisms of `G_lambda` by enumerating homomorphisms.
///
/// Elements are mixed-radix vectors modulo `(p^{lambda_1}, ..., p^{lambda_k})`.
/// A homomorphism sends generator `g_i` to any element `h_i` with
/// `p^{lambda_i} h_i = 0`. It is bijective exactly when its restriction to
/// the p-torsion subgroup `{x : p x = 0}` is injective (a nontrivial kernel
/// contains an element of order `p`), so each tuple is tested by the
/// cardinality of the image of that subgroup: the images
/// `p^{lambda_i - 1} h_i` of its basis must span `p^k` distinct elements.
/// Tuples are enumerated depth-first and a branch is abandoned as soon as
/// the image stops growing.
pub fn aut_order_bruteforce(lambda: &Partition, p: u64) -> Result<BigUint> {
    require_prime(p)?;
    if !within_bruteforce_bound(lambda, p) {
        return Err(Error::TooLarge { p, exponent: hom_space_exponent(lambda) });
    }
    let exps = lambda.parts();
    let k = exps.len();
    if k == 0 {
        return Ok(BigUint::one());
    }
    let moduli: Vec<u64> = exps.iter().map(|&e| p.pow(e as u32)).collect();
    let group_size: u64 = moduli.iter().product();

    // code of a p-torsion element: its base-p digits x_j / p^{lambda_j - 1}
    let socle_code = |x: &[u64]| -> usize {
        x.iter().zip(exps).rev().fold(0usize, |acc, (&xj, &ej)| {
            acc * p as usize + (xj / p.pow(ej as u32 - 1)) as usize
        })
    };

    // candidates[i]: socle codes of p^{lambda_i - 1} h for every admissible h
    let mut candidates: Vec<Vec<u32>> = vec![Vec::new(); k];
    let mut elem = vec![0u64; k];
    let mut scaled = vec![0u64; k];
    for _ in 0..group_size {
        for (i, &ei) in exps.iter().enumerate() {
            let kill = p.pow(ei as u32);
            if elem.iter().zip(&moduli).all(|(&x, &m)| (x as u128 * kill as u128).is_multiple_of(m as u128)) {
                let lift = p.pow(ei as u32 - 1);
                for j in 0..k {
                    scaled[j] = ((elem[j] as u128 * lift as u128) % moduli[j] as u128) as u64;
                }
                candidates[i].push(socle_code(&scaled) as u32);
            }
        }
        // mixed-radix increment
        for j in 0..k {
            elem[j] += 1;
            if elem[j] < moduli[j] {
                break;
            }
            elem[j] = 0;
        }
    }

    let socle_size = (p as usize).pow(k as u32);
    let digits_add = |a: usize, b: usize| -> usize {
        let (mut a, mut b, mut out, mut place) = (a, b, 0usize, 1usize);
        for _ in 0..k {
            out += ((a + b) % p as usize) * place;
            a /= p as usize;
            b /= p as usize;
            place *= p as usize;
        }
        out
    };

    // span is the image of the socle generated so far, as a membership table
    fn extend(span: &[bool], t: usize, p: usize, add: &dyn Fn(usize, usize) -> usize) -> Vec<bool> {
        let mut out = span.to_vec();
        let members: Vec<usize> = (0..span.len()).filter(|&x| span[x]).collect();
        let mut multiple = 0usize;
        for _ in 1..p {
            multiple = add(multiple, t);
            for &s in &members {
                out[add(s, multiple)] = true;
            }
        }
        out
    }

    fn count(
        level: usize,
        span: &[bool],
        candidates: &[Vec<u32>],
        p: usize,
        add: &(dyn Fn(usize, usize) -> usize + Sync),
    ) -> u64 {
        let here = &candidates[level];
        if level + 1 == candidates.len() {
            return here.iter().filter(|&&t| !span[t as usize]).count() as u64;
        }
        here.iter()
            .filter(|&&t| !span[t as usize])
            .map(|&t| count(level + 1, &extend(span, t as usize, p, add), candidates, p, add))
            .sum()
    }

    let mut start = vec![false; socle_size];
    start[0] = true;
    let p_us = p as usize;
    let total: u64 = if k == 1 {
        count(0, &start, &candidates, p_us, &digits_add)
    } else {
        candidates[0]
            .par_iter()
            .filter(|&&t| t != 0)
            .map(|&t| count(1, &extend(&start, t as usize, p_us, &digits_add), &candidates, p_us, &digits_add))
            .sum()
    };
    Ok(BigUint::from(total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn shapes() {
        let t = shape_from_partition(&Partition::empty(), 2).unwrap();
        assert!(t.is_trivial());
        assert_eq!(t.order(), BigUint::one());
        let s = shape_from_partition(&part("2,1,1"), 3).unwrap();
        assert_eq!(s.pairs(), &[(2, 1), (1, 2)]);
        assert_eq!(s.order(), BigUint::from(81u32));
        let e = shape_from_partition(&part("1,1"), 2).unwrap();
        assert_eq!(e.pairs(), &[(1, 2)]);
        assert_eq!(e.order(), BigUint::from(4u32));
        assert_eq!(shape_from_partition(&part("1"), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn shape_validation() {
        assert!(PGroupShape::new(2, vec![(1, 1), (2, 1)]).is_err());
        assert!(PGroupShape::new(2, vec![(2, 1), (2, 1)]).is_err());
        assert!(PGroupShape::new(2, vec![(0, 1)]).is_err());
        let s = PGroupShape::new(3, vec![(3, 2), (2, 0), (1, 1)]).unwrap();
        assert_eq!(s.pairs(), &[(3, 2), (1, 1)]);
        assert_eq!(s.to_partition(), part("3,3,1"));
    }

    #[test]
    fn formula_examples() {
        let shape = |s: &str, p| shape_from_partition(&part(s), p).unwrap();
        assert_eq!(aut_order(&PGroupShape::trivial(5).unwrap()), BigUint::one());
        assert_eq!(aut_order(&shape("1,1", 2)), BigUint::from(6u32));
        assert_eq!(aut_order(&shape("2,1", 2)), BigUint::from(8u32));
        assert_eq!(aut_order_via_conjugate(&Partition::empty(), 7).unwrap(), BigUint::one());
        assert_eq!(aut_order_via_conjugate(&part("1,1"), 2).unwrap(), BigUint::from(6u32));
        assert_eq!(
            aut_order_via_conjugate(&part("3,1,1"), 3).unwrap(),
            aut_order(&shape("3,1,1", 3))
        );
    }

    #[test]
    fn bruteforce_examples() {
        let bf = |s: &str, p| aut_order_bruteforce(&part(s), p).unwrap();
        assert_eq!(bf("-", 2), BigUint::one());
        assert_eq!(bf("1", 2), BigUint::one());
        assert_eq!(bf("1", 5), BigUint::from(4u32));
        assert_eq!(bf("1,1", 2), BigUint::from(6u32));
        assert_eq!(bf("2,1", 2), BigUint::from(8u32));
        assert_eq!(bf("1,1,1", 2), BigUint::from(168u32));
        assert_eq!(bf("3", 2), BigUint::from(4u32));
    }

    #[test]
    fn bruteforce_refuses_large() {
        assert!(within_bruteforce_bound(&part("1,1,1,1"), 2));
        assert!(!within_bruteforce_bound(&part("1,1,1,1,1"), 2));
        assert!(matches!(
            aut_order_bruteforce(&part("1,1,1,1"), 3),
            Err(Error::TooLarge { p: 3, exponent: 16 })
        ));
        assert_eq!(aut_order_bruteforce(&part("1"), 6), Err(Error::NotPrime(6)));
    }

    #[test]
    fn min_sum_examples() {
        assert!(min_sum_identity_check(&Partition::empty()));
        assert_eq!(min_sum_sides(&part("2,1")), (5, 5));
    }
}
