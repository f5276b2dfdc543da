//! Test-only oracles. None of these call into the code paths they check.
#![allow(dead_code)]

use std::collections::HashSet;

use cohen_lenstra::Partition;

/// p(0..=n) by Euler's pentagonal number recurrence.
pub fn partition_numbers(n: usize) -> Vec<u64> {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for i in 1..=n {
        let mut acc = 0i64;
        for k in 1i64.. {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > i {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[i - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= i {
                acc += sign * p[i - g2];
            }
        }
        p[i] = acc;
    }
    p.into_iter().map(|x| x as u64).collect()
}

/// Partitions of n built in ascending part order, then reversed and sorted
/// into decreasing-lex order.
pub fn partitions_ascending(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.iter().rev().copied().collect());
            return;
        }
        for k in min..=rest {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

pub fn all_partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n)
        .flat_map(partitions_ascending)
        .map(|v| Partition::new(v).unwrap())
        .collect()
}

/// Cell-by-cell transpose of a Young diagram.
pub fn transpose(parts: &[usize]) -> Vec<usize> {
    let cells: HashSet<(usize, usize)> = parts
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (c, r)))
        .collect();
    let mut rows = Vec::new();
    let mut r = 0;
    while cells.contains(&(r, 0)) {
        let mut len = 0;
        while cells.contains(&(r, len)) {
            len += 1;
        }
        rows.push(len);
        r += 1;
    }
    rows
}

/// |GL_r(F_p)| = prod_{s=0}^{r-1} (p^r - p^s).
pub fn gl_order(r: u32, p: u64) -> u128 {
    let pr = (p as u128).pow(r);
    (0..r).map(|s| pr - (p as u128).pow(s)).product()
}

/// Automorphisms of `prod Z/p^{e_i}` by enumerating every homomorphism and
/// collecting the image of every group element. Only for tiny groups.
pub fn aut_count_full_image(exps: &[usize], p: u64) -> u64 {
    let moduli: Vec<u64> = exps.iter().map(|&e| p.pow(e as u32)).collect();
    let k = moduli.len();
    let elements: Vec<Vec<u64>> = {
        let mut all = vec![vec![]];
        for &m in &moduli {
            all = all
                .into_iter()
                .flat_map(|v: Vec<u64>| {
                    (0..m).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        all
    };
    let admissible: Vec<Vec<&Vec<u64>>> = exps
        .iter()
        .map(|&e| {
            let kill = p.pow(e as u32);
            elements
                .iter()
                .filter(|x| x.iter().zip(&moduli).all(|(&xi, &m)| (xi * kill).is_multiple_of(m)))
                .collect()
        })
        .collect();
    let mut count = 0u64;
    let mut idx = vec![0usize; k];
    if k == 0 {
        return 1;
    }
    loop {
        let images: Vec<&Vec<u64>> = (0..k).map(|i| admissible[i][idx[i]]).collect();
        let mut seen = HashSet::new();
        for a in &elements {
            let img: Vec<u64> = (0..k)
                .map(|j| {
                    let s: u64 = (0..k).map(|i| a[i] * images[i][j]).sum();
                    s % moduli[j]
                })
                .collect();
            seen.insert(img);
        }
        if seen.len() == elements.len() {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == k {
                return count;
            }
            idx[i] += 1;
            if idx[i] < admissible[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}
