//! Exponent vectors and the fixed monomial order.
//!
//! Within one degree, bases list exponent vectors in graded reverse
//! lexicographic order, largest first, with `x_1 > x_2 > ... > x_d`. In three
//! variables and degree two this reads `x1^2, x1x2, x2^2, x1x3, x2x3, x3^2`.
//! The derived `Ord` on [`MultiIndex`] is exactly this basis position order
//! (lower degrees first), so ordered maps iterate in basis order.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize, k: u32) -> Self {
        let mut v = vec![0; dim];
        v[i] = k;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Graded reverse lexicographic comparison, `Greater` meaning larger monomial.
pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    if da != db {
        return da.cmp(&db);
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            // smaller exponent in the last differing variable => larger monomial
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        let (da, db) = (self.degree(), other.degree());
        if da != db {
            return da.cmp(&db);
        }
        grevlex_cmp(&other.0, &self.0)
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Exact binomial coefficient (panics on overflow, far beyond our sizes).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of monomials of degree `k` in `dim` variables.
pub fn monomial_count(dim: usize, k: u32) -> usize {
    if dim == 0 {
        return usize::from(k == 0);
    }
    binomial(dim as u64 + k as u64 - 1, k as u64) as usize
}

/// All exponent vectors of degree `k` in `dim` variables, in basis order.
pub fn monomials(dim: usize, k: u32) -> Vec<MultiIndex> {
    fn rec(dim: usize, k: u32, out: &mut Vec<Vec<u32>>) {
        if dim == 0 {
            if k == 0 {
                out.push(Vec::new());
            }
            return;
        }
        if dim == 1 {
            out.push(vec![k]);
            return;
        }
        for last in 0..=k {
            let mut prefixes = Vec::new();
            rec(dim - 1, k - last, &mut prefixes);
            for mut v in prefixes {
                v.push(last);
                out.push(v);
            }
        }
    }
    let mut out = Vec::with_capacity(monomial_count(dim, k));
    rec(dim, k, &mut out);
    out.into_iter().map(MultiIndex).collect()
}

/// Position of `alpha` in `monomials(alpha.len(), |alpha|)`.
pub fn monomial_rank(alpha: &[u32]) -> usize {
    let mut k: u32 = alpha.iter().sum();
    let mut rank = 0;
    for d in (2..=alpha.len()).rev() {
        let last = alpha[d - 1];
        for e in 0..last {
            rank += monomial_count(d - 1, k - e);
        }
        k -= last;
    }
    rank
}

/// Strictly increasing `m`-subsets of `0..n` in lexicographic order; for
/// `m = 2, n = 4` this is `01, 02, 03, 12, 13, 23`.
pub fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, m, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_order_degree_two() {
        let got: Vec<Vec<u32>> = monomials(3, 2).into_iter().map(|m| m.0).collect();
        assert_eq!(
            got,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
    }

    #[test]
    fn counts() {
        assert_eq!(monomials(6, 4).len(), 126);
        assert_eq!(monomials(6, 2).len(), 21);
        assert_eq!(monomials(6, 12).len(), 6188);
        assert_eq!(monomials(5, 0), vec![MultiIndex::zero(5)]);
    }

    #[test]
    fn rank_and_order_are_consistent() {
        for dim in 1..=5 {
            for k in 0..=5 {
                let list = monomials(dim, k);
                for (i, m) in list.iter().enumerate() {
                    assert_eq!(monomial_rank(&m.0), i);
                }
                for w in list.windows(2) {
                    assert!(w[0] < w[1]);
                    assert_eq!(grevlex_cmp(&w[0].0, &w[1].0), Ordering::Greater);
                }
            }
        }
    }

    #[test]
    fn lambda_two_labels() {
        assert_eq!(
            subsets(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }
}
