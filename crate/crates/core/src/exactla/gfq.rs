//! Row reduction and subspace enumeration over table-driven `F_q`.

use crate::gf::{GaloisField, Gf};

pub type GfVec = Vec<Gf>;

/// Reduces `rows` to RREF in place (zero rows dropped) and returns the pivots.
pub fn rref_gf(field: &GaloisField, rows: &mut Vec<GfVec>) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != Gf(0)) else {
            continue;
        };
        rows.swap(i, r);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot = rows[r].clone();
        for (j, row) in rows.iter_mut().enumerate() {
            if j == r || row[c] == Gf(0) {
                continue;
            }
            let f = row[c];
            for (x, &s) in row.iter_mut().zip(&pivot) {
                *x = field.sub(*x, field.mul(f, s));
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Canonical (RREF) basis of the span of `vectors`.
pub fn span_canonical(field: &GaloisField, vectors: &[GfVec]) -> Vec<GfVec> {
    let mut rows = vectors.to_vec();
    rref_gf(field, &mut rows);
    rows
}

pub fn subspace_dim(field: &GaloisField, vectors: &[GfVec]) -> usize {
    span_canonical(field, vectors).len()
}

/// Normalized representatives (first nonzero coordinate 1) of `P^{n-1}(F_q)`,
/// ordered by the position of the leading 1 and then lexicographically.
pub fn projective_points(field: &GaloisField, n: usize) -> Vec<GfVec> {
    let q = field.order() as usize;
    let mut out = Vec::new();
    for lead in 0..n {
        let tail = n - lead - 1;
        let count = q.pow(tail as u32);
        for code in 0..count {
            let mut v = vec![Gf(0); n];
            v[lead] = Gf(1);
            let mut x = code;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = Gf((x % q) as u32);
                x /= q;
            }
            out.push(v);
        }
    }
    out
}

/// Calls `visit` with the RREF basis of every `m`-dimensional subspace of
/// `F_q^n`, pivot sets in lexicographic order.
pub fn enumerate_subspaces(
    field: &GaloisField,
    n: usize,
    m: usize,
    mut visit: impl FnMut(&[GfVec]),
) {
    if m > n {
        return;
    }
    let q = field.order() as usize;
    let mut pivots: Vec<usize> = (0..m).collect();
    loop {
        // free slots: (row, col) right of the row's pivot and not a pivot column
        let mut free = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..n {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let mut basis = vec![vec![Gf(0); n]; m];
        for (r, &pc) in pivots.iter().enumerate() {
            basis[r][pc] = Gf(1);
        }
        let total = q.pow(free.len() as u32);
        for code in 0..total {
            let mut x = code;
            for &(r, c) in free.iter().rev() {
                basis[r][c] = Gf((x % q) as u32);
                x /= q;
            }
            visit(&basis);
        }
        // next m-combination of 0..n
        let mut i = m;
        while i > 0 && pivots[i - 1] == i - 1 + n - m {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        pivots[i - 1] += 1;
        for j in i..m {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= q.pow(n - i) - 1;
            den *= q.pow(i + 1) - 1;
        }
        num / den
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for (p, d) in [(2u32, 1u32), (3, 1), (2, 2)] {
            let f = GaloisField::new(p, d).unwrap();
            let q = f.order() as u64;
            for n in 1..=4usize {
                for m in 0..=n {
                    let mut count = 0u64;
                    enumerate_subspaces(&f, n, m, |b| {
                        assert_eq!(span_canonical(&f, b), b.to_vec());
                        count += 1;
                    });
                    assert_eq!(
                        count,
                        gaussian_binomial(n as u32, m as u32, q),
                        "q={q} n={n} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn projective_point_count() {
        let f = GaloisField::prime(3).unwrap();
        assert_eq!(projective_points(&f, 4).len(), 40);
        let f4 = GaloisField::new(2, 2).unwrap();
        assert_eq!(projective_points(&f4, 4).len(), 85);
    }

    #[test]
    fn rref_drops_dependent_rows() {
        let f = GaloisField::prime(5).unwrap();
        let v = |xs: &[u32]| xs.iter().map(|&x| Gf(x)).collect::<Vec<_>>();
        let rows = vec![v(&[1, 2, 3]), v(&[0, 1, 4]), v(&[1, 3, 2])];
        // third = first + second
        assert_eq!(subspace_dim(&f, &rows), 2);
    }
}
