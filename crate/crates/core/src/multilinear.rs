//! Divided powers `Γ^k(V)`, exterior powers `Λ^m(V)` and symmetric powers
//! `S^n(V)` over `F_p`, in monomial bases.
//!
//! `γ_α` stands for `γ_{α_1}(e_1)⋯γ_{α_d}(e_d)`; bases are listed in the order
//! of [`crate::monomial`].

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{domain, usage, Error, Result};
use crate::exactla::MatFp;
use crate::gf::binomial_mod;
use crate::monomial::{monomial_count, monomial_rank, monomials, subsets, MultiIndex};
use crate::poly::SparsePoly;

/// Monomial basis of `Γ^k` (equivalently `S^k`) of a `dim`-dimensional space.
pub fn gamma_basis(dim: usize, k: u32) -> Vec<MultiIndex> {
    monomials(dim, k)
}

/// An element of `Γ^k(F_p^dim)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GammaElem {
    dim: usize,
    degree: u32,
    p: u32,
    coeffs: BTreeMap<MultiIndex, u32>,
}

impl GammaElem {
    pub fn zero(dim: usize, degree: u32, p: u32) -> Self {
        Self {
            dim,
            degree,
            p,
            coeffs: BTreeMap::new(),
        }
    }

    /// The unit `γ_0 = 1` of the algebra.
    pub fn one(dim: usize, p: u32) -> Self {
        Self::basis(MultiIndex::zero(dim), p)
    }

    pub fn basis(alpha: MultiIndex, p: u32) -> Self {
        let mut x = Self::zero(alpha.dim(), alpha.degree(), p);
        x.coeffs.insert(alpha, 1 % p);
        x.coeffs.retain(|_, c| *c != 0);
        x
    }

    pub fn from_terms(
        dim: usize,
        degree: u32,
        p: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, i64)>,
    ) -> Result<Self> {
        let mut x = Self::zero(dim, degree, p);
        for (e, c) in terms {
            let alpha = MultiIndex(e);
            if alpha.dim() != dim || alpha.degree() != degree {
                return usage(format!(
                    "index {alpha} does not lie in degree {degree}, dim {dim}"
                ));
            }
            x.add_term(alpha, c.rem_euclid(p as i64) as u32);
        }
        Ok(x)
    }

    pub fn from_dense(dim: usize, degree: u32, p: u32, v: &[u32]) -> Result<Self> {
        let basis = gamma_basis(dim, degree);
        if basis.len() != v.len() {
            return usage(format!(
                "expected {} coordinates, got {}",
                basis.len(),
                v.len()
            ));
        }
        let mut x = Self::zero(dim, degree, p);
        for (alpha, &c) in basis.into_iter().zip(v) {
            x.add_term(alpha, c % p);
        }
        Ok(x)
    }

    fn add_term(&mut self, alpha: MultiIndex, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.p;
        let slot = self.coeffs.entry(alpha.clone()).or_insert(0);
        *slot = (*slot + c) % p;
        if *slot == 0 {
            self.coeffs.remove(&alpha);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, alpha: &[u32]) -> u32 {
        self.coeffs
            .get(&MultiIndex(alpha.to_vec()))
            .copied()
            .unwrap_or(0)
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, u32)> {
        self.coeffs.iter().map(|(a, &c)| (a, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coordinates in the basis of [`gamma_basis`].
    pub fn to_dense(&self) -> Vec<u32> {
        let mut v = vec![0; monomial_count(self.dim, self.degree)];
        for (alpha, &c) in &self.coeffs {
            v[monomial_rank(&alpha.0)] = c;
        }
        v
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.p != other.p {
            return usage("divided powers of different spaces");
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        if self.degree != other.degree {
            return usage("sum of divided powers of different degrees");
        }
        let mut out = self.clone();
        for (a, &c) in &other.coeffs {
            out.add_term(a.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = c.rem_euclid(self.p as i64) as u32;
        let mut out = Self::zero(self.dim, self.degree, self.p);
        if c != 0 {
            for (a, &x) in &self.coeffs {
                out.coeffs.insert(a.clone(), x * c % self.p);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    /// Lines `α_1 … α_d : c` in basis order.
    pub fn to_text(&self) -> String {
        self.coeffs
            .iter()
            .map(|(a, c)| format!("{a} : {c}\n"))
            .collect()
    }

    pub fn from_text(text: &str, dim: usize, degree: u32, p: u32) -> Result<Self> {
        let mut terms = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (lhs, rhs) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("missing ':' in {line:?}")))?;
            let alpha = lhs
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse(format!("{line:?}: {e}")))?;
            let c = rhs
                .trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("{line:?}: {e}")))?;
            terms.push((alpha, c));
        }
        Self::from_terms(dim, degree, p, terms)
    }
}

impl fmt::Display for GammaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `γ_k(v)`: the coefficient at `α` is `∏ v_i^{α_i}`.
pub fn divided_power_eval(v: &[u32], k: u32, p: u32) -> GammaElem {
    let dim = v.len();
    let mut out = GammaElem::zero(dim, k, p);
    let support: Vec<usize> = (0..dim).filter(|&i| !v[i].is_multiple_of(p)).collect();
    if support.is_empty() {
        if k == 0 {
            out.coeffs.insert(MultiIndex::zero(dim), 1 % p);
        }
        return out;
    }
    // only indices supported on the nonzero coordinates contribute
    for sub in monomials(support.len(), k) {
        let mut alpha = vec![0; dim];
        let mut c = 1u64;
        for (&i, &e) in support.iter().zip(&sub.0) {
            alpha[i] = e;
            for _ in 0..e {
                c = c * (v[i] % p) as u64 % p as u64;
            }
        }
        out.add_term(MultiIndex(alpha), c as u32);
    }
    out
}

fn binomial_table(max: u32, p: u32) -> Vec<Vec<u32>> {
    (0..=max)
        .map(|n| {
            (0..=n)
                .map(|k| binomial_mod(n as u64, k as u64, p))
                .collect()
        })
        .collect()
}

/// Product in the divided power algebra:
/// `γ_α·γ_β = ∏ C(α_i+β_i, α_i) γ_{α+β}`.
pub fn dp_mul(x: &GammaElem, y: &GammaElem) -> Result<GammaElem> {
    x.check_same_space(y)?;
    let p = x.p;
    let table = binomial_table(x.degree + y.degree, p);
    let mut out = GammaElem::zero(x.dim, x.degree + y.degree, p);
    for (a, &ca) in &x.coeffs {
        for (b, &cb) in &y.coeffs {
            let mut c = ca as u64 * cb as u64 % p as u64;
            for (&ai, &bi) in a.0.iter().zip(&b.0) {
                if c == 0 {
                    break;
                }
                c = c * table[(ai + bi) as usize][ai as usize] as u64 % p as u64;
            }
            if c != 0 {
                out.add_term(a.add(b), c as u32);
            }
        }
    }
    Ok(out)
}

fn factorial_mod(n: u32, p: u32) -> u64 {
    (1..=n as u64).fold(1 % p as u64, |acc, i| acc * i % p as u64)
}

fn double_factorial_odd_mod(i: u32, p: u32) -> u64 {
    // (2i-1)!! = 1·3·5⋯(2i-1), empty product for i = 0
    (1..=i as u64).fold(1 % p as u64, |acc, j| acc * (2 * j - 1) % p as u64)
}

/// `γ_k(x)` for `x` of degree two.
pub fn dp_gamma(x: &GammaElem, k: u32) -> Result<GammaElem> {
    if x.degree != 2 {
        return usage("divided powers are only implemented for degree-two elements");
    }
    let (dim, p) = (x.dim, x.p);
    // partial[d] = γ_d of the terms processed so far
    let mut partial: Vec<GammaElem> = (0..=k).map(|d| GammaElem::zero(dim, 2 * d, p)).collect();
    partial[0] = GammaElem::one(dim, p);
    for (mu, &c) in &x.coeffs {
        let support: Vec<usize> = (0..dim).filter(|&i| mu.0[i] > 0).collect();
        let powers: Vec<GammaElem> = (0..=k)
            .map(|i| {
                let (alpha, coef) = if support.len() == 2 {
                    let mut a = vec![0; dim];
                    a[support[0]] = i;
                    a[support[1]] = i;
                    (a, factorial_mod(i, p))
                } else {
                    (
                        MultiIndex::unit(dim, support[0], 2 * i).0,
                        double_factorial_odd_mod(i, p),
                    )
                };
                let mut cp = coef;
                for _ in 0..i {
                    cp = cp * c as u64 % p as u64;
                }
                let mut g = GammaElem::zero(dim, 2 * i, p);
                g.add_term(MultiIndex(alpha), cp as u32);
                g
            })
            .collect();
        let mut next = Vec::with_capacity(k as usize + 1);
        for d in 0..=k as usize {
            let mut acc = GammaElem::zero(dim, 2 * d as u32, p);
            for i in 0..=d {
                if partial[d - i].is_zero() || powers[i].is_zero() {
                    continue;
                }
                acc = acc.add(&dp_mul(&partial[d - i], &powers[i])?)?;
            }
            next.push(acc);
        }
        partial = next;
    }
    Ok(partial.swap_remove(k as usize))
}

/// `γ_k` of the copairing element
/// `c = γ₁(e₁₂)γ₁(e₃₄) − γ₁(e₁₃)γ₁(e₂₄) + γ₁(e₁₄)γ₁(e₂₃)` in `Γ^{2k}(Λ²F_p⁴)`.
pub fn copair_vector(k: u32, p: u32) -> Result<GammaElem> {
    let c = GammaElem::from_terms(
        6,
        2,
        p,
        [
            (vec![1, 0, 0, 0, 0, 1], 1),
            (vec![0, 1, 0, 0, 1, 0], -1),
            (vec![0, 0, 1, 1, 0, 0], 1),
        ],
    )?;
    dp_gamma(&c, k)
}

/// A homogeneous polynomial, read as an element of `S^n(V)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymPoly {
    degree: u32,
    poly: SparsePoly,
}

impl SymPoly {
    pub fn new(poly: SparsePoly, degree: u32) -> Result<Self> {
        if poly.terms().any(|(m, _)| m.degree() != degree) {
            return usage(format!("polynomial is not homogeneous of degree {degree}"));
        }
        Ok(Self { degree, poly })
    }

    pub fn from_terms(
        dim: usize,
        degree: u32,
        p: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, i64)>,
    ) -> Result<Self> {
        Self::new(SparsePoly::from_terms(dim, p, terms), degree)
    }

    pub fn dim(&self) -> usize {
        self.poly.nvars()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u32 {
        self.poly.modulus()
    }

    pub fn poly(&self) -> &SparsePoly {
        &self.poly
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            degree: self.degree + other.degree,
            poly: &self.poly * &other.poly,
        }
    }

    pub fn eval(&self, v: &[u32]) -> u32 {
        self.poly.eval_fp(v)
    }

    /// Lines `α_1 … α_d : c` in basis order.
    pub fn to_text(&self) -> String {
        let mut terms: Vec<_> = self.poly.terms().collect();
        terms.sort_by(|a, b| a.0.cmp(b.0));
        terms.iter().map(|(a, c)| format!("{a} : {c}\n")).collect()
    }
}

/// Matrix of contraction by `q`, `Γ^k → Γ^{k−n}`:
/// `γ_α ↦ Σ_β q_β γ_{α−β}`, dropping terms with a negative exponent.
pub fn contract_matrix(q: &SymPoly, k: u32) -> Result<MatFp> {
    let n = q.degree;
    if k < n {
        return usage(format!(
            "cannot contract degree {k} by a form of degree {n}"
        ));
    }
    let dim = q.dim();
    let source = gamma_basis(dim, k);
    let mut m = MatFp::zeros(monomial_count(dim, k - n), source.len(), q.modulus());
    for (col, alpha) in source.iter().enumerate() {
        for (beta, c) in q.poly.terms() {
            if let Some(rest) = alpha.checked_sub(beta) {
                let r = monomial_rank(&rest.0);
                let v = m.get(r, col) as i64 + c as i64;
                m.set(r, col, v);
            }
        }
    }
    Ok(m)
}

/// Matrix of multiplication by `q`, `S^m → S^{m+n}`.
pub fn mult_matrix(q: &SymPoly, m: u32) -> MatFp {
    let dim = q.dim();
    let source = gamma_basis(dim, m);
    let mut out = MatFp::zeros(monomial_count(dim, m + q.degree), source.len(), q.modulus());
    for (col, mu) in source.iter().enumerate() {
        for (beta, c) in q.poly.terms() {
            let r = monomial_rank(&mu.add(beta).0);
            let v = out.get(r, col) as i64 + c as i64;
            out.set(r, col, v);
        }
    }
    out
}

/// Splitting `Γ^{i+j} → Γ^i ⊗ Γ^j`; the target index of `γ_β⊗γ_δ` is
/// `rank(β)·|Γ^j| + rank(δ)`.
pub fn split_matrix(dim: usize, i: u32, j: u32, p: u32) -> MatFp {
    let left = gamma_basis(dim, i);
    let right_len = monomial_count(dim, j);
    let source = gamma_basis(dim, i + j);
    let mut m = MatFp::zeros(left.len() * right_len, source.len(), p);
    for (col, alpha) in source.iter().enumerate() {
        for (bi, beta) in left.iter().enumerate() {
            if let Some(rest) = alpha.checked_sub(beta) {
                m.set(bi * right_len + monomial_rank(&rest.0), col, 1);
            }
        }
    }
    m
}

/// Frobenius `Γ^{pn} → Γ^n`: `γ_α ↦ γ_{α/p}` when `p` divides every exponent.
pub fn frobenius_matrix(dim: usize, n: u32, p: u32) -> MatFp {
    let source = gamma_basis(dim, p * n);
    let mut m = MatFp::zeros(monomial_count(dim, n), source.len(), p);
    for (col, alpha) in source.iter().enumerate() {
        if alpha.0.iter().all(|e| e % p == 0) {
            let reduced: Vec<u32> = alpha.0.iter().map(|e| e / p).collect();
            m.set(monomial_rank(&reduced), col, 1);
        }
    }
    m
}

/// A basis vector `e_{i_1} ∧ ⋯ ∧ e_{i_m}` of `Λ^m`, indices increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaIndex(pub Vec<usize>);

/// Basis of `Λ^m(F^n)` in lexicographic order of subsets.
pub fn lambda_basis(n: usize, m: usize) -> Vec<LambdaIndex> {
    subsets(n, m).into_iter().map(LambdaIndex).collect()
}

/// Sorts `idx` and returns the sign of the sorting permutation, or `None`
/// when an index repeats (the wedge vanishes).
pub fn wedge_sign(idx: &[usize]) -> Option<(LambdaIndex, i64)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((LambdaIndex(v), sign))
}

/// Determinant mod `p` of a small square matrix given by rows.
pub fn det_mod(rows: &[Vec<u32>], p: u32) -> u32 {
    let n = rows.len();
    let p64 = p as u64;
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| (x % p) as u64).collect())
        .collect();
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if piv != c {
            a.swap(piv, c);
            det = (p64 - det) % p64;
        }
        det = det * a[c][c] % p64;
        let inv = crate::gf::inv_mod(a[c][c] as u32, p) as u64;
        for r in c + 1..n {
            let f = a[r][c] * inv % p64;
            if f == 0 {
                continue;
            }
            for j in c..n {
                a[r][j] = (a[r][j] + p64 - f * a[c][j] % p64) % p64;
            }
        }
    }
    det as u32
}

/// Coordinates of `u_1 ∧ ⋯ ∧ u_m` (rows of `u`) in [`lambda_basis`]: the
/// maximal minors on each column subset.
pub fn exterior_coords(u: &MatFp) -> Vec<u32> {
    let (m, n, p) = (u.rows(), u.cols(), u.modulus());
    subsets(n, m)
        .iter()
        .map(|cols| {
            let sub: Vec<Vec<u32>> = (0..m)
                .map(|r| cols.iter().map(|&c| u.get(r, c)).collect())
                .collect();
            det_mod(&sub, p)
        })
        .collect()
}

/// The `k`-th Plücker map: `γ_k(Λ^m U)` in `Γ^k(Λ^m F_p^n)`, for `U` spanned by
/// the rows of `u`. Requires `(p−1) | k`, which makes it basis independent.
pub fn plucker_gamma(u: &MatFp, k: u32) -> Result<GammaElem> {
    let p = u.modulus();
    if !k.is_multiple_of(p - 1) {
        return usage(format!("Plücker map needs (q-1) | k, got q={p}, k={k}"));
    }
    if u.rank() != u.rows() {
        return domain("basis vectors are linearly dependent");
    }
    Ok(divided_power_eval(&exterior_coords(u), k, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divided_power_examples() {
        let x = divided_power_eval(&[1, 1, 0, 0, 0, 0], 2, 3);
        assert_eq!(x.len(), 3);
        for a in [[2, 0, 0, 0, 0, 0], [1, 1, 0, 0, 0, 0], [0, 2, 0, 0, 0, 0]] {
            assert_eq!(x.coeff(&a), 1);
        }
        let e1 = divided_power_eval(&[1, 0, 0], 4, 3);
        assert_eq!(e1, GammaElem::basis(MultiIndex(vec![4, 0, 0]), 3));
        let v = [1, 2, 0, 1];
        let v2: Vec<u32> = v.iter().map(|x| 2 * x % 3).collect();
        assert_eq!(divided_power_eval(&v2, 4, 3), divided_power_eval(&v, 4, 3));
    }

    #[test]
    fn dp_mul_examples() {
        let g = |a: Vec<u32>| GammaElem::basis(MultiIndex(a), 3);
        let two = dp_mul(&g(vec![1, 0]), &g(vec![1, 0])).unwrap();
        assert_eq!(two.coeff(&[2, 0]), 2);
        assert!(dp_mul(&g(vec![1, 0]), &g(vec![2, 0])).unwrap().is_zero());
        assert_eq!(
            dp_mul(&g(vec![2, 0]), &g(vec![0, 1])).unwrap(),
            g(vec![2, 1])
        );
    }

    #[test]
    fn contraction_examples() {
        let q = SymPoly::from_terms(6, 2, 3, [(vec![1, 1, 0, 0, 0, 0], 1)]).unwrap();
        let m = contract_matrix(&q, 2).unwrap();
        let col = monomial_rank(&[1, 1, 0, 0, 0, 0]);
        assert_eq!(m.rows(), 1);
        assert_eq!(m.get(0, col), 1);
        let m3 = contract_matrix(&q, 3).unwrap();
        let col = monomial_rank(&[2, 1, 0, 0, 0, 0]);
        let row = monomial_rank(&[1, 0, 0, 0, 0, 0]);
        assert_eq!(m3.get(row, col), 1);
        assert_eq!((0..m3.rows()).filter(|&r| m3.get(r, col) != 0).count(), 1);
        assert!(matches!(contract_matrix(&q, 1), Err(Error::Usage(_))));
    }

    #[test]
    fn split_example() {
        let m = split_matrix(2, 1, 2, 5);
        let col = monomial_rank(&[2, 1]);
        let rj = monomial_count(2, 2);
        let mut hits: Vec<usize> = (0..m.rows()).filter(|&r| m.get(r, col) != 0).collect();
        hits.sort();
        let mut want = vec![
            monomial_rank(&[1, 0]) * rj + monomial_rank(&[1, 1]),
            monomial_rank(&[0, 1]) * rj + monomial_rank(&[2, 0]),
        ];
        want.sort();
        assert_eq!(hits, want);
        assert_eq!(split_matrix(3, 2, 0, 5), MatFp::identity(6, 5));
    }

    #[test]
    fn frobenius_examples() {
        let m = frobenius_matrix(6, 1, 3);
        let c = monomial_rank(&[3, 0, 0, 0, 0, 0]);
        assert_eq!(m.get(0, c), 1);
        let c = monomial_rank(&[2, 1, 0, 0, 0, 0]);
        assert!((0..m.rows()).all(|r| m.get(r, c) == 0));
    }

    #[test]
    fn copair_degree_one() {
        let c = copair_vector(1, 5).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.coeff(&[1, 0, 0, 0, 0, 1]), 1);
        assert_eq!(c.coeff(&[0, 1, 0, 0, 1, 0]), 4);
        assert_eq!(c.coeff(&[0, 0, 1, 1, 0, 0]), 1);
    }

    #[test]
    fn plucker_gamma_examples() {
        let u = MatFp::from_rows(3, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let g = plucker_gamma(&u, 4).unwrap();
        assert_eq!(g, GammaElem::basis(MultiIndex(vec![4, 0, 0, 0, 0, 0]), 3));
        let u2 = MatFp::from_rows(3, &[vec![1, 1, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        assert_eq!(plucker_gamma(&u2, 4).unwrap(), g);
        let u3 = MatFp::from_rows(3, &[vec![2, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        assert_eq!(
            plucker_gamma(&u3, 2).unwrap(),
            plucker_gamma(&u, 2).unwrap()
        );
        assert!(matches!(plucker_gamma(&u, 3), Err(Error::Usage(_))));
        let dep = MatFp::from_rows(3, &[vec![1, 2, 0, 0], vec![2, 1, 0, 0]]).unwrap();
        assert!(matches!(plucker_gamma(&dep, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn text_round_trip() {
        let c = copair_vector(2, 3).unwrap();
        let back = GammaElem::from_text(&c.to_text(), 6, 4, 3).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(&[1, 0]), Some((LambdaIndex(vec![0, 1]), -1)));
        assert_eq!(
            wedge_sign(&[2, 0, 1]),
            Some((LambdaIndex(vec![0, 1, 2]), 1))
        );
        assert_eq!(wedge_sign(&[1, 1]), None);
    }

    #[test]
    fn determinant() {
        assert_eq!(det_mod(&[vec![1, 2], vec![3, 4]], 7), 5);
        assert_eq!(det_mod(&[vec![0, 1], vec![1, 0]], 5), 4);
    }
}
