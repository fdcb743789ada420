//! Generators of `GL_n(F_p)` and its parabolic subgroups, the induced actions
//! on `Λ²V` and `Γ^k(Λ²V)`, invariant subspaces, and the mod `p²` lifting
//! computation for unipotent elements.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Result};
use crate::exactla::MatFp;
use crate::gf::{is_prime, primitive_root};
use crate::monomial::{monomial_count, subsets, MultiIndex};
use crate::multilinear::{copair_vector, divided_power_eval, dp_mul, gamma_basis, GammaElem};

/// Generators of the stabilizer of `span(e_1..e_m)` in `GL_n(F_p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub n: usize,
    pub p: u32,
    /// Flag dimension; `m = n` means all of `GL_n`.
    pub m: usize,
    pub matrices: Vec<MatFp>,
}

fn elementary(n: usize, p: u32, i: usize, j: usize) -> MatFp {
    let mut g = MatFp::identity(n, p);
    g.set(i, j, 1);
    g
}

/// Torus elements first (they make the first elimination diagonal), then
/// transvections inside each diagonal block, then `I + E_{1,m+1}`.
pub fn parabolic_generators(n: usize, p: u32, m: usize) -> Result<GeneratorSet> {
    if m == 0 || m > n {
        return usage(format!("flag dimension {m} outside 1..={n}"));
    }
    if !is_prime(p) || p >= 256 {
        return usage(format!("p must be a prime below 256, got {p}"));
    }
    let mut matrices = Vec::new();
    let w = primitive_root(p);
    if w != 1 {
        for i in 0..n {
            let mut g = MatFp::identity(n, p);
            g.set(i, i, w as i64);
            matrices.push(g);
        }
    }
    let blocks: Vec<(usize, usize)> = if m == n {
        vec![(0, n)]
    } else {
        vec![(0, m), (m, n)]
    };
    for (lo, hi) in blocks {
        for i in lo..hi {
            for j in lo..hi {
                if i != j {
                    matrices.push(elementary(n, p, i, j));
                }
            }
        }
    }
    if m < n {
        matrices.push(elementary(n, p, 0, m));
    }
    Ok(GeneratorSet { n, p, m, matrices })
}

fn check_invertible(g: &MatFp) -> Result<()> {
    if !g.is_square() {
        return usage(format!(
            "expected a square matrix, got {}x{}",
            g.rows(),
            g.cols()
        ));
    }
    if g.rank() != g.rows() {
        return domain("matrix is singular");
    }
    Ok(())
}

/// `Λ²g` in the basis `e_ij`, `i < j`, lexicographic.
pub fn induced_lambda2(g: &MatFp) -> Result<MatFp> {
    check_invertible(g)?;
    let (n, p) = (g.rows(), g.modulus());
    let pairs = subsets(n, 2);
    let mut out = MatFp::zeros(pairs.len(), pairs.len(), p);
    for (c, src) in pairs.iter().enumerate() {
        let (i, j) = (src[0], src[1]);
        for (r, dst) in pairs.iter().enumerate() {
            let (a, b) = (dst[0], dst[1]);
            let minor =
                g.get(a, i) as i64 * g.get(b, j) as i64 - g.get(b, i) as i64 * g.get(a, j) as i64;
            out.set(r, c, minor);
        }
    }
    Ok(out)
}

/// `Γ^k(h)` acting on elements: `γ_α ↦ ∏_i γ_{α_i}(h e_i)`.
pub struct GammaAction {
    dim: usize,
    p: u32,
    // powers[i][a] = γ_a(h e_i)
    powers: Vec<Vec<GammaElem>>,
}

impl GammaAction {
    pub fn new(h: &MatFp, k: u32) -> Result<Self> {
        check_invertible(h)?;
        let (dim, p) = (h.rows(), h.modulus());
        let powers = (0..dim)
            .map(|i| {
                let col: Vec<u32> = (0..dim).map(|r| h.get(r, i)).collect();
                (0..=k).map(|a| divided_power_eval(&col, a, p)).collect()
            })
            .collect();
        Ok(Self { dim, p, powers })
    }

    fn image_of_basis(&self, alpha: &MultiIndex) -> GammaElem {
        let mut acc = GammaElem::one(self.dim, self.p);
        for (i, &a) in alpha.0.iter().enumerate() {
            if a > 0 {
                acc = dp_mul(&acc, &self.powers[i][a as usize]).expect("same space");
            }
        }
        acc
    }

    pub fn apply(&self, x: &GammaElem) -> GammaElem {
        let mut out = GammaElem::zero(self.dim, x.degree(), self.p);
        for (alpha, c) in x.terms() {
            let img = self.image_of_basis(alpha).scale(c as i64);
            out = out.add(&img).expect("same degree");
        }
        out
    }

    pub fn apply_dense(&self, k: u32, v: &[u32]) -> Vec<u32> {
        let x = GammaElem::from_dense(self.dim, k, self.p, v).expect("dimension checked by caller");
        self.apply(&x).to_dense()
    }
}

/// Matrix of `Γ^k(h)` on the monomial basis.
pub fn induced_gamma(h: &MatFp, k: u32) -> Result<MatFp> {
    let action = GammaAction::new(h, k)?;
    let (dim, p) = (h.rows(), h.modulus());
    let basis = gamma_basis(dim, k);
    let columns: Vec<Vec<u32>> = basis
        .par_iter()
        .map(|alpha| action.image_of_basis(alpha).to_dense())
        .collect();
    let n = basis.len();
    let mut m = MatFp::zeros(n, n, p);
    for (c, col) in columns.iter().enumerate() {
        for (r, &v) in col.iter().enumerate() {
            if v != 0 {
                m.set(r, c, v as i64);
            }
        }
    }
    Ok(m)
}

/// Canonical basis of the common fixed space of `rep(g)` over the generators,
/// from the kernel of the stacked `rep(g) − I`.
pub fn invariant_subspace(
    gens: &GeneratorSet,
    rep: impl Fn(&MatFp) -> Result<MatFp>,
    dim: usize,
) -> Result<MatFp> {
    let p = gens.p;
    let blocks = gens
        .matrices
        .iter()
        .map(|g| {
            let r = rep(g)?;
            if r.rows() != dim || r.cols() != dim {
                return usage("representation has the wrong dimension");
            }
            r.sub(&MatFp::identity(dim, p))
        })
        .collect::<Result<Vec<_>>>()?;
    if blocks.is_empty() {
        return Ok(MatFp::identity(dim, p));
    }
    let refs: Vec<&MatFp> = blocks.iter().collect();
    Ok(MatFp::vstack(&refs)?.kernel_basis().row_space())
}

/// Same subspace as [`invariant_subspace`], but eliminating one generator at
/// a time and applying each action directly to the surviving basis vectors.
/// `actions[g](v)` must return the image of the dense vector `v`.
pub fn invariants_by_action<F>(dim: usize, p: u32, actions: &[F]) -> Result<MatFp>
where
    F: Fn(&[u32]) -> Vec<u32> + Sync,
{
    let mut basis = MatFp::identity(dim, p);
    for act in actions {
        if basis.rows() == 0 {
            break;
        }
        let rows: Vec<Vec<i64>> = (0..basis.rows())
            .into_par_iter()
            .map(|r| {
                let v = basis.row_vec(r);
                act(&v)
                    .iter()
                    .zip(&v)
                    .map(|(&a, &b)| a as i64 - b as i64)
                    .collect()
            })
            .collect();
        let moved = MatFp::from_rows(p, &rows)?;
        let combos = moved.left_kernel_basis();
        basis = combos.mul(&basis)?;
    }
    Ok(basis.row_space())
}

/// Invariants of `Γ^k(Λ²V)` under the generators, computed by action.
pub fn gamma_lambda2_invariants(gens: &GeneratorSet, k: u32) -> Result<MatFp> {
    let dim = gens.n * (gens.n - 1) / 2;
    let actions = gens
        .matrices
        .iter()
        .map(|g| GammaAction::new(&induced_lambda2(g)?, k))
        .collect::<Result<Vec<_>>>()?;
    let closures: Vec<_> = actions
        .iter()
        .map(|a| move |v: &[u32]| a.apply_dense(k, v))
        .collect();
    invariants_by_action(monomial_count(dim, k), gens.p, &closures)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub p: u32,
    pub low_degree: u32,
    pub high_degree: u32,
    pub dims: (usize, usize),
    pub gamma_v1_low: bool,
    pub gamma_v1_high: bool,
    pub copair_high: bool,
    /// Every basis vector re-checked to be fixed by every generator.
    pub pointwise_fixed: bool,
    pub basis_low: Vec<Vec<u32>>,
    pub basis_high: Vec<Vec<u32>>,
}

/// Invariants of `Γ^{p−1}(Λ²F_p⁴)` and `Γ^{2(p−1)}(Λ²F_p⁴)` under the
/// stabilizer of `V₁ = span(e₁, e₂)`.
pub fn prop_invariants_report(p: u32) -> Result<InvariantsReport> {
    if ![3, 5, 7].contains(&p) {
        return usage(format!(
            "invariants are supported for p in {{3, 5, 7}}, got {p}"
        ));
    }
    let gens = parabolic_generators(4, p, 2)?;
    let (k1, k2) = (p - 1, 2 * (p - 1));
    let inv1 = gamma_lambda2_invariants(&gens, k1)?;
    let inv2 = gamma_lambda2_invariants(&gens, k2)?;
    let mut e12 = vec![0; 6];
    e12[0] = 1;
    let g1 = divided_power_eval(&e12, k1, p).to_dense();
    let g2 = divided_power_eval(&e12, k2, p).to_dense();
    let c = copair_vector(k1, p)?.to_dense();

    let mut fixed = true;
    for g in &gens.matrices {
        let l2 = induced_lambda2(g)?;
        for (inv, k) in [(&inv1, k1), (&inv2, k2)] {
            let act = GammaAction::new(&l2, k)?;
            fixed &= (0..inv.rows()).all(|r| {
                let v = inv.row_vec(r);
                act.apply_dense(k, &v) == v
            });
        }
    }
    let rows = |m: &MatFp| (0..m.rows()).map(|r| m.row_vec(r)).collect::<Vec<_>>();
    Ok(InvariantsReport {
        p,
        low_degree: k1,
        high_degree: k2,
        dims: (inv1.rows(), inv2.rows()),
        gamma_v1_low: inv1.row_space_contains(&g1),
        gamma_v1_high: inv2.row_space_contains(&g2),
        copair_high: inv2.row_space_contains(&c),
        pointwise_fixed: fixed,
        basis_low: rows(&inv1),
        basis_high: rows(&inv2),
    })
}

/// Square matrix over `Z/mZ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModMatrix {
    pub n: usize,
    pub modulus: u64,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1 % modulus;
        }
        Self { n, modulus, data }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut data = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] = (data[i * n + j] + a * other.get(k, j)) % self.modulus;
                }
            }
        }
        Self {
            n,
            modulus: self.modulus,
            data,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.n, self.modulus);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.data
            .chunks(self.n.max(1))
            .map(<[u64]>::to_vec)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftOutcome {
    /// `(I + N + pP)^p mod p²`.
    pub power: ModMatrix,
    /// `I + pN mod p²`.
    pub expected: ModMatrix,
    pub matches_expected: bool,
    pub expected_is_identity: bool,
}

/// Raises the lift `I + N + pP` of `I + N` to the `p`-th power mod `p²`.
/// Entries of `N` and `P` are lifted to `0..p`.
pub fn lift_obstruction(n_mat: &MatFp, p_mat: &MatFp, p: u32) -> Result<LiftOutcome> {
    if p == 2 {
        return usage("the lifting computation needs p >= 3");
    }
    if n_mat.modulus() != p || p_mat.modulus() != p {
        return usage("matrices must be given mod p");
    }
    if !n_mat.is_square() || n_mat.rows() != p_mat.rows() || n_mat.cols() != p_mat.cols() {
        return usage("N and P must be square of the same size");
    }
    let n = n_mat.rows();
    for i in 0..n {
        for j in 0..n {
            let s: u64 = (0..n)
                .map(|k| n_mat.get(i, k) as u64 * n_mat.get(k, j) as u64)
                .sum();
            if s != 0 {
                return domain("N^2 is not zero");
            }
        }
    }
    let m = (p as u64) * (p as u64);
    let mut lift = ModMatrix::identity(n, m);
    let mut expected = ModMatrix::identity(n, m);
    for i in 0..n {
        for j in 0..n {
            let (nv, pv) = (n_mat.get(i, j) as u64, p_mat.get(i, j) as u64);
            lift.data[i * n + j] = (lift.data[i * n + j] + nv + p as u64 * pv) % m;
            expected.data[i * n + j] = (expected.data[i * n + j] + p as u64 * nv) % m;
        }
    }
    let power = lift.pow(p as u64);
    Ok(LiftOutcome {
        matches_expected: power == expected,
        expected_is_identity: expected == ModMatrix::identity(n, m),
        power,
        expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    #[test]
    fn rank_one_group() {
        let g = parabolic_generators(1, 3, 1).unwrap();
        assert_eq!(g.matrices, vec![MatFp::from_rows(3, &[vec![2]]).unwrap()]);
    }

    #[test]
    fn parabolic_preserves_flag() {
        let g = parabolic_generators(4, 3, 2).unwrap();
        for m in &g.matrices {
            assert_eq!(m.get(2, 0), 0);
            assert_eq!(m.get(3, 0), 0);
            assert_eq!(m.get(2, 1), 0);
            assert_eq!(m.get(3, 1), 0);
        }
    }

    #[test]
    fn lambda2_examples() {
        let p = 3;
        assert_eq!(
            induced_lambda2(&MatFp::identity(4, p)).unwrap(),
            MatFp::identity(6, p)
        );
        let mut d = MatFp::identity(4, p);
        d.set(0, 0, 2);
        let mut want = MatFp::identity(6, p);
        for i in 0..3 {
            want.set(i, i, 2);
        }
        assert_eq!(induced_lambda2(&d).unwrap(), want);
        // e1 -> e1 + e2
        let t = elementary(4, p, 1, 0);
        let l = induced_lambda2(&t).unwrap();
        // columns e12, e13, e14; rows e12=0, e13=1, e14=2, e23=3, e24=4
        assert_eq!(
            l.apply(&[1, 0, 0, 0, 0, 0]).unwrap(),
            vec![1, 0, 0, 0, 0, 0]
        );
        assert_eq!(
            l.apply(&[0, 1, 0, 0, 0, 0]).unwrap(),
            vec![0, 1, 0, 1, 0, 0]
        );
        assert_eq!(
            l.apply(&[0, 0, 1, 0, 0, 0]).unwrap(),
            vec![0, 0, 1, 0, 1, 0]
        );
        assert!(matches!(
            induced_lambda2(&MatFp::zeros(4, 4, p)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn gamma_of_scalar() {
        let p = 5;
        let h = MatFp::identity(3, p).scale(2);
        let want = MatFp::identity(10, p).scale(8);
        assert_eq!(induced_gamma(&h, 3).unwrap(), want);
        assert_eq!(
            induced_gamma(&MatFp::identity(3, p), 4).unwrap(),
            MatFp::identity(15, p)
        );
    }

    #[test]
    fn trivial_generators_fix_everything() {
        let gens = GeneratorSet {
            n: 2,
            p: 3,
            m: 2,
            matrices: vec![],
        };
        let v = invariant_subspace(&gens, |g| Ok(g.clone()), 2).unwrap();
        assert_eq!(v, MatFp::identity(2, 3));
    }

    #[test]
    fn lift_examples() {
        let p = 3;
        let z = MatFp::zeros(2, 2, p);
        let pm = MatFp::from_rows(p, &[vec![1, 2], vec![0, 1]]).unwrap();
        let out = lift_obstruction(&z, &pm, p).unwrap();
        assert_eq!(out.power, ModMatrix::identity(2, 9));
        let n = MatFp::from_rows(p, &[vec![0, 1], vec![0, 0]]).unwrap();
        let out = lift_obstruction(&n, &z, p).unwrap();
        assert!(out.matches_expected);
        assert!(!out.expected_is_identity);
        assert_eq!(out.power.rows(), vec![vec![1, 3], vec![0, 1]]);
        assert!(matches!(
            lift_obstruction(&n, &z.clone(), 2),
            Err(Error::Usage(_))
        ));
        let bad = MatFp::from_rows(p, &[vec![1, 1], vec![0, 0]]).unwrap();
        assert!(matches!(
            lift_obstruction(&bad, &z, p),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn unsupported_prime_rejected() {
        assert!(matches!(prop_invariants_report(11), Err(Error::Usage(_))));
    }
}
