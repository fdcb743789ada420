//! Lines of `P³(F_q)` as Plücker points, the Gauss map of the Frobenius
//! foliation, the `d₂` matrices and their kernel, the point/line incidence
//! check, the Hodge diamond, and Euler characteristics of complete
//! intersections.
//!
//! Plücker coordinates are the 2×2 minors `p01, p02, p03, p12, p13, p23`. The
//! traditional coordinates with `q = q1q2 − q3q4 + q5q6` correspond to
//! `(q1, …, q6) = (p01, p23, p02, p13, p03, p12)`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Result};
use crate::exactla::gfq::{enumerate_subspaces, projective_points};
use crate::exactla::MatFp;
use crate::gf::{GaloisField, Gf};
use crate::monomial::subsets;
use crate::multilinear::{divided_power_eval, plucker_gamma};
use crate::poly::SparsePoly;

pub const PLUCKER_LABELS: [&str; 6] = ["p01", "p02", "p03", "p12", "p13", "p23"];

/// Position of `q1, …, q6` among the minor labels.
pub const TRADITIONAL_TO_MINOR: [usize; 6] = [0, 5, 1, 4, 2, 3];

/// A point of `P^N(F_q)` in normalized form (first nonzero coordinate 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PluckerPoint {
    pub coords: Vec<Gf>,
}

impl PluckerPoint {
    pub fn new(field: &GaloisField, coords: &[Gf]) -> Result<Self> {
        let Some(&lead) = coords.iter().find(|&&c| c != Gf(0)) else {
            return domain("the zero vector is not a projective point");
        };
        let inv = field.inv(lead)?;
        Ok(Self {
            coords: coords.iter().map(|&c| field.mul(c, inv)).collect(),
        })
    }

    pub fn residues(&self) -> Vec<u32> {
        self.coords.iter().map(|g| g.0).collect()
    }

    pub fn format(&self, field: &GaloisField) -> String {
        let parts: Vec<String> = self.coords.iter().map(|&c| field.format(c)).collect();
        format!("({})", parts.join(":"))
    }
}

/// `p01 p23 − p02 p13 + p03 p12`.
pub fn plucker_relation(field: &GaloisField, c: &[Gf]) -> Gf {
    let t1 = field.mul(c[0], c[5]);
    let t2 = field.mul(c[1], c[4]);
    let t3 = field.mul(c[2], c[3]);
    field.add(field.sub(t1, t2), t3)
}

/// The 2×2 minors of the `2 × n` matrix with rows `u` and `v`.
pub fn wedge2(field: &GaloisField, u: &[Gf], v: &[Gf]) -> Vec<Gf> {
    subsets(u.len(), 2)
        .iter()
        .map(|s| {
            let (i, j) = (s[0], s[1]);
            field.sub(field.mul(u[i], v[j]), field.mul(u[j], v[i]))
        })
        .collect()
}

/// The Plücker quadric `q` in the six minor variables.
pub fn plucker_quadric(p: u32) -> SparsePoly {
    SparsePoly::from_terms(
        6,
        p,
        [
            (vec![1, 0, 0, 0, 0, 1], 1),
            (vec![0, 1, 0, 0, 1, 0], -1),
            (vec![0, 0, 1, 1, 0, 0], 1),
        ],
    )
}

/// The hypersurface `b(x, x^p) = 0` of degree `p + 1`, where `b` is the
/// polarization of `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DLHypersurface {
    pub p: u32,
    pub form: SparsePoly,
}

impl DLHypersurface {
    pub fn new(p: u32) -> Self {
        let pairs = [(0usize, 1usize, 1i64), (2, 3, -1), (4, 5, 1)];
        let mut terms = Vec::new();
        for (a, b, sign) in pairs {
            let (ia, ib) = (TRADITIONAL_TO_MINOR[a], TRADITIONAL_TO_MINOR[b]);
            for (lo, hi) in [(ia, ib), (ib, ia)] {
                let mut e = vec![0u32; 6];
                e[lo] += 1;
                e[hi] += p;
                terms.push((e, sign));
            }
        }
        Self {
            p,
            form: SparsePoly::from_terms(6, p, terms),
        }
    }

    pub fn eval(&self, field: &GaloisField, x: &[Gf]) -> Gf {
        self.form.eval_gf(field, x)
    }
}

/// All `F_q`-points of the Plücker quadric in `P⁵`, i.e. the lines of `P³(F_q)`,
/// in the order of [`projective_points`].
pub fn enum_lines(q: u32) -> Result<Vec<PluckerPoint>> {
    let field = GaloisField::of_order(q)?;
    Ok(projective_points(&field, 6)
        .into_iter()
        .filter(|c| plucker_relation(&field, c) == Gf(0))
        .map(|coords| PluckerPoint { coords })
        .collect())
}

/// Lines of `P³(F_q)` together with an RREF basis of each, in
/// [`enum_lines`] order.
pub fn lines_with_bases(q: u32) -> Result<Vec<(PluckerPoint, Vec<Vec<Gf>>)>> {
    let field = GaloisField::of_order(q)?;
    let mut by_point: HashMap<PluckerPoint, Vec<Vec<Gf>>> = HashMap::new();
    let mut failure = None;
    enumerate_subspaces(&field, 4, 2, |b| {
        match PluckerPoint::new(&field, &wedge2(&field, &b[0], &b[1])) {
            Ok(pt) => {
                by_point.insert(pt, b.to_vec());
            }
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    enum_lines(q)?
        .into_iter()
        .map(|pt| match by_point.remove(&pt) {
            Some(b) => Ok((pt, b)),
            None => domain(format!("no plane maps to {:?}", pt.residues())),
        })
        .collect()
}

/// Plücker coordinates of `span(x^p, x)`, normalized. `x` is a point of
/// `P^n` over an extension of `F_p`, and `p` is the field characteristic.
pub fn gauss_map(field: &GaloisField, x: &[Gf]) -> Result<PluckerPoint> {
    if x.iter().all(|&c| c == Gf(0)) {
        return domain("the zero vector is not a projective point");
    }
    let xp: Vec<Gf> = x.iter().map(|&c| field.frobenius(c)).collect();
    let minors = wedge2(field, &xp, x);
    if minors.iter().all(|&m| m == Gf(0)) {
        return domain("x is an F_p-rational point; the Gauss map is undefined there");
    }
    PluckerPoint::new(field, &minors)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D2Data {
    pub p: u32,
    pub lines: Vec<PluckerPoint>,
    /// Rows `γ_{2(p−1)}(ℓ)`.
    pub high: MatFp,
    /// Rows `γ_{p−1}(ℓ)`.
    pub low: MatFp,
    /// Canonical basis of `{c : c·high = 0}`.
    pub kernel_high: MatFp,
    /// Canonical basis of `{c : c·high = 0 and c·low = 0}`.
    pub kernel: MatFp,
    pub rank_high: usize,
    pub rank: usize,
}

impl D2Data {
    pub fn kernel_dim(&self) -> usize {
        self.kernel.rows()
    }

    pub fn kernels_agree(&self) -> bool {
        self.kernel_high.same_row_space(&self.kernel)
    }
}

/// The matrices of `ℓ ↦ (γ_{2(p−1)}(ℓ), −γ_{p−1}(ℓ))` on the `F_p`-lines of
/// `P³` and their left kernels. The nonzero unit in front of the map does not
/// change the kernel.
pub fn d2_kernel(p: u32) -> Result<D2Data> {
    let lines = lines_with_bases(p)?;
    let (k_hi, k_lo) = (2 * (p - 1), p - 1);
    let rows: Vec<(Vec<i64>, Vec<i64>)> = lines
        .par_iter()
        .map(|(_, basis)| {
            let rows: Vec<Vec<i64>> = basis
                .iter()
                .map(|r| r.iter().map(|g| g.0 as i64).collect())
                .collect();
            let u = MatFp::from_rows(p, &rows)?;
            let to_i64 = |v: Vec<u32>| v.into_iter().map(i64::from).collect::<Vec<_>>();
            Ok((
                to_i64(plucker_gamma(&u, k_hi)?.to_dense()),
                to_i64(plucker_gamma(&u, k_lo)?.to_dense()),
            ))
        })
        .collect::<Result<_>>()?;
    let (hi_rows, lo_rows): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    let high = MatFp::from_rows(p, &hi_rows)?;
    let low = MatFp::from_rows(p, &lo_rows)?;
    let joint = MatFp::hstack(&[&high, &low.scale(-1)])?;
    let kernel_high = high.left_kernel_basis().row_space();
    let kernel = joint.left_kernel_basis().row_space();
    Ok(D2Data {
        p,
        lines: lines.into_iter().map(|(pt, _)| pt).collect(),
        rank_high: high.rank(),
        rank: joint.rank(),
        high,
        low,
        kernel_high,
        kernel,
    })
}

/// `x ∧ P = 0`: the point `x` of `P³` lies on the line with Plücker point `P`.
pub fn point_on_line(field: &GaloisField, x: &[Gf], line: &[Gf]) -> bool {
    let idx = |i: usize, j: usize| {
        subsets(4, 2)
            .iter()
            .position(|s| s == &[i, j])
            .expect("pair")
    };
    subsets(4, 3).iter().all(|t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        let a = field.mul(x[i], line[idx(j, k)]);
        let b = field.mul(x[j], line[idx(i, k)]);
        let c = field.mul(x[k], line[idx(i, j)]);
        field.add(field.sub(a, b), c) == Gf(0)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceReport {
    pub points: usize,
    pub lines: usize,
    pub row_sums: Vec<usize>,
    pub column_sums: Vec<usize>,
    pub incidences: usize,
    /// Point vectors `Σ_{P ∋ λ} P` annihilated by both `d₂` matrices.
    pub annihilated: usize,
    /// Rank of the incidence matrix over `F_p` (reported, not asserted).
    pub rank: usize,
}

/// Incidence matrix (points of `P³(F_p)` × lines) and the check that each
/// point vector lies in the kernel of `d₂`.
pub fn incidence_check(d2: &D2Data) -> Result<(MatFp, IncidenceReport)> {
    let p = d2.p;
    let field = GaloisField::prime(p)?;
    let points = projective_points(&field, 4);
    let mut m = MatFp::zeros(points.len(), d2.lines.len(), p);
    let mut row_sums = vec![0; points.len()];
    let mut column_sums = vec![0; d2.lines.len()];
    for (i, x) in points.iter().enumerate() {
        for (j, line) in d2.lines.iter().enumerate() {
            if point_on_line(&field, x, &line.coords) {
                m.set(i, j, 1);
                row_sums[i] += 1;
                column_sums[j] += 1;
            }
        }
    }
    let hi = m.mul(&d2.high)?;
    let lo = m.mul(&d2.low)?;
    let annihilated = (0..m.rows())
        .filter(|&r| hi.row(r).iter().all(|&x| x == 0) && lo.row(r).iter().all(|&x| x == 0))
        .count();
    let report = IncidenceReport {
        points: points.len(),
        lines: d2.lines.len(),
        incidences: row_sums.iter().sum(),
        row_sums,
        column_sums,
        annihilated,
        rank: m.rank(),
    };
    Ok((m, report))
}

/// `h^{0j}` of the small resolution.
pub const H0_ROW: [i64; 4] = [1, 0, 0, 1];
/// `h^j(F, Ω¹)` of the singular complete intersection.
pub const OMEGA1_OF_F: [i64; 4] = [0, 1, 89, 0];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeDiamond {
    /// `h[i][j] = h^{ij} = dim H^j(Ω^i)`.
    pub h: [[i64; 4]; 4],
}

impl HodgeDiamond {
    pub fn is_serre_symmetric(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| self.h[i][j] == self.h[3 - i][3 - j]))
    }
}

/// Leray assembly: `d₂` goes from the span of the lines to `H²(F, Ω¹)`, so
/// its kernel adds to `h^{11}` and its image is removed from `h^{12}`.
pub fn hodge_diamond(kernel_dim: usize, line_count: usize) -> Result<HodgeDiamond> {
    let kernel_dim = kernel_dim as i64;
    let rank = line_count as i64 - kernel_dim;
    if rank < 0 || rank > OMEGA1_OF_F[2] {
        return usage(format!(
            "d2 rank {rank} is incompatible with h^2(F, Ω¹) = {}",
            OMEGA1_OF_F[2]
        ));
    }
    let mut h = [[0i64; 4]; 4];
    h[0] = H0_ROW;
    h[1] = [
        OMEGA1_OF_F[0],
        OMEGA1_OF_F[1] + kernel_dim,
        OMEGA1_OF_F[2] - rank,
        OMEGA1_OF_F[3],
    ];
    for j in 0..4 {
        h[2][j] = h[1][3 - j];
        h[3][j] = h[0][3 - j];
    }
    Ok(HodgeDiamond { h })
}

fn binom_i(n: i128, k: i128) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) / (i + 1))
}

/// `χ(P^n, O(k)) = C(k + n, n)` as a polynomial in `k`.
pub fn chi_line_bundle(n: u32, k: i64) -> i128 {
    let (n, k) = (n as i128, k as i128);
    let mut num = 1i128;
    for i in 1..=n {
        num *= k + i;
    }
    num / (1..=n).product::<i128>()
}

/// `χ(Ω^j_{P^n}(k))` from Bott's formula.
pub fn chi_twisted_forms(n: u32, j: u32, k: i64) -> i128 {
    let (n, j, k) = (n as i128, j as i128, k as i128);
    if j < 0 || j > n {
        return 0;
    }
    let mut chi = 0i128;
    if k > j {
        chi += binom_i(k + n - j, k) * binom_i(k - 1, j);
    }
    if k == 0 {
        chi += if j % 2 == 0 { 1 } else { -1 };
    }
    if k < j - n {
        let top = binom_i(-k + j, -k) * binom_i(-k - 1, n - j);
        chi += if n % 2 == 0 { top } else { -top };
    }
    chi
}

/// `χ(Ω^j_{P^n}(k))` from the Euler sequence recursion
/// `χ(Ω^j(k)) = C(n+1, j) χ(O(k−j)) − χ(Ω^{j−1}(k))`.
pub fn chi_twisted_forms_euler(n: u32, j: u32, k: i64) -> i128 {
    let mut chi = chi_line_bundle(n, k);
    for i in 1..=j {
        chi = binom_i(n as i128 + 1, i as i128) * chi_line_bundle(n, k - i as i64) - chi;
    }
    chi
}

/// `χ(Ω^j_Y)` for a smooth complete intersection `Y ⊂ P^n` of the given
/// multidegree, valid for `0 ≤ j < dim Y`.
///
/// In K-theory `Ω_Y = Ω_{P^n}|_Y − N^*` with `N^* = ⊕ O(−d_i)`, so
/// `Ω^j_Y = Σ_b (−1)^b Ω^{j−b}_{P^n}|_Y ⊗ S^b(N^*)`, and restriction to `Y` is
/// the Koszul alternating sum over subsets of the degrees.
pub fn ci_chi(n: u32, degrees: &[u32], j: u32) -> Result<i128> {
    let c = degrees.len() as u32;
    if c == 0 || c > n {
        return usage(format!("need 1 <= codimension <= {n}, got {c}"));
    }
    if degrees.contains(&0) {
        return usage("degrees must be positive");
    }
    let dim = n - c;
    if j >= dim {
        return usage(format!("j must satisfy 0 <= j < {dim} (dimension of Y)"));
    }
    // Koszul twists: (−1)^{|S|} O(−Σ_{i∈S} d_i)
    let mut koszul: Vec<(i64, i128)> = vec![(0, 1)];
    for &d in degrees {
        let more: Vec<(i64, i128)> = koszul.iter().map(|&(t, s)| (t - d as i64, -s)).collect();
        koszul.extend(more);
    }
    // twists of S^b(N^*) for b = 0..=j, as (twist, multiplicity)
    let mut sym: Vec<Vec<i64>> = vec![vec![0]];
    for b in 1..=j as usize {
        let mut next = Vec::new();
        for idx in crate::monomial::monomials(c as usize, b as u32) {
            let twist: i64 = idx
                .0
                .iter()
                .zip(degrees)
                .map(|(&e, &d)| -(e as i64) * d as i64)
                .sum();
            next.push(twist);
        }
        sym.push(next);
    }
    let mut chi = 0i128;
    for (b, twists) in sym.iter().enumerate() {
        let sign_b = if b % 2 == 0 { 1 } else { -1 };
        for &t in twists {
            for &(kt, ks) in &koszul {
                chi += sign_b * ks * chi_twisted_forms(n, j - b as u32, t + kt);
            }
        }
    }
    Ok(chi)
}

/// Rows of `γ_k` of a set of `F_p`-points given by coordinates; used to
/// compare with [`d2_kernel`] rows built from bases.
pub fn gamma_rows(points: &[PluckerPoint], k: u32, p: u32) -> Result<MatFp> {
    let rows: Vec<Vec<i64>> = points
        .iter()
        .map(|pt| {
            divided_power_eval(&pt.residues(), k, p)
                .to_dense()
                .into_iter()
                .map(i64::from)
                .collect()
        })
        .collect();
    MatFp::from_rows(p, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    #[test]
    fn line_counts() {
        assert_eq!(enum_lines(2).unwrap().len(), 35);
        assert_eq!(enum_lines(3).unwrap().len(), 130);
        assert_eq!(enum_lines(4).unwrap().len(), 357);
    }

    #[test]
    fn gauss_map_on_coordinate_line() {
        let f9 = GaloisField::new(3, 2).unwrap();
        let t = f9.t().unwrap();
        assert_eq!(f9.mul(t, t), f9.from_int(-1));
        let pt = gauss_map(&f9, &[f9.one(), t, Gf(0), Gf(0)]).unwrap();
        assert_eq!(pt.coords, vec![Gf(1), Gf(0), Gf(0), Gf(0), Gf(0), Gf(0)]);
        let rational = [f9.one(), f9.from_int(2), Gf(0), f9.one()];
        assert!(matches!(gauss_map(&f9, &rational), Err(Error::Domain(_))));
    }

    #[test]
    fn hodge_table() {
        let d = hodge_diamond(41, 130).unwrap();
        assert_eq!(
            d.h,
            [[1, 0, 0, 1], [0, 42, 0, 0], [0, 0, 42, 0], [1, 0, 0, 1]]
        );
        assert!(d.is_serre_symmetric());
    }

    #[test]
    fn ci_chi_examples() {
        assert_eq!(ci_chi(5, &[2, 4], 0).unwrap(), 0);
        assert_eq!(ci_chi(5, &[2, 4], 1).unwrap(), 88);
        assert_eq!(ci_chi(3, &[1], 1).unwrap(), -1);
        assert!(matches!(ci_chi(5, &[2, 4], 3), Err(Error::Usage(_))));
        assert!(matches!(ci_chi(5, &[], 0), Err(Error::Usage(_))));
    }

    #[test]
    fn quintic_and_quartic_surfaces() {
        // quintic threefold: χ(O) = 0, χ(Ω¹) = −h^{11} + h^{12} = −1 + 101
        assert_eq!(ci_chi(4, &[5], 0).unwrap(), 0);
        assert_eq!(ci_chi(4, &[5], 1).unwrap(), 100);
        // K3 quartic: χ(O) = 2, χ(Ω¹) = −20
        assert_eq!(ci_chi(3, &[4], 0).unwrap(), 2);
        assert_eq!(ci_chi(3, &[4], 1).unwrap(), -20);
    }

    #[test]
    fn bott_matches_euler_sequence() {
        for n in 1..=5 {
            for j in 0..=n {
                for k in -10..=10 {
                    assert_eq!(
                        chi_twisted_forms(n, j, k),
                        chi_twisted_forms_euler(n, j, k),
                        "n={n} j={j} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn dl_form_matches_traditional_formula() {
        let h = DLHypersurface::new(3);
        // q1 q2^3 term: q1 = p01 (index 0), q2 = p23 (index 5)
        assert_eq!(h.form.coeff(&[1, 0, 0, 0, 0, 3]), 1);
        assert_eq!(h.form.coeff(&[3, 0, 0, 0, 0, 1]), 1);
        // −q3 q4^3: q3 = p02, q4 = p13
        assert_eq!(h.form.coeff(&[0, 1, 0, 0, 3, 0]), 2);
        assert_eq!(h.form.len(), 6);
    }
}
