//! Finite geometry behind supersingular K3 pencils in characteristic 2: the
//! hermitian form on `F_{p²}⁴`, the bar involution of `Λ²`, its `F_p`-form
//! `W` with the quadratic form `ψ`, the Fermat surface `X_p` and its lines,
//! and characteristic subspaces (period points).
//!
//! `Λ²` coordinates are ordered `e12, e13, e14, e23, e24, e34`.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Result};
use crate::exactla::gfq::{enumerate_subspaces, projective_points, rref_gf, subspace_dim, GfVec};
use crate::gf::{GaloisField, Gf};
use crate::hirokado::wedge2;

/// Index of the complementary pair: `e12 ↔ e34`, `e13 ↔ e24`, `e14 ↔ e23`.
pub const COMPLEMENT: [usize; 6] = [5, 4, 3, 2, 1, 0];
/// Sign of `e_I ∧ e_{I^c}` relative to `e1∧e2∧e3∧e4`.
pub const WEDGE_SIGN: [i64; 6] = [1, -1, 1, 1, -1, 1];

fn quadratic_field(p: u32) -> Result<GaloisField> {
    GaloisField::new(p, 2)
}

/// `F_{p²}⁴` with the hermitian form `⟨u, v⟩ = Σ ū_i v_i` and
/// `w = e1∧e2∧e3∧e4`, for which `⟨w, w⟩ = 1`.
#[derive(Debug, Clone)]
pub struct HermitianSpace {
    pub p: u32,
    pub field: GaloisField,
}

impl HermitianSpace {
    pub fn new(p: u32) -> Result<Self> {
        Ok(Self {
            p,
            field: quadratic_field(p)?,
        })
    }

    pub fn conj(&self, a: Gf) -> Gf {
        self.field.frobenius(a)
    }

    /// Works for any number of coordinates, so it also serves `Λ²` and `Λ⁴`
    /// in their orthonormal bases.
    pub fn form(&self, u: &[Gf], v: &[Gf]) -> Gf {
        self.field.sum(
            u.iter()
                .zip(v)
                .map(|(&a, &b)| self.field.mul(self.conj(a), b)),
        )
    }

    pub fn w_norm(&self) -> Gf {
        self.form(&[self.field.one()], &[self.field.one()])
    }

    /// `Σ x_i^{p+1}`, the Fermat equation; equals `⟨x, x⟩`.
    pub fn fermat(&self, x: &[Gf]) -> Gf {
        self.field
            .sum(x.iter().map(|&a| self.field.pow(a, self.p as u64 + 1)))
    }

    /// `u ∧ v` as a multiple of `w`, for `u, v ∈ Λ²`.
    pub fn wedge_pairing(&self, u: &[Gf], v: &[Gf]) -> Gf {
        let f = &self.field;
        f.sum((0..6).map(|i| {
            let t = f.mul(u[i], v[COMPLEMENT[i]]);
            if WEDGE_SIGN[i] < 0 {
                f.neg(t)
            } else {
                t
            }
        }))
    }
}

/// The semilinear involution of `Λ²` defined by `u ∧ v = ⟨ū, v⟩ w`:
/// `bar(Σ c_I e_I) = Σ sign_I · c̄_I · e_{I^c}`.
#[derive(Debug, Clone)]
pub struct BarInvolution {
    pub space: HermitianSpace,
}

impl BarInvolution {
    pub fn apply(&self, u: &[Gf]) -> Vec<Gf> {
        let f = &self.space.field;
        let mut out = vec![Gf(0); 6];
        for i in 0..6 {
            let c = self.space.conj(u[i]);
            out[COMPLEMENT[i]] = if WEDGE_SIGN[i] < 0 { f.neg(c) } else { c };
        }
        out
    }
}

pub fn bar_involution(p: u32) -> Result<BarInvolution> {
    Ok(BarInvolution {
        space: HermitianSpace::new(p)?,
    })
}

/// A quadratic form `Σ_{i≤j} a_ij y_i y_j` with `F_p` coefficients, evaluated
/// over any field of characteristic `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadForm {
    pub p: u32,
    /// Upper triangular coefficients, `coef[i][j]` for `i <= j`.
    pub coef: Vec<Vec<u32>>,
}

impl QuadForm {
    pub fn dim(&self) -> usize {
        self.coef.len()
    }

    /// `y1 y2 + y3 y4 + …`, `h` hyperbolic planes.
    pub fn split(p: u32, h: usize) -> Self {
        let mut coef = vec![vec![0; 2 * h]; 2 * h];
        for i in 0..h {
            coef[2 * i][2 * i + 1] = 1;
        }
        Self { p, coef }
    }

    /// `h` hyperbolic planes followed by the anisotropic plane `x² + xy + y²`
    /// (char 2 only).
    pub fn non_split_char2(h: usize) -> Self {
        let mut q = Self::split(2, h + 1);
        let n = 2 * h;
        q.coef[n][n] = 1;
        q.coef[n][n + 1] = 1;
        q.coef[n + 1][n + 1] = 1;
        q
    }

    pub fn eval(&self, f: &GaloisField, y: &[Gf]) -> Gf {
        let mut acc = f.zero();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let a = self.coef[i][j];
                if a != 0 {
                    let t = f.mul(f.from_int(a as i64), f.mul(y[i], y[j]));
                    acc = f.add(acc, t);
                }
            }
        }
        acc
    }

    pub fn polar(&self, f: &GaloisField, y: &[Gf], z: &[Gf]) -> Gf {
        let mut acc = f.zero();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let a = self.coef[i][j];
                if a != 0 {
                    let t = f.add(f.mul(y[i], z[j]), f.mul(y[j], z[i]));
                    acc = f.add(acc, f.mul(f.from_int(a as i64), t));
                }
            }
        }
        acc
    }

    pub fn is_totally_isotropic(&self, f: &GaloisField, rows: &[GfVec]) -> bool {
        rows.iter().all(|r| self.eval(f, r) == Gf(0))
            && (0..rows.len())
                .all(|i| (i + 1..rows.len()).all(|j| self.polar(f, &rows[i], &rows[j]) == Gf(0)))
    }
}

/// The `F_p`-form `W` of `Λ²F_{p²}⁴` fixed by the bar involution, with basis
/// `c e_I + sign_I c̄ e_{I^c}` for `c ∈ {1, ζ}` and `I = 12, 13, 14`, where
/// `ζ = t` generates `F_{p²}` (for `p = 2`, `ζ̄ = ζ⁻¹`).
#[derive(Debug, Clone)]
pub struct WForm {
    pub space: HermitianSpace,
    /// Basis vectors in `Λ²` coordinates.
    pub basis: Vec<GfVec>,
    /// `ψ` in the coordinates of `basis`.
    pub psi: QuadForm,
    inverse: Vec<GfVec>,
}

/// `ψ` on `Λ²`: `γ₂(u) = ψ(u)·w`, i.e. `c12 c34 − c13 c24 + c14 c23`.
pub fn psi_lambda(f: &GaloisField, u: &[Gf]) -> Gf {
    let t1 = f.mul(u[0], u[5]);
    let t2 = f.mul(u[1], u[4]);
    let t3 = f.mul(u[2], u[3]);
    f.add(f.sub(t1, t2), t3)
}

fn invert(f: &GaloisField, m: &[GfVec]) -> Result<Vec<GfVec>> {
    let n = m.len();
    let mut aug: Vec<GfVec> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            row
        })
        .collect();
    let pivots = rref_gf(f, &mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return domain("basis matrix is singular");
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn row_times(f: &GaloisField, y: &[Gf], m: &[GfVec]) -> GfVec {
    let cols = m[0].len();
    (0..cols)
        .map(|c| f.sum(y.iter().zip(m).map(|(&a, r)| f.mul(a, r[c]))))
        .collect()
}

impl WForm {
    /// `Σ y_m b_m` for coordinates over `F_{p²}`.
    pub fn to_lambda(&self, y: &[Gf]) -> GfVec {
        row_times(&self.space.field, y, &self.basis)
    }

    /// Coordinates over `F_{p²}` of a vector of `Λ²`.
    pub fn coords(&self, u: &[Gf]) -> GfVec {
        row_times(&self.space.field, u, &self.inverse)
    }

    /// `F_p` coordinates if `u` lies in `W`.
    pub fn rational_coords(&self, u: &[Gf]) -> Option<Vec<u32>> {
        let f = &self.space.field;
        let y = self.coords(u);
        y.iter()
            .all(|&c| f.in_prime_field(c))
            .then(|| y.iter().map(|c| c.0).collect())
    }

    pub fn psi_rational(&self, y: &[u32]) -> u32 {
        let y: Vec<Gf> = y.iter().map(|&c| Gf(c)).collect();
        self.psi.eval(&self.space.field, &y).0
    }
}

pub fn w_basis_and_psi(p: u32) -> Result<WForm> {
    let space = HermitianSpace::new(p)?;
    let f = space.field.clone();
    let zeta = f.t()?;
    let mut basis = Vec::new();
    for i in 0..3 {
        for c in [f.one(), zeta] {
            let mut v = vec![Gf(0); 6];
            v[i] = c;
            let cb = space.conj(c);
            v[COMPLEMENT[i]] = if WEDGE_SIGN[i] < 0 { f.neg(cb) } else { cb };
            basis.push(v);
        }
    }
    let bar = BarInvolution {
        space: space.clone(),
    };
    if basis.iter().any(|b| bar.apply(b) != *b) {
        return domain("W basis vector not fixed by the involution");
    }
    let inverse = invert(&f, &basis)?;
    let mut coef = vec![vec![0u32; 6]; 6];
    for i in 0..6 {
        for j in i..6 {
            let v = if i == j {
                psi_lambda(&f, &basis[i])
            } else {
                let s: GfVec = basis[i]
                    .iter()
                    .zip(&basis[j])
                    .map(|(&a, &b)| f.add(a, b))
                    .collect();
                f.sub(
                    f.sub(psi_lambda(&f, &s), psi_lambda(&f, &basis[i])),
                    psi_lambda(&f, &basis[j]),
                )
            };
            if !f.in_prime_field(v) {
                return domain("ψ is not F_p-valued on W");
            }
            coef[i][j] = v.0;
        }
    }
    Ok(WForm {
        space,
        basis,
        psi: QuadForm { p, coef },
        inverse,
    })
}

fn all_vectors(p: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
    (0..p.pow(n as u32)).map(move |code| (0..n).map(|i| (code / p.pow(i as u32)) % p).collect())
}

/// Largest dimension of a subspace of `F_p^n` on which `q` vanishes.
pub fn witt_index(q: &QuadForm) -> Result<usize> {
    let f = GaloisField::prime(q.p)?;
    let mut best = 0;
    for m in 1..=q.dim() / 2 {
        let mut found = false;
        enumerate_subspaces(&f, q.dim(), m, |b| {
            if !found && q.is_totally_isotropic(&f, b) {
                found = true;
            }
        });
        if !found {
            break;
        }
        best = m;
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropicCensus {
    pub p: u32,
    pub nonzero_isotropic: usize,
    pub witt_index: usize,
    pub split_nonzero_isotropic: usize,
    pub split_witt_index: usize,
}

pub fn isotropic_census(p: u32) -> Result<IsotropicCensus> {
    let w = w_basis_and_psi(p)?;
    let split = QuadForm::split(p, 3);
    let f = GaloisField::prime(p)?;
    let count = |q: &QuadForm| {
        all_vectors(p, 6)
            .filter(|y| y.iter().any(|&c| c != 0))
            .filter(|y| {
                let g: Vec<Gf> = y.iter().map(|&c| Gf(c)).collect();
                q.eval(&f, &g) == Gf(0)
            })
            .count()
    };
    Ok(IsotropicCensus {
        p,
        nonzero_isotropic: count(&w.psi),
        witt_index: witt_index(&w.psi)?,
        split_nonzero_isotropic: count(&split),
        split_witt_index: witt_index(&split)?,
    })
}

/// `X_p: Σ x_i^{p+1} = 0` over `F_{p²}`, with its points and lines.
#[derive(Debug, Clone)]
pub struct FermatSurface {
    pub space: HermitianSpace,
    /// Normalized points of `X_p(F_{p²})`.
    pub points: Vec<GfVec>,
    /// RREF bases of the totally isotropic hermitian planes.
    pub lines: Vec<Vec<GfVec>>,
}

impl FermatSurface {
    /// Normalized points of the projective line spanned by `basis`.
    pub fn line_points(&self, basis: &[GfVec]) -> Vec<GfVec> {
        let f = &self.space.field;
        projective_points(f, 2)
            .into_iter()
            .map(|c| {
                let v: GfVec = (0..4)
                    .map(|i| f.add(f.mul(c[0], basis[0][i]), f.mul(c[1], basis[1][i])))
                    .collect();
                normalize(f, &v)
            })
            .collect()
    }

    pub fn contains(&self, x: &[Gf]) -> bool {
        self.space.fermat(x) == Gf(0)
    }
}

fn normalize(f: &GaloisField, v: &[Gf]) -> GfVec {
    let lead = *v.iter().find(|&&c| c != Gf(0)).expect("nonzero vector");
    let inv = f.inv(lead).expect("nonzero");
    v.iter().map(|&c| f.mul(c, inv)).collect()
}

pub fn fermat_lines(p: u32) -> Result<FermatSurface> {
    let space = HermitianSpace::new(p)?;
    let f = space.field.clone();
    let points: Vec<GfVec> = projective_points(&f, 4)
        .into_iter()
        .filter(|x| space.fermat(x) == Gf(0))
        .collect();
    let mut lines = Vec::new();
    enumerate_subspaces(&f, 4, 2, |b| {
        let iso = space.form(&b[0], &b[0]) == Gf(0)
            && space.form(&b[1], &b[1]) == Gf(0)
            && space.form(&b[0], &b[1]) == Gf(0);
        if iso {
            lines.push(b.to_vec());
        }
    });
    Ok(FermatSurface {
        space,
        points,
        lines,
    })
}

/// The `F_p`-rational isotropic vector of `W` spanned by `Λ²` of a line,
/// normalized so that its first nonzero `W`-coordinate is 1.
pub fn line_to_w(w: &WForm, basis: &[GfVec]) -> Option<Vec<u32>> {
    let f = &w.space.field;
    let u = wedge2(f, &basis[0], &basis[1]);
    f.nonzero()
        .find_map(|s| {
            let su: GfVec = u.iter().map(|&c| f.mul(c, s)).collect();
            w.rational_coords(&su)
        })
        .map(|y| {
            let g: Vec<Gf> = y.iter().map(|&c| Gf(c)).collect();
            normalize(&GaloisField::prime(w.space.p).expect("prime"), &g)
                .iter()
                .map(|c| c.0)
                .collect()
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineStats {
    pub meeting: usize,
    /// Number of other lines in each plane through this line that contains
    /// at least one of them.
    pub plane_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TritangentStats {
    pub lines: usize,
    pub per_line: Vec<LineStats>,
    pub intersecting_pairs: usize,
}

impl TritangentStats {
    pub fn uniform(&self, meeting: usize, planes: usize, per_plane: usize) -> bool {
        self.per_line.iter().all(|s| {
            s.meeting == meeting
                && s.plane_sizes.len() == planes
                && s.plane_sizes.iter().all(|&k| k == per_plane)
        })
    }
}

pub fn tritangent_stats(surface: &FermatSurface) -> TritangentStats {
    let f = &surface.space.field;
    let n = surface.lines.len();
    let mut per_line = Vec::with_capacity(n);
    let mut pairs = 0;
    for i in 0..n {
        let mut planes: HashMap<Vec<GfVec>, usize> = HashMap::new();
        let mut meeting = 0;
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut rows = surface.lines[i].clone();
            rows.extend(surface.lines[j].iter().cloned());
            rref_gf(f, &mut rows);
            if rows.len() == 3 {
                meeting += 1;
                *planes.entry(rows).or_insert(0) += 1;
            }
        }
        pairs += meeting;
        let mut plane_sizes: Vec<usize> = planes.into_values().collect();
        plane_sizes.sort_unstable();
        per_line.push(LineStats {
            meeting,
            plane_sizes,
        });
    }
    TritangentStats {
        lines: n,
        per_line,
        intersecting_pairs: pairs / 2,
    }
}

/// A characteristic subspace: `K ⊂ T₀ ⊗ F_q` maximal totally isotropic with
/// `dim(K ∩ F*K) = σ₀ − 1`. `basis` is the RREF basis in `T₀`-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PeriodPoint {
    pub sigma0: usize,
    pub q: u32,
    pub basis: Vec<Vec<Gf>>,
}

/// The non-split `2σ₀`-dimensional form over `F_2`: `W` itself for `σ₀ = 3`,
/// `(σ₀−1)·H ⊕ N` otherwise.
pub fn period_form(sigma0: usize) -> Result<QuadForm> {
    match sigma0 {
        3 => Ok(w_basis_and_psi(2)?.psi),
        1 | 2 => Ok(QuadForm::non_split_char2(sigma0 - 1)),
        _ => usage(format!("σ₀ must be 1, 2 or 3, got {sigma0}")),
    }
}

pub fn frobenius_rows(f: &GaloisField, rows: &[GfVec]) -> Vec<GfVec> {
    rows.iter()
        .map(|r| r.iter().map(|&c| f.frobenius(c)).collect())
        .collect()
}

/// `dim(K ∩ F*K)` from `dim K + dim F*K − dim(K + F*K)`.
pub fn frobenius_overlap(f: &GaloisField, k: &[GfVec]) -> usize {
    let fk = frobenius_rows(f, k);
    let mut both = k.to_vec();
    both.extend(fk.iter().cloned());
    2 * k.len() - subspace_dim(f, &both)
}

pub fn period_points(sigma0: usize, q: u32) -> Result<Vec<PeriodPoint>> {
    if q != 2 && q != 4 {
        return usage(format!(
            "period points are enumerated over F_2 and F_4 only, got q={q}"
        ));
    }
    let form = period_form(sigma0)?;
    let f = GaloisField::of_order(q)?;
    let mut out = Vec::new();
    enumerate_subspaces(&f, 2 * sigma0, sigma0, |b| {
        if form.is_totally_isotropic(&f, b) && frobenius_overlap(&f, b) == sigma0 - 1 {
            out.push(PeriodPoint {
                sigma0,
                q,
                basis: b.to_vec(),
            });
        }
    });
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareReport {
    pub surface_points: usize,
    pub enumerated: usize,
    pub first_valid: bool,
    pub second_valid: bool,
    pub first_injective: bool,
    pub second_injective: bool,
    pub disjoint: bool,
    pub union_is_everything: bool,
    /// `K′ = F*K` point by point.
    pub second_is_frobenius_of_first: bool,
}

fn canonical(f: &GaloisField, rows: Vec<GfVec>) -> Vec<GfVec> {
    let mut rows = rows;
    rref_gf(f, &mut rows);
    rows
}

/// Hermitian annihilator `{v : ⟨x, v⟩ = 0}` of a nonzero `x`.
fn hermitian_annihilator(space: &HermitianSpace, x: &[Gf]) -> Vec<GfVec> {
    let f = &space.field;
    let a: GfVec = x.iter().map(|&c| space.conj(c)).collect();
    let k = a.iter().position(|&c| c != Gf(0)).expect("nonzero");
    let inv = f.inv(a[k]).expect("nonzero");
    (0..4)
        .filter(|&j| j != k)
        .map(|j| {
            let mut v = vec![Gf(0); 4];
            v[j] = f.one();
            v[k] = f.neg(f.mul(a[j], inv));
            v
        })
        .collect()
}

/// For each point `L` of `X₂(F₄)`: `K = L ∧ F₄⁴` and `K′ = Λ²(L^⊥)`, with
/// `L^⊥` the hermitian annihilator, compared with [`period_points`]`(3, 4)`.
pub fn period_fermat_compare(q: u32) -> Result<CompareReport> {
    if q != 4 {
        return usage("the comparison is implemented for q = 4");
    }
    let w = w_basis_and_psi(2)?;
    let f = w.space.field.clone();
    let surface = fermat_lines(2)?;
    let enumerated: BTreeSet<Vec<GfVec>> =
        period_points(3, 4)?.into_iter().map(|k| k.basis).collect();
    let to_w = |rows: Vec<GfVec>| canonical(&f, rows.iter().map(|u| w.coords(u)).collect());
    let valid = |k: &[GfVec]| {
        k.len() == 3 && w.psi.is_totally_isotropic(&f, k) && frobenius_overlap(&f, k) == 2
    };
    let mut first = Vec::new();
    let mut second = Vec::new();
    for x in &surface.points {
        let k: Vec<GfVec> = (0..4)
            .map(|j| {
                let mut e = vec![Gf(0); 4];
                e[j] = f.one();
                wedge2(&f, x, &e)
            })
            .collect();
        first.push(to_w(k));
        let h = hermitian_annihilator(&w.space, x);
        let kp = vec![
            wedge2(&f, &h[0], &h[1]),
            wedge2(&f, &h[0], &h[2]),
            wedge2(&f, &h[1], &h[2]),
        ];
        second.push(to_w(kp));
    }
    let set1: BTreeSet<_> = first.iter().cloned().collect();
    let set2: BTreeSet<_> = second.iter().cloned().collect();
    let union: BTreeSet<_> = set1.union(&set2).cloned().collect();
    Ok(CompareReport {
        surface_points: surface.points.len(),
        enumerated: enumerated.len(),
        first_valid: first.iter().all(|k| valid(k)),
        second_valid: second.iter().all(|k| valid(k)),
        first_injective: set1.len() == first.len(),
        second_injective: set2.len() == second.len(),
        disjoint: set1.is_disjoint(&set2),
        union_is_everything: union == enumerated,
        second_is_frobenius_of_first: first
            .iter()
            .zip(&second)
            .all(|(k, kp)| canonical(&f, frobenius_rows(&f, k)) == *kp),
    })
}
