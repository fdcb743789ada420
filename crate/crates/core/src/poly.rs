//! Sparse multivariate polynomials over `F_p`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::gf::{inv_mod, GaloisField, Gf};
use crate::monomial::{grevlex_cmp, MultiIndex};

/// A polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    nvars: usize,
    p: u32,
    terms: BTreeMap<MultiIndex, u32>,
}

impl SparsePoly {
    pub fn zero(nvars: usize, p: u32) -> Self {
        Self {
            nvars,
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, p: u32, c: i64) -> Self {
        Self::monomial(nvars, p, MultiIndex::zero(nvars), c)
    }

    pub fn var(nvars: usize, p: u32, i: usize) -> Self {
        Self::monomial(nvars, p, MultiIndex::unit(nvars, i, 1), 1)
    }

    pub fn monomial(nvars: usize, p: u32, exps: MultiIndex, c: i64) -> Self {
        assert_eq!(exps.dim(), nvars);
        let mut s = Self::zero(nvars, p);
        s.add_term(exps, c.rem_euclid(p as i64) as u32);
        s
    }

    pub fn from_terms(
        nvars: usize,
        p: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, i64)>,
    ) -> Self {
        let mut s = Self::zero(nvars, p);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            s.add_term(MultiIndex(e), c.rem_euclid(p as i64) as u32);
        }
        s
    }

    pub(crate) fn add_term(&mut self, exps: MultiIndex, c: u32) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = (*e.get() + c) % self.p;
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, u32)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn coeff(&self, exps: &[u32]) -> u32 {
        self.terms
            .get(&MultiIndex(exps.to_vec()))
            .copied()
            .unwrap_or(0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(MultiIndex::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn compatible(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        assert_eq!(self.p, other.p, "characteristic mismatch");
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = c.rem_euclid(self.p as i64) as u32;
        let mut out = Self::zero(self.nvars, self.p);
        if c == 0 {
            return out;
        }
        for (k, &v) in &self.terms {
            out.terms.insert(k.clone(), v * c % self.p);
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, self.p, 1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative in variable `i`, coefficients reduced mod `p`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.p);
        for (k, &v) in &self.terms {
            let e = k.0[i];
            if e == 0 {
                continue;
            }
            let c = (e % self.p) * v % self.p;
            if c == 0 {
                continue;
            }
            let mut k2 = k.clone();
            k2.0[i] -= 1;
            out.add_term(k2, c);
        }
        out
    }

    /// Replaces every variable `x_i` by `x_i^e`.
    pub fn inflate(&self, e: u32) -> Self {
        let mut out = Self::zero(self.nvars, self.p);
        for (k, &v) in &self.terms {
            out.add_term(MultiIndex(k.0.iter().map(|x| x * e).collect()), v);
        }
        out
    }

    pub fn eval_fp(&self, x: &[u32]) -> u32 {
        assert_eq!(x.len(), self.nvars);
        let p = self.p as u64;
        let mut acc = 0u64;
        for (k, &v) in &self.terms {
            let mut t = v as u64;
            for (&xi, &e) in x.iter().zip(&k.0) {
                for _ in 0..e {
                    t = t * xi as u64 % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc as u32
    }

    /// Evaluates at a point of an extension field of characteristic `p`.
    pub fn eval_gf(&self, field: &GaloisField, x: &[Gf]) -> Gf {
        assert_eq!(field.characteristic(), self.p);
        assert_eq!(x.len(), self.nvars);
        let mut acc = field.zero();
        for (k, &v) in &self.terms {
            let mut t = field.from_int(v as i64);
            for (&xi, &e) in x.iter().zip(&k.0) {
                t = field.mul(t, field.pow(xi, e as u64));
            }
            acc = field.add(acc, t);
        }
        acc
    }

    /// Largest term in the graded reverse lexicographic order.
    pub fn leading_term(&self) -> Option<(&MultiIndex, u32)> {
        self.terms
            .iter()
            .max_by(|a, b| grevlex_cmp(&a.0 .0, &b.0 .0))
            .map(|(k, &v)| (k, v))
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.compatible(divisor);
        let (lead_m, lead_c) = divisor.leading_term()?;
        let lead_inv = inv_mod(lead_c, self.p);
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars, self.p);
        while let Some((m, c)) = rem.leading_term() {
            let shift = m.checked_sub(lead_m)?;
            let coef = c * lead_inv % self.p;
            let t = Self::monomial(self.nvars, self.p, shift.clone(), coef as i64);
            quot.add_term(shift, coef);
            rem = &rem - &(&t * divisor);
        }
        Some(quot)
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.compatible(rhs);
        let mut out = self.clone();
        for (k, &v) in &rhs.terms {
            out.add_term(k.clone(), v);
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(-1)
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self + &(-rhs)
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.compatible(rhs);
        let p = self.p as u64;
        let mut acc: BTreeMap<MultiIndex, u64> = BTreeMap::new();
        for (a, &x) in &self.terms {
            for (b, &y) in &rhs.terms {
                let slot = acc.entry(a.add(b)).or_insert(0);
                *slot = (*slot + x as u64 * y as u64) % p;
            }
        }
        SparsePoly {
            nvars: self.nvars,
            p: self.p,
            terms: acc
                .into_iter()
                .filter(|(_, v)| *v != 0)
                .map(|(k, v)| (k, v as u32))
                .collect(),
        }
    }
}

/// Terms largest first in graded reverse lexicographic order, e.g.
/// `x1^4*x2 + x1*x2^4`; coefficients are residues and `1` is omitted.
impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&MultiIndex, u32)> = self.terms().collect();
        terms.sort_by(|a, b| grevlex_cmp(&b.0 .0, &a.0 .0));
        let rendered: Vec<String> = terms
            .into_iter()
            .map(|(m, c)| {
                let mut factors = Vec::new();
                for (i, &e) in m.0.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(format!("x{}", i + 1)),
                        _ => factors.push(format!("x{}^{e}", i + 1)),
                    }
                }
                match (c, factors.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => factors.join("*"),
                    _ => format!("{c}*{}", factors.join("*")),
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}
