//! Moore determinants and the vector field `D = Σ x_i^p ∂/∂x_i`.
//!
//! `moore_det(n, i, p)` is the determinant of the `n × n` matrix whose rows are
//! `(x_1^{p^e}, …, x_n^{p^e})` for `e ∈ {0, …, n} \ {i}`, largest `e` first.
//! `moore_det(n, n, p)` is the classical Moore determinant and
//! `moore_det(n, 0, p)` is its `p`-th power.

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::gf::is_prime;
use crate::monomial::MultiIndex;
pub use crate::poly::SparsePoly;

fn det(rows: &[Vec<SparsePoly>]) -> SparsePoly {
    let n = rows.len();
    let first = &rows[0][0];
    if n == 1 {
        return first.clone();
    }
    let mut acc = SparsePoly::zero(first.nvars(), first.modulus());
    for c in 0..n {
        if rows[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<SparsePoly>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &rows[0][c] * &det(&minor);
        acc = if c % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

pub fn moore_det(n: usize, i: usize, p: u32) -> Result<SparsePoly> {
    if n < 2 {
        return usage(format!("Moore determinants need n >= 2, got {n}"));
    }
    if i > n {
        return usage(format!("omitted exponent index {i} outside 0..={n}"));
    }
    if !is_prime(p) {
        return usage(format!("{p} is not prime"));
    }
    let rows: Vec<Vec<SparsePoly>> = (0..=n as u32)
        .rev()
        .filter(|&e| e as usize != i)
        .map(|e| {
            (0..n)
                .map(|j| SparsePoly::monomial(n, p, MultiIndex::unit(n, j, p.pow(e)), 1))
                .collect()
        })
        .collect();
    Ok(det(&rows))
}

/// `D(f) = Σ_i x_i^p ∂f/∂x_i`.
pub fn apply_d(f: &SparsePoly) -> SparsePoly {
    let (n, p) = (f.nvars(), f.modulus());
    let mut acc = SparsePoly::zero(n, p);
    for i in 0..n {
        let xp = SparsePoly::monomial(n, p, MultiIndex::unit(n, i, p), 1);
        acc = &acc + &(&xp * &f.derivative(i));
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DicksonReport {
    pub n: usize,
    pub p: u32,
    pub convention: String,
    /// `(i, D(D_{n,i}) == 0)` for every `i ≠ 1`.
    pub vanishing: Vec<(usize, bool)>,
    /// `ε` with `D(D_{n,1}) = ε·D_{n,n}^p`, if such an `ε ∈ {±1}` exists.
    pub sign: Option<i32>,
    /// `D_{n,0} == D_{n,n}^p`.
    pub top_power_identity: bool,
    /// `(i, D_{n,n} divides D_{n,i})`, checked by exact division.
    pub divisible: Vec<(usize, bool)>,
    pub top: String,
    pub image_of_first: String,
}

impl DicksonReport {
    pub fn holds(&self) -> bool {
        self.vanishing.iter().all(|&(_, ok)| ok) && self.sign.is_some() && self.top_power_identity
    }
}

pub fn dickson_report(n: usize, p: u32) -> Result<DicksonReport> {
    let top = moore_det(n, n, p)?;
    let top_p = top.pow(p);
    let mut vanishing = Vec::new();
    let mut divisible = Vec::new();
    let mut sign = None;
    let mut image_of_first = String::new();
    for i in 0..=n {
        let d = moore_det(n, i, p)?;
        divisible.push((i, d.div_exact(&top).is_some()));
        let image = apply_d(&d);
        if i == 1 {
            image_of_first = image.to_string();
            sign = if image == top_p {
                Some(1)
            } else if image == -&top_p {
                Some(-1)
            } else {
                None
            };
        } else {
            vanishing.push((i, image.is_zero()));
        }
    }
    Ok(DicksonReport {
        n,
        p,
        convention: format!(
            "D_{{n,i}} = det of rows x^(p^e), e in {{0..{n}}} minus {{i}}, decreasing e; top = D_{{n,n}}"
        ),
        vanishing,
        sign,
        top_power_identity: moore_det(n, 0, p)? == top_p,
        divisible,
        top: top.to_string(),
        image_of_first,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_examples() {
        assert_eq!(moore_det(2, 1, 2).unwrap().to_string(), "x1^4*x2 + x1*x2^4");
        assert_eq!(moore_det(2, 2, 2).unwrap().to_string(), "x1^2*x2 + x1*x2^2");
        assert!(apply_d(&moore_det(2, 2, 2).unwrap()).is_zero());
    }

    #[test]
    fn d_on_small_inputs() {
        let p = 3;
        assert!(apply_d(&SparsePoly::constant(2, p, 2)).is_zero());
        let x2 = SparsePoly::var(2, p, 1);
        assert_eq!(
            apply_d(&x2),
            SparsePoly::monomial(2, p, MultiIndex(vec![0, 3]), 1)
        );
    }

    #[test]
    fn degree_is_sum_of_exponents() {
        let d = moore_det(3, 1, 3).unwrap();
        assert_eq!(d.degree(), Some(27 + 9 + 1));
        assert!(d.is_homogeneous());
    }

    #[test]
    fn out_of_range() {
        assert!(moore_det(2, 3, 2).is_err());
        assert!(moore_det(1, 0, 2).is_err());
    }

    #[test]
    fn report_small_case() {
        let r = dickson_report(2, 2).unwrap();
        assert!(r.holds());
        assert_eq!(r.sign, Some(1));
        assert_eq!(r.image_of_first, "x1^4*x2^2 + x1^2*x2^4");
    }
}
