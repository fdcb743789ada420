use std::collections::BTreeSet;

use cy3_core::exactla::gfq::subspace_dim;
use cy3_core::k3::*;
use cy3_core::{GaloisField, Gf};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_vec(rng: &mut ChaCha8Rng, f: &GaloisField, n: usize) -> Vec<Gf> {
    (0..n).map(|_| Gf(rng.gen_range(0..f.order()))).collect()
}

#[test]
fn bar_is_semilinear_involution_and_matches_wedge() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [2, 3, 5] {
        let bar = bar_involution(p).unwrap();
        let s = &bar.space;
        let f = &s.field;
        for _ in 0..200 {
            let u = random_vec(&mut rng, f, 6);
            let v = random_vec(&mut rng, f, 6);
            let c = Gf(rng.gen_range(0..f.order()));
            assert_eq!(bar.apply(&bar.apply(&u)), u);
            let cu: Vec<Gf> = u.iter().map(|&a| f.mul(c, a)).collect();
            let lhs = bar.apply(&cu);
            let rhs: Vec<Gf> = bar.apply(&u).iter().map(|&a| f.mul(s.conj(c), a)).collect();
            assert_eq!(lhs, rhs);
            // u ∧ v = ⟨ū, v⟩ w
            assert_eq!(s.wedge_pairing(&u, &v), s.form(&bar.apply(&u), &v));
        }
    }
}

#[test]
fn w_is_fixed_space_and_psi_polarizes_to_wedge() {
    for p in [2, 3] {
        let w = w_basis_and_psi(p).unwrap();
        let f = &w.space.field;
        let bar = bar_involution(p).unwrap();
        // every bar-fixed vector has rational coordinates, and conversely
        let mut fixed = 0;
        let total = (f.order() as u64).pow(6);
        if total <= 1 << 13 {
            for code in 0..total {
                let u: Vec<Gf> = (0..6)
                    .map(|i| Gf(((code / (f.order() as u64).pow(i)) % f.order() as u64) as u32))
                    .collect();
                let is_fixed = bar.apply(&u) == u;
                assert_eq!(is_fixed, w.rational_coords(&u).is_some());
                fixed += is_fixed as u64;
            }
            assert_eq!(fixed, (p as u64).pow(6));
        }
        for i in 0..6 {
            for j in 0..6 {
                let mut y = vec![Gf(0); 6];
                let mut z = vec![Gf(0); 6];
                y[i] = f.one();
                z[j] = f.one();
                let polar = w.psi.polar(f, &y, &z);
                let wedge = w.space.wedge_pairing(&w.basis[i], &w.basis[j]);
                if i != j {
                    assert_eq!(polar, wedge);
                }
                assert_eq!(w.psi.eval(f, &y), psi_lambda(f, &w.basis[i]));
            }
        }
    }
}

#[test]
fn w_splits_into_three_orthogonal_anisotropic_planes() {
    let w = w_basis_and_psi(2).unwrap();
    let f = GaloisField::prime(2).unwrap();
    for a in 0..3 {
        for b in 0..3 {
            for i in 0..2 {
                for j in 0..2 {
                    if a != b {
                        let lo = 2 * a.min(b) + if a < b { i } else { j };
                        let hi = 2 * a.max(b) + if a < b { j } else { i };
                        assert_eq!(w.psi.coef[lo][hi], 0);
                    }
                }
            }
        }
        for y in [[1, 0], [0, 1], [1, 1]] {
            let mut v = vec![Gf(0); 6];
            v[2 * a] = Gf(y[0]);
            v[2 * a + 1] = Gf(y[1]);
            assert_ne!(w.psi.eval(&f, &v), Gf(0));
        }
    }
}

#[test]
fn lines_biject_onto_isotropic_vectors_of_w() {
    let w = w_basis_and_psi(2).unwrap();
    let surface = fermat_lines(2).unwrap();
    let images: BTreeSet<Vec<u32>> = surface
        .lines
        .iter()
        .map(|l| line_to_w(&w, l).expect("Λ² of a line is rational up to scale"))
        .collect();
    assert_eq!(images.len(), 27);
    for y in &images {
        assert_eq!(w.psi_rational(y), 0);
    }
    let census = isotropic_census(2).unwrap();
    assert_eq!(census.nonzero_isotropic, images.len());
    // a non-isotropic plane never maps into W
    let f = &w.space.field;
    let e = |i: usize| {
        (0..4)
            .map(|j| if i == j { f.one() } else { f.zero() })
            .collect::<Vec<_>>()
    };
    assert!(line_to_w(&w, &[e(0), e(1)]).is_none());
}

#[test]
fn points_on_fermat_surface_by_brute_force() {
    let surface = fermat_lines(2).unwrap();
    let f = &surface.space.field;
    // every point of X_2(F_4) lies on exactly 3 of the 27 lines
    for x in &surface.points {
        let on = surface
            .lines
            .iter()
            .filter(|l| {
                let mut rows = (*l).clone();
                rows.push(x.clone());
                subspace_dim(f, &rows) == 2
            })
            .count();
        assert_eq!(on, 3);
    }
}

#[test]
fn tritangent_configuration() {
    let surface = fermat_lines(2).unwrap();
    let stats = tritangent_stats(&surface);
    assert_eq!(stats.lines, 27);
    assert!(stats.uniform(10, 5, 2));
    assert_eq!(stats.intersecting_pairs, 135);
}

#[test]
fn period_points_for_sigma_three() {
    let pts = period_points(3, 4).unwrap();
    assert_eq!(pts.len(), 90);
    let f = GaloisField::of_order(4).unwrap();
    let form = period_form(3).unwrap();
    for k in &pts {
        assert!(form.is_totally_isotropic(&f, &k.basis));
        let fk = frobenius_rows(&f, &k.basis);
        let mut both = k.basis.clone();
        both.extend(fk.iter().cloned());
        assert_eq!(subspace_dim(&f, &both), 4);
    }
}

#[test]
fn sigma_two_points_are_isotropic_planes() {
    let pts = period_points(2, 4).unwrap();
    let f = GaloisField::of_order(4).unwrap();
    let form = period_form(2).unwrap();
    assert!(!pts.is_empty());
    for k in &pts {
        assert_eq!(k.basis.len(), 2);
        assert!(form.is_totally_isotropic(&f, &k.basis));
        assert_eq!(frobenius_overlap(&f, &k.basis), 1);
    }
}

#[test]
fn fermat_points_account_for_all_period_points() {
    let r = period_fermat_compare(4).unwrap();
    assert_eq!(r.surface_points, 45);
    assert_eq!(r.enumerated, 90);
    assert!(r.first_valid && r.second_valid);
    assert!(r.first_injective && r.second_injective);
    assert!(r.disjoint);
    assert!(r.union_is_everything);
    assert!(r.second_is_frobenius_of_first);
    assert!(period_fermat_compare(2).is_err());
}
