use cy3_core::groupact::*;
use cy3_core::monomial::monomial_count;
use cy3_core::multilinear::{copair_vector, divided_power_eval};
use cy3_core::MatFp;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_invertible(rng: &mut ChaCha8Rng, n: usize, p: u32) -> MatFp {
    loop {
        let e: Vec<i64> = (0..n * n).map(|_| rng.gen_range(0..p as i64)).collect();
        let m = MatFp::new(n, n, p, &e).unwrap();
        if m.rank() == n {
            return m;
        }
    }
}

fn det(m: &MatFp) -> u32 {
    let rows: Vec<Vec<u32>> = (0..m.rows()).map(|r| m.row_vec(r)).collect();
    cy3_core::multilinear::det_mod(&rows, m.modulus())
}

#[test]
fn lambda2_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in [2, 3, 5] {
        for _ in 0..20 {
            let a = random_invertible(&mut rng, 4, p);
            let b = random_invertible(&mut rng, 4, p);
            let lhs = induced_lambda2(&a.mul(&b).unwrap()).unwrap();
            let rhs = induced_lambda2(&a)
                .unwrap()
                .mul(&induced_lambda2(&b).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn gamma_is_functorial() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let p = 3;
    for _ in 0..20 {
        let a = random_invertible(&mut rng, 3, p);
        let b = random_invertible(&mut rng, 3, p);
        let lhs = induced_gamma(&a.mul(&b).unwrap(), 3).unwrap();
        let rhs = induced_gamma(&a, 3)
            .unwrap()
            .mul(&induced_gamma(&b, 3).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn gamma_action_matches_divided_power_of_image() {
    // Γ^k(h) γ_k(v) = γ_k(h v)
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let p = 5;
    for _ in 0..20 {
        let h = random_invertible(&mut rng, 4, p);
        let v: Vec<u32> = (0..4).map(|_| rng.gen_range(0..p)).collect();
        let g = induced_gamma(&h, 4).unwrap();
        let lhs = g.apply(&divided_power_eval(&v, 4, p).to_dense()).unwrap();
        let rhs = divided_power_eval(&h.apply(&v).unwrap(), 4, p).to_dense();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn copair_is_invariant_up_to_determinant() {
    for p in [3, 5] {
        let gens = parabolic_generators(4, p, 4).unwrap();
        for k in 1..=p - 1 {
            let c = copair_vector(k, p).unwrap();
            for g in &gens.matrices {
                let act = GammaAction::new(&induced_lambda2(g).unwrap(), 2 * k).unwrap();
                let d = det(g) as i64;
                assert_eq!(act.apply(&c), c.scale(d.pow(k)), "p={p} k={k}");
            }
        }
    }
}

#[test]
fn invariant_routes_agree_p3() {
    let p = 3;
    let gens = parabolic_generators(4, p, 2).unwrap();
    for k in [2, 4] {
        let stacked = invariant_subspace(
            &gens,
            |g| induced_gamma(&induced_lambda2(g)?, k),
            monomial_count(6, k),
        )
        .unwrap();
        let by_action = gamma_lambda2_invariants(&gens, k).unwrap();
        assert_eq!(stacked, by_action);
        let via_common = cy3_core::exactla::common_kernel(
            monomial_count(6, k),
            p,
            gens.matrices.iter().map(|g| {
                induced_gamma(&induced_lambda2(g).unwrap(), k)
                    .unwrap()
                    .sub(&MatFp::identity(monomial_count(6, k), p))
                    .unwrap()
            }),
        )
        .unwrap();
        assert_eq!(stacked, via_common);
    }
}

#[test]
fn invariants_independent_of_generator_order() {
    let p = 3;
    let mut gens = parabolic_generators(4, p, 2).unwrap();
    let before = gamma_lambda2_invariants(&gens, 4).unwrap();
    gens.matrices.reverse();
    assert_eq!(gamma_lambda2_invariants(&gens, 4).unwrap(), before);
}

#[test]
fn invariants_p3_and_p5() {
    for p in [3, 5] {
        let r = prop_invariants_report(p).unwrap();
        assert_eq!(r.dims, (1, 2), "p={p}");
        assert!(r.gamma_v1_low && r.gamma_v1_high && r.copair_high && r.pointwise_fixed);
    }
    let r = prop_invariants_report(3).unwrap();
    let mut unit = vec![0; 21];
    unit[0] = 1;
    assert_eq!(r.basis_low, vec![unit]);
}

/// Breadth-first closure of the generators acting on ordered bases of F_3^4;
/// a basis is encoded by its four column vectors in base 81.
#[test]
fn gl4_f3_generators_generate_everything() {
    let p = 3u32;
    let gens = parabolic_generators(4, p, 4).unwrap();
    let vec_code = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &x| acc * 3 + x);
    // action of each generator on the 81 column vectors
    let tables: Vec<Vec<u32>> = gens
        .matrices
        .iter()
        .map(|g| {
            (0..81u32)
                .map(|c| {
                    let v: Vec<u32> = (0..4).map(|i| (c / 3u32.pow(i)) % 3).collect();
                    vec_code(&g.apply(&v).unwrap())
                })
                .collect()
        })
        .collect();
    let encode = |cols: [u32; 4]| cols[0] + 81 * (cols[1] + 81 * (cols[2] + 81 * cols[3]));
    let decode = |x: u32| [x % 81, (x / 81) % 81, (x / 6561) % 81, x / 531441];
    let start = encode([1, 3, 9, 27]);
    let mut seen = vec![0u64; 81usize.pow(4).div_ceil(64)];
    let mut stack = vec![start];
    seen[start as usize / 64] |= 1 << (start % 64);
    let mut count: u64 = 1;
    while let Some(x) = stack.pop() {
        let cols = decode(x);
        for t in &tables {
            let y = encode(cols.map(|c| t[c as usize]));
            let (w, b) = (y as usize / 64, y % 64);
            if seen[w] & (1 << b) == 0 {
                seen[w] |= 1 << b;
                count += 1;
                stack.push(y);
            }
        }
    }
    let order: u64 = (0..4).map(|i| 81 - 3u64.pow(i)).product();
    assert_eq!(order, 24_261_120);
    assert_eq!(count, order);
}

#[test]
fn lift_identity_holds_for_p_at_least_five() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for p in [5u32, 7] {
        for n in [2usize, 6] {
            let mut nm = MatFp::zeros(n, n, p);
            nm.set(0, 1, 1);
            for _ in 0..100 {
                let e: Vec<i64> = (0..n * n).map(|_| rng.gen_range(0..p as i64)).collect();
                let pm = MatFp::new(n, n, p, &e).unwrap();
                let out = lift_obstruction(&nm, &pm, p).unwrap();
                assert!(out.matches_expected && !out.expected_is_identity);
            }
        }
    }
}

/// For p = 3 the cube keeps a term `3·N P N`; with `N = E_12` that is
/// `3·P_21·E_12`. Brute-force integer expansion confirms the computed power.
#[test]
fn lift_cube_for_p3_matches_integer_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let p = 3u32;
    for n in [2usize, 6] {
        let mut nm = MatFp::zeros(n, n, p);
        nm.set(0, 1, 1);
        for _ in 0..100 {
            let e: Vec<i64> = (0..n * n).map(|_| rng.gen_range(0..3)).collect();
            let pm = MatFp::new(n, n, p, &e).unwrap();
            let out = lift_obstruction(&nm, &pm, p).unwrap();
            // plain i64 cube, reduced at the end
            let a: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (i == j) as i64 + nm.get(i, j) as i64 + 3 * pm.get(i, j) as i64)
                        .collect()
                })
                .collect();
            let mm = |x: &Vec<Vec<i64>>, y: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum())
                            .collect()
                    })
                    .collect()
            };
            let cube = mm(&mm(&a, &a), &a);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(cube[i][j].rem_euclid(9) as u64, out.power.get(i, j));
                }
            }
            let p21 = pm.get(1, 0) as u64;
            assert_eq!(out.power.get(0, 1), 3 * (1 + p21) % 9);
            assert_eq!(out.matches_expected, p21 == 0);
        }
    }
}
