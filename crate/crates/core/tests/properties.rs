mod common;

use common::*;
use pdsdp_core::problem::estimate_operator_norm;
use pdsdp_core::symmat::{
    aproj_psd, aproj_psd_detailed, approx_error_bound, full_eigen, proj_psd, smat, svec, truncated_eigen, SymMatrix,
};
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn adjoint_identity(seed in any::<u64>(), n in 1usize..16, m in 1usize..8, p in 0usize..6) {
        let mut g = rng(seed);
        let prob = random_problem(n, m, p, &mut g);
        let x = uniform_sym(n, &mut g);
        let y: Vec<f64> = (0..m + p).map(|_| rand::Rng::random_range(&mut g, -1.0..1.0)).collect();
        let mx = prob.apply_m(&x).unwrap();
        let lhs: f64 = mx.iter().zip(&y).map(|(a, b)| a * b).sum();
        let rhs = x.dot(&prob.apply_m_adjoint(&y).unwrap());
        prop_assert!((lhs - rhs).abs() <= 1e-11 * (1.0 + norm(&mx) * norm(&y)));
    }

    #[test]
    fn dense_operator_matches_apply(seed in any::<u64>(), n in 1usize..10) {
        let mut g = rng(seed);
        let prob = random_problem(n, 3, 2, &mut g);
        let x = uniform_sym(n, &mut g);
        let dense = dense_operator(&prob);
        let via_dense = &dense * nalgebra::DVector::from_column_slice(x.packed());
        for (a, b) in prob.apply_m(&x).unwrap().iter().zip(via_dense.iter()) {
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn moreau_decomposition(seed in any::<u64>(), n in 1usize..25) {
        let s = uniform_sym(n, &mut rng(seed));
        let mut neg = s.clone();
        neg.scale(-1.0);
        let plus = proj_psd(&s).unwrap();
        let minus = proj_psd(&neg).unwrap();
        let mut rebuilt = plus.clone();
        rebuilt.axpy(-1.0, &minus);
        prop_assert!(frobenius_distance(&s, &rebuilt) <= 1e-12 * s.frobenius_norm().max(1.0));
        // the two parts are orthogonal
        prop_assert!(plus.dot(&minus).abs() <= 1e-12 * s.frobenius_norm().powi(2).max(1.0));
    }

    #[test]
    fn projection_matches_oracle(seed in any::<u64>(), n in 1usize..25) {
        let s = gaussian_sym(n, &mut rng(seed));
        let p = proj_psd(&s).unwrap();
        prop_assert!(frobenius_distance(&p, &oracle_proj_psd(&s)) <= 1e-9 * s.frobenius_norm().max(1.0));
        prop_assert!(frobenius_distance(&proj_psd(&p).unwrap(), &p) <= 1e-9 * s.frobenius_norm().max(1.0));
    }

    #[test]
    fn projection_is_nonexpansive(seed in any::<u64>(), n in 1usize..20) {
        let mut g = rng(seed);
        let a = uniform_sym(n, &mut g);
        let b = uniform_sym(n, &mut g);
        let lhs = frobenius_distance(&proj_psd(&a).unwrap(), &proj_psd(&b).unwrap());
        prop_assert!(lhs <= frobenius_distance(&a, &b) + 1e-9);
    }

    #[test]
    fn truncation_error_is_bounded_by_discarded_eigenvalues(seed in any::<u64>(), n in 2usize..30, r_frac in 0.0f64..1.0) {
        let s = gaussian_sym(n, &mut rng(seed));
        let r = 1 + ((n - 1) as f64 * r_frac) as usize;
        let (approx, _) = aproj_psd(&s, r).unwrap();
        let err_sq = frobenius_distance(&proj_psd(&s).unwrap(), &approx).powi(2);
        let lambda_next = if r < n { oracle_eigenvalues(&s)[r].max(0.0) } else { 0.0 };
        prop_assert!(err_sq <= (n - r) as f64 * lambda_next * lambda_next + 1e-8);
    }

    #[test]
    fn certificate_bound_holds_below_unit_spectrum(seed in any::<u64>(), n in 2usize..30, r_frac in 0.0f64..1.0) {
        // with every eigenvalue at most 1 in magnitude, squares never exceed values
        let mut s = gaussian_sym(n, &mut rng(seed));
        let spectral = oracle_eigenvalues(&s).iter().fold(0.0f64, |a, v| a.max(v.abs()));
        s.scale(1.0 / spectral.max(1e-300));
        let r = 1 + ((n - 1) as f64 * r_frac) as usize;
        let (approx, lambda_r) = aproj_psd(&s, r).unwrap();
        let err_sq = frobenius_distance(&proj_psd(&s).unwrap(), &approx).powi(2);
        prop_assert!(err_sq <= approx_error_bound(n, r, lambda_r) + 1e-8);
    }

    #[test]
    fn full_rank_truncation_is_exact(seed in any::<u64>(), n in 1usize..40) {
        let s = uniform_sym(n, &mut rng(seed));
        let (approx, lambda) = aproj_psd(&s, n).unwrap();
        prop_assert!(frobenius_distance(&approx, &proj_psd(&s).unwrap()) <= 1e-10 * s.frobenius_norm().max(1.0));
        let smallest = *oracle_eigenvalues(&s).last().unwrap();
        prop_assert!((lambda - smallest).abs() <= 1e-9 * s.frobenius_norm().max(1.0));
    }

    #[test]
    fn truncated_projection_has_rank_at_most_r(seed in any::<u64>(), n in 2usize..60, r in 1usize..6) {
        let r = r.min(n);
        let s = gaussian_sym(n, &mut rng(seed));
        let detailed = aproj_psd_detailed(&s, r).unwrap();
        let values = full_eigen(&detailed.matrix).unwrap().values;
        let scale = values[0].abs().max(1.0);
        prop_assert!(values.iter().filter(|&&v| v > 1e-9 * scale).count() <= r);
        prop_assert!(*values.last().unwrap() >= -1e-9 * scale);
        let oracle = oracle_eigenvalues(&s);
        prop_assert!((detailed.lambda_r - oracle[r - 1]).abs() <= 1e-8 * oracle[0].abs().max(1.0));
        if r < n {
            prop_assert!((detailed.lambda_next.unwrap() - oracle[r]).abs() <= 1e-8 * oracle[0].abs().max(1.0));
        }
    }

    #[test]
    fn truncated_eigen_matches_oracle(seed in any::<u64>(), n in 33usize..90, r in 1usize..8) {
        let s = gaussian_sym(n, &mut rng(seed));
        let eig = truncated_eigen(&s, r).unwrap();
        let oracle = oracle_eigenvalues(&s);
        for (got, want) in eig.values.iter().zip(&oracle) {
            prop_assert!((got - want).abs() <= 1e-8 * oracle[0].abs().max(1.0));
        }
    }

    #[test]
    fn packing_round_trip_within_one_rounding(seed in any::<u64>(), n in 1usize..12) {
        let mut g = rng(seed);
        let mut rows = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v: f64 = rand::Rng::random_range(&mut g, -1e3..1e3);
                rows[i * n + j] = v;
                rows[j * n + i] = v;
            }
        }
        let back = smat(&svec(n, &rows).unwrap()).unwrap().to_dense();
        for (k, (a, b)) in rows.iter().zip(&back).enumerate() {
            if k / n == k % n {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            } else {
                prop_assert!((a - b).abs() <= f64::EPSILON * a.abs());
            }
        }
    }

    #[test]
    fn packed_dot_is_trace_product(seed in any::<u64>(), n in 1usize..12) {
        let mut g = rng(seed);
        let a = uniform_sym(n, &mut g);
        let b = uniform_sym(n, &mut g);
        let (da, db) = (a.to_dense(), b.to_dense());
        let tr: f64 = (0..n).flat_map(|i| (0..n).map(move |k| (i, k))).map(|(i, k)| da[i * n + k] * db[k * n + i]).sum();
        prop_assert!((a.dot(&b) - tr).abs() <= 1e-12 * (1.0 + tr.abs()));
    }
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn operator_norm_matches_svd(seed in any::<u64>(), n in 2usize..61, m in 1usize..12, p in 0usize..6) {
        let prob = random_problem(n, m, p, &mut rng(seed));
        let ratio = estimate_operator_norm(&prob, seed).unwrap() / dense_operator_norm(&prob);
        prop_assert!((0.999..=1.02).contains(&ratio), "ratio {ratio}");
    }
}

#[test]
fn packing_cannot_be_exact_for_every_double() {
    // x and its successor pack to the same scaled value
    let mut x = 1.5_f64;
    let collision = loop {
        let next = f64::from_bits(x.to_bits() + 1);
        if (x * std::f64::consts::SQRT_2).to_bits() == (next * std::f64::consts::SQRT_2).to_bits() {
            break (x, next);
        }
        x = next;
    };
    let mut a = SymMatrix::zeros(2);
    let mut b = SymMatrix::zeros(2);
    a.set(0, 1, collision.0);
    b.set(0, 1, collision.1);
    assert_eq!(a.packed(), b.packed());
}
