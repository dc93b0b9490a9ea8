use hoti_core::linalg::{cx, CsrMatrix};
use hoti_core::models::{builtin_model, Geometry};
use hoti_core::spectral::{bands, dense_eigh_matrix, folded_near_zero, FoldedOptions, SolverChoice};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sparse Hermitian matrix with about `per_row` off-diagonal entries per row
/// and a diagonal spread around zero.
fn random_sparse(n: usize, per_row: usize, seed: u64) -> CsrMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Vec::new();
    for i in 0..n {
        t.push((i, i, cx(rng.gen_range(-2.0..2.0), 0.0)));
        for _ in 0..per_row / 2 {
            let j = rng.gen_range(0..n);
            if j == i {
                continue;
            }
            let v = cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            t.push((i, j, v));
            t.push((j, i, v.conj()));
        }
    }
    CsrMatrix::from_triplets(n, n, t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn folded_agrees_with_dense(n in 80usize..500, m in 1usize..9, seed in any::<u64>()) {
        let h = random_sparse(n, 6, seed);
        let opts = FoldedOptions { allow_dense: false, ..FoldedOptions::default() };
        let f = folded_near_zero(&h, m, &opts).unwrap();
        let d = dense_eigh_matrix(&h.to_dense()).unwrap();
        let mut near: Vec<f64> = d.eigenvalues.clone();
        near.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap());
        let mut want: Vec<f64> = near[..m].to_vec();
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        prop_assert_eq!(f.eigenvalues.len(), m);
        for (a, b) in f.eigenvalues.iter().zip(&want) {
            prop_assert!((a - b).abs() < 1e-8, "{} vs {}", a, b);
        }
        prop_assert!(f.max_residual < 1e-7);
    }
}

#[test]
fn folded_is_deterministic() {
    let h = random_sparse(300, 6, 9);
    let opts = FoldedOptions { allow_dense: false, ..FoldedOptions::default() };
    let a = folded_near_zero(&h, 4, &opts).unwrap();
    let b = folded_near_zero(&h, 4, &opts).unwrap();
    assert_eq!(a.eigenvalues, b.eigenvalues);
    assert_eq!(a.to_csv(), b.to_csv());
}

#[test]
fn near_zero_sweep_matches_dense_sweep() {
    let m = builtin_model("ham2", 0.5).unwrap();
    let g = Geometry::slab(3, 0, 12, 6);
    let dense = bands(&m, &g, None, &SolverChoice::Dense, 2).unwrap();
    let near = SolverChoice::NearZero { count: 4, options: FoldedOptions::default() };
    let folded = bands(&m, &g, None, &near, 2).unwrap();
    assert!((dense.min_abs() - folded.min_abs()).abs() < 1e-9);
    assert_eq!(dense.bands.len(), 36);
    let csv = folded.to_csv();
    assert!(csv.starts_with("k1,k2,band,energy\n"));
    assert!(!csv.contains('\r'));
}
