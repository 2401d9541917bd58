mod common;

use calpha_core::green::{build_nystrom, c_alpha_by_nystrom, green_eval, nystrom_convergence_table, GreenKernel, NystromRow};
use calpha_core::num::sym_eigen;
use common::{c2_reference, green_by_quadrature, C1};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn closed_form_matches_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for alpha in 1..=6u32 {
        for _ in 0..200 {
            let (x, y): (f64, f64) = (rng.random(), rng.random());
            let got = green_eval(alpha, x, y).unwrap();
            let want = green_by_quadrature(alpha, x, y);
            assert!((got - want).abs() < 1e-11, "alpha {alpha} at ({x}, {y}): {got} vs {want}");
        }
    }
}

#[test]
fn centre_value_of_clamped_beam() {
    assert!((green_eval(2, 0.5, 0.5).unwrap() - 1.0 / 192.0).abs() < 1e-16);
    assert!((green_by_quadrature(2, 0.5, 0.5) - 1.0 / 192.0).abs() < 1e-14);
}

#[test]
fn symmetries_on_grid() {
    for alpha in 1..=6u32 {
        let k = GreenKernel::new(alpha).unwrap();
        for i in 0..=40 {
            for j in 0..=40 {
                let (x, y) = (i as f64 / 40.0, j as f64 / 40.0);
                let g = k.eval(x, y);
                assert!(g >= 0.0);
                assert!((g - k.eval(y, x)).abs() <= 1e-11);
                assert!((g - k.eval(1.0 - x, 1.0 - y)).abs() <= 1e-11);
            }
            let y = i as f64 / 40.0;
            assert_eq!(k.eval(0.0, y), 0.0);
            assert_eq!(k.eval(1.0, y), 0.0);
        }
    }
}

#[test]
fn nystrom_matrix_properties() {
    for alpha in 1..=4u32 {
        let op = build_nystrom(alpha, 40).unwrap();
        assert!(op.matrix.asymmetry() <= 1e-13 * op.matrix.max_abs());
        let e = sym_eigen(&op.matrix).unwrap();
        assert!(e.values[0] >= -1e-12 * op.matrix.frobenius_norm());
    }
}

#[test]
fn rayleigh_bound_for_random_vectors() {
    let op = build_nystrom(2, 60).unwrap();
    let lmax = sym_eigen(&op.matrix).unwrap().values[59];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let mut v: Vec<f64> = (0..60).map(|_| rng.random_range(-1.0..1.0)).collect();
        let nv = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= nv);
        let av = op.matrix.mul_vec(&v);
        let q: f64 = v.iter().zip(&av).map(|(a, b)| a * b).sum();
        assert!(q <= lmax + 1e-12);
    }
}

#[test]
fn nystrom_constants() {
    let e = c_alpha_by_nystrom(1, 200, 1e-13).unwrap();
    assert!((e.value_f64() / C1 - 1.0).abs() < 1e-8);
    let e = c_alpha_by_nystrom(2, 200, 1e-13).unwrap();
    assert!((e.value_f64() / 500.5467 - 1.0).abs() < 1e-4);
    assert!((e.value_f64() / c2_reference() - 1.0).abs() < 1e-9);
    let e = c_alpha_by_nystrom(3, 300, 1e-13).unwrap();
    assert!((e.value_f64() - 61529.0).abs() <= 2.0);
    assert!(e.error_estimate >= 0.0);
    for m in [50, 64, 128] {
        assert!((c_alpha_by_nystrom(1, m, 1e-13).unwrap().value_f64() / C1 - 1.0).abs() < 1e-6);
    }
}

#[test]
fn large_alpha_stays_in_log_domain() {
    let e = c_alpha_by_nystrom(40, 64, 1e-12).unwrap();
    let lower = calpha_core::wirtinger::bound_lower(40);
    let upper = calpha_core::wirtinger::bound_upper(40);
    assert!(lower < e.value && e.value < upper);
}

#[test]
fn convergence_tables() {
    let t = nystrom_convergence_table(1, &[25, 50, 100]).unwrap();
    assert!((t[2].estimate() / C1 - 1.0).abs() < 1e-6);
    // raw values approach from below at rate m^-2
    assert!(t.windows(2).all(|w| w[0].raw < w[1].raw && w[1].raw < C1));
    let ratio = (C1 - t[1].raw) / (C1 - t[2].raw);
    assert!((ratio - 4.0).abs() < 0.1, "{ratio}");

    let t = nystrom_convergence_table(2, &[50, 100, 200]).unwrap();
    for col in [|r: &NystromRow| r.raw, |r: &NystromRow| r.estimate()] {
        let v: Vec<f64> = t.iter().map(col).collect();
        assert!((v[2] - v[1]).abs() <= (v[1] - v[0]).abs());
        assert!((v[1] - v[2]).abs() <= (v[0] - v[2]).abs());
    }
    assert!((t[2].estimate() / c2_reference() - 1.0).abs() < 1e-10);
}
