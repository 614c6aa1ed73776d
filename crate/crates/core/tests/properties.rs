use std::f64::consts::PI;

use proptest::prelude::*;
use qmegs::baselines::{qcels_loss, qpe_distribution};
use qmegs::estimator::{filter_grid, peak_indices, periodic_gaussian, wrapped_distance, FilterGrid};
use qmegs::linalg::{sym_eig, SymMatrix};
use qmegs::sampler::{generate_dataset, generate_integer_dataset, stream_rng};
use qmegs::spectrum::{assign_overlaps, build_toy, exact_signal, gap_report, SpectralModel};
use qmegs::{Complex64, Dataset, Shot, TimeMode};

/// Random valid model: eigenvalues anywhere in (−π, π), one or two dominant
/// modes holding most of the mass.
fn model_strategy() -> impl Strategy<Value = SpectralModel> {
    (3usize..12, any::<u64>(), 0.36f64..0.45, prop::bool::ANY).prop_map(|(m, seed, w, two)| {
        let mut rng = stream_rng(seed, 99);
        use rand::Rng;
        let mut lambda: Vec<f64> = (0..m).map(|_| rng.random_range(-3.1..3.1)).collect();
        lambda.sort_by(f64::total_cmp);
        lambda.dedup();
        let (idx, weights): (Vec<usize>, Vec<f64>) = if two && lambda.len() >= 3 {
            (vec![0, 1], vec![w, w])
        } else {
            (vec![0], vec![0.6 + w / 2.0])
        };
        assign_overlaps(&lambda, &idx, &weights, seed).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn signal_conjugate_symmetry(model in model_strategy(), t in -500.0f64..500.0) {
        let a = exact_signal(&model, -t);
        let b = exact_signal(&model, t).conj();
        prop_assert!((a - b).norm() < 1e-12);
        prop_assert!(exact_signal(&model, t).norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn builder_models_are_valid(m in 3usize..40, gap in 1e-4f64..0.3, seed in any::<u64>()) {
        let model = build_toy(m, gap, seed).unwrap();
        let total: f64 = model.overlaps().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert!(model.eigenvalues().iter().all(|l| l.abs() <= PI / 4.0));
        prop_assert!(model.p_min() > model.p_tail());
        let g = gap_report(&model);
        prop_assert!(g.delta <= g.delta_dom);
    }

    #[test]
    fn peaks_are_separated(model in model_strategy(), seed in any::<u64>(), k in 1usize..5) {
        let mut rng = stream_rng(seed, 0);
        let data = generate_dataset(&model, 64, 40.0, 1.0, &mut rng).unwrap();
        let grid = filter_grid(&data, 40.0, 0.05).unwrap();
        let picks = peak_indices(&grid, k, 5.0, false).unwrap();
        for i in 0..picks.len() {
            for j in 0..i {
                // α/q = 100 grid steps, i.e. α/T.
                prop_assert!(picks[i].abs_diff(picks[j]) >= 100);
                prop_assert!((grid.theta(picks[i]) - grid.theta(picks[j])).abs() >= 5.0 / 40.0 - 1e-12);
            }
        }
    }

    #[test]
    fn wrapped_peaks_are_separated_on_the_circle(model in model_strategy(), seed in any::<u64>()) {
        let mut rng = stream_rng(seed, 1);
        let data = generate_integer_dataset(&model, 64, 30.0, 2.0, &mut rng).unwrap();
        let grid = filter_grid(&data, 30.0, 0.05).unwrap();
        let picks = peak_indices(&grid, 3, 5.0, true).unwrap();
        for i in 0..picks.len() {
            for j in 0..i {
                let d = wrapped_distance(grid.theta(picks[i]), grid.theta(picks[j]));
                prop_assert!(d >= 5.0 / 30.0 - 1e-12);
            }
        }
    }

    #[test]
    fn argmax_is_scale_free(model in model_strategy(), seed in any::<u64>(), power in -6i32..6) {
        let mut rng = stream_rng(seed, 2);
        let data = generate_dataset(&model, 80, 25.0, 1.0, &mut rng).unwrap();
        let factor = 2f64.powi(power);
        let scaled = Dataset {
            shots: data.shots.iter().map(|s| Shot { t: s.t, z: s.z * factor }).collect(),
            ..data.clone()
        };
        let a = peak_indices(&filter_grid(&data, 25.0, 0.05).unwrap(), 3, 5.0, false).unwrap();
        let b = peak_indices(&filter_grid(&scaled, 25.0, 0.05).unwrap(), 3, 5.0, false).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn wrapped_distance_is_a_metric(u in -10.0f64..10.0, v in -10.0f64..10.0, w in -10.0f64..10.0) {
        let d = wrapped_distance(u, v);
        prop_assert!((0.0..=PI).contains(&d));
        prop_assert_eq!(d, wrapped_distance(v, u));
        prop_assert!(d <= wrapped_distance(u, w) + wrapped_distance(w, v) + 1e-12);
        prop_assert!(wrapped_distance(u, u + 2.0 * PI) < 1e-12);
    }

    #[test]
    fn periodic_gaussian_is_even_and_periodic(x in -7.0f64..7.0, t in 1.0f64..30.0) {
        let p = periodic_gaussian(x, t).unwrap();
        prop_assert_eq!(p, periodic_gaussian(-x, t).unwrap());
        prop_assert!((p - periodic_gaussian(x + 2.0 * PI, t).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn qpe_partition_of_unity(model in model_strategy(), d in 1u32..=14) {
        let p = qpe_distribution(&model, d).unwrap();
        prop_assert!(p.iter().all(|&x| x >= 0.0));
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn sym_eig_reconstructs(n in 1usize..24, seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = stream_rng(seed, 3);
        let mut a = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                a.add_symmetric(i, j, rng.random_range(-1.0..1.0));
            }
        }
        let e = sym_eig(&a).unwrap();
        let scale = a.frobenius_norm().max(1e-300);
        for i in 0..n {
            for j in 0..n {
                let r: f64 = (0..n).map(|k| e.vector_entry(i, k) * e.values[k] * e.vector_entry(j, k)).sum();
                prop_assert!((r - a.get(i, j)).abs() <= 1e-10 * scale);
            }
        }
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn qcels_loss_minimum_at_truth() {
    use rand::Rng;
    let r = [Complex64::new(0.5, 0.0), Complex64::new(0.3, 0.2)];
    let theta = [-0.6, 0.4];
    let shots = (0..300)
        .map(|i| {
            let t = (i as f64 * 0.377).cos() * 30.0;
            let z = r.iter().zip(&theta).map(|(a, &b)| a * Complex64::from_polar(1.0, -b * t)).sum();
            Shot { t, z }
        })
        .collect();
    let data = Dataset { shots, depth: 30.0, sigma: 1.0, mode: TimeMode::Real };
    let truth = qcels_loss(&data, &r, &theta).unwrap();
    let mut rng = stream_rng(17, 0);
    for _ in 0..1000 {
        let rr = [
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
        ];
        let tt = [rng.random_range(-PI..PI), rng.random_range(-PI..PI)];
        assert!(qcels_loss(&data, &rr, &tt).unwrap() > truth);
    }
}

#[test]
fn grid_spacing_and_bounds() {
    let mut rng = stream_rng(3, 3);
    let model = SpectralModel::new(vec![0.1, 0.4], vec![0.7, 0.3], vec![0]).unwrap();
    let data = generate_dataset(&model, 10, 123.0, 1.0, &mut rng).unwrap();
    let grid: FilterGrid = filter_grid(&data, 123.0, 0.05).unwrap();
    assert_eq!(grid.len(), (2.0 * PI * 123.0 / 0.05).floor() as usize + 1);
    assert!(grid.values().iter().all(|&g| (0.0..=2f64.sqrt() + 1.0).contains(&g)));
    let th = grid.thetas();
    for w in th.windows(2) {
        assert!((w[1] - w[0] - 0.05 / 123.0).abs() < 1e-12);
    }
}
