use proptest::prelude::*;
use toposmooth::filters::{
    cutoff_filter, douglas_peucker, douglas_peucker_kept, gaussian_filter, gaussian_kernel,
    median_filter, uniform_subsample,
};
use toposmooth::{FilterSpec, TimeSeries};

fn ts(v: &[f64]) -> TimeSeries {
    TimeSeries::new(v.to_vec()).unwrap()
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Median of the clamped window, by sorting.
fn median_oracle(v: &[f64], window: usize) -> Vec<f64> {
    let h = (window / 2) as isize;
    let n = v.len() as isize;
    (0..n)
        .map(|i| {
            let mut w: Vec<f64> = (i - h..=i + h)
                .map(|j| v[j.clamp(0, n - 1) as usize])
                .collect();
            w.sort_by(f64::total_cmp);
            w[w.len() / 2]
        })
        .collect()
}

/// Naive DFT low-pass, written from the definition.
fn cutoff_oracle(v: &[f64], keep: usize) -> Vec<f64> {
    let n = v.len();
    let tau = std::f64::consts::TAU;
    let spectrum: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            v.iter().enumerate().fold((0.0, 0.0), |(re, im), (t, &x)| {
                let a = -tau * (k * t) as f64 / n as f64;
                (re + x * a.cos(), im + x * a.sin())
            })
        })
        .collect();
    (0..n)
        .map(|t| {
            (0..n)
                .filter(|&k| k.min(n - k) <= keep)
                .map(|k| {
                    let a = tau * (k * t) as f64 / n as f64;
                    spectrum[k].0 * a.cos() - spectrum[k].1 * a.sin()
                })
                .sum::<f64>()
                / n as f64
        })
        .collect()
}

#[test]
fn median_examples() {
    assert_eq!(
        median_filter(&ts(&[0.0, 10.0, 0.0, 0.0]), 3)
            .unwrap()
            .values(),
        &[0.0; 4]
    );
    let x = ts(&[3.0, -1.0, 2.0, 8.0]);
    assert_eq!(median_filter(&x, 1).unwrap(), x);
    assert_eq!(
        median_filter(&ts(&[2.0; 6]), 5).unwrap().values(),
        &[2.0; 6]
    );
    assert!(median_filter(&x, 2).is_err());
    assert!(median_filter(&x, 0).is_err());
}

#[test]
fn gaussian_examples() {
    let x = ts(&[1.0, 4.0, -2.0]);
    assert_eq!(gaussian_filter(&x, 0.0).unwrap(), x);
    let flat = gaussian_filter(&ts(&[7.5; 9]), 2.3).unwrap();
    assert!(max_gap(flat.values(), &[7.5; 9]) <= 1e-9);
    // Impulse response is the kernel itself; zero padding beyond is replicate of zeros.
    let y = gaussian_filter(&ts(&[0.0, 0.0, 1.0, 0.0, 0.0]), 1.0).unwrap();
    let z: f64 = (-3i32..=3).map(|k| (-f64::from(k * k) / 2.0).exp()).sum();
    for (i, v) in y.values().iter().enumerate() {
        let k = i as f64 - 2.0;
        assert!((v - (-k * k / 2.0).exp() / z).abs() < 1e-12);
    }
    assert!(gaussian_filter(&x, -1.0).is_err());
}

#[test]
fn cutoff_examples() {
    let flat = cutoff_filter(&ts(&[3.0; 10]), 0).unwrap();
    assert!(max_gap(flat.values(), &[3.0; 10]) <= 1e-9);
    let cos: Vec<f64> = (0..8)
        .map(|i| (std::f64::consts::TAU * 2.0 * i as f64 / 8.0).cos())
        .collect();
    assert!(max_gap(cutoff_filter(&ts(&cos), 1).unwrap().values(), &[0.0; 8]) <= 1e-9);
    assert!(max_gap(cutoff_filter(&ts(&cos), 4).unwrap().values(), &cos) <= 1e-9);
}

#[test]
fn subsample_examples() {
    let x = ts(&[5.0, 1.0, 4.0]);
    assert_eq!(uniform_subsample(&x, 1).unwrap(), x);
    let ramp = ts(&[0.0, 1.0, 2.0, 3.0, 4.0]);
    assert_eq!(uniform_subsample(&ramp, 2).unwrap(), ramp);
    assert_eq!(
        uniform_subsample(&ts(&[0.0, 2.0, 0.0, 2.0, 0.0, 2.0]), 2)
            .unwrap()
            .values(),
        &[0.0, 0.0, 0.0, 0.0, 0.0, 2.0]
    );
    assert!(uniform_subsample(&x, 0).is_err());
}

#[test]
fn douglas_peucker_examples() {
    let x = ts(&[0.0, 0.0, 1.0, 0.0, 0.0]);
    assert_eq!(douglas_peucker_kept(&x, 0.5).unwrap(), vec![0, 2, 4]);
    assert_eq!(
        douglas_peucker(&x, 0.5).unwrap().values(),
        &[0.0, 0.5, 1.0, 0.5, 0.0]
    );
    let ramp = ts(&[0.0, 1.0, 2.0, 3.0]);
    assert_eq!(douglas_peucker_kept(&ramp, 0.1).unwrap(), vec![0, 3]);
    assert_eq!(douglas_peucker(&ramp, 0.1).unwrap(), ramp);
    assert!(douglas_peucker(&x, -0.1).is_err());
}

#[test]
fn douglas_peucker_uses_positions() {
    // With x = [0, 1, 10], the middle sample sits on the chord only in position space.
    let x = TimeSeries::with_positions(vec![0.0, 0.1, 1.0], vec![0.0, 1.0, 10.0]).unwrap();
    assert_eq!(douglas_peucker_kept(&x, 1e-9).unwrap(), vec![0, 2]);
}

fn specs(n: usize) -> Vec<FilterSpec> {
    vec![
        FilterSpec::Median { window: 5 },
        FilterSpec::Gaussian { sigma: 1.7 },
        FilterSpec::Cutoff {
            keep_frequencies: 2,
        },
        FilterSpec::Cutoff {
            keep_frequencies: 0,
        },
        FilterSpec::Subsample { stride: 3.min(n) },
        FilterSpec::DouglasPeucker { epsilon: 0.3 },
    ]
}

proptest! {
    #[test]
    fn median_matches_sorting_oracle(v in prop::collection::vec(-5.0f64..5.0, 2..30), h in 0usize..5) {
        let window = 2 * h + 1;
        let got = median_filter(&ts(&v), window).unwrap();
        prop_assert_eq!(got.values(), &median_oracle(&v, window)[..]);
    }

    #[test]
    fn cutoff_matches_naive_dft(v in prop::collection::vec(-5.0f64..5.0, 2..24), keep in 0usize..13) {
        let got = cutoff_filter(&ts(&v), keep).unwrap();
        prop_assert!(max_gap(got.values(), &cutoff_oracle(&v, keep)) <= 1e-9);
    }

    #[test]
    fn full_spectrum_is_identity(v in prop::collection::vec(-100.0f64..100.0, 2..64)) {
        let keep = v.len() / 2;
        prop_assert!(max_gap(cutoff_filter(&ts(&v), keep).unwrap().values(), &v) <= 1e-9);
    }

    #[test]
    fn kernel_sums_to_one(sigma in 0.01f64..80.0) {
        let k = gaussian_kernel(sigma);
        prop_assert_eq!(k.len(), 2 * (3.0 * sigma).ceil() as usize + 1);
        prop_assert!((k.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn douglas_peucker_residual_and_nesting(
        v in prop::collection::vec(-10.0f64..10.0, 2..60),
        e1 in 0.0f64..5.0,
        e2 in 0.0f64..5.0,
    ) {
        let x = ts(&v);
        let (lo, hi) = (e1.min(e2), e1.max(e2));
        for eps in [0.0, lo, hi] {
            let y = douglas_peucker(&x, eps).unwrap();
            prop_assert!(max_gap(y.values(), &v) <= eps + 1e-12);
        }
        let coarse = douglas_peucker_kept(&x, hi).unwrap();
        let fine = douglas_peucker_kept(&x, lo).unwrap();
        for i in &coarse {
            prop_assert!(fine.contains(i));
        }
    }

    #[test]
    fn subsample_keeps_sampled_points(v in prop::collection::vec(-10.0f64..10.0, 2..60), stride in 1usize..10) {
        let y = uniform_subsample(&ts(&v), stride).unwrap();
        for i in (0..v.len()).step_by(stride).chain([v.len() - 1]) {
            prop_assert_eq!(y.values()[i], v[i]);
        }
    }

    #[test]
    fn constants_and_shape_are_preserved(c in -50.0f64..50.0, n in 2usize..40) {
        let positions: Vec<f64> = (0..n).map(|i| i as f64 * 1.5 + 2.0).collect();
        let x = TimeSeries::with_positions(vec![c; n], positions).unwrap().labeled("flat");
        for spec in specs(n) {
            let y = spec.apply(&x).unwrap();
            prop_assert_eq!(y.explicit_positions(), x.explicit_positions());
            prop_assert_eq!(y.label(), "flat");
            prop_assert!(max_gap(y.values(), x.values()) <= 1e-9, "{}", spec);
        }
    }
}
