use num_complex::Complex64;
use proptest::prelude::*;
use rustfft::FftPlanner;

use projdet::holographic::{casimirs, casimirs_from_moments, dft, fft, moments_from_casimirs, FermionConfig};
use projdet::Partition;

fn signal(max_log: u32) -> impl Strategy<Value = Vec<Complex64>> {
    (0..=max_log).prop_flat_map(|bits| {
        prop::collection::vec((-1e3..1e3f64, -1e3..1e3f64).prop_map(|(re, im)| Complex64::new(re, im)), 1 << bits)
    })
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..7, 0..7).prop_map(Partition::from_unsorted)
}

fn max_gap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn fft_agrees_with_rustfft(x in signal(9)) {
        let mut reference = x.clone();
        FftPlanner::new().plan_fft_forward(x.len()).process(&mut reference);
        let (ours, ops) = fft(&x);
        let scale = x.iter().map(|v| v.norm()).sum::<f64>().max(1.0);
        prop_assert!(max_gap(&ours, &reference) <= 1e-12 * scale);
        let l = x.len() as u64;
        prop_assert_eq!(ops.complex_mults, l / 2 * l.trailing_zeros() as u64);
    }

    #[test]
    fn dft_agrees_with_rustfft_any_length(x in prop::collection::vec((-10.0..10.0f64).prop_map(|r| Complex64::new(r, 0.0)), 1..40)) {
        let mut reference = x.clone();
        FftPlanner::new().plan_fft_forward(x.len()).process(&mut reference);
        let (ours, ops) = dft(&x, x.len());
        prop_assert!(max_gap(&ours, &reference) <= 1e-10);
        prop_assert_eq!(ops.complex_mults, (x.len() * x.len()) as u64);
    }

    #[test]
    fn partition_text_round_trip(p in partition()) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<Partition>().unwrap(), p.clone());
        prop_assert_eq!(p.conjugate().conjugate(), p);
    }

    #[test]
    fn fermion_round_trip_and_moment_inversion(p in partition(), extra in 0usize..3, lambda in 0usize..6) {
        let big_n = p.len() + 1 + extra;
        let config = FermionConfig::from_diagram(&p, big_n).unwrap();
        prop_assert_eq!(config.to_diagram(), p);
        let a = casimirs(&config, lambda);
        let m = moments_from_casimirs(&a).unwrap();
        prop_assert_eq!(casimirs_from_moments(&m), a);
    }
}
