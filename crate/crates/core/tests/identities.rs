//! Property-based invariants: measure arithmetic, window projections, norm
//! axioms, and the split identity, over randomized band-limited measures.

use std::collections::BTreeMap;

use proptest::prelude::*;

use gowers_lab::delta::{delta_slice, MeasureTuple};
use gowers_lab::measure::{FourierMeasure, Window};
use gowers_lab::norms::{norm_split, uk_norm, uk_norm_pow};
use gowers_lab::{C64, Result};

fn build_real(bandwidth: i64, entries: &[(f64, f64)], unit_mass: bool) -> Result<FourierMeasure> {
    let mut coeffs = BTreeMap::new();
    let zero_value = if unit_mass { 1.0 } else { entries[0].0 };
    coeffs.insert(vec![0i64], C64::new(zero_value, 0.0));
    for c in 1..=bandwidth {
        let (re, im) = entries[c as usize];
        let v = C64::new(re, im);
        coeffs.insert(vec![c], v);
        coeffs.insert(vec![-c], v.conj());
    }
    FourierMeasure::new(1, coeffs, true)
}

fn build_complex(bandwidth: i64, entries: &[(f64, f64)]) -> Result<FourierMeasure> {
    let mut coeffs = BTreeMap::new();
    for c in -bandwidth..=bandwidth {
        let (re, im) = entries[(c + bandwidth) as usize];
        coeffs.insert(vec![c], C64::new(re, im));
    }
    FourierMeasure::new(1, coeffs, false)
}

prop_compose! {
    fn real_measure(max_bw: i64)
        (bw in 1..=max_bw)
        (bw in Just(bw),
         entries in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), (bw + 1) as usize))
        -> FourierMeasure
    {
        build_real(bw, &entries, true).unwrap()
    }
}

prop_compose! {
    fn complex_measure(max_bw: i64)
        (bw in 0..=max_bw)
        (bw in Just(bw),
         entries in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), (2 * bw + 1) as usize))
        -> FourierMeasure
    {
        build_complex(bw, &entries).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sharp_mollification_is_idempotent(mu in complex_measure(8), level in -1i32..=4) {
        let w = Window::sharp(level);
        let once = mu.mollify(&w, 1);
        let twice = once.mollify(&w, 1);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn add_sub_round_trips_coefficientwise(a in complex_measure(6), b in complex_measure(6)) {
        let back = a.sub(&b).unwrap().add(&b).unwrap();
        for (c, v) in a.coeffs() {
            prop_assert!((back.coeff(c) - v).norm() <= 1e-15);
        }
        for (c, v) in back.coeffs() {
            prop_assert!((a.coeff(c) - v).norm() <= 1e-15);
        }
    }

    #[test]
    fn json_round_trip_is_bit_exact(mu in complex_measure(6)) {
        let back = FourierMeasure::from_json(&mu.to_json()).unwrap();
        prop_assert_eq!(mu, back);
    }

    #[test]
    fn norm_triangle_and_homogeneity(a in real_measure(5), b in real_measure(5), s in -2.0f64..2.0) {
        for k in 2..=3u32 {
            let na = uk_norm(&a, k).unwrap();
            let nb = uk_norm(&b, k).unwrap();
            let nsum = uk_norm(&a.add(&b).unwrap(), k).unwrap();
            prop_assert!(nsum <= na + nb + 1e-9, "k={k}: {nsum} > {na} + {nb}");
            let scaled = uk_norm(&a.scale(C64::new(s, 0.0)), k).unwrap();
            prop_assert!((scaled - s.abs() * na).abs() <= 1e-9 * (1.0 + na));
        }
    }

    #[test]
    fn norms_nest_upward_even_for_signed_measures(a in real_measure(5), b in real_measure(5)) {
        // Difference of two probability measures: signed, total mass zero.
        let signed = a.sub(&b).unwrap();
        let n2 = uk_norm(&signed, 2).unwrap();
        let n3 = uk_norm(&signed, 3).unwrap();
        prop_assert!(n2 <= n3 + 1e-12, "{n2} > {n3}");
    }

    #[test]
    fn sharp_split_is_pythagorean(mu in real_measure(6), level in -1i32..=4) {
        let split = norm_split(&mu, 2, Window::sharp(level)).unwrap();
        let gap = (split.low_pow + split.high_pow - split.total_pow).abs();
        prop_assert!(gap <= 1e-12 * split.total_pow.max(1.0));
        let direct = uk_norm_pow(&mu, 2).unwrap();
        prop_assert!((split.total_pow - direct).abs() <= 1e-12 * direct.max(1.0));
    }

    #[test]
    fn slices_of_real_measures_are_hermitian(mu in real_measure(4)) {
        let t = MeasureTuple::all_equal(&mu, 2).unwrap();
        let slice = delta_slice(&t, 0).unwrap();
        slice.for_each(|coords, v| {
            let neg: Vec<i64> = coords.iter().map(|x| -x).collect();
            assert!((slice.value(&neg) - v.conj()).norm() <= 1e-12);
        });
    }
}
