use std::sync::Arc;

use proptest::prelude::*;
use vilenkin::characters::{character_function, dirichlet_kernel};
use vilenkin::group::{add_points, cylinder_cells, sub_points};
use vilenkin::norms::{hardy_norm_of, lp_quasinorm, weak_lp_quasinorm};
use vilenkin::transform::{analyze, analyze_naive, fejer_mean, fejer_spectrum, synthesize};
use vilenkin::{CellIndex, Complex, GroupPoint, Spectrum64, StepFunction64, VilenkinStructure};

fn structure() -> impl Strategy<Value = VilenkinStructure> {
    prop::collection::vec(2usize..=5, 1..=5).prop_filter_map("cells cap", |m| {
        let n = m.len();
        let vs = VilenkinStructure::new(m, n).ok()?;
        (vs.cells() <= 1024).then_some(vs)
    })
}

fn with_values() -> impl Strategy<Value = (Arc<VilenkinStructure>, Vec<(f64, f64)>)> {
    structure().prop_flat_map(|vs| {
        let cells = vs.cells();
        (
            Just(Arc::new(vs)),
            prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), cells),
        )
    })
}

fn function(vs: &Arc<VilenkinStructure>, values: &[(f64, f64)]) -> StepFunction64 {
    StepFunction64::new(
        vs.clone(),
        values
            .iter()
            .map(|&(re, im)| Complex::new(re, im))
            .collect(),
    )
    .unwrap()
}

fn point(vs: &VilenkinStructure, id: usize) -> GroupPoint {
    GroupPoint::from_cell(
        CellIndex {
            id,
            depth: vs.resolution(),
        },
        vs,
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn digits_round_trip(vs in structure(), seed in any::<usize>()) {
        let n = seed % vs.cells();
        let digits = vs.index_to_digits(n).unwrap();
        prop_assert_eq!(vs.digits_to_index(&digits).unwrap(), n);
        for (k, &d) in digits.iter().enumerate() {
            prop_assert!(d < vs.m(k));
        }
        if n > 0 {
            let lead = vs.leading_position(n).unwrap();
            prop_assert!(vs.big_m(lead) <= n && n < vs.big_m(lead + 1));
        }
    }

    #[test]
    fn group_axioms(vs in structure(), a in any::<usize>(), b in any::<usize>(), c in any::<usize>()) {
        let (x, y, z) = (point(&vs, a % vs.cells()), point(&vs, b % vs.cells()), point(&vs, c % vs.cells()));
        let zero = GroupPoint::zero(&vs);
        let xy = add_points(&x, &y, &vs).unwrap();
        prop_assert_eq!(&xy, &add_points(&y, &x, &vs).unwrap());
        prop_assert_eq!(
            add_points(&xy, &z, &vs).unwrap(),
            add_points(&x, &add_points(&y, &z, &vs).unwrap(), &vs).unwrap()
        );
        prop_assert_eq!(&add_points(&x, &zero, &vs).unwrap(), &x);
        prop_assert_eq!(sub_points(&x, &x, &vs).unwrap(), zero);
        prop_assert_eq!(&sub_points(&xy, &y, &vs).unwrap(), &x);
    }

    #[test]
    fn cylinders_nest(vs in structure(), a in any::<usize>()) {
        let x = point(&vs, a % vs.cells());
        for n in 0..vs.resolution() {
            let outer = cylinder_cells(&x, n, &vs).unwrap();
            let inner = cylinder_cells(&x, n + 1, &vs).unwrap();
            prop_assert!(outer.start <= inner.start && inner.range().end <= outer.range().end);
            prop_assert!((inner.measure(&vs) * vs.m(n) as f64 - outer.measure(&vs)).abs() < 1e-15);
            prop_assert!(inner.contains(x.cell(&vs).id));
        }
    }

    #[test]
    fn transform_round_trips((vs, values) in with_values()) {
        let f = function(&vs, &values);
        let s = analyze(&f);
        prop_assert!(synthesize(&s).max_abs_diff(&f).unwrap() < 1e-10);
        let again = analyze(&synthesize(&s));
        prop_assert!(again.max_abs_diff(&s).unwrap() < 1e-10);
    }

    #[test]
    fn parseval((vs, values) in with_values()) {
        let f = function(&vs, &values);
        let energy: f64 = f.values().iter().map(|v| v.norm_sqr()).sum::<f64>() / vs.cells() as f64;
        let spectral = analyze(&f).energy();
        prop_assert!((energy - spectral).abs() <= 1e-10 * energy.max(1e-300));
    }

    #[test]
    fn fast_equals_naive((vs, values) in with_values()) {
        let f = function(&vs, &values);
        let scale = f.sup_norm().max(1.0);
        prop_assert!(analyze(&f).max_abs_diff(&analyze_naive(&f)).unwrap() < 1e-10 * scale);
    }

    #[test]
    fn fejer_coefficient_law((vs, values) in with_values(), n_seed in any::<usize>()) {
        let s = analyze(&function(&vs, &values));
        let n = 1 + n_seed % vs.cells();
        let sigma = fejer_spectrum(&s, n).unwrap();
        for j in 0..vs.cells() {
            let w = if j < n { 1.0 - j as f64 / n as f64 } else { 0.0 };
            prop_assert!((sigma.coeff(j) - s.coeff(j) * w).norm() < 1e-12 * s.coeff(j).norm().max(1.0));
        }
        let via_transform = analyze(&fejer_mean(&s, n).unwrap());
        prop_assert!(via_transform.max_abs_diff(&sigma).unwrap() < 1e-10);
    }

    #[test]
    fn norm_orderings((vs, values) in with_values(), p in 0.1f64..1.0) {
        let f = function(&vs, &values);
        let lp = lp_quasinorm(&f, p).unwrap();
        let weak = weak_lp_quasinorm(&f, p).unwrap();
        prop_assert!(weak.root <= lp * (1.0 + 1e-12));
        prop_assert!(lp <= hardy_norm_of(&f, p).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn characters_multiply_on_rows(vs in structure(), n_seed in any::<usize>(), y_seed in any::<usize>()) {
        let vs = Arc::new(vs);
        let n = n_seed % vs.cells();
        let y = y_seed % vs.cells();
        let psi = character_function::<f64>(n, &vs).unwrap();
        // ψ_n(x − y) = ψ_n(x) · conj(ψ_n(y))
        let shifted = psi.translate(y);
        for x in 0..vs.cells() {
            let expected = psi.value(x) * psi.value(y).conj();
            prop_assert!((shifted.value(x) - expected).norm() < 1e-12);
        }
    }
}

#[test]
fn gram_matrix_is_identity_mixed_radix() {
    let vs = Arc::new(VilenkinStructure::new(vec![2, 3, 2, 3], 4).unwrap());
    let rows: Vec<_> = (0..vs.cells())
        .map(|n| character_function::<f64>(n, &vs).unwrap())
        .collect();
    for (i, a) in rows.iter().enumerate() {
        for (j, b) in rows.iter().enumerate() {
            let inner: Complex<f64> = a
                .values()
                .iter()
                .zip(b.values())
                .map(|(x, y)| x * y.conj())
                .sum::<Complex<f64>>()
                / vs.cells() as f64;
            let expected = if i == j { 1.0 } else { 0.0 };
            assert!((inner - Complex::new(expected, 0.0)).norm() < 1e-12);
        }
    }
}

#[test]
fn dirichlet_at_powers_is_scaled_indicator() {
    for vs in [
        VilenkinStructure::new(vec![2, 3, 2, 3], 4).unwrap(),
        VilenkinStructure::walsh(10).unwrap(),
    ] {
        let vs = Arc::new(vs);
        let zero = GroupPoint::zero(&vs);
        for j in 0..=vs.resolution() {
            let d = dirichlet_kernel::<f64>(vs.big_m(j), &vs).unwrap();
            let cyl = cylinder_cells(&zero, j, &vs).unwrap();
            for (cell, v) in d.values().iter().enumerate() {
                let expected = if cyl.contains(cell) {
                    vs.big_m(j) as f64
                } else {
                    0.0
                };
                assert!((v - Complex::new(expected, 0.0)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn fejer_decomposition_for_band_limited() {
    // σ_n f − f = (M_{N0}/n)(σ_{M_{N0}} f − f) when f̂ vanishes from M_{N0} on.
    let vs = Arc::new(VilenkinStructure::from_pattern(&[2, 3], 6).unwrap());
    let mut rng = vilenkin::rng::XorShift64Star::new(5);
    for n0 in 1..5 {
        let band = vs.big_m(n0);
        let s = Spectrum64::from_fn(vs.clone(), |j| {
            if j < band {
                Complex::new(rng.next_signed_unit(), rng.next_signed_unit())
            } else {
                Complex::new(0.0, 0.0)
            }
        });
        let f = synthesize(&s);
        let base = fejer_mean(&s, band).unwrap().try_sub(&f).unwrap();
        for n in [band + 1, 2 * band + 3, vs.cells()] {
            let lhs = fejer_mean(&s, n).unwrap().try_sub(&f).unwrap();
            let rhs = base.scale(band as f64 / n as f64);
            assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
        }
    }
}

#[test]
fn single_precision_tracks_double() {
    let vs = Arc::new(VilenkinStructure::from_pattern(&[3, 2], 6).unwrap());
    let mut rng = vilenkin::rng::XorShift64Star::new(12);
    let raw: Vec<f64> = (0..vs.cells()).map(|_| rng.next_signed_unit()).collect();
    let f64_fn = StepFunction64::from_real(vs.clone(), &raw).unwrap();
    let f32_vals: Vec<f32> = raw.iter().map(|&v| v as f32).collect();
    let f32_fn = vilenkin::StepFunction32::from_real(vs.clone(), &f32_vals).unwrap();
    let a = analyze(&f64_fn);
    let b = analyze(&f32_fn);
    for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
        assert!((x.re - y.re as f64).abs() < 1e-5 && (x.im - y.im as f64).abs() < 1e-5);
    }
    let p64 = lp_quasinorm(&f64_fn, 0.5).unwrap();
    let p32 = lp_quasinorm(&f32_fn, 0.5).unwrap();
    assert!((p64 - p32 as f64).abs() < 1e-5);
}
