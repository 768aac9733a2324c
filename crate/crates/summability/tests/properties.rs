//! Property tests for the algebraic invariants: convolution symmetry,
//! oddness of the symmetric difference, monotone classification bounds,
//! evaluation recurrences, norm homogeneity, and config round-trips.

use proptest::prelude::*;

use summability::cli::{parse_config, serialize_config, Command, QuadratureConfig, RunConfig};
use summability::fourier::FourierExpansion;
use summability::lipnorms::norm_fn;
use summability::means::{generalized_norlund, Mode};
use summability::signals;
use summability::weights::{
    build_convolution, classify_variation, VariationClass, WeightSequence,
};

fn weight_list() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01..10.0f64, 1..40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_commutes(p in weight_list(), q in weight_list()) {
        let n = p.len().min(q.len()) - 1;
        let ps = WeightSequence::explicit(p);
        let qs = WeightSequence::explicit(q);
        let ab = build_convolution(&ps, &qs, n).unwrap();
        let ba = build_convolution(&qs, &ps, n).unwrap();
        for k in 0..=n {
            let scale = ab.r[k].abs().max(1.0);
            prop_assert!((ab.r[k] - ba.r[k]).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn psi_is_exactly_odd(
        coeffs in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..8),
        x in -10.0..10.0f64,
        t in -5.0..5.0f64,
    ) {
        let (a, b): (Vec<f64>, Vec<f64>) = coeffs.into_iter().unzip();
        let e = FourierExpansion::new(0.3, a, b).unwrap();
        let f = signals::from_expansion(&e, "poly");
        let plus = summability::fourier::psi_difference(&f, x, t);
        let minus = summability::fourier::psi_difference(&f, x, -t);
        prop_assert_eq!(plus, -minus);
    }

    #[test]
    fn nondecreasing_sequences_are_head_bounded(increments in prop::collection::vec(0.0..1.0f64, 8..64), c0 in 0.1..5.0f64) {
        let mut values = vec![c0];
        for inc in increments {
            values.push(values.last().unwrap() + inc);
        }
        let horizon = values.len() - 1;
        let c = WeightSequence::explicit(values);
        let rep = classify_variation(&c, VariationClass::Head, horizon, horizon).unwrap();
        prop_assert!(rep.holds);
        prop_assert!(rep.minimal_k.unwrap() <= 1.0 + 1e-12);
    }

    #[test]
    fn vanishing_nonincreasing_sequences_are_rest_bounded(
        factors in prop::collection::vec(0.3..0.9f64, 65..80),
        c0 in 0.1..5.0f64,
    ) {
        let mut values = vec![c0];
        for f in &factors {
            values.push(values.last().unwrap() * f);
        }
        let tail = values.len() - 1;
        let c = WeightSequence::explicit(values);
        let rep = classify_variation(&c, VariationClass::Rest, 16, tail).unwrap();
        prop_assert!(rep.holds);
        prop_assert!(rep.minimal_k.unwrap() <= 1.0 + 1e-12);
    }

    #[test]
    fn recurrence_matches_direct_trig_evaluation(
        coeffs in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..16),
        a0 in -2.0..2.0f64,
        x in -20.0..20.0f64,
    ) {
        let (a, b): (Vec<f64>, Vec<f64>) = coeffs.into_iter().unzip();
        let e = FourierExpansion::new(a0, a, b).unwrap();
        let mut direct = a0 / 2.0;
        let mut conj_direct = 0.0;
        for k in 1..=e.order() {
            let kx = k as f64 * x;
            direct += e.a[k - 1] * kx.cos() + e.b[k - 1] * kx.sin();
            conj_direct += e.a[k - 1] * kx.sin() - e.b[k - 1] * kx.cos();
        }
        prop_assert!((e.partial_sum(e.order(), x).unwrap() - direct).abs() < 1e-10);
        prop_assert!((e.conjugate_partial_sum(e.order(), x).unwrap() - conj_direct).abs() < 1e-10);
    }

    #[test]
    fn norm_is_homogeneous(scale in -4.0..4.0f64, k in 1usize..5) {
        let f = move |x: f64| (k as f64 * x).sin() + 0.25;
        let g = move |x: f64| scale * f(x);
        for r in [1.0, 2.0, 3.0, f64::INFINITY] {
            let a = norm_fn(&f, r, 256).unwrap();
            let b = norm_fn(&g, r, 256).unwrap();
            prop_assert!((b - scale.abs() * a).abs() <= 1e-10 * (1.0 + a));
        }
    }

    #[test]
    fn constants_survive_any_positive_method(
        p in weight_list(),
        q in weight_list(),
        c in -5.0..5.0f64,
    ) {
        let n = p.len().min(q.len()) - 1;
        let ps = WeightSequence::explicit(p);
        let qs = WeightSequence::explicit(q);
        let s = vec![c; n + 1];
        let t = generalized_norlund(&ps, &qs, &s, n).unwrap();
        prop_assert!((t - c).abs() <= 1e-12 * (1.0 + c.abs()));
    }
}

fn arb_command() -> impl Strategy<Value = Command> {
    prop_oneof![
        Just(Command::Classify),
        Just(Command::Conjugate),
        Just(Command::Means),
        Just(Command::Rates),
        Just(Command::Corollaries),
    ]
}

fn arb_config() -> impl Strategy<Value = RunConfig> {
    let signal = prop_oneof![
        Just("cosk(3)".to_string()),
        Just("sawtooth".to_string()),
        Just("square".to_string()),
        Just("weierstrass(0.5, 8)".to_string()),
        Just("constant(2.0)".to_string()),
    ];
    let sequence = prop_oneof![
        Just("ones".to_string()),
        Just("harmonic".to_string()),
        Just("cesaro(0.5)".to_string()),
        Just("geometric(0.5)".to_string()),
        Just("1.0, 0.5, 0.25".to_string()),
    ];
    let mode = prop_oneof![
        Just(Mode::Ordinary),
        (0usize..5).prop_map(|shift| Mode::Almost { shift }),
    ];
    (
        (
            arb_command(),
            signal,
            sequence.clone(),
            prop_oneof![Just(VariationClass::Head), Just(VariationClass::Rest)],
            0.5..4.0f64,
            1usize..100,
            1usize..300,
        ),
        (
            prop::collection::btree_set(1usize..2000, 1..8),
            -10.0..10.0f64,
            16usize..512,
            any::<u64>(),
            0.0..1.0f64,
        ),
        (sequence.clone(), sequence, mode),
        (0.05..1.0f64, prop_oneof![Just(1.0), Just(2.0), Just(4.0), Just(f64::INFINITY)]),
        (16usize..4096, 2usize..16, -8.0..-2.0f64, 1usize..6, 64usize..8192),
    )
        .prop_map(
            |(
                (command, signal, sequence, class, k_candidate, horizon, tail_extra),
                (n_set, x, x_grid, seed, slope_tolerance),
                (method_p, method_q, mode),
                (lip_alpha, lip_r),
                (panels, gl_order, pv_exp, pv_levels, grid_points),
            )| {
                RunConfig {
                    command,
                    signal: Some(signal),
                    sequence: Some(sequence),
                    class: Some(class),
                    k_candidate,
                    horizon,
                    tail_horizon: horizon + tail_extra,
                    n_values: n_set.into_iter().collect(),
                    x,
                    x_grid,
                    seed,
                    slope_tolerance,
                    output: std::path::PathBuf::from("report.csv"),
                    method_p,
                    method_q,
                    mode,
                    lip_alpha,
                    lip_r,
                    quadrature: QuadratureConfig {
                        panels,
                        gl_order,
                        pv_cutoff: 10.0f64.powf(pv_exp),
                        pv_levels,
                        grid_points,
                    },
                }
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn config_round_trips_through_canonical_form(cfg in arb_config()) {
        let text = serialize_config(&cfg);
        let reparsed = parse_config(&text).unwrap();
        prop_assert_eq!(&cfg, &reparsed);
        prop_assert_eq!(text, serialize_config(&reparsed));
    }
}
