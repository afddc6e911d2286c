use proptest::prelude::*;

use stochord::arrangement::{check_arrangement_leq, verify_arrangement_chain, DEFAULT_BUDGET};
use stochord::distributions::ConvolutionSpec;
use stochord::harness::{numeric_check, Order, VerifyOptions};
use stochord::majorization::{check_majorization, t_transform_chain, verify_t_step};
use stochord::rc_order::{check_necessary, decide_wrc, verify_rc_chain, ChainMode, DecideOptions};
use stochord::{MajorizationMode, OrderVerdict, PairClass, RealVector};

fn rv(v: &[f64]) -> RealVector {
    RealVector::new(v.to_vec()).unwrap()
}

fn sorted(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    s
}

fn pairs(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    n.prop_flat_map(|n| {
        (
            prop::collection::vec(0.1f64..3.0, n),
            prop::collection::vec(0.05f64..0.95, n),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn majorization_preserves_convex_sums((x, y) in (1usize..7).prop_flat_map(|n| {
        (prop::collection::vec(-2.0f64..2.0, n), prop::collection::vec(-2.0f64..2.0, n))
    })) {
        let (fx, fy) = (rv(&x), rv(&y));
        if check_majorization(&fx, &fy, MajorizationMode::Full).unwrap().holds {
            let s = |v: &[f64], f: fn(f64) -> f64| v.iter().map(|&a| f(a)).sum::<f64>();
            prop_assert!(s(&x, |a| a * a) <= s(&y, |a| a * a) + 1e-9);
            prop_assert!(s(&x, f64::exp) <= s(&y, f64::exp) + 1e-9);
        }
        let b = check_majorization(&fx, &fy, MajorizationMode::Below).unwrap().holds;
        let a = check_majorization(&fx, &fy, MajorizationMode::Above).unwrap().holds;
        let f = check_majorization(&fx, &fy, MajorizationMode::Full).unwrap().holds;
        prop_assert_eq!(f, a && b);
    }

    #[test]
    fn averaging_gives_a_verified_t_chain(y in prop::collection::vec(0.0f64..5.0, 1..7), w in 0.0f64..1.0) {
        // x = w·mean + (1 − w)·y is majorized by y
        let y = sorted(&y);
        let mean = y.iter().sum::<f64>() / y.len() as f64;
        let x: Vec<f64> = y.iter().map(|&v| w * mean + (1.0 - w) * v).collect();
        let chain = t_transform_chain(&rv(&x), &rv(&y)).unwrap();
        prop_assert!(chain.steps.len() < y.len().max(2));
        for pair in chain.vectors.windows(2) {
            prop_assert!(verify_t_step(&pair[0], &pair[1]).unwrap());
        }
    }

    #[test]
    fn log_weak_majorization_implies_weak_majorization((x, y) in (1usize..7).prop_flat_map(|n| {
        (prop::collection::vec(0.05f64..4.0, n), prop::collection::vec(0.05f64..4.0, n))
    })) {
        let (lx, ly) = (rv(&x).ln().unwrap(), rv(&y).ln().unwrap());
        if check_majorization(&lx, &ly, MajorizationMode::Below).unwrap().holds {
            prop_assert!(check_majorization(&rv(&x), &rv(&y), MajorizationMode::Below).unwrap().holds);
        }
    }

    #[test]
    fn arrangement_sandwich((x, y) in pairs(1..=6)) {
        let xs = sorted(&x);
        let yu = sorted(&y);
        let yd: Vec<f64> = yu.iter().rev().copied().collect();
        let lo = PairClass::from_slices(&xs, &yd).unwrap();
        let p = PairClass::from_slices(&x, &y).unwrap();
        let hi = PairClass::from_slices(&xs, &yu).unwrap();
        for (a, b) in [(&lo, &p), (&p, &hi)] {
            match check_arrangement_leq(a, b, DEFAULT_BUDGET).unwrap() {
                OrderVerdict::Holds { evidence } => prop_assert!(verify_arrangement_chain(a, b, &evidence)),
                v => prop_assert!(false, "{}", v.status_str()),
            }
        }
    }

    #[test]
    fn decided_chains_verify_and_meet_necessary_conditions((x1, y1) in pairs(2..=4), (x2, y2) in pairs(2..=4)) {
        let n = x1.len().min(x2.len());
        let p1 = PairClass::from_slices(&x1[..n], &y1[..n]).unwrap();
        let p2 = PairClass::from_slices(&x2[..n], &y2[..n]).unwrap();
        let opts = DecideOptions { budget: 3_000 };
        for mode in [ChainMode::Strict, ChainMode::Weak] {
            if let OrderVerdict::Holds { evidence } = decide_wrc(&p1, &p2, mode, opts).unwrap() {
                prop_assert!(verify_rc_chain(&evidence));
                prop_assert!(check_necessary(&p1, &p2, mode).unwrap().holds);
            }
        }
        if decide_wrc(&p1, &p2, ChainMode::Strict, opts).unwrap().is_holds() {
            prop_assert!(decide_wrc(&p1, &p2, ChainMode::Weak, opts).unwrap().is_holds());
        }
    }

    #[test]
    fn conv_certificates_imply_st((a, p) in pairs(1..=3), raise in prop::collection::vec(0.0f64..1.0, 3),
                                  lower in prop::collection::vec(0.0f64..1.0, 3)) {
        let n = a.len();
        let a2: Vec<f64> = (0..n).map(|i| a[i] + raise[i]).collect();
        let p2: Vec<f64> = (0..n).map(|i| p[i] * (1.0 - 0.5 * lower[i])).collect();
        let s1 = ConvolutionSpec::negbin(&a, &p).unwrap();
        let s2 = ConvolutionSpec::negbin(&a2, &p2).unwrap();
        let opts = VerifyOptions::default();
        let conv = numeric_check(&s1, &s2, Order::Conv, None, &opts).unwrap();
        prop_assert!(conv.is_holds());
        prop_assert!(!numeric_check(&s1, &s2, Order::St, None, &opts).unwrap().is_refuted());
        // the reverse comparison moves mass downwards
        if a2.iter().zip(&a).any(|(u, v)| u - v > 0.05) {
            prop_assert!(numeric_check(&s2, &s1, Order::St, None, &opts).unwrap().is_refuted());
        }
    }

    #[test]
    fn gamma_rate_and_shape_directions(alpha in 0.2f64..3.0, beta in 0.2f64..5.0, d in 0.05f64..1.0) {
        let opts = VerifyOptions::default();
        let base = ConvolutionSpec::gamma(&[alpha], &[beta]).unwrap();
        let more_shape = ConvolutionSpec::gamma(&[alpha + d], &[beta]).unwrap();
        let lower_rate = ConvolutionSpec::gamma(&[alpha], &[beta / (1.0 + d)]).unwrap();
        for bigger in [&more_shape, &lower_rate] {
            prop_assert!(numeric_check(&base, bigger, Order::St, None, &opts).unwrap().is_holds());
            prop_assert!(numeric_check(bigger, &base, Order::St, None, &opts).unwrap().is_refuted());
        }
    }
}
