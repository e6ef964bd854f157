use ftlat_core::exrec::AlphaMatrix;
use ftlat_core::threshold::*;

fn published() -> AlphaMatrix {
    AlphaMatrix::from_lower(&[
        &[114],
        &[0, 160],
        &[1112, 1362, 3027],
        &[2302, 2483, 11160, 11040],
        &[0, 402, 3132, 1422, 216],
        &[300, 0, 3126, 1416, 0, 216],
        &[1186, 1501, 7962, 14626, 1740, 1410, 4465],
    ])
}

fn scaled(a: &AlphaMatrix, k: u64) -> AlphaMatrix {
    let mut m = *a;
    m.entries.iter_mut().flatten().for_each(|v| *v *= k);
    m
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn b_for_791_is_exact() {
    assert_eq!(b_coefficient(791).unwrap(), 82_173_035);
}

#[test]
fn a_total_unit_and_zero_weights() {
    let a = published();
    assert_eq!(a_total(&a, &unit_weights()), num_rational::Ratio::from_integer(75_880));
    assert_eq!(a.total(), 75_880);
    assert_eq!(a_total(&a, &[Weight::from_integer(0); 7]), num_rational::Ratio::from_integer(0));
}

#[test]
fn a_total_with_memory_at_one_tenth() {
    let w = memory_weights(Weight::new(1, 10));
    assert_eq!(a_total(&published(), &w), num_rational::Ratio::new(4_781_467, 100));
}

#[test]
fn a_prime_rounds_to_76948() {
    let ap = a_prime(75_880.0, 82_173_035.0).unwrap();
    assert!(rel(ap, 76_947.904_775_827_17) < 1e-12);
    assert_eq!(ap.round(), 76_948.0);
}

#[test]
fn equal_rate_threshold() {
    let t = threshold_equal(&published(), 791).unwrap();
    assert!(rel(t, 1.299_580_544_672_797e-5) < 1e-12);
    assert!(rel(t, 1.0 / a_prime(75_880.0, 82_173_035.0).unwrap()) < 1e-12);
    assert_eq!(format!("{t:.1e}"), "1.3e-5");
}

#[test]
fn doubling_a_and_quadrupling_b_halves_threshold() {
    let (a, b) = (75_880.0, 82_173_035.0);
    let t = threshold_from_coefficients(a, b);
    assert!(rel(threshold_from_coefficients(2.0 * a, 4.0 * b) / t, 0.5) < 1e-12);
    // Scaling A by 4 and B by 8 does not preserve the balance of the terms.
    assert!(rel(threshold_from_coefficients(4.0 * a, 8.0 * b) / t, 0.251_734_701_812_995_6) < 1e-12);
}

#[test]
fn scaled_matrix_scales_a() {
    let t = threshold_equal(&scaled(&published(), 2), 791).unwrap();
    assert!(rel(t, threshold_from_coefficients(151_760.0, 82_173_035.0)) < 1e-12);
}

#[test]
fn zero_alpha_gives_cubic_fixed_point() {
    let t = threshold_equal(&AlphaMatrix::default(), 791).unwrap();
    assert!(rel(t, 1.103_151_947_922_665e-4) < 1e-12);
    let mut w = [Weight::from_integer(0); 7];
    w[1] = Weight::from_integer(1);
    let mut a = published();
    a.entries[1][1] = 0;
    assert!(rel(threshold_weighted(&a, &w, 791).unwrap(), 1.103_151_947_922_665e-4) < 1e-12);
}

#[test]
fn weighted_threshold_memory_one_tenth() {
    let t = threshold_weighted(&published(), &memory_weights(Weight::new(1, 10)), 791).unwrap();
    assert!(rel(t, 2.021_200_303_967_848e-5) < 1e-12);
    assert!(rel(t, 2.02e-5) < 0.05);
}

#[test]
fn unit_weights_match_equal_rate() {
    let a = published();
    let t = threshold_weighted(&a, &unit_weights(), 791).unwrap();
    assert!(rel(t, threshold_equal(&a, 791).unwrap()) < 1e-12);
}

#[test]
fn weighted_threshold_monotone_in_each_weight() {
    let a = published();
    for i in 0..7 {
        let mut prev = f64::INFINITY;
        for k in 0..=20u64 {
            let mut w = unit_weights();
            w[i] = Weight::new(k, 10);
            let t = threshold_weighted(&a, &w, 791).unwrap();
            assert!(t <= prev, "type {} weight {k}/10", i + 1);
            prev = t;
        }
    }
}

#[test]
fn logical_rate_examples() {
    let e0 = 1.3e-5;
    assert_eq!(logical_rate(e0, e0, 3), e0);
    assert_eq!(logical_rate(4.2e-6, e0, 0), 4.2e-6);
    assert!(rel(logical_rate(1.3e-6, 1.3e-5, 2), 1.3e-9) < 1e-12);
}

#[test]
fn latency_report_levels() {
    let r = latency_report(1).unwrap();
    assert!(rel(r.cnot_ratio, 16.0 / 35.0) < 1e-15);
    assert_eq!(format!("{:.3}", r.cnot_ratio), "0.457");
    assert_eq!(r.ec_blowup, 7);
    let cnot = &r.rows[0];
    assert_eq!((cnot.gate.as_str(), cnot.nine_qubit, cnot.seven_qubit), ("cnot", 16, 35));
    let got: Vec<(usize, usize)> = r.rows.iter().map(|r| (r.nine_qubit, r.seven_qubit)).collect();
    assert_eq!(got, [(16, 35), (14, 35), (16, 41), (16, 41), (1, 1)]);
    assert_eq!(latency_report(0).unwrap().cnot_ratio, 1.0);
    let r3 = latency_report(3).unwrap();
    assert!(rel(r3.cnot_ratio, 0.095_533_527_696_793) < 1e-12);
    assert_eq!(r3.ec_blowup, 343);
}

#[test]
fn report_fields_are_consistent() {
    let r = ThresholdReport::new("published", &published(), 791, &memory_weights(Weight::new(1, 10)), 1e-6, 2).unwrap();
    assert_eq!(r.a, 75_880);
    assert_eq!(r.b, 82_173_035);
    assert!(rel(r.threshold_equal, 1.0 / r.a_prime) < 1e-12);
    assert_eq!(r.weights[2], "1/10");
    assert_eq!(r.levels.len(), 3);
    assert!((r.a_weighted - 47_814.67).abs() < 1e-9);
}

#[test]
fn next_level_bound_at_threshold_is_a_fixed_point() {
    let a = published();
    let t = threshold_equal(&a, 791).unwrap();
    let rates = ErrorRates::scaled(0, t, &unit_weights()).unwrap();
    assert!(rel(rates.next_cnot_bound(&a, b_coefficient(791).unwrap()), t) < 1e-12);
    assert!(ErrorRates::new(0, [f64::NAN; 7]).is_err());
}
