use std::sync::Arc;

use wiretap_secrecy::codes::LdpcCode;
use wiretap_secrecy::llr::kl_vs_ber_sweep;
use wiretap_secrecy::metrics::{Axis, BlockSimulator};
use wiretap_secrecy::scenarios::{
    reduce_to_bsc, run_keyed_scenario, run_scrambler_scenario, serial_correlation_study, BscInputs,
    KeyedJammingScenario, Party, ScramblerBchScenario,
};

fn fixture() -> Arc<LdpcCode> {
    Arc::new(LdpcCode::fixture().unwrap())
}

#[test]
fn scrambler_error_propagation() {
    let scn = ScramblerBchScenario::new(1).unwrap();
    let grid = [0.0, 2.0, 4.0, 8.0];
    let c = run_scrambler_scenario(&scn, &grid, &[0.15], 1_000, 4).unwrap();
    for (b, a) in c.ber_before.points.iter().zip(&c.ber_after.points) {
        assert!(a.value >= b.value, "{} dB: {} < {}", a.x, a.value, b.value);
    }
    let last = c.ber_after.points.last().unwrap();
    assert_eq!(last.value, 0.0);
    assert_eq!(c.ber_before.points.last().unwrap().value, 0.0);
}

#[test]
fn keyed_curves_order_by_jamming() {
    let ldpc = fixture();
    let grid = [2.0];
    let vals: Vec<f64> = [0.2, 0.7, 1.0]
        .iter()
        .map(|&alpha| {
            let scn = KeyedJammingScenario::for_party(ldpc.clone(), Party::Eve { alpha }).unwrap();
            run_keyed_scenario(&scn, &grid, Axis::SnrDb, 10, &[0.05], 120, 8)
                .unwrap()
                .be_cdf
                .unwrap()
                .points[0]
                .value
        })
        .collect();
    assert!(vals[0] > vals[1] && vals[1] > vals[2], "{vals:?}");
}

#[test]
fn same_seed_same_keyed_results() {
    let scn = KeyedJammingScenario::new(fixture(), 0.7).unwrap();
    let a = run_keyed_scenario(&scn, &[1.0], Axis::SnrDb, 10, &[0.05], 20, 3).unwrap();
    let b = run_keyed_scenario(&scn, &[1.0], Axis::SnrDb, 10, &[0.05], 20, 3).unwrap();
    assert_eq!(a, b);
}

#[test]
fn kl_sweep_is_reproducible_and_decreasing() {
    let scn = KeyedJammingScenario::new(fixture(), 0.0).unwrap();
    let grid = [-25.0, -5.0, 0.0];
    let a = kl_vs_ber_sweep(&scn, &grid, 30, 2).unwrap();
    assert_eq!(a, kl_vs_ber_sweep(&scn, &grid, 30, 2).unwrap());
    let d: Vec<f64> = a.iter().map(|p| p.divergence.unwrap()).collect();
    assert!(d[0] < 0.05 && d[0] < d[1] && d[1] < d[2], "{d:?}");
}

#[test]
fn bsc_report_from_eve_sweep() {
    let scn = KeyedJammingScenario::new(fixture(), 0.7).unwrap();
    let grid = [-2.0, -1.0];
    let c = run_keyed_scenario(&scn, &grid, Axis::EbN0Db, 10, &[0.05], 100, 6).unwrap();
    let serial = serial_correlation_study(&scn, -2.0, 4, 8, 1).unwrap();
    let inputs = BscInputs {
        eve_ber_cdf: &c.ber_cdf[0],
        rate: scn.rate(),
        bob: None,
        kl: None,
        serial: Some(serial),
    };
    let r = reduce_to_bsc(&inputs, 0.05, 0.9).unwrap();
    assert!((r.p_wiretap_lower - 0.45).abs() < 1e-12);
    assert!(r.p_wiretap_lower <= 0.5);
    assert!(r.independence_note.contains("lag-1"));
    assert!(serial.lag1_interleaved.abs() < 0.05, "{serial:?}");
}
