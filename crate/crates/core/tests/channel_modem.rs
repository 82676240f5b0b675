use num_complex::Complex;
use wiretap_secrecy::channel::{AwgnChannel, JammingProfile};
use wiretap_secrecy::gf2::BitVector;
use wiretap_secrecy::metrics::{ber_bpsk_awgn, dpsk_ber_awgn, BerEstimate};
use wiretap_secrecy::modem::{
    bpsk_hard_decision, bpsk_modulate, db_to_linear, dpsk_demodulate, dpsk_modulate, ebno_to_snr,
    snr_to_ebno,
};
use wiretap_secrecy::rng::{domain, StreamKey};

#[test]
fn uncoded_ber_matches_erfc_from_minus_6_to_6_db() {
    for db in -6..=6 {
        let ch = AwgnChannel::<f64>::from_snr_db(db as f64).unwrap();
        let mut rng = StreamKey::new(1, domain::TEST, db as u64).trial(0);
        let n = 400_000;
        let bits = BitVector::random(n, &mut rng);
        let rx = ch
            .transmit(&bpsk_modulate(&bits), &JammingProfile::none(), &mut rng)
            .unwrap();
        let errors = bpsk_hard_decision(&rx).hamming_distance(&bits).unwrap() as u64;
        let est = BerEstimate::new(errors, n as u64).unwrap();
        let p = ber_bpsk_awgn(db_to_linear(db as f64));
        assert!(est.agrees_with(p, 3.0), "{db} dB: {} vs {p}", est.p_hat);
    }
}

#[test]
fn full_jamming_acts_as_extra_noise() {
    let ch = AwgnChannel::<f64>::from_snr_db(3.0).unwrap();
    let n = 400_000;
    let jam = JammingProfile::contiguous(1.0, 0..n).unwrap();
    let mut rng = StreamKey::new(2, domain::TEST, 0).trial(0);
    let bits = BitVector::random(n, &mut rng);
    let rx = ch.transmit(&bpsk_modulate(&bits), &jam, &mut rng).unwrap();
    let errors = bpsk_hard_decision(&rx).hamming_distance(&bits).unwrap() as u64;
    let snr_eff = 1.0 / (2.0 * (ch.noise_var() + 0.5));
    assert!((ch.effective_noise_var(1.0) - ch.noise_var() - 0.5).abs() < 1e-15);
    let est = BerEstimate::new(errors, n as u64).unwrap();
    assert!(est.agrees_with(ber_bpsk_awgn(snr_eff), 3.0), "{est:?}");
}

#[test]
fn binary_dpsk_ber_at_ebn0_of_ten() {
    // ½e^{-10} ≈ 2.27e-5, so a few million bits give a usable count.
    let ebno = 10.0;
    let ch = AwgnChannel::<f64>::from_snr_linear(ebno).unwrap();
    let mut errors = 0u64;
    let mut total = 0u64;
    for frame in 0..40 {
        let mut rng = StreamKey::new(3, domain::TEST, frame).trial(0);
        let bits = BitVector::random(100_000, &mut rng);
        let tx = dpsk_modulate::<f64>(&bits, 2).unwrap();
        let rx = ch
            .transmit_complex(&tx, &JammingProfile::none(), &mut rng)
            .unwrap();
        errors += dpsk_demodulate(&rx, 2)
            .unwrap()
            .hamming_distance(&bits)
            .unwrap() as u64;
        total += bits.len() as u64;
    }
    let est = BerEstimate::new(errors, total).unwrap();
    assert!(
        est.agrees_with(dpsk_ber_awgn(ebno), 3.0),
        "{est:?} vs {}",
        dpsk_ber_awgn(ebno)
    );
}

#[test]
fn dpsk_round_trips_for_both_orders() {
    let mut rng = StreamKey::new(4, domain::TEST, 0).trial(0);
    for _ in 0..1000 {
        let bits = BitVector::random(254, &mut rng);
        for order in [2, 4] {
            let tx = dpsk_modulate::<f64>(&bits, order).unwrap();
            let rotated: Vec<Complex<f64>> = tx
                .iter()
                .map(|s| s * Complex::from_polar(1.0, 0.7))
                .collect();
            assert_eq!(dpsk_demodulate(&rotated, order).unwrap(), bits);
        }
    }
}

#[test]
fn rate_conversion_anchor() {
    let snr = ebno_to_snr(4.7, 880.0 / 1056.0).unwrap();
    assert!((snr - 3.91).abs() < 0.01);
    assert!((snr_to_ebno(snr, 880.0 / 1056.0).unwrap() - 4.7).abs() < 1e-12);
    assert!(ebno_to_snr(1.0, 0.0).is_err());
}
