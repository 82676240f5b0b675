//! Decoder throughput and BE-CDF at one operating point of the keyed chain.
//!
//! cargo run --release --example ldpc_bench -- <snr_db> <alpha> <blocks>

use std::time::Instant;
use wiretap_secrecy::channel::{AwgnChannel, JammingProfile};
use wiretap_secrecy::codes::LdpcCode;
use wiretap_secrecy::gf2::BitVector;
use wiretap_secrecy::modem::{bpsk_llr_per_symbol, bpsk_modulate};
use wiretap_secrecy::rng::{domain, StreamKey};

fn main() {
    let code = LdpcCode::fixture().unwrap();
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().unwrap())
        .collect();
    let (snr, alpha, blocks) = (args[0], args[1], args[2] as u64);
    let ch = AwgnChannel::<f64>::from_snr_db(snr).unwrap();
    let jam = JammingProfile::contiguous(alpha, 0..127).unwrap();
    let vars = ch.noise_vars(1056, &jam).unwrap();
    let key = StreamKey::new(1, domain::TEST, 0);
    let t0 = Instant::now();
    let (mut fails, mut le10, mut iters) = (0, 0, 0);
    for b in 0..blocks {
        let mut rng = key.trial(b);
        let msg = BitVector::random(880, &mut rng);
        let cw = code.encode(&msg).unwrap();
        let y = ch
            .transmit(&bpsk_modulate::<f64>(&cw), &jam, &mut rng)
            .unwrap();
        let llr = bpsk_llr_per_symbol(&y, &vars).unwrap();
        let out = code.decode(&llr, 50).unwrap();
        iters += out.decoded.iterations;
        if !out.decoded.is_success() {
            fails += 1;
        }
        let e = out
            .decoded
            .bits
            .slice(0..127)
            .hamming_distance(&msg.slice(0..127))
            .unwrap();
        if e <= 10 {
            le10 += 1;
        }
    }
    let dt = t0.elapsed().as_secs_f64();
    println!(
        "snr {snr} alpha {alpha}: fer {:.4} becdf {:.4} avg_iter {:.1} {:.3} ms/block",
        fails as f64 / blocks as f64,
        le10 as f64 / blocks as f64,
        iters as f64 / blocks as f64,
        dt * 1e3 / blocks as f64
    );
}
