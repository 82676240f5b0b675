//! Regenerates `fixtures/ldpc_1056_880.txt`.
//!
//! cargo run -p wiretap-secrecy --release --example gen_ldpc_fixture -- [seed] [out]

use wiretap_secrecy::codes::{peg, LdpcCode};
use wiretap_secrecy::rng::{domain, StreamKey};

const N: usize = 1056;
const M: usize = 176;
const COLUMN_WEIGHT: usize = 3;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let out = args.next().unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/ldpc_1056_880.txt").into()
    });

    let mut rng = StreamKey::new(seed, domain::SETUP, 0).trial(0);
    let checks = peg::progressive_edge_growth(N, M, COLUMN_WEIGHT, &mut rng)?;
    let checks = peg::systematic_column_order(N, &checks)?;
    let code = LdpcCode::from_checks(N, checks)?;
    assert!(code.girth_at_least_six(), "PEG graph has a 4-cycle");
    let comment = format!(
        "LDPC(1056, 880) parity-check matrix, one line per check node.\n\
         Progressive edge growth, column weight {COLUMN_WEIGHT}, seed {seed}; columns\n\
         reordered so positions 880..1056 are the parity bits.\n\
         Regenerate: cargo run -p wiretap-secrecy --release --example gen_ldpc_fixture -- {seed}"
    );
    std::fs::write(&out, code.to_fixture_string(&comment))?;
    eprintln!("wrote {out}");
    Ok(())
}
