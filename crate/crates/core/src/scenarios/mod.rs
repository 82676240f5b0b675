//! End-to-end chains, curve sweeps and the effective-BSC reduction.

mod bsc;
mod dpsk;
mod keyed;
mod scrambler;
mod simple;
mod sweep;

pub use bsc::{
    reduce_to_bsc, secrecy_capacity_bsc, serial_correlation, BlockInterleaver, BobSummary,
    BscInputs, EffectiveBscReport, SerialCorrelation, BOB_NOISELESS_FAILURE_RATE,
};
pub use dpsk::DpskBchScenario;
pub use keyed::{
    serial_correlation_study, KeySchedule, KeyedBlock, KeyedJammingScenario, Party, KEY_BITS,
    KEY_CODEWORD_BITS, MESSAGE_BITS,
};
pub use scrambler::ScramblerBchScenario;
pub use simple::{IidFlipScenario, UncodedBpskScenario};
pub use sweep::{
    grid_to_snr_db, run_keyed_scenario, run_scrambler_scenario, run_sweep, SweepCurves, SweepSpec,
};
