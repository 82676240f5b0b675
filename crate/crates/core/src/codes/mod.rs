//! Encoders and decoders of the concatenated chains.

mod bch;
mod interleaver;
mod ldpc;
pub mod peg;
mod scrambler;

pub use bch::BchCode;
pub use interleaver::KeyedInterleaver;
pub use ldpc::{LdpcCode, LdpcOutcome, DEFAULT_MAX_ITERS, LLR_CLAMP};
pub use scrambler::Scrambler;

use crate::gf2::BitVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeStatus {
    /// A codeword was found; `corrected` bits differ from the hard-decision input.
    Success { corrected: usize },
    /// No codeword within the decoding radius, or iterations exhausted.
    Failure,
}

/// Message estimate produced by a decoder.
///
/// On failure `bits` still holds the decoder's best guess (the systematic
/// hard decisions), since an eavesdropper reads that output regardless.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub bits: BitVector,
    pub status: DecodeStatus,
    /// Iterations used; zero for algebraic decoders.
    pub iterations: usize,
}

impl DecodeOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self.status, DecodeStatus::Success { .. })
    }
}
