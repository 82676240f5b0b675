use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{check_len, Error, Result};
use crate::gf2::BitVector;
use crate::rng::below;

/// Message permutation selected by a secret key.
///
/// The key seeds a ChaCha8 stream that drives a Fisher-Yates shuffle, so the
/// permutation is a function of the key bits alone and is identical on every
/// platform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyedInterleaver {
    /// `out[i] = msg[permutation[i]]`
    permutation: Vec<usize>,
    inverse: Vec<usize>,
}

impl KeyedInterleaver {
    /// Keys of 1 to 256 bits are accepted; the keyed scheme uses 64.
    pub fn from_key(key: &BitVector, length: usize) -> Result<Self> {
        if key.is_empty() || key.len() > 256 {
            return Err(Error::invalid(
                "key",
                format!("length {} not in 1..=256", key.len()),
            ));
        }
        let mut seed = [0u8; 32];
        for (i, b) in key.iter().enumerate() {
            seed[i / 8] |= b << (i % 8);
        }
        let mut rng = ChaCha8Rng::from_seed(seed);
        let mut permutation: Vec<usize> = (0..length).collect();
        for i in (1..length).rev() {
            let j = below(&mut rng, i as u64 + 1) as usize;
            permutation.swap(i, j);
        }
        Ok(Self::from_permutation_unchecked(permutation))
    }

    /// Identity permutation of `length` positions.
    pub fn identity(length: usize) -> Self {
        Self::from_permutation_unchecked((0..length).collect())
    }

    fn from_permutation_unchecked(permutation: Vec<usize>) -> Self {
        let mut inverse = vec![0; permutation.len()];
        for (i, &p) in permutation.iter().enumerate() {
            inverse[p] = i;
        }
        Self {
            permutation,
            inverse,
        }
    }

    pub fn len(&self) -> usize {
        self.permutation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.permutation.is_empty()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn inverse_permutation(&self) -> &[usize] {
        &self.inverse
    }

    pub fn interleave(&self, msg: &BitVector) -> Result<BitVector> {
        check_len(self.len(), msg.len())?;
        Ok(self.permutation.iter().map(|&p| msg.get(p)).collect())
    }

    pub fn deinterleave(&self, v: &BitVector) -> Result<BitVector> {
        check_len(self.len(), v.len())?;
        Ok(self.inverse.iter().map(|&i| v.get(i)).collect())
    }
}
