use rand::RngCore;

use crate::error::{check_len, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Outer code that multiplies the message by an invertible k×k matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scrambler {
    forward: BitMatrix,
    inverse: BitMatrix,
}

impl Scrambler {
    pub fn new(forward: BitMatrix) -> Result<Self> {
        let inverse = forward.invert()?;
        Ok(Self { forward, inverse })
    }

    pub fn random<R: RngCore + ?Sized>(k: usize, rng: &mut R) -> Result<Self> {
        Self::new(BitMatrix::random_invertible(k, rng)?)
    }

    pub fn k(&self) -> usize {
        self.forward.rows()
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.forward
    }

    pub fn inverse(&self) -> &BitMatrix {
        &self.inverse
    }

    pub fn scramble(&self, msg: &BitVector) -> Result<BitVector> {
        check_len(self.k(), msg.len())?;
        self.forward.mul_vec(msg)
    }

    pub fn descramble(&self, v: &BitVector) -> Result<BitVector> {
        check_len(self.k(), v.len())?;
        self.inverse.mul_vec(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{domain, StreamKey};

    #[test]
    fn round_trip_and_linearity() {
        let key = StreamKey::new(5, domain::TEST, 0);
        let s = Scrambler::random(64, &mut key.trial(0)).unwrap();
        assert_eq!(
            s.scramble(&BitVector::zeros(64)).unwrap(),
            BitVector::zeros(64)
        );
        let mut rng = key.trial(1);
        for _ in 0..1000 {
            let m = BitVector::random(64, &mut rng);
            assert_eq!(s.descramble(&s.scramble(&m).unwrap()).unwrap(), m);
        }
        assert!(s.scramble(&BitVector::zeros(63)).is_err());
    }

    #[test]
    fn single_flip_propagates_to_half_the_bits() {
        // Mean over 1000 random invertible matrices of the fraction of output
        // bits flipped by one input flip before descrambling.
        let key = StreamKey::new(6, domain::TEST, 0);
        let trials = 1000;
        let mut total = 0usize;
        for t in 0..trials {
            let mut rng = key.trial(t);
            let s = Scrambler::random(64, &mut rng).unwrap();
            let m = BitVector::random(64, &mut rng);
            let mut y = s.scramble(&m).unwrap();
            y.flip(crate::rng::below(&mut rng, 64) as usize);
            total += s.descramble(&y).unwrap().hamming_distance(&m).unwrap();
        }
        let frac = total as f64 / (trials as f64 * 64.0);
        assert!((frac - 0.5).abs() < 0.02, "{frac}");
    }
}
