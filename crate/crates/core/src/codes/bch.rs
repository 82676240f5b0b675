//! Narrow-sense primitive binary BCH codes.
//!
//! Codeword layout is systematic with the message first: positions `0..k`
//! carry the message and `k..n` the parity. Position `v < k` is the
//! coefficient of x^(n-k+v) and position `v >= k` the coefficient of x^(v-k),
//! so the codeword polynomial is x^(n-k)·m(x) + (x^(n-k)·m(x) mod g(x)).

use super::{DecodeOutcome, DecodeStatus};
use crate::error::{check_len, Error, Result};
use crate::gf2::{BitVector, ExtField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BchCode {
    n: usize,
    k: usize,
    t: usize,
    /// Binary generator coefficients, index = degree.
    generator: Vec<u8>,
    field: ExtField,
}

impl BchCode {
    /// t-error-correcting BCH code of length 2^m − 1.
    pub fn new(m: u32, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::invalid("t", "must be at least 1"));
        }
        let field = ExtField::new(m)?;
        let n = field.order();
        if 2 * t >= n {
            return Err(Error::invalid("t", format!("{t} too large for n = {n}")));
        }
        let mut covered = vec![false; n];
        let mut generator = vec![1u8];
        for i in 1..=2 * t {
            if covered[i] {
                continue;
            }
            let coset = cyclotomic_coset(i, n);
            for &j in &coset {
                covered[j] = true;
            }
            generator = binary_poly_mul(&generator, &minimal_polynomial(&field, &coset));
        }
        let degree = generator.len() - 1;
        if degree >= n {
            return Err(Error::invalid(
                "t",
                format!("{t} leaves no message bits for n = {n}"),
            ));
        }
        Ok(Self {
            n,
            k: n - degree,
            t,
            generator,
            field,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn generator_poly(&self) -> &[u8] {
        &self.generator
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    /// Polynomial degree carried by codeword position `v`.
    pub fn degree_of(&self, v: usize) -> usize {
        let r = self.n - self.k;
        if v < self.k {
            r + v
        } else {
            v - self.k
        }
    }

    /// Codeword polynomial coefficients (index = degree) from a codeword vector.
    pub fn to_poly(&self, word: &BitVector) -> Vec<u8> {
        let mut poly = vec![0u8; self.n];
        for (v, b) in word.iter().enumerate() {
            poly[self.degree_of(v)] = b;
        }
        poly
    }

    pub fn encode(&self, msg: &BitVector) -> Result<BitVector> {
        check_len(self.k, msg.len())?;
        let r = self.n - self.k;
        // Long division of x^r·m(x) by the monic generator.
        let mut rem = vec![0u8; self.n];
        for (i, b) in msg.iter().enumerate() {
            rem[r + i] = b;
        }
        for deg in (r..self.n).rev() {
            if rem[deg] == 1 {
                for (j, &g) in self.generator.iter().enumerate() {
                    rem[deg - r + j] ^= g;
                }
            }
        }
        Ok(msg.concat(&BitVector::from_lsb(rem[..r].iter().copied())))
    }

    /// S_j = r(α^j) for j = 1..=2t.
    fn syndromes(&self, poly: &[u8]) -> Vec<u16> {
        let f = &self.field;
        (1..=2 * self.t)
            .map(|j| {
                poly.iter()
                    .enumerate()
                    .filter(|(_, &b)| b == 1)
                    .fold(0u16, |s, (d, _)| s ^ f.alpha_pow((j * d) as i64))
            })
            .collect()
    }

    /// Bounded-distance decoding: Berlekamp-Massey then Chien search.
    ///
    /// Failure is declared when the error locator has degree above t or when
    /// its number of roots in the field differs from its degree. More than t
    /// errors can also land within distance t of another codeword; that is
    /// reported as success, as any bounded-distance decoder would.
    pub fn decode(&self, received: &BitVector) -> Result<DecodeOutcome> {
        check_len(self.n, received.len())?;
        let systematic = received.slice(0..self.k);
        let mut poly = self.to_poly(received);
        let syndromes = self.syndromes(&poly);
        if syndromes.iter().all(|&s| s == 0) {
            return Ok(DecodeOutcome {
                bits: systematic,
                status: DecodeStatus::Success { corrected: 0 },
                iterations: 0,
            });
        }
        let failure = DecodeOutcome {
            bits: systematic,
            status: DecodeStatus::Failure,
            iterations: 0,
        };
        let (locator, degree) = berlekamp_massey(&self.field, &syndromes);
        if degree > self.t || locator.len() - 1 != degree {
            return Ok(failure);
        }
        let roots = self.chien_search(&locator);
        if roots.len() != degree {
            return Ok(failure);
        }
        for &d in &roots {
            poly[d] ^= 1;
        }
        let r = self.n - self.k;
        Ok(DecodeOutcome {
            bits: BitVector::from_lsb(poly[r..].iter().copied()),
            status: DecodeStatus::Success { corrected: degree },
            iterations: 0,
        })
    }

    /// Error degrees d with Λ(α^{-d}) = 0.
    fn chien_search(&self, locator: &[u16]) -> Vec<usize> {
        let f = &self.field;
        (0..self.n)
            .filter(|&d| {
                let x = f.alpha_pow(-(d as i64));
                let mut acc = 0u16;
                let mut xp = 1u16;
                for &c in locator {
                    acc ^= f.mul(c, xp);
                    xp = f.mul(xp, x);
                }
                acc == 0
            })
            .collect()
    }
}

/// {i·2^j mod n}, sorted.
fn cyclotomic_coset(i: usize, n: usize) -> Vec<usize> {
    let mut coset = vec![i % n];
    let mut x = (2 * i) % n;
    while x != i % n {
        coset.push(x);
        x = (2 * x) % n;
    }
    coset.sort_unstable();
    coset
}

/// ∏_{j ∈ coset} (x + α^j); the coefficients always lie in GF(2).
fn minimal_polynomial(field: &ExtField, coset: &[usize]) -> Vec<u8> {
    let mut poly: Vec<u16> = vec![1];
    for &j in coset {
        let root = field.alpha_pow(j as i64);
        let mut next = vec![0u16; poly.len() + 1];
        for (d, &c) in poly.iter().enumerate() {
            next[d + 1] ^= c;
            next[d] ^= field.mul(c, root);
        }
        poly = next;
    }
    poly.into_iter()
        .map(|c| {
            debug_assert!(c <= 1, "minimal polynomial must be binary");
            c as u8
        })
        .collect()
}

fn binary_poly_mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 1 {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] ^= y;
            }
        }
    }
    out
}

/// Returns the error-locator coefficients (index = degree, trimmed) and the
/// LFSR length L.
fn berlekamp_massey(field: &ExtField, s: &[u16]) -> (Vec<u16>, usize) {
    let mut c = vec![0u16; s.len() + 1];
    let mut b = vec![0u16; s.len() + 1];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut last_disc = 1u16;
    for n in 0..s.len() {
        let mut d = s[n];
        for i in 1..=l {
            d ^= field.mul(c[i], s[n - i]);
        }
        if d == 0 {
            shift += 1;
            continue;
        }
        let coef = field.div(d, last_disc).expect("nonzero discrepancy");
        let prev = c.clone();
        for i in 0..=s.len() - shift {
            c[i + shift] ^= field.mul(coef, b[i]);
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            last_disc = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    let deg = c.iter().rposition(|&x| x != 0).unwrap_or(0);
    c.truncate(deg + 1);
    (c, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{below, domain, StreamKey};

    #[test]
    fn parameters_match_known_codes() {
        let code = BchCode::new(7, 10).unwrap();
        assert_eq!((code.n(), code.k()), (127, 64));
        let code = BchCode::new(7, 5).unwrap();
        assert_eq!((code.n(), code.k()), (127, 92));
    }

    #[test]
    fn hamming_7_4_generator() {
        // t=1 over GF(8) with x^3+x+1: g(x) is the minimal polynomial of α,
        // which is the primitive polynomial itself.
        let code = BchCode::new(3, 1).unwrap();
        assert_eq!((code.n(), code.k()), (7, 4));
        assert_eq!(code.generator_poly(), &[1, 1, 0, 1]);
    }

    #[test]
    fn too_large_t_is_rejected() {
        assert!(BchCode::new(3, 4).is_err());
        assert!(BchCode::new(3, 0).is_err());
        assert!(BchCode::new(11, 1).is_err());
    }

    fn poly_mod(mut a: Vec<u8>, g: &[u8]) -> Vec<u8> {
        let dg = g.len() - 1;
        for deg in (dg..a.len()).rev() {
            if a[deg] == 1 {
                for (j, &c) in g.iter().enumerate() {
                    a[deg - dg + j] ^= c;
                }
            }
        }
        a.truncate(dg);
        a
    }

    #[test]
    fn generator_divides_x_n_plus_1() {
        for (m, t) in [(3, 1), (4, 2), (5, 3), (7, 5), (7, 10), (8, 4)] {
            let code = BchCode::new(m, t).unwrap();
            let mut xn1 = vec![0u8; code.n() + 1];
            xn1[0] = 1;
            xn1[code.n()] = 1;
            assert!(poly_mod(xn1, code.generator_poly()).iter().all(|&c| c == 0));
        }
    }

    #[test]
    fn codewords_are_multiples_of_generator() {
        let code = BchCode::new(7, 10).unwrap();
        let mut rng = StreamKey::new(1, domain::TEST, 0).trial(0);
        assert_eq!(
            code.encode(&BitVector::zeros(64)).unwrap(),
            BitVector::zeros(127)
        );
        for _ in 0..200 {
            let msg = BitVector::random(64, &mut rng);
            let cw = code.encode(&msg).unwrap();
            assert_eq!(cw.slice(0..64), msg);
            assert!(poly_mod(code.to_poly(&cw), code.generator_poly())
                .iter()
                .all(|&c| c == 0));
        }
    }

    #[test]
    fn distinct_codewords_respect_bch_bound() {
        let code = BchCode::new(7, 10).unwrap();
        let mut rng = StreamKey::new(2, domain::TEST, 0).trial(0);
        for _ in 0..2000 {
            let a = BitVector::random(64, &mut rng);
            let b = BitVector::random(64, &mut rng);
            if a == b {
                continue;
            }
            let d = code
                .encode(&a)
                .unwrap()
                .hamming_distance(&code.encode(&b).unwrap())
                .unwrap();
            assert!(d >= 21, "distance {d}");
        }
    }

    fn random_pattern(n: usize, weight: usize, rng: &mut crate::rng::TrialRng) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..n).collect();
        for i in 0..weight {
            let j = i + below(rng, (n - i) as u64) as usize;
            idx.swap(i, j);
        }
        idx.truncate(weight);
        idx
    }

    #[test]
    fn corrects_every_single_error_exhaustively() {
        let code = BchCode::new(7, 10).unwrap();
        let mut rng = StreamKey::new(3, domain::TEST, 0).trial(0);
        let msg = BitVector::random(64, &mut rng);
        let cw = code.encode(&msg).unwrap();
        let clean = code.decode(&cw).unwrap();
        assert_eq!(clean.status, DecodeStatus::Success { corrected: 0 });
        assert_eq!(clean.bits, msg);
        for pos in 0..127 {
            let mut r = cw.clone();
            r.flip(pos);
            let out = code.decode(&r).unwrap();
            assert_eq!(out.status, DecodeStatus::Success { corrected: 1 });
            assert_eq!(out.bits, msg);
        }
    }

    #[test]
    fn corrects_random_patterns_up_to_t() {
        let code = BchCode::new(7, 5).unwrap();
        let mut rng = StreamKey::new(4, domain::TEST, 0).trial(0);
        for w in 2..=5 {
            for _ in 0..500 {
                let msg = BitVector::random(code.k(), &mut rng);
                let mut r = code.encode(&msg).unwrap();
                for p in random_pattern(127, w, &mut rng) {
                    r.flip(p);
                }
                let out = code.decode(&r).unwrap();
                assert_eq!(out.status, DecodeStatus::Success { corrected: w });
                assert_eq!(out.bits, msg);
            }
        }
    }

    #[test]
    fn heavy_error_patterns_mostly_fail() {
        let code = BchCode::new(7, 10).unwrap();
        let mut rng = StreamKey::new(5, domain::TEST, 0).trial(0);
        let trials = 2000;
        let mut failures = 0;
        let mut miscorrections = 0;
        for _ in 0..trials {
            let msg = BitVector::random(64, &mut rng);
            let mut r = code.encode(&msg).unwrap();
            for p in random_pattern(127, 30, &mut rng) {
                r.flip(p);
            }
            let out = code.decode(&r).unwrap();
            if out.is_success() {
                assert_ne!(out.bits, msg);
                miscorrections += 1;
            } else {
                failures += 1;
            }
        }
        // The fraction of words within distance 10 of some codeword is
        // 2^64·V(127,10)/2^127 ≈ 2.5e-5, so miscorrection is rare.
        assert!(
            failures as f64 / trials as f64 > 0.99,
            "{miscorrections} miscorrections"
        );
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let code = BchCode::new(7, 10).unwrap();
        assert!(code.encode(&BitVector::zeros(63)).is_err());
        assert!(code.decode(&BitVector::zeros(126)).is_err());
    }
}
