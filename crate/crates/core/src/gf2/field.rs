use crate::error::{Error, Result};

/// Binary extension field GF(2^m) with log/antilog tables.
///
/// Elements are `u16` in polynomial basis: bit i is the coefficient of α^i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    m: u32,
    primitive_poly: u32,
    /// exp[i] = α^i for i in 0..2·order, doubled so products skip a modulo.
    exp: Vec<u16>,
    /// log[x] for nonzero x; log[0] is unused.
    log: Vec<u16>,
}

/// Conventional primitive polynomials for m = 2..=10.
const DEFAULT_PRIMITIVE: [u32; 9] = [
    0b111,           // x^2+x+1
    0b1011,          // x^3+x+1
    0b1_0011,        // x^4+x+1
    0b10_0101,       // x^5+x^2+1
    0b100_0011,      // x^6+x+1
    0b1000_1001,     // x^7+x^3+1
    0b1_0001_1101,   // x^8+x^4+x^3+x^2+1
    0b10_0001_0001,  // x^9+x^4+1
    0b100_0000_1001, // x^10+x^3+1
];

impl ExtField {
    /// GF(2^m) with the conventional primitive polynomial for `m`.
    pub fn new(m: u32) -> Result<Self> {
        if !(2..=10).contains(&m) {
            return Err(Error::invalid("m", format!("{m} not in 2..=10")));
        }
        Self::with_poly(m, DEFAULT_PRIMITIVE[(m - 2) as usize])
    }

    /// GF(2^m) defined by `poly`, which must be primitive of degree `m`.
    pub fn with_poly(m: u32, poly: u32) -> Result<Self> {
        if !(1..=15).contains(&m) || poly >> m != 1 {
            return Err(Error::invalid(
                "primitive_poly",
                format!("{poly:#b} is not of degree {m}"),
            ));
        }
        let order = (1usize << m) - 1;
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u16; order + 1];
        let mut x: u32 = 1;
        for i in 0..order {
            if i > 0 && x == 1 {
                return Err(Error::invalid(
                    "primitive_poly",
                    format!("{poly:#b} is not primitive (α has order {i})"),
                ));
            }
            exp[i] = x as u16;
            log[x as usize] = i as u16;
            x <<= 1;
            if x >> m == 1 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(Error::invalid(
                "primitive_poly",
                format!("{poly:#b} is reducible"),
            ));
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        Ok(Self {
            m,
            primitive_poly: poly,
            exp,
            log,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn primitive_poly(&self) -> u32 {
        self.primitive_poly
    }

    /// Multiplicative group order 2^m − 1.
    pub fn order(&self) -> usize {
        (1 << self.m) - 1
    }

    /// α^e for any integer exponent.
    pub fn alpha_pow(&self, e: i64) -> u16 {
        self.exp[e.rem_euclid(self.order() as i64) as usize]
    }

    pub fn log(&self, a: u16) -> Option<usize> {
        (a != 0).then(|| self.log[a as usize] as usize)
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        a ^ b
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u16) -> Option<u16> {
        (a != 0).then(|| self.exp[(self.order() - self.log[a as usize] as usize) % self.order()])
    }

    pub fn div(&self, a: u16, b: u16) -> Option<u16> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: u16, e: usize) -> u16 {
        match a {
            0 if e == 0 => 1,
            0 => 0,
            _ => self.exp[(self.log[a as usize] as usize * e) % self.order()],
        }
    }
}

/// `a · b` in `f`.
pub fn field_mul(f: &ExtField, a: u16, b: u16) -> u16 {
    f.mul(a, b)
}
