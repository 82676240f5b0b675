//! Arithmetic over GF(2) and its binary extension fields.

mod bitvec;
mod field;
mod matrix;

pub use bitvec::BitVector;
pub use field::{field_mul, ExtField};
pub use matrix::{mat_vec_mul, BitMatrix};

/// Primitive polynomial x^7 + x^3 + 1 for GF(2^7), bit i = coefficient of x^i.
pub const GF128_PRIMITIVE_POLY: u32 = 0b1000_1001;
