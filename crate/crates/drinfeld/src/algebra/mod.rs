//! Base arithmetic: the finite field Fq, the polynomial ring A = Fq[T],
//! and the rational function field K = Fq(T).
//!
//! Everything downstream (series, Carlitz module, Goss polynomials, Hecke
//! operators) reduces to arithmetic in these three rings, always exact.
//!
//! Canonical orders used throughout the crate and its file formats:
//!
//! * elements of Fq are ordered by their integer encoding
//!   `sum_i coords_i * p^i` of base-p coordinate vectors;
//! * monic polynomials of one degree are ordered lexicographically on the
//!   coefficient tuple `(c_0, c_1, ..., c_{d-1})` read from degree 0 upward,
//!   each coordinate compared in the Fq order; across degrees, lower degree
//!   comes first.

mod field;
mod poly;
mod rat;
pub mod text;

pub use field::{FieldElement, FieldError, Fq};
pub use poly::{
    bracket, carlitz_factorial, enum_deg_below, irreducible_enum, monic_enum, PolyA,
};
pub use rat::RatK;

/// p-adic valuation of a positive integer: the largest v with p^v | k.
///
/// Panics if `k = 0` or `p < 2`.
pub fn int_val_p(k: u64, p: u64) -> u32 {
    assert!(k > 0, "int_val_p: k must be positive");
    assert!(p >= 2, "int_val_p: p must be at least 2");
    let mut k = k;
    let mut v = 0;
    while k % p == 0 {
        k /= p;
        v += 1;
    }
    v
}
