//! Exact arithmetic for Drinfeld modular forms over the polynomial ring
//! A = Fq[T].
//!
//! The crate computes t-expansions of modular forms given by A-expansions
//! (series of the shape `c0 + sum_{a monic} c_a G_n(t_a)`), applies Hecke
//! operators in exact rational-function arithmetic, recovers A-expansion
//! coefficients from truncated t-expansions, and mechanically verifies
//! identities, eigensystems, and congruences between the classical special
//! forms (h, Delta, Eisenstein series, the hyperderivative-like families
//! F_nu).  Everything is exact: scalars are elements of K = Fq(T), never
//! floats, and every series carries an explicit truncation precision.
//!
//! Module map:
//!
//! * [`algebra`]  - the field Fq, polynomials in T, rationals in K, text syntax
//! * [`series`]   - truncated power series and Laurent expansions over K
//! * [`carlitz`]  - the Carlitz module: rho_a, the uniformizers t_a, exp data
//! * [`goss`]     - Goss polynomial tables for period and torsion lattices
//! * [`forms`]    - A-expansions, named forms, g/h expressions, recovery
//! * [`hecke`]    - the Hecke operators T_p and eigenvalue extraction
//! * [`verify`]   - hypothesis predicates, power sums, congruences, products
//! * [`linalg`]   - the exact linear solver shared by forms
//! * [`io`]       - canonical JSON file formats for series and expansions

pub mod algebra;
pub mod carlitz;
pub mod forms;
pub mod goss;
pub mod hecke;
pub mod io;
pub mod linalg;
pub mod series;
pub mod verify;

pub use algebra::{FieldElement, Fq, PolyA, RatK};
pub use series::{LaurentSeries, TruncSeries};
