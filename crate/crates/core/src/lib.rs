//! Computational liaison theory for curves on quadric threefolds in P^4.
//!
//! The kernel is a graded polynomial ring over a prime field with Buchberger Gröbner bases and
//! Schreyer syzygies. On top of it sit ideal operations, Hilbert data, minimal free resolutions
//! with Rao-module tables, liaison constructions and divisor-class calculators.

pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod io;
pub mod liaison;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod quadric;
pub mod resolution;
pub mod surfaces;

pub use error::{Error, Result};
pub use field::{FieldConfig, DEFAULT_PRIME};
pub use hilbert::HilbertData;
pub use ideal::{ideals_equal, is_regular_sequence, Ideal};
pub use monomial::{Monomial, TermOrder};
pub use poly::{Polynomial, Ring};
