//! Exact computations with regular matrix polynomials over GF(p) and ℚ:
//! Smith forms, complete spectral data, Möbius transformations, and
//! degree-preserving quasi-triangular realizations.

pub mod algebra;
pub mod combinat;
pub mod error;
pub mod io;
pub mod matpoly;
pub mod quasitri;
pub mod smith;
pub mod transfer;
pub mod triangcheck;

pub use error::{Error, Result};
