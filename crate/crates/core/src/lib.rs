//! Exact computations in the multicolored Temperley-Lieb 2-category and the
//! Hecke algebra of a universal Coxeter group.

pub mod color;
pub mod diagrams;
pub mod error;
pub mod hecke;
pub mod jones_wenzl;
pub mod linalg;
pub mod rings;
pub mod soergel_gate;
pub mod tl_category;

pub use color::Color;
pub use error::{Error, Result};
pub use rings::{CartanMatrix, RingElement, RingSpec};
