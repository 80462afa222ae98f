//! Numerics for the bilateral lacunary series `f(x) = Σ_{n∈Z} aⁿ x^(aⁿ)`
//! on `0 < x < 1`, its smooth part `g(x) = 1/(log a · log(1/x))`, the
//! oscillatory remainder `Δ = f − g`, the self-similar approximant `Δ₀`, and
//! the zeroes of both.
//!
//! ```
//! use lacunary::{delta, series::SeriesParams, zeros};
//!
//! let params = SeriesParams::new(2.0).unwrap();
//! let w0 = zeros::fundamental_zero_delta0(&params).unwrap();
//! assert!((w0.x() - 0.23628629).abs() < 1e-8);
//! assert!(delta::delta0(w0.w, &params).unwrap().abs() < 1e-15);
//! ```

// `!(v > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod complexfn;
pub mod delta;
pub mod error;
pub mod roots;
pub mod series;
pub mod zeros;

pub use error::{Error, Result};
