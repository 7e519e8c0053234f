//! Exact rational arithmetic, polynomials in the pipeline parameters, and
//! certified real-root analysis.

mod mpoly;
mod piecewise;
mod rational;
mod roots;
mod symbol;
mod upoly;

pub use mpoly::{MPoly, Monomial};
pub use piecewise::{Linear, Piece, PiecewiseLinear};
pub use rational::*;
pub use roots::{
    isolate_real_roots, isolate_real_roots_with, negative_ranges, sign_on_interval, AlgebraicInterval, AlgebraicRoot,
    Endpoint, Interval, IsolationOptions, SignOnInterval,
};
pub use symbol::Symbol;
pub use upoly::{sign_variations, sturm_count, UniPoly};
