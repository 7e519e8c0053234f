//! Intersection theory on the deformation to the normal cone of a curve in a
//! surface, and the slope Futaki invariant computed two ways: from the closed
//! form and from the triple products of the threefold.

mod engine;
mod futaki;
mod verdict;

pub use engine::{Engine, ThreefoldClass, ThreefoldCurve};
pub(crate) use futaki::one_minus_beta;
pub use futaki::{
    c_leading, engine_futaki, general_futaki, p_ample_window, slope_futaki, triple_products, Branch, CWindow,
    DNCConfig, FutakiPoly, FutakiSource, GeneralFutaki, TripleProductTable,
};
pub(crate) use verdict::beta_domain;
pub use verdict::{slope_verdict, slope_verdict_with, BetaSpec};

#[cfg(test)]
mod tests;
