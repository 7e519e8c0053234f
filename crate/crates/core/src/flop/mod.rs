//! Flopping the `(-1,-1)`-curves that appear on the deformation to the normal
//! cone of a blown-up surface, and the resulting correction of the invariant.
//!
//! The flopped threefold is never built. All that is needed are its triple
//! products, which differ from those before the flop by one cubic term per
//! curve.

mod construction;
mod triple;

pub use construction::{
    flop_curve_pairings, flop_futaki, flop_futaki_engine, flop_window, CurvePairing, FlopSpec, FlopWindow,
};
pub use triple::{blowup_oracle_triple, flop_triple_product, FlopTriple};
