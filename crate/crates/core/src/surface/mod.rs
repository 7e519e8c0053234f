//! Picard-lattice models of rational surfaces with a boundary curve: blow-ups,
//! adjunction, ampleness over a list of Mori-cone generators, and the
//! Seshadri and pseudoeffective thresholds along a divisor.
//!
//! Ampleness is decided by the Nakai–Moishezon criterion against the
//! generator list attached to each pair. That list is input data, so the
//! answers are only as good as the generators supplied.

mod lattice;
mod models;
mod pair;
mod positivity;

pub use lattice::{BetaFunctionClass, DivisorClass, PicardLattice, PolyClass};
pub use models::{hirzebruch_lattice, hirzebruch_pair, minimal_pair, p2_lattice, p2_pair};
pub use pair::{blow_up, Blowup, BlowupOptions, BlowupPoint, BlowupRecord, Provenance, SurfacePair};
pub use positivity::{
    amp_region, is_ample, pseff_threshold_certificate, seshadri, AmpRegion, AmpleCertificate, PseffCertificate,
    Seshadri,
};

/// `pi^* d - sum m_i E_i` on a blow-up recorded in `record`.
pub fn proper_transform(
    record: &BlowupRecord,
    d: &DivisorClass,
    multiplicities: &[u32],
) -> crate::Result<DivisorClass> {
    record.proper_transform(d, multiplicities)
}
