use alloc::string::String;

use crate::exactmath::Symbol;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("no value assigned to symbol `{0}`")]
    MissingVariable(Symbol),
    #[error("symbol `{0}` is not a variable of the polynomial")]
    UnknownVariable(Symbol),
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("expected a univariate polynomial, found variables {0}")]
    NotUnivariate(String),
    #[error("empty window")]
    EmptyWindow,
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("polynomial parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("classes live on different Picard lattices")]
    LatticeMismatch,
    #[error("dimension mismatch: expected {expected} coefficients, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid surface pair: {0}")]
    InvalidPair(String),
    #[error("infinitely near blow-up points are not supported")]
    InfinitelyNear,
    #[error("K.C + C^2 = {0} is odd; the class has no integral arithmetic genus")]
    GenusParity(String),
    #[error("ampleness test needs at least one Mori cone generator")]
    EmptyGenerators,
    #[error("class {0} is not linear in beta")]
    NotBetaLinear(String),

    #[error("polarization is not -K-(1-b)C: {0}")]
    PolarizationMismatch(String),
    #[error("L^2 vanishes identically; degenerate polarization")]
    DegeneratePolarization,
    #[error("blow-up point {0} does not lie on Z; flopping curves need O_i on Z")]
    PointNotOnZ(usize),
    #[error("{0}")]
    InvalidConfig(String),
    #[error("gamma = {0} outside the admissible range {1}")]
    GammaOutOfRange(String, String),
    #[error("boundary curve has genus {0}, a rational curve is required")]
    NonRationalBoundary(i64),
    #[error("beta = {0} is outside the ampleness region")]
    BetaOutsideAmple(String),
    #[error("polynomial vanishes identically on the window")]
    IdenticallyZero,
}
