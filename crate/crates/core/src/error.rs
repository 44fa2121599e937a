//! Error types, one enum per module.
//!
//! Every domain error reports its variant name through [`DomainError::name`];
//! the CLI prints that name verbatim.

use thiserror::Error;

pub trait DomainError: std::error::Error {
    /// Variant name, e.g. `"NotMobile"`.
    fn name(&self) -> &'static str;
    /// Owning module, e.g. `"mobility"`.
    fn module(&self) -> &'static str;
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("malformed number {0:?}")]
    Number(String),
    #[error("field error: {0}")]
    Field(String),
    #[error("schema violation: {0}")]
    Schema(String),
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Json(e.to_string())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("degenerate dual: {0}")]
    DegenerateDual(String),
    #[error("geometric realization unsupported for n = {0}")]
    DimensionUnsupported(usize),
}

impl DomainError for LatticeError {
    fn name(&self) -> &'static str {
        match self {
            LatticeError::DegenerateDual(_) => "DegenerateDual",
            LatticeError::DimensionUnsupported(_) => "DimensionUnsupported",
        }
    }
    fn module(&self) -> &'static str {
        "lattice-geometry"
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlError {
    #[error("map does not scale measure by a constant: {0}")]
    NotMeasureScaling(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("pullback differs between cells of the map")]
    NonGlobalPullback,
    #[error("invalid PL data: {0}")]
    Invalid(String),
}

impl DomainError for PlError {
    fn name(&self) -> &'static str {
        match self {
            PlError::NotMeasureScaling(_) => "NotMeasureScaling",
            PlError::DimensionMismatch { .. } => "DimensionMismatch",
            PlError::NonGlobalPullback => "NonGlobalPullback",
            PlError::Invalid(_) => "InvalidPl",
        }
    }
    fn module(&self) -> &'static str {
        "pl-calculus"
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeasureError {
    #[error("origin is not a smooth point for the designated coordinate: {0}")]
    NotSmoothPoint(String),
    #[error("order undetermined below truncation degree {0}")]
    Undetermined(u32),
    #[error("anchor {0} is not on the corner locus")]
    AnchorOffCornerLocus(String),
    #[error("map is not injective on a cell of the measure: {0}")]
    NotCellwiseInjective(String),
    #[error("atom at {0} has no preimage")]
    NoPreimage(String),
    #[error("invalid chart or measure: {0}")]
    Invalid(String),
}

impl DomainError for MeasureError {
    fn name(&self) -> &'static str {
        match self {
            MeasureError::NotSmoothPoint(_) => "NotSmoothPoint",
            MeasureError::Undetermined(_) => "Undetermined",
            MeasureError::AnchorOffCornerLocus(_) => "AnchorOffCornerLocus",
            MeasureError::NotCellwiseInjective(_) => "NotCellwiseInjective",
            MeasureError::NoPreimage(_) => "NoPreimage",
            MeasureError::Invalid(_) => "InvalidMeasure",
        }
    }
    fn module(&self) -> &'static str {
        "measures"
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MobilityError {
    #[error("mobility test supports pencils only, got {0} generators")]
    UnsupportedRank(usize),
    #[error("linear system is not mobile: {0}")]
    NotMobile(String),
    #[error("certificates use different conventions: {0} vs {1}")]
    ConventionMismatch(String, String),
    #[error("no sample points found within budget ({0} attempts)")]
    SamplingExhausted(usize),
    #[error("point is not on the variety: {0}")]
    PointNotOnVariety(String),
    #[error("invalid linear system: {0}")]
    InvalidSystem(String),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

impl DomainError for MobilityError {
    fn name(&self) -> &'static str {
        match self {
            MobilityError::UnsupportedRank(_) => "UnsupportedRank",
            MobilityError::NotMobile(_) => "NotMobile",
            MobilityError::ConventionMismatch(..) => "ConventionMismatch",
            MobilityError::SamplingExhausted(_) => "SamplingExhausted",
            MobilityError::PointNotOnVariety(_) => "PointNotOnVariety",
            MobilityError::InvalidSystem(_) => "InvalidSystem",
            MobilityError::Measure(e) => e.name(),
        }
    }
    fn module(&self) -> &'static str {
        match self {
            MobilityError::Measure(e) => e.module(),
            _ => "mobility",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EntropyError {
    #[error("measure family is empty")]
    EmptyFamily,
    #[error("member {0} exceeds the mass bound")]
    MassBoundViolated(String),
    #[error("no transported match for member {member}, part {part}")]
    TransportFailure { member: usize, part: usize },
    #[error("base complex is not a simplex: {0}")]
    NotASimplex(String),
    #[error("dilation factor {given} does not match the map ({computed})")]
    DilationMismatch { given: String, computed: String },
    #[error("selection index {0} out of range")]
    BadSelection(usize),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Pl(#[from] PlError),
}

impl DomainError for EntropyError {
    fn name(&self) -> &'static str {
        match self {
            EntropyError::EmptyFamily => "EmptyFamily",
            EntropyError::MassBoundViolated(_) => "MassBoundViolated",
            EntropyError::TransportFailure { .. } => "TransportFailure",
            EntropyError::NotASimplex(_) => "NotASimplex",
            EntropyError::DilationMismatch { .. } => "DilationMismatch",
            EntropyError::BadSelection(_) => "BadSelection",
            EntropyError::Measure(e) => e.name(),
            EntropyError::Pl(e) => e.name(),
        }
    }
    fn module(&self) -> &'static str {
        match self {
            EntropyError::Measure(e) => e.module(),
            EntropyError::Pl(e) => e.module(),
            _ => "entropy",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AmoebaError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("fiber polynomial has no roots in the torus")]
    NoRoots,
    #[error("sampling budget exhausted after {0} attempts")]
    BudgetExhausted(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

impl DomainError for AmoebaError {
    fn name(&self) -> &'static str {
        match self {
            AmoebaError::Precondition(_) => "Precondition",
            AmoebaError::NoRoots => "NoRoots",
            AmoebaError::BudgetExhausted(_) => "BudgetExhausted",
            AmoebaError::Lattice(e) => e.name(),
        }
    }
    fn module(&self) -> &'static str {
        match self {
            AmoebaError::Lattice(e) => e.module(),
            _ => "amoeba",
        }
    }
}
