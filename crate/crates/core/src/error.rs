use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("hyperplanes {0} and {1} have proportional normals")]
    DuplicateHyperplane(usize, usize),
    #[error("hyperplane {0} has a zero normal")]
    ZeroNormal(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("an arrangement needs at least one hyperplane")]
    Empty,
    #[error("cannot delete every hyperplane")]
    DropAll,
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("sign vectors of length {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("size limit of {limit} exceeded while building {what}")]
    SizeLimit { what: &'static str, limit: usize },
    #[error("no region lies on the positive side of every root")]
    EmptyBaseRegion,
    #[error("the cone of roots is not simplicial")]
    NotSimplicialCone,
    #[error("no generic direction found after {0} attempts")]
    DegenerateDirection(usize),
    #[error("arrangement is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("two roots tie for the closest root (duplicate hyperplane?)")]
    TieDetected,
    #[error("invalid tope graph: {0}")]
    InvalidGraph(String),
    #[error("arrangement is not supersolvable")]
    NotSupersolvable,
    #[error("fiber is not a path: {0}")]
    NotAPath(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("edge is not on the cycle")]
    EdgeNotInCycle,
    #[error("no disjoint quadrilateral left between subgraphs {0} and {1}")]
    QuadrilateralExhausted(usize, usize),
    #[error("unsupported family parameters: {0}")]
    InvalidFamily(String),
}

impl Error {
    /// Variant name, for machine-readable reporting.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::FieldMismatch(_) => "FieldMismatch",
            Error::DuplicateHyperplane(..) => "DuplicateHyperplane",
            Error::ZeroNormal(_) => "ZeroNormal",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Empty => "Empty",
            Error::DropAll => "DropAll",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::LengthMismatch(..) => "LengthMismatch",
            Error::SizeLimit { .. } => "SizeLimit",
            Error::EmptyBaseRegion => "EmptyBaseRegion",
            Error::NotSimplicialCone => "NotSimplicialCone",
            Error::DegenerateDirection(_) => "DegenerateDirection",
            Error::NotSimplicial(_) => "NotSimplicial",
            Error::TieDetected => "TieDetected",
            Error::InvalidGraph(_) => "InvalidGraph",
            Error::NotSupersolvable => "NotSupersolvable",
            Error::NotAPath(_) => "NotAPath",
            Error::InvalidInput(_) => "InvalidInput",
            Error::EdgeNotInCycle => "EdgeNotInCycle",
            Error::QuadrilateralExhausted(..) => "QuadrilateralExhausted",
            Error::InvalidFamily(_) => "InvalidFamily",
        }
    }
}
