use thiserror::Error;

/// Failures of exact integer arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("value is not in the real subring Z[tau]: {0}")]
    NotReal(String),
    #[error("inexact division in {0}")]
    InexactDivision(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("root {0} is not a unit root (2(r,r) = {1}, expected 2)")]
    NonUnitRoot(String, String),
    #[error("generator {0} is not invertible over Z[tau]")]
    NotInvertible(usize),
    #[error("closure exceeded {0} elements")]
    ClosureBound(usize),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("triangle violates its shape invariants: {0}")]
    BadTriangle(String),
    #[error("patch has no deflation history to inflate")]
    NoHistory,
    #[error("cannot inflate {requested} steps from generation {available}")]
    InflateTooFar { requested: u32, available: u32 },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProjectionError {
    #[error("degenerate acceptance window: {0}")]
    DegenerateWindow(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Problems reading or writing a tiling document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("unsupported format version '{0}'")]
    Version(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: triangle record {triangle} references vertex {index}, but there are {count} vertices")]
    TriangleIndex {
        line: usize,
        triangle: usize,
        index: u32,
        count: usize,
    },
    #[error("line {line}: group record {group} references triangle {index}, but there are {count} triangles")]
    GroupIndex {
        line: usize,
        group: usize,
        index: u32,
        count: usize,
    },
    #[error("line {line}: vertex record {vertex} is not after its predecessor in canonical order")]
    VertexOrder { line: usize, vertex: usize },
    #[error("document is invalid: {0}")]
    Invalid(String),
}
