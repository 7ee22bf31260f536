use alloc::string::String;

use crate::ribbon_graph::{EdgeId, Vertex};
use crate::word::Symbol;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the operations of this crate.
///
/// Every variant carries a stable kebab-case code, see [`Error::code`], which
/// front ends report verbatim.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("edge {0} is external or a loop and cannot be contracted")]
    NotContractible(EdgeId),
    #[error("euler characteristic and boundary count do not give an integral genus")]
    NonIntegerGenus,
    #[error("malformed surface datum: {0}")]
    BadSurfaceDatum(&'static str),
    #[error("curve is not closed")]
    NotALoop,
    #[error("malformed curve: {0}")]
    BadCurve(String),
    #[error("curve crosses the contracted edge {0}")]
    CurveCrossesEdge(EdgeId),
    #[error("malformed line field: {0}")]
    BadLineField(String),
    #[error("line field has odd winding along a generating loop")]
    OddWindingLineField,
    #[error("line field does not extend over nonsingular vertex {0}")]
    FramingNotExtendable(Vertex),
    #[error("stalk period does not divide 2, a framing is required")]
    FramingRequired,
    #[error("malformed schober: {0}")]
    BadSchober(String),
    #[error("edge {0} joins two singular vertices")]
    EdgeJoinsTwoSingularities(EdgeId),
    #[error("edge {0} is a loop")]
    LoopEdge(EdgeId),
    #[error("schober has singular vertices")]
    NotNonsingular,
    #[error("schobers live on different graphs or stalk relations")]
    Incompatible,
    #[error("vertex {0} has odd valency")]
    OddValency(Vertex),
    #[error("no K0 matrix assigned to generator {0}")]
    MissingK0(Symbol),
    #[error("matrix is not invertible over the integers")]
    NonUnimodular,
    #[error("matrix shapes do not match: {0}")]
    ShapeMismatch(String),
    #[error("vector dimension does not match: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("integer overflow in matrix arithmetic")]
    Overflow,
    #[error("invalid argument: {0}")]
    BadArgument(String),
    #[error("word syntax error: {0}")]
    WordSyntax(String),
    #[error("internal inconsistency: {0}")]
    Internal(&'static str),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotContractible(_) => "not-contractible",
            Error::NonIntegerGenus => "non-integer-genus",
            Error::BadSurfaceDatum(_) => "bad-surface-datum",
            Error::NotALoop => "not-a-loop",
            Error::BadCurve(_) => "bad-curve",
            Error::CurveCrossesEdge(_) => "curve-crosses-edge",
            Error::BadLineField(_) => "bad-line-field",
            Error::OddWindingLineField => "odd-winding-line-field",
            Error::FramingNotExtendable(_) => "framing-not-extendable",
            Error::FramingRequired => "framing-required",
            Error::BadSchober(_) => "bad-schober",
            Error::EdgeJoinsTwoSingularities(_) => "edge-joins-two-singularities",
            Error::LoopEdge(_) => "loop-edge",
            Error::NotNonsingular => "not-nonsingular",
            Error::Incompatible => "incompatible-schobers",
            Error::OddValency(_) => "odd-valency",
            Error::MissingK0(_) => "missing-k0",
            Error::NonUnimodular => "non-unimodular",
            Error::ShapeMismatch(_) => "shape-mismatch",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::Overflow => "overflow",
            Error::BadArgument(_) => "bad-argument",
            Error::WordSyntax(_) => "parse-error",
            Error::Internal(_) => "internal",
        }
    }
}
