use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph is disconnected: no path between {0} and {1}")]
    DisconnectedGraph(usize, usize),

    #[error("bad vertex list: {0}")]
    BadVertexList(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("invalid intersection array: {0}")]
    InvalidArray(String),

    #[error("layer size k_{index} is not integral ({numerator}/{denominator})")]
    NonIntegralLayer {
        index: usize,
        numerator: u128,
        denominator: u128,
    },

    #[error("inconsistent tensor: {0}")]
    InconsistentTensor(String),

    #[error("{entry} = {value} is not an integer")]
    NonIntegralEntry { entry: String, value: String },

    #[error("{entry} = {value} is negative")]
    NegativeEntry { entry: String, value: String },

    #[error("closed forms disagree for {entry}: {left} vs {right}")]
    FormulaMismatch {
        entry: String,
        left: String,
        right: String,
    },

    #[error("coloring has {actual} diversity colors, cycle set expects {expected}")]
    ColorCountMismatch { expected: usize, actual: usize },

    #[error("{n} vertices exceeds the automorphism size guard of {limit}")]
    SizeGuard { n: usize, limit: usize },

    #[error("unknown graph family '{0}'")]
    UnknownFamily(String),

    #[error("unknown algebra '{0}'")]
    UnknownAlgebra(String),
}
