use thiserror::Error;

/// Errors raised by the library. Violations of graph or block conditions are
/// reported as data by the validators and never show up here.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("no value assigned to variable `{0}`")]
    MissingVariable(String),

    #[error("cannot split the zero polynomial")]
    ZeroSplit,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("edge labels must be nonzero")]
    ZeroLabel,

    #[error("self-loop at node {0} is not allowed")]
    SelfLoop(usize),

    #[error("node {node} out of range 1..={max}")]
    NodeOutOfRange { node: usize, max: usize },

    #[error("unknown edge id {0}")]
    UnknownEdge(u32),

    #[error("column {0} of the Laplacian does not sum to zero")]
    NonzeroColumnSum(usize),

    #[error("split parts do not sum to the edge label")]
    SplitMismatch,

    #[error("|F| = {f} but |B| = {b}")]
    SizeMismatch { f: usize, b: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("the system is singular")]
    Singular,

    #[error("the graph's Laplacian does not match the system")]
    LaplacianMismatch,

    #[error("block {block} of b has more than one nonzero entry")]
    AmbiguousDistinguishedRow { block: usize },

    #[error("invalid block structure: {0}")]
    BlockForm(String),

    #[error("equation {row} is not linear in the unknowns: offending term `{term}`")]
    Nonlinear { row: usize, term: String },

    #[error("invalid steady-state task: {0}")]
    Task(String),

    #[error("input error: {0}")]
    Input(String),
}
