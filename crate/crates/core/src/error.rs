use std::fmt;

/// Errors produced by graph loading, tensor construction, and the solvers.
#[derive(Debug)]
pub enum Error {
    /// An edge-list line that is not a comment and does not hold exactly two
    /// nonnegative integers.
    Parse {
        line: usize,
        msg: String,
    },
    Io(std::io::Error),
    /// Motif filtering left nothing behind: no edge participates in any motif.
    EmptyCore,
    /// The requested tensor has no nonzero entries on this graph.
    ZeroMotifs {
        kind: &'static str,
    },
    /// Operation requires a strongly connected input; filter to a core first.
    NotStronglyConnected,
    /// Co-clustering requires every node to have an in-edge and an out-edge.
    ZeroDegree {
        node: u64,
        direction: &'static str,
    },
    InvalidDistribution(String),
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
    /// A motif spans the two components handed to the sink-augmented operator.
    SpanningMotif {
        i: u32,
        j: u32,
        k: u32,
    },
    /// Reference-oracle guard: brute-force routines refuse large inputs.
    TooLarge {
        n: usize,
        max: usize,
    },
    InvalidConfig(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
            Error::Io(e) => write!(f, "i/o error: {e}"),
            Error::EmptyCore => write!(f, "empty core: no edge participates in any motif"),
            Error::ZeroMotifs { kind } => write!(
                f,
                "graph contains no '{kind}' motifs; choose another tensor kind or method"
            ),
            Error::NotStronglyConnected => {
                write!(
                    f,
                    "input graph is not strongly connected; filter to a core first"
                )
            }
            Error::ZeroDegree { node, direction } => {
                write!(f, "node {node} has zero {direction}-degree")
            }
            Error::InvalidDistribution(msg) => write!(f, "invalid distribution: {msg}"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::SpanningMotif { i, j, k } => {
                write!(f, "motif ({i}, {j}, {k}) spans both components")
            }
            Error::TooLarge { n, max } => {
                write!(
                    f,
                    "input has {n} nodes; brute-force oracle is capped at {max}"
                )
            }
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
