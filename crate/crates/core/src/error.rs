use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report. Variants carry enough context to
/// name the violated invariant and, where one exists, a witness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("asymmetric adjacency between {0} and {1}")]
    Asymmetric(usize, usize),

    #[error("disconnected graph")]
    Disconnected,

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("empty vertex set")]
    EmptyVertexSet,

    #[error("invalid family spec: {0}")]
    InvalidFamily(String),

    #[error(
        "not distance-regular: p^{h}_{{{i}{j}}} is {found} for ({x},{y}) but {expected} elsewhere"
    )]
    NotDistanceRegular {
        h: usize,
        i: usize,
        j: usize,
        x: usize,
        y: usize,
        expected: usize,
        found: usize,
    },

    #[error("float-mode input: {0}")]
    FloatMode(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("eigenvalue list incomplete or incorrect: {0}")]
    BadEigenvalues(String),

    #[error("negative Krein parameter q^{h}_{{{i}{j}}} = {value}")]
    NegativeKrein {
        h: usize,
        i: usize,
        j: usize,
        value: String,
    },

    #[error("bipartite: tightness undefined")]
    Bipartite,

    #[error("infeasible SRG parameters: {0}")]
    InfeasibleSrg(String),

    #[error("inconsistent spectrum: {0}")]
    InconsistentSpectrum(String),

    #[error("not a strongly regular graph: {0}")]
    NotSrg(String),

    #[error("not a Taylor graph: {0}")]
    NotTaylor(String),

    #[error("not an AT4(p,q,2) graph: {0}")]
    NotAt4(String),

    #[error("dual adjacency: {0}")]
    DualAdjacency(String),

    #[error("module classification violated: {0}")]
    Classification(String),

    #[error("{0}")]
    Precondition(String),
}
