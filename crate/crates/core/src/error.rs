use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("basis has a negative basic coordinate (variable {variable})")]
    InfeasibleBasis { variable: usize },
    #[error("basis columns are linearly dependent")]
    SingularBasis,
    #[error("entering variable {entering} has no blocking variable")]
    Unbounded { entering: usize },
    #[error("objective values of different kinds cannot be compared")]
    KindMismatch,
    #[error("pivot rule needs data that was not supplied: {0}")]
    MissingContext(&'static str),
    #[error("no improving reduced cost: the basis is already optimal")]
    AlreadyOptimal,
    #[error("start basis is infeasible")]
    InfeasibleStart,
    #[error("basis repeated after {iterations} pivots (cycling)")]
    Cycling { iterations: usize },
    #[error("{what} too large: {size} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("bound `{bound}` needs constant `{constant}`")]
    MissingConstant {
        bound: String,
        constant: &'static str,
    },
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("vertex does not belong to family {0}")]
    WrongFamily(&'static str),
    #[error("generators {0} and {1} are collinear")]
    CollinearGenerators(usize, usize),
    #[error("objective ties on vertices {0} and {1}")]
    DegenerateObjective(usize, usize),
    #[error("vertex {0} cannot reach the sink")]
    UnreachableVertex(usize),
    #[error("facet ordering is not a permutation of the 2n facets")]
    InvalidOrdering,
    #[error("construction step failed verification: {0}")]
    ConstructionFailure(String),
    #[error("invalid embedding target: {0}")]
    InvalidTarget(String),
    #[error("supply {supply} is not adjacent to demand {demand} in the optimum")]
    NotMatchedInOptimum { supply: usize, demand: usize },
    #[error("transportation instance is degenerate")]
    DegenerateInstance,
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("malformed instance file: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
