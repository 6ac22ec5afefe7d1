use thiserror::Error;

/// Crate-wide error type. The CLI maps these onto exit codes: malformed
/// inputs and exceeded budgets are usage errors, failed graph axioms and
/// rejected witnesses are semantic failures, and disagreeing redundant
/// checks are internal inconsistencies.
#[derive(Debug, Error, Clone)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("not a projector: max|P^2-P| = {idempotency:.3e}, max|P^H-P| = {hermiticity:.3e}")]
    NotAProjector { idempotency: f64, hermiticity: f64 },

    #[error("not a valid quantum graph: {0}")]
    InvalidGraph(String),

    #[error("state error: {0}")]
    State(String),

    #[error("search budget exceeded: {0}")]
    Budget(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("block ({i},{j}) fits no strange-graph case: {detail}")]
    MalformedBlock { i: usize, j: usize, detail: String },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
