//! Crate-wide error type.

use crate::lottery::CandidateLottery;
use thiserror::Error;

/// Errors produced by election construction, parsing, enumeration budgets,
/// and the lottery solver.
#[derive(Debug, Error)]
pub enum Error {
    #[error("voter id {voter} out of range 1..={num_voters}")]
    VoterOutOfRange { voter: u32, num_voters: u32 },

    #[error("candidate id {candidate} out of range 1..={num_candidates}")]
    CandidateOutOfRange { candidate: u32, num_candidates: u32 },

    #[error("empty profile")]
    EmptyProfile,

    #[error("malformed header at line {line}: expected \"<candidates> <voters>\"")]
    MalformedHeader { line: usize },

    #[error("malformed ranking at line {line}: {reason}")]
    MalformedRanking { line: usize, reason: String },

    #[error("count mismatch: header declares {expected} voters, found {found}")]
    CountMismatch { expected: u64, found: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("budget exceeded: {needed} nodes needed, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    /// The solver exhausted its iteration budget before certifying the
    /// guaranteed bound. The best iterate found so far is carried along so
    /// callers can still use it on a best-effort basis.
    #[error("solver did not converge: best value {achieved} vs target {target}")]
    NotConverged {
        achieved: f64,
        target: f64,
        lottery: CandidateLottery,
    },
}

impl Error {
    /// Exit-code class used by the command-line front end: input errors map
    /// to 2, budget and convergence failures to 3.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } | Error::NotConverged { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
