use thiserror::Error;

/// Errors raised by the election model, the solvers and the profile search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty subset")]
    EmptySubset,
    #[error("alternative {0} is out of range")]
    UnknownAlternative(usize),
    #[error("ranking is not a permutation of the {expected} alternatives")]
    InvalidRanking { expected: usize },
    #[error("profile must have between 1 and {max} alternatives, got {got}")]
    AlternativeCount { got: usize, max: usize },
    #[error("profile must have between 1 and {max} voters, got {got}")]
    VoterCount { got: usize, max: usize },
    #[error("alternative labels must be distinct and nonempty")]
    InvalidLabels,
    #[error("ballot {0} is not legal under plurality voting")]
    IllegalBallot(String),
    #[error("all ballots have already been cast")]
    TerminalState,
    #[error("a == b: margins are only defined between distinct alternatives")]
    SameAlternative,
    #[error("instance too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
