use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed type descriptor {input:?}: {reason}")]
    TypeSyntax { input: String, reason: String },

    #[error("bonding degree {0} is less than 2")]
    EntryTooSmall(i128),

    #[error("period block is present but empty")]
    EmptyPeriod,

    #[error("type has no period; only a finite horizon of the sequence is known")]
    MissingPeriod,

    #[error("stage {requested} is beyond the known horizon {horizon}")]
    HorizonExceeded { requested: usize, horizon: usize },

    #[error("degree must be at least 1")]
    ZeroDegree,

    #[error("malformed permutation {input:?}: {reason}")]
    PermutationSyntax { input: String, reason: String },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("malformed fraction {input:?}: {reason}")]
    FractionSyntax { input: String, reason: String },

    #[error("{0} is not expressible at the requested stage")]
    NotExpressible(String),

    #[error("enumeration needs {states} states, over the budget of {budget}")]
    StateBudget { states: u128, budget: u64 },

    #[error("l = {l} shares a factor with w{stage} = {entry}")]
    SharedFactor { l: u64, stage: usize, entry: u64 },

    #[error("stage {stage} precedes the base stage {base}")]
    StageOrder { base: usize, stage: usize },

    #[error("oracle disagreement: closed form counts {closed_form} orbits, enumeration counts {enumerated}")]
    OracleMismatch { closed_form: usize, enumerated: usize },

    #[error("{0} must be at least 1")]
    NonPositive(&'static str),
}
