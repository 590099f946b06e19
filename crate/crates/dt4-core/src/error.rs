use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("trivial weight in a denominator position: {0}")]
    TrivialWeightInDenominator(String),
    #[error("exponent leaves the quarter lattice: {0}")]
    LatticeViolation(String),
    #[error("factor cannot be expanded in positive series degree: {0}")]
    NonExpandable(String),
    #[error("plethystic exponential of a series with nonzero constant term")]
    NonzeroConstantTerm,
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("random evaluation point is singular")]
    EvaluationSingular,
    #[error("numerator and denominator bracket counts differ: {num} vs {den}")]
    RankMismatch { num: usize, den: usize },
    #[error("linear form vanishes identically for weight {0}")]
    ZeroLinearForm(String),
    #[error("pole at y = t4 for partition {0}")]
    PoleAtReduction(String),
    #[error("chart weights do not multiply to 1: {0}")]
    ChartNotCalabiYau(String),
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("group element not in SU(4): {0}")]
    NotSU4(String),
    #[error("identity failed at {0}")]
    IdentityFailed(String),
    #[error("no sign vector satisfies the identity")]
    NoSignVectorWorks,
    #[error("unknown class {0}")]
    UnknownClass(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("cache i/o: {0}")]
    Io(String),
    #[error("partition {id}: {source}")]
    AtPartition { id: String, source: Box<Error> },
}

impl Error {
    pub fn at_partition(self, id: impl Into<String>) -> Error {
        Error::AtPartition { id: id.into(), source: Box::new(self) }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
