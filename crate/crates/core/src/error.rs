use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: parse failures, dimension mismatches, bad flags.
    #[error("invalid input: {0}")]
    Input(String),
    #[error("duplicate hyperplane: entries {0} and {1} define the same hyperplane")]
    DuplicateHyperplane(usize, usize),
    #[error("hyperplane contains flat: hyperplane {0} contains the restriction flat")]
    HyperplaneContainsFlat(usize),
    #[error("invalid chain descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("arrangement is not central")]
    NonCentral,
    #[error("outside formula domain: {0}")]
    Domain(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget(_) => 2,
            Error::BadReduction(_) => 3,
            _ => 1,
        }
    }
}
