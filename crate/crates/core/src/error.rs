use std::fmt;

use crate::ring::Elem;

/// Ring law that failed during table validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    TableShape,
    AdditiveIdentity,
    AdditiveInverse,
    AdditiveCommutativity,
    AdditiveAssociativity,
    MultiplicativeIdentity,
    MultiplicativeAssociativity,
    LeftDistributivity,
    RightDistributivity,
    /// `1 != 0`.
    NonTrivial,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::TableShape => "table shape",
            Law::AdditiveIdentity => "additive identity",
            Law::AdditiveInverse => "additive inverse",
            Law::AdditiveCommutativity => "additive commutativity",
            Law::AdditiveAssociativity => "additive associativity",
            Law::MultiplicativeIdentity => "multiplicative identity",
            Law::MultiplicativeAssociativity => "multiplicative associativity",
            Law::LeftDistributivity => "left distributivity",
            Law::RightDistributivity => "right distributivity",
            Law::NonTrivial => "1 != 0",
        };
        f.write_str(s)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("ring axiom violated ({law}) at elements {witness:?}")]
    AxiomViolation { law: Law, witness: Vec<Elem> },
    #[error("invalid ring spec: {0}")]
    Spec(String),
    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },
    #[error("{what} exceeds the configured bound of {limit}")]
    CapacityExceeded { what: &'static str, limit: usize },
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("wrong ring: {0}")]
    WrongRing(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("the zero pair has no gcd decomposition")]
    ZeroPair,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
