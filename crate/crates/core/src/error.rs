use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid level {0}: expected 2 <= n <= {max}", max = crate::arith::MAX_LEVEL)]
    InvalidLevel(u64),

    #[error("{a}/{c} is not a vertex mod {n}: gcd(a, c, n) != 1")]
    InvalidVertex { a: i64, c: i64, n: u64 },

    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u64, right: u64 },

    #[error("matrix ({a}, {b}; {c}, {d}) does not have determinant 1 mod {n}")]
    NotUnimodular {
        a: i64,
        b: i64,
        c: i64,
        d: i64,
        n: u64,
    },

    #[error("{what} has size {size}, over the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: u64,
        cap: u64,
    },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("unsupported export format `{0}` (expected dot, graphml, json or csv)")]
    UnsupportedFormat(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal arithmetic error: {0} is not an integer")]
    NonIntegral(&'static str),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
