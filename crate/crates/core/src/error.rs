use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expected a positive integer, got {0}")]
    NonPositive(i128),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is not a negative discriminant (D < 0, D = 0 or 1 mod 4)")]
    NotDiscriminant(i64),
    #[error("residue {r} is not reduced modulo {s}")]
    ResidueOutOfRange { r: u64, s: u64 },
    #[error("trace {t} lies outside the Hasse interval for q = {q}")]
    TraceOutOfRange { q: u64, t: i64 },
    #[error("{m} does not divide s_t = {s_t}")]
    NotDivisorOfSt { m: u64, s_t: u64 },
    #[error("class number table covers |D| <= {limit}, but |D| = {needed} is required")]
    TableTooSmall { limit: u64, needed: u64 },
    #[error("class number table for X = {requested} needs {bytes} bytes, above the cap of {cap_bytes}")]
    TableTooLarge { requested: u64, bytes: u64, cap_bytes: u64 },
    #[error("oracle requires characteristic p >= 5, got {0}")]
    SmallCharacteristic(u64),
    #[error("field size {q} exceeds the oracle cap {cap}")]
    FieldTooLarge { q: u64, cap: u64 },
    #[error("curve y^2 = x^3 + {a}x + {b} is singular")]
    SingularCurve { a: u32, b: u32 },
    #[error("{what} must be at least {min}, got {got}")]
    BelowMinimum { what: &'static str, min: u64, got: u64 },
    #[error("bad class number cache: {0}")]
    BadCache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
