use thiserror::Error;

/// Library-wide error type.
///
/// Variants in the "capacity" family (`SieveCapacity`, `FactorizationUnavailable`,
/// `ResidueSystemTooLarge`, `DirectSumTooLarge`) indicate that a request exceeded a
/// configured size cap rather than being mathematically invalid; the CLI maps them
/// to a dedicated exit code.
#[derive(Debug, Error)]
pub enum Error {
    /// Integer arithmetic left the supported range. All ring operations are
    /// checked; the library never silently wraps.
    #[error("arithmetic overflow: {0}")]
    ArithmeticOverflow(&'static str),

    /// The element has no primary associate (zero, or not coprime to 3).
    #[error("no primary associate exists for ({a}, {b})")]
    NotPrimaryizable { a: i128, b: i128 },

    /// gcd(0, 0) requested.
    #[error("gcd(0, 0) is undefined")]
    UndefinedGcd,

    /// A complete residue system was requested for a modulus whose norm
    /// exceeds the enumeration cap.
    #[error("residue system of size {size} exceeds cap {cap}")]
    ResidueSystemTooLarge { size: i128, cap: i128 },

    /// The element passed as a prime modulus is not prime.
    #[error("({a}, {b}) is not prime")]
    NotPrime { a: i128, b: i128 },

    /// Factorization needs primes beyond the sieved range.
    #[error("factoring norm {norm} needs primes beyond the sieve limit {limit}")]
    FactorizationUnavailable { norm: i128, limit: i128 },

    /// Sieve limit beyond the supported cap.
    #[error("sieve limit {requested} exceeds cap {cap}")]
    SieveCapacity { requested: i128, cap: i128 },

    /// Direct Gauss-sum evaluation requested for a modulus beyond the cap.
    #[error("direct Gauss sum over {size} residues exceeds cap {cap}")]
    DirectSumTooLarge { size: i128, cap: i128 },

    /// Invalid numeric argument (non-positive weight argument, bad tolerance, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid configuration (k·κ not a positive integer, empty interval data, ...).
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Cache or report I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Cache file malformed or of an unexpected version.
    #[error("cache format error: {0}")]
    CacheFormat(String),
}

impl Error {
    /// True for errors that mean "request too large", not "request invalid".
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            Error::ResidueSystemTooLarge { .. }
                | Error::FactorizationUnavailable { .. }
                | Error::SieveCapacity { .. }
                | Error::DirectSumTooLarge { .. }
        )
    }

    /// Stable machine-readable name of the variant, used in CLI error output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ArithmeticOverflow(_) => "ArithmeticOverflow",
            Error::NotPrimaryizable { .. } => "NotPrimaryizable",
            Error::UndefinedGcd => "UndefinedGcd",
            Error::ResidueSystemTooLarge { .. } => "ResidueSystemTooLarge",
            Error::NotPrime { .. } => "NotPrime",
            Error::FactorizationUnavailable { .. } => "FactorizationUnavailable",
            Error::SieveCapacity { .. } => "SieveCapacity",
            Error::DirectSumTooLarge { .. } => "DirectSumTooLarge",
            Error::Domain(_) => "Domain",
            Error::Config(_) => "Config",
            Error::Io(_) => "Io",
            Error::CacheFormat(_) => "CacheFormat",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
