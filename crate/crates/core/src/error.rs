use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Each variant knows which module raised it and carries a short remediation
/// hint, so the command-line front end can print actionable diagnostics.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid discriminant {0}: must be negative and congruent to 0 or 1 mod 4")]
    InvalidDiscriminant(i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("level {0} is too small (need a prime N > 3)")]
    LevelTooSmall(u64),
    #[error("internal consistency failure in {op}: {detail}")]
    Internal { op: &'static str, detail: String },

    #[error("insufficient precision: need {needed} coefficients, have {available}")]
    InsufficientPrecision { needed: usize, available: usize },

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {detail}")]
    Parse { path: PathBuf, detail: String },
    #[error("level {level}: expected {expected} forms (genus of X0+(N)), found {found}")]
    GenusMismatch { level: u64, expected: usize, found: usize },
    #[error("malformed basis: {0}")]
    MalformedBasis(String),

    #[error("degree-{degree} relation space has dimension {found}, expected {expected}")]
    KernelDimension { degree: u32, expected: usize, found: usize },
    #[error("degenerate canonical image: {0}")]
    Degenerate(String),
    #[error("unsupported genus {0} (only 3 and 4 are handled)")]
    UnsupportedGenus(usize),

    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("points span a subspace of rank {found}, expected {expected}")]
    RankDeficient { expected: usize, found: usize },
    #[error("the line lies on the curve (restriction vanishes identically)")]
    LineOnCurve,
    #[error("the plane meets a model surface in a whole component (section vanishes identically)")]
    PlaneOnSurface,
    #[error("point {0} is singular on the curve (zero gradient)")]
    SingularPoint(String),
    #[error("conic and cubic share a common factor")]
    CommonFactor,
    #[error("no separating projection found after {attempts} shears")]
    NoSeparatingShear { attempts: usize },
    #[error("cannot factor the zero form")]
    ZeroForm,
    #[error("quadratic form is reducible over the rationals")]
    Reducible,
    #[error("integer {0} is too large to factor")]
    TooLargeToFactor(String),

    #[error("truncation error {err:e} exceeds ceiling {ceiling:e} at {terms} terms")]
    InconclusivePrecision { err: f64, ceiling: f64, terms: usize },
    #[error("{count} candidates lie within tolerance {tol:e}; refusing to guess")]
    AmbiguousMatch { count: usize, tol: f64 },
}

impl Error {
    /// Name of the module that raises this error.
    pub fn module(&self) -> &'static str {
        use Error::*;
        match self {
            InvalidDiscriminant(_) | NotPrime(_) | LevelTooSmall(_) => "arith",
            Internal { .. } => "internal",
            InsufficientPrecision { .. } => "qseries",
            Io { .. } | Parse { .. } | GenusMismatch { .. } | MalformedBasis(_) => "ingest",
            KernelDimension { .. } | Degenerate(_) | UnsupportedGenus(_) => "model",
            ZeroVector => "points",
            Precondition(_) => "precondition",
            RankDeficient { .. }
            | LineOnCurve
            | PlaneOnSurface
            | SingularPoint(_)
            | CommonFactor
            | NoSeparatingShear { .. }
            | ZeroForm
            | Reducible
            | TooLargeToFactor(_) => "geometry",
            InconclusivePrecision { .. } | AmbiguousMatch { .. } => "heegner",
        }
    }

    pub fn hint(&self) -> &'static str {
        use Error::*;
        match self {
            InvalidDiscriminant(_) => "pass a negative discriminant D with D mod 4 in {0, 1}",
            NotPrime(_) | LevelTooSmall(_) => "choose a prime level N > 3",
            Internal { .. } => "this is a bug; please report it with the inputs used",
            InsufficientPrecision { .. } => "regenerate the fixture with more coefficients",
            Io { .. } => "check --data-dir (or X0PLUS_DATA_DIR) and the fixture file name",
            Parse { .. } | MalformedBasis(_) => "regenerate the fixture with tools/gen_fixtures.py",
            GenusMismatch { .. } => "the fixture does not span S2+(Gamma0(N)); regenerate it",
            KernelDimension { .. } | Degenerate(_) => {
                "the basis is not a valid +1 eigenbasis for a non-hyperelliptic curve"
            }
            UnsupportedGenus(_) => "only levels with genus 3 or 4 have canonical models here",
            ZeroVector | Precondition(_) => "check the arguments passed to the operation",
            RankDeficient { .. } => "pass points in general position",
            LineOnCurve | PlaneOnSurface | CommonFactor => {
                "the model is reducible; check the fixture and the model equations"
            }
            SingularPoint(_) => "tangent lines exist only at smooth points",
            NoSeparatingShear { .. } => "retry with a different shear seed",
            ZeroForm | Reducible => "check the input form",
            TooLargeToFactor(_) => "the discriminant is beyond the built-in factoring range",
            InconclusivePrecision { .. } => "raise --terms or use a fixture with more coefficients",
            AmbiguousMatch { .. } => "lower --tol or raise --terms",
        }
    }
}
