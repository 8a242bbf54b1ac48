use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// Variants are grouped by the stage that raises them. Mathematical failures
/// (a relation that should hold but does not) are kept distinct from resource
/// exhaustion so the CLI can map them onto different exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    // exact rings
    #[error("value is zero in the cyclotomic field")]
    ZeroValue,
    #[error("rational reconstruction failed for the current modulus")]
    NoReconstruction,
    #[error("samples are inconsistent with the exponent window [{lo}, {hi}]")]
    InconsistentSamples { lo: i64, hi: i64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not irreducible: {0}")]
    NotIrreducible(String),

    // weyl data / characters
    #[error("group too large for enumeration: {0}")]
    TooLarge(String),
    #[error("missing a-invariant for label {0}")]
    MissingAInvariant(String),
    #[error("incomplete set of representations: {0}")]
    IncompleteRepSet(String),
    #[error("orthogonality relation violated between {0} and {1}")]
    OrthogonalityViolation(String, String),

    // gram solver
    #[error("no subset I of S gives a one-dimensional kernel intersection")]
    NoParabolicType,
    #[error("spin-up stalled at rank {rank} < {dim}")]
    SpinStalled { rank: usize, dim: usize },
    #[error("degenerate specialization: {0}")]
    DegenerateSpecialization(String),
    #[error("solution space of the invariance system has dimension {0}, expected 1")]
    SolutionSpaceNotOneDim(usize),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("gram matrix is not symmetric")]
    NotSymmetric,

    // specialized ranks
    #[error("no primitive {0}-th root of unity in the requested field")]
    NoRoot(u64),
    #[error("(e={e}, l={ell}) is not e-regular: {reason}")]
    NotERegular { e: u64, ell: u64, reason: String },

    // meataxe / decomposition / blocks
    #[error("no decision after {0} random algebra elements")]
    Stalled(usize),
    #[error("simple module is not absolutely irreducible (hom dimension {0})")]
    NonSplit(usize),
    #[error("column identification ambiguous between {0} and {1}")]
    IdentificationAmbiguous(String, String),
    #[error("decomposition relations violated: {0}")]
    DeltaViolation(String),
    #[error("Phi_e-defect not constant on block: {0}")]
    DefectMismatch(String),
    #[error("adjustment system has no solution: {0}")]
    NoSolution(String),
    #[error("adjustment matrix has a negative or non-integral entry: {0}")]
    NegativeEntry(String),

    // files
    #[error("parse error: {0}")]
    Parse(String),
    #[error("format version mismatch: expected {expected}, found {found}")]
    VersionMismatch { expected: String, found: String },
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors that signal an exhausted budget rather than a mathematical failure.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::NoReconstruction | Error::Stalled(_) | Error::TooLarge(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
