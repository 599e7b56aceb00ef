use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything the engine can refuse to do.
///
/// Variants fall into three families which the CLI maps onto exit codes:
/// malformed input (2), mathematically inconsistent data (3) and requests
/// that exceed a size limit (4).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("divisor has {found} exceptional coefficients, surface has {expected} blowups")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("blowup {node}: parent {parent} must be an earlier blowup")]
    InvalidParent { node: usize, parent: usize },

    #[error("blowup {node}: base point {point} is not declared")]
    UnknownBasePoint { node: usize, point: u32 },

    #[error("blowup {node}: base point {point} was already blown up by blowup {previous}")]
    BasePointReused {
        node: usize,
        point: u32,
        previous: usize,
    },

    #[error("base point {0} is declared twice")]
    DuplicateBasePoint(u32),

    #[error("blowup {node}: center is not on the anticanonical curve")]
    PoissonViolation { node: usize },

    #[error(
        "blowup {node}: anticanonical multiplicity {found} exceeds {limit} of the point it lies on"
    )]
    MultiplicityIncrease { node: usize, found: u32, limit: u32 },

    #[error(
        "blowup {node}: on_anticanonical={on} is inconsistent with multiplicity {multiplicity}"
    )]
    InconsistentMultiplicity {
        node: usize,
        on: bool,
        multiplicity: u32,
    },

    #[error("surface with trivial canonical class admits no Poisson blowups")]
    BlowupsForbidden,

    #[error("base case {case} requires genus {required}, got {found}")]
    GenusMismatch {
        case: &'static str,
        required: u32,
        found: u32,
    },

    #[error("anticanonical subcase only applies to the rational F2 case")]
    SubcaseNotApplicable,

    #[error("h^1 of the anticanonical curve is undefined for a trivial canonical class")]
    UndefinedForTrivialCanonical,

    #[error("no exceptional component with index {0}")]
    UnknownComponent(usize),

    #[error("linear system over the exceptional lattice is singular")]
    SingularSystem,

    #[error("class {0} is not in the span of the exceptional curves")]
    NotExceptional(String),

    #[error("class {0} is not an integral combination of exceptional components")]
    NonIntegral(String),

    #[error("class {class} has negative multiplicity along component f{component}")]
    NotEffective { class: String, component: usize },

    #[error("sheaf on a surface with {found} blowups cannot be moved to one with {target}")]
    StageMismatch { found: usize, target: usize },

    #[error("lift datum has {found} entries, morphism has {expected} blowups")]
    LiftDatumLength { expected: usize, found: usize },

    #[error("lift datum entry {index} is negative ({value})")]
    NegativeLiftDatum { index: usize, value: i64 },

    #[error("D^2 - D.K is odd for {0}")]
    ParityViolation(String),

    #[error("supplied lift is not consistent with the class it lifts: {0}")]
    InconsistentLift(String),

    #[error("pseudo-twist length {name} = {value} is negative")]
    NegativeLength { name: &'static str, value: i64 },

    #[error("operation requires a rank 0 sheaf, got rank {0}")]
    RankNonzero(u32),

    #[error("jet site {0} is not on the anticanonical curve")]
    NotTransverse(String),

    #[error("jet site {0} appears more than once")]
    DuplicateJetSite(String),

    #[error("jet at site {0} has length 0")]
    EmptyJet(String),

    #[error("jet profile has total length {total}, but c1.C_alpha = {expected}")]
    JetLengthMismatch { total: i64, expected: i64 },

    #[error("class {0} meets the anticanonical curve, so it cannot have disjoint restriction")]
    NotDisjoint(String),

    #[error("restriction data {0} requires rank 0 sheaves")]
    RestrictionNeedsRankZero(&'static str),

    #[error("symplectic leaf dimension 2*{dim_end} - {index} is negative")]
    NegativeLeafDimension { dim_end: u32, index: i64 },

    #[error("endomorphism dimension must be at least 1")]
    ZeroEndomorphisms,

    #[error("coefficient bound must be at least 1, got {0}")]
    InvalidBound(i64),

    #[error("ordering is not a permutation of the {0} exceptional components")]
    NotAPermutation(usize),

    #[error("{what} needs n = {n}, limit is {limit}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("{0}")]
    Config(String),

    #[error("{0}")]
    Parse(String),
}

impl Error {
    /// Process exit code used by the `pbc` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SizeLimit { .. } => 4,
            Error::Config(_)
            | Error::Parse(_)
            | Error::DimensionMismatch { .. }
            | Error::InvalidParent { .. }
            | Error::UnknownBasePoint { .. }
            | Error::BasePointReused { .. }
            | Error::DuplicateBasePoint(_)
            | Error::PoissonViolation { .. }
            | Error::MultiplicityIncrease { .. }
            | Error::InconsistentMultiplicity { .. }
            | Error::BlowupsForbidden
            | Error::GenusMismatch { .. }
            | Error::SubcaseNotApplicable
            | Error::UnknownComponent(_)
            | Error::StageMismatch { .. }
            | Error::LiftDatumLength { .. }
            | Error::NegativeLiftDatum { .. }
            | Error::DuplicateJetSite(_)
            | Error::EmptyJet(_)
            | Error::InvalidBound(_)
            | Error::NotAPermutation(_)
            | Error::ZeroEndomorphisms
            | Error::RestrictionNeedsRankZero(_) => 2,
            _ => 3,
        }
    }
}
