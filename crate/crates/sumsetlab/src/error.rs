use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("combined period {lcm} exceeds the cap of {cap}")]
    PeriodCapExceeded { lcm: i64, cap: i64 },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: i64, right: i64 },

    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(i64),

    #[error("residue {residue} out of range for modulus {modulus}")]
    ResidueOutOfRange { residue: i64, modulus: i64 },

    #[error("modulus {modulus} exceeds the exhaustive search cap of {cap}")]
    SearchModulusTooLarge { modulus: i64, cap: i64 },

    #[error("invalid window: lo {lo} exceeds hi {hi}")]
    InvalidWindow { lo: i64, hi: i64 },

    #[error("window span {span} exceeds the supported limit of {limit}")]
    WindowTooWide { span: i64, limit: i64 },

    #[error("window mismatch: [{left_lo}, {left_hi}] vs [{right_lo}, {right_hi}]")]
    WindowMismatch {
        left_lo: i64,
        left_hi: i64,
        right_lo: i64,
        right_hi: i64,
    },

    #[error("{0} lies outside the window")]
    OutsideWindow(i64),

    #[error("{0} is not an element of the set")]
    NotAnElement(i64),

    #[error("set must be nonempty")]
    EmptySet,

    #[error("set is unbounded below")]
    UnboundedBelow,

    #[error("set has no elements inside the window")]
    EmptyWindowIntersection,

    #[error("no qualifying residue class: {0}")]
    NoQualifyingResidue(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    EpForm(#[from] EpFormError),
}

/// Violations of the normal form invariants for eventually periodic sets.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum EpFormError {
    #[error("period must be positive, got {0}")]
    NonPositivePeriod(i64),

    #[error("A must be nonempty")]
    EmptyA,

    #[error("A contains {first} and {second}, both in class {residue} (mod {modulus})")]
    DuplicateClassInA {
        first: i64,
        second: i64,
        residue: i64,
        modulus: i64,
    },

    #[error("F element {f} lies in no residue class of A")]
    FOutsideAClasses { f: i64 },

    #[error("F element {f} is not below the A element {a} of its class")]
    FNotBelowA { f: i64, a: i64 },

    #[error("G must be bounded below")]
    GUnboundedBelow,

    #[error("G occupies class {residue} (mod {modulus}), which A also occupies")]
    GMeetsAClasses { residue: i64, modulus: i64 },
}
