use alloc::string::String;
use core::fmt;

/// Broad class of a failure; the command-line front end maps these onto exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// The input is well formed but the mathematical precondition fails.
    Domain,
    /// A configured bound (degree cap, series precision, step count) was hit.
    Resource,
    /// Text input could not be parsed.
    Parse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    AmbientMismatch,
    ArityMismatch { expected: usize, found: usize },
    DegreeCap { cap: u32 },
    PrecisionExhausted { precision: u32 },
    InvalidMultiOrder(String),
    IndexOutOfRange { index: usize, len: usize },
    NotInMord,
    ZeroIdeal,
    NoContact,
    NotMonomial,
    Inadmissible,
    NonIntegral,
    InvalidRoot,
    InexactDivision,
    SaturationUnstable,
    IrrationalPoint,
    FailsToCertify,
    NotATube(String),
    Unrepresentable(String),
    Parse { position: usize, message: String },
    Internal(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::AmbientMismatch => "ambient-mismatch",
            Error::ArityMismatch { .. } => "arity-mismatch",
            Error::DegreeCap { .. } => "degree-cap",
            Error::PrecisionExhausted { .. } => "precision-exhausted",
            Error::InvalidMultiOrder(_) => "invalid-multiorder",
            Error::IndexOutOfRange { .. } => "invalid-index",
            Error::NotInMord => "not-in-mord",
            Error::ZeroIdeal => "zero-ideal",
            Error::NoContact => "no-contact",
            Error::NotMonomial => "non-monomial",
            Error::Inadmissible => "inadmissible",
            Error::NonIntegral => "non-integral",
            Error::InvalidRoot => "invalid-root",
            Error::InexactDivision => "admissibility-violation",
            Error::SaturationUnstable => "saturation-unstable",
            Error::IrrationalPoint => "irrational-point",
            Error::FailsToCertify => "fails-to-certify",
            Error::NotATube(_) => "not-a-tube",
            Error::Unrepresentable(_) => "unrepresentable",
            Error::Parse { .. } => "parse",
            Error::Internal(_) => "internal",
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::DegreeCap { .. } | Error::PrecisionExhausted { .. } => ErrorClass::Resource,
            Error::Parse { .. } => ErrorClass::Parse,
            _ => ErrorClass::Domain,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::AmbientMismatch => f.write_str("operands live in different ambient rings"),
            Error::ArityMismatch { expected, found } => {
                write!(f, "expected arity {expected}, found {found}")
            }
            Error::DegreeCap { cap } => write!(f, "total degree exceeds the cap {cap}"),
            Error::PrecisionExhausted { precision } => {
                write!(f, "power series precision {precision} is not enough to decide an order")
            }
            Error::InvalidMultiOrder(why) => write!(f, "invalid multiorder: {why}"),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range 1..={len}")
            }
            Error::NotInMord => f.write_str("multiorder is not in Mord"),
            Error::ZeroIdeal => f.write_str("the zero ideal has no invariant"),
            Error::NoContact => f.write_str("no order-one element exists over the rationals"),
            Error::NotMonomial => f.write_str("ideal is not generated by monomials"),
            Error::Inadmissible => f.write_str("center is not admissible for the ideal"),
            Error::NonIntegral => f.write_str("center is not integral"),
            Error::InvalidRoot => f.write_str("N/d_i is not a natural number for some i"),
            Error::InexactDivision => {
                f.write_str("pullback is not divisible by the expected power of the exceptional coordinate")
            }
            Error::SaturationUnstable => f.write_str("saturation loop did not stabilise"),
            Error::IrrationalPoint => f.write_str("a singular point has no rational representative"),
            Error::FailsToCertify => f.write_str("no Tschirnhaus presentation could be certified"),
            Error::NotATube(why) => write!(f, "not a tube: {why}"),
            Error::Unrepresentable(why) => write!(f, "unrepresentable input: {why}"),
            Error::Parse { position, message } => write!(f, "parse error at {position}: {message}"),
            Error::Internal(why) => write!(f, "internal consistency check failed: {why}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
