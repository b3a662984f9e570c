use std::fmt;

use crate::gf2poly::Gf2Poly;

/// Errors surfaced by code construction, encoding and circuit building.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Polynomial division by the zero polynomial.
    DivisionByZero,
    /// Extended gcd of two zero polynomials is undefined.
    GcdOfZeros,
    /// Modular inverse requested for non-coprime operands; carries the
    /// common factor found by the Euclid run.
    NotCoprime { common: Gf2Poly },
    /// Modular inverse requires a modulus of degree at least 1.
    ConstantModulus,
    /// Extension degree outside the supported 2..=16 range.
    UnsupportedExtensionDegree { t: u32 },
    /// Supplied field polynomial does not have degree `t`.
    FieldPolyDegree { t: u32, got: Option<usize> },
    /// Supplied field polynomial is not primitive. `order` is the actual
    /// multiplicative order of its root, or `None` when the root is not
    /// even invertible (reducible polynomial divisible by x).
    NotPrimitive { order: Option<usize> },
    /// Designed distance outside 2..=N.
    DeltaOutOfRange { delta: usize, n: usize },
    /// Bit-vector length does not match the code parameter.
    LengthMismatch { expected: usize, got: usize },
    /// Byte input carries nonzero bits in the padding positions.
    NonZeroPadding,
    /// Multiplication circuit taps must be a nonzero polynomial.
    ZeroTaps,
    /// Division circuit divisor must have degree at least 1.
    ConstantDivisor,
    /// Text form of a polynomial could not be parsed.
    PolyParse(String),
    /// JSON (de)serialization failure for descriptors or reports.
    Json(String),
    /// A code descriptor is inconsistent with the code it claims to
    /// describe.
    Descriptor(String),
    /// File or stream I/O failure.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by the zero polynomial"),
            Error::GcdOfZeros => write!(f, "gcd(0, 0) is undefined"),
            Error::NotCoprime { common } => {
                write!(f, "operands are not coprime (common factor {common})")
            }
            Error::ConstantModulus => write!(f, "modulus must have degree >= 1"),
            Error::UnsupportedExtensionDegree { t } => {
                write!(
                    f,
                    "extension degree t={t} is outside the supported range 2..=16"
                )
            }
            Error::FieldPolyDegree { t, got } => match got {
                Some(d) => write!(f, "field polynomial must have degree {t}, got {d}"),
                None => write!(
                    f,
                    "field polynomial must have degree {t}, got the zero polynomial"
                ),
            },
            Error::NotPrimitive { order } => match order {
                Some(k) => write!(
                    f,
                    "field polynomial is not primitive: its root has multiplicative order {k}"
                ),
                None => write!(
                    f,
                    "field polynomial is not primitive: its root is not invertible"
                ),
            },
            Error::DeltaOutOfRange { delta, n } => {
                write!(f, "designed distance {delta} is outside 2..={n}")
            }
            Error::LengthMismatch { expected, got } => {
                write!(f, "expected {expected} bits, got {got}")
            }
            Error::NonZeroPadding => write!(f, "nonzero bits in byte padding"),
            Error::ZeroTaps => write!(f, "multiplier taps must be nonzero"),
            Error::ConstantDivisor => write!(f, "divider taps must have degree >= 1"),
            Error::PolyParse(s) => write!(f, "cannot parse polynomial: {s}"),
            Error::Json(s) => write!(f, "JSON error: {s}"),
            Error::Descriptor(s) => write!(f, "descriptor error: {s}"),
            Error::Io(s) => write!(f, "I/O error: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
