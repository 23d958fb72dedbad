use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Frame size outside the range the mask algebra supports.
    FrameTooLarge {
        n: usize,
        max: usize,
    },
    RegionOutOfRange {
        region: u32,
        n: u8,
    },
    AtomOutOfRange {
        atom: usize,
        n: u8,
    },
    /// Region labels are only rendered with single decimal digits.
    LabelUnsupported {
        n: u8,
    },
    FrameMismatch {
        left: u8,
        right: u8,
    },
    NotIsotone,
    /// A mask or bit-string of the wrong length, or with bits beyond the frame.
    MalformedMask(String),
    /// Refusal to materialize or enumerate something too large.
    Capacity {
        what: &'static str,
        n: usize,
        limit: usize,
        elements: Option<BigUint>,
        bytes: Option<BigUint>,
    },
    UnknownValue {
        n: usize,
    },
    Parse(ParseError),
    EmptyInput,
    InvalidMass {
        mass: f64,
    },
    MassSum {
        sum: f64,
    },
    EmptySetMass {
        mass: f64,
    },
    DuplicateFocal,
    OpenWorldInput,
    InvalidWeight {
        weight: f64,
    },
    WeightSum {
        sum: f64,
    },
    /// Sources in full contradiction: all of the mass lands on the empty set.
    FullContradiction {
        conflict: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FrameTooLarge { n, max } => {
                write!(f, "frame of {n} atoms exceeds the supported maximum of {max}")
            }
            Error::RegionOutOfRange { region, n } => {
                write!(f, "region {region} out of range for a frame of {n} atoms (1..={})", (1u64 << n) - 1)
            }
            Error::AtomOutOfRange { atom, n } => {
                write!(f, "atom t{atom} out of range for a frame of {n} atoms")
            }
            Error::LabelUnsupported { n } => {
                write!(f, "region labels need more than one digit per atom for n = {n} (supported up to 9)")
            }
            Error::FrameMismatch { left, right } => {
                write!(f, "frame mismatch: {left} atoms vs {right} atoms")
            }
            Error::NotIsotone => f.write_str("mask is not upward-closed (not an element of D^Θ)"),
            Error::MalformedMask(msg) => write!(f, "malformed mask: {msg}"),
            Error::Capacity { what, n, limit, elements, bytes } => {
                write!(f, "{what} refused for n = {n} (limit {limit})")?;
                match (elements, bytes) {
                    (Some(e), Some(b)) => write!(f, ": would need {e} elements, {b} bytes"),
                    (Some(e), None) => write!(f, ": would need {e} elements"),
                    _ => Ok(()),
                }
            }
            Error::UnknownValue { n } => write!(f, "no known Dedekind number for n = {n}"),
            Error::Parse(e) => fmt::Display::fmt(e, f),
            Error::EmptyInput => f.write_str("at least one input is required"),
            Error::InvalidMass { mass } => write!(f, "mass {mass} outside [0, 1]"),
            Error::MassSum { sum } => {
                let (word, gap) = if *sum < 1.0 { ("deficit", 1.0 - sum) } else { ("excess", sum - 1.0) };
                write!(f, "masses sum to {}, expected 1 ({word} {})", Trimmed(*sum), Trimmed(gap))
            }
            Error::EmptySetMass { mass } => {
                write!(f, "the empty set carries mass {mass} in a closed-world assignment")
            }
            Error::DuplicateFocal => f.write_str("focal element listed twice"),
            Error::OpenWorldInput => f.write_str("input assignment is open-world (m(∅) > 0)"),
            Error::InvalidWeight { weight } => write!(f, "weight {weight} outside [0, 1]"),
            Error::WeightSum { sum } => write!(f, "redistribution weights sum to {sum}, expected 1"),
            Error::FullContradiction { conflict } => write!(
                f,
                "sources are in full contradiction (conflict {conflict}); the orthogonal sum does not exist"
            ),
        }
    }
}

/// Nine decimals with trailing zeros trimmed: `0.1`, not `0.09999999999999998`.
struct Trimmed(f64);

impl fmt::Display for Trimmed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = alloc::format!("{:.9}", self.0);
        let s = s.trim_end_matches('0').trim_end_matches('.');
        f.write_str(s)
    }
}

impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

/// Syntax or range error in a set expression, located by byte offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Unexpected { found: String, expected: Vec<&'static str> },
    AtomOutOfRange { atom: u64, n: u8 },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Unexpected { found, expected } => {
                write!(f, "syntax error at offset {}: found {found}, expected ", self.offset)?;
                for (i, e) in expected.iter().enumerate() {
                    if i > 0 {
                        f.write_str(if i + 1 == expected.len() { " or " } else { ", " })?;
                    }
                    f.write_str(e)?;
                }
                Ok(())
            }
            ParseErrorKind::AtomOutOfRange { atom, n } => {
                write!(f, "atom t{atom} out of range at offset {} (frame has atoms t1..t{n})", self.offset)
            }
        }
    }
}

impl core::error::Error for ParseError {}
