use alloc::string::String;
use core::fmt;

use crate::mask::SubsetMask;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The declared order closes to a relation with `a <= b <= a`, `a != b`.
    Cycle {
        a: usize,
        b: usize,
    },
    /// Relation is not reflexive or not transitive.
    NotAnOrder(String),
    /// The specialisation preorder of a topology identifies two points.
    NotT0 {
        a: usize,
        b: usize,
    },
    /// Some enumeration would exceed its configured cap.
    SizeOverflow {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    /// A selection rule rejected a singleton or accepted the empty set.
    MinimalityViolation {
        selection: String,
        subset: SubsetMask,
    },
    UnknownSelection(String),
    /// A family, topology or net was paired with a poset of another size.
    CarrierMismatch {
        expected: usize,
        found: usize,
    },
    ElementOutOfRange {
        elem: usize,
        n: usize,
    },
    InvalidTopology(String),
    InvalidIndex(String),
    /// A subnet map fails the cofinality contract at index `index` of the parent.
    CofinalityViolation {
        index: usize,
    },
    Precondition(String),
    DegenerateIndex,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Cycle { a, b } => {
                write!(f, "order is not antisymmetric: {a} and {b} lie below each other")
            }
            Error::NotAnOrder(msg) => write!(f, "not a partial order: {msg}"),
            Error::NotT0 { a, b } => {
                write!(f, "topology is not T0: points {a} and {b} have the same neighbourhoods")
            }
            Error::SizeOverflow { what, size, cap } => {
                write!(f, "{what}: size {size} exceeds cap {cap}")
            }
            Error::MinimalityViolation { selection, subset } => {
                write!(f, "selection {selection} violates minimality at subset {subset:?}")
            }
            Error::UnknownSelection(name) => write!(f, "unknown selection `{name}`"),
            Error::CarrierMismatch { expected, found } => {
                write!(f, "carrier size mismatch: expected {expected}, found {found}")
            }
            Error::ElementOutOfRange { elem, n } => {
                write!(f, "element {elem} out of range for carrier of size {n}")
            }
            Error::InvalidTopology(msg) => write!(f, "invalid topology: {msg}"),
            Error::InvalidIndex(msg) => write!(f, "invalid index set: {msg}"),
            Error::CofinalityViolation { index } => {
                write!(f, "subnet map is not cofinal: no tail of the subnet stays above index {index}")
            }
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::DegenerateIndex => f.write_str("index set is empty"),
        }
    }
}

impl core::error::Error for Error {}
