use std::fmt;

/// Errors surfaced by group, cube-space, and transform operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An element does not belong to the group it was used with.
    ElementMismatch { expected: String, got: String },
    /// Two objects that must share a group spec do not.
    SpecMismatch { left: String, right: String },
    /// Two cube-shaped objects have different dimensions.
    DimensionMismatch { left: usize, right: usize },
    /// A coordinate axis is outside `0..d`.
    AxisOutOfRange { axis: usize, d: usize },
    /// A degree outside the range the operation supports.
    InvalidDegree { degree: i64 },
    /// A corner assignment does not cover exactly the required vertices.
    BadCorner { reason: String },
    /// An enumeration would exceed the configured point limit.
    EnumerationLimit { required: u128, limit: u64 },
    /// A cube point fails the membership test required by an operation.
    NotAMember { d: usize, degree: i64 },
    /// A value that must be real and non-negative is materially complex or negative.
    NotRealNonNegative { re: f64, im: f64 },
    /// A lattice operation needs unit pivots in the Smith normal form.
    NonUnitPivots { pivots: Vec<String> },
    /// An explicit element list is not a subgroup.
    NotASubgroup { reason: String },
    /// Generic shape/arity mismatch in user-supplied data.
    BadInput { reason: String },
    /// Text that could not be parsed (group specs, polynomials, files).
    Parse { what: String, input: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ElementMismatch { expected, got } => {
                write!(f, "element {got} does not belong to group {expected}")
            }
            Error::SpecMismatch { left, right } => {
                write!(f, "group specs differ: {left} vs {right}")
            }
            Error::DimensionMismatch { left, right } => {
                write!(f, "cube dimensions differ: {left} vs {right}")
            }
            Error::AxisOutOfRange { axis, d } => {
                write!(f, "axis {axis} out of range for dimension {d}")
            }
            Error::InvalidDegree { degree } => {
                write!(f, "degree {degree} is outside the range this operation supports")
            }
            Error::BadCorner { reason } => write!(f, "bad corner assignment: {reason}"),
            Error::EnumerationLimit { required, limit } => {
                write!(f, "enumeration needs {required} points, limit is {limit}")
            }
            Error::NotAMember { d, degree } => {
                write!(f, "cube point is not in the degree-{degree} space of dimension {d}")
            }
            Error::NotRealNonNegative { re, im } => {
                write!(f, "value {re}+{im}i is not real non-negative within tolerance")
            }
            Error::NonUnitPivots { pivots } => {
                write!(f, "lattice pivots {pivots:?} are not all units")
            }
            Error::NotASubgroup { reason } => write!(f, "not a subgroup: {reason}"),
            Error::BadInput { reason } => write!(f, "bad input: {reason}"),
            Error::Parse { what, input } => write!(f, "cannot parse {what} from {input:?}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
