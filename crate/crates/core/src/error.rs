use thiserror::Error;

use crate::circuit::Gate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("a circuit needs at least one wire")]
    NoWires,
    #[error("wire {wire} is out of range for a {wire_count}-wire circuit")]
    WireOutOfRange { wire: usize, wire_count: usize },
    #[error("two gates in one moment share wire {wire}")]
    Overlap { wire: usize },
    #[error("empty moments are not allowed")]
    EmptyMoment,
    #[error("gate `{0}` repeats an operand")]
    DuplicateOperand(Gate),
    #[error("role {0} is assigned more than once")]
    DuplicateRole(String),
    #[error("wire {wire} already carries role {role}")]
    WireAlreadyAssigned { wire: usize, role: String },
    #[error("invalid wire label {0:?}")]
    InvalidLabel(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("width n={n} is not supported: {reason}")]
    UnsupportedWidth { n: usize, reason: &'static str },
    #[error("unsupported combination: {0}")]
    UnsupportedCombination(&'static str),
    #[error("MAJ/UMA wires must be distinct")]
    DuplicateWire,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("the bit-parallel engine cannot apply `{0}`")]
    NonClassicalGate(Gate),
    #[error("batch has {batch} wires but the circuit has {circuit}")]
    WireCountMismatch { batch: usize, circuit: usize },
    #[error("{wires} wires exceeds the state-vector cap of {cap}")]
    TooManyWires { wires: usize, cap: usize },
    #[error("input state has norm {0}, expected 1")]
    UnnormalizedInput(f64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoweringError {
    #[error("`{0}` is not a Toffoli gate")]
    NotAToffoli(Gate),
    #[error("circuit already contains controlled rotations")]
    AlreadyLowered,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("input out of range: {0}")]
    RangeError(String),
    #[error("exhaustive sweep needs 2^{bits} inputs, budget is 2^{budget}")]
    BudgetExceeded { bits: u32, budget: u32 },
    #[error("at least one sample is required")]
    NoSamples,
    #[error("circuit does not carry role {0}")]
    MissingRole(String),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Sim(#[from] SimErrorEq),
}

/// [`SimError`] without the float payload, so [`OracleError`] can stay `Eq`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct SimErrorEq(pub String);

impl From<SimError> for OracleError {
    fn from(e: SimError) -> Self {
        OracleError::Sim(SimErrorEq(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, reason: impl Into<String>) -> Self {
        ParseError {
            line,
            reason: reason.into(),
        }
    }
}
