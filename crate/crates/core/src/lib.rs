//! One-ancilla ripple-carry adders as explicit time-sliced reversible circuits.
//!
//! * [`circuit`]: gates, moments, wire roles and the immutable [`Circuit`] type.
//! * [`builders`]: MAJ/UMA gates and every adder variant.
//! * [`schedule`]: resource reports, validation and greedy rescheduling.
//! * [`sim`]: bit-parallel classical engine and dense state-vector engine.
//! * [`oracle`]: reference arithmetic and exhaustive / sampled verification.
//! * [`lowering`]: Toffoli to controlled-V lowering.
//! * [`text`], [`diagram`], [`table`], [`cli`]: I/O and the command line.

pub mod builders;
pub mod circuit;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod lowering;
pub mod oracle;
pub mod schedule;
pub mod sim;
pub mod table;
pub mod text;

pub use builders::{build, maj_sequence, uma_sequence, Function, Style, UmaStyle, VariantSpec};
pub use circuit::{Circuit, Gate, Moment, WireId, WireRole};
pub use error::{BuildError, CircuitError, LoweringError, OracleError, ParseError, SimError};
pub use lowering::{lower_circuit, lower_toffoli, LoweringResult};
pub use oracle::{
    check_exhaustive, check_random, expected, verify_exhaustive, verify_random, OracleExpectation,
    OracleInput, VerificationReport,
};
pub use schedule::{report, reschedule, validate, CommutationPolicy, ResourceReport};
pub use sim::{run_basis, run_state, BasisBatch, StateVector};
