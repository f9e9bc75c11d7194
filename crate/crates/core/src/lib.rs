//! Logical Clifford gates on stabilizer codes by measurement and correction.
//!
//! An *elementary rewiring* measures three Pauli observables in turn, each
//! time applying a Pauli correction when the outcome is `-1`, and returns the
//! code to itself while inducing a logical Clifford. This crate synthesizes
//! such rewirings from GF(2) linear systems, compiles logical Clifford
//! programs into measurement schedules, and checks the result three ways:
//! stabilizer-tableau simulation, exhaustive outcome branching, and a dense
//! state-vector oracle for small codes.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod action;
pub mod bits;
pub mod code;
pub mod compiler;
pub mod gf2;
pub mod group;
pub mod oracle;
pub mod pauli;
pub mod rewiring;

pub use action::{InducedType, LogicalAction, SqrtAxis, SqrtVariant};
pub use bits::BitVec;
pub use code::{Code, Distance, GaugeChoice, LogicalPair, StabilizerCode, SubsystemCode};
pub use compiler::{compile_program, parse_program, CompileOptions, Gate, GateProgram, GmPolicy, Schedule};
pub use gf2::{AffineSolutionSpace, GF2Matrix};
pub use group::StabilizerGroup;
pub use pauli::{PauliError, PauliOperator};
pub use rewiring::{CommutationTargets, MeasureStep, RewiringError, RewiringPair, TableauState};
