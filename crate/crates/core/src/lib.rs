//! Ternary (qutrit) stabilizer codes.
//!
//! The crate covers generalized Pauli algebra ([`gpauli`]), exact dense
//! simulation ([`statevec`]), the 7-qutrit degenerate CSS code and the
//! ternary Steane code with their decoders ([`code`]), exhaustive verification
//! sweeps ([`oracle`]), bit-stabilizer generation for a chosen qutrit pair
//! ([`stabgen`]) and syndrome-extraction circuit costing ([`circuit`]).

pub mod circuit;
pub mod code;
pub mod error;
pub mod exec;
pub mod gpauli;
pub mod oracle;
pub mod stabgen;
pub mod statevec;
pub mod tables;

pub use code::{build_proposed_code, build_steane_ternary, Code, Syndrome};
pub use error::{QecError, Result};
pub use exec::Exec;
pub use gpauli::{op_from_name, PauliWord, PhaseExp, QutritOp};
pub use statevec::{equal_up_to_global_phase, Chrestenson, StateVec};
