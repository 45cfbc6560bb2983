//! Pure-state toolkit for k-weighted single-excitation (W-type) resource
//! states: deterministic teleportation, Bell-measurement entanglement
//! concentration, superdense coding, and 3-vs-4-qubit resource comparison,
//! all backed by an exact dense state-vector engine.

pub mod error;
pub mod statevec;
pub mod states;
pub mod entanglement;
pub mod teleport;

pub use error::{Error, Result};
pub use statevec::{C64, Gate2, PureState};
