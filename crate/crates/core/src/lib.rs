//! Bacon-Shor [[9,1,3]] code algebra, 2D lattice schedules, Pauli-frame
//! propagation and CNOT extended-rectangle analysis.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, the CLI and
//! the parallel sweep live in the `ftlat` companion crate.

#![no_std]

extern crate alloc;

pub mod code;
pub mod error;
pub mod exrec;
pub mod gf2;
pub mod lattice;
pub mod pauli;
pub mod propagation;
pub mod threshold;

pub use code::{CodeDefinition, LogicalClass, Syndrome};
pub use error::{Error, Result};
pub use pauli::{Pauli, PauliString};
