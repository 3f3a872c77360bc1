//! GF(2) toolkit for the periodic and bounded octaplex codes: cell complex,
//! CSS codeblocks, logical operators, transversal-gate conditions and metachecks.

pub mod binalg;
pub mod cli;
pub mod codes;
pub mod controls;
pub mod export;
pub mod lattice;
pub mod logicals;
pub mod metachecks;
pub mod phasepoly;
pub mod report;
pub mod transversal;

mod error;

pub use error::{Error, Result};
