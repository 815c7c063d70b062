//! Hasse norm principle for p-power degree extensions: permutation groups,
//! the group families involved, exact linear algebra over Z/n and Z, and
//! the cohomology needed to decide the principle from decomposition data.

pub mod cohom;
pub mod error;
pub mod glattice;
pub mod groupzoo;
pub mod io;
pub mod knot;
pub mod permgroup;
pub mod verify;
pub mod zlin;
pub mod zmodlin;

pub use error::{KnotError, Result};
