//! Exact q-wedge Fock spaces built from level-k perfect crystals.
//!
//! Coefficients live in Q(q) ([`coeff`]); [`crystal`] holds the affine
//! Cartan data and perfect crystals; [`wedge`] straightens finite q-wedges;
//! [`fock`] realizes the algebra and boson actions on semi-infinite wedges.

pub mod coeff;
pub mod crystal;
pub mod dtwo;
pub mod error;
pub mod fock;
pub mod io;
pub mod lincomb;
pub mod linalg;
pub mod twopoint;
pub mod verify;
pub mod young;
pub mod wedge;

pub use error::{Error, Result};
