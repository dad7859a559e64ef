//! Exact computation of divisorial invariants on blow-up towers over affine
//! space, in characteristic p and over `Q`, together with the machinery that
//! lifts towers and ideals from `F_p` to `Q` and checks that discrepancies,
//! valuations and log discrepancies transfer.

pub mod bridge;
pub mod error;
pub mod gb;
pub mod invariants;
pub mod jets;
pub mod polyring;
pub mod tower;

pub use error::{Error, ErrorKind, Result};
