//! Root data, Dyck-path polytopes and lattice-point tools for PBW-type bases
//! of types B_n and G2.

pub mod dyck_paths;
pub mod enumeration;
pub mod checks;
pub(crate) mod decimal;
pub mod error;
pub mod minkowski;
pub mod oracles;
pub mod par;
pub mod polytopes;
pub mod root_system;

pub use error::{Error, Result};
