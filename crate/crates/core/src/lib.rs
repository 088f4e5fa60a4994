//! Two-qutrit states under Unruh acceleration and local/global Kraus noise.
//!
//! Pipeline: [`states`] builds the initial family, [`rindler`] accelerates
//! both parties and traces out region II, [`channels`] applies dephasing or
//! amplitude damping, [`measures`] evaluates concurrence, relative entropy of
//! coherence and von Neumann entropy, and [`experiments`] sweeps parameter
//! grids into CSV tables.

pub mod channels;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod measures;
pub mod rindler;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex64;
