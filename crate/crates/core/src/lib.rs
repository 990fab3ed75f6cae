//! Energy bounds for N identical massless bosons with oscillator pair
//! interactions,
//!
//! ```text
//! H = Σᵢ |pᵢ| + Σ_{i<j} γ |rᵢ − rⱼ|²,
//! ```
//!
//! together with the machinery used to check them independently: Jacobi
//! coordinates, the Gaussian variational bound, the Airy zero behind the
//! lower-bound coefficient and a spectral solver for the reduced one-body
//! problem.

pub mod airy;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod jacobi;
pub mod model;
pub mod spectral;
pub mod variational;

pub use error::{Error, Result};
