//! Principal functions, slit maps and harmonic spans on finitely connected
//! planar domains with analytic boundaries.
//!
//! Fields are computed with spectrally accurate Nyström discretizations of
//! boundary integral equations. On top of that sit the L₁/L₀ principal pair,
//! the circular and radial slit maps, the harmonic span, and a variation
//! engine for parametric families of domains.

pub mod bie;
pub mod domain;
pub mod error;
pub mod fourier;
pub mod oracles;
pub mod principal;
pub mod span;
pub mod variation;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
