//! Exact computations for the K-moduli wall-crossing of degree-8 del Pezzo
//! pairs: arithmetic kernel, surface models with Zariski decomposition,
//! volume and S-functions, boundary curves, beta-invariants and walls, and
//! parameter transforms.

pub mod exactnum;
pub mod hkl;
pub mod pairs;
pub mod stability;
pub mod surface;
pub mod volume;

pub use exactnum::{Breakpoint, PiecewiseQuadratic, QuadraticPoly, Rational, SurdSum};
