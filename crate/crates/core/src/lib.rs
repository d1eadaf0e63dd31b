//! Construction and verification of dyadic wavelet systems of L²(ℝ).
//!
//! The crate represents generators as compactly supported piecewise
//! polynomials with exact arithmetic, and verifies frame and tight-frame
//! properties along two independent routes:
//!
//! * the dilation-domain spectral route — fiber matrices S(ω) of the frame
//!   operator in the dilation representation, with the change-of-basis
//!   α tensor and tight-frame residuals;
//! * the classical mask route — bracket products, refinement/wavelet masks
//!   and the unitary/oblique extension principle identities.
//!
//! A desk-scale frame engine (exact analysis/synthesis over truncated
//! systems) provides frame-bound estimates, perfect-reconstruction checks
//! and quasi-affine comparisons that tie the two routes together.

pub mod algebra;
pub mod error;

pub mod dilation;
pub mod extension;
pub mod fiber;
pub mod frame_engine;
pub mod grid;
pub mod shift_invariant;
pub mod signals;

mod linalg;

pub use error::{Error, Result};
