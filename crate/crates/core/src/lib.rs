//! Numerical laboratory for two-dimensional zero modes of the Dirac-Weyl
//! operator with self-generated magnetic field.
//!
//! The crate builds radial zero modes (the explicit flux-to-spinor map and
//! three closed-form families), evaluates the scalar functionals of
//! (psi, A, B) that control the critical coupling at p = 3/2, verifies the
//! constructions independently on a Cartesian grid by finite differences,
//! and computes the closed-form bounds (Sobolev constants, upper and lower
//! critical couplings, the 3D critical charge) together with a family of
//! uncertainty-principle inequalities.

pub mod bounds;
pub mod error;
pub mod functionals;
pub mod inequalities;
pub mod modes;
pub mod optimize;
pub mod planar;
pub mod radial;

pub use error::{Error, Result};
pub use radial::{Dim, RadialGrid, RadialProfile};
