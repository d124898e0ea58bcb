//! Construction of totally isotropic Willmore surfaces in the 6-sphere by
//! the loop-group method.
//!
//! The pipeline runs: a column-patterned normalized potential is translated
//! into a nilpotent 8x8 picture, integrated to a meromorphic frame, split by
//! an explicit loop factorization into a real-form extended frame and a
//! positive factor, and the frame columns are recombined into a lightcone
//! lift whose projection is the surface. Exact bivariate-polynomial
//! arithmetic backs everything up to the block-diagonal middle term; square
//! roots (and hence floating point) enter only with the triangular factors.

pub mod bridge;
pub mod consts;
pub mod error;
pub mod exact;
pub mod fd;
pub mod frame;
pub mod golden;
pub mod golden_inputs;
pub mod grid;
pub mod iwasawa;
pub mod loops;
pub mod mat;
pub mod pipeline;
pub mod potential;
pub mod ratfn;
pub mod specfile;
pub mod surface;

pub use error::{CoreError, Result};
pub use grid::GridSpec;
pub use iwasawa::MiddleGauge;
pub use loops::LoopMat;
pub use mat::{C64, CMat};
pub use pipeline::{BranchPolicy, Mode, Pipeline, SurfaceSample};
pub use potential::PotentialSpec;
