//! Error type shared by the pipeline layers.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    /// Loop coefficient outside the supported degree window.
    #[error("loop degree {degree} exceeds the cap |d| <= {cap}")]
    DegreeOverflow { degree: i32, cap: i32 },

    /// `loop_inv_unipotent` applied to a loop that is not I + nilpotent.
    #[error("loop is not unipotent: {0}")]
    NotUnipotent(String),

    /// Evaluation requested too close to a pole of the potential.
    #[error("z = {z} is within {eps:e} of a pole of the potential")]
    PoleOfPotential { z: num_complex::Complex64, eps: f64 },

    /// A simple pole with nonzero residue has no rational antiderivative.
    #[error("entry h{row}{col} has no rational antiderivative (nonzero residue)")]
    NonintegrableResidue { row: usize, col: usize },

    /// The loop factorization left the big cell (singular d or pivot failure).
    #[error("outside the big cell at z = {z}: {reason}")]
    OutsideBigCell { z: num_complex::Complex64, reason: String },

    /// Both pattern columns of B1 vanish; the surface point is undetermined.
    #[error("B1 degenerate at this point: both pattern columns vanish")]
    DegenerateB1,

    /// The assembled lift is numerically zero.
    #[error("canonical lift is numerically null (max |Y_i| = {norm:e})")]
    NullOutput { norm: f64 },

    /// Projection to the sphere would divide by a vanishing first component.
    #[error("cannot project: |Y_0| = {y0:e} below threshold")]
    ProjectionDividesByZero { y0: f64 },

    /// A finite-difference stencil point failed to evaluate.
    #[error("FD stencil crosses a singular locus near z = {z}: {reason}")]
    StencilCrossesBigCellBoundary { z: num_complex::Complex64, reason: String },

    /// Input matrix does not match the required sparsity pattern.
    #[error("matrix violates the required pattern: {0}")]
    PatternViolation(String),

    /// One-step integrator failed to keep its error estimate under control.
    #[error("holomorphic frame integration diverged: {0}")]
    IntegrationDivergence(String),

    /// Requested mesh/export format is not supported.
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    /// Potential spec file could not be parsed.
    #[error("spec parse error at line {line}: {msg}")]
    SpecParse { line: usize, msg: String },

    /// Exact-mode operation on a potential that is not polynomial.
    #[error("exact mode requires polynomial potential entries: {0}")]
    NotPolynomial(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
