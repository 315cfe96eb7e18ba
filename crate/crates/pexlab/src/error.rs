use thiserror::Error;

/// Errors shared across the laboratory.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A circle map whose lift fails `min g' > 0`.
    #[error("not an orientation-preserving diffeomorphism: min g' = {min_slope}")]
    NotDiffeo { min_slope: f64 },

    /// An expanding lift with `min E' <= 1`.
    #[error("map is not expanding: min E' = {min_slope}")]
    NotExpanding { min_slope: f64 },

    /// A realized perturbation dropped below the expansion floor λ.
    #[error("expansion lost at ε = {epsilon}: min E' = {min_slope} < λ = {floor}")]
    ExpansionLost {
        epsilon: f64,
        min_slope: f64,
        floor: f64,
    },

    /// A cocycle operation stepped outside the sampled noise window.
    #[error("noise window exhausted: index {index} outside [{lo}, {hi}]")]
    WindowExhausted { index: i64, lo: i64, hi: i64 },

    /// Branch inversion failed to reach tolerance within the iteration cap.
    #[error("branch inversion did not converge (residual {residual} after {iters} iterations)")]
    InversionDiverged { residual: f64, iters: usize },

    /// Quadrature grid too coarse for the requested mode/frequency content.
    #[error("aliasing risk: quadrature needs ≥ {needed} points, grid has {have}")]
    AliasingRisk { needed: usize, have: usize },

    /// Trajectory-tree enumeration beyond the configured depth cap.
    #[error("branch budget exceeded: n = {n} > cap {cap}")]
    BranchBudgetExceeded { n: usize, cap: usize },

    /// Pullback failed to reach the requested residual.
    #[error("invariant-density residual {achieved} exceeds tolerance {tol} after {steps} steps")]
    ResidualTooLarge { achieved: f64, tol: f64, steps: usize },

    /// Correlation series too close to the floor to fit.
    #[error("degenerate series: {floored} of {total} values at the floor")]
    DegenerateSeries { floored: usize, total: usize },

    /// Transversality reduction requires a linear expanding part.
    #[error("expanding part is not linear (sup |g(x)-x| = {deviation})")]
    NotLinear { deviation: f64 },

    /// Eigenvalue iteration failed; surfaced as a value, not a panic.
    #[error("eigen-solver failed to converge at dimension {dim}")]
    EigenFailure { dim: usize },

    /// Mismatched configuration (dimensions, ranges, parameters).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
