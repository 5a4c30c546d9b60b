use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Least-squares matrix without full column rank.
    #[error("matrix is rank deficient (numerical rank {rank} of {cols} columns)")]
    RankDeficient { rank: usize, cols: usize },
    /// An iterative kernel ran out of sweeps.
    #[error("{what} did not converge after {sweeps} sweeps")]
    NoConvergence { what: &'static str, sweeps: usize },
    /// Generalized eigenproblem with a singular or unsupported pencil.
    #[error("singular pencil: {0}")]
    SingularPencil(String),
    /// Arnoldi recurrence produced a vanishing subdiagonal entry.
    #[error("Arnoldi breakdown at step {step}: subdiagonal {value:e} (fewer distinct points than degree + 1?)")]
    Breakdown { step: usize, value: f64 },
    /// Quadrature contour passes too close to a pole.
    #[error("contour passes within {distance:e} of a pole at {pole}; choose a different radius")]
    PoleOnContour { pole: String, distance: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
