use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("truncation must keep at least 2 Fock levels, got {0}")]
    Truncation(usize),

    #[error("parity broken: epsilon = {0} (parity blocks require epsilon = 0)")]
    ParityBroken(f64),

    #[error("requested {k} levels from a block of size {n}")]
    LevelCount { k: usize, n: usize },

    #[error("invalid tolerance {0}")]
    Tolerance(f64),

    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    JacobiNoConvergence { sweeps: usize, off_norm: f64 },

    #[error(
        "truncation budget exceeded: N = {n_max} > cap {cap}, last level change {last_delta:e}"
    )]
    BudgetExceeded {
        n_max: usize,
        cap: usize,
        last_delta: f64,
    },

    #[error("recurrence undefined for g = 0")]
    ZeroCoupling,

    #[error("initial coefficients (alpha_0, beta_0) must not both vanish")]
    ZeroInit,

    #[error("recurrence needs at least {min} steps, got {got}")]
    TooFewSteps { min: usize, got: usize },

    #[error("tail regime violated: omega*M = {lhs} <= |E| + 2|lambda| + 4g = {rhs}")]
    TailRegime { lhs: f64, rhs: f64 },

    #[error("lambda must be nonzero for the Juddian candidate")]
    LambdaZero,

    #[error("Juddian constraint violated: lambda^2 + 4 g^2 - omega^2 = {residual:e}")]
    ConstraintViolated { residual: f64 },
}
