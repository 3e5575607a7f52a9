use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter `{name}` = {value} outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: String,
    },

    #[error("Kraus pair is not complete: max |K0†K0 + K1†K1 - I| = {residual:.3e}")]
    Incomplete { residual: f64 },

    #[error("matrix is not unitary: max |U†U - I| = {residual:.3e}")]
    NotUnitary { residual: f64 },

    #[error("state is not normalized: norm² = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("initial entanglement {e0sq} not reachable at rho_ee = {rho_ee}; need rho_ee in [{lower}, {upper}]")]
    InfeasibleInitialState {
        e0sq: f64,
        rho_ee: f64,
        lower: f64,
        upper: f64,
    },

    #[error("derivative w.r.t. E0² requires a W-class pair, but |4det(K0K1) - g²| = {gap:.3e}")]
    GhzClassPair { gap: f64 },

    #[error("E0² = {e0sq} is within {margin:e} of the square-root branch point {branch}")]
    NearBranchPoint { e0sq: f64, branch: f64, margin: f64 },

    #[error("internal consistency check failed: {what} = {value:e}")]
    Consistency { what: &'static str, value: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("block reduced state has rank > 2 (third eigenvalue {eigenvalue:.3e})")]
    RankTooHigh { eigenvalue: f64 },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
