use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate curve: min |z'| = {min:e}, max |z'| = {max:e}")]
    DegenerateCurve { min: f64, max: f64 },
    #[error("curve is self-intersecting")]
    SelfIntersecting,
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("{}", if *distance == 0.0 { "marked points coincide".to_string() } else { format!("marked points too close: |a - b| = {distance:e}") })]
    MarkedPointsTooClose { distance: f64 },
    #[error("linear solve failed (condition estimate {condition:e})")]
    SolveFailure { condition: f64 },
    #[error("incompatible Neumann data: net flux {residual:e}")]
    IncompatibleData { residual: f64 },
    #[error("point {re} + {im}i lies in the near-boundary band")]
    NearBoundary { re: f64, im: f64 },
    #[error("point {re} + {im}i is outside the domain")]
    OutsideDomain { re: f64, im: f64 },
    #[error("degenerate slit on curve {curve}")]
    DegenerateSlit { curve: usize },
    #[error("pole of F at {re} + {im}i")]
    PoleOfF { re: f64, im: f64 },
    #[error("expected {expected} extrema on curve {curve}, found {found}")]
    ExtremaCount { curve: usize, expected: usize, found: usize },
    #[error("domain is not simply connected (connectivity {0})")]
    NotSimplyConnected(usize),
    #[error("boundary not smooth: |phi_z| = {0:e}")]
    BoundaryNotSmooth(f64),
    #[error("finite-difference stencil leaves the parameter disk")]
    StencilOutOfDisk,
    #[error("complex line meets the diagonal band")]
    LineHitsDiagonal,
    #[error("domain {0} is not contained in its successor")]
    NotNested(usize),
    #[error("family inconsistent: |phi| = {0:e} on the sampled boundary")]
    InconsistentFamily(f64),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// True for errors caused by malformed or invalid inputs, as opposed to
    /// numerical failures.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::SolveFailure { .. }
                | Error::DegenerateSlit { .. }
                | Error::PoleOfF { .. }
                | Error::ExtremaCount { .. }
        )
    }
}
