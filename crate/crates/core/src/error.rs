use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which edge of the rectangle a boundary function lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    /// `x = 0`
    Left,
    /// `x = l`
    Right,
    /// `y = 0`
    Bottom,
    /// `y = h`
    Top,
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Edge::Left => "left (x = 0)",
            Edge::Right => "right (x = l)",
            Edge::Bottom => "bottom (y = 0)",
            Edge::Top => "top (y = h)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid material: {0}")]
    Material(String),

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("singular ratio: denominator argument must be positive, got {0}")]
    SingularRatio(f64),

    #[error("non-finite value {value} while evaluating {what}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("quadrature produced a non-finite coefficient on the {edge} edge (mode {mode})")]
    Quadrature { edge: Edge, mode: usize },

    #[error("mode {n} (beta = {beta}) is degenerate: {reason}")]
    ModeDegeneracy { n: usize, beta: f64, reason: String },

    #[error("boundary compatibility: {0}")]
    BoundaryCompatibility(String),

    #[error("invalid profile: {0}")]
    Profile(String),

    #[error("linear solver failed: residual {residual:e} above tolerance {tolerance:e}")]
    Solver { residual: f64, tolerance: f64 },

    #[error("path A and path B disagree by {diff:e} at mode {n}")]
    PathDivergence { n: usize, diff: f64 },

    #[error("closed-form calibration failed: residual {0:e}")]
    Calibration(f64),

    #[error("mode {n}: {source}")]
    InMode {
        n: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn in_mode(self, n: usize) -> Error {
        Error::InMode {
            n,
            source: Box::new(self),
        }
    }
}
