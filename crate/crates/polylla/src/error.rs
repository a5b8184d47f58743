use thiserror::Error;

/// Errors surfaced by parsing, construction and the meshing pipeline.
#[derive(Debug, Error)]
pub enum PolyllaError {
    /// Malformed input text (Triangle `.node`/`.ele`/`.neigh` files).
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Connectivity that cannot describe a manifold triangulation.
    #[error("topology error: {0}")]
    Topology(String),

    /// Degenerate or inconsistent geometry (zero-area triangles, collinear
    /// point sets, duplicate points).
    #[error("geometry error: {0}")]
    Geometry(String),

    /// A violated internal invariant (Lemma visit bounds, walks that do not
    /// terminate). Indicates corrupt labels or a bug, never bad user input.
    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl PolyllaError {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        PolyllaError::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, PolyllaError>;
