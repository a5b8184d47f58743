//! Polygonal mesh generation from 2D triangulations via terminal-edge regions.
//!
//! The pipeline takes any valid triangulation (loaded from Triangle-format
//! files or produced by the built-in Delaunay generator) and converts it into
//! a mesh of simple polygons in three phases:
//!
//! 1. **Label** ([`labeling`]): mark each triangle's longest edge and classify
//!    every edge as frontier, internal, terminal or boundary-terminal; collect
//!    one seed triangle per terminal-edge region.
//! 2. **Traversal** ([`traversal`]): walk the boundary of each region from its
//!    seed and emit a closed ccw polyline, which may be non-simple when the
//!    region contains barrier edges.
//! 3. **Repair** ([`repair`]): split non-simple polylines into simple polygons
//!    by promoting one internal edge per barrier-edge tip to frontier status.
//!
//! The result is assembled into a [`polymesh::PolyMesh`] that can be verified,
//! measured ([`polymesh::MeshStats`]) and exported ([`export`]).
//!
//! All geometry is generic over the coordinate scalar through [`scalar::Scalar`]
//! (`f32` or `f64`); the aliases at the crate root fix `f64`, which is what the
//! CLI uses.

pub mod error;
pub mod export;
pub mod generator;
pub mod labeling;
pub mod pipeline;
pub mod polymesh;
pub mod predicates;
pub mod repair;
pub mod scalar;
pub mod traversal;
pub mod triangle_io;
pub mod triangulation;

mod delaunay;

pub use error::PolyllaError;
pub use scalar::Scalar;
pub use triangulation::{EdgeKey, BOUNDARY};

/// `f64` triangulation, the default for the CLI and file ingestion.
pub type Triangulation = triangulation::Triangulation<f64>;
/// `f32` triangulation for memory-constrained inputs.
pub type TriangulationF32 = triangulation::Triangulation<f32>;
/// `f64` polygon mesh.
pub type PolyMesh = polymesh::PolyMesh<f64>;
/// `f64` mesh statistics.
pub type MeshStats = polymesh::MeshStats<f64>;
/// `f64` point-set specification for the random generator.
pub type PointSetSpec = generator::PointSetSpec<f64>;
