//! Exact combinatorics of k-triangulations of convex polygons.

pub mod beam;
pub mod convex;
pub mod dyck;
pub mod error;
pub mod flipgraph;
pub mod ktri;
pub mod structure;
pub mod linalg;
pub mod pseudoline;

pub use convex::{Edge, EdgeClass, KStar};
pub use error::{Error, Limits, Result};
pub use ktri::KTriangulation;
