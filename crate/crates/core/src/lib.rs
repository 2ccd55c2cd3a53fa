//! Discrete differential geometry of polygonal curves.
//!
//! Curvature schemes, first and second variations of length and enclosed
//! area, Steiner-type parallel curves, the spectral stability of regular
//! polygons, and an area-preserving length descent.

pub mod curvature;
pub mod cli;
pub mod curve;
pub mod error;
pub mod flow;
pub mod io;
pub mod offsets;
pub mod stability;
pub mod variation;

/// Points and vectors in the plane.
pub type Vec2 = nalgebra::Vector2<f64>;

pub use curvature::{edge_curvature, line_element, vertex_curvature, LineElementScheme};
pub use curve::{regular_polygon, DiscreteCurve, RegularPolygonSpec, Sigma};
pub use error::{CurveError, Result};
pub use flow::{run_flow, FlowConfig, FlowTrajectory, FlowVerdict, VolumeCorrection};
pub use offsets::{parallel_curve, OffsetVariant};
pub use variation::{classify_equilibrium, EquilibriumReport};
