//! Geometry: analytic boundary curves, marked domains, boundary grids.

mod curve;
mod grid;
mod io;
mod marked;

pub use curve::{polygon_self_intersects, Orientation, SmoothCurve};
pub use grid::{sample_boundary, BoundaryGrid, CurveGrid};
pub use io::{parse_domain, CurveFile, DomainFile};
pub use marked::{Location, MarkedDomain};
