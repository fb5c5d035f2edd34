//! The principal pair `(p, q)`, the slit maps built from it, and the static
//! diagnostics: slit data, the function `F`, the logarithmic area and the
//! convexity of the boundary images under `log H`.

mod diagnostics;
mod maps;
mod pair;
mod slits;

pub use diagnostics::{convexity_check, e_log_area, ConvexityReport};
pub use maps::{
    build_h, build_slit_map, eval_f, eval_f_boundary, eval_f_points, BoundaryMapTrace, ConformalSlitMap, SlitKind,
};
pub use pair::{compute_principal_pair, principal_pair_on, PrincipalPair, TOO_CLOSE_SPACINGS};
pub use slits::{extract_slit_data, interleaved, slit_data, CircularSlit, RadialSlit, SlitData, ENDPOINT_TOL};
