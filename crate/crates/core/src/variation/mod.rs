//! Parametric families of domains and the variation formulas for the
//! principal constants.

mod expr;
mod family;
mod formulas;
mod jet;
mod scan;

pub use expr::Expr;
pub use family::{DomainFamily, FamilyCurveFile, FamilyFile, SHIPPED};
pub use formulas::{
    dbar_gradient_fd, eval_k1, eval_k2, fd_derivative, fd_multi, first_variation, first_variation_on, levi, min_k2,
    quantity_at, second_variation_on, second_variation_span, tbar_derivatives, FdOrder, FirstVariation, Levi,
    Quantity, SecondVariation, TbarDerivatives, DEFAULT_HT,
};
pub use jet::{Jet, Scalar, Wirtinger};
pub use scan::{
    logcosh_subharmonicity, rigidity_check, sfunction_psh_check, subharmonicity_scan, LogCoshReport, LogCoshRow,
    PshReport, PshRow, RigidityReport, ScanRow, TGrid, VariationReport, K2_TOL, PSH_STRICT_TOL,
};
