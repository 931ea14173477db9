//! Numerical kernels with no domain knowledge: adaptive Gauss–Kronrod
//! quadrature, Brent's bracketed root finder and fixed-step RK4.
//!
//! Every kernel comes in two flavours: a plain one taking an infallible
//! closure, and a `try_` one whose closure returns `Result<f64, E>` with
//! `E: From<NumericsError>`, so that domain errors raised inside the
//! callback surface unchanged.

mod quadrature;
mod rk4;
mod root;

pub use quadrature::{integrate, try_integrate, Quadrature, QuadratureResult};
pub use rk4::{rk4_integrate, try_rk4_integrate, try_rk4_integrate_observed};
pub use root::{find_root, try_find_root, RootFinder, RootResult};

/// Default relative tolerance for quadrature and root finding.
pub const DEFAULT_REL_TOL: f64 = 1e-10;
