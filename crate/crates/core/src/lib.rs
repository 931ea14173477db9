//! Constant-product market maker simulation with state-dependent fees.
//!
//! The crate is `no_std` (it needs `alloc` for tables and trajectories) and
//! contains the pure numerical side of the project:
//!
//! - [`pool`]: reserves, trade specifications and trade outcomes.
//! - [`fees`]: fee rules. Rules whose combined factor depends on the
//!   invariant `k = x·y` alone implement [`fees::InvariantFee`] and are path
//!   independent; the price-ratio rule is kept as a path-dependent control.
//! - [`numerics`]: adaptive quadrature, bracketed root finding and
//!   fixed-step RK4, free of any domain knowledge.
//! - [`engine`]: the continuous (integral) swap solver, the discrete
//!   sub-swap engine with fee reinvestment, and the ODE trajectory oracle.
//! - [`analysis`]: impermanent loss, splitting error, relative effective
//!   price, fee-field grids and the zero-IL fee family experiments.
//!
//! All values are `f64`. Every operation is a pure function of its inputs.

#![no_std]
#![deny(missing_debug_implementations)]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod engine;
mod error;
pub mod fees;
mod math;
pub mod numerics;
pub mod pool;

pub use analysis::{impermanent_loss, IlReport, SeriesTable};
pub use engine::{
    ode_trajectory, swap_continuous, swap_discrete, EngineConfig, EngineMode, Tolerances,
    Trajectory,
};
pub use error::{Error, ErrorKind, NumericsError, Result};
pub use fees::{
    ConstantFee, Fee, FeeRule, FeeShape, FeeSplit, InvariantFee, LinearFee, PriceRatioFee,
    SplitMode, ZeroIlFee,
};
pub use pool::{PoolState, TradeOutcome, TradeSpec};
