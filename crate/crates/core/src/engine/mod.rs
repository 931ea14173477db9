//! Swap engines.
//!
//! The continuous engine treats a trade as the limit of infinitely many
//! infinitesimal sub-swaps. Parameterised by cumulative input `s`:
//!
//! ```text
//! dx/ds = 1
//! dy/ds = -(1 - Phi(k))·y/x
//! dk/ds =  Phi(k)·k/x
//! ```
//!
//! which separates into the exchange potential
//! `G(k_f) - G(k0) = ln(1 + dx/x0)` with `G(k) = ∫ dk / (Phi(k)·k)`.
//! [`swap_continuous`] solves that equation (closed form where one exists,
//! otherwise quadrature plus root finding) and [`ode_trajectory`] integrates
//! the system directly with RK4 as an independent check.
//!
//! The discrete engine, [`swap_discrete`], applies the fee-adjusted
//! constant-product update once per sub-swap and reinvests the fees.

mod continuous;
mod discrete;
mod trajectory;

pub use continuous::{
    final_invariant, solve_by_quadrature, swap_continuous, swap_continuous_fragments,
    swap_continuous_with,
};
pub use discrete::swap_discrete;
pub use trajectory::{continuous_trajectory, ode_trajectory, Trajectory, TrajectoryPoint};

use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::fees::{FeeRule, SplitMode};
use crate::numerics::DEFAULT_REL_TOL;
use crate::pool::{PoolState, TradeOutcome, TradeSpec};

/// Tolerances for the quadrature + root-finding path of the continuous
/// engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub quadrature: f64,
    pub root: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            quadrature: DEFAULT_REL_TOL,
            root: DEFAULT_REL_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineMode {
    Continuous,
    Discrete,
}

impl EngineMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            EngineMode::Continuous => "continuous",
            EngineMode::Discrete => "discrete",
        }
    }
}

impl fmt::Display for EngineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EngineMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "continuous" => Ok(EngineMode::Continuous),
            "discrete" => Ok(EngineMode::Discrete),
            _ => Err(Error::Invalid {
                what: "engine mode",
                value: f64::NAN,
            }),
        }
    }
}

/// A fee rule bound to an engine.
///
/// In continuous mode a split trade is executed as consecutive calls of the
/// continuous solver on equal fragments; in discrete mode as consecutive
/// discrete sub-swaps. The split mode only affects the discrete engine.
#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig<F> {
    mode: EngineMode,
    fee: F,
    split: SplitMode,
    tolerances: Tolerances,
}

impl<F: FeeRule> EngineConfig<F> {
    pub fn new(mode: EngineMode, fee: F, split: SplitMode) -> Result<Self> {
        if mode == EngineMode::Continuous && !fee.is_path_independent() {
            return Err(Error::PathDependentRule);
        }
        Ok(Self {
            mode,
            fee,
            split,
            tolerances: Tolerances::default(),
        })
    }

    pub fn continuous(fee: F) -> Result<Self> {
        Self::new(EngineMode::Continuous, fee, SplitMode::default())
    }

    pub fn discrete(fee: F, split: SplitMode) -> Self {
        Self {
            mode: EngineMode::Discrete,
            fee,
            split,
            tolerances: Tolerances::default(),
        }
    }

    pub fn with_tolerances(mut self, tolerances: Tolerances) -> Self {
        self.tolerances = tolerances;
        self
    }

    pub fn mode(&self) -> EngineMode {
        self.mode
    }

    pub fn fee(&self) -> &F {
        &self.fee
    }

    pub fn split(&self) -> SplitMode {
        self.split
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tolerances
    }

    pub fn swap(&self, pool: &PoolState, spec: TradeSpec) -> Result<TradeOutcome> {
        match self.mode {
            EngineMode::Discrete => swap_discrete(pool, &self.fee, spec, self.split),
            EngineMode::Continuous => {
                let fee = self
                    .fee
                    .path_independent()
                    .ok_or(Error::PathDependentRule)?;
                let fragment = spec.sub_trade();
                continuous::swap_equal_fragments(
                    pool,
                    fee,
                    fragment,
                    spec.n_splits(),
                    &self.tolerances,
                )
            }
        }
    }

    /// Single atomic trade of size `dx`.
    pub fn swap_atomic(&self, pool: &PoolState, dx: f64) -> Result<TradeOutcome> {
        self.swap(pool, TradeSpec::atomic(dx)?)
    }
}
