//! Pool state, trade specifications and trade outcomes.

use crate::error::{non_negative, positive, Error, Result};

/// Reserves of a two-token constant-product pool.
///
/// `x` is the reserve of token A (the token traders pay in), `y` the
/// reserve of token B. Both are strictly positive and finite, and so is
/// their product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoolState {
    x: f64,
    y: f64,
}

impl PoolState {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        let x = positive("reserve x", x)?;
        let y = positive("reserve y", y)?;
        positive("invariant x*y", x * y)?;
        Ok(Self { x, y })
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.x
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.y
    }

    /// The constant-product invariant `k = x·y`.
    #[inline]
    pub fn invariant(&self) -> f64 {
        self.x * self.y
    }

    /// Marginal price `y/x` of token A in units of token B.
    #[inline]
    pub fn marginal_price(&self) -> f64 {
        self.y / self.x
    }
}

/// Total input of token A and the number of equal sub-trades it is split into.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeSpec {
    dx: f64,
    n_splits: usize,
}

impl TradeSpec {
    pub fn new(dx: f64, n_splits: usize) -> Result<Self> {
        let dx = non_negative("trade size dx", dx)?;
        if n_splits == 0 {
            return Err(Error::Invalid {
                what: "split count",
                value: 0.0,
            });
        }
        Ok(Self { dx, n_splits })
    }

    /// A single atomic trade of size `dx`.
    pub fn atomic(dx: f64) -> Result<Self> {
        Self::new(dx, 1)
    }

    #[inline]
    pub fn dx(&self) -> f64 {
        self.dx
    }

    #[inline]
    pub fn n_splits(&self) -> usize {
        self.n_splits
    }

    #[inline]
    pub fn sub_trade(&self) -> f64 {
        self.dx / self.n_splits as f64
    }

    /// Relative trade size `dx / x` against the starting pool.
    pub fn relative_size(&self, pool: &PoolState) -> f64 {
        self.dx / pool.x()
    }
}

/// How the final invariant of a trade was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    /// Zero-size trade, pool returned unchanged.
    Identity,
    /// Closed-form exchange potential.
    Analytic,
    /// Quadrature of the exchange potential plus bracketed root finding.
    Quadrature,
    /// Sequential discrete sub-swaps.
    Discrete,
}

/// Result of one (possibly fragmented) swap of token A for token B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeOutcome {
    pub x_f: f64,
    pub y_f: f64,
    pub k_f: f64,
    /// Tokens B delivered to the trader.
    pub dy_out: f64,
    pub p_marginal_f: f64,
    /// `dy_out / dx`, or 0 for a zero-size trade.
    pub p_effective: f64,
    pub method: SolveMethod,
    /// Number of sub-swaps (discrete) or solver calls (continuous) used.
    pub sub_swaps: usize,
}

impl TradeOutcome {
    /// The outcome of a zero-size trade: the pool is returned unchanged.
    pub fn identity(pool: &PoolState) -> Self {
        Self {
            x_f: pool.x(),
            y_f: pool.y(),
            k_f: pool.invariant(),
            dy_out: 0.0,
            p_marginal_f: pool.marginal_price(),
            p_effective: 0.0,
            method: SolveMethod::Identity,
            sub_swaps: 0,
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_final(
        pool0: &PoolState,
        dx: f64,
        x_f: f64,
        y_f: f64,
        k_f: f64,
        dy_out: f64,
        method: SolveMethod,
        sub_swaps: usize,
    ) -> Result<Self> {
        if !(y_f > 0.0 && y_f.is_finite()) {
            return Err(Error::Range {
                what: "final reserve y",
                value: y_f,
            });
        }
        if !(dy_out < pool0.y()) {
            return Err(Error::Range {
                what: "output amount",
                value: dy_out,
            });
        }
        Ok(Self {
            x_f,
            y_f,
            k_f,
            dy_out,
            p_marginal_f: y_f / x_f,
            p_effective: if dx > 0.0 { dy_out / dx } else { 0.0 },
            method,
            sub_swaps,
        })
    }

    /// The final reserves as a pool.
    pub fn pool(&self) -> Result<PoolState> {
        PoolState::new(self.x_f, self.y_f)
    }
}
