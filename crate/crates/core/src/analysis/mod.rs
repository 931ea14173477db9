//! Experiment harnesses: impermanent loss, splitting error, relative
//! effective price, fee-field grids and the zero-IL fee family.

mod experiments;
mod field;
mod table;
mod zero_il;

pub use experiments::{il_curve, price_curve, relative_effective_price, splitting_error};
pub use field::fee_field_grid;
pub use table::SeriesTable;
pub use zero_il::{
    required_zero_il_phi, universal_fee_conflict, zero_il_crossover, zero_il_fee_curve,
    ConflictWitness,
};

use crate::pool::{PoolState, TradeOutcome};

/// Liquidity-provider position versus holding, valued at the post-trade
/// marginal price.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IlReport {
    /// Post-trade marginal price `y_f/x_f` used for valuation.
    pub price: f64,
    pub v_hold: f64,
    pub v_pool: f64,
    pub il_abs: f64,
    pub il_rel: f64,
}

/// Absolute and relative impermanent loss of a trade.
///
/// With `p = y_f/x_f`: `v_hold = p·x0 + y0`, `v_pool = p·x_f + y_f`,
/// `il_abs = v_pool - v_hold`.
pub fn impermanent_loss(pool0: &PoolState, outcome: &TradeOutcome) -> IlReport {
    let price = outcome.y_f / outcome.x_f;
    let v_hold = price * pool0.x() + pool0.y();
    let v_pool = price * outcome.x_f + outcome.y_f;
    let il_abs = v_pool - v_hold;
    IlReport {
        price,
        v_hold,
        v_pool,
        il_abs,
        il_rel: il_abs / v_hold,
    }
}
