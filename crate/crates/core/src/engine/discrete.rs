use crate::error::{Error, Result};
use crate::fees::{split_factor, FeeRule, SplitMode};
use crate::pool::{PoolState, SolveMethod, TradeOutcome, TradeSpec};

/// Executes `spec.n_splits()` equal sub-swaps with fee reinvestment.
///
/// Per sub-swap of size `d` on reserves `(x, y)` with `k = x·y`:
///
/// ```text
/// alpha            = combined_factor(x, y)
/// (gamma1, gamma2) = split_factor(alpha, split)
/// raw              solves (x + gamma1·d)(y - raw) = k
/// trader receives  gamma2·raw
/// x <- x + d,  y <- y - gamma2·raw
/// ```
///
/// The full input and the output-side fee `(1 - gamma2)·raw` stay in the pool.
pub fn swap_discrete<F>(
    pool: &PoolState,
    fee: &F,
    spec: TradeSpec,
    split: SplitMode,
) -> Result<TradeOutcome>
where
    F: FeeRule + ?Sized,
{
    if spec.dx() == 0.0 {
        return Ok(TradeOutcome::identity(pool));
    }
    let d = spec.sub_trade();
    let (mut x, mut y) = (pool.x(), pool.y());
    let mut received = 0.0;
    for _ in 0..spec.n_splits() {
        let alpha = fee.combined_factor(x, y)?;
        let gammas = split_factor(alpha, split)?;
        let effective_in = gammas.gamma1 * d;
        let raw = y * effective_in / (x + effective_in);
        let paid = gammas.gamma2 * raw;
        let y_next = y - paid;
        if !(y_next > 0.0) {
            return Err(Error::Range {
                what: "reserve y after sub-swap",
                value: y_next,
            });
        }
        x += d;
        y = y_next;
        received += paid;
    }
    TradeOutcome::from_final(
        pool,
        spec.dx(),
        x,
        y,
        x * y,
        received,
        SolveMethod::Discrete,
        spec.n_splits(),
    )
}
