use super::{impermanent_loss, SeriesTable};
use crate::engine::EngineConfig;
use crate::error::{positive, Error, Result};
use crate::fees::FeeRule;
use crate::pool::{PoolState, TradeSpec};

fn describe<F: FeeRule>(
    table: SeriesTable,
    pool0: &PoolState,
    config: &EngineConfig<F>,
) -> SeriesTable {
    table
        .with_meta("x0", pool0.x())
        .with_meta("y0", pool0.y())
        .with_meta("engine", config.mode())
        .with_meta("split", config.split())
}

/// Splitting test: `error(N) = |k_f(N) - k_f(1)| / k_f(1)` for each `N`.
///
/// Columns: `n`, `k_f`, `error`.
pub fn splitting_error<F: FeeRule>(
    pool0: &PoolState,
    config: &EngineConfig<F>,
    dx: f64,
    n_values: &[usize],
) -> Result<SeriesTable> {
    let baseline = config.swap(pool0, TradeSpec::atomic(dx)?)?.k_f;
    let mut table = describe(
        SeriesTable::new("split-test", ["n", "k_f", "error"]),
        pool0,
        config,
    )
    .with_meta("dx", dx);
    for &n in n_values {
        let k_f = config.swap(pool0, TradeSpec::new(dx, n)?)?.k_f;
        table.push_row(&[n as f64, k_f, (k_f - baseline).abs() / baseline])?;
    }
    Ok(table)
}

/// Trader's realised rate divided by the fee-free rate for the same trade:
/// `(dy_out/dx) / (dy_nofee/dx)` with `dy_nofee = y0·dx/(x0 + dx)`.
pub fn relative_effective_price<F: FeeRule>(
    pool0: &PoolState,
    config: &EngineConfig<F>,
    dx: f64,
) -> Result<f64> {
    if dx == 0.0 {
        return Err(Error::Domain {
            what: "trade size dx",
            value: dx,
        });
    }
    positive("trade size dx", dx)?;
    let out = config.swap_atomic(pool0, dx)?;
    let dy_nofee = pool0.y() * dx / (pool0.x() + dx);
    Ok(out.dy_out / dy_nofee)
}

fn check_alphas(alphas: &[f64]) -> Result<()> {
    for &a in alphas {
        positive("relative trade size", a)?;
    }
    Ok(())
}

/// Relative effective price over relative trade sizes `alpha = dx/x0`.
///
/// Columns: `alpha`, `dx`, `dy_out`, `dy_nofee`, `p_rel`.
pub fn price_curve<F: FeeRule>(
    pool0: &PoolState,
    config: &EngineConfig<F>,
    alphas: &[f64],
) -> Result<SeriesTable> {
    check_alphas(alphas)?;
    let mut table = describe(
        SeriesTable::new(
            "price-curve",
            ["alpha", "dx", "dy_out", "dy_nofee", "p_rel"],
        ),
        pool0,
        config,
    );
    for &alpha in alphas {
        let dx = alpha * pool0.x();
        let out = config.swap_atomic(pool0, dx)?;
        let dy_nofee = pool0.y() * dx / (pool0.x() + dx);
        table.push_row(&[alpha, dx, out.dy_out, dy_nofee, out.dy_out / dy_nofee])?;
    }
    Ok(table)
}

/// Impermanent loss over relative trade sizes.
///
/// Columns: `alpha`, `dx`, `x_f`, `y_f`, `price`, `v_hold`, `v_pool`,
/// `il_abs`, `il_rel`.
pub fn il_curve<F: FeeRule>(
    pool0: &PoolState,
    config: &EngineConfig<F>,
    alphas: &[f64],
) -> Result<SeriesTable> {
    check_alphas(alphas)?;
    let mut table = describe(
        SeriesTable::new(
            "il-curve",
            [
                "alpha", "dx", "x_f", "y_f", "price", "v_hold", "v_pool", "il_abs", "il_rel",
            ],
        ),
        pool0,
        config,
    );
    for &alpha in alphas {
        let dx = alpha * pool0.x();
        let out = config.swap_atomic(pool0, dx)?;
        let il = impermanent_loss(pool0, &out);
        table.push_row(&[
            alpha, dx, out.x_f, out.y_f, il.price, il.v_hold, il.v_pool, il.il_abs, il.il_rel,
        ])?;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fees::{ConstantFee, LinearFee, SplitMode};

    fn pool() -> PoolState {
        PoolState::new(100.0, 100.0).unwrap()
    }

    #[test]
    fn continuous_splitting_is_exact() {
        let cfg = EngineConfig::continuous(ConstantFee::new(0.003).unwrap()).unwrap();
        let t = splitting_error(&pool(), &cfg, 10.0, &[1, 2, 5, 10, 100]).unwrap();
        for e in t.column("error").unwrap() {
            assert!(e <= 1e-12, "{e}");
        }
        assert_eq!(t.column("n").unwrap(), [1.0, 2.0, 5.0, 10.0, 100.0]);
    }

    #[test]
    fn fee_free_discrete_splitting_is_exact() {
        let cfg = EngineConfig::discrete(ConstantFee::new(0.0).unwrap(), SplitMode::Balanced);
        let t = splitting_error(&pool(), &cfg, 10.0, &[1, 3, 7, 50]).unwrap();
        for e in t.column("error").unwrap() {
            assert!(e <= 1e-14, "{e}");
        }
    }

    #[test]
    fn discrete_splitting_error_magnitude() {
        let cfg = EngineConfig::discrete(ConstantFee::new(0.003).unwrap(), SplitMode::InputOnly);
        let t = splitting_error(&pool(), &cfg, 10.0, &[10]).unwrap();
        let e = t.column("error").unwrap()[0];
        assert!(e > 1e-6 && e < 1e-4, "{e}");
    }

    #[test]
    fn relative_price_examples() {
        let cfg = EngineConfig::discrete(ConstantFee::new(0.0).unwrap(), SplitMode::Balanced);
        assert!((relative_effective_price(&pool(), &cfg, 10.0).unwrap() - 1.0).abs() < 1e-15);

        let v2 = EngineConfig::discrete(ConstantFee::new(0.003).unwrap(), SplitMode::InputOnly);
        let p = relative_effective_price(&pool(), &v2, 10.0).unwrap();
        assert!((p - 9.066109 / 9.090909).abs() < 1e-5);

        assert!(matches!(
            relative_effective_price(&pool(), &v2, 0.0),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn relative_price_decreases_with_fee() {
        let mut prev = f64::INFINITY;
        for phi in [0.0, 0.001, 0.003, 0.01, 0.05, 0.2] {
            let cfg = EngineConfig::continuous(ConstantFee::new(phi).unwrap()).unwrap();
            let p = relative_effective_price(&pool(), &cfg, 10.0).unwrap();
            assert!(p <= prev && p > 0.0 && p <= 1.0 + 1e-15, "{phi}: {p}");
            prev = p;
        }
    }

    #[test]
    fn curves_have_one_row_per_alpha() {
        let cfg = EngineConfig::continuous(LinearFee::new(0.003, 1e4).unwrap()).unwrap();
        let alphas = [0.01, 0.05, 0.1];
        let prices = price_curve(&pool(), &cfg, &alphas).unwrap();
        assert_eq!(prices.len(), 3);
        assert_eq!(prices.meta["engine"], "continuous");
        let il = il_curve(&pool(), &cfg, &alphas).unwrap();
        assert_eq!(il.column("alpha").unwrap(), alphas);
        assert!(price_curve(&pool(), &cfg, &[0.0]).is_err());
    }
}
