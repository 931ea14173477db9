use std::collections::BTreeMap;

use feelab::analysis::{
    fee_field_grid, il_curve, price_curve, splitting_error, universal_fee_conflict,
    zero_il_crossover, zero_il_fee_curve,
};
use feelab::fees::{zero_il_alpha_of_t, zero_il_phi_of_alpha};
use feelab::{
    impermanent_loss, EngineConfig, Error, Fee, FeeRule, PoolState, SeriesTable, TradeSpec,
};

use crate::error::{on_flag, CliError};

/// A series plus the human-readable lines that summarise it.
#[derive(Debug)]
pub struct Report {
    pub table: SeriesTable,
    pub summary: Vec<String>,
}

fn core(command: &'static str) -> impl Fn(Error) -> CliError {
    move |source| CliError::Core { command, source }
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

pub fn swap(
    pool: &PoolState,
    config: &EngineConfig<Fee>,
    dx: f64,
    splits: usize,
) -> Result<Report, CliError> {
    let spec = TradeSpec::new(dx, splits).map_err(on_flag("--splits"))?;
    let out = config.swap(pool, spec).map_err(core("swap"))?;
    let il = impermanent_loss(pool, &out);
    let mut table = SeriesTable::new(
        "swap",
        [
            "x0",
            "y0",
            "dx",
            "splits",
            "x_f",
            "y_f",
            "k_f",
            "dy_out",
            "p_marginal_f",
            "p_effective",
            "v_hold",
            "v_pool",
            "il_abs",
            "il_rel",
        ],
    )
    .with_meta("engine", config.mode())
    .with_meta("split", config.split())
    .with_meta("fee", config.fee());
    table
        .push_row(&[
            pool.x(),
            pool.y(),
            dx,
            splits as f64,
            out.x_f,
            out.y_f,
            out.k_f,
            out.dy_out,
            out.p_marginal_f,
            out.p_effective,
            il.v_hold,
            il.v_pool,
            il.il_abs,
            il.il_rel,
        ])
        .map_err(core("swap"))?;
    let summary = vec![
        format!(
            "{} engine, fee {}, {} sub-swap(s), solver {:?}",
            config.mode(),
            config.fee(),
            out.sub_swaps,
            out.method
        ),
        format!("pool (x, y, k): ({}, {}, {})", out.x_f, out.y_f, out.k_f),
        format!(
            "received dy: {}  effective price: {}",
            out.dy_out, out.p_effective
        ),
        format!("impermanent loss: {} ({} relative)", il.il_abs, il.il_rel),
    ];
    Ok(Report { table, summary })
}

pub fn split_test(
    pool: &PoolState,
    config: &EngineConfig<Fee>,
    dx: f64,
    n: &[usize],
) -> Result<Report, CliError> {
    if n.contains(&0) {
        return Err(CliError::flag("--n", "split counts must be at least 1"));
    }
    let table = splitting_error(pool, config, dx, n)
        .map_err(core("split-test"))?
        .with_meta("fee", config.fee());
    let worst = max_of(table.column("error").unwrap_or_default());
    let summary = vec![format!(
        "{} engine, fee {}: max relative invariant error {worst:e} over {} split count(s)",
        config.mode(),
        config.fee(),
        n.len()
    )];
    Ok(Report { table, summary })
}

pub fn price_curve_report(
    pool: &PoolState,
    config: &EngineConfig<Fee>,
    alphas: &[f64],
) -> Result<Report, CliError> {
    let table = price_curve(pool, config, alphas)
        .map_err(core("price-curve"))?
        .with_meta("fee", config.fee());
    let p_rel = table.column("p_rel").unwrap_or_default();
    let lowest = p_rel.iter().copied().fold(f64::INFINITY, f64::min);
    let summary = vec![format!(
        "{} engine, fee {}: p_rel ranges down to {lowest} over {} trade size(s)",
        config.mode(),
        config.fee(),
        p_rel.len()
    )];
    Ok(Report { table, summary })
}

pub fn il_curve_report(
    pool: &PoolState,
    config: &EngineConfig<Fee>,
    alphas: &[f64],
) -> Result<Report, CliError> {
    let table = il_curve(pool, config, alphas)
        .map_err(core("il-curve"))?
        .with_meta("fee", config.fee());
    let worst = max_of(
        table
            .column("il_rel")
            .unwrap_or_default()
            .iter()
            .map(|v| v.abs()),
    );
    let summary = vec![format!(
        "{} engine, fee {}: max |il_rel| = {worst:e}",
        config.mode(),
        config.fee()
    )];
    Ok(Report { table, summary })
}

pub fn fee_field(
    fee: &Fee,
    x_range: (f64, f64),
    y_range: (f64, f64),
    resolution: usize,
) -> Result<Report, CliError> {
    for (flag, (lo, hi)) in [("--x-range", x_range), ("--y-range", y_range)] {
        if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
            return Err(CliError::flag(
                flag,
                format!("expected 0 < LO <= HI, got {lo}:{hi}"),
            ));
        }
    }
    if resolution < 2 {
        return Err(CliError::flag(
            "--resolution",
            "need at least 2 points per axis",
        ));
    }
    let table = fee_field_grid(fee, x_range, y_range, resolution)
        .map_err(core("fee-field"))?
        .with_meta("fee", fee);
    // Spread of alpha among samples on the same invariant hyperbola.
    let mut by_k: BTreeMap<u64, (f64, f64)> = BTreeMap::new();
    for row in &table.rows {
        let entry = by_k.entry(row[3].to_bits()).or_insert((row[2], row[2]));
        entry.0 = entry.0.min(row[2]);
        entry.1 = entry.1.max(row[2]);
    }
    let spread = max_of(by_k.values().map(|(lo, hi)| hi - lo));
    let summary = vec![
        format!(
            "fee {}: {} samples, path independent: {}",
            fee,
            table.len(),
            if fee.is_path_independent() {
                "yes"
            } else {
                "no"
            }
        ),
        format!("largest alpha spread among samples sharing k: {spread:e}"),
    ];
    Ok(Report { table, summary })
}

pub fn zeroil_curve(k0: f64, t: &[f64], fee: &Fee) -> Result<Report, CliError> {
    if !(k0.is_finite() && k0 > 0.0) {
        return Err(CliError::flag(
            "--k0",
            format!("expected a positive invariant, got {k0}"),
        ));
    }
    if let Some(bad) = t.iter().find(|&&t| !(t >= 1.0 && t.is_finite())) {
        return Err(CliError::flag(
            "--t",
            format!("values must be >= 1, got {bad}"),
        ));
    }
    let table = zero_il_fee_curve(k0, t).map_err(core("zeroil-curve"))?;
    let mut summary = vec![format!(
        "zero-IL fee for reference k0 = {k0}: {} point(s)",
        t.len()
    )];
    if let Fee::Constant(c) = fee {
        if c.phi_value() > 0.0 {
            let t_star = zero_il_crossover(c.phi_value()).map_err(core("zeroil-curve"))?;
            summary.push(format!(
                "exceeds the constant fee {} above t = {t_star} (k = {})",
                c.phi_value(),
                t_star * k0
            ));
        }
    }
    Ok(Report { table, summary })
}

pub fn no_universal(k_star: f64, k0: &[f64]) -> Result<Report, CliError> {
    if !(k_star.is_finite() && k_star > 0.0) {
        return Err(CliError::flag(
            "--kstar",
            format!("expected a positive invariant, got {k_star}"),
        ));
    }
    if k0.len() < 2 {
        return Err(CliError::flag(
            "--k0",
            "need at least two reference invariants",
        ));
    }
    if let Some(bad) = k0.iter().find(|&&k| !(k > 0.0 && k < k_star)) {
        return Err(CliError::flag(
            "--k0",
            format!("references must lie in (0, k*), got {bad}"),
        ));
    }
    let mut table = SeriesTable::new("no-universal", ["k0", "t", "alpha", "phi_required"])
        .with_meta("kstar", k_star);
    let mut summary = Vec::new();
    for &k in k0 {
        let t = k_star / k;
        let alpha = zero_il_alpha_of_t(t).map_err(core("no-universal"))?;
        let phi = zero_il_phi_of_alpha(alpha);
        table
            .push_row(&[k, t, alpha, phi])
            .map_err(core("no-universal"))?;
        summary.push(format!(
            "k0 = {k}: alpha = {alpha}, required Phi(k*) = {phi}"
        ));
    }
    let mut gap: f64 = 0.0;
    for &other in &k0[1..] {
        let witness = universal_fee_conflict(k_star, k0[0], other).map_err(core("no-universal"))?;
        gap = gap.max(witness.gap());
    }
    summary.push(if gap > 0.0 {
        format!("CONFLICT: no single Phi(k) meets every reference at k* = {k_star} (gap {gap})")
    } else {
        format!("no conflict: all references require the same Phi at k* = {k_star}")
    });
    Ok(Report { table, summary })
}
