//! Acceptance criteria, one `[PASS]`/`[FAIL]` line each. Exits non-zero if
//! any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use feelab::analysis::{
    fee_field_grid, relative_effective_price, required_zero_il_phi, splitting_error,
    universal_fee_conflict, zero_il_crossover,
};
use feelab::engine::solve_by_quadrature;
use feelab::fees::InvariantFn;
use feelab::{
    impermanent_loss, ode_trajectory, swap_continuous, ConstantFee, EngineConfig, FeeRule,
    InvariantFee, LinearFee, PoolState, PriceRatioFee, SplitMode, Tolerances, ZeroIlFee,
};

const RUNTIME_LIMIT: Duration = Duration::from_secs(1);

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn check(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn pool() -> PoolState {
    PoolState::new(100.0, 100.0).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Least-squares slope of `ln y` against `ln x`.
fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn path_independence() -> Outcome {
    let start = Instant::now();
    let n = [1, 2, 5, 10, 100, 1000];
    let mut worst: f64 = 0.0;
    let constant = EngineConfig::continuous(ConstantFee::new(0.003).unwrap()).unwrap();
    let linear = EngineConfig::continuous(LinearFee::new(0.003, 1e4).unwrap()).unwrap();
    for errors in [
        splitting_error(&pool(), &constant, 10.0, &n),
        splitting_error(&pool(), &linear, 10.0, &n),
    ] {
        for e in errors.unwrap().column("error").unwrap() {
            worst = worst.max(e);
        }
    }
    let elapsed = start.elapsed();
    check(
        worst <= 1e-12 && elapsed < RUNTIME_LIMIT,
        format!("max Error(N) = {worst:.3e} (<= 1e-12), runtime {elapsed:?} (< 1 s)"),
    )
}

fn discrete_deviation() -> Outcome {
    let cfg = EngineConfig::discrete(ConstantFee::new(0.003).unwrap(), SplitMode::InputOnly);
    let n = [2, 5, 10, 20, 50, 100, 200, 500, 1000];
    let table = splitting_error(&pool(), &cfg, 10.0, &n).unwrap();
    let errors = table.column("error").unwrap();
    let e2 = errors[0];
    let e10 = errors[2];
    let in_band = |e: f64| (1e-6..=1e-4).contains(&e);
    let points: Vec<(f64, f64)> = n
        .iter()
        .map(|&n| n as f64)
        .zip(errors.iter().copied())
        .collect();
    let slope = log_log_slope(&points);
    // Distance of k_f(N) from the continuous limit, reported for comparison.
    let limit = swap_continuous(&pool(), &ConstantFee::new(0.003).unwrap(), 10.0)
        .unwrap()
        .k_f;
    let deviation: Vec<(f64, f64)> = table
        .column("k_f")
        .unwrap()
        .iter()
        .zip(&n)
        .map(|(&k, &n)| (n as f64, rel(k, limit)))
        .collect();
    check(
        in_band(e2) && in_band(e10) && (slope + 1.0).abs() <= 0.15,
        format!(
            "Error(2) = {e2:.3e}, Error(10) = {e10:.3e} (in [1e-6, 1e-4]); \
             log-log slope {slope:+.3} (want -1 +/- 0.15); \
             slope of |k_f(N) - k_continuous| is {:+.3}",
            log_log_slope(&deviation)
        ),
    )
}

fn zero_il_exactness() -> Outcome {
    let start = Instant::now();
    let fee = ZeroIlFee::new(1e4).unwrap();
    let alphas = (1..=100).map(|i| i as f64 / 100.0).chain([2.0, 5.0, 10.0]);
    let mut worst: f64 = 0.0;
    for alpha in alphas {
        let out = swap_continuous(&pool(), &fee, alpha * 100.0).unwrap();
        let il = impermanent_loss(&pool(), &out);
        worst = worst.max(il.il_abs.abs() / il.v_hold);
    }
    let elapsed = start.elapsed();
    check(
        worst <= 1e-9 && elapsed < RUNTIME_LIMIT,
        format!("max |il_abs|/v_hold = {worst:.3e} (<= 1e-9), runtime {elapsed:?} (< 1 s)"),
    )
}

fn triangulation() -> Outcome {
    let fee = ConstantFee::new(0.003).unwrap();
    let alpha: f64 = 0.1;
    let dx = alpha * 100.0;
    let analytic = 1e4 * (1.0 + alpha).powf(0.003);
    let general = InvariantFn::new(|_| 0.003);
    let quadrature =
        solve_by_quadrature(&general, 1e4, alpha.ln_1p(), &Tolerances::default()).unwrap();
    let rk4 = ode_trajectory(&pool(), &fee, dx, 100_000)
        .unwrap()
        .last()
        .unwrap()
        .k;
    let discrete = EngineConfig::discrete(fee, SplitMode::Balanced)
        .swap(&pool(), feelab::TradeSpec::new(dx, 100_000).unwrap())
        .unwrap()
        .k_f;
    let oracles = [analytic, quadrature, rk4];
    let mut pairwise: f64 = 0.0;
    for a in oracles {
        for b in oracles {
            pairwise = pairwise.max(rel(a, b));
        }
    }
    let to_discrete = rel(discrete, analytic);
    check(
        pairwise <= 1e-8 && to_discrete <= 1e-8,
        format!(
            "analytic/quadrature/RK4 pairwise {pairwise:.3e}, discrete N=1e5 {to_discrete:.3e} (<= 1e-8)"
        ),
    )
}

fn price_envelope() -> Outcome {
    let alphas: Vec<f64> = (1..=100).map(|i| 0.1 * i as f64 / 100.0).collect();
    let mut lines = Vec::new();
    let mut lowest = f64::INFINITY;
    let mut record = |name: &str, p: &mut dyn FnMut(f64) -> f64| {
        let min = alphas
            .iter()
            .map(|&a| p(a * 100.0))
            .fold(f64::INFINITY, f64::min);
        lowest = lowest.min(min);
        lines.push(format!("{name} min {min:.6}"));
    };
    let v2 = EngineConfig::discrete(ConstantFee::new(0.003).unwrap(), SplitMode::InputOnly);
    record("UniV2", &mut |dx| {
        relative_effective_price(&pool(), &v2, dx).unwrap()
    });
    let balanced = EngineConfig::discrete(ConstantFee::new(0.003).unwrap(), SplitMode::Balanced);
    record("constant balanced", &mut |dx| {
        relative_effective_price(&pool(), &balanced, dx).unwrap()
    });
    let linear = EngineConfig::continuous(LinearFee::new(0.003, 1e4).unwrap()).unwrap();
    record("linear", &mut |dx| {
        relative_effective_price(&pool(), &linear, dx).unwrap()
    });
    check(
        lowest >= 0.998,
        format!(
            "p_rel over alpha in (0, 0.1]: {} (want >= 0.998)",
            lines.join(", ")
        ),
    )
}

fn zero_il_shape() -> Outcome {
    let fee = ZeroIlFee::new(1e4).unwrap();
    let at_reference = fee.phi(1e4).unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..=60 {
        let eps = 10f64.powf(-12.0 + 6.0 * i as f64 / 60.0);
        let phi = fee.phi(1e4 * (1.0 + eps)).unwrap();
        let asymptote = 2.0 * eps.sqrt();
        worst = worst.max((phi - asymptote).abs() / asymptote);
    }
    let t_star = zero_il_crossover(0.003).unwrap();
    check(
        at_reference == 0.0 && worst <= 0.01 && (t_star - 1.0000023).abs() <= 5e-7,
        format!(
            "Phi(k0) = {at_reference}, asymptotic deviation {:.3}% (<= 1%), crossover t* = {t_star:.9}",
            100.0 * worst
        ),
    )
}

fn conflict_witness() -> Outcome {
    let k_star = 10100.0;
    let w = universal_fee_conflict(k_star, 10000.0, 9000.0).unwrap();
    let grid: Vec<f64> = (0..50)
        .map(|i| required_zero_il_phi(k_star, k_star * (0.5 + 0.49 * i as f64 / 49.0)).unwrap())
        .collect();
    let decreasing = grid.windows(2).all(|w| w[1] < w[0]);
    check(
        w.gap() > 0.1 && decreasing,
        format!(
            "Phi_required {:.5} vs {:.5}, gap {:.4} (> 0.1); strictly decreasing over 50 references: {decreasing}",
            w.phi_a,
            w.phi_b,
            w.gap()
        ),
    )
}

fn negative_control() -> Outcome {
    let fee = PriceRatioFee::new(0.003).unwrap();
    let cfg = EngineConfig::discrete(fee, SplitMode::Balanced);
    let error = splitting_error(&pool(), &cfg, 10.0, &[10])
        .unwrap()
        .column("error")
        .unwrap()[0];
    let field = fee_field_grid(&fee, (50.0, 200.0), (50.0, 200.0), 61).unwrap();
    let mut spread: f64 = 0.0;
    for a in &field.rows {
        for b in &field.rows {
            if a[3] == b[3] {
                spread = spread.max((a[2] - b[2]).abs());
            }
        }
    }
    check(
        error > 1e-6 && spread > 0.0 && !fee.is_path_independent(),
        format!(
            "Error(10) = {error:.3e} (> 1e-6); largest alpha spread on a shared k {spread:.3e}"
        ),
    )
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 3] = [
        &[
            "split-test",
            "--engine",
            "discrete",
            "--split",
            "input-only",
        ],
        &["fee-field", "--fee", "priceratio:0.003"],
        &["il-curve", "--fee", "zeroil:10000"],
    ];
    let mut identical = true;
    let mut bytes = 0;
    for args in runs {
        let outputs: Vec<Vec<u8>> = (0..3)
            .map(|_| {
                let out = Command::new(env!("CARGO_BIN_EXE_feelab"))
                    .args(args)
                    .args(["--format", "csv"])
                    .output()
                    .expect("failed to run feelab");
                assert!(out.status.success());
                out.stdout
            })
            .collect();
        bytes += outputs[0].len();
        identical &= outputs.windows(2).all(|w| w[0] == w[1]);
    }
    check(
        identical,
        format!(
            "3 subcommands x 3 runs, {bytes} bytes of CSV each round, byte-identical: {identical}"
        ),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("path independence at machine precision", path_independence),
        ("UniV2 discrete deviation", discrete_deviation),
        ("zero-IL exactness", zero_il_exactness),
        ("potential triangulation", triangulation),
        ("relative price envelope", price_envelope),
        ("zero-IL fee shape", zero_il_shape),
        ("no universal zero-IL fee", conflict_witness),
        ("price-ratio negative control", negative_control),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, criterion)) in criteria.iter().enumerate() {
        let outcome = criterion();
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {}. {name}: {}", i + 1, outcome.detail);
        failed += usize::from(!outcome.passed);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
