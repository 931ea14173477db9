use super::Tolerances;
use crate::error::{non_negative, Error, Result};
use crate::fees::{zero_il_phi_of_alpha, zero_il_target_k, FeeShape, InvariantFee, ZeroIlFee};
use crate::math::{exp, exp_m1, ln_1p};
use crate::numerics::{Quadrature, RootFinder};
use crate::pool::{PoolState, SolveMethod, TradeOutcome};

/// Continuous (integral) swap of `dx` token A into the pool.
pub fn swap_continuous<F>(pool: &PoolState, fee: &F, dx: f64) -> Result<TradeOutcome>
where
    F: InvariantFee + ?Sized,
{
    swap_continuous_with(pool, fee, dx, &Tolerances::default())
}

pub fn swap_continuous_with<F>(
    pool: &PoolState,
    fee: &F,
    dx: f64,
    tolerances: &Tolerances,
) -> Result<TradeOutcome>
where
    F: InvariantFee + ?Sized,
{
    non_negative("trade size dx", dx)?;
    if dx == 0.0 {
        return Ok(TradeOutcome::identity(pool));
    }
    let k0 = pool.invariant();
    let (k_f, method) = final_invariant(fee, k0, ln_1p(dx / pool.x()), tolerances)?;
    let x_f = pool.x() + dx;
    let y_f = k_f / x_f;
    TradeOutcome::from_final(pool, dx, x_f, y_f, k_f, pool.y() - y_f, method, 1)
}

/// Applies the continuous solver to consecutive fragments of a trade.
/// For a path-independent rule the result matches a single call with the
/// summed input.
pub fn swap_continuous_fragments<F>(
    pool: &PoolState,
    fee: &F,
    fragments: &[f64],
    tolerances: &Tolerances,
) -> Result<TradeOutcome>
where
    F: InvariantFee + ?Sized,
{
    fold_fragments(pool, fee, fragments.iter().copied(), tolerances)
}

pub(super) fn swap_equal_fragments<F>(
    pool: &PoolState,
    fee: &F,
    fragment: f64,
    count: usize,
    tolerances: &Tolerances,
) -> Result<TradeOutcome>
where
    F: InvariantFee + ?Sized,
{
    fold_fragments(pool, fee, core::iter::repeat_n(fragment, count), tolerances)
}

fn fold_fragments<F, I>(
    pool: &PoolState,
    fee: &F,
    fragments: I,
    tolerances: &Tolerances,
) -> Result<TradeOutcome>
where
    F: InvariantFee + ?Sized,
    I: Iterator<Item = f64>,
{
    let mut current = *pool;
    let mut dx_total = 0.0;
    let mut calls = 0;
    let mut method = SolveMethod::Identity;
    let mut k_f = pool.invariant();
    for fragment in fragments {
        let step = swap_continuous_with(&current, fee, fragment, tolerances)?;
        if step.method != SolveMethod::Identity {
            method = step.method;
        }
        dx_total += fragment;
        k_f = step.k_f;
        current = step.pool()?;
        calls += 1;
    }
    if calls == 0 || dx_total == 0.0 {
        let mut out = TradeOutcome::identity(pool);
        out.sub_swaps = calls;
        return Ok(out);
    }
    TradeOutcome::from_final(
        pool,
        dx_total,
        current.x(),
        current.y(),
        k_f,
        pool.y() - current.y(),
        method,
        calls,
    )
}

/// Final invariant after a trade whose log input growth is
/// `log_growth = ln(1 + dx/x0)`, starting from invariant `k0`.
///
/// Constant, linear and zero-IL rules use their closed-form potentials;
/// anything else goes through [`solve_by_quadrature`].
pub fn final_invariant<F>(
    fee: &F,
    k0: f64,
    log_growth: f64,
    tolerances: &Tolerances,
) -> Result<(f64, SolveMethod)>
where
    F: InvariantFee + ?Sized,
{
    non_negative("log input growth", log_growth)?;
    if log_growth == 0.0 {
        return Ok((k0, SolveMethod::Identity));
    }
    let k_f = match fee.shape() {
        // G(k) = ln(k)/phi
        FeeShape::Constant { phi } => k0 * exp(phi * log_growth),
        // G(k) = -k_ref/(slope·k)
        FeeShape::Linear { .. } => {
            let phi0 = fee.phi(k0)?;
            let denominator = 1.0 - phi0 * log_growth;
            if !(denominator > 0.0) {
                return Err(Error::Range {
                    what: "linear fee factor along the trade",
                    value: f64::INFINITY,
                });
            }
            let k_f = k0 / denominator;
            fee.phi(k_f)?;
            k_f
        }
        // G(k) = ln(1 + a(k)) where a(k) is the zero-IL trade size reaching k
        FeeShape::ZeroIl { k_ref } => {
            let rule = ZeroIlFee::new(k_ref)?;
            let alpha0 = rule.alpha_at(k0)?;
            if alpha0 == 0.0 {
                // at the reference: follow the trajectory from the pool's own k
                zero_il_target_k(k0, exp_m1(log_growth))?
            } else {
                let alpha_f = alpha0 + (1.0 + alpha0) * exp_m1(log_growth);
                let k_f = zero_il_target_k(k_ref, alpha_f)?;
                if !(zero_il_phi_of_alpha(alpha_f) < 1.0) {
                    return Err(Error::Range {
                        what: "zero-IL fee factor",
                        value: zero_il_phi_of_alpha(alpha_f),
                    });
                }
                k_f
            }
        }
        FeeShape::General => {
            return solve_by_quadrature(fee, k0, log_growth, tolerances)
                .map(|k| (k, SolveMethod::Quadrature))
        }
    };
    if !k_f.is_finite() {
        return Err(Error::Range {
            what: "final invariant",
            value: k_f,
        });
    }
    Ok((k_f, SolveMethod::Analytic))
}

/// Solves `∫_{k0}^{k_f} dk/(Phi(k)·k) = log_growth` for `k_f` numerically,
/// regardless of whether a closed form exists.
///
/// The root is bracketed by `[k0, k0·exp(log_growth)]`: with `Phi < 1` the
/// integrand exceeds `1/k`, so the integral reaches `log_growth` before
/// `k0·exp(log_growth)`.
pub fn solve_by_quadrature<F>(
    fee: &F,
    k0: f64,
    log_growth: f64,
    tolerances: &Tolerances,
) -> Result<f64>
where
    F: InvariantFee + ?Sized,
{
    non_negative("log input growth", log_growth)?;
    if log_growth == 0.0 {
        return Ok(k0);
    }
    let quadrature = Quadrature::new(tolerances.quadrature);
    let integrand = |k: f64| -> Result<f64> {
        let phi = fee.phi(k)?;
        Ok(1.0 / (phi * k))
    };
    let potential = |k: f64| -> Result<f64> {
        let gain = quadrature.try_integrate(integrand, k0, k)?;
        Ok(gain.value - log_growth)
    };
    let hi = k0 * exp(log_growth);
    let root = RootFinder::new(tolerances.root).try_find(potential, k0, hi)?;
    Ok(root.root)
}
