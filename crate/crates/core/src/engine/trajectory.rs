use alloc::vec::Vec;

use super::{continuous::swap_continuous_with, Tolerances};
use crate::error::{non_negative, Error, NumericsError, Result};
use crate::fees::InvariantFee;
use crate::numerics::try_rk4_integrate_observed;
use crate::pool::PoolState;

/// Maximum number of stored samples (besides the initial state).
pub const MAX_TRAJECTORY_SAMPLES: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    /// Cumulative input of token A.
    pub s: f64,
    pub x: f64,
    pub y: f64,
    pub k: f64,
}

/// Samples of a pool state along a trade, ordered by `s`. The first sample
/// is the initial state and the last one the final state.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub points: Vec<TrajectoryPoint>,
}

impl Trajectory {
    pub fn first(&self) -> Option<&TrajectoryPoint> {
        self.points.first()
    }

    pub fn last(&self) -> Option<&TrajectoryPoint> {
        self.points.last()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn start(pool: &PoolState) -> TrajectoryPoint {
    TrajectoryPoint {
        s: 0.0,
        x: pool.x(),
        y: pool.y(),
        k: pool.invariant(),
    }
}

/// Integrates the trade ODE system for `(x, y, k)` with `steps` RK4 steps.
///
/// Stores `min(steps, 1024)` evenly spaced samples after the initial state,
/// the endpoint always included.
///
/// When `Phi(k0) = 0` and `Phi` is not Lipschitz at `k0` (the zero-IL rule
/// at its reference) the system has a stationary solution `k ≡ k0` and RK4
/// follows it; use [`continuous_trajectory`] for the exchange-potential
/// solution.
pub fn ode_trajectory<F>(pool: &PoolState, fee: &F, dx: f64, steps: usize) -> Result<Trajectory>
where
    F: InvariantFee + ?Sized,
{
    non_negative("trade size dx", dx)?;
    if steps == 0 {
        return Err(Error::Invalid {
            what: "RK4 step count",
            value: 0.0,
        });
    }
    let mut points = Vec::with_capacity(steps.min(MAX_TRAJECTORY_SAMPLES) + 1);
    points.push(start(pool));
    if dx == 0.0 {
        return Ok(Trajectory { points });
    }
    let stored = steps.min(MAX_TRAJECTORY_SAMPLES) as u128;
    let total = steps as u128;
    let rhs = |s: f64, state: &[f64; 3]| -> Result<[f64; 3]> {
        let [x, y, k] = *state;
        if !(x > 0.0 && y > 0.0 && k > 0.0) {
            return Err(NumericsError::NonFinite { at: s }.into());
        }
        let phi = fee.phi(k)?;
        Ok([1.0, -(1.0 - phi) * y / x, phi * k / x])
    };
    let observe = |step: usize, s: f64, state: &[f64; 3]| -> Result<()> {
        let step = step as u128;
        if step * stored / total > (step - 1) * stored / total {
            points.push(TrajectoryPoint {
                s,
                x: state[0],
                y: state[1],
                k: state[2],
            });
        }
        Ok(())
    };
    let initial = [pool.x(), pool.y(), pool.invariant()];
    let end = try_rk4_integrate_observed(rhs, 0.0, dx, initial, steps, observe)?;
    if !(end[0] > 0.0 && end[1] > 0.0 && end[2] > 0.0) {
        return Err(NumericsError::NonFinite { at: dx }.into());
    }
    Ok(Trajectory { points })
}

/// Samples the exact path-independent trajectory at `samples` evenly spaced
/// cumulative inputs by calling the continuous solver from the initial pool.
pub fn continuous_trajectory<F>(
    pool: &PoolState,
    fee: &F,
    dx: f64,
    samples: usize,
    tolerances: &Tolerances,
) -> Result<Trajectory>
where
    F: InvariantFee + ?Sized,
{
    non_negative("trade size dx", dx)?;
    let mut points = Vec::with_capacity(samples + 1);
    points.push(start(pool));
    if dx == 0.0 || samples == 0 {
        return Ok(Trajectory { points });
    }
    for i in 1..=samples {
        let s = if i == samples {
            dx
        } else {
            dx * i as f64 / samples as f64
        };
        let out = swap_continuous_with(pool, fee, s, tolerances)?;
        points.push(TrajectoryPoint {
            s,
            x: out.x_f,
            y: out.y_f,
            k: out.k_f,
        });
    }
    Ok(Trajectory { points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::swap_continuous;
    use crate::fees::{ConstantFee, LinearFee, ZeroIlFee};
    use crate::math::{exp, ln};

    fn pool() -> PoolState {
        PoolState::new(100.0, 100.0).unwrap()
    }

    #[test]
    fn constant_fee_matches_analytic() {
        let fee = ConstantFee::new(0.003).unwrap();
        let traj = ode_trajectory(&pool(), &fee, 10.0, 100_000).unwrap();
        let analytic = 1e4 * exp(0.003 * ln(1.1));
        let last = traj.last().unwrap();
        assert!((last.k - analytic).abs() <= 1e-9 * analytic);
        assert_eq!(last.s, 10.0);
        assert_eq!(traj.len(), MAX_TRAJECTORY_SAMPLES + 1);
    }

    #[test]
    fn zero_trade_has_single_sample() {
        let fee = LinearFee::new(0.003, 1e4).unwrap();
        let traj = ode_trajectory(&pool(), &fee, 0.0, 50).unwrap();
        assert_eq!(traj.points, [start(&pool())]);
    }

    #[test]
    fn fee_free_invariant_is_constant() {
        let fee = ConstantFee::new(0.0).unwrap();
        let traj = ode_trajectory(&pool(), &fee, 10.0, 100).unwrap();
        assert_eq!(traj.len(), 101);
        for p in &traj.points {
            assert!((p.k - 1e4).abs() <= 1e-12 * 1e4);
        }
    }

    #[test]
    fn samples_are_consistent() {
        let fee = LinearFee::new(0.003, 1e4).unwrap();
        let traj = ode_trajectory(&pool(), &fee, 10.0, 2000).unwrap();
        for pair in traj.points.windows(2) {
            assert!(pair[1].x > pair[0].x);
            assert!(pair[1].k >= pair[0].k);
        }
        for p in &traj.points {
            assert!((p.x * p.y - p.k).abs() <= 1e-10 * p.k);
        }
        let end = swap_continuous(&pool(), &fee, 10.0).unwrap();
        assert!((traj.last().unwrap().k - end.k_f).abs() <= 1e-9 * end.k_f);
    }

    #[test]
    fn zero_il_reference_has_stationary_ode_branch() {
        let fee = ZeroIlFee::new(1e4).unwrap();
        let traj = ode_trajectory(&pool(), &fee, 10.0, 100).unwrap();
        assert_eq!(traj.last().unwrap().k, 1e4);
        let exact = continuous_trajectory(&pool(), &fee, 10.0, 10, &Tolerances::default()).unwrap();
        assert!((exact.last().unwrap().k - 10083.3333).abs() < 1e-3);
    }

    #[test]
    fn rejects_zero_steps() {
        let fee = ConstantFee::new(0.003).unwrap();
        assert!(ode_trajectory(&pool(), &fee, 1.0, 0).is_err());
    }
}
