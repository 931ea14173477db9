use crate::error::NumericsError;

/// Classical fourth-order Runge–Kutta with `steps` equal steps from `s0` to
/// `s1`. `rhs(s, state)` returns the derivative.
pub fn rk4_integrate<const N: usize, F>(
    mut rhs: F,
    s0: f64,
    s1: f64,
    state0: [f64; N],
    steps: usize,
) -> Result<[f64; N], NumericsError>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    try_rk4_integrate(
        |s, y| Ok::<_, NumericsError>(rhs(s, y)),
        s0,
        s1,
        state0,
        steps,
    )
}

pub fn try_rk4_integrate<const N: usize, F, E>(
    rhs: F,
    s0: f64,
    s1: f64,
    state0: [f64; N],
    steps: usize,
) -> Result<[f64; N], E>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N], E>,
    E: From<NumericsError>,
{
    try_rk4_integrate_observed(rhs, s0, s1, state0, steps, |_, _, _| Ok(()))
}

/// Like [`try_rk4_integrate`], calling `observe(step, s, state)` after every
/// completed step (`step` counts from 1). The observer may abort the
/// integration by returning an error.
pub fn try_rk4_integrate_observed<const N: usize, F, O, E>(
    mut rhs: F,
    s0: f64,
    s1: f64,
    state0: [f64; N],
    steps: usize,
    mut observe: O,
) -> Result<[f64; N], E>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N], E>,
    O: FnMut(usize, f64, &[f64; N]) -> Result<(), E>,
    E: From<NumericsError>,
{
    if steps == 0 {
        return Err(NumericsError::InvalidArgument {
            what: "RK4 step count",
        }
        .into());
    }
    if !(s0.is_finite() && s1.is_finite()) {
        return Err(NumericsError::InvalidArgument {
            what: "RK4 interval",
        }
        .into());
    }
    let h = (s1 - s0) / steps as f64;
    let mut y = state0;
    for step in 1..=steps {
        // s from the step index, not accumulated, to avoid drift
        let s = s0 + (step - 1) as f64 * h;
        let k1 = rhs(s, &y)?;
        let k2 = rhs(s + 0.5 * h, &axpy(&y, 0.5 * h, &k1))?;
        let k3 = rhs(s + 0.5 * h, &axpy(&y, 0.5 * h, &k2))?;
        let k4 = rhs(s + h, &axpy(&y, h, &k3))?;
        for i in 0..N {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let s_next = if step == steps {
            s1
        } else {
            s0 + step as f64 * h
        };
        if y.iter().any(|v| !v.is_finite()) {
            return Err(NumericsError::NonFinite { at: s_next }.into());
        }
        observe(step, s_next, &y)?;
    }
    Ok(y)
}

#[inline]
fn axpy<const N: usize>(y: &[f64; N], h: f64, k: &[f64; N]) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        out[i] += h * k[i];
    }
    out
}
