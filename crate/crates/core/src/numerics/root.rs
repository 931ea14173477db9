use super::DEFAULT_REL_TOL;
use crate::error::NumericsError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub root: f64,
    /// `g(root)`.
    pub residual: f64,
    pub iterations: usize,
}

/// Brent's method: bisection safeguarded with secant and inverse quadratic
/// interpolation steps. The returned root always lies in the initial bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootFinder {
    /// Accuracy of the root relative to its magnitude.
    pub rel_tol: f64,
    pub max_iterations: usize,
}

impl Default for RootFinder {
    fn default() -> Self {
        Self {
            rel_tol: DEFAULT_REL_TOL,
            max_iterations: 200,
        }
    }
}

impl RootFinder {
    pub fn new(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn find<G>(&self, mut g: G, lo: f64, hi: f64) -> Result<RootResult, NumericsError>
    where
        G: FnMut(f64) -> f64,
    {
        self.try_find(|x| Ok::<_, NumericsError>(g(x)), lo, hi)
    }

    pub fn try_find<G, E>(&self, mut g: G, lo: f64, hi: f64) -> Result<RootResult, E>
    where
        G: FnMut(f64) -> Result<f64, E>,
        E: From<NumericsError>,
    {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(NumericsError::InvalidArgument {
                what: "root bracket",
            }
            .into());
        }
        if !(self.rel_tol > 0.0) {
            return Err(NumericsError::InvalidArgument {
                what: "root tolerance",
            }
            .into());
        }
        let finite = |x: f64, v: f64| -> Result<f64, E> {
            if v.is_finite() {
                Ok(v)
            } else {
                Err(NumericsError::NonFinite { at: x }.into())
            }
        };

        let (mut a, mut b) = (lo, hi);
        let mut fa = finite(a, g(a)?)?;
        let mut fb = finite(b, g(b)?)?;
        if fa == 0.0 {
            return Ok(RootResult {
                root: a,
                residual: 0.0,
                iterations: 0,
            });
        }
        if fb == 0.0 {
            return Ok(RootResult {
                root: b,
                residual: 0.0,
                iterations: 0,
            });
        }
        if fa.signum() == fb.signum() {
            return Err(NumericsError::NoBracket { g_lo: fa, g_hi: fb }.into());
        }

        // b is the best estimate, c the contrapoint (root lies between b and c).
        let (mut c, mut fc) = (a, fa);
        let mut d = b - a;
        let mut e = d;
        for iteration in 1..=self.max_iterations {
            if fb.signum() == fc.signum() {
                c = a;
                fc = fa;
                d = b - a;
                e = d;
            }
            if fc.abs() < fb.abs() {
                a = b;
                b = c;
                c = a;
                fa = fb;
                fb = fc;
                fc = fa;
            }
            let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * self.rel_tol * b.abs();
            let half = 0.5 * (c - b);
            if half.abs() <= tol || fb == 0.0 {
                return Ok(RootResult {
                    root: b,
                    residual: fb,
                    iterations: iteration,
                });
            }
            if e.abs() >= tol && fa.abs() > fb.abs() {
                let s = fb / fa;
                let (mut p, mut q);
                if a == c {
                    // secant
                    p = 2.0 * half * s;
                    q = 1.0 - s;
                } else {
                    // inverse quadratic interpolation
                    let q0 = fa / fc;
                    let r = fb / fc;
                    p = s * (2.0 * half * q0 * (q0 - r) - (b - a) * (r - 1.0));
                    q = (q0 - 1.0) * (r - 1.0) * (s - 1.0);
                }
                if p > 0.0 {
                    q = -q;
                } else {
                    p = -p;
                }
                let bound1 = 3.0 * half * q - (tol * q).abs();
                let bound2 = (e * q).abs();
                if 2.0 * p < bound1.min(bound2) {
                    e = d;
                    d = p / q;
                } else {
                    d = half;
                    e = d;
                }
            } else {
                d = half;
                e = d;
            }
            a = b;
            fa = fb;
            b += if d.abs() > tol { d } else { tol.copysign(half) };
            // keep the iterate inside the original bracket
            b = b.clamp(lo, hi);
            fb = finite(b, g(b)?)?;
        }
        Err(NumericsError::NonConvergence {
            limit: self.max_iterations,
        }
        .into())
    }
}

/// Finds a root of `g` in `[lo, hi]`, which must bracket a sign change.
pub fn find_root<G>(g: G, lo: f64, hi: f64, rel_tol: f64) -> Result<RootResult, NumericsError>
where
    G: FnMut(f64) -> f64,
{
    RootFinder::new(rel_tol).find(g, lo, hi)
}

/// Fallible-function version of [`find_root`].
pub fn try_find_root<G, E>(g: G, lo: f64, hi: f64, rel_tol: f64) -> Result<RootResult, E>
where
    G: FnMut(f64) -> Result<f64, E>,
    E: From<NumericsError>,
{
    RootFinder::new(rel_tol).try_find(g, lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{exp, ln};
    use proptest::prelude::*;

    #[test]
    fn sqrt_two() {
        let r = find_root(|x| x * x - 2.0, 1.0, 2.0, 1e-10).unwrap();
        assert!((r.root - core::f64::consts::SQRT_2).abs() < 1e-10);
    }

    #[test]
    fn constant_fee_final_invariant() {
        let r = find_root(|k| ln(k / 1e4) / 0.003 - ln(1.1), 1e4, 1.1e4, 1e-10).unwrap();
        assert!((r.root - 10002.8597).abs() < 1e-4);
        let analytic = 1e4 * exp(0.003 * ln(1.1));
        assert!((r.root - analytic).abs() <= 1e-10 * analytic);
    }

    #[test]
    fn root_at_origin() {
        let r = find_root(|x| x, -1.0, 1.0, 1e-10).unwrap();
        assert_eq!(r.root, 0.0);
    }

    #[test]
    fn endpoint_roots() {
        assert_eq!(find_root(|x| x - 1.0, 1.0, 2.0, 1e-10).unwrap().root, 1.0);
        assert_eq!(find_root(|x| x - 2.0, 1.0, 2.0, 1e-10).unwrap().root, 2.0);
    }

    #[test]
    fn missing_bracket() {
        let err = find_root(|x| x * x + 1.0, -1.0, 1.0, 1e-10).unwrap_err();
        assert!(matches!(err, NumericsError::NoBracket { .. }));
    }

    #[test]
    fn iteration_limit() {
        let finder = RootFinder {
            rel_tol: 1e-15,
            max_iterations: 2,
        };
        let err = finder.find(|x| exp(x) - 3.0, 0.0, 10.0).unwrap_err();
        assert!(matches!(err, NumericsError::NonConvergence { limit: 2 }));
    }

    proptest! {
        #[test]
        fn stays_in_bracket_and_converges(
            root in -50.0f64..50.0,
            below in 0.01f64..100.0,
            above in 0.01f64..100.0,
            cubic in 0.0f64..2.0,
        ) {
            let lo = root - below;
            let hi = root + above;
            let g = |x: f64| (x - root) + cubic * (x - root).powi(3);
            let r = find_root(g, lo, hi, 1e-12).unwrap();
            prop_assert!(r.root >= lo && r.root <= hi);
            prop_assert!((r.root - root).abs() <= 1e-10 * root.abs().max(1.0));
        }

        #[test]
        fn reports_no_bracket_without_sign_change(shift in 0.5f64..10.0) {
            let r = find_root(|x| x * x + shift, -3.0, 3.0, 1e-10);
            prop_assert!(
                matches!(r, Err(NumericsError::NoBracket { .. })),
                "expected NoBracket"
            );
        }
    }
}
