#![allow(clippy::excessive_precision)]

use alloc::vec::Vec;

use super::DEFAULT_REL_TOL;
use crate::error::NumericsError;
use crate::math::sqrt;

// 15-point Kronrod abscissae (non-negative half) and weights, with the
// embedded 7-point Gauss weights on every other node.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Upper bound on the number of live panels.
const MAX_PANELS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub est_error: f64,
    pub evaluations: usize,
}

/// Globally adaptive Gauss–Kronrod (7/15) quadrature.
///
/// If the integrand is not finite at the left endpoint `a`, the variable is
/// changed to `k = a + v²` before subdivision, which removes integrable
/// singularities of the form `(k - a)^(-1/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub rel_tol: f64,
    /// Maximum bisection depth of any panel.
    pub max_depth: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            rel_tol: DEFAULT_REL_TOL,
            max_depth: 60,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    abs_value: f64,
    error: f64,
    depth: usize,
}

impl Quadrature {
    pub fn new(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn integrate<F>(&self, mut f: F, a: f64, b: f64) -> Result<QuadratureResult, NumericsError>
    where
        F: FnMut(f64) -> f64,
    {
        self.try_integrate(|x| Ok::<_, NumericsError>(f(x)), a, b)
    }

    pub fn try_integrate<F, E>(&self, mut f: F, a: f64, b: f64) -> Result<QuadratureResult, E>
    where
        F: FnMut(f64) -> Result<f64, E>,
        E: From<NumericsError>,
    {
        if !(a.is_finite() && b.is_finite() && a <= b) {
            return Err(NumericsError::InvalidArgument {
                what: "integration interval",
            }
            .into());
        }
        if !(self.rel_tol > 0.0) {
            return Err(NumericsError::InvalidArgument {
                what: "quadrature tolerance",
            }
            .into());
        }
        if a == b {
            return Ok(QuadratureResult {
                value: 0.0,
                est_error: 0.0,
                evaluations: 0,
            });
        }

        let at_a = f(a)?;
        let mut result = if at_a.is_finite() {
            self.adaptive(
                |x| -> Result<f64, E> {
                    let v = f(x)?;
                    if v.is_finite() {
                        Ok(v)
                    } else {
                        Err(NumericsError::NonFinite { at: x }.into())
                    }
                },
                a,
                b,
            )?
        } else {
            self.adaptive(
                |v| -> Result<f64, E> {
                    let x = a + v * v;
                    let fx = f(x)?;
                    if fx.is_finite() {
                        Ok(2.0 * v * fx)
                    } else {
                        Err(NumericsError::NonFinite { at: x }.into())
                    }
                },
                0.0,
                sqrt(b - a),
            )?
        };
        result.evaluations += 1;
        Ok(result)
    }

    fn adaptive<F, E>(&self, mut f: F, a: f64, b: f64) -> Result<QuadratureResult, E>
    where
        F: FnMut(f64) -> Result<f64, E>,
        E: From<NumericsError>,
    {
        let mut evaluations = 0;
        let mut panels = Vec::with_capacity(64);
        panels.push(kronrod(&mut f, a, b, 0, &mut evaluations)?);
        loop {
            let (mut value, mut abs_value, mut error) = (0.0, 0.0, 0.0);
            let mut worst = 0;
            for (i, p) in panels.iter().enumerate() {
                value += p.value;
                abs_value += p.abs_value;
                error += p.error;
                if p.error > panels[worst].error {
                    worst = i;
                }
            }
            let tol = (self.rel_tol * value.abs()).max(50.0 * f64::EPSILON * abs_value);
            if error <= tol {
                return Ok(QuadratureResult {
                    value,
                    est_error: error,
                    evaluations,
                });
            }
            let p = panels.swap_remove(worst);
            if p.depth >= self.max_depth || panels.len() >= MAX_PANELS {
                return Err(NumericsError::NonConvergence {
                    limit: self.max_depth,
                }
                .into());
            }
            let mid = 0.5 * (p.a + p.b);
            panels.push(kronrod(&mut f, p.a, mid, p.depth + 1, &mut evaluations)?);
            panels.push(kronrod(&mut f, mid, p.b, p.depth + 1, &mut evaluations)?);
        }
    }
}

fn kronrod<F, E>(
    f: &mut F,
    a: f64,
    b: f64,
    depth: usize,
    evaluations: &mut usize,
) -> Result<Panel, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center)?;
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    let mut abs_value = WGK[7] * f_center.abs();
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        kronrod += WGK[j] * (f1 + f2);
        abs_value += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    *evaluations += 15;
    Ok(Panel {
        a,
        b,
        value: kronrod * half,
        abs_value: abs_value * half.abs(),
        error: ((kronrod - gauss) * half).abs(),
        depth,
    })
}

/// Integrates `f` over `[a, b]` to relative tolerance `rel_tol`.
pub fn integrate<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<QuadratureResult, NumericsError>
where
    F: FnMut(f64) -> f64,
{
    Quadrature::new(rel_tol).integrate(f, a, b)
}

/// Fallible-integrand version of [`integrate`].
pub fn try_integrate<F, E>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<QuadratureResult, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<NumericsError>,
{
    Quadrature::new(rel_tol).try_integrate(f, a, b)
}
