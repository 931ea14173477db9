//! Fee rules.
//!
//! A fee rule is described by its combined fee factor
//! `alpha(x, y) = 1 - gamma1·gamma2`, the fraction of marginal trade value
//! the pool keeps. A rule whose factor depends on the reserves only through
//! `k = x·y` is path independent: splitting a trade into fragments does not
//! change the final pool. Such rules implement [`InvariantFee`] and get
//! [`FeeRule`] for free. [`PriceRatioFee`] deliberately does not, and is
//! used as the negative control.
//!
//! The zero-IL family [`ZeroIlFee`] is parametrised by the relative trade
//! size `a = dx/x0` from its reference invariant `k0`:
//!
//! ```text
//! k(a)   = k0·(1 + a)² / (1 + 2a)
//! Phi(k) = 2a / (1 + 2a)
//! ```
//!
//! and is evaluated at an arbitrary `k >= k0` by inverting the first line,
//! `a = (t - 1) + sqrt(t·(t - 1))` with `t = k/k0`.

use core::fmt;
use core::str::FromStr;

use crate::error::{non_negative, positive, Error, Result};
use crate::math::sqrt;

/// Any fee rule: maps reserves to a combined fee factor in `[0, 1)`.
pub trait FeeRule {
    fn combined_factor(&self, x: f64, y: f64) -> Result<f64>;

    /// The rule's `Phi(k)` form if its factor depends on `x·y` only.
    fn path_independent(&self) -> Option<&dyn InvariantFee> {
        None
    }

    fn is_path_independent(&self) -> bool {
        self.path_independent().is_some()
    }
}

/// A path-independent fee: the combined factor is a function `Phi(k)` of the
/// invariant alone.
pub trait InvariantFee {
    fn phi(&self, k: f64) -> Result<f64>;

    /// Closed-form family this rule belongs to, if any. The continuous
    /// engine uses it to pick an analytic exchange potential.
    fn shape(&self) -> FeeShape {
        FeeShape::General
    }
}

impl<T: InvariantFee> FeeRule for T {
    fn combined_factor(&self, x: f64, y: f64) -> Result<f64> {
        self.phi(x * y)
    }

    fn path_independent(&self) -> Option<&dyn InvariantFee> {
        Some(self)
    }
}

/// Families of `Phi(k)` with a closed-form exchange potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FeeShape {
    Constant { phi: f64 },
    Linear { slope: f64, k_ref: f64 },
    ZeroIl { k_ref: f64 },
    General,
}

fn check_factor(what: &'static str, value: f64) -> Result<f64> {
    if (0.0..1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::Range { what, value })
    }
}

/// `Phi(k) = phi` for every `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantFee {
    phi: f64,
}

impl ConstantFee {
    pub fn new(phi: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::Invalid {
                what: "constant fee",
                value: phi,
            });
        }
        check_factor("constant fee", phi)?;
        Ok(Self { phi })
    }

    pub fn phi_value(&self) -> f64 {
        self.phi
    }
}

impl InvariantFee for ConstantFee {
    fn phi(&self, k: f64) -> Result<f64> {
        positive("invariant k", k)?;
        Ok(self.phi)
    }

    fn shape(&self) -> FeeShape {
        FeeShape::Constant { phi: self.phi }
    }
}

/// `Phi(k) = slope·k/k_ref`. Evaluation fails once the factor reaches 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFee {
    slope: f64,
    k_ref: f64,
}

impl LinearFee {
    pub fn new(slope: f64, k_ref: f64) -> Result<Self> {
        Ok(Self {
            slope: positive("linear fee slope", slope)?,
            k_ref: positive("linear fee reference invariant", k_ref)?,
        })
    }

    pub fn slope(&self) -> f64 {
        self.slope
    }

    pub fn k_ref(&self) -> f64 {
        self.k_ref
    }
}

impl InvariantFee for LinearFee {
    fn phi(&self, k: f64) -> Result<f64> {
        positive("invariant k", k)?;
        check_factor("linear fee factor", self.slope * k / self.k_ref)
    }

    fn shape(&self) -> FeeShape {
        FeeShape::Linear {
            slope: self.slope,
            k_ref: self.k_ref,
        }
    }
}

/// Invariants within this relative distance below the reference are
/// treated as the reference itself (round-off of `x·y` after a fee-free
/// step).
pub(crate) const ZERO_IL_REFERENCE_SLACK: f64 = 1e-14;

/// Fee that keeps absolute impermanent loss at zero for every trade size
/// starting from a pool with invariant `k_ref`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroIlFee {
    k_ref: f64,
}

impl ZeroIlFee {
    pub fn new(k_ref: f64) -> Result<Self> {
        Ok(Self {
            k_ref: positive("zero-IL reference invariant", k_ref)?,
        })
    }

    pub fn k_ref(&self) -> f64 {
        self.k_ref
    }

    /// Relative trade size from the reference that reaches invariant `k`.
    pub fn alpha_at(&self, k: f64) -> Result<f64> {
        positive("invariant k", k)?;
        let excess = (k - self.k_ref) / self.k_ref;
        if excess < -ZERO_IL_REFERENCE_SLACK {
            return Err(Error::Domain {
                what: "zero-IL invariant ratio k/k0",
                value: k / self.k_ref,
            });
        }
        Ok(alpha_from_excess(excess.max(0.0)))
    }
}

impl InvariantFee for ZeroIlFee {
    fn phi(&self, k: f64) -> Result<f64> {
        let alpha = self.alpha_at(k)?;
        check_factor("zero-IL fee factor", zero_il_phi_of_alpha(alpha))
    }

    fn shape(&self) -> FeeShape {
        FeeShape::ZeroIl { k_ref: self.k_ref }
    }
}

/// Path-dependent control: `alpha = base·(y/x)` clamped to `[0, 0.999]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriceRatioFee {
    base: f64,
}

impl PriceRatioFee {
    pub const MAX_FACTOR: f64 = 0.999;

    pub fn new(base: f64) -> Result<Self> {
        Ok(Self {
            base: positive("price-ratio fee base", base)?,
        })
    }

    pub fn base(&self) -> f64 {
        self.base
    }
}

impl FeeRule for PriceRatioFee {
    fn combined_factor(&self, x: f64, y: f64) -> Result<f64> {
        positive("reserve x", x)?;
        positive("reserve y", y)?;
        Ok((self.base * (y / x)).clamp(0.0, Self::MAX_FACTOR))
    }
}

/// `Phi(k)` given by a closure. The closure must return values in `[0, 1)`;
/// anything else is reported as a range error on evaluation.
pub struct InvariantFn<F> {
    f: F,
}

impl<F: Fn(f64) -> f64> InvariantFn<F> {
    pub fn new(f: F) -> Self {
        Self { f }
    }
}

impl<F> fmt::Debug for InvariantFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("InvariantFn")
    }
}

impl<F: Fn(f64) -> f64> InvariantFee for InvariantFn<F> {
    fn phi(&self, k: f64) -> Result<f64> {
        positive("invariant k", k)?;
        check_factor("custom fee factor", (self.f)(k))
    }
}

/// The built-in fee rules, constructible from `kind:param[:param]` strings:
/// `constant:0.003`, `linear:0.003:10000`, `zeroil:10000`,
/// `priceratio:0.003`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Fee {
    Constant(ConstantFee),
    Linear(LinearFee),
    ZeroIl(ZeroIlFee),
    PriceRatio(PriceRatioFee),
}

impl FeeRule for Fee {
    fn combined_factor(&self, x: f64, y: f64) -> Result<f64> {
        match self {
            Fee::Constant(f) => f.combined_factor(x, y),
            Fee::Linear(f) => f.combined_factor(x, y),
            Fee::ZeroIl(f) => f.combined_factor(x, y),
            Fee::PriceRatio(f) => f.combined_factor(x, y),
        }
    }

    fn path_independent(&self) -> Option<&dyn InvariantFee> {
        match self {
            Fee::Constant(f) => Some(f),
            Fee::Linear(f) => Some(f),
            Fee::ZeroIl(f) => Some(f),
            Fee::PriceRatio(_) => None,
        }
    }
}

impl From<ConstantFee> for Fee {
    fn from(f: ConstantFee) -> Self {
        Fee::Constant(f)
    }
}

impl From<LinearFee> for Fee {
    fn from(f: LinearFee) -> Self {
        Fee::Linear(f)
    }
}

impl From<ZeroIlFee> for Fee {
    fn from(f: ZeroIlFee) -> Self {
        Fee::ZeroIl(f)
    }
}

impl From<PriceRatioFee> for Fee {
    fn from(f: PriceRatioFee) -> Self {
        Fee::PriceRatio(f)
    }
}

impl fmt::Display for Fee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fee::Constant(c) => write!(f, "constant:{}", c.phi),
            Fee::Linear(l) => write!(f, "linear:{}:{}", l.slope, l.k_ref),
            Fee::ZeroIl(z) => write!(f, "zeroil:{}", z.k_ref),
            Fee::PriceRatio(p) => write!(f, "priceratio:{}", p.base),
        }
    }
}

/// Why a fee string was rejected.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseFeeError {
    #[error("unknown fee kind `{0}` (expected constant, linear, zeroil or priceratio)")]
    UnknownKind(alloc::string::String),
    #[error("fee kind `{kind}` takes {expected} parameter(s), got {got}")]
    Arity {
        kind: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("fee parameter `{0}` is not a number")]
    Number(alloc::string::String),
    #[error(transparent)]
    Value(#[from] Error),
}

impl FromStr for Fee {
    type Err = ParseFeeError;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let mut parts = s.trim().split(':');
        let kind = parts.next().unwrap_or_default().to_ascii_lowercase();
        let mut params = [0.0; 2];
        let mut got = 0;
        for p in parts {
            let value: f64 = p
                .trim()
                .parse()
                .map_err(|_| ParseFeeError::Number(p.into()))?;
            if got < params.len() {
                params[got] = value;
            }
            got += 1;
        }
        let arity = |kind: &'static str, expected: usize| {
            if got == expected {
                Ok(())
            } else {
                Err(ParseFeeError::Arity {
                    kind,
                    expected,
                    got,
                })
            }
        };
        Ok(match kind.as_str() {
            "constant" => {
                arity("constant", 1)?;
                ConstantFee::new(params[0])?.into()
            }
            "linear" => {
                arity("linear", 2)?;
                LinearFee::new(params[0], params[1])?.into()
            }
            "zeroil" | "zero-il" => {
                arity("zeroil", 1)?;
                ZeroIlFee::new(params[0])?.into()
            }
            "priceratio" | "price-ratio" => {
                arity("priceratio", 1)?;
                PriceRatioFee::new(params[0])?.into()
            }
            _ => return Err(ParseFeeError::UnknownKind(kind)),
        })
    }
}

/// Evaluates `Phi(k)` of a path-independent rule.
pub fn eval_phi<F: InvariantFee + ?Sized>(rule: &F, k: f64) -> Result<f64> {
    rule.phi(k)
}

/// `2a / (1 + 2a)`: the zero-IL fee factor reached after a trade of
/// relative size `a` from the reference state.
#[inline]
pub fn zero_il_phi_of_alpha(alpha: f64) -> f64 {
    2.0 * alpha / (1.0 + 2.0 * alpha)
}

// `u = t - 1` kept separate so callers near the reference avoid cancellation.
#[inline]
fn alpha_from_excess(u: f64) -> f64 {
    u + sqrt((1.0 + u) * u)
}

/// Inverts `t = (1 + a)²/(1 + 2a)` for the non-negative root `a`.
pub fn zero_il_alpha_of_t(t: f64) -> Result<f64> {
    if t.is_nan() || t == f64::INFINITY {
        return Err(Error::Invalid {
            what: "invariant ratio t",
            value: t,
        });
    }
    if t < 1.0 {
        return Err(Error::Domain {
            what: "invariant ratio t",
            value: t,
        });
    }
    Ok(alpha_from_excess(t - 1.0))
}

/// Invariant on the zero-IL trajectory after a trade of relative size
/// `alpha`: `k0·(1 + alpha)²/(1 + 2·alpha)`.
pub fn zero_il_target_k(k0: f64, alpha: f64) -> Result<f64> {
    positive("reference invariant k0", k0)?;
    non_negative("relative trade size", alpha)?;
    let growth = 1.0 + alpha;
    Ok(k0 * growth * growth / (1.0 + 2.0 * alpha))
}

/// Incidence of the combined fee between the input and output legs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitMode {
    /// Fee on the input only, as in Uniswap V2.
    InputOnly,
    /// `gamma1 = gamma2`.
    #[default]
    Balanced,
    OutputOnly,
}

impl SplitMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SplitMode::InputOnly => "input-only",
            SplitMode::Balanced => "balanced",
            SplitMode::OutputOnly => "output-only",
        }
    }
}

impl fmt::Display for SplitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SplitMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "input-only" | "input" => Ok(SplitMode::InputOnly),
            "balanced" => Ok(SplitMode::Balanced),
            "output-only" | "output" => Ok(SplitMode::OutputOnly),
            _ => Err(Error::Invalid {
                what: "split mode",
                value: f64::NAN,
            }),
        }
    }
}

/// Retention factors of the input (`gamma1`) and output (`gamma2`) legs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeeSplit {
    pub gamma1: f64,
    pub gamma2: f64,
}

impl FeeSplit {
    /// The combined factor `1 - gamma1·gamma2`.
    pub fn combined(&self) -> f64 {
        1.0 - self.gamma1 * self.gamma2
    }
}

/// Decomposes a combined factor into input/output retention factors with
/// `gamma1·gamma2 = 1 - alpha`.
pub fn split_factor(alpha: f64, mode: SplitMode) -> Result<FeeSplit> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::Range {
            what: "combined fee factor",
            value: alpha,
        });
    }
    let keep = 1.0 - alpha;
    Ok(match mode {
        SplitMode::InputOnly => FeeSplit {
            gamma1: keep,
            gamma2: 1.0,
        },
        SplitMode::Balanced => {
            let g = sqrt(keep);
            FeeSplit {
                gamma1: g,
                gamma2: g,
            }
        }
        SplitMode::OutputOnly => FeeSplit {
            gamma1: 1.0,
            gamma2: keep,
        },
    })
}
