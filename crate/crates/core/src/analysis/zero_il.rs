use super::SeriesTable;
use crate::error::{positive, Error, Result};
use crate::fees::{zero_il_alpha_of_t, zero_il_phi_of_alpha, InvariantFee, ZeroIlFee};

/// `Phi_{k0}(t·k0)` for each `t >= 1`. Columns: `t`, `phi`.
pub fn zero_il_fee_curve(k0: f64, t_values: &[f64]) -> Result<SeriesTable> {
    let rule = ZeroIlFee::new(k0)?;
    let mut table = SeriesTable::new("zeroil-curve", ["t", "phi"]).with_meta("k0", k0);
    for &t in t_values {
        if !(t >= 1.0) {
            return Err(Error::Domain {
                what: "invariant ratio t",
                value: t,
            });
        }
        table.push_row(&[t, rule.phi(t * k0)?])?;
    }
    Ok(table)
}

/// Fee factor that a zero-IL rule built for reference `k0` must charge at
/// `k_star`.
pub fn required_zero_il_phi(k_star: f64, k0: f64) -> Result<f64> {
    positive("target invariant k*", k_star)?;
    positive("reference invariant k0", k0)?;
    if k0 > k_star {
        return Err(Error::Domain {
            what: "reference invariant k0 (must not exceed k*)",
            value: k0,
        });
    }
    Ok(zero_il_phi_of_alpha(zero_il_alpha_of_t(k_star / k0)?))
}

/// Two reference states demanding different fee factors at the same
/// invariant, which no single `Phi(k)` can satisfy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConflictWitness {
    pub k_star: f64,
    pub k0_a: f64,
    pub phi_a: f64,
    pub k0_b: f64,
    pub phi_b: f64,
}

impl ConflictWitness {
    pub fn gap(&self) -> f64 {
        (self.phi_a - self.phi_b).abs()
    }

    pub fn is_conflict(&self) -> bool {
        self.phi_a != self.phi_b
    }
}

/// Required zero-IL fee factors at `k_star` for two reference invariants
/// below it.
pub fn universal_fee_conflict(k_star: f64, k0_a: f64, k0_b: f64) -> Result<ConflictWitness> {
    for k0 in [k0_a, k0_b] {
        if k0 >= k_star {
            return Err(Error::Domain {
                what: "reference invariant k0 (must be below k*)",
                value: k0,
            });
        }
    }
    Ok(ConflictWitness {
        k_star,
        k0_a,
        phi_a: required_zero_il_phi(k_star, k0_a)?,
        k0_b,
        phi_b: required_zero_il_phi(k_star, k0_b)?,
    })
}

/// Relative invariant `t*` above which the zero-IL fee exceeds a constant
/// fee `phi`: `a* = phi/(2 - 2·phi)`, `t* = 1 + a*²/(1 + 2a*)`.
pub fn zero_il_crossover(phi: f64) -> Result<f64> {
    if !(phi > 0.0 && phi < 1.0) {
        return Err(Error::Range {
            what: "constant fee factor",
            value: phi,
        });
    }
    let alpha = phi / (2.0 - 2.0 * phi);
    Ok(1.0 + alpha * alpha / (1.0 + 2.0 * alpha))
}
