use serde::Serialize;

use crate::error::SimError;
use crate::C64;

/// Parameters of the restriction formula: avoid probability
/// `phi'(0)^alpha` with `alpha = 5/8` at `kappa = 8/3`, boundary decay
/// exponent `s = 8/kappa - 1`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RestrictionParams {
    pub alpha: f64,
    pub s: f64,
}

impl RestrictionParams {
    pub fn for_kappa(kappa: f64) -> RestrictionParams {
        RestrictionParams {
            alpha: 5.0 / 8.0,
            s: 8.0 / kappa - 1.0,
        }
    }
}

impl Default for RestrictionParams {
    fn default() -> Self {
        RestrictionParams::for_kappa(8.0 / 3.0)
    }
}

/// Compact hull attached to the positive real axis, bounded away from 0,
/// with a closed-form uniformizing map derivative at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HullSpec {
    /// segment `[x, x + iL]`
    VerticalSlit { x: f64, l: f64 },
    /// half-disk of radius `r` around the real point `x`, `r < x`
    HalfDisk { x: f64, r: f64 },
}

impl HullSpec {
    pub fn validate(&self) -> Result<(), SimError> {
        match *self {
            HullSpec::VerticalSlit { x, l } => {
                if x <= 0.0 || l <= 0.0 {
                    return Err(SimError::InvalidHull(format!(
                        "vertical slit needs x > 0 and L > 0, got x={x}, L={l}"
                    )));
                }
            }
            HullSpec::HalfDisk { x, r } => {
                if x <= 0.0 || r <= 0.0 || r >= x {
                    return Err(SimError::InvalidHull(format!(
                        "half-disk needs 0 < r < x, got x={x}, r={r}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Derivative at 0 of the map H = upper-half-plane minus hull -> H
    /// fixing 0 and infinity with derivative 1 at infinity; in (0, 1].
    pub fn phi_prime_0(&self) -> f64 {
        match *self {
            HullSpec::VerticalSlit { x, l } => x / (x * x + l * l).sqrt(),
            HullSpec::HalfDisk { x, r } => 1.0 - (r * r) / (x * x),
        }
    }

    /// Characteristic size, used for hit thresholds.
    pub fn size(&self) -> f64 {
        match *self {
            HullSpec::VerticalSlit { l, .. } => l,
            HullSpec::HalfDisk { r, .. } => r,
        }
    }

    /// Horizontal extent from the origin, used to pick a total capacity.
    pub fn extent(&self) -> f64 {
        match *self {
            HullSpec::VerticalSlit { x, l } => x + l,
            HullSpec::HalfDisk { x, r } => x + r,
        }
    }

    /// Boundary sample points monitored by the forward flow: slit tip and
    /// midpoint; equally spaced points on the half-disk arc, dense enough
    /// that a crossing of the arc forces a near-approach of a sample.
    pub fn monitor_points(&self) -> Vec<C64> {
        match *self {
            HullSpec::VerticalSlit { x, l } => {
                vec![C64::new(x, l), C64::new(x, 0.5 * l)]
            }
            HullSpec::HalfDisk { x, r } => (0..17)
                .map(|k| {
                    let theta = std::f64::consts::PI * k as f64 / 16.0;
                    C64::new(x + r * theta.cos(), r * theta.sin())
                })
                .collect(),
        }
    }
}

/// `P[gamma subset H] = phi'(0)^alpha`, exact under restriction.
pub fn analytic_avoid_probability(
    h: &HullSpec,
    rp: &RestrictionParams,
) -> Result<f64, SimError> {
    h.validate()?;
    Ok(h.phi_prime_0().powf(rp.alpha))
}
