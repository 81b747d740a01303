use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::SimError;
use crate::hull::{HullSpec, RestrictionParams};
use crate::loewner::{
    flow_point, flow_point_with_deriv, hit_slit, sample_driving_indexed, slit_base_interval,
    DrivingPath, SleParams,
};
use crate::rng::path_rng;
use crate::C64;

/// Flow-monitoring hit threshold as a fraction of the obstacle size.
pub const DEFAULT_DELTA_HIT: f64 = 0.02;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub n_paths: usize,
    pub n_hits: usize,
}

fn binomial_stderr(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

fn hull_hit(p: &SleParams, h: &HullSpec, path_index: u64, delta_hit: f64) -> bool {
    let d = sample_driving_indexed(p, path_index);
    let threshold = delta_hit * h.size();
    h.monitor_points().iter().any(|&z| {
        let st = flow_point(&d, z);
        st.swallowed_at.is_some() || st.min_gap < threshold
    })
}

/// Monte Carlo estimate of `P[gamma avoids the hull]` by forward-flow
/// monitoring of the hull boundary points. Deterministic for a fixed seed,
/// independent of worker count, and extending `n_paths` preserves the
/// earlier per-path outcomes.
pub fn mc_avoid_probability(
    p: &SleParams,
    h: &HullSpec,
    n_paths: usize,
    delta_hit: f64,
) -> Result<McEstimate, SimError> {
    p.validate()?;
    h.validate()?;
    let n_hits = (0..n_paths as u64)
        .into_par_iter()
        .filter(|&i| hull_hit(p, h, i, delta_hit))
        .count();
    let estimate = 1.0 - n_hits as f64 / n_paths as f64;
    Ok(McEstimate {
        estimate,
        stderr: binomial_stderr(estimate, n_paths),
        n_paths,
        n_hits,
    })
}

/// Per-path hit decisions, for estimator-concordance studies.
pub fn hull_hit_flags(
    p: &SleParams,
    h: &HullSpec,
    n_paths: usize,
    delta_hit: f64,
) -> Vec<bool> {
    (0..n_paths as u64)
        .into_par_iter()
        .map(|i| hull_hit(p, h, i, delta_hit))
        .collect()
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct B1LimitRow {
    pub eps: f64,
    pub p_hat: f64,
    pub stderr: f64,
    /// `eps^{-2} * p_hat`, the quantity converging to `alpha / x^2`
    pub scaled: f64,
    pub scaled_stderr: f64,
    /// exact finite-eps restriction prediction, scaled by `eps^{-2}`
    pub reference: f64,
    pub n_paths: usize,
}

/// Exact finite-eps hit probability of the slit `[x, x + i eps sqrt(2)]`
/// under restriction: `1 - (1 + 2 eps^2/x^2)^{-alpha/2}`.
pub fn finite_eps_hit_probability(x: f64, eps: f64, alpha: f64) -> f64 {
    1.0 - (1.0 + 2.0 * eps * eps / (x * x)).powf(-alpha / 2.0)
}

/// Estimate `eps^{-2} P[hit slit at x]` over a grid of slit sizes and
/// report the trend toward `alpha / x^2` next to the exact finite-eps
/// reference curve.
pub fn b1_limit_check(
    p: &SleParams,
    x: f64,
    eps_grid: &[f64],
    n_paths: usize,
    delta_hit: f64,
) -> Result<Vec<B1LimitRow>, SimError> {
    p.validate()?;
    if x == 0.0 {
        return Err(SimError::InvalidParams("slit base x must be nonzero".into()));
    }
    let alpha = RestrictionParams::default().alpha;
    eps_grid
        .iter()
        .map(|&eps| {
            if eps <= 0.0 {
                return Err(SimError::InvalidParams(format!("eps = {eps}")));
            }
            let hits = (0..n_paths as u64)
                .into_par_iter()
                .filter(|&i| {
                    let d = sample_driving_indexed(p, i);
                    hit_slit(&d, x, eps, delta_hit)
                })
                .count();
            let p_hat = hits as f64 / n_paths as f64;
            let se = binomial_stderr(p_hat, n_paths);
            let inv = eps.powi(-2);
            Ok(B1LimitRow {
                eps,
                p_hat,
                stderr: se,
                scaled: inv * p_hat,
                scaled_stderr: inv * se,
                reference: inv * finite_eps_hit_probability(x, eps, alpha),
                n_paths,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentFit {
    pub s_hat: f64,
    pub stderr: f64,
    /// (eps, p_hat, stderr) for the cells used in the fit
    pub cells: Vec<(f64, f64, f64)>,
    pub excluded: Vec<f64>,
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Slit-hit tolerance as a fraction of the slit scale, applied to the
/// Koebe-corrected tip distance; calibrated against the exact finite-eps
/// law at kappa = 8/3.
pub const SLIT_HIT_FACTOR: f64 = 0.5;

/// Hit weight in [0, 1] for the unzipped slit interval `[a, b]` at
/// kappa > 4.
///
/// 1 when the flow swallows the endpoints at different times, 0 when it
/// swallows them together.  Survival of a real point has a heavy
/// `t^{-(8-kappa)/(2 kappa)}` tail, so some pairs are still unresolved at
/// any affordable horizon; truncating them to "no hit" would bias every
/// cell.  For those pairs the future of the separation event depends on
/// the current state only through the gap ratio
/// `r = (g_T(a) - W_T)/(g_T(b) - W_T)`: the ratio diffuses with generator
/// `(kappa/2)(r-1)^2 f'' + (2/r - 2r + kappa (r-1)) f'`, whose harmonic
/// function vanishing at 0 and reaching 1 at 1 is the regularized
/// incomplete beta `I_r(1 - 4/kappa, 1 - 4/kappa)`.  The exact
/// continuation value `1 - I_r` closes the tail without a horizon cutoff.
pub fn interval_separation_value(d: &DrivingPath, a: f64, b: f64, kappa: f64) -> f64 {
    let e = 1.0 - 4.0 / kappa;
    let value = |r: f64| 1.0 - statrs::function::beta::beta_reg(e, e, r.clamp(0.0, 1.0));
    // stop while the pair is still resolved: the inner gap contracts
    // toward swallowing, and once it falls below the driving-jump scale
    // the discrete flow lumps "touched between" with "jumped over"
    let margin = 2.0 * (kappa * d.dt).sqrt();
    let mut xa = a;
    let mut xb = b;
    let mut w = 0.0;
    for &dwj in &d.dw {
        let ha = xa - w;
        let hb = xb - w;
        if ha.abs() < margin {
            return value(ha / hb);
        }
        xa = w + ha.signum() * (ha * ha + 4.0 * d.dt).sqrt();
        xb = w + hb.signum() * (hb * hb + 4.0 * d.dt).sqrt();
        w += dwj;
    }
    value((xa - w) / (xb - w))
}

/// Least-squares slope of `log P(hit)` against `log eps`, with a bootstrap
/// standard error over resampled binomial counts.
///
/// Two regimes share the slope machinery but use different hit events:
///
/// * `kappa <= 4`: the trace is simple and stays off the real axis, so
///   slit hits are bulk near-approaches, detected by the Koebe-corrected
///   tip distance dropping below `SLIT_HIT_FACTOR * eps`.  Resolving the
///   smallest slit needs the tip-sample spacing `sqrt(kappa*dt)` below the
///   tolerance, so n_steps should be at least
///   ~`kappa*T/(SLIT_HIT_FACTOR*eps_min)^2`.
/// * `kappa > 4`: the trace touches the axis and swallows every point, so
///   near-approach thresholds degenerate.  Instead the slit is unzipped
///   onto the real interval [`slit_base_interval`] and a hit is the sharp,
///   threshold-free event that the flow swallows the interval's endpoints
///   at different times, whose probability decays in `eps` with the same
///   boundary exponent `8/kappa - 1`.  Pairs unresolved at the horizon
///   contribute their exact continuation value instead of a binary flag
///   ([`interval_separation_value`]), so the heavy survival tail does not
///   bias the cells.
pub fn boundary_exponent_fit(
    p: &SleParams,
    x: f64,
    eps_grid: &[f64],
    n_paths: usize,
) -> Result<ExponentFit, SimError> {
    p.validate()?;
    if p.kappa.is_nan() || p.kappa >= 8.0 {
        return Err(SimError::InvalidParams(format!(
            "boundary exponent regime needs kappa < 8, got {}",
            p.kappa
        )));
    }
    if eps_grid.iter().any(|&e| e <= 0.0) {
        return Err(SimError::InvalidParams("eps grid must be positive".into()));
    }
    let mut cells = Vec::new();
    let mut excluded = Vec::new();
    for &eps in eps_grid {
        let (a, b) = slit_base_interval(x, eps);
        let total: f64 = (0..n_paths as u64)
            .into_par_iter()
            .map(|i| {
                let d = sample_driving_indexed(p, i);
                if p.kappa > 4.0 {
                    interval_separation_value(&d, a, b, p.kappa)
                } else if hit_slit(&d, x, eps, SLIT_HIT_FACTOR) {
                    1.0
                } else {
                    0.0
                }
            })
            .sum();
        if total == 0.0 {
            excluded.push(eps);
            continue;
        }
        let p_hat = total / n_paths as f64;
        cells.push((eps, p_hat, binomial_stderr(p_hat, n_paths)));
    }
    if cells.len() < 2 {
        return Err(SimError::NotEnoughCells(cells.len()));
    }
    let pts: Vec<(f64, f64)> = cells.iter().map(|c| (c.0.ln(), c.1.ln())).collect();
    let s_hat = slope(&pts);

    // bootstrap over the binomial cell counts
    let n_boot = 200;
    let mut rng = path_rng(p.seed ^ 0x626f_6f74, 0);
    let mut samples = Vec::with_capacity(n_boot);
    for _ in 0..n_boot {
        let mut resampled = Vec::with_capacity(cells.len());
        for &(eps, p_hat, _) in &cells {
            let mut k = 0usize;
            for _ in 0..n_paths {
                if rng.gen::<f64>() < p_hat {
                    k += 1;
                }
            }
            if k > 0 {
                resampled.push((eps.ln(), (k as f64 / n_paths as f64).ln()));
            }
        }
        if resampled.len() >= 2 {
            samples.push(slope(&resampled));
        }
    }
    let m = samples.iter().sum::<f64>() / samples.len() as f64;
    let var = samples.iter().map(|s| (s - m) * (s - m)).sum::<f64>()
        / (samples.len() - 1) as f64;
    Ok(ExponentFit {
        s_hat,
        stderr: var.sqrt(),
        cells,
        excluded,
    })
}

/// Empirical mean and standard error at time `T` of the local martingale
/// `|g_t'(x)|^2 B_1(g_t(x) - W_t)` with `B_1(y) = alpha / y^2`; for exact
/// SLE at kappa = 8/3 this equals `B_1(x)` at every time.
pub fn martingale_mean(
    p: &SleParams,
    x: f64,
    alpha: f64,
    n_paths: usize,
) -> Result<McEstimate, SimError> {
    p.validate()?;
    let samples: Vec<f64> = (0..n_paths as u64)
        .into_par_iter()
        .map(|i| {
            let d = sample_driving_indexed(p, i);
            let w_final: f64 = d.dw.iter().sum();
            let (st, deriv) = flow_point_with_deriv(&d, C64::new(x, 0.0));
            let y = st.z.re - w_final;
            deriv.norm_sqr() * alpha / (y * y)
        })
        .collect();
    let mean = samples.iter().sum::<f64>() / n_paths as f64;
    let var = samples
        .iter()
        .map(|s| (s - mean) * (s - mean))
        .sum::<f64>()
        / (n_paths - 1) as f64;
    Ok(McEstimate {
        estimate: mean,
        stderr: (var / n_paths as f64).sqrt(),
        n_paths,
        n_hits: 0,
    })
}
