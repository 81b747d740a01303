use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::SimError;
use crate::rng::path_rng;
use crate::C64;

/// Chordal simulation parameters: uniform half-plane-capacity steps
/// `dt = total_capacity / n_steps`, driving `W_t = sqrt(kappa) * B_t`.
#[derive(Clone, Debug, Serialize)]
pub struct SleParams {
    pub kappa: f64,
    pub total_capacity: f64,
    pub n_steps: usize,
    pub seed: u64,
}

impl SleParams {
    pub fn validate(&self) -> Result<(), SimError> {
        if self.kappa.is_nan() || self.kappa < 0.0 {
            return Err(SimError::InvalidParams(format!("kappa = {}", self.kappa)));
        }
        if self.total_capacity.is_nan() || self.total_capacity <= 0.0 {
            return Err(SimError::InvalidParams(format!(
                "total_capacity = {}",
                self.total_capacity
            )));
        }
        if self.n_steps == 0 {
            return Err(SimError::InvalidParams("n_steps = 0".into()));
        }
        Ok(())
    }

    pub fn dt(&self) -> f64 {
        self.total_capacity / self.n_steps as f64
    }
}

/// Discretized driving function: piecewise constant over capacity steps,
/// bit-reproducible from `(seed, path_index)`.
#[derive(Clone, Debug)]
pub struct DrivingPath {
    pub dt: f64,
    pub dw: Vec<f64>,
    pub seed: u64,
    pub path_index: u64,
}

impl DrivingPath {
    /// `W` at each step boundary: length `n_steps + 1`, starts at 0.
    pub fn cumulative(&self) -> Vec<f64> {
        let mut w = Vec::with_capacity(self.dw.len() + 1);
        let mut acc = 0.0;
        w.push(acc);
        for d in &self.dw {
            acc += d;
            w.push(acc);
        }
        w
    }

    pub fn n_steps(&self) -> usize {
        self.dw.len()
    }
}

pub fn sample_driving(p: &SleParams) -> DrivingPath {
    sample_driving_indexed(p, 0)
}

/// Increments i.i.d. `sqrt(kappa * dt) * N(0,1)` from the per-path stream.
pub fn sample_driving_indexed(p: &SleParams, path_index: u64) -> DrivingPath {
    let dt = p.dt();
    let scale = (p.kappa * dt).sqrt();
    let mut rng = path_rng(p.seed, path_index);
    let dw = (0..p.n_steps)
        .map(|_| {
            let g: f64 = rng.sample(StandardNormal);
            scale * g
        })
        .collect();
    DrivingPath {
        dt,
        dw,
        seed: p.seed,
        path_index,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepResult {
    Point(C64),
    /// The point lies on the slit grown during this step.
    Swallowed,
}

/// One exact step of the forward flow with frozen driving `w`:
/// `z -> w + sqrt((z - w)^2 + 4 dt)`, branch mapping H to H.
pub fn step_map(z: C64, w: f64, dt: f64) -> StepResult {
    let h = z - w;
    if h.im == 0.0 {
        // boundary point: real closed form, side of the driving preserved
        if h.re == 0.0 {
            return StepResult::Swallowed;
        }
        let r = (h.re * h.re + 4.0 * dt).sqrt();
        return StepResult::Point(C64::new(w + h.re.signum() * r, 0.0));
    }
    if h.re == 0.0 && h.im * h.im <= 4.0 * dt {
        // on the vertical slit grown this step
        return StepResult::Swallowed;
    }
    let val = h * h + 4.0 * dt;
    let mut s = val.sqrt();
    if s.im < 0.0 {
        s = -s;
    }
    StepResult::Point(C64::new(w, 0.0) + s)
}

/// Trajectory summary of one tracked point under the forward flow.
#[derive(Clone, Debug)]
pub struct FlowState {
    /// final (or frozen-at-swallowing) image of the point
    pub z: C64,
    pub swallowed_at: Option<f64>,
    /// running minimum of |z_t - W_t|
    pub min_gap: f64,
    /// running minimum of |z_t - W_t| / |g_t'(z_0)|, a Koebe-type proxy
    /// for the physical distance from z_0 to the growing tip; unlike
    /// min_gap it does not collapse when z_0 is swallowed by a loop
    /// closing at a distance, so it separates trace contact from passive
    /// swallowing for kappa > 4
    pub min_phys_gap: f64,
}

pub fn flow_point(d: &DrivingPath, z0: C64) -> FlowState {
    flow(d, z0).0
}

/// As `flow_point`, also returning the final `g_t'(z0)` accumulated from
/// the closed-form per-step derivative `h / (g(z) - w)`.
pub fn flow_point_with_deriv(d: &DrivingPath, z0: C64) -> (FlowState, C64) {
    flow(d, z0)
}

fn flow(d: &DrivingPath, z0: C64) -> (FlowState, C64) {
    let mut z = z0;
    let mut w = 0.0;
    let mut deriv = C64::new(1.0, 0.0);
    let mut min_gap = (z - w).norm();
    let mut min_phys_gap = min_gap;
    let init_side = (z0.re - 0.0).signum();
    for (j, &dwj) in d.dw.iter().enumerate() {
        match step_map(z, w, d.dt) {
            StepResult::Swallowed => {
                return (
                    FlowState {
                        z,
                        swallowed_at: Some(j as f64 * d.dt),
                        min_gap: 0.0,
                        min_phys_gap,
                    },
                    deriv,
                );
            }
            StepResult::Point(next) => {
                deriv *= (z - w) / (next - w);
                z = next;
            }
        }
        w += dwj;
        // a boundary point overtaken by the driving is absorbed
        if z.im == 0.0 && z0.im == 0.0 && (z.re - w).signum() != init_side {
            return (
                FlowState {
                    z,
                    swallowed_at: Some((j + 1) as f64 * d.dt),
                    min_gap: 0.0,
                    min_phys_gap,
                },
                deriv,
            );
        }
        let gap = (z - w).norm();
        if gap < min_gap {
            min_gap = gap;
        }
        let phys = gap / deriv.norm();
        if phys < min_phys_gap {
            min_phys_gap = phys;
        }
    }
    (
        FlowState {
            z,
            swallowed_at: None,
            min_gap,
            min_phys_gap,
        },
        deriv,
    )
}

/// Trace polyline: `gamma(t_i)` at capacities `t_i = i * stride * dt`.
#[derive(Clone, Debug)]
pub struct TracePolyline {
    pub times: Vec<f64>,
    pub points: Vec<C64>,
}

pub(crate) fn orient(a: C64, b: C64, c: C64) -> f64 {
    (b.re - a.re) * (c.im - a.im) - (b.im - a.im) * (c.re - a.re)
}

pub(crate) fn segments_intersect(a: C64, b: C64, p: C64, q: C64) -> bool {
    let d1 = orient(p, q, a);
    let d2 = orient(p, q, b);
    let d3 = orient(a, b, p);
    let d4 = orient(a, b, q);
    if ((d1 > 0.0) != (d2 > 0.0)) && ((d3 > 0.0) != (d4 > 0.0)) {
        return true;
    }
    // collinear touches count as intersections
    let on = |a: C64, b: C64, c: C64| {
        orient(a, b, c) == 0.0
            && c.re >= a.re.min(b.re)
            && c.re <= a.re.max(b.re)
            && c.im >= a.im.min(b.im)
            && c.im <= a.im.max(b.im)
    };
    on(p, q, a) || on(p, q, b) || on(a, b, p) || on(a, b, q)
}

fn point_segment_dist(c: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let n2 = ab.norm_sqr();
    if n2 == 0.0 {
        return (c - a).norm();
    }
    let t = (((c - a).re * ab.re + (c - a).im * ab.im) / n2).clamp(0.0, 1.0);
    (c - (a + ab * t)).norm()
}

fn segment_segment_dist(a: C64, b: C64, p: C64, q: C64) -> f64 {
    if segments_intersect(a, b, p, q) {
        return 0.0;
    }
    point_segment_dist(a, p, q)
        .min(point_segment_dist(b, p, q))
        .min(point_segment_dist(p, a, b))
        .min(point_segment_dist(q, a, b))
}

impl TracePolyline {
    /// Does the polyline cross the segment `[p, q]`?
    pub fn crosses_segment(&self, p: C64, q: C64) -> bool {
        self.points
            .windows(2)
            .any(|w| segments_intersect(w[0], w[1], p, q))
    }

    /// Euclidean distance from the polyline to the segment `[p, q]`.
    pub fn distance_to_segment(&self, p: C64, q: C64) -> f64 {
        let mut best = f64::INFINITY;
        for w in self.points.windows(2) {
            let d = segment_segment_dist(w[0], w[1], p, q);
            if d < best {
                best = d;
                if best == 0.0 {
                    break;
                }
            }
        }
        best
    }

    /// Euclidean distance from the polyline to a point.
    pub fn distance_to_point(&self, c: C64) -> f64 {
        self.points
            .windows(2)
            .map(|w| point_segment_dist(c, w[0], w[1]))
            .fold(f64::INFINITY, f64::min)
    }
}

fn inverse_step(z: C64, w: f64, dt: f64) -> C64 {
    let h = z - w;
    let val = h * h - 4.0 * dt;
    if h.im == 0.0 && val.im == 0.0 && val.re >= 0.0 {
        return C64::new(w + h.re.signum() * val.re.sqrt(), 0.0);
    }
    let mut s = val.sqrt();
    if s.im < 0.0 {
        s = -s;
    }
    C64::new(w, 0.0) + s
}

/// Tip positions by composing the inverse slit maps in reverse order,
/// starting from the driving value; cost O(n^2 / stride).
pub fn trace(d: &DrivingPath, stride: usize) -> TracePolyline {
    assert!(stride >= 1);
    let w = d.cumulative();
    let n = d.n_steps();
    let mut times = Vec::new();
    let mut points = Vec::new();
    let mut i = 0;
    loop {
        let mut z = C64::new(w[i], 0.0);
        for j in (0..i).rev() {
            z = inverse_step(z, w[j], d.dt);
        }
        if z.im < 0.0 {
            // round-off can leave a tiny negative part on boundary touches
            z.im = 0.0;
        }
        times.push(i as f64 * d.dt);
        points.push(z);
        if i == n {
            break;
        }
        i = (i + stride).min(n);
    }
    TracePolyline { times, points }
}

/// Does the trace hit the vertical slit `[x, x + i eps sqrt(2)]`?
///
/// Points along the slit are flowed and a hit is declared when the
/// Koebe-corrected tip distance drops below `delta_hit * eps`. Swallowing
/// alone is deliberately not a hit: for kappa > 4 a point is usually
/// swallowed by a loop closing far away from it.
pub fn hit_slit(d: &DrivingPath, x: f64, eps: f64, delta_hit: f64) -> bool {
    assert!(x != 0.0 && eps > 0.0);
    let height = eps * std::f64::consts::SQRT_2;
    for frac in [1.0, 0.75, 0.5, 0.25] {
        let st = flow_point(d, C64::new(x, height * frac));
        if st.min_phys_gap < delta_hit * eps {
            return true;
        }
    }
    false
}

/// Image of the vertical slit `[x, x + i eps sqrt(2)]` under the map that
/// unzips it from the half-plane (`z -> sqrt((z - x)^2 + h^2)` up to
/// translation): the real interval `[s - h, s + h]` with
/// `s = sqrt(x^2 + h^2)`, `h = eps sqrt(2)`.
pub fn slit_base_interval(x: f64, eps: f64) -> (f64, f64) {
    let h = eps * std::f64::consts::SQRT_2;
    let s = x.abs().hypot(h);
    (x.signum() * (s - h), x.signum() * (s + h))
}

/// Does the flow swallow the two real points at different times?
///
/// For kappa in (4, 8) every real point is eventually swallowed, and the
/// hull swallows both endpoints of an interval at once exactly when the
/// curve closes a loop over the whole interval without touching it.
/// Separation of the swallowing times therefore marks a boundary hit of
/// `[a, b]` with no geometric threshold: the event is a sharp sign change
/// of `g_t(z) - W_t`, robust at the discretization scale.  A point not
/// swallowed within the horizon counts as swallowed at infinity.
pub fn interval_separated(d: &DrivingPath, a: f64, b: f64) -> bool {
    let sa = flow_point(d, C64::new(a, 0.0)).swallowed_at;
    let sb = flow_point(d, C64::new(b, 0.0)).swallowed_at;
    sa != sb
}

/// Threshold-free slit-hit test: the whole slit is flowed as a polyline
/// and a hit is declared when the slit grown during a step crosses it (or
/// lands on a flowed point).  A passive enclosure -- the driving
/// overtaking the flowed base point -- ends the test with no hit, since
/// an enclosed slit is unreachable.  Like every detector here this is a
/// discretization-scale proxy: the chords between flowed points distort
/// strongly near swallowing, so isolated misclassifications remain.
/// Useful as an independent cross-check on [`hit_slit`].
pub fn slit_crossed(d: &DrivingPath, x: f64, eps: f64, n_points: usize) -> bool {
    assert!(x != 0.0 && eps > 0.0 && n_points >= 2);
    let height = eps * std::f64::consts::SQRT_2;
    let mut pts: Vec<C64> = (0..n_points)
        .map(|k| C64::new(x, height * k as f64 / (n_points - 1) as f64))
        .collect();
    let mut w = 0.0;
    let init_side = x.signum();
    let growth = 2.0 * d.dt.sqrt();
    for &dwj in &d.dw {
        let bot = C64::new(w, 0.0);
        let top = C64::new(w, growth);
        if pts.windows(2).any(|s| segments_intersect(s[0], s[1], bot, top)) {
            return true;
        }
        for p in pts.iter_mut() {
            match step_map(*p, w, d.dt) {
                // a flowed slit point on the growth slit is a contact
                StepResult::Swallowed => return true,
                StepResult::Point(q) => *p = q,
            }
        }
        w += dwj;
        if (pts[0].re - w).signum() != init_side {
            return false;
        }
    }
    false
}
