// Interval-separation detector vs the exact continuum law at kappa = 6.

use rayon::prelude::*;
use sle_sim::loewner::{sample_driving_indexed, slit_base_interval, SleParams};
use sle_sim::restriction::interval_separation_value;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n_paths: usize = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(5000);
    let n_steps: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(50000);
    let t_total: f64 = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(4.0);
    let x = 1.0;
    let eps_grid = [0.05, 0.1, 0.2, 0.4];
    let truth6 = [0.294_805_62, 0.371_037_67, 0.465_549_20, 0.577_819_21];
    let p = SleParams { kappa: 6.0, total_capacity: t_total, n_steps, seed: 31 };
    println!("paths={n_paths} steps={n_steps} T={t_total} dw scale={:.5}", (6.0 * p.dt()).sqrt());
    for (k, &eps) in eps_grid.iter().enumerate() {
        let (a, b) = slit_base_interval(x, eps);
        let total: f64 = (0..n_paths as u64)
            .into_par_iter()
            .map(|i| interval_separation_value(&sample_driving_indexed(&p, i), a, b, 6.0))
            .sum();
        println!("eps={eps} truth={:.5} estimate={:.5}", truth6[k], total / n_paths as f64);
    }
}
