// Concordance diagnostics: per path, the flow hit flag next to the exact
// polyline distance to the hull, so threshold choices can be compared
// offline.

use rayon::prelude::*;
use sle_sim::hull::HullSpec;
use sle_sim::loewner::{sample_driving_indexed, trace, SleParams};
use sle_sim::restriction::{hull_hit_flags, DEFAULT_DELTA_HIT};
use sle_sim::C64;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n_paths: usize = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(300);
    let n_steps: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(8000);
    let stride: usize = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(2);
    let cases = [
        (HullSpec::VerticalSlit { x: 1.0, l: 0.5 }, 9.0),
        (HullSpec::HalfDisk { x: 2.0, r: 1.0 }, 36.0),
    ];
    for (h, t) in cases {
        let p = SleParams {
            kappa: 8.0 / 3.0,
            total_capacity: t,
            n_steps,
            seed: 1234,
        };
        let flow = hull_hit_flags(&p, &h, n_paths, DEFAULT_DELTA_HIT);
        let dists: Vec<f64> = (0..n_paths as u64)
            .into_par_iter()
            .map(|i| {
                let d = sample_driving_indexed(&p, i);
                let tr = trace(&d, stride);
                match h {
                    HullSpec::VerticalSlit { x, l } => {
                        tr.distance_to_segment(C64::new(x, 0.0), C64::new(x, l))
                    }
                    HullSpec::HalfDisk { x, r } => {
                        (tr.distance_to_point(C64::new(x, 0.0)) - r).max(0.0)
                    }
                }
            })
            .collect();
        let n_flow = flow.iter().filter(|&&f| f).count();
        println!("{h:?}: flow hits {n_flow}/{n_paths}");
        for mult in [0.5, 1.0, 2.0, 3.0, 5.0, 8.0] {
            let thr = mult * DEFAULT_DELTA_HIT * h.size();
            let hits = dists.iter().filter(|&&d| d < thr).count();
            let agree = (0..n_paths)
                .filter(|&i| (dists[i] < thr) == flow[i])
                .count();
            println!(
                "  poly thr {mult}x: hits {hits}, agreement {:.4}",
                agree as f64 / n_paths as f64
            );
        }
        let thr = DEFAULT_DELTA_HIT * h.size();
        for (lo_m, hi_m) in [(0.1, 5.0), (0.2, 5.0), (0.2, 10.0), (0.05, 10.0)] {
            let false_far = (0..n_paths)
                .filter(|&i| flow[i] && dists[i] >= hi_m * thr)
                .count();
            let missed_deep = (0..n_paths)
                .filter(|&i| !flow[i] && dists[i] < lo_m * thr)
                .count();
            println!(
                "  hard disagreements lo={lo_m} hi={hi_m}: flow-hit-but-far {false_far}, deep-but-missed {missed_deep}"
            );
        }
    }
}
