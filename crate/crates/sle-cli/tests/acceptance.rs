// Acceptance suite: one test per criterion, each printing a single
// PASS/FAIL line.  Run with `cargo test --test acceptance -- --nocapture`
// to see the lines for passing criteria as well.
//
// The statistical criteria (7-9) use the fixed default seed so the whole
// suite is reproducible; their tolerances are pinned in the asserts.

use std::process::Command;
use std::time::Instant;

use sle_exact::sampling::{random_ratfun, XorShift64};
use sle_exact::ward::{evolution_defect_level, lowering_compose, stability_check};
use sle_exact::{
    commutator_defect, degeneracy_apply, derive_constants, mode_expand_check, AlphaSpec,
    CorrelationFamily, Rat, RatFun,
};
use sle_sim::hull::{analytic_avoid_probability, HullSpec, RestrictionParams};
use sle_sim::loewner::SleParams;
use sle_sim::restriction::{
    boundary_exponent_fit, martingale_mean, mc_avoid_probability, DEFAULT_DELTA_HIT,
};

const SEED: u64 = 271828;

fn verdict(n: usize, name: &str, pass: bool, detail: &str) {
    let line = format!(
        "criterion {n:2} ({name}): {} {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    println!("{line}");
    eprintln!("{line}");
    assert!(pass, "{line}");
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn tower(height: usize) -> CorrelationFamily {
    let mut fam = CorrelationFamily::seed(AlphaSpec::Fixed(rat(5, 8)));
    fam.extend_to(height);
    fam
}

#[test]
fn criterion_01_constant_derivation() {
    let t0 = Instant::now();
    let d = derive_constants().expect("derivation failed");
    let elapsed = t0.elapsed();
    let pass = d.kappa == rat(8, 3) && d.alpha == rat(5, 8) && elapsed.as_secs_f64() < 10.0;
    verdict(
        1,
        "constant derivation",
        pass,
        &format!("kappa={} alpha={} in {elapsed:.2?}", d.kappa, d.alpha),
    );
}

#[test]
fn criterion_02_evolution_consistency() {
    let t0 = Instant::now();
    let fam = tower(4);
    let kap = RatFun::constant(rat(8, 3));
    let s = rat(2, 1);
    let mut all_zero = true;
    for n in 1..=4 {
        let d = evolution_defect_level(fam.level(n), n, &kap, &s);
        all_zero &= d.is_zero();
    }
    let elapsed = t0.elapsed();
    let pass = all_zero && elapsed.as_secs_f64() < 300.0;
    verdict(
        2,
        "evolution consistency levels 1-4",
        pass,
        &format!("all defects zero={all_zero} in {elapsed:.2?}"),
    );
}

#[test]
fn criterion_03_mode_structure() {
    let fam = tower(4);
    let records = mode_expand_check(&fam, 4).expect("mode expansion failed");
    let pass = sle_exact::all_passed(&records) && !records.is_empty();
    verdict(
        3,
        "highest-weight mode structure",
        pass,
        &format!("{} expansion records", records.len()),
    );
}

#[test]
fn criterion_04_commutation() {
    let mut rng = XorShift64::new(0x5157);
    let funs: Vec<RatFun> = (0..20).map(|_| random_ratfun(&mut rng, 3)).collect();
    let mut all_zero = true;
    for m in -3..=3i64 {
        for n in -3..=3i64 {
            for f in &funs {
                let d = commutator_defect(m, n, &rat(2, 1), 3, f);
                all_zero &= d.is_zero();
            }
        }
    }
    verdict(
        4,
        "operator commutation",
        all_zero,
        "49 mode pairs x 20 random functions",
    );
}

#[test]
fn criterion_05_level_two_degeneracy() {
    let fam = tower(4);
    let kap = RatFun::constant(rat(8, 3));
    let mut all_zero = true;
    for n in 1..=4 {
        all_zero &= degeneracy_apply(&kap, n, fam.level(n)).is_zero();
    }
    let d = derive_constants().expect("derivation failed");
    let l1 = d.level1_defect.to_string();
    let l2 = d.level2_defect.to_string();
    // a(3k-8)/x1^4 and (4a/3)(8a-5)/(x1^3 x2^3), in the canonical printing
    // of the field kernel; the oracle test suite checks the same forms
    // against an independent expansion.
    let symbolic_ok =
        l1 == "(3*a*k - 8*a)/(x1^4)" && l2 == "((32/3)*a^2 - (20/3)*a)/(x1^3*x2^3)";
    let pass = all_zero && symbolic_ok;
    verdict(
        5,
        "level-2 degeneracy",
        pass,
        &format!("levels 1-4 zero={all_zero}, defects [{l1}] [{l2}]"),
    );
}

#[test]
fn criterion_06_lowering_and_stability() {
    let fam = tower(3);
    let mode_lists: &[&[i64]] = &[&[-1], &[-2], &[-1, -1], &[-2, -1], &[-1, -2], &[-2, -2]];
    let mut ok = true;
    for modes in mode_lists {
        ok &= lowering_compose(&fam, modes).is_ok();
    }
    // raising back out of the lowered states; includes the level-0
    // relations [l1,l-1]B = 2 alpha B and [l2,l-2]B = 4 alpha B
    for &(raise, modes) in &[(1i64, &[][..]), (2, &[]), (1, &[-1]), (2, &[-2])] {
        let recs = stability_check(&fam, raise, modes).expect("stability check errored");
        ok &= sle_exact::all_passed(&recs);
    }
    verdict(6, "lowering composition and stability", ok, "depth <= 2");
}

#[test]
fn criterion_07_restriction_formula() {
    let rp = RestrictionParams::for_kappa(8.0 / 3.0);
    let mut pass = true;
    let mut detail = String::new();
    for (h, steps) in [
        (HullSpec::VerticalSlit { x: 1.0, l: 0.5 }, 20_000usize),
        (HullSpec::HalfDisk { x: 2.0, r: 1.0 }, 40_000),
    ] {
        let p = SleParams {
            kappa: 8.0 / 3.0,
            total_capacity: 4.0 * h.extent() * h.extent(),
            n_steps: steps,
            seed: SEED,
        };
        let analytic = analytic_avoid_probability(&h, &rp).unwrap();
        let est = mc_avoid_probability(&p, &h, 10_000, DEFAULT_DELTA_HIT).unwrap();
        let diff = (est.estimate - analytic).abs();
        let bound = 3.0 * est.stderr + 0.02;
        pass &= diff <= bound;
        detail.push_str(&format!(
            "[{h:?}: mc={:.5} exact={analytic:.5} |diff|={diff:.4} bound={bound:.4}] ",
            est.estimate
        ));
    }
    verdict(7, "restriction formula", pass, &detail);
}

#[test]
fn criterion_08_boundary_exponent() {
    let grid = [0.05, 0.1, 0.2, 0.4];
    let mut pass = true;
    let mut detail = String::new();
    // kappa=8/3 uses the bulk near-approach detector, which must resolve
    // the smallest slit, hence the large step budget; kappa=6 uses the
    // threshold-free interval-separation event, which is resolution-robust
    // and needs far fewer steps.
    for (kappa, tol, capacity, steps, paths) in [
        (8.0 / 3.0, 0.15, 4.0 * 1.4 * 1.4, 100_000usize, 2_000usize),
        (6.0, 0.20, 4.0, 50_000, 4_000),
    ] {
        let target = 8.0 / kappa - 1.0;
        let p = SleParams {
            kappa,
            total_capacity: capacity,
            n_steps: steps,
            seed: SEED,
        };
        let fit = boundary_exponent_fit(&p, 1.0, &grid, paths).unwrap();
        let rel = (fit.s_hat - target).abs() / target;
        pass &= rel <= tol;
        detail.push_str(&format!(
            "[kappa={kappa:.3}: s_hat={:.4} target={target:.4} rel_err={rel:.3} tol={tol}] ",
            fit.s_hat
        ));
    }
    verdict(8, "boundary exponent fit", pass, &detail);
}

#[test]
fn criterion_09_martingale_mean() {
    let x = 3.0;
    let p = SleParams {
        kappa: 8.0 / 3.0,
        total_capacity: 0.25,
        n_steps: 2_000,
        seed: SEED,
    };
    let alpha = RestrictionParams::default().alpha;
    let est = martingale_mean(&p, x, alpha, 10_000).unwrap();
    let target = alpha / (x * x);
    let diff = (est.estimate - target).abs();
    let pass = diff <= 3.0 * est.stderr;
    verdict(
        9,
        "martingale mean",
        pass,
        &format!(
            "mean={:.6} target={target:.6} |diff|={diff:.2e} 3*stderr={:.2e}",
            est.estimate,
            3.0 * est.stderr
        ),
    );
}

#[test]
fn criterion_10_determinism() {
    let run = |args: &[&str], threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_sle"))
            .args(args)
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .expect("failed to run binary");
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let mut pass = true;
    let cases: &[&[&str]] = &[
        &["simulate", "--steps", "2000", "--stride", "10"],
        &[
            "restriction", "--hull", "slit:1:0.5", "--paths", "100", "--steps", "2000",
        ],
        &[
            "martingale", "--paths", "500", "--steps", "500",
        ],
    ];
    for args in cases {
        let a = run(args, "1");
        let b = run(args, "1");
        let c = run(args, "4");
        pass &= a == b && a == c;
    }
    verdict(
        10,
        "determinism",
        pass,
        "byte-identical across runs and worker counts",
    );
}
