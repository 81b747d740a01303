use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use sle_exact::sampling::{random_ratfun, XorShift64};
use sle_exact::ward::{evolution_defect_level, lowering_compose, stability_check};
use sle_exact::{
    commutator_defect, degeneracy_apply, derive_constants, mode_expand_check, AlphaSpec,
    CheckRecord, CorrelationFamily, Rat, RatFun,
};
use sle_sim::hull::{analytic_avoid_probability, HullSpec, RestrictionParams};
use sle_sim::loewner::{sample_driving, trace, SleParams};
use sle_sim::restriction::{
    b1_limit_check, boundary_exponent_fit, martingale_mean, mc_avoid_probability,
    DEFAULT_DELTA_HIT, SLIT_HIT_FACTOR,
};

/// Default master seed; fixed so that every command is reproducible out of
/// the box.
const DEFAULT_SEED: u64 = 271828;

#[derive(Parser)]
#[command(name = "sle", version, about = "exact and Monte Carlo checks for chordal SLE")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Derive kappa and alpha exactly from the evolution constraints
    DeriveConstants {
        /// include the symbolic level-1 and level-2 defects in the report
        #[arg(long)]
        emit_defects: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// write the report here instead of stdout
        #[arg(long)]
        output: Option<String>,
    },
    /// Run the full exact verification suite on the correlation tower
    Verify {
        #[arg(long, default_value_t = 4)]
        tower_height: usize,
        /// largest mode N used in the expansion checks
        #[arg(long, default_value_t = 4)]
        mode_depth: u32,
        /// weight, as a fraction like 5/8
        #[arg(long, default_value = "5/8")]
        alpha: String,
        /// diffusivity, as a fraction like 8/3
        #[arg(long, default_value = "8/3")]
        kappa: String,
        #[arg(long)]
        output: Option<String>,
    },
    /// Sample one driving path and write the trace polyline as CSV
    Simulate {
        #[arg(long, default_value = "8/3")]
        kappa: String,
        #[arg(long, default_value_t = 1.0)]
        capacity: f64,
        #[arg(long, default_value_t = 20000)]
        steps: usize,
        /// keep every stride-th trace point (the trace costs O(steps^2/stride))
        #[arg(long, default_value_t = 20)]
        stride: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        output: Option<String>,
    },
    /// Monte Carlo estimate of the hull avoid probability vs the closed form
    Restriction {
        /// hull spec: slit:X:L or disk:X:R
        #[arg(long, default_value = "slit:1:0.5")]
        hull: String,
        #[arg(long, default_value = "8/3")]
        kappa: String,
        #[arg(long, default_value_t = 10000)]
        paths: usize,
        #[arg(long, default_value_t = 20000)]
        steps: usize,
        /// total half-plane capacity; default 4*(hull extent)^2
        #[arg(long)]
        capacity: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_DELTA_HIT)]
        delta_hit: f64,
        #[arg(long)]
        output: Option<String>,
    },
    /// Fit the boundary hitting exponent s = 8/kappa - 1 from slit hits
    Exponent {
        #[arg(long, default_value = "8/3")]
        kappa: String,
        #[arg(long, default_value_t = 1.0)]
        x: f64,
        /// comma-separated slit scales
        #[arg(long, default_value = "0.05,0.1,0.2,0.4")]
        eps_grid: String,
        #[arg(long, default_value_t = 2000)]
        paths: usize,
        /// resolving the smallest slit needs ~kappa*T/(0.5*eps_min)^2 steps
        #[arg(long, default_value_t = 100000)]
        steps: usize,
        #[arg(long)]
        capacity: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        output: Option<String>,
    },
    /// Scaled slit-hitting probabilities converging to B_1(x) = alpha/x^2
    B1Limit {
        #[arg(long, default_value_t = 1.0)]
        x: f64,
        #[arg(long, default_value = "0.05,0.1,0.2,0.4")]
        eps_grid: String,
        #[arg(long, default_value_t = 2000)]
        paths: usize,
        #[arg(long, default_value_t = 100000)]
        steps: usize,
        #[arg(long)]
        capacity: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = SLIT_HIT_FACTOR)]
        delta_hit: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<String>,
    },
    /// Sample mean of the restriction martingale |g'(x)|^2 B_1(g(x)-W)
    Martingale {
        #[arg(long, default_value_t = 3.0)]
        x: f64,
        #[arg(long, default_value_t = 0.25)]
        capacity: f64,
        #[arg(long, default_value_t = 10000)]
        paths: usize,
        #[arg(long, default_value_t = 2000)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        output: Option<String>,
    },
}

fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s).map_err(|e| anyhow!("bad rational '{s}': {e}"))
}

fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap()
}

fn parse_real(s: &str) -> Result<f64> {
    if let Ok(v) = s.parse::<f64>() {
        return Ok(v);
    }
    Ok(rat_to_f64(&parse_rat(s)?))
}

fn parse_grid(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| parse_real(t.trim()))
        .collect::<Result<Vec<_>>>()
}

fn parse_hull(s: &str) -> Result<HullSpec> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        bail!("hull must be kind:x:size, e.g. slit:1:0.5 or disk:2:1");
    }
    let a = parse_real(parts[1])?;
    let b = parse_real(parts[2])?;
    let h = match parts[0] {
        "slit" | "vertical_slit" => HullSpec::VerticalSlit { x: a, l: b },
        "disk" | "half_disk" => HullSpec::HalfDisk { x: a, r: b },
        k => bail!("unknown hull kind '{k}' (want slit or disk)"),
    };
    h.validate()?;
    Ok(h)
}

fn emit(output: &Option<String>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {path}"))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn emit_json<T: Serialize>(output: &Option<String>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(output, &text)
}

fn cmd_derive_constants(
    emit_defects: bool,
    format: Format,
    output: &Option<String>,
) -> Result<ExitCode> {
    let d = derive_constants()?;
    let ok = d.kappa == Rat::new(8.into(), 3.into()) && d.alpha == Rat::new(5.into(), 8.into());
    match format {
        Format::Json => {
            let mut v = json!({
                "kappa": d.kappa.to_string(),
                "alpha": d.alpha.to_string(),
            });
            if emit_defects {
                v["level1_defect"] = json!(d.level1_defect.to_string());
                v["level2_defect"] = json!(d.level2_defect.to_string());
            }
            emit_json(output, &v)?;
        }
        Format::Csv => {
            let mut text = String::from("kappa,alpha\n");
            writeln!(text, "{},{}", d.kappa, d.alpha)?;
            if emit_defects {
                writeln!(text, "# level1_defect,{}", d.level1_defect)?;
                writeln!(text, "# level2_defect,{}", d.level2_defect)?;
            }
            emit(output, &text)?;
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

/// The exact suite: evolution defects, mode expansion, the commutator
/// sweep, degeneracy, and the stability of the tower under the modes.
fn verify_records(
    height: usize,
    mode_depth: u32,
    alpha: &Rat,
    kappa: &Rat,
) -> Result<Vec<CheckRecord>> {
    let mut fam = CorrelationFamily::seed(AlphaSpec::Fixed(alpha.clone()));
    fam.extend_to(height);
    let kap = RatFun::constant(kappa.clone());
    let s = Rat::new(8.into(), 1.into()) / kappa - Rat::new(1.into(), 1.into());
    let mut records = Vec::new();

    for n in 1..=height {
        let d = evolution_defect_level(fam.level(n), n, &kap, &s);
        records.push(CheckRecord::from_defect(
            n,
            format!("evolution: level {n} defect"),
            &d,
        ));
    }

    records.extend(mode_expand_check(&fam, mode_depth)?);

    // commutator sweep over deterministic random rational functions
    let mut rng = XorShift64::new(0x5157);
    let funs: Vec<RatFun> = (0..20).map(|_| random_ratfun(&mut rng, 3)).collect();
    for m in -3..=3i64 {
        for n in -3..=3i64 {
            let mut worst = RatFun::zero();
            for f in &funs {
                let d = commutator_defect(m, n, &Rat::from_integer(2.into()), 3, f);
                if !d.is_zero() {
                    worst = d;
                    break;
                }
            }
            records.push(CheckRecord::from_defect(
                0,
                format!("commutator: [{m},{n}] on {} random functions", funs.len()),
                &worst,
            ));
        }
    }

    for n in 1..=height {
        let d = degeneracy_apply(&kap, n, fam.level(n));
        records.push(CheckRecord::from_defect(
            n,
            format!("degeneracy: level {n}"),
            &d,
        ));
    }

    // lowering compositions, both routes, depth <= 2
    let mode_lists: &[&[i64]] = &[&[-1], &[-2], &[-1, -1], &[-2, -1], &[-1, -2], &[-2, -2]];
    for modes in mode_lists {
        if modes.len() > height {
            continue;
        }
        let name = format!("lowering: compose {modes:?}");
        match lowering_compose(&fam, modes) {
            Ok(_) => records.push(CheckRecord::exact(0, name)),
            Err(e) => records.push(CheckRecord::failed(0, name, e.to_string())),
        }
    }

    // raising a lowered tower back: extraction vs commutation prediction
    let stab: &[(i64, &[i64])] = &[
        (1, &[]),
        (2, &[]),
        (1, &[-1]),
        (2, &[-2]),
        (1, &[-2]),
        (2, &[-1]),
        (1, &[-1, -1]),
        (2, &[-2, -1]),
    ];
    for &(raise, modes) in stab {
        if modes.len() + 1 > height {
            continue;
        }
        records.extend(stability_check(&fam, raise, modes)?);
    }

    Ok(records)
}

fn cmd_verify(
    height: usize,
    mode_depth: u32,
    alpha: &str,
    kappa: &str,
    output: &Option<String>,
) -> Result<ExitCode> {
    if height < 2 {
        bail!("tower height must be at least 2");
    }
    let alpha = parse_rat(alpha)?;
    let kappa = parse_rat(kappa)?;
    let records = verify_records(height, mode_depth, &alpha, &kappa)?;
    let all_ok = sle_exact::all_passed(&records);
    let report = json!({
        "command": "verify",
        "params": {
            "tower_height": height,
            "mode_depth": mode_depth,
            "alpha": alpha.to_string(),
            "kappa": kappa.to_string(),
        },
        "records": records,
        "all_passed": all_ok,
    });
    emit_json(output, &report)?;
    if !all_ok {
        for r in records.iter().filter(|r| !r.passed()) {
            eprintln!("FAIL {}", r.check);
        }
    }
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_simulate(
    kappa: &str,
    capacity: f64,
    steps: usize,
    stride: usize,
    seed: u64,
    output: &Option<String>,
) -> Result<ExitCode> {
    let p = SleParams {
        kappa: parse_real(kappa)?,
        total_capacity: capacity,
        n_steps: steps,
        seed,
    };
    p.validate()?;
    if stride == 0 {
        bail!("stride must be positive");
    }
    let d = sample_driving(&p);
    let tr = trace(&d, stride);
    let mut text = String::from("t,re,im\n");
    for (t, z) in tr.times.iter().zip(&tr.points) {
        writeln!(text, "{},{},{}", t, z.re, z.im)?;
    }
    emit(output, &text)?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_restriction(
    hull: &str,
    kappa: &str,
    paths: usize,
    steps: usize,
    capacity: Option<f64>,
    seed: u64,
    delta_hit: f64,
    output: &Option<String>,
) -> Result<ExitCode> {
    let h = parse_hull(hull)?;
    let kappa = parse_real(kappa)?;
    let t = capacity.unwrap_or_else(|| 4.0 * h.extent() * h.extent());
    let p = SleParams {
        kappa,
        total_capacity: t,
        n_steps: steps,
        seed,
    };
    let rp = RestrictionParams::for_kappa(kappa);
    let analytic = analytic_avoid_probability(&h, &rp)?;
    let est = mc_avoid_probability(&p, &h, paths, delta_hit)?;
    let report = json!({
        "experiment": "restriction",
        "params": {
            "hull": h,
            "kappa": kappa,
            "total_capacity": t,
            "n_steps": steps,
            "delta_hit": delta_hit,
        },
        "estimate": est.estimate,
        "stderr": est.stderr,
        "analytic": analytic,
        "n_paths": est.n_paths,
        "seed": seed,
    });
    emit_json(output, &report)?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_exponent(
    kappa: &str,
    x: f64,
    eps_grid: &str,
    paths: usize,
    steps: usize,
    capacity: Option<f64>,
    seed: u64,
    output: &Option<String>,
) -> Result<ExitCode> {
    let kappa = parse_real(kappa)?;
    let grid = parse_grid(eps_grid)?;
    let eps_max = grid.iter().cloned().fold(0.0_f64, f64::max);
    let t = capacity.unwrap_or_else(|| 4.0 * (x.abs() + eps_max) * (x.abs() + eps_max));
    let p = SleParams {
        kappa,
        total_capacity: t,
        n_steps: steps,
        seed,
    };
    let fit = boundary_exponent_fit(&p, x, &grid, paths)?;
    let report = json!({
        "experiment": "exponent",
        "params": {
            "kappa": kappa,
            "x": x,
            "eps_grid": grid,
            "total_capacity": t,
            "n_steps": steps,
        },
        "estimate": fit.s_hat,
        "stderr": fit.stderr,
        "analytic": 8.0 / kappa - 1.0,
        "cells": fit.cells,
        "excluded": fit.excluded,
        "n_paths": paths,
        "seed": seed,
    });
    emit_json(output, &report)?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_b1_limit(
    x: f64,
    eps_grid: &str,
    paths: usize,
    steps: usize,
    capacity: Option<f64>,
    seed: u64,
    delta_hit: f64,
    format: Format,
    output: &Option<String>,
) -> Result<ExitCode> {
    let grid = parse_grid(eps_grid)?;
    let eps_max = grid.iter().cloned().fold(0.0_f64, f64::max);
    let t = capacity.unwrap_or_else(|| 4.0 * (x.abs() + eps_max) * (x.abs() + eps_max));
    let p = SleParams {
        kappa: 8.0 / 3.0,
        total_capacity: t,
        n_steps: steps,
        seed,
    };
    let rows = b1_limit_check(&p, x, &grid, paths, delta_hit)?;
    let target = RestrictionParams::default().alpha / (x * x);
    match format {
        Format::Json => {
            let report = json!({
                "experiment": "b1-limit",
                "params": {
                    "x": x,
                    "eps_grid": grid,
                    "total_capacity": t,
                    "n_steps": steps,
                    "delta_hit": delta_hit,
                },
                "rows": rows,
                "analytic": target,
                "n_paths": paths,
                "seed": seed,
            });
            emit_json(output, &report)?;
        }
        Format::Csv => {
            let mut text = String::from("eps,p_hat,stderr,scaled,scaled_stderr,reference\n");
            for r in &rows {
                writeln!(
                    text,
                    "{},{},{},{},{},{}",
                    r.eps, r.p_hat, r.stderr, r.scaled, r.scaled_stderr, r.reference
                )?;
            }
            emit(output, &text)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_martingale(
    x: f64,
    capacity: f64,
    paths: usize,
    steps: usize,
    seed: u64,
    output: &Option<String>,
) -> Result<ExitCode> {
    let p = SleParams {
        kappa: 8.0 / 3.0,
        total_capacity: capacity,
        n_steps: steps,
        seed,
    };
    let alpha = RestrictionParams::default().alpha;
    let est = martingale_mean(&p, x, alpha, paths)?;
    let report = json!({
        "experiment": "martingale",
        "params": {
            "x": x,
            "total_capacity": capacity,
            "n_steps": steps,
        },
        "estimate": est.estimate,
        "stderr": est.stderr,
        "analytic": alpha / (x * x),
        "n_paths": est.n_paths,
        "seed": seed,
    });
    emit_json(output, &report)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match &cli.command {
        Cmd::DeriveConstants {
            emit_defects,
            format,
            output,
        } => cmd_derive_constants(*emit_defects, *format, output),
        Cmd::Verify {
            tower_height,
            mode_depth,
            alpha,
            kappa,
            output,
        } => cmd_verify(*tower_height, *mode_depth, alpha, kappa, output),
        Cmd::Simulate {
            kappa,
            capacity,
            steps,
            stride,
            seed,
            output,
        } => cmd_simulate(kappa, *capacity, *steps, *stride, *seed, output),
        Cmd::Restriction {
            hull,
            kappa,
            paths,
            steps,
            capacity,
            seed,
            delta_hit,
            output,
        } => cmd_restriction(hull, kappa, *paths, *steps, *capacity, *seed, *delta_hit, output),
        Cmd::Exponent {
            kappa,
            x,
            eps_grid,
            paths,
            steps,
            capacity,
            seed,
            output,
        } => cmd_exponent(kappa, *x, eps_grid, *paths, *steps, *capacity, *seed, output),
        Cmd::B1Limit {
            x,
            eps_grid,
            paths,
            steps,
            capacity,
            seed,
            delta_hit,
            format,
            output,
        } => cmd_b1_limit(*x, eps_grid, *paths, *steps, *capacity, *seed, *delta_hit, *format, output),
        Cmd::Martingale {
            x,
            capacity,
            paths,
            steps,
            seed,
            output,
        } => cmd_martingale(*x, *capacity, *paths, *steps, *seed, output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
