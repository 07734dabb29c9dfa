//! Subcommand implementations. Each returns the text for standard output and
//! writes any requested files.

use std::fmt::Write as _;

use qmol::{
    bell_condition, concurrence_pure, dominant_bell_component, dynamics_detuning_map,
    dynamics_tunneling_map, eigen_concurrence_map, eigensystem, propagate, trajectory, Axis,
    BellState, Grid, Params,
};

use crate::config::{Command, RunConfig, SweepKindArg};
use crate::output::{fmt6, metadata_header, pgm, sweep_csv, trajectory_csv, write_file};
use crate::verify;
use crate::{CliError, CliResult};

pub fn run(cfg: &RunConfig) -> CliResult<String> {
    match cfg.command {
        Command::Spectrum => spectrum(cfg),
        Command::Dynamics => dynamics(cfg),
        Command::Sweep => sweep(cfg),
        Command::BellTimes => bell_times(cfg),
        Command::Verify => run_verify(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub index: usize,
    pub energy: f64,
    pub concurrence: f64,
    pub dominant: BellState,
    pub weight: f64,
    pub degenerate: bool,
}

pub fn spectrum_rows(p: &Params) -> CliResult<Vec<SpectrumRow>> {
    let es = eigensystem(p)?;
    (0..4)
        .map(|k| {
            let (dominant, weight) = dominant_bell_component(es.state(k));
            Ok(SpectrumRow {
                index: k,
                energy: es.energy(k),
                concurrence: concurrence_pure(es.state(k))?,
                dominant,
                weight,
                degenerate: es.is_degenerate(k),
            })
        })
        .collect()
}

fn spectrum(cfg: &RunConfig) -> CliResult<String> {
    let rows = spectrum_rows(&cfg.params)?;
    let mut table = format!(
        "{:>5} {:>12} {:>12} {:>9} {:>9} {:>10}\n",
        "index", "energy_ueV", "concurrence", "dominant", "weight", "degenerate"
    );
    let mut csv = metadata_header(cfg);
    csv.push_str("index,energy_ueV,concurrence,dominant,weight,degenerate\n");
    for r in &rows {
        let (e, c, w) = (fmt6(r.energy), fmt6(r.concurrence), fmt6(r.weight));
        let (label, deg) = (r.dominant.label(), if r.degenerate { "yes" } else { "no" });
        writeln!(
            table,
            "{:>5} {e:>12} {c:>12} {label:>9} {w:>9} {deg:>10}",
            r.index
        )
        .unwrap();
        writeln!(csv, "{},{e},{c},{label},{w},{deg}", r.index).unwrap();
    }
    if let Some(path) = &cfg.out {
        write_file(path, csv.as_bytes())?;
    }
    Ok(table)
}

fn dynamics(cfg: &RunConfig) -> CliResult<String> {
    let traj = trajectory(&cfg.params, &cfg.init.state(), cfg.tmax, cfg.steps)?;
    let csv = trajectory_csv(cfg, &traj);
    match &cfg.out {
        Some(path) => {
            write_file(path, csv.as_bytes())?;
            let (ipk, cmax) = traj.concurrence.iter().enumerate().fold(
                (0, f64::NEG_INFINITY),
                |best, (i, &c)| if c > best.1 { (i, c) } else { best },
            );
            Ok(format!(
                "wrote {} samples to {}; max concurrence {} at t = {} ns\n",
                traj.len(),
                path.display(),
                fmt6(cmax),
                fmt6(traj.times[ipk])
            ))
        }
        None => Ok(csv),
    }
}

/// The sweep described by `cfg`. `--grid` is the parameter axis (both axes
/// for eigen sweeps); the time axis of dynamics sweeps is `[0, tmax]` with
/// `steps` points.
pub fn build_sweep(cfg: &RunConfig) -> CliResult<Grid> {
    let g = cfg.grid;
    let time = || Axis::new("t_ns", 0.0, cfg.tmax, cfg.steps, "ns");
    let grid = match cfg.kind {
        SweepKindArg::Eigen => {
            let x = Axis::new("eps1_ueV", g.min, g.max, g.count, "ueV")?;
            let y = Axis::new("eps2_ueV", g.min, g.max, g.count, "ueV")?;
            eigen_concurrence_map(&cfg.params, &x, &y, cfg.state)?
        }
        SweepKindArg::TunnelingDynamics => {
            let y = Axis::new("d_over_j", g.min, g.max, g.count, "")?;
            dynamics_tunneling_map(&cfg.params, &time()?, &y, cfg.init)?
        }
        SweepKindArg::DetuningDynamics => {
            let y = Axis::new("eps1_ueV", g.min, g.max, g.count, "ueV")?;
            dynamics_detuning_map(&cfg.params, &time()?, &y, cfg.init, cfg.line)?
        }
    };
    Ok(grid)
}

fn sweep(cfg: &RunConfig) -> CliResult<String> {
    let grid = build_sweep(cfg)?;
    let csv = sweep_csv(cfg, &grid);
    if let Some(path) = &cfg.pgm {
        write_file(path, &pgm(&grid))?;
    }
    let (lo, hi) = grid.min_max();
    let summary = format!(
        "{} sweep: {}x{} cells, concurrence in [{}, {}], {} degenerate cells\n",
        cfg.kind.name(),
        grid.x.count,
        grid.y.count,
        fmt6(lo),
        fmt6(hi),
        grid.degenerate_count()
    );
    match &cfg.out {
        Some(path) => {
            write_file(path, csv.as_bytes())?;
            Ok(summary)
        }
        None => Ok(csv),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellRow {
    pub n: u32,
    pub m: u32,
    pub ratio: f64,
    pub delta: f64,
    pub t_e: f64,
    /// Concurrence after propagating the initial state to `t_e`.
    pub concurrence: f64,
}

pub fn bell_row(n: u32, m: u32, j: f64, init: qmol::InitialState) -> CliResult<BellRow> {
    let c = bell_condition(n, m, j)?;
    let psi = propagate(&c.params(), &init.state(), c.t_e)?;
    Ok(BellRow {
        n,
        m,
        ratio: c.ratio,
        delta: c.delta,
        t_e: c.t_e,
        concurrence: concurrence_pure(&psi)?,
    })
}

/// One `(n, m)` if given, otherwise every valid pair with `n ≤ 5`.
fn bell_times(cfg: &RunConfig) -> CliResult<String> {
    let pairs: Vec<(u32, u32)> = match cfg.bell {
        Some(pair) => vec![pair],
        None => (1..=5u32)
            .flat_map(|n| (1..2 * n).step_by(2).map(move |m| (n, m)))
            .collect(),
    };
    let mut out = format!(
        "{:>3} {:>3} {:>10} {:>12} {:>10} {:>12}\n",
        "n", "m", "ratio", "delta1_ueV", "t_e_ns", "concurrence"
    );
    for (n, m) in pairs {
        let r = bell_row(n, m, cfg.params.j(), cfg.init)?;
        writeln!(
            out,
            "{n:>3} {m:>3} {:>10} {:>12} {:>10} {:>12}",
            fmt6(r.ratio),
            fmt6(r.delta),
            fmt6(r.t_e),
            fmt6(r.concurrence)
        )
        .unwrap();
    }
    Ok(out)
}

fn run_verify() -> CliResult<String> {
    let checks = verify::run(&verify::Suite::default())?;
    let mut out = String::new();
    for c in &checks {
        writeln!(out, "{c}").unwrap();
    }
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name)
        .collect();
    if failed.is_empty() {
        writeln!(out, "all {} checks passed", checks.len()).unwrap();
        Ok(out)
    } else {
        Err(CliError::Verification(format!(
            "{out}failed: {}",
            failed.join(", ")
        )))
    }
}
