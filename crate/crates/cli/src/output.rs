//! CSV and PGM serialization. All numbers use fixed six-decimal formatting.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use qmol::{Grid, Trajectory};

use crate::config::RunConfig;
use crate::{CliError, CliResult};

/// `{:.6}` without a negative zero.
pub fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// `# qmol <command>` followed by one `# key = value` line per setting.
pub fn metadata_header(cfg: &RunConfig) -> String {
    let mut s = format!("# qmol {}\n", cfg.command.name());
    for (k, v) in cfg.metadata() {
        writeln!(s, "# {k} = {v}").unwrap();
    }
    s
}

pub fn trajectory_csv(cfg: &RunConfig, traj: &Trajectory) -> String {
    let mut s = metadata_header(cfg);
    s.push_str("t_ns,P_LL,P_LR,P_RL,P_RR,concurrence\n");
    for ((t, pop), c) in traj
        .times
        .iter()
        .zip(&traj.populations)
        .zip(&traj.concurrence)
    {
        let cols: Vec<String> = std::iter::once(*t)
            .chain(pop.as_array())
            .chain([*c])
            .map(fmt6)
            .collect();
        s.push_str(&cols.join(","));
        s.push('\n');
    }
    s
}

/// First row holds the x values, first column the y values.
pub fn sweep_csv(cfg: &RunConfig, grid: &Grid) -> String {
    let mut s = metadata_header(cfg);
    s.push_str(&format!("{}\\{}", grid.y.name, grid.x.name));
    for x in grid.x.values() {
        s.push(',');
        s.push_str(&fmt6(x));
    }
    s.push('\n');
    for (y, row) in grid.y.values().into_iter().zip(&grid.values) {
        s.push_str(&fmt6(y));
        for &v in row {
            s.push(',');
            s.push_str(&fmt6(v));
        }
        s.push('\n');
    }
    s
}

/// Binary 8-bit graymap, pixel = round(255·C); the first row is `y.min`.
pub fn pgm(grid: &Grid) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", grid.x.count, grid.y.count).into_bytes();
    for row in &grid.values {
        out.extend(
            row.iter()
                .map(|&v| (255.0 * v).round().clamp(0.0, 255.0) as u8),
        );
    }
    out
}

pub fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes)
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use qmol::{Axis, Params, SweepKind};

    fn grid(values: Vec<Vec<f64>>) -> Grid {
        let (w, h) = (values[0].len(), values.len());
        Grid {
            kind: SweepKind::Eigen { state: 0 },
            base: Params::resonant(0.0, 0.0, 25.0).unwrap(),
            x: Axis::new("eps1", -1.0, 1.0, w, "ueV").unwrap(),
            y: Axis::new("eps2", -1.0, 1.0, h, "ueV").unwrap(),
            degenerate: vec![vec![false; w]; h],
            values,
        }
    }

    #[test]
    fn negative_zero_is_normalized() {
        assert_eq!(fmt6(-1e-12), "0.000000");
        assert_eq!(fmt6(-0.5), "-0.500000");
        assert_eq!(fmt6(1.0 / 3.0), "0.333333");
    }

    #[test]
    fn pgm_layout() {
        let bytes = pgm(&grid(vec![
            vec![0.0, 1.0, 0.5],
            vec![0.25, 1.0 + 1e-12, -1e-15],
        ]));
        let header = b"P5\n3 2\n255\n";
        assert_eq!(&bytes[..header.len()], header);
        assert_eq!(&bytes[header.len()..], &[0, 255, 128, 64, 255, 0]);
    }

    #[test]
    fn constant_zero_pgm() {
        let bytes = pgm(&grid(vec![vec![0.0; 4]; 3]));
        assert!(bytes[b"P5\n4 3\n255\n".len()..].iter().all(|&b| b == 0));
    }
}
