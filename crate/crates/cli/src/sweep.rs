use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use boson_bounds::{bound_report, bound_report_with_phi, BoundReport, Potential, Problem};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{Format, Shape};
use crate::CliError;

pub const CSV_HEADER: &str = "v,F2_lower,FG_upper,Fphi_upper,q_opt,b_opt,sigma2";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub potential: Shape,
    pub lambda: f64,
    pub mu: f64,
    pub d: u32,
    pub v_min: f64,
    pub v_max: f64,
    pub steps: usize,
    pub include_phi: bool,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.v_min > 0.0 && self.v_min < self.v_max && self.v_max.is_finite()) {
            return Err(CliError::Usage(format!(
                "need 0 < v_min < v_max, got v_min={} v_max={}",
                self.v_min, self.v_max
            )));
        }
        if self.steps < 2 {
            return Err(CliError::Usage(format!(
                "need at least 2 steps, got {}",
                self.steps
            )));
        }
        if self.format == Format::Text {
            return Err(CliError::Usage(
                "sweep supports --format csv or json".into(),
            ));
        }
        Ok(())
    }

    /// Uniform grid with both endpoints hit exactly.
    pub fn grid(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.v_max
                } else {
                    self.v_min + (self.v_max - self.v_min) * i as f64 / last as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub v: f64,
    #[serde(rename = "F2_lower")]
    pub f2_lower: f64,
    #[serde(rename = "FG_upper")]
    pub fg_upper: f64,
    #[serde(rename = "Fphi_upper")]
    pub fphi_upper: Option<f64>,
    pub q_opt: Option<f64>,
    pub b_opt: Option<f64>,
    pub sigma2: f64,
}

impl SweepRow {
    pub fn from_report(v: f64, r: &BoundReport) -> Self {
        Self {
            v,
            f2_lower: r.lower,
            fg_upper: r.upper_gaussian,
            fphi_upper: r.upper_phi,
            q_opt: r.q_opt,
            b_opt: r.b_opt,
            sigma2: r.sigma2,
        }
    }

    /// `F₂ ≤ F_φ ≤ F_G`, up to rounding in the last digits.
    pub fn is_ordered(&self) -> bool {
        let slack = 1e-9 * self.fg_upper.abs().max(1.0);
        match self.fphi_upper {
            Some(phi) => self.f2_lower <= phi + slack && phi <= self.fg_upper + slack,
            None => self.f2_lower <= self.fg_upper + slack,
        }
    }
}

/// Rows over the grid, computed in parallel and returned in grid order.
pub fn compute_rows(cfg: &SweepConfig) -> Result<Vec<SweepRow>, CliError> {
    cfg.validate()?;
    let pot = Potential::new(cfg.potential.into(), cfg.lambda, cfg.mu)?;
    let problems = cfg
        .grid()
        .into_iter()
        .map(|v| Problem::new(pot, cfg.d, v))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = problems
        .par_iter()
        .map(|prob| {
            let report = if cfg.include_phi {
                bound_report_with_phi(prob)
            } else {
                bound_report(prob)
            };
            report.map(|r| SweepRow::from_report(prob.v(), &r))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(bad) = rows.iter().find(|r| !r.is_ordered()) {
        return Err(CliError::Failure(format!(
            "bound ordering violated at v={}: {bad:?}",
            bad.v
        )));
    }
    Ok(rows)
}

fn field(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_csv(out: &mut dyn Write, rows: &[SweepRow]) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.v,
            r.f2_lower,
            r.fg_upper,
            field(r.fphi_upper),
            field(r.q_opt),
            field(r.b_opt),
            r.sigma2
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    config: &'a SweepConfig,
    rows: &'a [SweepRow],
}

pub fn write_json(
    out: &mut dyn Write,
    cfg: &SweepConfig,
    rows: &[SweepRow],
) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, &SweepDocument { config: cfg, rows })
        .map_err(|e| CliError::Failure(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

pub fn cmd_sweep(cfg: &SweepConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let rows = compute_rows(cfg)?;
    let mut file;
    let sink: &mut dyn Write = match &cfg.out {
        Some(path) => {
            let f = File::create(path)
                .map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display())))?;
            file = BufWriter::new(f);
            &mut file
        }
        None => stdout,
    };
    match cfg.format {
        Format::Json => write_json(sink, cfg, &rows)?,
        _ => write_csv(sink, &rows)?,
    }
    sink.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(steps: usize, v_min: f64, v_max: f64) -> SweepConfig {
        SweepConfig {
            potential: Shape::Oscillator,
            lambda: 1.0,
            mu: 1.0,
            d: 3,
            v_min,
            v_max,
            steps,
            include_phi: false,
            out: None,
            format: Format::Csv,
        }
    }

    #[test]
    fn grid_hits_endpoints() {
        assert_eq!(config(2, 5.0, 10.0).grid(), vec![5.0, 10.0]);
        let g = config(10, 2.0, 20.0).grid();
        assert_eq!(g.len(), 10);
        assert_eq!(g[0], 2.0);
        assert_eq!(g[9], 20.0);
        assert!((g[1] - 4.0).abs() < 1e-14);
    }

    #[test]
    fn invalid_configs() {
        assert!(matches!(
            config(1, 1.0, 2.0).validate(),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            config(5, 2.0, 2.0).validate(),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            config(5, 0.0, 2.0).validate(),
            Err(CliError::Usage(_))
        ));
        let mut c = config(5, 1.0, 2.0);
        c.format = Format::Text;
        assert!(c.validate().is_err());
    }

    #[test]
    fn absent_phi_leaves_empty_fields() {
        let rows = compute_rows(&config(2, 1.0, 2.0)).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row.len(), 7);
        assert_eq!(&row[3..6], &["", "", ""]);
        assert!(!text.contains('\r'));
    }

    #[test]
    fn ordering_guard() {
        let mut row = SweepRow {
            v: 1.0,
            f2_lower: 1.0,
            fg_upper: 2.0,
            fphi_upper: Some(1.5),
            q_opt: Some(2.5),
            b_opt: Some(1.0),
            sigma2: 1.0,
        };
        assert!(row.is_ordered());
        row.fphi_upper = Some(2.1);
        assert!(!row.is_ordered());
        row.fphi_upper = Some(0.9);
        assert!(!row.is_ordered());
    }
}
