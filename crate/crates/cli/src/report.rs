use std::io::Write;

use boson_bounds::{
    bound_report, bound_report_with_phi, delta_1d_phi, delta_exact_energy, dimensionless_coupling,
    recover_energy, BoundReport, ParticleCount, PhysicalSystem, Potential, Problem,
};
use serde_json::{json, Value};

use crate::args::{BoundsArgs, Format, PhysicalArgs, PhysicalShape};
use crate::sweep::{write_csv, SweepRow};
use crate::CliError;

fn report_for(prob: &Problem, phi: bool) -> Result<BoundReport, CliError> {
    Ok(if phi {
        bound_report_with_phi(prob)?
    } else {
        bound_report(prob)?
    })
}

fn optional(x: Option<f64>) -> String {
    x.map_or_else(|| "undefined".to_string(), |v| v.to_string())
}

/// Aligned `key value` lines.
fn write_pairs(out: &mut dyn Write, pairs: &[(&str, String)]) -> std::io::Result<()> {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in pairs {
        writeln!(out, "{k:<width$}  {v}")?;
    }
    Ok(())
}

fn report_pairs(report: &BoundReport) -> Vec<(&'static str, String)> {
    let mut pairs = vec![
        ("lower", report.lower.to_string()),
        ("upper_gaussian", report.upper_gaussian.to_string()),
    ];
    if let Some(phi) = report.upper_phi {
        pairs.push(("upper_phi", phi.to_string()));
        pairs.push(("q_opt", optional(report.q_opt)));
        pairs.push(("b_opt", optional(report.b_opt)));
    }
    pairs.push(("sigma2", report.sigma2.to_string()));
    pairs.push(("asymptote_lower", optional(report.asymptote_lower)));
    pairs.push(("asymptote_upper", optional(report.asymptote_upper)));
    pairs
}

fn emit_json(out: &mut dyn Write, value: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Failure(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

pub fn cmd_bounds(args: &BoundsArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let prob = args.shape.problem(args.v)?;
    let report = report_for(&prob, args.phi)?;
    match args.format {
        Format::Text => {
            let mut pairs = vec![
                ("potential", prob.kind().to_string()),
                ("lambda", prob.lambda().to_string()),
                ("mu", prob.mu().to_string()),
                ("d", prob.d().to_string()),
                ("v", prob.v().to_string()),
            ];
            pairs.extend(report_pairs(&report));
            write_pairs(out, &pairs)?;
        }
        Format::Csv => write_csv(out, &[SweepRow::from_report(prob.v(), &report)])?,
        Format::Json => emit_json(
            out,
            &json!({
                "potential": prob.kind().to_string(),
                "lambda": prob.lambda(),
                "mu": prob.mu(),
                "d": prob.d(),
                "v": prob.v(),
                "report": report,
            }),
        )?,
    }
    Ok(())
}

pub fn cmd_physical(args: &PhysicalArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.n < 2 {
        return Err(CliError::Usage(format!(
            "--n must be at least 2, got {}",
            args.n
        )));
    }
    let phys = PhysicalSystem::new(args.n, args.m, args.v0, args.a, args.hbar)?;
    let v = dimensionless_coupling(&phys);
    let unit = phys.energy_unit();

    let mut pairs = vec![("N", args.n.to_string()), ("v", v.to_string())];
    let mut doc = json!({
        "N": args.n, "m": args.m, "V0": args.v0, "a": args.a, "hbar": args.hbar,
        "v": v, "energy_unit": unit,
    });

    match args.potential {
        PhysicalShape::Delta => {
            let exact = delta_exact_energy(ParticleCount::Finite(args.n), v)?;
            pairs.push(("potential", "delta".to_string()));
            pairs.push(("exact", exact.to_string()));
            pairs.push(("energy_unit", unit.to_string()));
            pairs.push(("energy_exact", recover_energy(&phys, exact).to_string()));
            doc["potential"] = json!("delta");
            doc["exact"] = json!(exact);
            doc["energy_exact"] = json!(recover_energy(&phys, exact));
            if args.phi {
                let phi = delta_1d_phi(v)?;
                pairs.push(("phi_large_n", phi.energy.to_string()));
                doc["phi_large_n"] = json!(phi);
            }
        }
        shape => {
            let pot = match shape {
                PhysicalShape::Oscillator => Potential::oscillator(args.lambda, args.mu)?,
                _ => Potential::kratzer(args.lambda, args.mu)?,
            };
            let prob = Problem::new(pot, args.d, v)?;
            let report = report_for(&prob, args.phi)?;
            let upper = report.upper_phi.unwrap_or(report.upper_gaussian);
            pairs.push(("potential", prob.kind().to_string()));
            pairs.extend(report_pairs(&report));
            pairs.push(("energy_unit", unit.to_string()));
            pairs.push((
                "energy_lower",
                recover_energy(&phys, report.lower).to_string(),
            ));
            pairs.push(("energy_upper", recover_energy(&phys, upper).to_string()));
            doc["potential"] = json!(prob.kind().to_string());
            doc["lambda"] = json!(args.lambda);
            doc["mu"] = json!(args.mu);
            doc["d"] = json!(args.d);
            doc["report"] = json!(report);
            doc["energy_window"] = json!([
                recover_energy(&phys, report.lower),
                recover_energy(&phys, upper)
            ]);
        }
    }

    match args.format {
        Format::Json => emit_json(out, &doc),
        Format::Text => Ok(write_pairs(out, &pairs)?),
        Format::Csv => Err(CliError::Usage(
            "physical supports --format text or json".into(),
        )),
    }
}
