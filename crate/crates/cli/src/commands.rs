//! Builders and renderers for the individual subcommands.
//!
//! Every command first assembles its result as plain data, then renders it
//! in the requested format. JSON is the full-fidelity machine format; CSV
//! carries the natural flat table of each command; text is a human summary.
//! All three are deterministic for a fixed configuration and seed.

use catenoid_core::error::{Error, Result};
use catenoid_core::fields::Harmonic;
use catenoid_core::geometry::Chart;
use catenoid_core::index_engine::steklov_spectrum_j;
use catenoid_core::sturm_liouville::BoundaryCondition;
use catenoid_core::{
    BoundaryComponent, CriticalParams, DirichletSolution, Grid1D, IndexReport, ModeProblem,
};
use serde_json::{json, Value};

use crate::checks::CheckOutcome;
use crate::emit::{csv_field, fmt_f64, num, to_json};

/// Output format selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "text" => Some(Format::Text),
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            _ => None,
        }
    }
}

fn harmonic_name(h: Harmonic) -> &'static str {
    match h {
        Harmonic::Cos => "cos",
        Harmonic::Sin => "sin",
    }
}

// ---------------------------------------------------------------------------
// constants

/// The six constants printed by `catenoid constants`, in display order.
pub fn constants_rows(p: &CriticalParams) -> Vec<(&'static str, f64)> {
    let pi = std::f64::consts::PI;
    vec![
        ("T", p.t),
        ("a", p.a),
        ("phi_star", p.phi_star),
        ("inv_sinh_sq_T", 1.0 / (p.sinh_t * p.sinh_t)),
        ("boundary_length", 4.0 * pi / p.t),
        ("curvature_energy", 8.0 * pi / p.t),
    ]
}

pub fn constants_value(p: &CriticalParams) -> Value {
    let mut obj = serde_json::Map::new();
    for (name, v) in constants_rows(p) {
        obj.insert(name.to_string(), num(v));
    }
    Value::Object(obj)
}

pub fn render_constants(p: &CriticalParams, format: Format) -> String {
    match format {
        Format::Json => to_json(&constants_value(p)),
        Format::Csv => {
            let mut out = String::from("name,value\n");
            for (name, v) in constants_rows(p) {
                out.push_str(&format!("{name},{}\n", fmt_f64(v)));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (name, v) in constants_rows(p) {
                out.push_str(&format!("{name:<16} = {}\n", fmt_f64(v)));
            }
            out
        }
    }
}

// ---------------------------------------------------------------------------
// spectrum

#[derive(Debug, Clone)]
pub struct SpectrumRow {
    pub mode: usize,
    pub dirichlet: Vec<f64>,
    pub robin: Vec<f64>,
    pub steklov: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SpectrumDoc {
    pub grid_n: usize,
    pub chart: Chart,
    pub singular_even_channel: bool,
    pub rows: Vec<SpectrumRow>,
}

/// Lowest Dirichlet/Robin eigenvalues of the chart's native problem per
/// mode, alongside the Steklov spectrum of the second-variation operator.
pub fn spectrum_doc(
    p: &CriticalParams,
    grid_n: usize,
    modes: usize,
    chart: Chart,
) -> Result<SpectrumDoc> {
    let grid = Grid1D::uniform(chart, grid_n, p)?;
    let steklov = steklov_spectrum_j(p, grid_n, modes)?;
    let mut rows = Vec::with_capacity(modes + 1);
    for mode in 0..=modes {
        let problem = ModeProblem::native(chart, mode, p);
        let dirichlet = problem
            .assemble(&grid, BoundaryCondition::dirichlet())?
            .eigenvalues(3, 1e-10)?;
        let robin = problem
            .assemble(&grid, BoundaryCondition::robin())?
            .eigenvalues(3, 1e-10)?;
        rows.push(SpectrumRow {
            mode,
            dirichlet,
            robin,
            steklov: steklov.modes[mode].eigenvalues.clone(),
        });
    }
    Ok(SpectrumDoc {
        grid_n,
        chart,
        singular_even_channel: steklov.singular_even_channel,
        rows,
    })
}

pub fn spectrum_value(doc: &SpectrumDoc) -> Value {
    json!({
        "grid_n": doc.grid_n,
        "chart": match doc.chart { Chart::S => "s", Chart::Phi => "phi" },
        "singular_even_channel": doc.singular_even_channel,
        "modes": doc.rows.iter().map(|r| json!({
            "mode": r.mode,
            "dirichlet": r.dirichlet.iter().map(|&x| num(x)).collect::<Vec<_>>(),
            "robin": r.robin.iter().map(|&x| num(x)).collect::<Vec<_>>(),
            "steklov": r.steklov.iter().map(|&x| num(x)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn render_spectrum(doc: &SpectrumDoc, format: Format) -> String {
    match format {
        Format::Json => to_json(&spectrum_value(doc)),
        Format::Csv => {
            let mut out = String::from("mode,family,k,value\n");
            for r in &doc.rows {
                for (family, vals) in [
                    ("dirichlet", &r.dirichlet),
                    ("robin", &r.robin),
                    ("steklov", &r.steklov),
                ] {
                    for (k, &v) in vals.iter().enumerate() {
                        out.push_str(&format!("{},{family},{k},{}\n", r.mode, fmt_f64(v)));
                    }
                }
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "spectrum on the {} chart, {} nodes (axisymmetric even Steklov \
                 channel singular: {})\n",
                match doc.chart {
                    Chart::S => "s",
                    Chart::Phi => "phi",
                },
                doc.grid_n,
                doc.singular_even_channel,
            );
            for r in &doc.rows {
                out.push_str(&format!("mode {}\n", r.mode));
                for (family, vals) in [
                    ("dirichlet", &r.dirichlet),
                    ("robin", &r.robin),
                    ("steklov", &r.steklov),
                ] {
                    let joined: Vec<String> = vals.iter().map(|&v| fmt_f64(v)).collect();
                    out.push_str(&format!("  {family:<9} {}\n", joined.join("  ")));
                }
            }
            out
        }
    }
}

// ---------------------------------------------------------------------------
// index

pub fn index_value(r: &IndexReport) -> Value {
    json!({
        "grid_n": r.grid_size,
        "max_mode": r.max_mode,
        "per_mode": r.per_mode_negative,
        "per_mode_zero": r.per_mode_zero,
        "total": r.total_index,
        "zero_threshold": num(r.zero_threshold),
        "converged": r.converged,
    })
}

pub fn render_index(r: &IndexReport, format: Format) -> String {
    match format {
        Format::Json => to_json(&index_value(r)),
        Format::Csv => {
            let mut out = String::from("key,mode,value\n");
            for (m, &neg) in r.per_mode_negative.iter().enumerate() {
                out.push_str(&format!("negative,{m},{neg}\n"));
            }
            for (m, &z) in r.per_mode_zero.iter().enumerate() {
                out.push_str(&format!("zero,{m},{z}\n"));
            }
            out.push_str(&format!("total,,{}\n", r.total_index));
            out.push_str(&format!("grid_n,,{}\n", r.grid_size));
            out.push_str(&format!("zero_threshold,,{}\n", fmt_f64(r.zero_threshold)));
            out.push_str(&format!("converged,,{}\n", r.converged));
            out
        }
        Format::Text => {
            let mut out = format!("grid nodes      {}\n", r.grid_size);
            out.push_str(" mode  negative  zero\n");
            for m in 0..r.per_mode_negative.len() {
                out.push_str(&format!(
                    "{:5}  {:8}  {:4}\n",
                    m, r.per_mode_negative[m], r.per_mode_zero[m]
                ));
            }
            out.push_str(&format!("total index     {}\n", r.total_index));
            out.push_str(&format!("zero threshold  {}\n", fmt_f64(r.zero_threshold)));
            out.push_str(&format!("converged       {}\n", r.converged));
            out
        }
    }
}

// ---------------------------------------------------------------------------
// dirichlet

/// Parses the boundary-data CSV: a required header followed by rows
/// `mode,cos_or_sin,value_at_plusT,value_at_minusT`.
pub fn parse_boundary_csv(text: &str) -> Result<Vec<BoundaryComponent>> {
    let mut rows = Vec::new();
    let mut saw_header = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if !saw_header {
            let normalized: String = line
                .chars()
                .filter(|c| !c.is_whitespace())
                .collect::<String>()
                .to_ascii_lowercase();
            if normalized != "mode,cos_or_sin,value_at_plust,value_at_minust" {
                return Err(Error::InvalidInput(format!(
                    "line {}: expected header 'mode,cos_or_sin,value_at_plusT,value_at_minusT'",
                    lineno + 1
                )));
            }
            saw_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Error::InvalidInput(format!(
                "line {}: expected 4 comma-separated fields, found {}",
                lineno + 1,
                fields.len()
            )));
        }
        let mode: usize = fields[0].parse().map_err(|_| {
            Error::InvalidInput(format!("line {}: bad mode '{}'", lineno + 1, fields[0]))
        })?;
        let harmonic = match fields[1].to_ascii_lowercase().as_str() {
            "cos" => Harmonic::Cos,
            "sin" => Harmonic::Sin,
            other => {
                return Err(Error::InvalidInput(format!(
                    "line {}: harmonic must be 'cos' or 'sin', found '{other}'",
                    lineno + 1
                )))
            }
        };
        let parse_value = |s: &str| -> Result<f64> {
            let v: f64 = s.parse().map_err(|_| {
                Error::InvalidInput(format!("line {}: bad value '{s}'", lineno + 1))
            })?;
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "line {}: value must be finite",
                    lineno + 1
                )));
            }
            Ok(v)
        };
        rows.push(BoundaryComponent {
            mode,
            harmonic,
            value_plus: parse_value(fields[2])?,
            value_minus: parse_value(fields[3])?,
        });
    }
    if !saw_header {
        return Err(Error::InvalidInput("boundary data file is empty".into()));
    }
    if rows.is_empty() {
        return Err(Error::InvalidInput(
            "boundary data file has a header but no rows".into(),
        ));
    }
    Ok(rows)
}

pub fn dirichlet_value(sol: &DirichletSolution) -> Value {
    json!({
        "grid_n": sol.field.grid.len(),
        "flux": num(sol.flux),
        "nodes": sol.field.grid.nodes.iter().map(|&x| num(x)).collect::<Vec<_>>(),
        "components": sol.field.components.iter().map(|c| json!({
            "mode": c.mode,
            "harmonic": harmonic_name(c.harmonic),
            "profile": c.profile.iter().map(|&x| num(x)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn render_dirichlet(sol: &DirichletSolution, format: Format) -> String {
    match format {
        Format::Json => to_json(&dirichlet_value(sol)),
        Format::Csv => {
            let mut out = String::from("record,mode,harmonic,s,value\n");
            for c in &sol.field.components {
                for (&s, &v) in sol.field.grid.nodes.iter().zip(&c.profile) {
                    out.push_str(&format!(
                        "trace,{},{},{},{}\n",
                        c.mode,
                        harmonic_name(c.harmonic),
                        fmt_f64(s),
                        fmt_f64(v)
                    ));
                }
            }
            out.push_str(&format!("flux,,,,{}\n", fmt_f64(sol.flux)));
            out
        }
        Format::Text => {
            let mut out = format!("kernel flux      = {}\n", fmt_f64(sol.flux));
            for c in &sol.field.components {
                let last = c.profile.len() - 1;
                let sup = c.profile.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
                out.push_str(&format!(
                    "mode {:2} {}  u(-T) = {}  u(+T) = {}  max|u| = {}\n",
                    c.mode,
                    harmonic_name(c.harmonic),
                    fmt_f64(c.profile[0]),
                    fmt_f64(c.profile[last]),
                    fmt_f64(sup)
                ));
            }
            out.push_str(&format!(
                "trace on {} nodes; full profiles available with --format json or csv\n",
                sol.field.grid.len()
            ));
            out
        }
    }
}

// ---------------------------------------------------------------------------
// verify

pub fn verify_value(outcomes: &[CheckOutcome], cfg: &crate::checks::SuiteConfig) -> Value {
    json!({
        "config": {
            "grid_n": cfg.grid_n,
            "modes": cfg.modes,
            "tol": num(cfg.tol),
            "seed": cfg.seed,
        },
        "checks": outcomes.iter().map(|o| json!({
            "id": o.id,
            "name": o.name,
            "status": o.status(),
            "passed": o.passed,
            "non_converged": o.non_converged,
            "details": o.details,
        })).collect::<Vec<_>>(),
        "passed": outcomes.iter().filter(|o| o.passed && !o.non_converged).count(),
        "failed": outcomes.iter().filter(|o| !o.passed).count(),
        "not_converged": outcomes.iter().filter(|o| o.non_converged).count(),
    })
}

pub fn render_verify(
    outcomes: &[CheckOutcome],
    cfg: &crate::checks::SuiteConfig,
    format: Format,
) -> String {
    match format {
        Format::Json => to_json(&verify_value(outcomes, cfg)),
        Format::Csv => {
            let mut out = String::from("id,name,status,details\n");
            for o in outcomes {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    o.id,
                    o.name,
                    o.status(),
                    csv_field(&o.details.join("; "))
                ));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for o in outcomes {
                out.push_str(&format!(
                    "[{:2}/{}] {:<13} {}\n",
                    o.id,
                    outcomes.len(),
                    o.status(),
                    o.name
                ));
                for line in &o.details {
                    out.push_str(&format!("        {line}\n"));
                }
            }
            let passed = outcomes
                .iter()
                .filter(|o| o.passed && !o.non_converged)
                .count();
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            let nc = outcomes.iter().filter(|o| o.non_converged).count();
            out.push_str(&format!(
                "verify: {passed} passed, {failed} failed, {nc} not-converged \
                 (grid_n={}, modes={}, tol={}, seed={})\n",
                cfg.grid_n,
                cfg.modes,
                fmt_f64(cfg.tol),
                cfg.seed
            ));
            out
        }
    }
}

// ---------------------------------------------------------------------------
// report

pub struct ReportDoc {
    pub params: CriticalParams,
    pub spectrum: SpectrumDoc,
    pub index: IndexReport,
    pub outcomes: Vec<CheckOutcome>,
}

pub fn report_value(doc: &ReportDoc, cfg: &crate::checks::SuiteConfig) -> Value {
    json!({
        "constants": constants_value(&doc.params),
        "spectrum": spectrum_value(&doc.spectrum),
        "index": index_value(&doc.index),
        "verification": verify_value(&doc.outcomes, cfg),
    })
}

pub fn render_report(doc: &ReportDoc, cfg: &crate::checks::SuiteConfig, format: Format) -> String {
    match format {
        Format::Json => to_json(&report_value(doc, cfg)),
        Format::Csv => {
            let mut out = String::from("section,key,k,value\n");
            for (name, v) in constants_rows(&doc.params) {
                out.push_str(&format!("constants,{name},,{}\n", fmt_f64(v)));
            }
            for r in &doc.spectrum.rows {
                for (family, vals) in [
                    ("dirichlet", &r.dirichlet),
                    ("robin", &r.robin),
                    ("steklov", &r.steklov),
                ] {
                    for (k, &v) in vals.iter().enumerate() {
                        out.push_str(&format!(
                            "spectrum,mode{}:{family},{k},{}\n",
                            r.mode,
                            fmt_f64(v)
                        ));
                    }
                }
            }
            for (m, &neg) in doc.index.per_mode_negative.iter().enumerate() {
                out.push_str(&format!("index,negative,{m},{neg}\n"));
            }
            out.push_str(&format!("index,total,,{}\n", doc.index.total_index));
            for o in &doc.outcomes {
                out.push_str(&format!(
                    "verification,{},{},{}\n",
                    o.name,
                    o.id,
                    o.status()
                ));
            }
            out
        }
        Format::Text => {
            let mut out = String::from("# constants\n");
            out.push_str(&render_constants(&doc.params, Format::Text));
            out.push_str("\n# spectrum\n");
            out.push_str(&render_spectrum(&doc.spectrum, Format::Text));
            out.push_str("\n# index\n");
            out.push_str(&render_index(&doc.index, Format::Text));
            out.push_str("\n# verification\n");
            out.push_str(&render_verify(&doc.outcomes, cfg, Format::Text));
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_csv_parses_and_validates() {
        let good = "mode,cos_or_sin,value_at_plusT,value_at_minusT\n1,cos,0.5,-0.25\n2,sin,1,0\n";
        let rows = parse_boundary_csv(good).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].mode, 1);
        assert_eq!(rows[0].harmonic, Harmonic::Cos);
        assert_eq!(rows[0].value_plus, 0.5);
        assert_eq!(rows[1].harmonic, Harmonic::Sin);

        assert!(parse_boundary_csv("1,cos,0.5,-0.25\n").is_err()); // no header
        assert!(parse_boundary_csv("mode,cos_or_sin,value_at_plusT,value_at_minusT\n").is_err());
        assert!(
            parse_boundary_csv("mode,cos_or_sin,value_at_plusT,value_at_minusT\n1,tan,0,0\n")
                .is_err()
        );
        assert!(
            parse_boundary_csv("mode,cos_or_sin,value_at_plusT,value_at_minusT\n1,cos,0\n")
                .is_err()
        );
    }

    #[test]
    fn constants_rows_are_consistent() {
        let p = CriticalParams::solve(1e-14).unwrap();
        let rows = constants_rows(&p);
        assert_eq!(rows.len(), 6);
        let get = |name: &str| rows.iter().find(|(n, _)| *n == name).unwrap().1;
        assert!((get("curvature_energy") - 2.0 * get("boundary_length")).abs() < 1e-12);
        assert!((get("T") * get("a") * p.cosh_t - 1.0).abs() < 1e-12);
    }
}
