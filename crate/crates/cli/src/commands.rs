//! Subcommand implementations, separated from argument parsing so the
//! integration tests can drive them directly.

use std::io::Write;

use bohr_core::functionals::{reference_constants, FunctionalId, ParamSet};
use bohr_core::radius::{self, RootResult, DEFAULT_TOL};
use bohr_core::series::{class_param_sup, ClassParam, FVariant};
use bohr_core::Error;

use crate::config::parallel_map;
use crate::tables::{self, TableRow, TableSpec};

/// Command failure paired with its process exit code.
#[derive(Debug)]
pub struct CmdError {
    pub code: i32,
    pub message: String,
}

impl CmdError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    pub fn solver(message: impl Into<String>) -> Self {
        Self { code: 3, message: message.into() }
    }

    pub fn mismatch(message: impl Into<String>) -> Self {
        Self { code: 4, message: message.into() }
    }

    pub fn verify(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

fn solver_error(err: Error) -> CmdError {
    match err {
        Error::Domain(_) => CmdError::usage(err.to_string()),
        _ => CmdError::solver(err.to_string()),
    }
}

/// Fully-resolved `radius` invocation.
#[derive(Debug, Clone)]
pub struct RadiusRequest {
    pub functional: String,
    pub class_m: Option<f64>,
    pub beta: f64,
    pub mu: f64,
    pub lambda: f64,
    pub power: u32,
    pub start: u32,
    pub poly: Vec<f64>,
    pub a0: Option<f64>,
    pub variant: FVariant,
    pub tol: f64,
}

impl Default for RadiusRequest {
    fn default() -> Self {
        Self {
            functional: String::new(),
            class_m: None,
            beta: 0.0,
            mu: 0.0,
            lambda: 0.0,
            power: 1,
            start: 1,
            poly: vec![],
            a0: None,
            variant: FVariant::Squared,
            tol: DEFAULT_TOL,
        }
    }
}

/// Resolves a CLI functional tag, pulling indices for the analytic equations
/// from the request.
pub fn resolve_functional(req: &RadiusRequest) -> Result<FunctionalId, CmdError> {
    let lambda2 = reference_constants().quartic_weight;
    if let Some(id) = tables::functional_for_tag(&req.functional, lambda2) {
        return Ok(id);
    }
    let need_a0 = || {
        req.a0.ok_or_else(|| CmdError::usage(format!("--a0 is required for {}", req.functional)))
    };
    Ok(match req.functional.as_str() {
        "phi" => FunctionalId::MainPhi,
        "phi-star" => FunctionalId::MainPhiStar,
        "ana-rmn" => FunctionalId::AnaRmn { m: req.power, n: req.start },
        "ana-rpmn" => FunctionalId::AnaRpmn { m: req.power, n: req.start },
        "ana-rn" => FunctionalId::AnaRn { n: req.start },
        "ana-rpn" => FunctionalId::AnaRpn { n: req.start },
        "ana-ra0" => FunctionalId::AnaRa0 { a0: need_a0()? },
        "ana-rpa0" => FunctionalId::AnaRpa0 { a0: need_a0()? },
        "ana-quintic" => FunctionalId::AnaQuintic,
        "ana-quartic" => FunctionalId::AnaQuartic,
        other => {
            return Err(CmdError::usage(format!(
                "unknown functional {other:?}; see the README for the tag list"
            )))
        }
    })
}

fn needs_class(id: &FunctionalId) -> bool {
    !matches!(
        id,
        FunctionalId::AnaRmn { .. }
            | FunctionalId::AnaRpmn { .. }
            | FunctionalId::AnaRn { .. }
            | FunctionalId::AnaRpn { .. }
            | FunctionalId::AnaRa0 { .. }
            | FunctionalId::AnaRpa0 { .. }
            | FunctionalId::AnaQuintic
            | FunctionalId::AnaQuartic
    )
}

fn param_set(req: &RadiusRequest, id: &FunctionalId) -> Result<ParamSet, CmdError> {
    let class_value = if needs_class(id) {
        req.class_m.ok_or_else(|| {
            CmdError::usage(format!("--M is required for functional {}", req.functional))
        })?
    } else {
        req.class_m.unwrap_or(0.0)
    };
    let class = ClassParam::new(class_value).map_err(|e| CmdError::usage(e.to_string()))?;
    ParamSet::new(req.beta, req.mu, req.lambda, req.power, req.start, req.poly.clone(), class)
        .map(|p| p.with_variant(req.variant))
        .map_err(|e| CmdError::usage(e.to_string()))
}

pub fn cmd_radius(out: &mut dyn Write, req: &RadiusRequest) -> Result<(), CmdError> {
    if req.tol.is_nan() || req.tol < 1e-14 {
        return Err(CmdError::usage(format!("--tol {} must be at least 1e-14", req.tol)));
    }
    let id = resolve_functional(req)?;
    let params = param_set(req, &id)?;
    let result = radius::radius_for(&id, &params, req.tol).map_err(solver_error)?;
    print_root(out, &req.functional, &result);
    Ok(())
}

fn print_root(out: &mut dyn Write, tag: &str, r: &RootResult) {
    let _ = writeln!(out, "functional  {tag}");
    let _ = writeln!(out, "value       {:.10}", r.value);
    let _ = writeln!(out, "residual    {:.3e}", r.residual);
    let _ = writeln!(out, "bracket     [{:.12}, {:.12}]", r.bracket.0, r.bracket.1);
    let _ = writeln!(out, "width       {:.3e}", r.bracket.1 - r.bracket.0);
    let _ = writeln!(out, "iterations  {}", r.iterations);
    let _ = writeln!(out, "unique      {}", r.unique);
}

/// One computed table cell.
#[derive(Debug, Clone)]
pub struct TableCell {
    pub m: f64,
    pub computed: f64,
    pub expected: f64,
    pub expected_text: String,
    pub matches: bool,
}

/// Solves every row of a reference table under the given area variant.
pub fn compute_table(spec: &TableSpec, variant: FVariant) -> Result<Vec<Vec<TableCell>>, CmdError> {
    let mut jobs: Vec<(usize, FunctionalId, f64, f64, i64)> = Vec::new();
    for (row_idx, row) in spec.rows.iter().enumerate() {
        for &(m, expected, digits) in &row.entries {
            jobs.push((row_idx, row.id.clone(), m, expected, digits));
        }
    }
    let cells = parallel_map(jobs, |(row_idx, id, m, expected, digits)| {
        let class = ClassParam::new(*m).map_err(|e| CmdError::usage(e.to_string()))?;
        let params = ParamSet::new(0.0, 0.0, 0.0, 1, 1, vec![], class)
            .expect("trivial weights are valid")
            .with_variant(variant);
        let root = radius::radius_for(id, &params, DEFAULT_TOL).map_err(solver_error)?;
        Ok((
            *row_idx,
            TableCell {
                m: *m,
                computed: root.value,
                expected: *expected,
                expected_text: format!("{expected:.4}"),
                matches: tables::trunc4_digits(root.value) == *digits,
            },
        ))
    });
    let mut rows: Vec<Vec<TableCell>> = vec![Vec::new(); spec.rows.len()];
    for cell in cells {
        let (row_idx, cell) = cell?;
        rows[row_idx].push(cell);
    }
    Ok(rows)
}

pub fn cmd_table(
    out: &mut dyn Write,
    table_id: u8,
    variant: FVariant,
    no_fail: bool,
) -> Result<(), CmdError> {
    let spec = tables::table_spec(table_id).map_err(CmdError::usage)?;
    let rows = compute_table(&spec, variant)?;
    let _ = writeln!(out, "M,computed,expected,abs_diff,match4dp");
    let mut max_diff: f64 = 0.0;
    let mut all_match = true;
    for row in &rows {
        for cell in row {
            let diff = (cell.computed - cell.expected).abs();
            max_diff = max_diff.max(diff);
            all_match &= cell.matches;
            let _ = writeln!(
                out,
                "{:.2},{:.10},{},{:.3e},{}",
                cell.m, cell.computed, cell.expected_text, diff, cell.matches
            );
        }
    }
    let _ = writeln!(out, "summary,,,{max_diff:.3e},{all_match}");
    if !all_match && !no_fail {
        return Err(CmdError::mismatch(format!(
            "table {table_id} has entries that miss the printed values at 4 decimal places \
             under the {variant:?} variant"
        )));
    }
    Ok(())
}

pub fn cmd_figure(
    out: &mut dyn Write,
    figure: u8,
    samples: usize,
    curve: usize,
    variant: FVariant,
) -> Result<(), CmdError> {
    if samples < 50 {
        return Err(CmdError::usage(format!("--samples {samples} is below the minimum of 50")));
    }
    let curves = tables::figure_curves(figure).map_err(CmdError::usage)?;
    if curve == 0 || curve > curves.len() {
        return Err(CmdError::usage(format!(
            "figure {figure} has {} curve(s); --curve {curve} is out of range",
            curves.len()
        )));
    }
    let (table_id, row_idx) = curves[curve - 1];
    let spec = tables::table_spec(table_id).map_err(CmdError::usage)?;
    let row: &TableRow = &spec.rows[row_idx];

    let lo = 1e-3;
    let hi = class_param_sup() - 1e-3;
    let grid: Vec<f64> =
        (0..samples).map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64).collect();
    let id = row.id.clone();
    let values = parallel_map(grid, |&m| {
        let class = ClassParam::new(m).expect("grid stays inside the admissible range");
        let params = ParamSet::new(0.0, 0.0, 0.0, 1, 1, vec![], class)
            .expect("trivial weights are valid")
            .with_variant(variant);
        radius::radius_for(&id, &params, DEFAULT_TOL).map(|root| (m, root.value))
    });
    let _ = writeln!(out, "# figure {figure} curve {curve} ({})", row.tag);
    let _ = writeln!(out, "# M\tR");
    for value in values {
        let (m, r) = value.map_err(solver_error)?;
        let _ = writeln!(out, "{m:.6}\t{r:.10}");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_request_for_reduced_tag() {
        let req = RadiusRequest {
            functional: "cor3.8".into(),
            class_m: Some(0.14),
            ..Default::default()
        };
        let mut out = Vec::new();
        cmd_radius(&mut out, &req).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("value       0.3398"), "{text}");
        assert!(text.contains("unique      true"));
    }

    #[test]
    fn radius_requires_class_constant() {
        let req = RadiusRequest { functional: "cor3.8".into(), ..Default::default() };
        let err = cmd_radius(&mut Vec::new(), &req).unwrap_err();
        assert_eq!(err.code, 2);
    }

    #[test]
    fn radius_rejects_out_of_range_class() {
        let req = RadiusRequest {
            functional: "cor3.8".into(),
            class_m: Some(2.0),
            ..Default::default()
        };
        assert_eq!(cmd_radius(&mut Vec::new(), &req).unwrap_err().code, 2);
    }

    #[test]
    fn analytic_tag_does_not_need_class() {
        let req = RadiusRequest { functional: "ana-rpn".into(), start: 1, ..Default::default() };
        let mut out = Vec::new();
        cmd_radius(&mut out, &req).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("0.3333333333"), "{text}");
    }

    #[test]
    fn solver_failure_maps_to_exit_three() {
        // inadmissible weight combination: no sign change on (0, 1)
        let req = RadiusRequest {
            functional: "phi".into(),
            class_m: Some(1.26),
            start: 200,
            ..Default::default()
        };
        let err = cmd_radius(&mut Vec::new(), &req).unwrap_err();
        assert_eq!(err.code, 3);
    }

    #[test]
    fn table_command_emits_csv_and_passes() {
        let mut out = Vec::new();
        cmd_table(&mut out, 4, FVariant::Squared, false).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "M,computed,expected,abs_diff,match4dp");
        assert_eq!(text.lines().count(), 1 + 9 + 1);
        assert!(text.trim_end().ends_with("true"));
    }

    #[test]
    fn linear_variant_fails_table_two() {
        let err = cmd_table(&mut Vec::new(), 2, FVariant::Linear, false).unwrap_err();
        assert_eq!(err.code, 4);
        // forensics mode still prints and exits clean
        cmd_table(&mut Vec::new(), 2, FVariant::Linear, true).unwrap();
    }

    #[test]
    fn figure_guards() {
        assert_eq!(
            cmd_figure(&mut Vec::new(), 1, 10, 1, FVariant::Squared).unwrap_err().code,
            2
        );
        assert_eq!(
            cmd_figure(&mut Vec::new(), 5, 50, 2, FVariant::Squared).unwrap_err().code,
            2
        );
        assert_eq!(
            cmd_figure(&mut Vec::new(), 9, 50, 1, FVariant::Squared).unwrap_err().code,
            2
        );
    }
}
