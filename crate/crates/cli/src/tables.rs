//! Embedded reference tables and their functional tags.
//!
//! The printed radii live in `data/*.csv` and are owned by this crate and its
//! test suite; the numeric core never sees them. Printed values are truncated
//! (not rounded) to 4 decimal places, so a computed root matches a printed one
//! exactly when `floor(computed * 1e4)` equals the printed digits, which also
//! forces `0 <= computed - printed < 1e-4`.

use bohr_core::functionals::{reference_constants, FunctionalId};

/// The nine class constants every table is printed over.
pub const M_GRID: [f64; 9] = [0.14, 0.28, 0.42, 0.56, 0.70, 0.84, 0.98, 1.12, 1.26];

/// Table labels as printed; the numbering has no table 3.
pub const AVAILABLE_TABLES: [u8; 6] = [1, 2, 4, 5, 6, 7];

/// One functional row of a reference table.
#[derive(Debug, Clone)]
pub struct TableRow {
    /// CLI tag of the equation, e.g. `cor3.8`.
    pub tag: String,
    pub id: FunctionalId,
    /// `(M, printed_value, printed_digits)` per grid point, where
    /// `printed_digits = printed_value * 1e4` as an exact integer.
    pub entries: Vec<(f64, f64, i64)>,
}

/// A reference table: its printed label and functional rows.
#[derive(Debug, Clone)]
pub struct TableSpec {
    pub id: u8,
    pub rows: Vec<TableRow>,
}

const TABLE_SOURCES: [(u8, &str); 6] = [
    (1, include_str!("../data/table1.csv")),
    (2, include_str!("../data/table2.csv")),
    (4, include_str!("../data/table4.csv")),
    (5, include_str!("../data/table5.csv")),
    (6, include_str!("../data/table6.csv")),
    (7, include_str!("../data/table7.csv")),
];

/// Loads a reference table by its printed label.
///
/// Label 3 is absent from the source numbering; asking for it reports the gap
/// instead of renumbering.
pub fn table_spec(id: u8) -> Result<TableSpec, String> {
    if id == 3 {
        return Err(
            "table 3 does not exist: the source tables are labeled 1, 2, 4, 5, 6, 7".into()
        );
    }
    let source = TABLE_SOURCES
        .iter()
        .find(|(tid, _)| *tid == id)
        .map(|(_, s)| *s)
        .ok_or_else(|| format!("unknown table {id}; available: 1, 2, 4, 5, 6, 7"))?;
    parse_table(id, source)
}

fn parse_table(id: u8, source: &str) -> Result<TableSpec, String> {
    let mut tags: Vec<String> = Vec::new();
    let mut rows: Vec<Vec<(f64, f64, i64)>> = Vec::new();
    let mut printed_lambda2: Option<f64> = None;

    for line in source.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(v) = rest.trim().strip_prefix("lambda2=") {
                printed_lambda2 =
                    Some(v.trim().parse().map_err(|e| format!("bad lambda2 directive: {e}"))?);
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if tags.is_empty() {
            if fields.first() != Some(&"M") {
                return Err(format!("table {id}: header must start with M"));
            }
            tags = fields[1..].iter().map(|s| s.to_string()).collect();
            rows = vec![Vec::new(); tags.len()];
            continue;
        }
        if fields.len() != tags.len() + 1 {
            return Err(format!("table {id}: ragged line {line:?}"));
        }
        let m: f64 = fields[0].parse().map_err(|e| format!("table {id}: bad M: {e}"))?;
        for (k, cell) in fields[1..].iter().enumerate() {
            let value: f64 = cell.parse().map_err(|e| format!("table {id}: bad value: {e}"))?;
            let digits = printed_digits(cell)
                .ok_or_else(|| format!("table {id}: value {cell:?} is not 4 decimal places"))?;
            rows[k].push((m, value, digits));
        }
    }
    if tags.is_empty() {
        return Err(format!("table {id}: no header found"));
    }
    for row in &rows {
        let grid: Vec<f64> = row.iter().map(|e| e.0).collect();
        if grid != M_GRID {
            return Err(format!("table {id}: M grid {grid:?} does not match the standard grid"));
        }
    }

    // lambda2 is never transcribed into the solver: the quartic constant is
    // recomputed and must agree with the printed directive
    let lambda2 = reference_constants().quartic_weight;
    if let Some(printed) = printed_lambda2 {
        if (lambda2 - printed).abs() > 1e-4 {
            return Err(format!(
                "computed quartic weight {lambda2} disagrees with the printed {printed}"
            ));
        }
    }

    let rows = tags
        .iter()
        .zip(rows)
        .map(|(tag, entries)| {
            let id = functional_for_tag(tag, lambda2)
                .ok_or_else(|| format!("table {id}: unknown functional tag {tag:?}"))?;
            Ok(TableRow { tag: tag.clone(), id, entries })
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(TableSpec { id, rows })
}

/// Exact 4-decimal digit count of a printed cell like `0.3398` -> `3398`.
fn printed_digits(cell: &str) -> Option<i64> {
    let (int, frac) = cell.split_once('.')?;
    if frac.len() != 4 {
        return None;
    }
    let int: i64 = int.parse().ok()?;
    let frac: i64 = frac.parse().ok()?;
    Some(int * 10_000 + frac)
}

/// The reduced-equation tags accepted in table files and on the CLI.
pub fn functional_for_tag(tag: &str, lambda2: f64) -> Option<FunctionalId> {
    Some(match tag {
        "cor3.8" => FunctionalId::Cor38,
        "cor3.9" => FunctionalId::Cor39,
        "cor3.5" => FunctionalId::Cor35,
        "cor3.6" => FunctionalId::Cor36,
        "cor3.11" => FunctionalId::Cor311,
        "cor3.12" => FunctionalId::Cor312 { lambda2 },
        "cor3.13" => FunctionalId::Cor313,
        "cor3.25" => FunctionalId::Cor325,
        "cor3.26" => FunctionalId::Cor326,
        _ => return None,
    })
}

/// Truncation to 4 decimal places, as the printed tables do; the small nudge
/// keeps exact printed values from falling one digit short in binary floating
/// point.
pub fn trunc4_digits(x: f64) -> i64 {
    (x * 1e4 + 1e-7).floor() as i64
}

/// Figure-to-curves mapping: each plotted curve is a table row swept over a
/// dense M grid.
pub fn figure_curves(figure: u8) -> Result<Vec<(u8, usize)>, String> {
    Ok(match figure {
        1 => vec![(1, 0), (1, 1)],
        2 => vec![(2, 0), (2, 1)],
        3 => vec![(4, 0), (5, 0)],
        4 => vec![(6, 0), (6, 1)],
        5 => vec![(7, 0)],
        _ => return Err(format!("unknown figure {figure}; available: 1..5")),
    })
}
