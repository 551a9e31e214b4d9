//! Shared input parsing: matrices on the command line, expression or
//! file diagram sources, and the crossing-guard override.

use pbtangle::bracket::{MAX_CROSSINGS, MAX_CROSSINGS_HARD};
use pbtangle::diagram::{elaborate, parse_expr, parse_raw, TangleDiagram};
use pbtangle::invariant::PMatrix;

use crate::report::{parse_error, CliError};

/// Row-major "a,b;c,d" matrix syntax; a single row "p,q" would be 1x2,
/// so columns are ";"-separated rows of equal length. Column vectors
/// are written "p;q".
pub fn parse_matrix(text: &str) -> Result<PMatrix, CliError> {
    let rows: Vec<&str> = text.split(';').collect();
    if rows.len() != 2 {
        return Err(parse_error(format!("matrix '{text}' must have exactly 2 rows (a,b;c,d)")));
    }
    let parse_row = |row: &str| -> Result<Vec<i64>, CliError> {
        row.split(',')
            .map(|v| {
                v.trim()
                    .parse::<i64>()
                    .map_err(|_| parse_error(format!("'{}' is not an integer", v.trim())))
            })
            .collect()
    };
    let r0 = parse_row(rows[0])?;
    let r1 = parse_row(rows[1])?;
    if r0.len() != r1.len() {
        return Err(parse_error(format!("matrix '{text}' has ragged rows")));
    }
    if !r0.len().is_power_of_two() {
        return Err(parse_error(format!(
            "matrix '{text}' has {} columns; invariants have a power of two",
            r0.len()
        )));
    }
    Ok(PMatrix::from_rows(r0, r1))
}

/// A pair "p,q".
pub fn parse_pair(text: &str) -> Result<(i64, i64), CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(parse_error(format!("'{text}' is not a pair p,q")));
    }
    let p = parts[0].trim().parse().map_err(|_| parse_error(format!("'{}' is not an integer", parts[0])))?;
    let q = parts[1].trim().parse().map_err(|_| parse_error(format!("'{}' is not an integer", parts[1])))?;
    Ok((p, q))
}

/// Loads a diagram from an inline expression or a raw file.
pub fn load_diagram(expr: Option<&str>, file: Option<&str>) -> Result<TangleDiagram, CliError> {
    match (expr, file) {
        (Some(e), _) => Ok(elaborate(&parse_expr(e)?)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            Ok(parse_raw(&text)?)
        }
        (None, None) => Err(parse_error("provide --expr or --file")),
    }
}

/// The state-sum guard, overridable through PBTANGLE_MAX_CROSSINGS and
/// capped at the hard limit.
pub fn crossing_limit() -> usize {
    std::env::var("PBTANGLE_MAX_CROSSINGS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .map(|v| v.min(MAX_CROSSINGS_HARD))
        .unwrap_or(MAX_CROSSINGS)
}
