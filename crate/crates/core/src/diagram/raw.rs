//! Plain-text file format for raw diagrams.
//!
//! One diagram per file, `key: value` lines, `#` starts a comment:
//!
//! ```text
//! outer: 4
//! holes: 4 6
//! crossings: 2
//! arc: outer.1 x0.0
//! arc: hole1.1 x0.2
//! ...
//! free_loops: 0
//! ```
//!
//! Recognized keys are `outer`, `holes`, `crossings`, `arc` (repeated) and
//! the optional `free_loops`; anything else is rejected. Ports are written
//! `outer.K`, `hole<i>.K` (1-based) and `x<j>.S` with S in 0..3.

use thiserror::Error;

use super::{DiagramError, Port, PortOwner, TangleDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RawError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown field '{key}'")]
    UnknownField { line: usize, key: String },
    #[error("missing required field '{0}'")]
    MissingField(&'static str),
    #[error("invalid diagram: {0}")]
    Invalid(#[from] DiagramError),
}

fn parse_port(text: &str, line: usize) -> Result<Port, RawError> {
    let syntax = |msg: &str| RawError::Syntax { line, msg: format!("bad port '{text}': {msg}") };
    let (owner_text, slot_text) =
        text.split_once('.').ok_or_else(|| syntax("expected '<owner>.<slot>'"))?;
    let slot: usize = slot_text.parse().map_err(|_| syntax("slot is not a number"))?;
    if owner_text == "outer" {
        return Ok(Port { owner: PortOwner::Outer, slot });
    }
    if let Some(h) = owner_text.strip_prefix("hole") {
        let idx: usize = h.parse().map_err(|_| syntax("hole index is not a number"))?;
        return Ok(Port { owner: PortOwner::Hole(idx), slot });
    }
    if let Some(j) = owner_text.strip_prefix('x') {
        let idx: usize = j.parse().map_err(|_| syntax("crossing index is not a number"))?;
        if slot > 3 {
            return Err(syntax("crossing slots are 0..3"));
        }
        return Ok(Port { owner: PortOwner::Crossing(idx), slot });
    }
    Err(syntax("owner must be 'outer', 'hole<i>' or 'x<j>'"))
}

fn port_name(p: &Port) -> String {
    match p.owner {
        PortOwner::Outer => format!("outer.{}", p.slot),
        PortOwner::Hole(h) => format!("hole{}.{}", h, p.slot),
        PortOwner::Crossing(j) => format!("x{}.{}", j, p.slot),
    }
}

/// Parses the raw diagram format and validates the matching invariant.
pub fn parse_raw(text: &str) -> Result<TangleDiagram, RawError> {
    let mut outer: Option<usize> = None;
    let mut holes: Option<Vec<usize>> = None;
    let mut crossings: Option<usize> = None;
    let mut free_loops: usize = 0;
    let mut arcs: Vec<(Port, Port)> = Vec::new();

    for (lineno, raw_line) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw_line.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once(':')
            .ok_or(RawError::Syntax { line, msg: "expected 'key: value'".into() })?;
        let key = key.trim();
        let value = value.trim();
        let parse_usize = |v: &str| -> Result<usize, RawError> {
            v.parse().map_err(|_| RawError::Syntax { line, msg: format!("'{v}' is not a count") })
        };
        match key {
            "outer" => outer = Some(parse_usize(value)?),
            "holes" => {
                let mut list = Vec::new();
                for item in value.split_whitespace() {
                    list.push(parse_usize(item)?);
                }
                holes = Some(list);
            }
            "crossings" => crossings = Some(parse_usize(value)?),
            "free_loops" => free_loops = parse_usize(value)?,
            "arc" => {
                let mut parts = value.split_whitespace();
                let a = parts.next().ok_or(RawError::Syntax { line, msg: "arc needs two ports".into() })?;
                let b = parts.next().ok_or(RawError::Syntax { line, msg: "arc needs two ports".into() })?;
                if parts.next().is_some() {
                    return Err(RawError::Syntax { line, msg: "arc takes exactly two ports".into() });
                }
                arcs.push((parse_port(a, line)?, parse_port(b, line)?));
            }
            other => return Err(RawError::UnknownField { line, key: other.to_string() }),
        }
    }

    let outer = outer.ok_or(RawError::MissingField("outer"))?;
    let crossings = crossings.ok_or(RawError::MissingField("crossings"))?;
    let holes = holes.unwrap_or_default();
    Ok(TangleDiagram::new(outer, holes, crossings, arcs, free_loops)?)
}

/// Writes a diagram in the raw format; `parse_raw` reads it back.
pub fn write_raw(d: &TangleDiagram) -> String {
    let mut out = String::new();
    out.push_str(&format!("outer: {}\n", d.outer_points()));
    if d.holes() > 0 {
        let counts: Vec<String> = (1..=d.holes()).map(|h| d.hole_points(h).to_string()).collect();
        out.push_str(&format!("holes: {}\n", counts.join(" ")));
    }
    out.push_str(&format!("crossings: {}\n", d.crossings()));
    for (a, b) in d.arcs() {
        out.push_str(&format!("arc: {} {}\n", port_name(&a), port_name(&b)));
    }
    if d.free_loops() > 0 {
        out.push_str(&format!("free_loops: {}\n", d.free_loops()));
    }
    out
}
