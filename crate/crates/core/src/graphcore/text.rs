//! Plain-text instance format.
//!
//! ```text
//! # comment
//! n m k s t          (or "D n m k s t" for a directed instance)
//! u v cost           (m lines)
//! ```

use std::collections::HashMap;
use std::fmt::Write;

use super::{Edge, Instance};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_fields(line_no: usize, line: &str, expected: usize, what: &str) -> Result<Vec<u64>> {
    let fields: Vec<&str> = line.split(' ').collect();
    if fields.len() != expected {
        return Err(parse_err(
            line_no,
            format!("{what}: expected {expected} fields, found {}", fields.len()),
        ));
    }
    fields
        .iter()
        .map(|f| {
            if f.starts_with('-') {
                Err(parse_err(line_no, format!("{what}: negative value {f:?}")))
            } else {
                f.parse::<u64>()
                    .map_err(|_| parse_err(line_no, format!("{what}: not an integer {f:?}")))
            }
        })
        .collect()
}

fn to_usize(line_no: usize, x: u64) -> Result<usize> {
    usize::try_from(x).map_err(|_| parse_err(line_no, format!("value {x} too large")))
}

/// Parses an instance. Every error carries the 1-based line number it was found on.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_no, header) = lines
        .next()
        .ok_or_else(|| parse_err(text.lines().count().max(1), "missing header line"))?;
    let (directed, header_body) = match header.strip_prefix("D ") {
        Some(rest) => (true, rest),
        None => (false, header),
    };
    let h = parse_fields(header_no, header_body, 5, "header")?;
    let n = to_usize(header_no, h[0])?;
    let m = to_usize(header_no, h[1])?;
    let k = to_usize(header_no, h[2])?;
    let s = to_usize(header_no, h[3])?;
    let t = to_usize(header_no, h[4])?;
    if k == 0 {
        return Err(parse_err(header_no, "header: k must be at least 1"));
    }
    if s >= n || t >= n {
        return Err(parse_err(header_no, "header: terminal out of range"));
    }
    if s == t {
        return Err(parse_err(header_no, "header: s and t coincide"));
    }

    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_no;
    for _ in 0..m {
        let (line_no, line) = lines.next().ok_or_else(|| {
            parse_err(
                last_line + 1,
                format!("expected {m} edge lines, found {}", edges.len()),
            )
        })?;
        last_line = line_no;
        let f = parse_fields(line_no, line, 3, "edge")?;
        let u = to_usize(line_no, f[0])?;
        let v = to_usize(line_no, f[1])?;
        if u >= n || v >= n {
            return Err(parse_err(
                line_no,
                format!("edge ({u}, {v}): node out of range 0..{n}"),
            ));
        }
        if u == v {
            return Err(parse_err(line_no, format!("self-loop at node {u}")));
        }
        let key = if directed || u < v { (u, v) } else { (v, u) };
        if let Some(prev) = seen.insert(key, line_no) {
            return Err(parse_err(
                line_no,
                format!("duplicate edge ({u}, {v}), first given on line {prev}"),
            ));
        }
        edges.push(Edge::new(u, v, f[2]));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(parse_err(
            line_no,
            format!("unexpected content after {m} edges"),
        ));
    }
    Instance::new(n, edges, directed, s, t, k).map_err(|e| parse_err(header_no, e.to_string()))
}

/// Renders an instance in canonical form.
pub fn serialize_instance(inst: &Instance) -> String {
    serialize_instance_with_comments(inst, &[])
}

/// Renders an instance preceded by `# `-prefixed comment lines.
pub fn serialize_instance_with_comments(inst: &Instance, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    if inst.is_directed() {
        out.push_str("D ");
    }
    let _ = writeln!(
        out,
        "{} {} {} {} {}",
        inst.n(),
        inst.m(),
        inst.k(),
        inst.s(),
        inst.t()
    );
    for e in inst.edges() {
        let _ = writeln!(out, "{} {} {}", e.u, e.v, e.cost);
    }
    out
}
