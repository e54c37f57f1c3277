use std::fmt::Write as _;

use super::{Perm, PermutationGroup};
use crate::error::{Error, Result};

/// Parses disjoint-cycle notation such as `(1,2,3)(4,5)` or `()`.
///
/// Points inside a cycle may be separated by commas or whitespace.
pub fn parse_permutation(text: &str, degree: usize) -> Result<Perm> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::MalformedPermutation(format!("expected '(' in {text:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::MalformedPermutation(format!("unclosed cycle in {text:?}")))?;
        let points = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<u32>()
                    .map_err(|_| Error::MalformedPermutation(format!("bad point {s:?} in {text:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = body[close + 1..].trim_start();
    }
    Perm::from_cycles(degree, &cycles)
}

/// Parses the group file format: a `degree: d` line followed by
/// `gen: <cycles>` lines; blank lines and `#` comments are ignored.
pub fn parse_group(text: &str) -> Result<PermutationGroup> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse {
            line: lineno + 1,
            msg,
        };
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| err(format!("expected 'key: value', found {line:?}")))?;
        match key.trim() {
            "degree" => {
                if degree.is_some() {
                    return Err(err("duplicate degree line".into()));
                }
                let d = value
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| err(format!("bad degree {:?}", value.trim())))?;
                if d == 0 {
                    return Err(err("degree must be positive".into()));
                }
                degree = Some(d);
            }
            "gen" => {
                let d = degree.ok_or_else(|| err("generator before degree line".into()))?;
                let g = parse_permutation(value, d).map_err(|e| match e {
                    Error::MalformedPermutation(m) => Error::MalformedPermutation(format!("line {}: {m}", lineno + 1)),
                    other => other,
                })?;
                gens.push(g);
            }
            other => return Err(err(format!("unknown key {other:?}"))),
        }
    }
    let degree = degree.ok_or(Error::Parse {
        line: 0,
        msg: "missing degree line".into(),
    })?;
    PermutationGroup::new(degree, gens)
}

/// Writes a group in the format read by [`parse_group`].
pub fn write_group(group: &PermutationGroup, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "degree: {}", group.degree());
    for g in group.generators() {
        let _ = writeln!(out, "gen: {g}");
    }
    out
}
