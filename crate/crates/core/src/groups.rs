//! Named groups: shipped generator fixtures, runtime builders, and file input.

use std::path::Path;

use crate::error::{Error, Result};
use crate::lietype::{
    alternating_group, cyclic_group, projective_linear_group, projective_symplectic_group, symmetric_group,
    Family, FamilySpec,
};
use crate::permgroup::{parse_group, write_group, PermutationGroup};

/// Canonical names and contents of the shipped generator files.
pub const FIXTURES: &[(&str, &str)] = &[
    ("A5", include_str!("../fixtures/a5.grp")),
    ("A6", include_str!("../fixtures/a6.grp")),
    ("S3", include_str!("../fixtures/s3.grp")),
    ("S4", include_str!("../fixtures/s4.grp")),
    ("S5", include_str!("../fixtures/s5.grp")),
    ("C4", include_str!("../fixtures/c4.grp")),
    ("C6", include_str!("../fixtures/c6.grp")),
    ("SL2(4)", include_str!("../fixtures/sl2_4.grp")),
    ("PSL2(5)", include_str!("../fixtures/psl2_5.grp")),
    ("PSL2(7)", include_str!("../fixtures/psl2_7.grp")),
    ("SL2(8)", include_str!("../fixtures/sl2_8.grp")),
    ("PSL2(9)", include_str!("../fixtures/psl2_9.grp")),
    ("PSL2(11)", include_str!("../fixtures/psl2_11.grp")),
    ("PSL2(13)", include_str!("../fixtures/psl2_13.grp")),
    ("SL2(16)", include_str!("../fixtures/sl2_16.grp")),
    ("PSL2(17)", include_str!("../fixtures/psl2_17.grp")),
    ("PSp4(3)", include_str!("../fixtures/psp4_3.grp")),
];

/// File name of the fixture for a canonical name, e.g. `psl2_7.grp`.
pub fn fixture_file_name(canonical: &str) -> String {
    let stem: String = canonical
        .to_lowercase()
        .chars()
        .filter_map(|c| match c {
            '(' => Some('_'),
            ')' => None,
            c => Some(c),
        })
        .collect();
    format!("{stem}.grp")
}

enum Named {
    Alternating(usize),
    Symmetric(usize),
    Cyclic(usize),
    Lie(FamilySpec),
}

fn parse_name(name: &str) -> Result<Named> {
    let name = name.trim();
    let small = |rest: &str| rest.parse::<usize>().ok().filter(|&n| n >= 1);
    if let Some(n) = name.strip_prefix('A').and_then(small) {
        return Ok(Named::Alternating(n));
    }
    if let Some(n) = name.strip_prefix('S').and_then(small) {
        return Ok(Named::Symmetric(n));
    }
    if let Some(n) = name.strip_prefix('C').and_then(small) {
        return Ok(Named::Cyclic(n));
    }
    Ok(Named::Lie(name.parse()?))
}

/// The canonical form of a group name: `PSL2(8)` becomes `SL2(8)`, `a5` is
/// rejected, `A5` stays.
pub fn canonical_name(name: &str) -> Result<String> {
    Ok(match parse_name(name)? {
        Named::Alternating(n) => format!("A{n}"),
        Named::Symmetric(n) => format!("S{n}"),
        Named::Cyclic(n) => format!("C{n}"),
        Named::Lie(f) => f.to_string(),
    })
}

/// Builds a named group from scratch, ignoring the fixtures.
pub fn build_group(name: &str) -> Result<PermutationGroup> {
    match parse_name(name)? {
        Named::Alternating(n) => alternating_group(n),
        Named::Symmetric(n) => symmetric_group(n),
        Named::Cyclic(n) => cyclic_group(n),
        Named::Lie(f) => match f.family {
            Family::Psl | Family::Sl2Even => projective_linear_group(f.n as usize, f.q),
            Family::Psp => projective_symplectic_group(f.n as usize, f.q),
            Family::Psu => Err(Error::Unsupported(format!("no permutation model for {f}"))),
        },
    }
}

/// The generator file for a named group, as shipped in `fixtures/`.
pub fn fixture_text(name: &str) -> Result<String> {
    let canonical = canonical_name(name)?;
    let group = build_group(&canonical)?;
    let comment = format!("{canonical}, order {}", group.order());
    Ok(write_group(&group, Some(&comment)))
}

/// A named group, from its fixture when one is shipped.
pub fn named_group(name: &str) -> Result<PermutationGroup> {
    let canonical = canonical_name(name)?;
    match FIXTURES.iter().find(|(n, _)| *n == canonical) {
        Some((_, text)) => parse_group(text),
        None => build_group(&canonical),
    }
}

/// A group given either as a path to a generator file or as a name.
pub fn resolve_group(input: &str) -> Result<PermutationGroup> {
    let path = Path::new(input);
    if path.is_file() {
        return parse_group(&std::fs::read_to_string(path)?);
    }
    named_group(input).map_err(|e| match e {
        Error::InvalidArgument(_) => Error::invalid(format!("{input:?} is neither a file nor a known group name")),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_match_builders() {
        for (name, text) in FIXTURES {
            assert_eq!(&fixture_text(name).unwrap(), text, "{name}");
        }
    }

    #[test]
    fn names() {
        assert_eq!(canonical_name("PSL2(8)").unwrap(), "SL2(8)");
        assert_eq!(canonical_name("PSL2(4)").unwrap(), "SL2(4)");
        assert_eq!(fixture_file_name("PSp4(3)"), "psp4_3.grp");
        assert_eq!(named_group("A6").unwrap().order(), 360);
        assert_eq!(named_group("PSL2(19)").unwrap().order(), 3420);
        assert_eq!(named_group("PSL2(5)").unwrap().degree(), 6);
        assert!(named_group("PSU3(3)").is_err());
        assert!(resolve_group("no-such-group").is_err());
        assert!(resolve_group("A0").is_err());
    }
}
