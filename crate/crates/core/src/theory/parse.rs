//! Line-oriented specification grammar.
//!
//! ```text
//! theory <name>
//! field <name> spin=<int|int/2> flavors=<int> copies=<int> hermitian=<true|false> statistics=<auto|bose|fermi>
//! kinematic auto | kinematic explicit <matrix-file-path | inline matrix JSON>
//! flavor diagonal | flavor antisymmetric-pair
//! ```
//!
//! `#` starts a comment. Only `spin` is mandatory on a field line; the other
//! keys default to `flavors=1 copies=1 hermitian=true statistics=auto`.
//! [`serialize_theory`] always writes every key, in the order above, with
//! explicit matrices inlined, so its output is canonical.

use std::fmt::Write as _;
use std::path::Path;

use super::{FieldSpec, FlavorCoupling, KinematicSpec, StatisticsChoice, TheorySpec};
use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::su2::SpinLabel;

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], column: line[..s].chars().count() + 1 });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], column: line[..s].chars().count() + 1 });
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses a specification; relative matrix paths resolve against the
/// working directory.
pub fn parse_theory(text: &str) -> Result<TheorySpec> {
    parse_theory_in(text, None)
}

/// Parses a specification, resolving relative matrix paths against `base`.
pub fn parse_theory_in(text: &str, base: Option<&Path>) -> Result<TheorySpec> {
    let mut name: Option<String> = None;
    let mut fields = Vec::new();
    let mut kinematic: Option<(KinematicSpec, usize)> = None;
    let mut coupling: Option<FlavorCoupling> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(head) = toks.first() else { continue };
        match head.text {
            "theory" => {
                if name.is_some() {
                    return Err(err(lineno, head.column, "duplicate `theory` line"));
                }
                let rest = line[line.find("theory").unwrap() + "theory".len()..].trim();
                let rest = rest.trim_matches('"');
                if rest.is_empty() {
                    return Err(err(lineno, head.column + 6, "missing theory name"));
                }
                name = Some(rest.to_string());
            }
            "field" => fields.push(parse_field(lineno, &toks)?),
            "kinematic" => {
                if kinematic.is_some() {
                    return Err(err(lineno, head.column, "duplicate `kinematic` line"));
                }
                kinematic = Some((parse_kinematic(lineno, line, &toks, base)?, lineno));
            }
            "flavor" => {
                if coupling.is_some() {
                    return Err(err(lineno, head.column, "duplicate `flavor` line"));
                }
                let Some(mode) = toks.get(1) else {
                    return Err(err(lineno, head.column, "expected `diagonal` or `antisymmetric-pair`"));
                };
                coupling = Some(match mode.text {
                    "diagonal" => FlavorCoupling::Diagonal,
                    "antisymmetric-pair" => FlavorCoupling::AntisymmetricPair,
                    other => return Err(err(lineno, mode.column, format!("unknown flavor coupling `{other}`"))),
                });
                if let Some(extra) = toks.get(2) {
                    return Err(err(lineno, extra.column, "unexpected token"));
                }
            }
            other => return Err(err(lineno, head.column, format!("unknown statement `{other}`"))),
        }
    }

    let Some(name) = name else {
        return Err(err(1, 1, "missing `theory <name>` line"));
    };
    if fields.is_empty() {
        return Err(err(text.lines().count().max(1), 1, "theory declares no fields"));
    }
    let spec = TheorySpec {
        name,
        fields,
        kinematic: kinematic.map(|(k, _)| k).unwrap_or(KinematicSpec::Auto),
        flavor_coupling: coupling.unwrap_or(FlavorCoupling::Diagonal),
    };
    spec.validate()?;
    Ok(spec)
}

fn parse_field(lineno: usize, toks: &[Token<'_>]) -> Result<FieldSpec> {
    let Some(name_tok) = toks.get(1) else {
        return Err(err(lineno, toks[0].column, "field needs a name"));
    };
    if !is_identifier(name_tok.text) {
        return Err(err(lineno, name_tok.column, format!("invalid field name `{}`", name_tok.text)));
    }
    let mut spin = None;
    let mut field = FieldSpec::new(name_tok.text, SpinLabel::from_two_j(0));
    let mut seen: Vec<&str> = Vec::new();
    for t in &toks[2..] {
        let Some((key, value)) = t.text.split_once('=') else {
            return Err(err(lineno, t.column, format!("expected key=value, found `{}`", t.text)));
        };
        if seen.contains(&key) {
            return Err(err(lineno, t.column, format!("duplicate key `{key}`")));
        }
        seen.push(key);
        let vcol = t.column + key.len() + 1;
        let count = |v: &str| -> Result<usize> {
            match v.parse::<usize>() {
                Ok(n) if n >= 1 => Ok(n),
                _ => Err(err(lineno, vcol, format!("`{key}` must be a positive integer"))),
            }
        };
        match key {
            "spin" => {
                let s: SpinLabel = value.parse().map_err(|_| err(lineno, vcol, format!("malformed spin `{value}`")))?;
                spin = Some(s.check_supported()?);
            }
            "flavors" => field.flavors = count(value)?,
            "copies" => field.copies = count(value)?,
            "hermitian" => {
                field.hermitian = match value {
                    "true" => true,
                    "false" => false,
                    _ => return Err(err(lineno, vcol, "`hermitian` must be true or false")),
                }
            }
            "statistics" => {
                field.statistics = match value {
                    "auto" => StatisticsChoice::Auto,
                    "bose" => StatisticsChoice::Bose,
                    "fermi" => StatisticsChoice::Fermi,
                    "para-bose" | "para-fermi" => {
                        return Err(err(
                            lineno,
                            vcol,
                            "para-statistics (trilinear relations from linear variations) is not supported",
                        ))
                    }
                    _ => return Err(err(lineno, vcol, format!("unknown statistics `{value}`"))),
                }
            }
            _ => return Err(err(lineno, t.column, format!("unknown key `{key}`"))),
        }
    }
    field.spin = spin.ok_or_else(|| err(lineno, toks[0].column, "field needs `spin=`"))?;
    if !field.hermitian {
        return Err(Error::NonHermitian(field.name));
    }
    Ok(field)
}

fn parse_kinematic(lineno: usize, line: &str, toks: &[Token<'_>], base: Option<&Path>) -> Result<KinematicSpec> {
    let Some(mode) = toks.get(1) else {
        return Err(err(lineno, toks[0].column, "expected `auto` or `explicit`"));
    };
    match mode.text {
        "auto" => {
            if let Some(extra) = toks.get(2) {
                return Err(err(lineno, extra.column, "unexpected token"));
            }
            Ok(KinematicSpec::Auto)
        }
        "explicit" => {
            let Some(arg) = toks.get(2) else {
                return Err(err(lineno, mode.column, "`explicit` needs a matrix file or inline matrix"));
            };
            let byte_start = line.char_indices().nth(arg.column - 1).map(|(i, _)| i).unwrap_or(0);
            let rest = line[byte_start..].trim();
            let text = if rest.starts_with('[') {
                rest.to_string()
            } else {
                if toks.len() > 3 {
                    return Err(err(lineno, toks[3].column, "unexpected token"));
                }
                let path = match base {
                    Some(b) => b.join(rest),
                    None => rest.into(),
                };
                std::fs::read_to_string(&path).map_err(|source| Error::Io { path, source })?
            };
            let m = ExactMatrix::from_json(&text).map_err(|e| err(lineno, arg.column, e.to_string()))?;
            Ok(KinematicSpec::Explicit(m))
        }
        other => Err(err(lineno, mode.column, format!("unknown kinematic mode `{other}`"))),
    }
}

/// Canonical text form; `parse_theory(&serialize_theory(s)) == s`.
pub fn serialize_theory(spec: &TheorySpec) -> String {
    let mut out = String::new();
    writeln!(out, "theory {}", spec.name).unwrap();
    for f in &spec.fields {
        writeln!(
            out,
            "field {} spin={} flavors={} copies={} hermitian={} statistics={}",
            f.name, f.spin, f.flavors, f.copies, f.hermitian, f.statistics
        )
        .unwrap();
    }
    match &spec.kinematic {
        KinematicSpec::Auto => out.push_str("kinematic auto\n"),
        KinematicSpec::Explicit(m) => writeln!(out, "kinematic explicit {}", m.to_json()).unwrap(),
    }
    writeln!(out, "flavor {}", spec.flavor_coupling).unwrap();
    out
}
