//! Ideal files.
//!
//! ```text
//! # the hyperplane pair x0*x1 = 0 on X
//! ring n=5 p=32003
//! ambient smooth-quadric
//! gens:
//! x0*x1 + x2*x3 + x4^2
//! x1*x0
//! ```
//!
//! The `ambient` line is optional; `#` starts a comment anywhere on a line.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::field::FieldConfig;
use crate::ideal::Ideal;
use crate::monomial::TermOrder;
use crate::parse::parse_polynomial;
use crate::poly::Ring;

#[derive(Clone, Debug)]
pub struct IdealFile {
    pub ideal: Ideal,
    pub ambient: Option<String>,
}

fn line_error(text: &str, line: usize, msg: String) -> Error {
    let pos = text.lines().take(line).map(|l| l.len() + 1).sum();
    Error::Parse { pos, msg: format!("line {}: {msg}", line + 1) }
}

fn header_value(field: &str, key: &str) -> Option<String> {
    field.strip_prefix(key).and_then(|v| v.strip_prefix('=')).map(str::to_string)
}

/// Parses an ideal file. A `prime` override replaces the header's characteristic.
pub fn parse_ideal_file(text: &str, prime: Option<u32>) -> Result<IdealFile> {
    let mut ring: Option<Ring> = None;
    let mut ambient = None;
    let mut in_gens = false;
    let mut gens = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if in_gens {
            let r = ring.as_ref().expect("checked when entering gens");
            gens.push(parse_polynomial(r, line).map_err(|e| line_error(text, k, e.to_string()))?);
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("ring") => {
                let (mut n, mut p) = (None, None);
                for w in words {
                    if let Some(v) = header_value(w, "n") {
                        n = Some(v.parse::<usize>().map_err(|_| line_error(text, k, format!("bad n={v}")))?);
                    } else if let Some(v) = header_value(w, "p") {
                        p = Some(v.parse::<u32>().map_err(|_| line_error(text, k, format!("bad p={v}")))?);
                    } else {
                        return Err(line_error(text, k, format!("unknown ring field {w:?}")));
                    }
                }
                let n = n.ok_or_else(|| line_error(text, k, "ring line needs n=<vars>".into()))?;
                let p = prime.or(p).unwrap_or(crate::field::DEFAULT_PRIME);
                let field = FieldConfig::new(p).map_err(|e| line_error(text, k, e.to_string()))?;
                ring = Some(Ring::new(n, field, TermOrder::Grevlex).map_err(|e| line_error(text, k, e.to_string()))?);
            }
            Some("ambient") => {
                let name = words.next().ok_or_else(|| line_error(text, k, "ambient needs a name".into()))?;
                ambient = Some(name.to_string());
            }
            Some("gens:") => {
                if ring.is_none() {
                    return Err(line_error(text, k, "gens: before the ring line".into()));
                }
                in_gens = true;
            }
            Some(w) => return Err(line_error(text, k, format!("unexpected {w:?}"))),
            None => {}
        }
    }
    let ring = ring.ok_or_else(|| Error::Parse { pos: 0, msg: "missing ring line".into() })?;
    if !in_gens {
        return Err(Error::Parse { pos: text.len(), msg: "missing gens: section".into() });
    }
    Ok(IdealFile { ideal: Ideal::new(&ring, gens)?, ambient })
}

pub fn read_ideal_file(path: &std::path::Path, prime: Option<u32>) -> Result<IdealFile> {
    parse_ideal_file(&std::fs::read_to_string(path)?, prime)
}

/// Parses the `(g1, g2, ...)` form printed by `Display for Ideal`.
pub fn parse_ideal_list(ring: &Ring, text: &str) -> Result<Ideal> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .ok_or(Error::Parse { pos: 0, msg: "expected (g1, g2, ...)".into() })?;
    let mut gens = Vec::new();
    for part in inner.split(',').filter(|p| !p.trim().is_empty()) {
        gens.push(parse_polynomial(ring, part)?);
    }
    Ideal::new(ring, gens)
}

pub fn format_ideal_file(ideal: &Ideal, ambient: Option<&str>) -> String {
    let r = ideal.ring();
    let mut out = format!("ring n={} p={}\n", r.nvars(), r.field().prime());
    if let Some(a) = ambient {
        writeln!(out, "ambient {a}").unwrap();
    }
    out.push_str("gens:\n");
    for g in ideal.gens() {
        writeln!(out, "{g}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# a line\nring n=5 p=32003\nambient smooth-quadric\ngens:\nx1\nx3  # comment\n\nx4\n";
        let f = parse_ideal_file(text, None).unwrap();
        assert_eq!(f.ambient.as_deref(), Some("smooth-quadric"));
        assert_eq!(f.ideal.degree(), 1);
        let again = parse_ideal_file(&format_ideal_file(&f.ideal, f.ambient.as_deref()), None).unwrap();
        assert!(again.ideal.same_ideal(&f.ideal));
        let listed = parse_ideal_list(f.ideal.ring(), &f.ideal.to_string()).unwrap();
        assert!(listed.same_ideal(&f.ideal));
    }

    #[test]
    fn prime_override() {
        let f = parse_ideal_file("ring n=3 p=7\ngens:\nx0 + 8*x1\n", None).unwrap();
        assert_eq!(f.ideal.ring().field().prime(), 7);
        assert_eq!(f.ideal.gens()[0].to_string(), "x0 + x1");
        let f = parse_ideal_file("ring n=3 p=7\ngens:\nx0 + 8*x1\n", Some(101)).unwrap();
        assert_eq!(f.ideal.ring().field().prime(), 101);
    }

    #[test]
    fn errors() {
        for bad in ["gens:\nx0\n", "ring p=7\ngens:\n", "ring n=3\nx0\n", "ring n=3\ngens:\nx0 +\n", "ring n=3 q=2\ngens:\n"] {
            assert!(matches!(parse_ideal_file(bad, None), Err(Error::Parse { .. })), "{bad:?}");
        }
        assert!(matches!(parse_ideal_file("ring n=3\ngens:\nx0 + x1^2\n", None), Err(Error::InvalidInput(_))));
    }
}
