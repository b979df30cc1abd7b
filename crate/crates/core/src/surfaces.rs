//! Divisor classes on three surfaces in P^4 and their numerical invariants: the smooth quadric
//! surface, the quartic Del Pezzo surface (P^2 blown up in five points) and the rational cubic
//! scroll (P^2 blown up in one point).

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceKind {
    QuadricSurface,
    DelPezzo4,
    CubicScroll,
}

impl SurfaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::QuadricSurface => "quadric-surface",
            SurfaceKind::DelPezzo4 => "del-pezzo-4",
            SurfaceKind::CubicScroll => "cubic-scroll",
        }
    }
}

/// A divisor class.
///
/// * quadric surface: bidegree `(a, b)`, with `(a,b)·(a',b') = ab' + a'b`;
/// * Del Pezzo: `(d; m1..m5)` = `d` lines minus the exceptional curves, `dd' - Σ m_i m_i'`;
/// * scroll: `(a; b)` = `a` lines minus `b` times the exceptional curve, `aa' - bb'`.
///
/// On the scroll the exceptional curve `E` itself is `(0; -1)`, so that `(a; b)·E = b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "surface", rename_all = "kebab-case")]
pub enum DivisorClass {
    QuadricSurface { a: i64, b: i64 },
    DelPezzo4 { d: i64, m: [i64; 5] },
    CubicScroll { a: i64, b: i64 },
}

use DivisorClass::*;

impl DivisorClass {
    pub fn kind(&self) -> SurfaceKind {
        match self {
            QuadricSurface { .. } => SurfaceKind::QuadricSurface,
            DelPezzo4 { .. } => SurfaceKind::DelPezzo4,
            CubicScroll { .. } => SurfaceKind::CubicScroll,
        }
    }

    pub fn hyperplane(kind: SurfaceKind) -> DivisorClass {
        match kind {
            SurfaceKind::QuadricSurface => QuadricSurface { a: 1, b: 1 },
            SurfaceKind::DelPezzo4 => DelPezzo4 { d: 3, m: [1; 5] },
            SurfaceKind::CubicScroll => CubicScroll { a: 2, b: 1 },
        }
    }

    pub fn canonical(kind: SurfaceKind) -> DivisorClass {
        match kind {
            SurfaceKind::QuadricSurface => QuadricSurface { a: -2, b: -2 },
            SurfaceKind::DelPezzo4 => DelPezzo4 { d: -3, m: [-1; 5] },
            SurfaceKind::CubicScroll => CubicScroll { a: -3, b: -1 },
        }
    }

    /// The exceptional curve of the scroll.
    pub fn scroll_exceptional() -> DivisorClass {
        CubicScroll { a: 0, b: -1 }
    }

    /// A fiber of the scroll's ruling.
    pub fn scroll_fiber() -> DivisorClass {
        CubicScroll { a: 1, b: 1 }
    }

    /// The conic classes whose intersection numbers give the bidegree of the projection from a
    /// line of the Del Pezzo surface onto a quadric surface.
    pub fn del_pezzo_conics() -> (DivisorClass, DivisorClass) {
        (DelPezzo4 { d: 1, m: [1, 0, 0, 0, 0] }, DelPezzo4 { d: 2, m: [0, 1, 1, 1, 1] })
    }

    pub fn add_multiple(&self, other: &DivisorClass, k: i64) -> Result<DivisorClass> {
        Ok(match (*self, *other) {
            (QuadricSurface { a, b }, QuadricSurface { a: a2, b: b2 }) => QuadricSurface { a: a + k * a2, b: b + k * b2 },
            (DelPezzo4 { d, m }, DelPezzo4 { d: d2, m: m2 }) => {
                DelPezzo4 { d: d + k * d2, m: std::array::from_fn(|i| m[i] + k * m2[i]) }
            }
            (CubicScroll { a, b }, CubicScroll { a: a2, b: b2 }) => CubicScroll { a: a + k * a2, b: b + k * b2 },
            _ => return Err(mismatch(self, other)),
        })
    }
}

fn mismatch(c1: &DivisorClass, c2: &DivisorClass) -> Error {
    Error::InvalidInput(format!("classes on different surfaces: {} and {}", c1.kind().name(), c2.kind().name()))
}

pub fn intersection_number(c1: &DivisorClass, c2: &DivisorClass) -> Result<i64> {
    match (*c1, *c2) {
        (QuadricSurface { a, b }, QuadricSurface { a: a2, b: b2 }) => Ok(a * b2 + a2 * b),
        (DelPezzo4 { d, m }, DelPezzo4 { d: d2, m: m2 }) => {
            Ok(d * d2 - m.iter().zip(m2.iter()).map(|(x, y)| x * y).sum::<i64>())
        }
        (CubicScroll { a, b }, CubicScroll { a: a2, b: b2 }) => Ok(a * a2 - b * b2),
        _ => Err(mismatch(c1, c2)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorInvariants {
    pub degree: i64,
    pub genus: i64,
    pub self_intersection: i64,
}

/// Degree `C·H` and arithmetic genus `(C² + C·K)/2 + 1`.
pub fn divisor_invariants(c: &DivisorClass) -> DivisorInvariants {
    let kind = c.kind();
    let dot = |x: &DivisorClass| intersection_number(c, x).expect("same surface");
    let c2 = dot(c);
    let ck = dot(&DivisorClass::canonical(kind));
    debug_assert!((c2 + ck) % 2 == 0);
    DivisorInvariants { degree: dot(&DivisorClass::hyperplane(kind)), genus: (c2 + ck) / 2 + 1, self_intersection: c2 }
}

/// `(C·Γ, C·Γ')` for a class on the Del Pezzo surface.
pub fn projection_bidegree(c: &DivisorClass) -> Result<(i64, i64)> {
    if c.kind() != SurfaceKind::DelPezzo4 {
        return Err(Error::InvalidInput("projection bidegree needs a Del Pezzo class".into()));
    }
    let (g, g2) = DivisorClass::del_pezzo_conics();
    Ok((intersection_number(c, &g)?, intersection_number(c, &g2)?))
}

/// `C + kH`.
pub fn biliaison_step_class(c: &DivisorClass, k: i64) -> DivisorClass {
    c.add_multiple(&DivisorClass::hyperplane(c.kind()), k).expect("same surface")
}

/// On the quadric surface, a class `(a, b)` with `b ≥ d` and `|a - b| ≤ 1` has degree at least
/// `2d - 1`. Returns `None` when the hypotheses fail.
pub fn case4_degree_bound(a: i64, b: i64, d: i64) -> Option<bool> {
    (b >= d && (a - b).abs() <= 1).then_some(a + b >= 2 * d - 1)
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadricSurface { a, b } => write!(f, "q:({a},{b})"),
            DelPezzo4 { d, m } => write!(f, "dp:({d};{},{},{},{},{})", m[0], m[1], m[2], m[3], m[4]),
            CubicScroll { a, b } => write!(f, "sc:({a};{b})"),
        }
    }
}

fn parse_ints(s: &str, offset: usize) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    let mut pos = offset;
    for part in s.split(',') {
        let t = part.trim();
        out.push(t.parse::<i64>().map_err(|_| Error::Parse { pos, msg: format!("expected an integer, got {t:?}") })?);
        pos += part.len() + 1;
    }
    Ok(out)
}

impl std::str::FromStr for DivisorClass {
    type Err = Error;

    /// `q:(a,b)`, `dp:(d;m1,m2,m3,m4,m5)`, `sc:(a;b)`; also `sc:E`, `sc:F` and `<surface>:H`.
    fn from_str(s: &str) -> Result<DivisorClass> {
        let s = s.trim();
        let Some((tag, body)) = s.split_once(':') else {
            return Err(Error::Parse { pos: 0, msg: "expected <surface>:<class>".into() });
        };
        let kind = match tag {
            "q" => SurfaceKind::QuadricSurface,
            "dp" => SurfaceKind::DelPezzo4,
            "sc" => SurfaceKind::CubicScroll,
            _ => return Err(Error::Parse { pos: 0, msg: format!("unknown surface {tag:?} (q, dp, sc)") }),
        };
        let start = tag.len() + 1;
        match (kind, body.trim()) {
            (_, "H") => return Ok(DivisorClass::hyperplane(kind)),
            (_, "K") => return Ok(DivisorClass::canonical(kind)),
            (SurfaceKind::CubicScroll, "E") => return Ok(DivisorClass::scroll_exceptional()),
            (SurfaceKind::CubicScroll, "F") => return Ok(DivisorClass::scroll_fiber()),
            _ => {}
        }
        let inner = body
            .trim()
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or(Error::Parse { pos: start, msg: "class must be parenthesized".into() })?;
        let bad = |msg: &str| Error::Parse { pos: start, msg: msg.to_string() };
        match kind {
            SurfaceKind::QuadricSurface => match parse_ints(inner, start + 1)?.as_slice() {
                [a, b] => Ok(QuadricSurface { a: *a, b: *b }),
                _ => Err(bad("quadric surface classes are (a,b)")),
            },
            SurfaceKind::DelPezzo4 | SurfaceKind::CubicScroll => {
                let (head, tail) = inner.split_once(';').ok_or(bad("expected ';' after the first entry"))?;
                let first = parse_ints(head, start + 1)?;
                let rest = parse_ints(tail, start + 2 + head.len())?;
                match (kind, first.as_slice(), rest.as_slice()) {
                    (SurfaceKind::DelPezzo4, [d], [m1, m2, m3, m4, m5]) => {
                        Ok(DelPezzo4 { d: *d, m: [*m1, *m2, *m3, *m4, *m5] })
                    }
                    (SurfaceKind::CubicScroll, [a], [b]) => Ok(CubicScroll { a: *a, b: *b }),
                    (SurfaceKind::DelPezzo4, _, _) => Err(bad("Del Pezzo classes are (d;m1,m2,m3,m4,m5)")),
                    _ => Err(bad("scroll classes are (a;b)")),
                }
            }
        }
    }
}
