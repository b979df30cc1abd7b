//! Elements of graded free modules `⊕ R(-shift_i)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};

/// A graded free module; basis vector `e_i` sits in degree `shifts[i]`.
///
/// Module terms `m e_i` are compared position first (`e_0` largest), then by the ring's order,
/// unless the module carries an induced order (see [`FreeModule::induced`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    ring: Ring,
    shifts: Vec<i64>,
    induced: Option<Arc<Induced>>,
}

#[derive(Debug, PartialEq, Eq)]
struct Induced {
    target: FreeModule,
    leads: Vec<(Monomial, u32)>,
}

impl FreeModule {
    pub fn new(ring: Ring, shifts: Vec<i64>) -> FreeModule {
        FreeModule { ring, shifts, induced: None }
    }

    /// `R` itself as a rank-one module.
    pub fn ring_itself(ring: Ring) -> FreeModule {
        FreeModule::new(ring, vec![0])
    }

    /// The source `⊕ R(-deg g_i)` of homogeneous `gens` in `target`, with Schreyer's order:
    /// `m e_i > n e_j` when `m·lt(g_i) > n·lt(g_j)` in `target`, or they tie and `i < j`.
    pub fn induced(target: &FreeModule, gens: &[Vector]) -> FreeModule {
        let shifts = gens.iter().map(|g| target.degree_of(g).expect("homogeneous generator")).collect();
        let leads = gens.iter().map(|g| g.leading().map(|t| (t.m, t.comp)).expect("nonzero generator")).collect();
        FreeModule {
            ring: target.ring,
            shifts,
            induced: Some(Arc::new(Induced { target: target.clone(), leads })),
        }
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    #[inline]
    pub fn term_degree(&self, m: &Monomial, comp: u32) -> i64 {
        m.degree() as i64 + self.shifts[comp as usize]
    }

    #[inline]
    pub fn cmp_terms(&self, a: (&Monomial, u32), b: (&Monomial, u32)) -> Ordering {
        match &self.induced {
            None => b.1.cmp(&a.1).then_with(|| self.ring.order().cmp(a.0, b.0)),
            Some(ind) => {
                let (la, ca) = ind.leads[a.1 as usize];
                let (lb, cb) = ind.leads[b.1 as usize];
                ind.target.cmp_terms((&a.0.mul(&la), ca), (&b.0.mul(&lb), cb)).then_with(|| b.1.cmp(&a.1))
            }
        }
    }

    pub fn zero(&self) -> Vector {
        Vector { terms: Vec::new() }
    }

    /// `c * e_i`.
    pub fn basis(&self, i: usize) -> Vector {
        Vector { terms: vec![VTerm { c: 1, m: Monomial::ONE, comp: i as u32 }] }
    }

    pub fn from_polynomial(&self, f: &Polynomial, comp: usize) -> Vector {
        let f = f.reordered(self.ring.order());
        Vector { terms: f.terms().iter().map(|&(c, m)| VTerm { c, m, comp: comp as u32 }).collect() }
    }

    /// Builds a vector from per-component polynomials.
    pub fn from_components(&self, comps: &[Polynomial]) -> Vector {
        let mut terms = Vec::new();
        for (i, f) in comps.iter().enumerate() {
            let f = f.reordered(self.ring.order());
            terms.extend(f.terms().iter().map(|&(c, m)| VTerm { c, m, comp: i as u32 }));
        }
        terms.sort_by(|a, b| self.cmp_terms((&b.m, b.comp), (&a.m, a.comp)));
        Vector { terms }
    }

    /// Splits a vector into its component polynomials (length = rank).
    pub fn components(&self, v: &Vector) -> Vec<Polynomial> {
        let mut comps: Vec<Vec<(u32, Monomial)>> = vec![Vec::new(); self.rank()];
        for t in &v.terms {
            comps[t.comp as usize].push((t.c, t.m));
        }
        comps.into_iter().map(|ts| Polynomial::from_sorted(self.ring, ts)).collect()
    }

    /// Degree of a homogeneous vector, `None` for zero or inhomogeneous input.
    pub fn degree_of(&self, v: &Vector) -> Option<i64> {
        let first = v.terms.first()?;
        let d = self.term_degree(&first.m, first.comp);
        v.terms.iter().all(|t| self.term_degree(&t.m, t.comp) == d).then_some(d)
    }

    /// Largest term degree (the "sugar" of an input).
    pub fn max_degree(&self, v: &Vector) -> Option<i64> {
        v.terms.iter().map(|t| self.term_degree(&t.m, t.comp)).max()
    }

    pub fn scale(&self, v: &Vector, c: u32) -> Vector {
        let f = self.ring.field();
        if c % f.prime() == 0 {
            return self.zero();
        }
        Vector { terms: v.terms.iter().map(|t| VTerm { c: f.mul(t.c, c), ..*t }).collect() }
    }

    pub fn monic(&self, v: &Vector) -> Vector {
        match v.terms.first() {
            None => v.clone(),
            Some(t) => self.scale(v, self.ring.field().inv(t.c)),
        }
    }

    pub fn add(&self, a: &Vector, b: &Vector) -> Vector {
        self.sub_mul_term(a, self.ring.field().neg(1), &Monomial::ONE, b)
    }

    pub fn sub(&self, a: &Vector, b: &Vector) -> Vector {
        self.sub_mul_term(a, 1, &Monomial::ONE, b)
    }

    /// `a - c * m * b`.
    pub fn sub_mul_term(&self, a: &Vector, c: u32, m: &Monomial, b: &Vector) -> Vector {
        Vector { terms: self.sub_mul_slice(&a.terms, c, m, &b.terms) }
    }

    pub(crate) fn sub_mul_slice(&self, a: &[VTerm], c: u32, m: &Monomial, b: &[VTerm]) -> Vec<VTerm> {
        let f = self.ring.field();
        if c % f.prime() == 0 {
            return a.to_vec();
        }
        let neg = f.neg(c);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while j < b.len() {
            let bm = b[j].m.mul(m);
            let bt = (&bm, b[j].comp);
            while i < a.len() && self.cmp_terms((&a[i].m, a[i].comp), bt) == Ordering::Greater {
                out.push(a[i]);
                i += 1;
            }
            if i < a.len() && a[i].comp == b[j].comp && a[i].m == bm {
                let v = f.add(a[i].c, f.mul(neg, b[j].c));
                if v != 0 {
                    out.push(VTerm { c: v, m: bm, comp: b[j].comp });
                }
                i += 1;
            } else {
                out.push(VTerm { c: f.mul(neg, b[j].c), m: bm, comp: b[j].comp });
            }
            j += 1;
        }
        out.extend_from_slice(&a[i..]);
        out
    }

    /// `m * v` scaled by `c`.
    pub fn mul_term(&self, v: &Vector, c: u32, m: &Monomial) -> Vector {
        let f = self.ring.field();
        Vector { terms: v.terms.iter().map(|t| VTerm { c: f.mul(t.c, c), m: t.m.mul(m), comp: t.comp }).collect() }
    }

    /// `f * v` for a polynomial `f`.
    pub fn mul_poly(&self, f: &Polynomial, v: &Vector) -> Vector {
        let mut acc = self.zero();
        for &(c, m) in f.terms() {
            acc = self.sub_mul_term(&acc, self.ring.field().neg(c), &m, v);
        }
        acc
    }

    /// `Σ coeffs[i] * vs[i]`.
    pub fn combination(&self, coeffs: &[Polynomial], vs: &[Vector]) -> Vector {
        let mut acc = self.zero();
        for (f, v) in coeffs.iter().zip(vs) {
            if !f.is_zero() && !v.is_zero() {
                acc = self.add(&acc, &self.mul_poly(f, v));
            }
        }
        acc
    }

    pub fn format(&self, v: &Vector) -> String {
        let comps = self.components(v);
        let parts: Vec<String> = comps.iter().map(|p| p.to_string()).collect();
        format!("[{}]", parts.join(", "))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VTerm {
    pub c: u32,
    pub m: Monomial,
    pub comp: u32,
}

/// A module element; terms strictly descending in the owning [`FreeModule`]'s order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    pub(crate) terms: Vec<VTerm>,
}

impl Vector {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[VTerm] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&VTerm> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{:?}*e{}", t.c, t.m, t.comp)?;
        }
        write!(f, "}}")
    }
}
