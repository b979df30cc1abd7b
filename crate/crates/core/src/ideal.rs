//! Homogeneous ideals: sums, products, intersections, colons, saturation, Hilbert data,
//! minimal generators and regular-sequence tests.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rand::Rng;

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, minimal_generating_subset, FreeModule, ReducedGB};
use crate::hilbert::HilbertData;
use crate::linalg::{DegreeBasis, Echelon};
use crate::monomial::{monomials_of_degree, TermOrder};
use crate::poly::{Homogeneity, Polynomial, Ring};

/// Rounds of `I : J` before saturation gives up.
pub const SATURATION_CAP: usize = 50;

/// A homogeneous ideal of `R = F_p[x0..xn]` given by generators.
///
/// The grevlex Gröbner basis and Hilbert data are computed on first use and cached.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: OnceLock<ReducedGB>,
    hilbert: OnceLock<HilbertData>,
    saturated: bool,
}

impl Ideal {
    /// Zero generators are dropped; inhomogeneous ones are rejected.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        let ring = ring.with_order(TermOrder::Grevlex);
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            ring.check_same(g.ring())?;
            match g.homogeneity() {
                Homogeneity::Zero => continue,
                Homogeneity::Inhomogeneous => {
                    return Err(Error::InvalidInput(format!("generator {g} is not homogeneous")));
                }
                Homogeneity::Homogeneous(_) => out.push(g.reordered(TermOrder::Grevlex)),
            }
        }
        Ok(Ideal { ring, gens: out, gb: OnceLock::new(), hilbert: OnceLock::new(), saturated: false })
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Ring) -> Ideal {
        let mut i = Ideal::new(ring, vec![ring.one()]).unwrap();
        i.saturated = true;
        i
    }

    /// The irrelevant ideal `(x0, ..., xn)`.
    pub fn maximal(ring: &Ring) -> Ideal {
        Ideal::new(ring, ring.vars()).unwrap()
    }

    fn from_gb(ring: &Ring, gb: ReducedGB) -> Ideal {
        let ideal = Ideal::new(ring, gb.generators().to_vec()).unwrap();
        let _ = ideal.gb.set(gb);
        ideal
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn gb(&self) -> &ReducedGB {
        self.gb.get_or_init(|| groebner_basis(&self.ring, &self.gens))
    }

    pub fn hilbert(&self) -> &HilbertData {
        self.hilbert.get_or_init(|| {
            let gb = self.gb();
            HilbertData::from_leading_monomials(&gb.leading_monomials(), self.ring.nvars())
        })
    }

    pub fn degree(&self) -> i64 {
        self.hilbert().degree()
    }

    /// Arithmetic genus when `R/I` is one-dimensional projectively.
    pub fn genus(&self) -> Option<i64> {
        self.hilbert().curve_genus()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_unit()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.gb().contains(f)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality as ideals (no saturation).
    pub fn same_ideal(&self, other: &Ideal) -> bool {
        self.ring.check_same(&other.ring).is_ok() && self.gb() == other.gb()
    }

    /// True when this ideal is known to be saturated without further computation.
    pub fn is_known_saturated(&self) -> bool {
        self.saturated
    }

    /// Records that the ideal is saturated (e.g. a complete intersection of positive dimension).
    pub fn assume_saturated(mut self) -> Ideal {
        self.saturated = true;
        self
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// `self + (forms)`.
    pub fn with_forms(&self, forms: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(forms.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f * g);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `f · I`.
    pub fn scale(&self, f: &Polynomial) -> Result<Ideal> {
        self.ring.check_same(f.ring())?;
        Ideal::new(&self.ring, self.gens.iter().map(|g| g * f).collect())
    }

    /// `I ∩ J` by eliminating `t` from `t·I + (1-t)·J`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let n = self.ring.nvars();
        let big = Ring::new(n + 1, *self.ring.field(), TermOrder::Elimination(1))?;
        let t = big.var(0);
        let one_minus_t = &big.one() - &t;
        let mut gens = Vec::with_capacity(self.gens.len() + other.gens.len());
        for f in &self.gens {
            gens.push(&t * &f.embed(big, 1));
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.embed(big, 1));
        }
        let gb = groebner_basis(&big, &gens);
        let kept: Vec<Polynomial> = gb.generators().iter().filter_map(|g| g.restrict(self.ring, 1)).collect();
        // the t-free part of an elimination basis is the reduced grevlex basis of the intersection
        let gb = groebner_basis(&self.ring, &kept);
        let mut out = Ideal::from_gb(&self.ring, gb);
        out.saturated = self.saturated && other.saturated;
        Ok(out)
    }

    /// `I : (f)`.
    pub fn colon_element(&self, f: &Polynomial) -> Result<Ideal> {
        self.ring.check_same(f.ring())?;
        if f.is_zero() || self.contains(f) {
            return Ok(Ideal::unit(&self.ring));
        }
        let principal = Ideal::new(&self.ring, vec![f.clone()])?;
        let meet = self.intersection(&principal)?;
        let mut quotients = Vec::with_capacity(meet.gens.len());
        for g in &meet.gens {
            let q = g.divide_exact(f).ok_or_else(|| Error::Verification(format!("{f} does not divide {g}")))?;
            quotients.push(q);
        }
        let mut out = Ideal::new(&self.ring, quotients)?;
        out.saturated = self.saturated;
        Ok(out)
    }

    /// `I : J`, the intersection of the colons by the generators of `J`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            if self.contains(g) {
                continue;
            }
            let c = self.colon_element(g)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersection(&c)?,
            });
        }
        let mut out = acc.unwrap_or_else(|| Ideal::unit(&self.ring));
        out.saturated = self.saturated;
        Ok(out)
    }

    /// `I : J^∞`, iterating `I : J` until the Gröbner basis stabilizes.
    pub fn saturate_by(&self, other: &Ideal) -> Result<Ideal> {
        let mut cur = self.clone();
        for _ in 0..SATURATION_CAP {
            let next = cur.colon(other)?;
            if next.gb() == cur.gb() {
                return Ok(next);
            }
            cur = next;
        }
        Err(Error::SaturationCap(SATURATION_CAP))
    }

    /// Saturation with respect to the irrelevant ideal; always recomputed.
    pub fn saturate(&self) -> Result<Ideal> {
        let mut s = self.saturate_by(&Ideal::maximal(&self.ring))?;
        s.saturated = true;
        Ok(s)
    }

    /// Saturation, skipped when the ideal is already known to be saturated.
    pub fn saturated(&self) -> Result<Ideal> {
        if self.saturated {
            return Ok(self.clone());
        }
        self.saturate()
    }

    /// Checks `I : m = I` by computation.
    pub fn is_saturated(&self) -> Result<bool> {
        let c = self.colon(&Ideal::maximal(&self.ring))?;
        Ok(c.gb() == self.gb())
    }

    /// `dim_k I_d`.
    pub fn dim_in_degree(&self, d: i64) -> i64 {
        self.hilbert().ideal_dimension(d)
    }

    /// A basis of `I_d`: `x^a - NF(x^a)` for the monomials `x^a` of degree `d` in the initial ideal.
    pub fn basis_of_degree(&self, d: i64) -> Vec<Polynomial> {
        if d < 0 {
            return Vec::new();
        }
        let gb = self.gb();
        let lms = gb.leading_monomials();
        monomials_of_degree(self.ring.nvars(), d as u32)
            .into_iter()
            .filter(|m| lms.iter().any(|l| l.divides(m)))
            .map(|m| {
                let x = self.ring.monomial(1, m);
                &x - &gb.normal_form(&x)
            })
            .collect()
    }

    /// A random `F_p`-combination of a basis of `I_d`.
    pub fn random_element_of_degree(&self, d: i64, rng: &mut impl Rng) -> Result<Polynomial> {
        let basis = self.basis_of_degree(d);
        if basis.is_empty() {
            return Err(Error::NoElementOfDegree(d));
        }
        let p = self.ring.field().prime();
        loop {
            let mut acc = self.ring.zero();
            for b in &basis {
                let c: u32 = rng.gen_range(0..p);
                acc = &acc + &b.scale(c);
            }
            if !acc.is_zero() {
                return Ok(acc);
            }
        }
    }

    /// Smallest degree in which the ideal is nonzero.
    pub fn initial_degree(&self) -> Option<i64> {
        self.gens.iter().filter_map(|g| g.degree()).min().map(|d| d as i64)
    }

    /// Echelon form of `R_1 · I_{d-1} + (extra)_d` inside `R_d`.
    fn span_below(&self, d: i64, extra: Option<&Ideal>, basis: &DegreeBasis) -> Echelon {
        let mut e = Echelon::new(*self.ring.field(), basis.dim());
        for b in self.basis_of_degree(d - 1) {
            for x in self.ring.vars() {
                e.insert(&basis.coordinates(&(&b * &x)));
            }
        }
        if let Some(amb) = extra {
            for b in amb.basis_of_degree(d) {
                e.insert(&basis.coordinates(&b));
            }
        }
        e
    }

    /// Number of minimal generators in each degree: `dim I_j - dim (R_1 · I_{j-1})`.
    pub fn minimal_generators_by_degree(&self) -> BTreeMap<i64, usize> {
        self.minimal_generators_by_degree_over(None)
    }

    /// Minimal generator counts of the image of `I` in `R/ambient` (`ambient ⊆ I`).
    pub fn minimal_generators_by_degree_over(&self, ambient: Option<&Ideal>) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        let Some(lo) = self.initial_degree() else { return out };
        if self.is_unit() {
            out.insert(0, 1);
            return out;
        }
        let hi = self.gb().generators().iter().filter_map(|g| g.degree()).max().unwrap() as i64;
        for d in lo..=hi {
            let dim = self.dim_in_degree(d) as usize;
            if dim == 0 {
                continue;
            }
            let basis = DegreeBasis::new(self.ring.nvars(), d as u32);
            let span = self.span_below(d, ambient, &basis);
            if dim > span.rank() {
                out.insert(d, dim - span.rank());
            }
        }
        out
    }

    /// Total number of minimal generators, optionally modulo an ambient ideal.
    pub fn minimal_generator_count(&self, ambient: Option<&Ideal>) -> usize {
        self.minimal_generators_by_degree_over(ambient).values().sum()
    }

    /// Whether the form `f ∈ I` is part of some minimal generating set of `I` modulo `ambient`.
    pub fn is_minimal_generator(&self, f: &Polynomial, ambient: Option<&Ideal>) -> Result<bool> {
        let d = match f.homogeneity() {
            Homogeneity::Homogeneous(d) => d as i64,
            _ => return Err(Error::InvalidInput("minimal generator test needs a nonzero form".into())),
        };
        if !self.contains(f) {
            return Err(Error::Precondition(format!("{f} is not in the ideal")));
        }
        let basis = DegreeBasis::new(self.ring.nvars(), d as u32);
        let span = self.span_below(d, ambient, &basis);
        Ok(!span.contains(&basis.coordinates(f)))
    }

    /// A minimal generating set extracted from the generators (and Gröbner basis if needed).
    pub fn minimal_generators(&self) -> Vec<Polynomial> {
        if self.is_unit() {
            return vec![self.ring.one()];
        }
        let module = FreeModule::ring_itself(self.ring);
        let cands = self.gens.iter().map(|g| module.from_polynomial(g, 0)).collect();
        minimal_generating_subset(&module, cands).iter().map(|v| module.components(v).pop().unwrap()).collect()
    }

    /// The same ideal presented by a minimal generating set.
    pub fn minimalized(&self) -> Ideal {
        let mut out = Ideal::new(&self.ring, self.minimal_generators()).unwrap();
        if let Some(gb) = self.gb.get() {
            let _ = out.gb.set(gb.clone());
        }
        out.saturated = self.saturated;
        out
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.gens)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// How [`ideal_sum_product`] combines its inputs.
#[derive(Clone, Debug)]
pub enum Combine {
    Sum,
    Product,
    /// Multiply every generator of the first ideal by a form; the second ideal is ignored.
    Scale(Polynomial),
}

pub fn ideal_sum_product(i: &Ideal, j: &Ideal, mode: Combine) -> Result<Ideal> {
    match mode {
        Combine::Sum => i.sum(j),
        Combine::Product => i.product(j),
        Combine::Scale(f) => i.scale(&f),
    }
}

/// Equality of the subschemes defined by `i` and `j`: saturate both and compare bases.
pub fn ideals_equal(i: &Ideal, j: &Ideal) -> Result<bool> {
    i.ring().check_same(j.ring())?;
    Ok(i.saturated()?.gb() == j.saturated()?.gb())
}

/// Checks that `forms` is a regular sequence on `R/ambient`, which must be Cohen–Macaulay.
///
/// The test is `codim(ambient + forms) = codim(ambient) + #forms`.
pub fn check_regular_sequence(forms: &[Polynomial], ambient: &Ideal) -> std::result::Result<(), String> {
    for f in forms {
        match f.homogeneity() {
            Homogeneity::Zero => return Err("zero form in sequence".into()),
            Homogeneity::Inhomogeneous => return Err(format!("{f} is not homogeneous")),
            Homogeneity::Homogeneous(_) => {}
        }
    }
    let base = ambient.hilbert().codimension();
    let with = ambient.with_forms(forms).map_err(|e| e.to_string())?;
    let codim = with.hilbert().codimension();
    if codim == base + forms.len() {
        Ok(())
    } else {
        Err(format!("codimension rises by {} instead of {}", codim as i64 - base as i64, forms.len()))
    }
}

pub fn is_regular_sequence(forms: &[Polynomial], ambient: &Ideal) -> bool {
    check_regular_sequence(forms, ambient).is_ok()
}
