//! Sparse multivariate polynomials over `F_p`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::FieldConfig;
use crate::monomial::{Monomial, TermOrder, MAX_VARS};

/// Polynomial ring `F_p[x0..x{n-1}]` together with the term order its elements are sorted by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    nvars: usize,
    field: FieldConfig,
    order: TermOrder,
}

impl Ring {
    pub fn new(nvars: usize, field: FieldConfig, order: TermOrder) -> Result<Ring> {
        if nvars == 0 || nvars > MAX_VARS {
            return Err(Error::InvalidInput(format!("ring size {nvars} outside 1..={MAX_VARS}")));
        }
        if let TermOrder::Elimination(k) = order {
            if k > nvars {
                return Err(Error::InvalidInput(format!("elimination block {k} exceeds {nvars} variables")));
            }
        }
        Ok(Ring { nvars, field, order })
    }

    /// The coordinate ring of `P^n` (so `n + 1` variables), grevlex, default prime.
    pub fn projective(n: usize) -> Ring {
        Ring::new(n + 1, FieldConfig::default(), TermOrder::Grevlex).expect("valid ring")
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn field(&self) -> &FieldConfig {
        &self.field
    }

    #[inline]
    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn with_order(&self, order: TermOrder) -> Ring {
        Ring::new(self.nvars, self.field, order).expect("order fits ring")
    }

    pub fn with_field(&self, field: FieldConfig) -> Ring {
        Ring { field, ..*self }
    }

    pub fn var(&self, i: usize) -> Polynomial {
        assert!(i < self.nvars, "variable x{i} not in ring of {} variables", self.nvars);
        Polynomial { ring: *self, terms: vec![(1, Monomial::var(i))] }
    }

    pub fn vars(&self) -> Vec<Polynomial> {
        (0..self.nvars).map(|i| self.var(i)).collect()
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { ring: *self, terms: Vec::new() }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        let c = self.field.from_i64(c);
        let terms = if c == 0 { Vec::new() } else { vec![(c, Monomial::ONE)] };
        Polynomial { ring: *self, terms }
    }

    pub fn monomial(&self, c: u32, m: Monomial) -> Polynomial {
        Polynomial::from_terms(*self, vec![(c, m)])
    }

    pub fn check_same(&self, other: &Ring) -> Result<()> {
        if self.nvars != other.nvars || self.field != other.field {
            return Err(Error::RingMismatch(format!(
                "{} vars over F_{} vs {} vars over F_{}",
                self.nvars,
                self.field.prime(),
                other.nvars,
                other.field.prime()
            )));
        }
        Ok(())
    }
}

/// Result of [`Polynomial::homogeneity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Homogeneous(u32),
    /// The zero polynomial: homogeneous, but of no particular degree.
    Zero,
    Inhomogeneous,
}

impl Homogeneity {
    pub fn is_homogeneous(&self) -> bool {
        !matches!(self, Homogeneity::Inhomogeneous)
    }
}

/// A polynomial as a list of `(coefficient, monomial)` pairs, strictly descending in the ring's order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(u32, Monomial)>,
}

impl Polynomial {
    /// Builds a normalized polynomial from arbitrary terms (unsorted, repeated, zero coefficients allowed).
    pub fn from_terms(ring: Ring, mut terms: Vec<(u32, Monomial)>) -> Polynomial {
        let ord = ring.order;
        terms.sort_by(|a, b| ord.cmp(&b.1, &a.1));
        let f = &ring.field;
        let mut out: Vec<(u32, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            let c = c % f.prime();
            match out.last_mut() {
                Some(last) if last.1 == m => last.0 = f.add(last.0, c),
                _ => out.push((c, m)),
            }
        }
        out.retain(|t| t.0 != 0);
        Polynomial { ring, terms: out }
    }

    /// Trusted constructor: `terms` must already be normalized.
    pub(crate) fn from_sorted(ring: Ring, terms: Vec<(u32, Monomial)>) -> Polynomial {
        debug_assert!(terms.windows(2).all(|w| ring.order.cmp(&w[0].1, &w[1].1) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.0 != 0));
        Polynomial { ring, terms }
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(u32, Monomial)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(u32, Monomial)> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.1.is_one())
    }

    pub fn leading_term(&self) -> Option<(u32, Monomial)> {
        self.terms.first().copied()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.1)
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0)
    }

    /// Maximum total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.1.degree()).max()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let Some(first) = self.terms.first() else {
            return Homogeneity::Zero;
        };
        let d = first.1.degree();
        if self.terms.iter().all(|t| t.1.degree() == d) {
            Homogeneity::Homogeneous(d)
        } else {
            Homogeneity::Inhomogeneous
        }
    }

    /// `(true, Some(d))` for nonzero homogeneous forms, `(true, None)` for zero.
    pub fn is_homogeneous(&self) -> (bool, Option<u32>) {
        match self.homogeneity() {
            Homogeneity::Homogeneous(d) => (true, Some(d)),
            Homogeneity::Zero => (true, None),
            Homogeneity::Inhomogeneous => (false, None),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.iter().find(|t| t.1 == *m).map_or(0, |t| t.0)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field;
        let c = c % f.prime();
        if c == 0 {
            return self.ring.zero();
        }
        Polynomial { ring: self.ring, terms: self.terms.iter().map(|&(a, m)| (f.mul(a, c), m)).collect() }
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) => self.scale(self.ring.field.inv(c)),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, c: u32, m: &Monomial) -> Polynomial {
        let f = self.ring.field;
        if c % f.prime() == 0 {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|&(a, n)| (f.mul(a, c), n.mul(m))).collect(),
        }
    }

    /// `self - c * m * g`, by a single merge pass.
    pub fn sub_mul_term(&self, c: u32, m: &Monomial, g: &Polynomial) -> Polynomial {
        let f = self.ring.field;
        let ord = self.ring.order;
        let neg = f.neg(c);
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < g.terms.len() {
            if j == g.terms.len() {
                out.extend_from_slice(&self.terms[i..]);
                break;
            }
            let gm = g.terms[j].1.mul(m);
            if i == self.terms.len() {
                out.push((f.mul(neg, g.terms[j].0), gm));
                j += 1;
                continue;
            }
            match ord.cmp(&self.terms[i].1, &gm) {
                Ordering::Greater => {
                    out.push(self.terms[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((f.mul(neg, g.terms[j].0), gm));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(self.terms[i].0, f.mul(neg, g.terms[j].0));
                    if v != 0 {
                        out.push((v, gm));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: self.ring, terms: out }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        Ok(self.sub_mul_term(self.ring.field.neg(1), &Monomial::ONE, &other.reordered(self.ring.order)))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        Ok(self.sub_mul_term(1, &Monomial::ONE, &other.reordered(self.ring.order)))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.ring.zero());
        }
        let f = self.ring.field;
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(self.len() * other.len());
        for &(a, m) in &self.terms {
            for &(b, n) in &other.terms {
                let e = acc.entry(m.mul(&n)).or_insert(0);
                *e = f.add(*e, f.mul(a, b));
            }
        }
        Ok(Polynomial::from_terms(self.ring, acc.into_iter().map(|(m, c)| (c, m)).collect()))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The same polynomial re-sorted for a different term order.
    pub fn reordered(&self, order: TermOrder) -> Polynomial {
        if order == self.ring.order {
            return self.clone();
        }
        Polynomial::from_terms(self.ring.with_order(order), self.terms.clone())
    }

    /// Reinterprets the polynomial in `target`, renaming `x_i` to `x_{i+offset}`.
    pub fn embed(&self, target: Ring, offset: usize) -> Polynomial {
        assert!(self.ring.nvars + offset <= target.nvars, "target ring too small");
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|&(c, m)| (c, m.shifted(offset, self.ring.nvars))).collect(),
        )
    }

    /// Inverse of [`Polynomial::embed`]; `None` if a dropped variable occurs.
    pub fn restrict(&self, target: Ring, offset: usize) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(c, m) in &self.terms {
            if (0..offset).any(|i| m.exp(i) != 0) {
                return None;
            }
            terms.push((c, m.unshifted(offset)));
        }
        Some(Polynomial::from_terms(target, terms))
    }

    /// Renames `x_i` to `x_{perm[i]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Polynomial {
        Polynomial::from_terms(self.ring, self.terms.iter().map(|&(c, m)| (c, m.permuted(perm))).collect())
    }

    /// Substitutes `images[i]` for `x_i`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars {
            return Err(Error::InvalidInput("substitution needs one image per variable".into()));
        }
        let target = *images[0].ring();
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![target.one(), p.clone()]).collect();
        let mut acc = target.zero();
        for &(c, m) in &self.terms {
            let mut t = target.constant(c as i64);
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                while pw.len() <= e {
                    let next = pw.last().unwrap().checked_mul(&images[i])?;
                    pw.push(next);
                }
                if e > 0 {
                    t = t.checked_mul(&pw[e])?;
                }
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn divide_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        let (dc, dm) = d.leading_term()?;
        let dinv = self.ring.field.inv(dc);
        let mut rest = self.clone();
        let mut quot = Vec::new();
        while let Some((c, m)) = rest.leading_term() {
            let q = dm.quotient(&m)?;
            let qc = self.ring.field.mul(c, dinv);
            quot.push((qc, q));
            rest = rest.sub_mul_term(qc, &q, d);
        }
        Some(Polynomial::from_terms(self.ring, quot))
    }

    /// Evaluates at a point given by coordinates in `F_p`.
    pub fn evaluate(&self, point: &[u32]) -> u32 {
        let f = self.ring.field;
        let mut acc = 0;
        for &(c, m) in &self.terms {
            let mut v = c;
            for (i, &x) in point.iter().enumerate().take(self.ring.nvars) {
                v = f.mul(v, f.pow(x, m.exp(i) as u64));
            }
            acc = f.add(acc, v);
        }
        acc
    }

    /// Forms of degree `d` only.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().copied().filter(|t| t.1.degree() == d).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field;
        for (k, &(c, m)) in self.terms.iter().enumerate() {
            let s = field.to_signed(c);
            let (neg, abs) = (s < 0, s.unsigned_abs());
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if abs != 1 {
                    write!(f, "{abs}*")?;
                }
                m.fmt_with(self.ring.nvars, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on mismatched rings; see [`Polynomial::checked_add`].
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in polynomial product")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.field.neg(1))
    }
}
