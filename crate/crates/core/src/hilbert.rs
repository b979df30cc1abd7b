//! Hilbert series, function and polynomial of a graded quotient `R/I`.
//!
//! The series is read off the leading-term ideal of a graded Gröbner basis. For a monomial ideal
//! `M` the numerator of `HS(R/M) = N(t) / (1-t)^n` comes from the pivot recursion
//! `N(M) = N(M + (x)) + t N(M : x)`.

use serde::Serialize;

use crate::monomial::{binomial, count_monomials, Monomial};

/// Integer polynomial in `t`, lowest degree first.
type Series = Vec<i64>;

fn trim(mut a: Series) -> Series {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn add_shifted(a: &mut Series, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (k, &v) in b.iter().enumerate() {
        a[k + shift] += v;
    }
}

fn minimize(gens: &mut Vec<Monomial>) {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens.iter() {
        if !out.iter().any(|g| g.divides(m)) {
            out.push(*m);
        }
    }
    *gens = out;
}

/// Numerator `N(t)` with `HS(R/M) = N(t)/(1-t)^nvars`.
pub fn monomial_numerator(gens: &[Monomial], nvars: usize) -> Vec<i64> {
    let mut g = gens.to_vec();
    minimize(&mut g);
    trim(numerator_rec(g, nvars))
}

fn is_pure_power(m: &Monomial, nvars: usize) -> bool {
    (0..nvars).filter(|&i| m.exp(i) > 0).count() <= 1
}

fn numerator_rec(gens: Vec<Monomial>, nvars: usize) -> Series {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    if gens.iter().all(|m| is_pure_power(m, nvars)) {
        // pure powers of distinct variables form a regular sequence
        let mut acc: Series = vec![1];
        for m in &gens {
            let d = m.degree() as usize;
            let mut next = acc.clone();
            add_shifted(&mut next, &acc.iter().map(|v| -v).collect::<Vec<_>>(), d);
            acc = next;
        }
        return acc;
    }
    // pivot on the variable occurring in the most non-pure generators
    let mut counts = vec![0usize; nvars];
    for m in gens.iter().filter(|m| !is_pure_power(m, nvars)) {
        for (i, c) in counts.iter_mut().enumerate() {
            if m.exp(i) > 0 {
                *c += 1;
            }
        }
    }
    let x = (0..nvars).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let var = Monomial::var(x);

    let mut plus: Vec<Monomial> = gens.iter().filter(|m| m.exp(x) == 0).copied().collect();
    plus.push(var);
    minimize(&mut plus);
    let mut colon: Vec<Monomial> = gens.iter().map(|m| m.with_exp(x, m.exp(x).saturating_sub(1))).collect();
    minimize(&mut colon);

    let mut acc = numerator_rec(plus, nvars);
    add_shifted(&mut acc, &numerator_rec(colon, nvars), 1);
    acc
}

/// Hilbert data of `R/I` with `R` in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    nvars: usize,
    numerator: Vec<i64>,
    /// Krull dimension of `R/I`; `None` for the unit ideal.
    dimension: Option<usize>,
    /// `N(t) / (1-t)^(nvars - dim)`.
    reduced_numerator: Vec<i64>,
}

impl HilbertData {
    pub fn from_leading_monomials(lms: &[Monomial], nvars: usize) -> HilbertData {
        let numerator = monomial_numerator(lms, nvars);
        if numerator.is_empty() {
            return HilbertData { nvars, numerator, dimension: None, reduced_numerator: Vec::new() };
        }
        let mut q = numerator.clone();
        let mut poles = nvars;
        // divide by (1 - t) while t = 1 is a root
        while q.iter().sum::<i64>() == 0 {
            let mut out = vec![0i64; q.len() - 1];
            let mut acc = 0;
            for k in 0..out.len() {
                acc += q[k];
                out[k] = acc;
            }
            q = trim(out);
            poles -= 1;
        }
        HilbertData { nvars, numerator, dimension: Some(poles), reduced_numerator: q }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn reduced_numerator(&self) -> &[i64] {
        &self.reduced_numerator
    }

    pub fn dimension(&self) -> Option<usize> {
        self.dimension
    }

    /// Codimension of `I`: `nvars - dim`, or `nvars + 1` for the unit ideal.
    pub fn codimension(&self) -> usize {
        match self.dimension {
            Some(d) => self.nvars - d,
            None => self.nvars + 1,
        }
    }

    /// Multiplicity; 0 for the unit ideal.
    pub fn degree(&self) -> i64 {
        self.reduced_numerator.iter().sum()
    }

    /// `dim_k (R/I)_j`.
    pub fn hilbert_function(&self, j: i64) -> i64 {
        let mut acc: i128 = 0;
        for (k, &c) in self.numerator.iter().enumerate() {
            acc += c as i128 * count_monomials(self.nvars, j - k as i64);
        }
        acc as i64
    }

    /// `dim_k I_j`.
    pub fn ideal_dimension(&self, j: i64) -> i64 {
        count_monomials(self.nvars, j) as i64 - self.hilbert_function(j)
    }

    /// Hilbert polynomial evaluated at any integer `j`.
    pub fn hilbert_polynomial(&self, j: i64) -> i64 {
        let Some(dim) = self.dimension else { return 0 };
        if dim == 0 {
            return 0;
        }
        let mut acc: i128 = 0;
        for (k, &c) in self.reduced_numerator.iter().enumerate() {
            acc += c as i128 * binomial_poly(j - k as i64 + dim as i64 - 1, dim as i64 - 1);
        }
        acc as i64
    }

    /// Coefficients `e_0..e_{dim-1}` with `HP(j) = Σ (-1)^i e_i C(j + dim-1-i, dim-1-i)`.
    pub fn hilbert_polynomial_coefficients(&self) -> Vec<i64> {
        let Some(dim) = self.dimension else { return Vec::new() };
        (0..dim as i64)
            .map(|i| {
                self.reduced_numerator
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| c as i128 * binomial(k as i64, i))
                    .sum::<i128>() as i64
            })
            .collect()
    }

    /// From this degree on the Hilbert function equals the Hilbert polynomial.
    pub fn polynomial_agrees_from(&self) -> i64 {
        self.numerator.len() as i64 - self.nvars as i64
    }

    /// Arithmetic genus `1 - HP(0)` when `R/I` has dimension 2 (a curve in projective space).
    pub fn curve_genus(&self) -> Option<i64> {
        (self.dimension == Some(2)).then(|| 1 - self.hilbert_polynomial(0))
    }
}

/// `C(x, k)` as a polynomial in `x`, valid for negative `x`.
pub fn binomial_poly(x: i64, k: i64) -> i128 {
    if k < 0 {
        return 0;
    }
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k {
        num *= (x - i) as i128;
        den *= (i + 1) as i128;
    }
    num / den
}
