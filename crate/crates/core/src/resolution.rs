//! Minimal graded free resolutions, Betti tables, line-bundle cohomology and Rao tables.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{lead_keys, reduce_with, FreeModule, Quotient, Vector};
use crate::ideal::Ideal;
use crate::linalg::{DegreeBasis, Echelon};
use crate::monomial::{binomial, count_monomials, Monomial};
use crate::poly::{Polynomial, Ring};

/// `0 <- R/I <- F_0 <- F_1 <- ... <- F_p <- 0` with `F_0 = R`.
///
/// `maps[i]` holds the columns of `F_{i+1} -> F_i`, each an element of `modules[i]`.
#[derive(Clone, Debug)]
pub struct GradedFreeResolution {
    ring: Ring,
    modules: Vec<FreeModule>,
    maps: Vec<Vec<Vector>>,
}

impl GradedFreeResolution {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Projective dimension of `R/I`; 0 for the unit ideal (empty resolution of the zero module).
    pub fn projective_dimension(&self) -> usize {
        self.maps.len()
    }

    /// Generator degrees of `F_i`.
    pub fn twists(&self, i: usize) -> &[i64] {
        self.modules[i].shifts()
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// The matrix of `F_{i+1} -> F_i` as rows of polynomials (one row per generator of `F_i`).
    pub fn matrix(&self, i: usize) -> Vec<Vec<Polynomial>> {
        let cols: Vec<Vec<Polynomial>> = self.maps[i].iter().map(|v| self.modules[i].components(v)).collect();
        let rows = self.modules[i].rank();
        (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
    }

    /// `betti[i][j]`: number of generators of `F_i` of degree `j`.
    pub fn betti(&self) -> Vec<BTreeMap<i64, usize>> {
        self.modules
            .iter()
            .map(|m| {
                let mut t = BTreeMap::new();
                for &s in m.shifts() {
                    *t.entry(s).or_insert(0) += 1;
                }
                t
            })
            .collect()
    }

    /// Castelnuovo–Mumford regularity of the ideal `I`: `max_i (max twist of F_i) - (i - 1)`.
    pub fn regularity(&self) -> i64 {
        (1..self.modules.len())
            .filter_map(|i| self.modules[i].shifts().iter().max().map(|&m| m - (i as i64 - 1)))
            .max()
            .unwrap_or(0)
    }

    /// Every composite `F_{i+1} -> F_i -> F_{i-1}` vanishes.
    pub fn composition_is_zero(&self) -> bool {
        for i in 1..self.maps.len() {
            let lower = &self.maps[i - 1];
            let target = &self.modules[i - 1];
            for col in &self.maps[i] {
                let coeffs = self.modules[i].components(col);
                if !target.combination(&coeffs, lower).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// No entry is a nonzero constant.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().flatten().all(|v| v.terms().iter().all(|t| !t.m.is_one()))
    }

    /// `dim_k (R/I)_j` from the alternating sum of the free modules.
    pub fn hilbert_function(&self, j: i64) -> i64 {
        let n = self.ring.nvars();
        let mut acc: i128 = 0;
        for (i, m) in self.modules.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for &a in m.shifts() {
                acc += sign * count_monomials(n, j - a);
            }
        }
        acc as i64
    }
}

/// Minimal free resolution of `R/I`.
///
/// Schreyer's construction starting from the reduced Gröbner basis gives a free resolution in
/// which every level is already a Gröbner basis for the induced order. Unit entries are then
/// cancelled until the resolution is minimal.
pub fn minimal_free_resolution(ideal: &Ideal) -> Result<GradedFreeResolution> {
    let ring = *ideal.ring();
    let f0 = FreeModule::ring_itself(ring);
    if ideal.is_unit() {
        return Ok(GradedFreeResolution { ring, modules: vec![f0], maps: Vec::new() });
    }
    let gb = ideal.gb().generators();
    if gb.is_empty() {
        return Ok(GradedFreeResolution { ring, modules: vec![f0], maps: Vec::new() });
    }
    let mut shifts = vec![vec![0i64]];
    let mut mats: Vec<Vec<Vec<Polynomial>>> = Vec::new();
    let mut target = f0;
    let mut gens: Vec<Vector> = gb.iter().map(|g| target.from_polynomial(g, 0)).collect();
    for level in 0.. {
        if level > ring.nvars() {
            return Err(Error::Verification("Schreyer resolution longer than the number of variables".into()));
        }
        // sorting by the exponent of x_level keeps that variable out of the next leading terms
        let v = level.min(ring.nvars() - 1);
        gens.sort_by(|a, b| {
            let (ta, tb) = (a.leading().unwrap(), b.leading().unwrap());
            ta.comp.cmp(&tb.comp).then(tb.m.exp(v).cmp(&ta.m.exp(v)))
        });
        let source = FreeModule::induced(&target, &gens);
        mats.push(dense_matrix(&target, &gens));
        shifts.push(source.shifts().to_vec());
        let next = schreyer_syzygies(&target, &source, &gens);
        if next.is_empty() {
            break;
        }
        target = source;
        gens = next;
    }
    minimize(&mut shifts, &mut mats);
    while shifts.len() > 1 && shifts.last().unwrap().is_empty() {
        shifts.pop();
        mats.pop();
    }
    let modules: Vec<FreeModule> = shifts.into_iter().map(|s| FreeModule::new(ring, s)).collect();
    let maps = mats
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let cols = modules[k + 1].rank();
            (0..cols)
                .map(|c| {
                    let comps: Vec<Polynomial> = m.iter().map(|row| row[c].clone()).collect();
                    modules[k].from_components(&comps)
                })
                .collect()
        })
        .collect();
    Ok(GradedFreeResolution { ring, modules, maps })
}

/// Rows of the matrix whose columns are `cols`.
fn dense_matrix(target: &FreeModule, cols: &[Vector]) -> Vec<Vec<Polynomial>> {
    let ring = *target.ring();
    let mut m = vec![vec![ring.zero(); cols.len()]; target.rank()];
    for (c, v) in cols.iter().enumerate() {
        for (r, p) in target.components(v).into_iter().enumerate() {
            m[r][c] = p;
        }
    }
    m
}

/// Schreyer's generators of the syzygies of a Gröbner basis `gens` of a submodule of `target`,
/// as elements of `source` (which carries the induced order). They form a Gröbner basis.
fn schreyer_syzygies(target: &FreeModule, source: &FreeModule, gens: &[Vector]) -> Vec<Vector> {
    let leads = lead_keys(gens);
    let mut out = Vec::new();
    for i in 0..gens.len() {
        let (mi, ci, _) = leads[i];
        let mults: Vec<(usize, Monomial)> = (i + 1..gens.len())
            .filter(|&j| leads[j].1 == ci)
            .map(|j| (j, mi.quotient(&mi.lcm(&leads[j].0)).unwrap()))
            .collect();
        for (a, &(j, m)) in mults.iter().enumerate() {
            let redundant = mults.iter().enumerate().any(|(b, &(_, m2))| b != a && m2.divides(&m) && (m2 != m || b < a));
            if redundant {
                continue;
            }
            let mj = leads[j].0.quotient(&mi.mul(&m)).unwrap();
            let ci_inv = target.ring().field().inv(gens[i].leading().unwrap().c);
            let cj = target.ring().field().mul(gens[j].leading().unwrap().c, ci_inv);
            let s = target.sub_mul_term(&target.mul_term(&gens[i], ci_inv, &m), cj, &mj, &gens[j]);
            let mut quots: Vec<Quotient> = Vec::new();
            let r = reduce_with(target, &s, gens, &leads, |_| true, false, Some(&mut quots));
            debug_assert!(r.is_zero());
            let mut col = source.mul_term(&source.basis(i), ci_inv, &m);
            col = source.sub_mul_term(&col, cj, &mj, &source.basis(j));
            for q in &quots {
                col = source.sub_mul_term(&col, q.c, &q.m, &source.basis(q.index));
            }
            out.push(source.monic(&col));
        }
    }
    out
}

/// Cancels constant entries: a unit at `(r, c)` of `F_{k+1} -> F_k` splits off `R(-a) -> R(-a)`.
fn minimize(shifts: &mut [Vec<i64>], mats: &mut [Vec<Vec<Polynomial>>]) {
    for k in 0..mats.len() {
        loop {
            // lowest twist first, then position
            let unit = mats[k]
                .iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, p)| (r, c, p)))
                .filter(|(_, _, p)| p.is_constant() && !p.is_zero())
                .min_by_key(|&(r, c, _)| (shifts[k + 1][c], r, c))
                .map(|(r, c, _)| (r, c));
            let Some((r, c)) = unit else { break };
            let m = &mut mats[k];
            let field = *m[r][c].ring().field();
            let u_inv = field.inv(m[r][c].leading_coefficient().unwrap());
            let pivot_col: Vec<(usize, Polynomial)> =
                (0..m.len()).filter(|&r2| !m[r2][c].is_zero()).map(|r2| (r2, m[r2][c].clone())).collect();
            for c2 in 0..m[r].len() {
                if c2 == c || m[r][c2].is_zero() {
                    continue;
                }
                let f = m[r][c2].scale(u_inv);
                for (r2, p) in &pivot_col {
                    m[*r2][c2] = &m[*r2][c2] - &(&f * p);
                }
            }
            m.remove(r);
            for row in m.iter_mut() {
                row.remove(c);
            }
            if k > 0 {
                for row in mats[k - 1].iter_mut() {
                    row.remove(r);
                }
            }
            if k + 1 < mats.len() {
                mats[k + 1].remove(c);
            }
            shifts[k].remove(r);
            shifts[k + 1].remove(c);
        }
    }
}

/// `dim H^i(P^n, O(d))`.
pub fn line_bundle_cohomology(n: i64, d: i64, i: i64) -> i64 {
    if i == 0 && d >= 0 {
        binomial(n + d, n) as i64
    } else if i == n && d <= -n - 1 {
        binomial(-d - 1, n) as i64
    } else {
        0
    }
}

/// `dim_k H^1(I_C(j))` over a window, with flags for vanishing at both ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RaoTable {
    pub jmin: i64,
    pub jmax: i64,
    pub values: BTreeMap<i64, i64>,
    pub zero_at_start: bool,
    pub zero_at_end: bool,
}

impl RaoTable {
    pub fn get(&self, j: i64) -> i64 {
        self.values.get(&j).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|&v| v == 0)
    }

    /// Only the nonzero entries.
    pub fn support(&self) -> BTreeMap<i64, i64> {
        self.values.iter().filter(|(_, &v)| v != 0).map(|(&j, &v)| (j, v)).collect()
    }

    /// Both window ends vanish.
    pub fn certified(&self) -> bool {
        self.zero_at_start && self.zero_at_end
    }
}

/// Default window `[-5, reg + 2]`.
pub fn default_rao_window(res: &GradedFreeResolution) -> (i64, i64) {
    (-5, res.regularity() + 2)
}

/// Rao table of a curve in `P^n` from its minimal free resolution.
///
/// Chasing the resolution of the ideal sheaf through line-bundle cohomology gives
/// `H^1(I_C(j)) = ker(H^n(F_n(j)) -> H^n(F_{n-1}(j)))` when `pd(R/I) = n`, and zero when
/// `pd(R/I) < n`. The kernel is computed dually as `h^n(F_n(j))` minus the rank of the
/// transposed matrix on `⊕ R_{b-j-n-1} -> ⊕ R_{a-j-n-1}`.
pub fn rao_dimensions(ideal: &Ideal, res: &GradedFreeResolution, window: (i64, i64)) -> Result<RaoTable> {
    let nv = ideal.ring().nvars();
    let n = nv as i64 - 1;
    if ideal.hilbert().dimension() != Some(2) {
        return Err(Error::Precondition("Rao tables are computed for curves only".into()));
    }
    let pd = res.projective_dimension();
    if pd > n as usize {
        return Err(Error::Precondition("ideal is not saturated (projective dimension n+1)".into()));
    }
    let (jmin, jmax) = window;
    if jmin > jmax {
        return Err(Error::InvalidInput(format!("empty window {jmin}:{jmax}")));
    }
    let mut values = BTreeMap::new();
    for j in jmin..=jmax {
        let v = if pd < n as usize { 0 } else { top_kernel(res, n as usize, j, nv) };
        values.insert(j, v);
    }
    Ok(RaoTable {
        jmin,
        jmax,
        zero_at_start: values[&jmin] == 0,
        zero_at_end: values[&jmax] == 0,
        values,
    })
}

fn top_kernel(res: &GradedFreeResolution, p: usize, j: i64, nv: usize) -> i64 {
    let n = nv as i64 - 1;
    let a = res.twists(p); // F_p
    let b = res.twists(p - 1); // F_{p-1}
    let h_top: i64 = a.iter().map(|&ac| line_bundle_cohomology(n, j - ac, n)).sum();
    if h_top == 0 {
        return 0;
    }
    // target coordinates: ⊕_c R_{a_c - j - n - 1}
    let tdeg: Vec<i64> = a.iter().map(|&ac| ac - j - n - 1).collect();
    let bases: Vec<Option<DegreeBasis>> =
        tdeg.iter().map(|&d| (d >= 0).then(|| DegreeBasis::new(nv, d as u32))).collect();
    let mut offsets = Vec::with_capacity(a.len());
    let mut total = 0usize;
    for bs in &bases {
        offsets.push(total);
        total += bs.as_ref().map_or(0, |b| b.dim());
    }
    let field = *res.ring().field();
    let mut e = Echelon::new(field, total);
    let mat = res.matrix(p - 1); // rows: F_{p-1} generators, cols: F_p generators
    for (r, &br) in b.iter().enumerate() {
        let sd = br - j - n - 1;
        if sd < 0 {
            continue;
        }
        for m in crate::monomial::monomials_of_degree(nv, sd as u32) {
            let u = res.ring().monomial(1, m);
            let mut row: Vec<(usize, u32)> = Vec::new();
            for (c, bs) in bases.iter().enumerate() {
                let Some(bs) = bs else { continue };
                let entry = &mat[r][c];
                if entry.is_zero() {
                    continue;
                }
                let img = &u * entry;
                for (k, v) in bs.coordinates(&img) {
                    row.push((offsets[c] + k, v));
                }
            }
            e.insert(&row);
        }
    }
    h_top - e.rank() as i64
}

/// ACM test for a curve: `pd(R/I) = codim`, cross-checked against a vanishing Rao table.
pub fn is_acm_curve(ideal: &Ideal) -> Result<bool> {
    if ideal.hilbert().dimension() != Some(2) {
        return Err(Error::Precondition("ACM test expects a curve".into()));
    }
    let res = minimal_free_resolution(ideal)?;
    let codim = ideal.ring().nvars() - 2;
    let by_pd = res.projective_dimension() == codim;
    let rao = rao_dimensions(ideal, &res, default_rao_window(&res))?;
    if by_pd != rao.is_zero() {
        return Err(Error::Verification(format!(
            "projective dimension {} disagrees with Rao table {:?}",
            res.projective_dimension(),
            rao.support()
        )));
    }
    Ok(by_pd)
}
