//! Schreyer syzygies and minimal generating sets of graded submodules.

use crate::error::{Error, Result};
use crate::groebner::engine::{reduce_with, Engine, Quotient};
use crate::groebner::vector::{FreeModule, Vector};
use crate::groebner::lead_keys;
use crate::poly::Polynomial;

/// Relations among an ordered list of homogeneous module elements `g_1..g_s` of `target`.
///
/// Columns live in `source = ⊕ R(-deg g_i)`; applying the generator row to a column gives zero.
#[derive(Clone, Debug)]
pub struct SyzygyMatrix {
    pub source: FreeModule,
    pub columns: Vec<Vector>,
    /// Degree of each column in `source`.
    pub column_degrees: Vec<i64>,
}

impl SyzygyMatrix {
    /// Column `k` as one polynomial per generator.
    pub fn column(&self, k: usize) -> Vec<Polynomial> {
        self.source.components(&self.columns[k])
    }
}

/// Syzygies of an ordered list of nonzero homogeneous polynomials.
pub fn syzygy_matrix(gens: &[Polynomial]) -> Result<SyzygyMatrix> {
    let first = gens.first().ok_or_else(|| Error::InvalidInput("empty generator list".into()))?;
    let ring = first.ring().with_order(crate::monomial::TermOrder::Grevlex);
    let target = FreeModule::ring_itself(ring);
    let mut vs = Vec::with_capacity(gens.len());
    for g in gens {
        ring.check_same(g.ring())?;
        vs.push(target.from_polynomial(g, 0));
    }
    module_syzygies(&target, &vs)
}

/// Syzygies of homogeneous elements of `target`, pruned to a minimal generating set.
pub fn module_syzygies(target: &FreeModule, gens: &[Vector]) -> Result<SyzygyMatrix> {
    let mut shifts = Vec::with_capacity(gens.len());
    for g in gens {
        if g.is_zero() {
            return Err(Error::Precondition("syzygies of a zero generator".into()));
        }
        shifts.push(target.degree_of(g).ok_or_else(|| Error::Precondition("inhomogeneous generator".into()))?);
    }
    let source = FreeModule::new(*target.ring(), shifts);
    let candidates = schreyer_columns(target, &source, gens);
    let columns = minimal_generating_subset(&source, candidates);
    let column_degrees = columns.iter().map(|c| source.degree_of(c).unwrap()).collect();
    Ok(SyzygyMatrix { source, columns, column_degrees })
}

/// Generators of the syzygy module of `gens` by Schreyer's construction, not yet minimal.
fn schreyer_columns(target: &FreeModule, source: &FreeModule, gens: &[Vector]) -> Vec<Vector> {
    let mut engine = Engine::new(target, Some(source.clone()));
    for (i, g) in gens.iter().enumerate() {
        engine.push_input(g.clone(), Some(source.basis(i)));
    }
    engine.run(None);
    let (basis, lift) = engine.reduced_basis();
    let leads = lead_keys(&basis);
    let t = basis.len();

    // Schreyer pairs: keep only pairs whose monomial multiplier on e_i is minimal
    let mut out = Vec::new();
    for i in 0..t {
        let (mi, ci, _) = leads[i];
        let mut mults: Vec<(usize, crate::monomial::Monomial)> = Vec::new();
        for j in i + 1..t {
            let (mj, cj, _) = leads[j];
            if cj == ci {
                mults.push((j, mi.quotient(&mi.lcm(&mj)).unwrap()));
            }
        }
        for (a, &(j, m)) in mults.iter().enumerate() {
            let redundant = mults
                .iter()
                .enumerate()
                .any(|(b, &(_, m2))| b != a && m2.divides(&m) && (m2 != m || b < a));
            if redundant {
                continue;
            }
            let mj = leads[j].0.quotient(&mi.mul(&m)).unwrap();
            let s = target.sub_mul_term(&target.mul_term(&basis[i], 1, &m), 1, &mj, &basis[j]);
            let mut quots: Vec<Quotient> = Vec::new();
            let r = reduce_with(target, &s, &basis, &leads, |_| true, false, Some(&mut quots));
            debug_assert!(r.is_zero());
            // column = m T_i - mj T_j - Σ q T_k
            let mut col = source.mul_term(&lift[i], 1, &m);
            col = source.sub_mul_term(&col, 1, &mj, &lift[j]);
            for q in &quots {
                col = source.sub_mul_term(&col, q.c, &q.m, &lift[q.index]);
            }
            if !col.is_zero() {
                out.push(col);
            }
        }
    }
    // e_i - Σ U_ik T_k, where g_i = Σ U_ik G_k
    for (i, g) in gens.iter().enumerate() {
        let mut quots: Vec<Quotient> = Vec::new();
        let r = reduce_with(target, g, &basis, &leads, |_| true, false, Some(&mut quots));
        debug_assert!(r.is_zero());
        let mut col = source.basis(i);
        for q in &quots {
            col = source.sub_mul_term(&col, q.c, &q.m, &lift[q.index]);
        }
        if !col.is_zero() {
            out.push(col);
        }
    }
    out
}

/// A minimal generating subset of the submodule spanned by homogeneous `candidates`.
///
/// Candidates are scanned by increasing degree (stable within a degree); one is kept when it is
/// not in the span of what has been kept so far.
pub fn minimal_generating_subset(module: &FreeModule, candidates: Vec<Vector>) -> Vec<Vector> {
    let mut cands: Vec<(i64, Vector)> = candidates
        .into_iter()
        .filter(|c| !c.is_zero())
        .map(|c| (module.degree_of(&c).expect("homogeneous candidate"), c))
        .collect();
    cands.sort_by_key(|c| c.0);
    let mut engine = Engine::new(module, None);
    let mut kept = Vec::new();
    let mut current = None;
    for (d, c) in cands {
        if current != Some(d) {
            engine.run(Some(d));
            current = Some(d);
        }
        if engine.add(&c, Vector::default(), d) {
            kept.push(c);
        }
    }
    kept
}
