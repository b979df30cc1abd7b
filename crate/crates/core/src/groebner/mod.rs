//! Gröbner bases of ideals and graded modules, normal forms and syzygies.

mod engine;
mod syzygy;
mod vector;

pub use engine::Quotient;
pub use syzygy::{minimal_generating_subset, module_syzygies, syzygy_matrix, SyzygyMatrix};
pub use vector::{FreeModule, VTerm, Vector};

pub(crate) use engine::{reduce_with, Engine};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, TermOrder};
use crate::poly::{Polynomial, Ring};

/// The reduced Gröbner basis of an ideal for a fixed term order: monic, fully interreduced,
/// sorted by descending leading monomial. Equal ideals give identical bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGB {
    ring: Ring,
    generators: Vec<Polynomial>,
    vectors: Vec<Vector>,
    leads: Vec<(Monomial, u32, u32)>,
}

impl ReducedGB {
    fn from_vectors(ring: Ring, vectors: Vec<Vector>) -> ReducedGB {
        let module = FreeModule::ring_itself(ring);
        let generators = vectors.iter().map(|v| module.components(v).pop().unwrap()).collect();
        let leads = lead_keys(&vectors);
        ReducedGB { ring, generators, vectors, leads }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> TermOrder {
        self.ring.order()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators.iter().map(|g| g.leading_monomial().unwrap()).collect()
    }

    /// True for the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    /// Unique remainder of `f` modulo the basis. Panics if `f` lives in another ring.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.ring.check_same(f.ring()).expect("normal form across rings");
        let module = FreeModule::ring_itself(self.ring);
        let v = module.from_polynomial(f, 0);
        let r = reduce_with(&module, &v, &self.vectors, &self.leads, |_| true, false, None);
        module.components(&r).pop().unwrap()
    }

    /// Division with quotients: `f = Σ q_k g_k + normal_form(f)`.
    pub fn divide(&self, f: &Polynomial) -> (Vec<Polynomial>, Polynomial) {
        let module = FreeModule::ring_itself(self.ring);
        let v = module.from_polynomial(f, 0);
        let mut quots = Vec::new();
        let r = reduce_with(&module, &v, &self.vectors, &self.leads, |_| true, false, Some(&mut quots));
        let mut q: Vec<Vec<(u32, Monomial)>> = vec![Vec::new(); self.generators.len()];
        for t in quots {
            q[t.index].push((t.c, t.m));
        }
        let q = q.into_iter().map(|ts| Polynomial::from_terms(self.ring, ts)).collect();
        (q, module.components(&r).pop().unwrap())
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }
}

pub(crate) fn lead_keys(vs: &[Vector]) -> Vec<(Monomial, u32, u32)> {
    vs.iter()
        .map(|v| {
            let t = v.leading().expect("nonzero basis element");
            let mut mask = 0u32;
            for i in 0..crate::monomial::MAX_VARS {
                if t.m.exp(i) != 0 {
                    mask |= 1 << i;
                }
            }
            (t.m, t.comp, mask)
        })
        .collect()
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring`, for `ring`'s term order.
pub fn groebner_basis(ring: &Ring, gens: &[Polynomial]) -> ReducedGB {
    let module = FreeModule::ring_itself(*ring);
    let mut engine = Engine::new(&module, None);
    for g in gens {
        ring.check_same(g.ring()).expect("generator from another ring");
        engine.push_input(module.from_polynomial(g, 0), None);
    }
    engine.run(None);
    let (basis, _) = engine.reduced_basis();
    ReducedGB::from_vectors(*ring, basis)
}

/// Reduced Gröbner basis plus, for each basis element, its expression in terms of `gens`.
pub fn groebner_basis_with_cofactors(ring: &Ring, gens: &[Polynomial]) -> (ReducedGB, Vec<Vec<Polynomial>>) {
    let module = FreeModule::ring_itself(*ring);
    let cof_module = FreeModule::new(*ring, vec![0; gens.len()]);
    let mut engine = Engine::new(&module, Some(cof_module.clone()));
    for (i, g) in gens.iter().enumerate() {
        engine.push_input(module.from_polynomial(g, 0), Some(cof_module.basis(i)));
    }
    engine.run(None);
    let (basis, cofs) = engine.reduced_basis();
    let cofs = cofs.iter().map(|c| cof_module.components(c)).collect();
    (ReducedGB::from_vectors(*ring, basis), cofs)
}

/// Reduced Gröbner basis of `gens` under `ord`. The generators fix the ring.
pub fn reduced_groebner_basis(gens: &[Polynomial], ord: TermOrder) -> Result<ReducedGB> {
    let first = gens.first().ok_or_else(|| Error::InvalidInput("empty generator list".into()))?;
    let ring = first.ring().with_order(ord);
    for g in gens {
        ring.check_same(g.ring())?;
    }
    Ok(groebner_basis(&ring, gens))
}

/// Normal form of `f` with respect to `gb`.
pub fn normal_form(f: &Polynomial, gb: &ReducedGB) -> Polynomial {
    gb.normal_form(f)
}
