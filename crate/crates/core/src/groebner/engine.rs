//! Buchberger's algorithm on submodules of graded free modules.
//!
//! Pairs are selected by the normal strategy (lowest sugar, then smallest lcm) and pruned with
//! the Gebauer–Möller criteria. The product criterion is only used for ideals (rank one).
//! Optionally every basis element carries its cofactor vector with respect to the inputs.

use crate::groebner::vector::{FreeModule, VTerm, Vector};
use crate::monomial::{Monomial, MAX_VARS};

/// One step of a division: `c * m * basis[index]` was subtracted.
#[derive(Clone, Copy, Debug)]
pub struct Quotient {
    pub index: usize,
    pub c: u32,
    pub m: Monomial,
}

#[inline]
fn support_mask(m: &Monomial) -> u32 {
    let mut mask = 0u32;
    for i in 0..MAX_VARS {
        if m.exp(i) != 0 {
            mask |= 1 << i;
        }
    }
    mask
}

#[derive(Clone, Copy)]
struct Lead {
    m: Monomial,
    comp: u32,
    mask: u32,
}

impl Lead {
    fn of(v: &Vector) -> Lead {
        let t = v.leading().expect("nonzero vector");
        Lead { m: t.m, comp: t.comp, mask: support_mask(&t.m) }
    }
}

/// Full reduction of `v` by monic `basis`; only elements accepted by `usable` are used.
pub(crate) fn reduce_with(
    module: &FreeModule,
    v: &Vector,
    basis: &[Vector],
    leads: &[(Monomial, u32, u32)],
    usable: impl Fn(usize) -> bool,
    top_only: bool,
    quotients: Option<&mut Vec<Quotient>>,
) -> Vector {
    let mut quot_sink = quotients;
    let mut rest: Vec<VTerm> = v.terms.clone();
    let mut pos = 0;
    let mut out: Vec<VTerm> = Vec::new();
    while pos < rest.len() {
        let t = rest[pos];
        let mask = support_mask(&t.m);
        let found = leads.iter().enumerate().position(|(k, &(lm, comp, lmask))| {
            comp == t.comp && lmask & !mask == 0 && lm.divides(&t.m) && usable(k)
        });
        match found {
            Some(k) => {
                let q = leads[k].0.quotient(&t.m).expect("divisible");
                if let Some(sink) = quot_sink.as_deref_mut() {
                    sink.push(Quotient { index: k, c: t.c, m: q });
                }
                rest = module.sub_mul_slice(&rest[pos..], t.c, &q, &basis[k].terms);
                pos = 0;
            }
            None => {
                if top_only {
                    out.extend_from_slice(&rest[pos..]);
                    return Vector { terms: out };
                }
                out.push(t);
                pos += 1;
            }
        }
    }
    Vector { terms: out }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    sugar: i64,
}

pub(crate) struct Engine<'a> {
    module: &'a FreeModule,
    cof_module: Option<FreeModule>,
    elems: Vec<Vector>,
    cofs: Vec<Vector>,
    leads: Vec<Lead>,
    lead_keys: Vec<(Monomial, u32, u32)>,
    sugar: Vec<i64>,
    in_basis: Vec<bool>,
    pairs: Vec<Pair>,
    pending: Vec<(i64, Vector, Vector)>,
    product_criterion: bool,
}

impl<'a> Engine<'a> {
    /// `cof_module` enables cofactor tracking: inputs must then come with their cofactors.
    pub fn new(module: &'a FreeModule, cof_module: Option<FreeModule>) -> Engine<'a> {
        Engine {
            module,
            cof_module,
            elems: Vec::new(),
            cofs: Vec::new(),
            leads: Vec::new(),
            lead_keys: Vec::new(),
            sugar: Vec::new(),
            in_basis: Vec::new(),
            pairs: Vec::new(),
            pending: Vec::new(),
            product_criterion: module.rank() == 1,
        }
    }

    fn tracking(&self) -> bool {
        self.cof_module.is_some()
    }

    /// Queues an input; it joins the basis when the computation reaches its degree.
    pub fn push_input(&mut self, v: Vector, cof: Option<Vector>) {
        if v.is_zero() {
            return;
        }
        let sugar = self.module.max_degree(&v).unwrap();
        self.pending.push((sugar, v, cof.unwrap_or_default()));
    }

    /// Reduces `v` against the current basis (all elements, not only the minimal ones).
    pub fn reduce(&self, v: &Vector, quotients: Option<&mut Vec<Quotient>>) -> Vector {
        reduce_with(self.module, v, &self.elems, &self.lead_keys, |_| true, false, quotients)
    }

    fn cof_from_quotients(&self, mut cof: Vector, quots: &[Quotient]) -> Vector {
        let cm = self.cof_module.as_ref().unwrap();
        for q in quots {
            cof = cm.sub_mul_term(&cof, q.c, &q.m, &self.cofs[q.index]);
        }
        cof
    }

    /// Reduces and, if nonzero, adds `v` to the basis. Returns whether it was added.
    pub fn add(&mut self, v: &Vector, cof: Vector, sugar: i64) -> bool {
        let mut quots = Vec::new();
        let r = self.reduce(v, self.tracking().then_some(&mut quots));
        if r.is_zero() {
            return false;
        }
        let cof = if self.tracking() { self.cof_from_quotients(cof, &quots) } else { cof };
        self.insert(r, cof, sugar);
        true
    }

    fn insert(&mut self, v: Vector, cof: Vector, sugar: i64) {
        let lc = v.leading().unwrap().c;
        let inv = self.module.ring().field().inv(lc);
        let v = self.module.scale(&v, inv);
        let cof = match &self.cof_module {
            Some(cm) => cm.scale(&cof, inv),
            None => cof,
        };
        let h = self.elems.len();
        let lead = Lead::of(&v);
        self.update_pairs(h, lead, sugar);
        self.elems.push(v);
        self.cofs.push(cof);
        self.leads.push(lead);
        self.lead_keys.push((lead.m, lead.comp, lead.mask));
        self.sugar.push(sugar);
        self.in_basis.push(true);
    }

    fn pair_sugar(&self, i: usize, lcm: &Monomial, hs: i64, hm: &Monomial) -> i64 {
        let si = self.sugar[i] + lcm.degree() as i64 - self.leads[i].m.degree() as i64;
        let sh = hs + lcm.degree() as i64 - hm.degree() as i64;
        si.max(sh)
    }

    /// Gebauer–Möller update for a new element with index `h`.
    fn update_pairs(&mut self, h: usize, lead: Lead, hs: i64) {
        let hm = lead.m;
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for g in 0..self.elems.len() {
            if self.in_basis[g] && self.leads[g].comp == lead.comp {
                let l = self.leads[g].m.lcm(&hm);
                let coprime = self.product_criterion && self.leads[g].m.is_coprime(&hm);
                cands.push((g, l, coprime));
            }
        }
        // chain criterion among the new pairs
        let mut keep = vec![false; cands.len()];
        for a in 0..cands.len() {
            let (_, la, coprime) = cands[a];
            if coprime {
                keep[a] = true;
                continue;
            }
            let dominated = cands.iter().enumerate().any(|(b, &(_, lb, _))| {
                b != a && (b > a || keep[b]) && lb.divides(&la)
            });
            if !dominated {
                keep[a] = true;
            }
        }
        // drop old pairs whose lcm is strictly covered through the new element
        let leads = &self.leads;
        self.pairs.retain(|p| {
            if p.comp != lead.comp || !hm.divides(&p.lcm) {
                return true;
            }
            let li = leads[p.i].m.lcm(&hm);
            let lj = leads[p.j].m.lcm(&hm);
            li == p.lcm || lj == p.lcm
        });
        for (a, &(g, l, coprime)) in cands.iter().enumerate() {
            if keep[a] && !coprime {
                let sugar = self.pair_sugar(g, &l, hs, &hm);
                self.pairs.push(Pair { i: g, j: h, lcm: l, comp: lead.comp, sugar });
            }
        }
        for g in 0..self.elems.len() {
            if self.in_basis[g] && self.leads[g].comp == lead.comp && hm.divides(&self.leads[g].m) {
                self.in_basis[g] = false;
            }
        }
    }

    fn next_degree(&self) -> Option<i64> {
        let p = self.pairs.iter().map(|p| p.sugar).min();
        let q = self.pending.iter().map(|p| p.0).min();
        match (p, q) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    fn s_vector(&self, p: &Pair) -> (Vector, Vector) {
        let mi = self.leads[p.i].m.quotient(&p.lcm).unwrap();
        let mj = self.leads[p.j].m.quotient(&p.lcm).unwrap();
        let a = self.module.mul_term(&self.elems[p.i], 1, &mi);
        let s = self.module.sub_mul_term(&a, 1, &mj, &self.elems[p.j]);
        let cof = match &self.cof_module {
            Some(cm) => {
                let a = cm.mul_term(&self.cofs[p.i], 1, &mi);
                cm.sub_mul_term(&a, 1, &mj, &self.cofs[p.j])
            }
            None => Vector::default(),
        };
        (s, cof)
    }

    /// Runs until all pairs and inputs up to degree `limit` (all, if `None`) are processed.
    pub fn run(&mut self, limit: Option<i64>) {
        while let Some(d) = self.next_degree() {
            if limit.is_some_and(|l| d > l) {
                break;
            }
            // inputs of this degree first, in submission order
            let mut k = 0;
            while k < self.pending.len() {
                if self.pending[k].0 == d {
                    let (s, v, cof) = self.pending.remove(k);
                    self.add(&v, cof, s);
                } else {
                    k += 1;
                }
            }
            loop {
                let module = self.module;
                let best = self
                    .pairs
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| p.sugar == d)
                    .min_by(|(_, a), (_, b)| {
                        module.cmp_terms((&a.lcm, a.comp), (&b.lcm, b.comp)).then((a.i, a.j).cmp(&(b.i, b.j)))
                    })
                    .map(|(idx, _)| idx);
                let Some(idx) = best else { break };
                let pair = self.pairs.swap_remove(idx);
                let (s, cof) = self.s_vector(&pair);
                if !s.is_zero() {
                    self.add(&s, cof, pair.sugar);
                }
            }
        }
    }

    /// The reduced basis (monic, interreduced, sorted by descending leading term) with cofactors.
    pub fn reduced_basis(&self) -> (Vec<Vector>, Vec<Vector>) {
        let idx: Vec<usize> = (0..self.elems.len()).filter(|&k| self.in_basis[k]).collect();
        let in_set = |k: usize| self.in_basis[k];
        let mut out: Vec<(Vector, Vector)> = Vec::with_capacity(idx.len());
        for &k in &idx {
            let v = &self.elems[k];
            let lead = v.terms[0];
            let tail = Vector { terms: v.terms[1..].to_vec() };
            let mut quots = Vec::new();
            let nf = reduce_with(
                self.module,
                &tail,
                &self.elems,
                &self.lead_keys,
                in_set,
                false,
                self.tracking().then_some(&mut quots),
            );
            let mut terms = Vec::with_capacity(nf.len() + 1);
            terms.push(lead);
            terms.extend_from_slice(&nf.terms);
            let cof = if self.tracking() { self.cof_from_quotients(self.cofs[k].clone(), &quots) } else { Vector::default() };
            out.push((Vector { terms }, cof));
        }
        let module = self.module;
        out.sort_by(|a, b| {
            let (ta, tb) = (&a.0.terms[0], &b.0.terms[0]);
            module.cmp_terms((&tb.m, tb.comp), (&ta.m, ta.comp))
        });
        out.into_iter().unzip()
    }
}
