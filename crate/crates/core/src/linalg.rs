//! Row reduction over F_p on the monomial basis of one graded piece `R_d`.

use std::collections::HashMap;

use crate::field::FieldConfig;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;

/// Coordinates on `R_d`: columns are the degree-`d` monomials in grevlex-descending order.
pub struct DegreeBasis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    pub fn new(nvars: usize, d: u32) -> DegreeBasis {
        let monomials = monomials_of_degree(nvars, d);
        let index = monomials.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        DegreeBasis { monomials, index }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Sparse coordinates of a form of this degree, sorted by column.
    pub fn coordinates(&self, f: &Polynomial) -> Vec<(usize, u32)> {
        let mut row: Vec<(usize, u32)> = f
            .terms()
            .iter()
            .map(|&(c, m)| (*self.index.get(&m).expect("form of the wrong degree"), c))
            .collect();
        row.sort_unstable_by_key(|e| e.0);
        row
    }
}

/// Incremental echelon form of a row space; rows are kept monic on their pivot.
pub struct Echelon {
    field: FieldConfig,
    ncols: usize,
    rows: Vec<Vec<(usize, u32)>>,
    pivot_of: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: FieldConfig, ncols: usize) -> Echelon {
        Echelon { field, ncols, rows: Vec::new(), pivot_of: vec![None; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_dense(&self, dense: &mut [u32]) {
        let f = &self.field;
        for col in 0..self.ncols {
            let c = dense[col];
            if c == 0 {
                continue;
            }
            if let Some(r) = self.pivot_of[col] {
                for &(k, v) in &self.rows[r] {
                    dense[k] = f.sub(dense[k], f.mul(c, v));
                }
            }
        }
    }

    fn to_dense(&self, row: &[(usize, u32)]) -> Vec<u32> {
        let mut dense = vec![0u32; self.ncols];
        for &(k, v) in row {
            dense[k] = self.field.add(dense[k], v);
        }
        dense
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn insert(&mut self, row: &[(usize, u32)]) -> bool {
        let mut dense = self.to_dense(row);
        self.reduce_dense(&mut dense);
        let Some(pivot) = dense.iter().position(|&v| v != 0) else {
            return false;
        };
        let inv = self.field.inv(dense[pivot]);
        let sparse: Vec<(usize, u32)> = dense
            .iter()
            .enumerate()
            .skip(pivot)
            .filter(|(_, &v)| v != 0)
            .map(|(k, &v)| (k, self.field.mul(v, inv)))
            .collect();
        self.pivot_of[pivot] = Some(self.rows.len());
        self.rows.push(sparse);
        true
    }

    pub fn contains(&self, row: &[(usize, u32)]) -> bool {
        let mut dense = self.to_dense(row);
        self.reduce_dense(&mut dense);
        dense.iter().all(|&v| v == 0)
    }
}

/// Rank of a list of sparse rows.
pub fn rank_of(field: FieldConfig, ncols: usize, rows: impl IntoIterator<Item = Vec<(usize, u32)>>) -> usize {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(&r);
    }
    e.rank()
}
