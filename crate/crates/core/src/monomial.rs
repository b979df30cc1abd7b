//! Monomials with small fixed-width exponents and the term orders on them.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Upper bound on the number of ring variables.
pub const MAX_VARS: usize = 16;

/// A monomial `x0^e0 * ... * x{n-1}^e{n-1}`. Unused slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    degree: u16,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS], degree: 0 };

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            let e: u8 = e.try_into().expect("exponent overflow");
            m.exps[i] = e;
            m.degree += e as u16;
        }
        m
    }

    pub fn var(i: usize) -> Monomial {
        let mut m = Monomial::ONE;
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree as u32
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Product; exponent overflow is a hard error.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        Monomial { exps, degree: self.degree + other.degree }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self` when `self` divides `other`.
    #[inline]
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = other.exps[i] - self.exps[i];
        }
        Some(Monomial { exps, degree: other.degree - self.degree })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        let mut degree = 0u16;
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].max(other.exps[i]);
            degree += exps[i] as u16;
        }
        Monomial { exps, degree }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        let mut degree = 0u16;
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].min(other.exps[i]);
            degree += exps[i] as u16;
        }
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Moves variable `i` to `i + offset`; used to embed into rings with extra variables.
    pub fn shifted(&self, offset: usize, nvars: usize) -> Monomial {
        assert!(nvars + offset <= MAX_VARS, "too many variables");
        let mut m = Monomial::ONE;
        for i in 0..nvars {
            m.exps[i + offset] = self.exps[i];
        }
        m.degree = self.degree;
        m
    }

    /// Drops the first `offset` variables, which must have exponent zero.
    pub fn unshifted(&self, offset: usize) -> Monomial {
        debug_assert!(self.exps[..offset].iter().all(|&e| e == 0));
        let mut m = Monomial::ONE;
        for i in offset..MAX_VARS {
            m.exps[i - offset] = self.exps[i];
        }
        m.degree = self.degree;
        m
    }

    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut m = Monomial::ONE;
        for (i, &j) in perm.iter().enumerate() {
            m.exps[j] = self.exps[i];
        }
        m.degree = self.degree;
        m
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut m = *self;
        let e: u8 = e.try_into().expect("exponent overflow");
        m.degree = m.degree - m.exps[i] as u16 + e as u16;
        m.exps[i] = e;
        m
    }

    fn block_degree(&self, lo: usize, hi: usize) -> u32 {
        self.exps[lo..hi].iter().map(|&e| e as u32).sum()
    }

    /// Reverse-lexicographic tie break on `[lo, hi)`: the smaller trailing exponent wins.
    fn revlex_tail(&self, other: &Monomial, lo: usize, hi: usize) -> Ordering {
        for i in (lo..hi).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    pub fn fmt_with(&self, nvars: usize, f: &mut impl fmt::Write) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for i in 0..nvars {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.exps.iter().rposition(|&e| e != 0).map_or(1, |p| p + 1);
        self.fmt_with(n, f)
    }
}

/// Monomial orders. All of them refine divisibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TermOrder {
    /// Graded reverse lexicographic, `x0 > x1 > ... `.
    Grevlex,
    /// Lexicographic, `x0 > x1 > ...`.
    Lex,
    /// Block order eliminating the first `k` variables: grevlex on `x0..x{k-1}`,
    /// ties broken by grevlex on the remaining variables.
    Elimination(usize),
}

impl TermOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            TermOrder::Grevlex => a.degree.cmp(&b.degree).then_with(|| a.revlex_tail(b, 0, MAX_VARS)),
            TermOrder::Lex => a.exps.cmp(&b.exps),
            TermOrder::Elimination(k) => a
                .block_degree(0, k)
                .cmp(&b.block_degree(0, k))
                .then_with(|| a.revlex_tail(b, 0, k))
                .then_with(|| a.block_degree(k, MAX_VARS).cmp(&b.block_degree(k, MAX_VARS)))
                .then_with(|| a.revlex_tail(b, k, MAX_VARS)),
        }
    }

    pub fn is_graded(&self) -> bool {
        matches!(self, TermOrder::Grevlex)
    }
}

/// All monomials of degree `d` in `nvars` variables, grevlex-descending.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::ONE);
        }
        return out;
    }
    rec(0, d, &mut exps, &mut out);
    out.sort_by(|a, b| TermOrder::Grevlex.cmp(b, a));
    out
}

/// `C(n, k)` for nonnegative arguments, as `i128` to keep Hilbert arithmetic exact.
pub fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || n < k || n < 0 {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// Number of monomials of degree `d` in `nvars` variables.
pub fn count_monomials(nvars: usize, d: i64) -> i128 {
    if d < 0 {
        return 0;
    }
    binomial(d + nvars as i64 - 1, nvars as i64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_examples() {
        // x1^2 vs x0*x2 in five variables
        assert_eq!(TermOrder::Grevlex.cmp(&m(&[0, 2, 0, 0, 0]), &m(&[1, 0, 1, 0, 0])), Ordering::Greater);
        // x1*x3 vs x0*x4
        assert_eq!(TermOrder::Grevlex.cmp(&m(&[0, 1, 0, 1, 0]), &m(&[1, 0, 0, 0, 1])), Ordering::Greater);
        let a = m(&[1, 2, 0, 3]);
        for ord in [TermOrder::Grevlex, TermOrder::Lex, TermOrder::Elimination(2)] {
            assert_eq!(ord.cmp(&a, &a), Ordering::Equal);
        }
    }

    /// Reference grevlex built straight from the definition on exponent differences.
    fn grevlex_by_definition(a: &[u32], b: &[u32]) -> Ordering {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        if da != db {
            return da.cmp(&db);
        }
        for i in (0..a.len()).rev() {
            let diff = a[i] as i64 - b[i] as i64;
            if diff != 0 {
                return if diff < 0 { Ordering::Greater } else { Ordering::Less };
            }
        }
        Ordering::Equal
    }

    #[test]
    fn grevlex_matches_definition_on_degree_two() {
        let mons = monomials_of_degree(5, 2);
        assert_eq!(mons.len(), 15);
        for a in &mons {
            for b in &mons {
                let ea = a.exponents(5);
                let eb = b.exponents(5);
                assert_eq!(TermOrder::Grevlex.cmp(a, b), grevlex_by_definition(&ea, &eb));
            }
        }
        // descending enumeration starts at x0^2 and ends at x4^2
        assert_eq!(mons[0], m(&[2, 0, 0, 0, 0]));
        assert_eq!(mons[14], m(&[0, 0, 0, 0, 2]));
    }

    #[test]
    fn elimination_order_eliminates() {
        let ord = TermOrder::Elimination(1);
        // anything with x0 beats anything without, regardless of degree
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    #[should_panic(expected = "exponent overflow")]
    fn overflow_is_fatal() {
        let a = m(&[200]);
        let _ = a.mul(&a);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 4), 15);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(count_monomials(5, 2), 15);
        assert_eq!(count_monomials(5, -1), 0);
    }
}
