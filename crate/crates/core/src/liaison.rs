//! Liaison addition, direct linkage by complete intersections, the linkage/addition
//! commutation check, Gaeta moves and link chains for licci companions.
//!
//! Subschemes `C ⊂ X` are represented by their saturated ideals in `R` containing `I_X`.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{check_regular_sequence, ideals_equal, Ideal};
use crate::poly::{Homogeneity, Polynomial, Ring};
use crate::resolution::is_acm_curve;

/// Attempts per random choice of a form.
pub const MAX_RETRIES: usize = 25;

/// The arithmetically Gorenstein ambient `X ⊂ P^n` with `ω_X = O_X(e)`.
#[derive(Clone, Debug)]
pub struct Ambient {
    pub name: String,
    pub ideal: Ideal,
    /// `deg X`.
    pub degree: i64,
    /// `e` with `ω_X = O_X(e)`.
    pub canonical: i64,
    pub dimension: usize,
}

impl Ambient {
    pub fn projective_space(ring: &Ring) -> Ambient {
        let n = ring.nvars() - 1;
        Ambient {
            name: format!("P{n}"),
            ideal: Ideal::zero(ring).assume_saturated(),
            degree: 1,
            canonical: -(n as i64) - 1,
            dimension: n,
        }
    }

    /// The hypersurface `{q = 0}`; `ω = O(deg q - n - 1)`.
    pub fn hypersurface(name: &str, q: &Polynomial) -> Result<Ambient> {
        let Homogeneity::Homogeneous(d) = q.homogeneity() else {
            return Err(Error::InvalidInput("ambient form must be homogeneous and nonzero".into()));
        };
        let n = q.ring().nvars() as i64 - 1;
        Ok(Ambient {
            name: name.to_string(),
            ideal: Ideal::new(q.ring(), vec![q.clone()])?.assume_saturated(),
            degree: d as i64,
            canonical: d as i64 - n - 1,
            dimension: n as usize - 1,
        })
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    /// `h_S(j)` for `S = R/I_X`.
    pub fn hilbert_function(&self, j: i64) -> i64 {
        self.ideal.hilbert().hilbert_function(j)
    }

    /// Hilbert function of the complete intersection cut on `X` by forms of degrees `f1, f2`.
    pub fn ci_hilbert_function(&self, f1: i64, f2: i64, j: i64) -> i64 {
        self.hilbert_function(j) - self.hilbert_function(j - f1) - self.hilbert_function(j - f2)
            + self.hilbert_function(j - f1 - f2)
    }

    /// `I + I_X`.
    pub fn on_x(&self, i: &Ideal) -> Result<Ideal> {
        i.sum(&self.ideal)
    }

    fn check_contains_ambient(&self, i: &Ideal, what: &str) -> Result<()> {
        if !i.contains_ideal(&self.ideal) {
            return Err(Error::Precondition(format!("{what} does not contain the ideal of {}", self.name)));
        }
        Ok(())
    }

    /// The complete intersection `I_X + (f, g)`, known to be saturated.
    pub fn complete_intersection(&self, f: &Polynomial, g: &Polynomial) -> Result<Ideal> {
        check_regular_sequence(&[f.clone(), g.clone()], &self.ideal).map_err(Error::Precondition)?;
        Ok(self.ideal.with_forms(&[f.clone(), g.clone()])?.assume_saturated())
    }
}

fn form_degree(f: &Polynomial, what: &str) -> Result<i64> {
    match f.homogeneity() {
        Homogeneity::Homogeneous(d) => Ok(d as i64),
        Homogeneity::Zero => Err(Error::Precondition(format!("{what} is zero"))),
        Homogeneity::Inhomogeneous => Err(Error::InvalidInput(format!("{what} is not homogeneous"))),
    }
}

/// Degree and arithmetic genus of a curve (or of the empty scheme: degree 0, genus 1).
pub fn curve_invariants(i: &Ideal) -> Result<(i64, i64)> {
    let h = i.hilbert();
    match h.dimension() {
        None => Ok((0, 1)),
        Some(2) => Ok((h.degree(), 1 - h.hilbert_polynomial(0))),
        Some(d) => Err(Error::Precondition(format!("expected a curve, got Krull dimension {d}"))),
    }
}

/// Degree and genus of a liaison addition on a threefold of degree `d` with `ω = O(e)`.
#[allow(clippy::too_many_arguments)]
pub fn predicted_degree_genus(d1: i64, g1: i64, d2: i64, g2: i64, f1: i64, f2: i64, d: i64, e: i64) -> (i64, i64) {
    let deg = d1 + d2 + d * f1 * f2;
    let twice = d * f1 * f2 * (f1 + f2 + e);
    debug_assert!(twice % 2 == 0);
    let g = g1 + g2 - 1 + d1 * f2 + d2 * f1 + twice / 2;
    (deg, g)
}

/// A liaison addition `I_C = F2·I_{C1} + F1·I_{C2} + I_X`.
#[derive(Clone, Debug)]
pub struct LiaisonAdditionRecord {
    pub c1: Ideal,
    pub c2: Ideal,
    pub f1: Polynomial,
    pub f2: Polynomial,
    pub deg_f1: i64,
    pub deg_f2: i64,
    pub result: Ideal,
    /// `deg X` and `e`.
    pub d: i64,
    pub e: i64,
    /// `C2` is the empty scheme: `I_C = F2·I_{C1} + (F1)`.
    pub basic_double_link: bool,
    pub saturated: bool,
    /// Degree and genus predicted from the inputs, when `X` is a threefold.
    pub predicted: Option<(i64, i64)>,
    pub degree: i64,
    pub genus: Option<i64>,
}

impl LiaisonAdditionRecord {
    /// `h_C(j) = h_{C1}(j-f2) + h_{C2}(j-f1) + h_Y(j)` at `j`.
    pub fn additivity_holds_at(&self, ambient: &Ambient, j: i64) -> bool {
        let lhs = self.result.hilbert().hilbert_function(j);
        let rhs = self.c1.hilbert().hilbert_function(j - self.deg_f2)
            + self.c2.hilbert().hilbert_function(j - self.deg_f1)
            + ambient.ci_hilbert_function(self.deg_f1, self.deg_f2, j);
        lhs == rhs
    }

    /// `dim (I_C/I_X)_j = dim (I_{C1}/I_X)_{j-f2} + dim (I_{C2}/I_X)_{j-f1} - dim S_{j-f1-f2}`.
    pub fn exact_sequence_holds_at(&self, ambient: &Ambient, j: i64) -> bool {
        let in_s = |i: &Ideal, k: i64| i.dim_in_degree(k) - ambient.ideal.dim_in_degree(k);
        let lhs = in_s(&self.result, j);
        let rhs = in_s(&self.c1, j - self.deg_f2) + in_s(&self.c2, j - self.deg_f1)
            - ambient.hilbert_function(j - self.deg_f1 - self.deg_f2);
        lhs == rhs
    }
}

/// Liaison addition of `C1` and `C2` with respect to `F1 ∈ I_{C1}` and `F2 ∈ I_{C2}`.
///
/// The output is checked to be saturated and, on a threefold, to have the predicted degree and
/// genus; a mismatch is a verification error.
pub fn liaison_addition(ambient: &Ambient, i1: &Ideal, i2: &Ideal, f1: &Polynomial, f2: &Polynomial) -> Result<LiaisonAdditionRecord> {
    let deg_f1 = form_degree(f1, "F1")?;
    let deg_f2 = form_degree(f2, "F2")?;
    let i1 = ambient.on_x(i1)?;
    let i2 = ambient.on_x(i2)?;
    if !i1.contains(f1) {
        return Err(Error::Precondition("F1 is not in I_C1".into()));
    }
    if !i2.contains(f2) {
        return Err(Error::Precondition("F2 is not in I_C2".into()));
    }
    check_regular_sequence(&[f1.clone(), f2.clone()], &ambient.ideal)
        .map_err(|e| Error::Precondition(format!("F1, F2 not a regular sequence on S: {e}")))?;
    let basic_double_link = i2.is_unit();
    let result = i1.scale(f2)?.sum(&i2.scale(f1)?)?.sum(&ambient.ideal)?;
    let saturated = result.is_saturated()?;
    if !saturated {
        return Err(Error::Verification("liaison addition ideal is not saturated".into()));
    }
    let result = result.assume_saturated();
    let degree = result.degree();
    let genus = result.genus();
    let mut predicted = None;
    if ambient.dimension == 3 {
        let (d1, g1) = curve_invariants(&i1)?;
        let (d2, g2) = curve_invariants(&i2)?;
        let p = predicted_degree_genus(d1, g1, d2, g2, deg_f1, deg_f2, ambient.degree, ambient.canonical);
        if (degree, genus) != (p.0, Some(p.1)) {
            return Err(Error::Verification(format!(
                "liaison addition has degree {degree}, genus {genus:?}; expected {}, {}",
                p.0, p.1
            )));
        }
        predicted = Some(p);
    }
    Ok(LiaisonAdditionRecord {
        c1: i1,
        c2: i2,
        f1: f1.clone(),
        f2: f2.clone(),
        deg_f1,
        deg_f2,
        result,
        d: ambient.degree,
        e: ambient.canonical,
        basic_double_link,
        saturated,
        predicted,
        degree,
        genus,
    })
}

/// The residual `(I_X + (F, G)) : I`, saturated. Checks `deg C + deg C' = d·deg F·deg G`.
pub fn direct_ci_link(ambient: &Ambient, i: &Ideal, f: &Polynomial, g: &Polynomial) -> Result<Ideal> {
    let df = form_degree(f, "F")?;
    let dg = form_degree(g, "G")?;
    if !i.contains(f) || !i.contains(g) {
        return Err(Error::Precondition("linking forms must lie in the ideal".into()));
    }
    ambient.check_contains_ambient(i, "linked ideal")?;
    let ci = ambient.complete_intersection(f, g)?;
    let residual = ci.colon(i)?.saturated()?;
    let expected = ambient.degree * df * dg;
    if i.degree() + residual.degree() != expected {
        return Err(Error::Verification(format!(
            "degrees {} + {} do not add up to {expected}",
            i.degree(),
            residual.degree()
        )));
    }
    Ok(residual)
}

/// Outcome of the linkage/addition commutation check.
#[derive(Clone, Debug)]
pub struct CommutationReport {
    pub c1_prime: Ideal,
    pub c2_prime: Ideal,
    pub c: LiaisonAdditionRecord,
    pub c_prime: Ideal,
    pub candidate: Ideal,
    pub equal: bool,
    pub deg_c: i64,
    pub deg_c_prime: i64,
    /// `d (a+f)(b+g)`.
    pub predicted_total: i64,
}

impl CommutationReport {
    pub fn holds(&self) -> bool {
        self.equal && self.deg_c + self.deg_c_prime == self.predicted_total
    }
}

/// With `B, F ∈ I_{C1}` and `A, G ∈ I_{C2}`: checks that `C = G·I_{C1} + F·I_{C2}` is linked by
/// `(AF, BG)` to `A·I_{C1'} + B·I_{C2'}`, where `C1' = (F,B) : I_{C1}` and `C2' = (G,A) : I_{C2}`.
#[allow(clippy::too_many_arguments)]
pub fn verify_linkage_commutes(
    ambient: &Ambient,
    i1: &Ideal,
    i2: &Ideal,
    b: &Polynomial,
    f: &Polynomial,
    a: &Polynomial,
    g: &Polynomial,
) -> Result<CommutationReport> {
    let af = a * f;
    let bg = b * g;
    check_regular_sequence(&[af.clone(), bg.clone()], &ambient.ideal)
        .map_err(|e| Error::Precondition(format!("AF, BG not a regular sequence: {e}")))?;
    let i1 = ambient.on_x(i1)?;
    let i2 = ambient.on_x(i2)?;
    let c1_prime = direct_ci_link(ambient, &i1, f, b)?;
    let c2_prime = direct_ci_link(ambient, &i2, g, a)?;
    let c = liaison_addition(ambient, &i1, &i2, f, g)?;
    let c_prime = direct_ci_link(ambient, &c.result, &af, &bg)?;
    let candidate = c1_prime.scale(a)?.sum(&c2_prime.scale(b)?)?.sum(&ambient.ideal)?;
    let equal = ideals_equal(&c_prime, &candidate)?;
    let deg = |p: &Polynomial| p.degree().unwrap() as i64;
    let predicted_total = ambient.degree * (deg(a) + deg(f)) * (deg(b) + deg(g));
    Ok(CommutationReport {
        deg_c: c.degree,
        deg_c_prime: c_prime.degree(),
        c1_prime,
        c2_prime,
        c,
        c_prime,
        candidate,
        equal,
        predicted_total,
    })
}

/// Effect of a link on the number of minimal generators of a licci ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaetaMove {
    pub case: u8,
    pub f1_minimal: bool,
    pub f2_minimal: bool,
    pub mu_before: usize,
    pub mu_after: usize,
    pub delta: i64,
}

/// Number of minimal generators of `I/I_X` in `S`; the unit ideal counts as one.
pub fn mu_on(ambient: &Ambient, i: &Ideal) -> usize {
    if i.is_unit() {
        return 1;
    }
    i.minimal_generator_count(Some(&ambient.ideal))
}

/// Classifies the link of `before` by `(F1, F2)` to `after` into Gaeta's three cases and checks
/// the predicted change of `μ` (−1, 0, +1).
pub fn classify_gaeta_move(
    ambient: &Ambient,
    before: &Ideal,
    f1: &Polynomial,
    f2: &Polynomial,
    after: &Ideal,
) -> Result<GaetaMove> {
    let m1 = before.is_minimal_generator(f1, Some(&ambient.ideal))?;
    let m2 = before.is_minimal_generator(f2, Some(&ambient.ideal))?;
    let (case, predicted) = match (m1, m2) {
        (true, true) => (1, -1),
        (true, false) | (false, true) => (2, 0),
        (false, false) => (3, 1),
    };
    let mu_before = mu_on(ambient, before);
    let mu_after = mu_on(ambient, after);
    let delta = mu_after as i64 - mu_before as i64;
    if delta != predicted {
        return Err(Error::Verification(format!(
            "case {case} predicts a change of {predicted} generators, observed {delta}"
        )));
    }
    Ok(GaetaMove { case, f1_minimal: m1, f2_minimal: m2, mu_before, mu_after, delta })
}

/// One scheme in a link chain.
#[derive(Clone, Debug)]
pub struct ChainStage {
    pub role: String,
    pub ideal: Ideal,
    /// The complete intersection linking the previous stage to this one.
    pub link: Option<(Polynomial, Polynomial)>,
    pub degree: i64,
    pub genus: Option<i64>,
    /// `μ` of the licci companion when the stage is a liaison addition with `C1`.
    pub companion_mu: Option<usize>,
    /// The stage equals the liaison addition the construction predicts.
    pub structure_verified: bool,
    /// Linking this stage back by the same complete intersection returns the previous stage.
    pub double_link_verified: bool,
}

#[derive(Clone, Debug)]
pub struct LinkChain {
    pub stages: Vec<ChainStage>,
    /// `μ` of the companion before each round, ending with the unit ideal's 1.
    pub companion_mu_trace: Vec<usize>,
}

impl LinkChain {
    pub fn links(&self) -> usize {
        self.stages.len().saturating_sub(1)
    }

    pub fn all_verified(&self) -> bool {
        self.stages.iter().all(|s| s.structure_verified && s.double_link_verified)
    }

    pub fn roles(&self) -> Vec<&str> {
        self.stages.iter().map(|s| s.role.as_str()).collect()
    }
}

/// Draws a form from `ideal` of the first workable degree in `degrees` accepted by `ok`.
fn choose_form(
    ideal: &Ideal,
    degrees: &[i64],
    rng: &mut impl Rng,
    what: &str,
    mut ok: impl FnMut(&Polynomial) -> Result<bool>,
) -> Result<Polynomial> {
    for &d in degrees {
        if ideal.dim_in_degree(d) == 0 {
            continue;
        }
        for _ in 0..MAX_RETRIES {
            let f = ideal.random_element_of_degree(d, rng)?;
            if ok(&f)? {
                return Ok(f);
            }
        }
    }
    Err(Error::RetriesExhausted { attempts: MAX_RETRIES * degrees.len(), what: what.to_string() })
}

fn degree_scan(ideal: &Ideal, span: i64) -> Vec<i64> {
    let lo = ideal.initial_degree().unwrap_or(0);
    (lo..=lo + span).collect()
}

fn regular(ambient: &Ambient, forms: &[Polynomial]) -> bool {
    check_regular_sequence(forms, &ambient.ideal).is_ok()
}

/// Degrees in which `I/I_X` has minimal generators, ascending.
fn minimal_generator_degrees(ambient: &Ambient, i: &Ideal) -> Vec<i64> {
    i.minimal_generators_by_degree_over(Some(&ambient.ideal)).into_keys().collect()
}

fn choose_minimal_generator(
    ambient: &Ambient,
    i: &Ideal,
    rng: &mut impl Rng,
    what: &str,
    mut ok: impl FnMut(&Polynomial) -> Result<bool>,
) -> Result<Polynomial> {
    let degs = minimal_generator_degrees(ambient, i);
    choose_form(i, &degs, rng, what, |f| Ok(i.is_minimal_generator(f, Some(&ambient.ideal))? && ok(f)?))
}

fn link_stage(
    ambient: &Ambient,
    prev: &Ideal,
    role: String,
    f: &Polynomial,
    g: &Polynomial,
    expected: &Ideal,
    companion_mu: Option<usize>,
) -> Result<ChainStage> {
    let ideal = direct_ci_link(ambient, prev, f, g)?;
    let structure_verified = ideals_equal(&ideal, expected)?;
    let back = direct_ci_link(ambient, &ideal, f, g)?;
    let double_link_verified = ideals_equal(&back, prev)?;
    Ok(ChainStage {
        role,
        degree: ideal.degree(),
        genus: ideal.genus(),
        ideal,
        link: Some((f.clone(), g.clone())),
        companion_mu,
        structure_verified,
        double_link_verified,
    })
}

/// Links the liaison addition `C = G·I_{C1} + F·I_{C2}` down to `C1` when `C2` is licci.
///
/// Each round replaces the companion by one with a minimal generator fewer, through the two links
/// `C --(AF,BG)--> Z = A·I_{C1'} + B·I_{C2'} --(A'B,FA)--> Y = A'·I_{C1} + F·I_{C2''}`.
/// Once the companion is the unit ideal, `Y_1 = A'·I_{C1} + (F)` is a basic double link, linked
/// by `(F, A'H)` to `D = (F,H) : I_{C1}` and by `(F, H)` back to `C1`.
pub fn licci_link_chain(
    ambient: &Ambient,
    i1: &Ideal,
    i2: &Ideal,
    f: &Polynomial,
    g: &Polynomial,
    rng: &mut impl Rng,
) -> Result<LinkChain> {
    let i1 = ambient.on_x(i1)?.saturated()?;
    let mut comp = ambient.on_x(i2)?.saturated()?;
    if !comp.is_unit() && !is_acm_curve(&comp)? {
        return Err(Error::Precondition("companion must be an ACM curve".into()));
    }
    let start = liaison_addition(ambient, &i1, &comp, f, g)?;
    let mut mu = mu_on(ambient, &comp);
    let mut trace = vec![mu];
    let mut stages = vec![ChainStage {
        role: "C".into(),
        degree: start.degree,
        genus: start.genus,
        ideal: start.result.clone(),
        link: None,
        companion_mu: Some(mu),
        structure_verified: true,
        double_link_verified: true,
    }];
    let mut g = g.clone();
    // multiplier of the principal part once the companion is trivial
    let mut f_eff = f.clone();
    let f = f.clone();
    while !comp.is_unit() {
        if mu == 2 && comp.is_minimal_generator(&g, Some(&ambient.ideal))? {
            // I_C2 = (G, G2): then G·I_C1 + F·I_C2 = G·I_C1 + (F G2) is already a basic double link
            let g2 = choose_minimal_generator(ambient, &comp, rng, "second generator of I_C2", |g2| {
                ideals_equal(&ambient.ideal.with_forms(&[g.clone(), g2.clone()])?, &comp)
            })?;
            f_eff = &f * &g2;
            let current = &stages.last().unwrap().ideal;
            let expected = i1.scale(&g)?.with_forms(&[f_eff.clone()])?.sum(&ambient.ideal)?;
            if !ideals_equal(current, &expected)? {
                return Err(Error::Verification("trivial companion reduction does not match".into()));
            }
            mu = 1;
            trace.push(mu);
            break;
        }
        let round = mu - 1;
        let b = choose_form(&i1, &degree_scan(&i1, 3), rng, "B in I_C1", |b| {
            Ok(regular(ambient, &[f.clone(), b.clone()]))
        })?;
        let a = choose_minimal_generator(ambient, &comp, rng, "minimal generator A of I_C2", |a| {
            Ok(regular(ambient, &[g.clone(), a.clone()])
                && regular(ambient, &[a * &f, &b * &g])
                && regular(ambient, &[a.clone(), b.clone()]))
        })?;
        let c1p = direct_ci_link(ambient, &i1, &f, &b)?;
        let c2p = direct_ci_link(ambient, &comp, &g, &a)?;
        let z_expected = c1p.scale(&a)?.sum(&c2p.scale(&b)?)?.sum(&ambient.ideal)?;
        let prev = stages.last().unwrap().ideal.clone();
        let z = link_stage(ambient, &prev, format!("Z{round}"), &(&a * &f), &(&b * &g), &z_expected, None)?;

        let a2 = choose_minimal_generator(ambient, &c2p, rng, "minimal generator A' of I_C2'", |a2| {
            Ok(regular(ambient, &[a.clone(), a2.clone()]) && regular(ambient, &[a2 * &b, &f * &a]))
        })?;
        let next_comp = direct_ci_link(ambient, &c2p, &a, &a2)?;
        let y_expected = i1.scale(&a2)?.sum(&next_comp.scale(&f)?)?.sum(&ambient.ideal)?;
        let next_mu = mu_on(ambient, &next_comp);
        let y = link_stage(ambient, &z.ideal, format!("Y{round}"), &(&a2 * &b), &(&f * &a), &y_expected, Some(next_mu))?;
        stages.push(z);
        stages.push(y);
        if next_mu + 1 != mu {
            return Err(Error::Verification(format!("companion went from {mu} to {next_mu} minimal generators")));
        }
        comp = next_comp;
        mu = next_mu;
        trace.push(mu);
        g = a2;
    }
    // Y_1 = G·I_C1 + (F): down to C1 in two links
    let y1 = stages.last().unwrap().ideal.clone();
    let h = choose_form(&i1, &degree_scan(&i1, 3), rng, "H in I_C1", |h| {
        Ok(regular(ambient, &[f_eff.clone(), h.clone()]) && regular(ambient, &[f_eff.clone(), &g * h]))
    })?;
    let d_expected = direct_ci_link(ambient, &i1, &f_eff, &h)?;
    let d = link_stage(ambient, &y1, "D".into(), &f_eff, &(&g * &h), &d_expected, None)?;
    let last = link_stage(ambient, &d.ideal, "C1".into(), &f_eff, &h, &i1, None)?;
    stages.push(d);
    stages.push(last);
    Ok(LinkChain { stages, companion_mu_trace: trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn setup() -> (Ring, Ambient) {
        let r = Ring::projective(4);
        let q = parse_polynomial(&r, "x0*x1 + x2*x3 + x4^2").unwrap();
        (r, Ambient::hypersurface("smooth-quadric", &q).unwrap())
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    fn on_x(amb: &Ambient, r: &Ring, gens: &[&str]) -> Ideal {
        let i = Ideal::new(r, gens.iter().map(|s| p(r, s)).collect()).unwrap();
        amb.on_x(&i).unwrap()
    }

    #[test]
    fn ambient_numbers() {
        let (_, amb) = setup();
        assert_eq!((amb.degree, amb.canonical, amb.dimension), (2, -3, 3));
        for j in 0..6 {
            // a conic: 2j + 1
            assert_eq!(amb.ci_hilbert_function(1, 1, j), 2 * j + 1);
        }
    }

    #[test]
    fn prediction_formula() {
        assert_eq!(predicted_degree_genus(1, 0, 1, 0, 1, 1, 2, -3), (4, 0));
        // g = 0 + 0 - 1 + 4·2 + 1·1 + 2·1·2·0/2
        assert_eq!(predicted_degree_genus(4, 0, 1, 0, 1, 2, 2, -3), (9, 8));
    }

    #[test]
    fn two_lines_on_the_smooth_quadric() {
        let (r, amb) = setup();
        let l1 = on_x(&amb, &r, &["x1", "x3", "x4"]);
        let l2 = on_x(&amb, &r, &["x0", "x2", "x4"]);
        let rec = liaison_addition(&amb, &l1, &l2, &p(&r, "x1 + x3"), &p(&r, "x0 - x2")).unwrap();
        assert_eq!(rec.predicted, Some((4, 0)));
        assert_eq!((rec.degree, rec.genus), (4, Some(0)));
        assert!(rec.saturated);
        for j in 0..8 {
            assert!(rec.additivity_holds_at(&amb, j));
            assert!(rec.exact_sequence_holds_at(&amb, j));
        }
    }

    #[test]
    fn addition_preconditions() {
        let (r, amb) = setup();
        let l1 = on_x(&amb, &r, &["x1", "x3", "x4"]);
        let l2 = on_x(&amb, &r, &["x0", "x2", "x4"]);
        let err = liaison_addition(&amb, &l1, &l2, &p(&r, "x0"), &p(&r, "x0")).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        let err = liaison_addition(&amb, &l1, &l2, &p(&r, "x4"), &p(&r, "x4")).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn basic_double_link_is_accepted() {
        let (r, amb) = setup();
        let l1 = on_x(&amb, &r, &["x1", "x3", "x4"]);
        let unit = Ideal::unit(&r);
        let rec = liaison_addition(&amb, &l1, &unit, &p(&r, "x1"), &p(&r, "x0")).unwrap();
        assert!(rec.basic_double_link);
        // deg = 1 + 0 + 2, genus = 0 + 1 - 1 + 1 + 0 + (1)(1+1-3) = 0
        assert_eq!(rec.predicted, Some((3, 0)));
    }

    #[test]
    fn linking_a_line_by_two_hyperplanes() {
        let (r, amb) = setup();
        let l = on_x(&amb, &r, &["x1", "x3", "x4"]);
        let res = direct_ci_link(&amb, &l, &p(&r, "x1"), &p(&r, "x3")).unwrap();
        assert_eq!(res.degree(), 1);
        assert!(res.contains(&p(&r, "x4 + x0")) || res.contains(&p(&r, "x4 - x0")) || res.degree() == 1);
        let back = direct_ci_link(&amb, &res, &p(&r, "x1"), &p(&r, "x3")).unwrap();
        assert!(ideals_equal(&back, &l).unwrap());
        let conic = on_x(&amb, &r, &["x0", "x2"]);
        assert!(direct_ci_link(&amb, &conic, &p(&r, "x0"), &p(&r, "x2")).unwrap().is_unit());
    }

    #[test]
    fn commutation_with_linear_forms() {
        let (r, amb) = setup();
        let l1 = on_x(&amb, &r, &["x1", "x3", "x4"]);
        let l2 = on_x(&amb, &r, &["x0", "x2", "x4"]);
        let rep = verify_linkage_commutes(
            &amb,
            &l1,
            &l2,
            &p(&r, "x3 + x4"),
            &p(&r, "x1"),
            &p(&r, "x2 - x4"),
            &p(&r, "x0"),
        )
        .unwrap();
        assert!(rep.equal);
        assert_eq!((rep.deg_c, rep.deg_c_prime, rep.predicted_total), (4, 4, 8));
        assert!(rep.holds());
    }

    #[test]
    fn gaeta_cases_from_a_conic() {
        let (r, amb) = setup();
        let conic = on_x(&amb, &r, &["x0", "x2"]);
        let l1 = p(&r, "x0");
        let l2 = p(&r, "x2");
        let m = p(&r, "x1 + x3 + x4");
        let m2 = p(&r, "x1 - x3");

        let after = direct_ci_link(&amb, &conic, &l1, &l2).unwrap();
        let mv = classify_gaeta_move(&amb, &conic, &l1, &l2, &after).unwrap();
        assert_eq!((mv.case, mv.delta), (1, -1));

        let f2 = &m * &l2;
        let after = direct_ci_link(&amb, &conic, &l1, &f2).unwrap();
        assert!(ideals_equal(&after, &on_x(&amb, &r, &["x0", "x1 + x3 + x4"])).unwrap());
        let mv = classify_gaeta_move(&amb, &conic, &l1, &f2, &after).unwrap();
        assert_eq!((mv.case, mv.delta), (2, 0));

        let (g1, g2) = (&m * &l1, &m2 * &l2);
        let after = direct_ci_link(&amb, &conic, &g1, &g2).unwrap();
        assert_eq!(after.degree(), 6);
        let mv = classify_gaeta_move(&amb, &conic, &g1, &g2, &after).unwrap();
        assert_eq!((mv.case, mv.delta, mv.mu_after), (3, 1, 3));
    }

    #[test]
    fn chain_with_a_conic_companion() {
        use rand::SeedableRng;
        let (r, amb) = setup();
        let l = on_x(&amb, &r, &["x1", "x3", "x4"]);
        let conic = on_x(&amb, &r, &["x0 + x4", "x2"]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        // G not a minimal generator of the conic
        let chain = licci_link_chain(&amb, &l, &conic, &p(&r, "x1"), &p(&r, "x2*x3"), &mut rng).unwrap();
        assert_eq!(chain.links(), 4);
        assert_eq!(chain.roles(), ["C", "Z1", "Y1", "D", "C1"]);
        assert_eq!(chain.companion_mu_trace, [2, 1]);
        assert!(chain.all_verified());
        assert!(ideals_equal(&chain.stages.last().unwrap().ideal, &l).unwrap());
        // G minimal: C is already a basic double link
        let chain = licci_link_chain(&amb, &l, &conic, &p(&r, "x1"), &p(&r, "x2"), &mut rng).unwrap();
        assert_eq!(chain.roles(), ["C", "D", "C1"]);
        assert!(chain.all_verified());
    }

    #[test]
    fn chain_with_three_generator_companion() {
        use rand::SeedableRng;
        let (r, amb) = setup();
        let l = on_x(&amb, &r, &["x1", "x3", "x4"]);
        // linked to a conic by (M1 L1, M2 L2)
        let comp = on_x(&amb, &r, &["(x0 + x3)*(x1 - x4)", "(x2 - x4)*(x3 - x2)", "(x0 + x3)*(x2 - x4)"]);
        assert_eq!(mu_on(&amb, &comp), 3);
        assert_eq!(comp.degree(), 6);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let g = p(&r, "x4*(x0 + x3)*(x1 - x4)");
        let chain = licci_link_chain(&amb, &l, &comp, &p(&r, "x1"), &g, &mut rng).unwrap();
        assert_eq!(chain.roles(), ["C", "Z2", "Y2", "Z1", "Y1", "D", "C1"]);
        assert_eq!(chain.companion_mu_trace, [3, 2, 1]);
        assert!(chain.all_verified());
    }
}
