//! Quadric threefolds in P^4 and the curves built on them: the `C_{0,a_2,...,a_r}` family,
//! unions of plane curves through the vertex of a quadric cone, and curves with Rao module `k`.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{check_regular_sequence, Ideal};
use crate::liaison::{liaison_addition, Ambient, MAX_RETRIES};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::parse::parse_polynomial;
use crate::poly::{Polynomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadricKind {
    Smooth,
    /// A cone over a smooth quadric surface, with one double point.
    Singular,
}

impl QuadricKind {
    pub fn name(self) -> &'static str {
        match self {
            QuadricKind::Smooth => "smooth-quadric",
            QuadricKind::Singular => "singular-quadric",
        }
    }

    pub fn from_name(s: &str) -> Option<QuadricKind> {
        match s {
            "smooth-quadric" | "smooth" => Some(QuadricKind::Smooth),
            "singular-quadric" | "singular" => Some(QuadricKind::Singular),
            _ => None,
        }
    }
}

/// A quadric threefold `X ⊂ P^4` with fixed coordinates and some subvarieties on it.
#[derive(Clone, Debug)]
pub struct AmbientQuadric {
    pub kind: QuadricKind,
    pub q: Polynomial,
    pub ambient: Ambient,
    /// `L = V(x1, x3, x4)`.
    pub line: Ideal,
    /// `V(x0, x2, x4)`, disjoint from `L` and from `plane`.
    pub disjoint_line: Ideal,
    /// The plane `V(x1 - x4, x3 - x2)`, not through the vertex.
    pub plane: Ideal,
    /// Planes `V(x1, x3)` and `V(x0, x2)` of one ruling (singular case only).
    pub d_planes: Vec<Ideal>,
    /// Planes `V(x0, x3)` and `V(x1, x2)` of the other ruling (singular case only).
    pub e_planes: Vec<Ideal>,
    /// The double point `(0:0:0:0:1)` (singular case only).
    pub vertex: Option<Ideal>,
}

fn ideal_of(ring: &Ring, gens: &[&str]) -> Ideal {
    let gens = gens.iter().map(|s| parse_polynomial(ring, s).expect("fixed form")).collect();
    Ideal::new(ring, gens).expect("fixed ideal")
}

impl AmbientQuadric {
    pub fn new(kind: QuadricKind, ring: &Ring) -> Result<AmbientQuadric> {
        if ring.nvars() != 5 {
            return Err(Error::InvalidInput("quadric threefolds live in P^4 (5 variables)".into()));
        }
        let q = match kind {
            QuadricKind::Smooth => parse_polynomial(ring, "x0*x1 + x2*x3 + x4^2")?,
            QuadricKind::Singular => parse_polynomial(ring, "x0*x1 + x2*x3")?,
        };
        let ambient = Ambient::hypersurface(kind.name(), &q)?;
        let on_x = |gens: &[&str]| ambient.on_x(&ideal_of(ring, gens)).map(|i| i.assume_saturated());
        let line = on_x(&["x1", "x3", "x4"])?;
        let disjoint_line = on_x(&["x0", "x2", "x4"])?;
        let plane = ideal_of(ring, &["x1 - x4", "x3 - x2"]).assume_saturated();
        let (d_planes, e_planes, vertex) = match kind {
            QuadricKind::Smooth => (Vec::new(), Vec::new(), None),
            QuadricKind::Singular => (
                vec![on_x(&["x1", "x3"])?, on_x(&["x0", "x2"])?],
                vec![on_x(&["x0", "x3"])?, on_x(&["x1", "x2"])?],
                Some(ideal_of(ring, &["x0", "x1", "x2", "x3"]).assume_saturated()),
            ),
        };
        Ok(AmbientQuadric { kind, q, ambient, line, disjoint_line, plane, d_planes, e_planes, vertex })
    }

    pub fn smooth(ring: &Ring) -> Result<AmbientQuadric> {
        AmbientQuadric::new(QuadricKind::Smooth, ring)
    }

    pub fn singular(ring: &Ring) -> Result<AmbientQuadric> {
        AmbientQuadric::new(QuadricKind::Singular, ring)
    }

    pub fn ring(&self) -> &Ring {
        self.q.ring()
    }

    /// The conic `X ∩ plane`.
    pub fn conic(&self) -> Result<Ideal> {
        Ok(self.plane.with_forms(&[self.q.clone()])?.assume_saturated())
    }
}

/// A random form of degree `d` in the variables `vars`.
pub fn random_form_in(ring: &Ring, vars: &[usize], d: u32, rng: &mut impl Rng) -> Polynomial {
    let p = ring.field().prime();
    loop {
        let terms: Vec<(u32, Monomial)> = monomials_of_degree(ring.nvars(), d)
            .into_iter()
            .filter(|m| (0..ring.nvars()).all(|i| m.exp(i) == 0 || vars.contains(&i)))
            .map(|m| (rng.gen_range(0..p), m))
            .collect();
        let f = Polynomial::from_terms(ring.clone(), terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// One liaison addition step of the `C_0` recursion.
#[derive(Clone, Debug, Serialize)]
pub struct C0Step {
    /// Length of the curve built in this step.
    pub r: usize,
    pub a: u32,
    /// `F1 ∈ I_L` of degree `a + 1`.
    pub f1: String,
    /// `F2 ∈ I_previous` of degree `r - 1`.
    pub f2: String,
    pub deg_f1: i64,
    pub deg_f2: i64,
    pub attempts: usize,
    pub degree: i64,
    pub genus: i64,
}

#[derive(Clone, Debug)]
pub struct C0Curve {
    pub spec: Vec<u32>,
    pub ideal: Ideal,
    pub trace: Vec<C0Step>,
}

/// Builds `C_{0,a_2,...,a_r}` on the smooth quadric: starting from the line `L`, each step forms
/// `F2·I_L + F1·I_prev` with `F2 ∈ I_prev` of degree `r-1` and `F1 ∈ I_L` of degree `a+1`.
pub fn build_c0_family(x: &AmbientQuadric, spec: &[u32], rng: &mut impl Rng) -> Result<C0Curve> {
    if x.kind != QuadricKind::Smooth {
        return Err(Error::Precondition("the C_0 family lives on the smooth quadric".into()));
    }
    let mut current = x.line.clone();
    let mut trace = Vec::new();
    // C_{0,a_k..a_r} comes from C_{0,a_{k+1}..a_r}
    for (k, &a) in spec.iter().enumerate().rev() {
        let r = spec.len() - k + 1;
        let deg_f1 = a as i64 + 1;
        let deg_f2 = r as i64 - 1;
        let mut found = None;
        for attempt in 1..=MAX_RETRIES {
            let f1 = x.line.random_element_of_degree(deg_f1, rng)?;
            let f2 = current.random_element_of_degree(deg_f2, rng)?;
            if check_regular_sequence(&[f1.clone(), f2.clone()], &x.ambient.ideal).is_ok() {
                found = Some((f1, f2, attempt));
                break;
            }
        }
        let Some((f1, f2, attempts)) = found else {
            return Err(Error::RetriesExhausted { attempts: MAX_RETRIES, what: format!("regular pair for a = {a}") });
        };
        let rec = liaison_addition(&x.ambient, &x.line, &current, &f1, &f2)?;
        trace.push(C0Step {
            r,
            a,
            f1: f1.to_string(),
            f2: f2.to_string(),
            deg_f1,
            deg_f2,
            attempts,
            degree: rec.degree,
            genus: rec.genus.unwrap_or(0),
        });
        current = rec.result;
    }
    Ok(C0Curve { spec: spec.to_vec(), ideal: current, trace })
}

/// Degree, genus and Hilbert function of `C_{0,a_2,...,a_r}` from the addition formulas alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C0Prediction {
    pub degree: i64,
    pub genus: i64,
    /// `(f1, f2)` for each step, innermost first.
    steps: Vec<(i64, i64)>,
}

/// Hilbert function of the quadric threefold.
fn h_quadric(j: i64) -> i64 {
    let c = |n: i64| if n < 0 { 0 } else { crate::monomial::binomial(n + 4, 4) as i64 };
    c(j) - c(j - 2)
}

fn h_ci_on_quadric(f1: i64, f2: i64, j: i64) -> i64 {
    h_quadric(j) - h_quadric(j - f1) - h_quadric(j - f2) + h_quadric(j - f1 - f2)
}

impl C0Prediction {
    pub fn hilbert_function(&self, j: i64) -> i64 {
        self.hf_after(self.steps.len(), j)
    }

    fn hf_after(&self, n: usize, j: i64) -> i64 {
        let line = |j: i64| (j + 1).max(0);
        if n == 0 {
            return line(j);
        }
        let (f1, f2) = self.steps[n - 1];
        line(j - f2) + self.hf_after(n - 1, j - f1) + h_ci_on_quadric(f1, f2, j)
    }
}

pub fn predicted_invariants_c0(spec: &[u32]) -> C0Prediction {
    let (d, e) = (2, -3);
    let (mut deg, mut genus) = (1i64, 0i64);
    let mut steps = Vec::new();
    for (k, &a) in spec.iter().enumerate().rev() {
        let r = (spec.len() - k + 1) as i64;
        let (f1, f2) = (a as i64 + 1, r - 1);
        let (nd, ng) = crate::liaison::predicted_degree_genus(1, 0, deg, genus, f1, f2, d, e);
        deg = nd;
        genus = ng;
        steps.push((f1, f2));
    }
    C0Prediction { degree: deg, genus, steps }
}

/// Twist bookkeeping for the minimality bound `Σ c_i ≥ 2 Σ r_j b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalShiftCertificate {
    /// Twists of the free part, ascending (`2r - 1` values).
    pub dissocie: Vec<i64>,
    /// `(b_j, r_j)` with `b_1 = 0 < b_2 < ...`.
    pub companion: Vec<(i64, i64)>,
    pub sum_c: i64,
    pub twice_sum_rb: i64,
    pub equality: bool,
}

pub fn minimal_shift_certificate(spec: &[u32]) -> MinimalShiftCertificate {
    let partial: Vec<i64> = spec
        .iter()
        .scan(0i64, |acc, &a| {
            *acc += a as i64;
            Some(*acc)
        })
        .collect();
    let mut dissocie = vec![0];
    let mut bs = vec![0];
    for &s in &partial {
        dissocie.extend([s, s]);
        bs.push(s);
    }
    dissocie.sort_unstable();
    let mut companion: Vec<(i64, i64)> = Vec::new();
    for b in bs {
        match companion.last_mut() {
            Some((last, r)) if *last == b => *r += 1,
            _ => companion.push((b, 1)),
        }
    }
    let sum_c = dissocie.iter().sum();
    let twice_sum_rb = 2 * companion.iter().map(|(b, r)| b * r).sum::<i64>();
    MinimalShiftCertificate { dissocie, companion, sum_c, twice_sum_rb, equality: sum_c == twice_sum_rb }
}

#[derive(Clone, Debug)]
pub struct VertexUnion {
    pub ideal: Ideal,
    pub components: [Ideal; 2],
    /// `e ≥ 2` and `d ≥ e + 2`.
    pub in_no_descent_range: bool,
}

/// A plane curve of degree `d` in the plane with coordinates `vars`, passing simply through the
/// point where only `vars[2]` is nonzero.
fn plane_curve_simply_through(ring: &Ring, vars: [usize; 3], d: u32, rng: &mut impl Rng) -> Result<Polynomial> {
    let apex = Monomial::var(vars[2]);
    let apex_power = (1..d).fold(Monomial::ONE, |m, _| m.mul(&apex));
    for _ in 0..MAX_RETRIES {
        let f = random_form_in(ring, &vars, d, rng);
        let terms: Vec<(u32, Monomial)> =
            f.terms().iter().copied().filter(|(_, m)| *m != apex_power.mul(&apex)).collect();
        let f = Polynomial::from_terms(ring.clone(), terms);
        let tangent = [vars[0], vars[1]].iter().any(|&v| f.coefficient(&apex_power.mul(&Monomial::var(v))) != 0);
        if tangent && f.degree() == Some(d) {
            return Ok(f);
        }
    }
    Err(Error::RetriesExhausted { attempts: MAX_RETRIES, what: "plane curve simply through the vertex".into() })
}

/// Union of plane curves of degrees `d` and `e` in the two D-planes of the singular quadric,
/// each passing simply through the vertex.
pub fn build_vertex_union(x: &AmbientQuadric, d: u32, e: u32, rng: &mut impl Rng) -> Result<VertexUnion> {
    if x.kind != QuadricKind::Singular {
        return Err(Error::Precondition("the vertex union needs the singular quadric".into()));
    }
    if d == 0 || e == 0 {
        return Err(Error::InvalidInput("degrees must be at least 1".into()));
    }
    let ring = x.ring();
    // D1 = V(x1, x3) has coordinates x0, x2, x4; D2 = V(x0, x2) has x1, x3, x4
    let f = plane_curve_simply_through(ring, [0, 2, 4], d, rng)?;
    let g = plane_curve_simply_through(ring, [1, 3, 4], e, rng)?;
    let c1 = x.d_planes[0].with_forms(&[f])?.assume_saturated();
    let c2 = x.d_planes[1].with_forms(&[g])?.assume_saturated();
    let ideal = c1.intersection(&c2)?;
    Ok(VertexUnion { ideal, components: [c1, c2], in_no_descent_range: e >= 2 && d >= e + 2 })
}

#[derive(Clone, Debug)]
pub struct MinimalRaoCurve {
    pub ideal: Ideal,
    /// Whether the curve lies on the quadric.
    pub on_ambient: bool,
}

/// A plane curve of degree `d - 1` together with a line missing its plane.
///
/// On the singular quadric the plane is a D-plane. The smooth quadric contains no planes, so
/// there the curve lies on `X` only for `d ≤ 3` (two lines, or a plane section and a line).
pub fn build_minimal_rao_curve(x: &AmbientQuadric, d: u32, rng: &mut impl Rng) -> Result<MinimalRaoCurve> {
    if d < 2 {
        return Err(Error::InvalidInput("minimal Rao curves have degree at least 2".into()));
    }
    let ring = x.ring();
    let (plane_curve, on_ambient) = match x.kind {
        QuadricKind::Singular => {
            let f = random_form_in(ring, &[0, 2, 4], d - 1, rng);
            (x.d_planes[0].with_forms(&[f])?, true)
        }
        QuadricKind::Smooth if d == 2 => (x.line.clone(), true),
        QuadricKind::Smooth if d == 3 => (x.conic()?, true),
        QuadricKind::Smooth => {
            let f = random_form_in(ring, &[0, 2, 4], d - 1, rng);
            (x.plane.with_forms(&[f])?, false)
        }
    };
    let line = if on_ambient { x.disjoint_line.clone() } else { ideal_of(ring, &["x0", "x2", "x4"]) };
    let ideal = plane_curve.assume_saturated().intersection(&line.assume_saturated())?;
    Ok(MinimalRaoCurve { ideal, on_ambient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::{default_rao_window, is_acm_curve, minimal_free_resolution, rao_dimensions};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn smooth() -> AmbientQuadric {
        AmbientQuadric::smooth(&Ring::projective(4)).unwrap()
    }

    #[test]
    fn fixed_subvarieties_lie_on_x() {
        for x in [smooth(), AmbientQuadric::singular(&Ring::projective(4)).unwrap()] {
            assert!(x.line.contains(&x.q));
            assert!(x.disjoint_line.contains(&x.q));
            assert!(x.line.sum(&x.disjoint_line).unwrap().is_unit() || x.line.sum(&x.disjoint_line).unwrap().hilbert().dimension() == Some(0));
            assert_eq!(x.conic().unwrap().degree(), 2);
            for p in x.d_planes.iter().chain(&x.e_planes) {
                assert!(p.contains(&x.q));
            }
        }
        let s = AmbientQuadric::singular(&Ring::projective(4)).unwrap();
        let meet = s.d_planes[0].sum(&s.d_planes[1]).unwrap();
        assert_eq!(meet.hilbert().dimension(), Some(1));
        assert!(meet.same_ideal(s.vertex.as_ref().unwrap()));
    }

    #[test]
    fn certificate_bookkeeping() {
        let c = minimal_shift_certificate(&[0]);
        assert_eq!((c.dissocie.clone(), c.companion.clone()), (vec![0, 0, 0], vec![(0, 2)]));
        let c = minimal_shift_certificate(&[1]);
        assert_eq!(c.dissocie, [0, 1, 1]);
        assert_eq!(c.companion, [(0, 1), (1, 1)]);
        assert_eq!((c.sum_c, c.twice_sum_rb), (2, 2));
        let c = minimal_shift_certificate(&[1, 2]);
        assert_eq!(c.dissocie, [0, 1, 1, 3, 3]);
        assert_eq!((c.sum_c, c.twice_sum_rb, c.equality), (8, 8, true));
        assert!(minimal_shift_certificate(&[]).equality);
    }

    #[test]
    fn predictions() {
        let p = predicted_invariants_c0(&[]);
        assert_eq!((p.degree, p.genus, p.hilbert_function(3)), (1, 0, 4));
        let p = predicted_invariants_c0(&[0]);
        assert_eq!((p.degree, p.genus, p.hilbert_function(2)), (4, 0, 9));
        assert_eq!(predicted_invariants_c0(&[1]).degree, 6);
        let p = predicted_invariants_c0(&[0, 0]);
        assert_eq!((p.degree, p.genus), (9, 5));
        let p = predicted_invariants_c0(&[1, 2]);
        assert_eq!((p.degree, p.genus), (17, 27));
    }

    #[test]
    fn small_c0_curves() {
        let x = smooth();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for spec in [vec![], vec![0], vec![1]] {
            let c = build_c0_family(&x, &spec, &mut rng).unwrap();
            let p = predicted_invariants_c0(&spec);
            assert_eq!((c.ideal.degree(), c.ideal.genus()), (p.degree, Some(p.genus)));
            for j in 0..8 {
                assert_eq!(c.ideal.hilbert().hilbert_function(j), p.hilbert_function(j), "{spec:?} at {j}");
            }
            assert!(is_acm_curve(&c.ideal).unwrap());
        }
        let c = build_c0_family(&x, &[0], &mut rng).unwrap();
        assert_eq!(c.ideal.minimal_generators_by_degree().into_iter().collect::<Vec<_>>(), [(2, 6)]);
    }

    #[test]
    fn vertex_union_of_two_lines() {
        let x = AmbientQuadric::singular(&Ring::projective(4)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = build_vertex_union(&x, 1, 1, &mut rng).unwrap();
        assert_eq!(u.ideal.degree(), 2);
        assert!(!u.in_no_descent_range);
        assert!(is_acm_curve(&u.ideal).unwrap());
    }

    #[test]
    fn minimal_rao_curves() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = AmbientQuadric::singular(&Ring::projective(4)).unwrap();
        assert!(matches!(build_minimal_rao_curve(&x, 1, &mut rng), Err(Error::InvalidInput(_))));
        let c = build_minimal_rao_curve(&x, 3, &mut rng).unwrap();
        assert!(c.on_ambient && c.ideal.contains(&x.q));
        assert_eq!((c.ideal.degree(), c.ideal.genus()), (3, Some(-1)));
        let res = minimal_free_resolution(&c.ideal).unwrap();
        let rao = rao_dimensions(&c.ideal, &res, default_rao_window(&res)).unwrap();
        assert_eq!(rao.support().into_iter().collect::<Vec<_>>(), [(0, 1)]);
        assert!(rao.certified());
        let s = smooth();
        let c = build_minimal_rao_curve(&s, 2, &mut rng).unwrap();
        assert!(c.on_ambient);
        let c = build_minimal_rao_curve(&s, 4, &mut rng).unwrap();
        assert!(!c.on_ambient);
        assert_eq!(c.ideal.degree(), 4);
    }
}
