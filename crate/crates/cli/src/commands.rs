use std::path::Path;

use liaison_core::io::{format_ideal_file, read_ideal_file, IdealFile};
use liaison_core::liaison::{
    direct_ci_link, licci_link_chain, liaison_addition, mu_on, verify_linkage_commutes, Ambient, MAX_RETRIES,
};
use liaison_core::parse::parse_polynomial;
use liaison_core::quadric::{
    build_c0_family, build_minimal_rao_curve, build_vertex_union, minimal_shift_certificate,
    predicted_invariants_c0, AmbientQuadric, QuadricKind,
};
use liaison_core::resolution::{default_rao_window, minimal_free_resolution, rao_dimensions, RaoTable};
use liaison_core::surfaces::{
    biliaison_step_class, divisor_invariants, intersection_number, projection_bidegree, DivisorClass, SurfaceKind,
};
use liaison_core::{ideals_equal, is_regular_sequence, Error, Ideal, Polynomial, Result, Ring, DEFAULT_PRIME};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::report::Report;
use crate::{Cli, Command, Construct};

pub(crate) fn dispatch(cli: &Cli, r: &mut Report) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match &cli.command {
        Command::Hilbert { file } => hilbert(cli, r, &load(cli, file)?),
        Command::Betti { file } => betti(r, &load(cli, file)?),
        Command::Rao { file } => rao(cli, r, &load(cli, file)?),
        Command::Add { f1, f2, ideal1, ideal2, out } => {
            add(cli, r, f1, f2, &load(cli, ideal1)?, &load(cli, ideal2)?, out.as_deref())
        }
        Command::Link { f, g, ideal, out } => link(r, f, g, &load(cli, ideal)?, out.as_deref()),
        Command::Chain { companion, scenario, c1, f, g } => {
            let comp = load(cli, companion)?;
            let x = quadric(scenario, comp.ideal.ring())?;
            let c1 = match c1 {
                Some(p) => load(cli, p)?.ideal,
                None => x.line.clone(),
            };
            chain(r, &x, &c1, &comp.ideal, f.as_deref(), g.as_deref(), &mut rng)
        }
        Command::VerifyProp41 { scenario, c1, c2, b, f, a, g } => {
            let ring = Ring::projective(4).with_field(field(cli.prime)?);
            let x = quadric(scenario, &ring)?;
            let i1 = match c1 {
                Some(p) => load(cli, p)?.ideal,
                None => x.line.clone(),
            };
            let i2 = match c2 {
                Some(p) => load(cli, p)?.ideal,
                None => x.disjoint_line.clone(),
            };
            let forms = [b, f, a, g].map(|s| s.as_deref());
            prop41(r, &x, &i1, &i2, forms, &mut rng)
        }
        Command::Construct { what } => {
            let ring = Ring::projective(4).with_field(field(cli.prime)?);
            r.int("prime", ring.field().prime() as i64);
            match what {
                Construct::C0 { a, out } => construct_c0(cli, r, &ring, a, out.as_deref(), &mut rng),
                Construct::VertexUnion { d, e, out } => {
                    let x = AmbientQuadric::singular(&ring)?;
                    let u = build_vertex_union(&x, *d, *e, &mut rng)?;
                    r.int("degree", u.ideal.degree());
                    r.check("degree_is_d_plus_e", u.ideal.degree() == (*d + *e) as i64);
                    r.flag("no_descent_range", u.in_no_descent_range);
                    let table = rao_table(cli, &u.ideal)?;
                    write_rao(r, &table);
                    r.check("rao_certified", table.certified());
                    r.check("acm", table.is_zero());
                    emit_ideal(r, "ideal", &u.ideal, Some(x.kind.name()), out.as_deref())
                }
                Construct::MinimalRao { d, scenario, out } => {
                    let x = quadric(scenario, &ring)?;
                    let c = build_minimal_rao_curve(&x, *d, &mut rng)?;
                    r.int("degree", c.ideal.degree());
                    r.flag("on_ambient", c.on_ambient);
                    let table = rao_table(cli, &c.ideal)?;
                    write_rao(r, &table);
                    r.check("rao_certified", table.certified());
                    r.check("rao_is_k_in_degree_0", table.support().into_iter().collect::<Vec<_>>() == [(0, 1)]);
                    let amb = c.on_ambient.then_some(x.kind.name());
                    emit_ideal(r, "ideal", &c.ideal, amb, out.as_deref())
                }
            }
        }
        Command::Divisor { class, step } => divisor(r, class, *step),
    }
}

fn field(prime: Option<u32>) -> Result<liaison_core::FieldConfig> {
    liaison_core::FieldConfig::new(prime.unwrap_or(DEFAULT_PRIME))
}

/// Reads an ideal file; a declared ambient is added to the ideal.
fn load(cli: &Cli, path: &Path) -> Result<IdealFile> {
    let mut f = read_ideal_file(path, cli.prime).map_err(|e| match e {
        Error::Io(io) => Error::InvalidInput(format!("{}: {io}", path.display())),
        other => other,
    })?;
    let amb = ambient_of(f.ambient.as_deref(), f.ideal.ring())?;
    f.ideal = amb.on_x(&f.ideal)?;
    Ok(f)
}

fn quadric(name: &str, ring: &Ring) -> Result<AmbientQuadric> {
    let kind = QuadricKind::from_name(name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown scenario {name:?} (smooth-quadric, singular-quadric)")))?;
    AmbientQuadric::new(kind, ring)
}

fn ambient_of(name: Option<&str>, ring: &Ring) -> Result<Ambient> {
    match name {
        None | Some("P4") | Some("projective") => Ok(Ambient::projective_space(ring)),
        Some(n) => Ok(quadric(n, ring)?.ambient),
    }
}

fn poly(ring: &Ring, text: &str) -> Result<Polynomial> {
    parse_polynomial(ring, text)
}

fn curve_keys(r: &mut Report, prefix: &str, i: &Ideal) {
    r.int(format!("{prefix}degree"), i.degree());
    if let Some(g) = i.genus() {
        r.int(format!("{prefix}genus"), g);
    }
}

fn emit_ideal(r: &mut Report, key: &str, i: &Ideal, ambient: Option<&str>, out: Option<&Path>) -> Result<()> {
    let m = i.minimalized();
    r.text(key, m.to_string());
    if let Some(path) = out {
        std::fs::write(path, format_ideal_file(&m, ambient))
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

/// `[0, reg + 3]` unless a window was given.
fn hf_window(cli: &Cli, i: &Ideal) -> Result<(i64, i64)> {
    if let Some(w) = cli.window {
        return Ok(w);
    }
    let res = minimal_free_resolution(i)?;
    Ok((0, res.regularity().max(0) + 3))
}

fn hilbert(cli: &Cli, r: &mut Report, f: &IdealFile) -> Result<()> {
    let i = &f.ideal;
    let h = i.hilbert();
    r.int("prime", i.ring().field().prime() as i64);
    curve_keys(r, "", i);
    if let Some(d) = h.dimension() {
        r.int("dimension", d as i64);
    }
    let (lo, hi) = cli.window.unwrap_or((0, 5));
    for j in lo..=hi {
        r.int(format!("hilbert.{j}"), h.hilbert_function(j));
    }
    let from = h.polynomial_agrees_from();
    r.int("hilbert_polynomial_from", from);
    r.check("polynomial_matches_function", (from..from + 6).all(|j| h.hilbert_function(j) == h.hilbert_polynomial(j)));
    Ok(())
}

fn betti(r: &mut Report, f: &IdealFile) -> Result<()> {
    let i = &f.ideal;
    r.int("prime", i.ring().field().prime() as i64);
    let res = minimal_free_resolution(i)?;
    for (k, row) in res.betti().iter().enumerate() {
        for (twist, n) in row {
            r.int(format!("betti.{k}.{twist}"), *n as i64);
        }
    }
    r.int("projective_dimension", res.projective_dimension() as i64);
    r.int("regularity", res.regularity());
    r.check("composition_zero", res.composition_is_zero());
    r.check("minimal", res.is_minimal());
    let reg = res.regularity().max(0);
    let h = i.hilbert();
    r.check("hilbert_consistent", (0..=reg + 3).all(|j| res.hilbert_function(j) == h.hilbert_function(j)));
    Ok(())
}

fn rao_table(cli: &Cli, i: &Ideal) -> Result<RaoTable> {
    let res = minimal_free_resolution(i)?;
    let window = cli.window.unwrap_or_else(|| default_rao_window(&res));
    rao_dimensions(i, &res, window)
}

fn write_rao(r: &mut Report, t: &RaoTable) {
    r.int("rao_window.jmin", t.jmin);
    r.int("rao_window.jmax", t.jmax);
    for (j, v) in &t.values {
        r.int(format!("rao.{j}"), *v);
    }
}

fn rao(cli: &Cli, r: &mut Report, f: &IdealFile) -> Result<()> {
    let i = &f.ideal;
    r.int("prime", i.ring().field().prime() as i64);
    curve_keys(r, "", i);
    let t = rao_table(cli, i)?;
    write_rao(r, &t);
    r.flag("certified", t.certified());
    r.flag("acm", t.is_zero() && t.certified());
    Ok(())
}

fn add(
    cli: &Cli,
    r: &mut Report,
    f1: &str,
    f2: &str,
    c1: &IdealFile,
    c2: &IdealFile,
    out: Option<&Path>,
) -> Result<()> {
    let ring = c1.ideal.ring();
    ring.check_same(c2.ideal.ring())?;
    let name = match (&c1.ambient, &c2.ambient) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::InvalidInput(format!("ideal files disagree on the ambient: {a} vs {b}")));
        }
        (a, b) => a.clone().or(b.clone()),
    };
    let amb = ambient_of(name.as_deref(), ring)?;
    r.int("prime", ring.field().prime() as i64);
    r.text("ambient", amb.name.clone());
    let rec = liaison_addition(&amb, &c1.ideal, &c2.ideal, &poly(ring, f1)?, &poly(ring, f2)?)?;
    curve_keys(r, "", &rec.result);
    if let Some((d, g)) = rec.predicted {
        r.int("predicted.degree", d);
        r.int("predicted.genus", g);
        r.check("matches_prediction", (rec.degree, rec.genus) == (d, Some(g)));
    }
    r.flag("basic_double_link", rec.basic_double_link);
    r.check("saturated", rec.saturated);
    let (lo, hi) = hf_window(cli, &rec.result)?;
    r.check("hilbert_additivity", (lo..=hi).all(|j| rec.additivity_holds_at(&amb, j)));
    r.check("exact_sequence", (lo..=hi).all(|j| rec.exact_sequence_holds_at(&amb, j)));
    emit_ideal(r, "ideal", &rec.result, name.as_deref(), out)
}

fn link(r: &mut Report, f: &str, g: &str, c: &IdealFile, out: Option<&Path>) -> Result<()> {
    let ring = c.ideal.ring();
    let amb = ambient_of(c.ambient.as_deref(), ring)?;
    r.int("prime", ring.field().prime() as i64);
    r.text("ambient", amb.name.clone());
    let (f, g) = (poly(ring, f)?, poly(ring, g)?);
    let i = amb.on_x(&c.ideal)?;
    curve_keys(r, "input.", &i);
    let res = direct_ci_link(&amb, &i, &f, &g)?;
    curve_keys(r, "", &res);
    let total = amb.degree * f.degree().unwrap_or(0) as i64 * g.degree().unwrap_or(0) as i64;
    r.int("complete_intersection_degree", total);
    r.check("degrees_add_up", i.degree() + res.degree() == total);
    let back = direct_ci_link(&amb, &res, &f, &g)?;
    r.check("links_back", ideals_equal(&back, &i)?);
    emit_ideal(r, "ideal", &res, c.ambient.as_deref(), out)
}

fn pick(
    ideal: &Ideal,
    rng: &mut ChaCha8Rng,
    what: &str,
    mut ok: impl FnMut(&Polynomial) -> bool,
    degree: i64,
) -> Result<Polynomial> {
    for _ in 0..MAX_RETRIES {
        let f = ideal.random_element_of_degree(degree, rng)?;
        if ok(&f) {
            return Ok(f);
        }
    }
    Err(Error::RetriesExhausted { attempts: MAX_RETRIES, what: what.to_string() })
}

/// Lowest degree in which `I/I_X` is nonzero.
fn lowest_degree(amb: &Ambient, i: &Ideal) -> i64 {
    let lo = i.initial_degree().unwrap_or(0);
    (lo..lo + 8).find(|&d| i.dim_in_degree(d) > amb.ideal.dim_in_degree(d)).unwrap_or(lo)
}

#[allow(clippy::too_many_arguments)]
fn chain(
    r: &mut Report,
    x: &AmbientQuadric,
    c1: &Ideal,
    comp: &Ideal,
    f: Option<&str>,
    g: Option<&str>,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let amb = &x.ambient;
    let ring = x.ring();
    ring.check_same(comp.ring())?;
    let (c1, comp) = (amb.on_x(c1)?, amb.on_x(comp)?);
    r.int("prime", ring.field().prime() as i64);
    r.text("ambient", amb.name.clone());
    let g = match g {
        Some(t) => poly(ring, t)?,
        None => {
            // one degree above the generators, so never a minimal generator
            let top = comp.minimal_generators_by_degree_over(Some(&amb.ideal)).into_keys().max().unwrap_or(0);
            pick(&comp, rng, "G in the companion", |_| true, top + 1)?
        }
    };
    let f = match f {
        Some(t) => poly(ring, t)?,
        None => pick(
            &c1,
            rng,
            "F in I_C1",
            |f| is_regular_sequence(&[f.clone(), g.clone()], &amb.ideal),
            lowest_degree(amb, &c1),
        )?,
    };
    r.text("f", f.to_string());
    r.text("g", g.to_string());
    r.int("companion.mu", mu_on(amb, &comp) as i64);
    let chain = licci_link_chain(amb, &c1, &comp, &f, &g, rng)?;
    r.int("links", chain.links() as i64);
    for (k, m) in chain.companion_mu_trace.iter().enumerate() {
        r.int(format!("mu_trace.{k}"), *m as i64);
    }
    for (k, s) in chain.stages.iter().enumerate() {
        let p = format!("stage.{k:02}.");
        r.text(format!("{p}role"), s.role.clone());
        r.int(format!("{p}degree"), s.degree);
        if let Some(g) = s.genus {
            r.int(format!("{p}genus"), g);
        }
        if let Some((a, b)) = &s.link {
            r.text(format!("{p}link"), format!("({a}, {b})"));
        }
        if let Some(m) = s.companion_mu {
            r.int(format!("{p}companion_mu"), m as i64);
        }
        r.check(format!("{p}structure_verified"), s.structure_verified);
        r.check(format!("{p}double_link_verified"), s.double_link_verified);
    }
    let last = &chain.stages.last().expect("nonempty chain").ideal;
    r.check("ends_at_c1", ideals_equal(last, &c1)?);
    r.check("even_number_of_links", chain.links() % 2 == 0);
    Ok(())
}

fn prop41(
    r: &mut Report,
    x: &AmbientQuadric,
    i1: &Ideal,
    i2: &Ideal,
    forms: [Option<&str>; 4],
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let amb = &x.ambient;
    let ring = x.ring();
    let (i1, i2) = (amb.on_x(i1)?, amb.on_x(i2)?);
    r.int("prime", ring.field().prime() as i64);
    r.text("ambient", amb.name.clone());
    let given: Vec<Option<Polynomial>> =
        forms.iter().map(|s| s.map(|t| poly(ring, t)).transpose()).collect::<Result<_>>()?;
    let (d1, d2) = (lowest_degree(amb, &i1), lowest_degree(amb, &i2));
    let mut chosen = None;
    for _ in 0..MAX_RETRIES {
        let mut draw = |k: usize, i: &Ideal, d: i64| -> Result<Polynomial> {
            match &given[k] {
                Some(p) => Ok(p.clone()),
                None => i.random_element_of_degree(d, rng),
            }
        };
        let (b, f, a, g) = (draw(0, &i1, d1)?, draw(1, &i1, d1)?, draw(2, &i2, d2)?, draw(3, &i2, d2)?);
        let reg = |p: &Polynomial, q: &Polynomial| is_regular_sequence(&[p.clone(), q.clone()], &amb.ideal);
        if reg(&f, &b) && reg(&g, &a) && reg(&f, &g) && reg(&(&a * &f), &(&b * &g)) {
            chosen = Some((b, f, a, g));
            break;
        }
        if given.iter().all(Option::is_some) {
            break;
        }
    }
    let Some((b, f, a, g)) = chosen else {
        return Err(Error::Precondition("no admissible forms B, F, A, G".into()));
    };
    for (k, p) in [("b", &b), ("f", &f), ("a", &a), ("g", &g)] {
        r.text(format!("form.{k}"), p.to_string());
    }
    let rep = verify_linkage_commutes(amb, &i1, &i2, &b, &f, &a, &g)?;
    r.int("c.degree", rep.deg_c);
    r.int("c_prime.degree", rep.deg_c_prime);
    r.int("predicted_total", rep.predicted_total);
    r.check("residual_equals_addition", rep.equal);
    r.check("degrees_add_up", rep.deg_c + rep.deg_c_prime == rep.predicted_total);
    r.text("c_prime", rep.c_prime.minimalized().to_string());
    Ok(())
}

fn construct_c0(
    cli: &Cli,
    r: &mut Report,
    ring: &Ring,
    a: &str,
    out: Option<&Path>,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let spec: Vec<u32> = a
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u32>().map_err(|_| Error::InvalidInput(format!("bad entry {s:?} in --a"))))
        .collect::<Result<_>>()?;
    let x = AmbientQuadric::smooth(ring)?;
    let c = build_c0_family(&x, &spec, rng)?;
    let p = predicted_invariants_c0(&spec);
    curve_keys(r, "", &c.ideal);
    r.int("predicted.degree", p.degree);
    r.int("predicted.genus", p.genus);
    r.check("matches_prediction", (c.ideal.degree(), c.ideal.genus()) == (p.degree, Some(p.genus)));
    let (lo, hi) = hf_window(cli, &c.ideal)?;
    let h = c.ideal.hilbert();
    for j in lo..=hi {
        r.int(format!("hilbert.{j}"), h.hilbert_function(j));
    }
    r.check("hilbert_matches_prediction", (lo..=hi).all(|j| h.hilbert_function(j) == p.hilbert_function(j)));
    r.check("acm", liaison_core::resolution::is_acm_curve(&c.ideal)?);
    let cert = minimal_shift_certificate(&spec);
    r.int("certificate.sum_c", cert.sum_c);
    r.int("certificate.twice_sum_rb", cert.twice_sum_rb);
    r.check("certificate.equality", cert.equality);
    for (d, n) in c.ideal.minimal_generators_by_degree() {
        r.int(format!("generators.{d}"), n as i64);
    }
    for (k, s) in c.trace.iter().enumerate() {
        let p = format!("trace.{k:02}.");
        r.int(format!("{p}a"), s.a as i64);
        r.text(format!("{p}f1"), s.f1.clone());
        r.text(format!("{p}f2"), s.f2.clone());
        r.int(format!("{p}degree"), s.degree);
        r.int(format!("{p}genus"), s.genus);
    }
    emit_ideal(r, "ideal", &c.ideal, Some(x.kind.name()), out)
}

fn divisor(r: &mut Report, class: &str, step: Option<i64>) -> Result<()> {
    let c: DivisorClass = class.parse()?;
    let inv = divisor_invariants(&c);
    r.text("class", c.to_string());
    r.text("surface", c.kind().name());
    r.int("degree", inv.degree);
    r.int("genus", inv.genus);
    r.int("self_intersection", inv.self_intersection);
    match c.kind() {
        SurfaceKind::DelPezzo4 => {
            let (x, y) = projection_bidegree(&c)?;
            r.int("bidegree.gamma", x);
            r.int("bidegree.gamma_prime", y);
            r.check("bidegree_sums_to_degree", x + y == inv.degree);
        }
        SurfaceKind::CubicScroll => {
            r.int("dot.fiber", intersection_number(&c, &DivisorClass::scroll_fiber())?);
            r.int("dot.exceptional", intersection_number(&c, &DivisorClass::scroll_exceptional())?);
            r.text("convention", "E = (0;1) is stored as (0;-1) so that (a;b).E = b");
        }
        SurfaceKind::QuadricSurface => {}
    }
    if let Some(k) = step {
        let s = biliaison_step_class(&c, k);
        let sinv = divisor_invariants(&s);
        let h = DivisorClass::hyperplane(c.kind());
        let h2 = intersection_number(&h, &h)?;
        r.text("step.class", s.to_string());
        r.int("step.degree", sinv.degree);
        r.int("step.genus", sinv.genus);
        r.check("step.degree_shift", sinv.degree == inv.degree + k * h2);
    }
    Ok(())
}
