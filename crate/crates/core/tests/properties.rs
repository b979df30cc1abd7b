mod common;

use liaison_core::groebner::{groebner_basis, reduced_groebner_basis};
use liaison_core::liaison::{verify_linkage_commutes, Ambient};
use liaison_core::quadric::{minimal_shift_certificate, random_form_in};
use liaison_core::resolution::minimal_free_resolution;
use liaison_core::surfaces::{
    biliaison_step_class, divisor_invariants, intersection_number, projection_bidegree, DivisorClass, SurfaceKind,
};
use liaison_core::{Ideal, Monomial, Polynomial, Ring, TermOrder};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ALL: [usize; 5] = [0, 1, 2, 3, 4];

fn poly_strategy(nvars: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((0u32..32003, prop::collection::vec(0u32..4, nvars)), 0..7).prop_map(move |terms| {
        let r = Ring::projective(nvars - 1);
        Polynomial::from_terms(r, terms.into_iter().map(|(c, e)| (c, Monomial::from_exponents(&e))).collect())
    })
}

fn homogeneous_strategy(nvars: usize, d: u32) -> impl Strategy<Value = Polynomial> {
    any::<u64>().prop_map(move |seed| {
        let r = Ring::projective(nvars - 1);
        random_form_in(&r, &ALL[..nvars], d, &mut ChaCha8Rng::seed_from_u64(seed))
    })
}

/// Random homogeneous generators of degrees 1..=3 in `nvars` variables.
fn ideal_gens(nvars: usize, seed: u64, count: usize) -> Vec<Polynomial> {
    let r = Ring::projective(nvars - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let d = 1 + ((seed >> (2 * k)) % 3) as u32;
            random_form_in(&r, &ALL[..nvars], d, &mut rng)
        })
        .collect()
}

fn random_combination(gens: &[Polynomial], d: u32, seed: u64) -> Polynomial {
    let r = *gens[0].ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = r.zero();
    for g in gens {
        let dg = g.degree().unwrap();
        if dg <= d {
            let c = random_form_in(&r, &ALL[..r.nvars()], d - dg, &mut rng);
            f = &f + &(&c * g);
        }
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in poly_strategy(3), g in poly_strategy(3), h in poly_strategy(3)) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&(&f + &g) - &g, f);
    }

    #[test]
    fn homogeneous_products(f in homogeneous_strategy(4, 2), g in homogeneous_strategy(4, 3)) {
        let fg = &f * &g;
        prop_assert_eq!(fg.is_homogeneous(), (true, Some(5)));
    }

    #[test]
    fn term_orders_are_total_orders(
        a in prop::collection::vec(0u32..4, 4),
        b in prop::collection::vec(0u32..4, 4),
        c in prop::collection::vec(0u32..4, 4),
    ) {
        let (a, b, c) = (Monomial::from_exponents(&a), Monomial::from_exponents(&b), Monomial::from_exponents(&c));
        for ord in [TermOrder::Grevlex, TermOrder::Lex, TermOrder::Elimination(2)] {
            prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&b, &a).reverse());
            if ord.cmp(&a, &b).is_le() && ord.cmp(&b, &c).is_le() {
                prop_assert!(ord.cmp(&a, &c).is_le());
            }
            // multiplicative
            prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), ord.cmp(&a, &b));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn membership_of_combinations(seed in any::<u64>(), d in 3u32..5) {
        let gens = ideal_gens(4, seed, 3);
        let gb = groebner_basis(gens[0].ring(), &gens);
        let f = random_combination(&gens, d, seed ^ 0x5eed);
        prop_assert!(gb.normal_form(&f).is_zero());
        prop_assert!(gb.contains(&f));
    }

    #[test]
    fn reduced_basis_is_canonical(seed in any::<u64>()) {
        let gens = ideal_gens(4, seed, 3);
        let gb = reduced_groebner_basis(&gens, TermOrder::Grevlex).unwrap();
        // permuted, rescaled and padded inputs
        let mut other: Vec<Polynomial> = gens.iter().rev().map(|g| g.scale(7)).collect();
        other.push(random_combination(&gens, 4, seed.rotate_left(7)));
        other.rotate_left(1);
        prop_assert_eq!(&reduced_groebner_basis(&other, TermOrder::Grevlex).unwrap(), &gb);
        // idempotence
        prop_assert_eq!(&reduced_groebner_basis(gb.generators(), TermOrder::Grevlex).unwrap(), &gb);
    }

    #[test]
    fn membership_agrees_across_orders(seed in any::<u64>(), probe in homogeneous_strategy(3, 3)) {
        let gens = ideal_gens(3, seed, 2);
        let grevlex = reduced_groebner_basis(&gens, TermOrder::Grevlex).unwrap();
        let lex = reduced_groebner_basis(&gens, TermOrder::Lex).unwrap();
        let inside = random_combination(&gens, 3, seed ^ 1);
        prop_assert!(lex.contains(&inside.reordered(TermOrder::Lex)));
        prop_assert_eq!(grevlex.contains(&probe), lex.contains(&probe.reordered(TermOrder::Lex)));
    }

    #[test]
    fn saturation_and_colon(seed in any::<u64>()) {
        let r = Ring::projective(3);
        let gens = ideal_gens(4, seed, 2);
        let i = Ideal::new(&r, gens).unwrap();
        let m = Ideal::maximal(&r);
        let i_m = i.product(&m).unwrap();
        let sat = i_m.saturate().unwrap();
        prop_assert!(sat.same_ideal(&sat.saturate().unwrap()));
        prop_assert!(sat.contains_ideal(&i));
        let j = Ideal::new(&r, vec![random_form_in(&r, &ALL[..4], 1, &mut ChaCha8Rng::seed_from_u64(seed ^ 9))]).unwrap();
        prop_assert!(i.colon(&j).unwrap().contains_ideal(&i));
    }

    #[test]
    fn hilbert_data_is_coordinate_invariant(seed in any::<u64>()) {
        let r = Ring::projective(3);
        let gens = ideal_gens(4, seed, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 77);
        // unipotent change of coordinates x_i -> x_i + Σ_{j>i} c_ij x_j
        let images: Vec<Polynomial> = (0..4)
            .map(|i| {
                let tail = if i < 3 { random_form_in(&r, &ALL[i + 1..4], 1, &mut rng) } else { r.zero() };
                &r.var(i) + &tail
            })
            .collect();
        let moved: Vec<Polynomial> = gens.iter().map(|g| g.substitute(&images).unwrap()).collect();
        let (a, b) = (Ideal::new(&r, gens).unwrap(), Ideal::new(&r, moved).unwrap());
        prop_assert_eq!(a.hilbert().dimension(), b.hilbert().dimension());
        prop_assert_eq!(a.degree(), b.degree());
        for j in 0..8 {
            prop_assert_eq!(a.hilbert().hilbert_function(j), b.hilbert().hilbert_function(j));
        }
    }

    #[test]
    fn resolutions_are_exact_complexes(seed in any::<u64>()) {
        let r = Ring::projective(3);
        let i = Ideal::new(&r, ideal_gens(4, seed, 3)).unwrap();
        let res = minimal_free_resolution(&i).unwrap();
        prop_assert!(res.composition_is_zero());
        prop_assert!(res.is_minimal());
        for j in 0..=res.regularity() + 3 {
            prop_assert_eq!(res.hilbert_function(j), i.hilbert().hilbert_function(j));
        }
    }
}

fn divisor_strategy() -> impl Strategy<Value = DivisorClass> {
    prop_oneof![
        (-6i64..7, -6i64..7).prop_map(|(a, b)| DivisorClass::QuadricSurface { a, b }),
        (-6i64..7, prop::array::uniform5(-3i64..4)).prop_map(|(d, m)| DivisorClass::DelPezzo4 { d, m }),
        (-6i64..7, -6i64..7).prop_map(|(a, b)| DivisorClass::CubicScroll { a, b }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn adjunction_genus_is_integral(c in divisor_strategy()) {
        let k = DivisorClass::canonical(c.kind());
        let c2 = intersection_number(&c, &c).unwrap();
        let ck = intersection_number(&c, &k).unwrap();
        prop_assert_eq!((c2 + ck).rem_euclid(2), 0);
        let inv = divisor_invariants(&c);
        prop_assert_eq!(2 * inv.genus - 2, c2 + ck);
    }

    #[test]
    fn biliaison_steps_add_multiples_of_h_squared(c in divisor_strategy(), k in -3i64..4) {
        let h = DivisorClass::hyperplane(c.kind());
        let h2 = intersection_number(&h, &h).unwrap();
        let expected_h2 = match c.kind() {
            SurfaceKind::QuadricSurface => 2,
            SurfaceKind::DelPezzo4 => 4,
            SurfaceKind::CubicScroll => 3,
        };
        prop_assert_eq!(h2, expected_h2);
        let step = biliaison_step_class(&c, k);
        prop_assert_eq!(divisor_invariants(&step).degree, divisor_invariants(&c).degree + k * h2);
    }

    #[test]
    fn conic_classes_sum_to_the_hyperplane(d in -6i64..7, m in prop::array::uniform5(-3i64..4)) {
        let c = DivisorClass::DelPezzo4 { d, m };
        let (g, gp) = DivisorClass::del_pezzo_conics();
        let (x, y) = projection_bidegree(&c).unwrap();
        prop_assert_eq!((x, y), (intersection_number(&c, &g).unwrap(), intersection_number(&c, &gp).unwrap()));
        prop_assert_eq!(x + y, divisor_invariants(&c).degree);
    }

    #[test]
    fn shift_certificate_is_sharp(spec in prop::collection::vec(0u32..4, 0..6)) {
        let c = minimal_shift_certificate(&spec);
        prop_assert_eq!(c.dissocie.len(), 2 * spec.len() + 1);
        prop_assert_eq!(c.companion.iter().map(|(_, r)| r).sum::<i64>(), spec.len() as i64 + 1);
        prop_assert!(c.equality);
        prop_assert_eq!(c.sum_c, c.twice_sum_rb);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn linkage_commutes_with_addition(seed in any::<u64>()) {
        let x = common::smooth();
        let amb: &Ambient = &x.ambient;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c2 = common::random_conic(&x, &mut rng);
        let mut done = false;
        for _ in 0..10 {
            let b = x.line.random_element_of_degree(1, &mut rng).unwrap();
            let f = x.line.random_element_of_degree(1, &mut rng).unwrap();
            let a = c2.random_element_of_degree(1, &mut rng).unwrap();
            let g = c2.random_element_of_degree(2, &mut rng).unwrap();
            let Ok(rep) = verify_linkage_commutes(amb, &x.line, &c2, &b, &f, &a, &g) else { continue };
            prop_assert!(rep.holds(), "{} vs {}", rep.c_prime, rep.candidate);
            prop_assert_eq!(rep.deg_c + rep.deg_c_prime, 2 * 2 * 3);
            done = true;
            break;
        }
        prop_assert!(done, "no valid instance for seed {}", seed);
    }
}
