#![allow(dead_code)]

use liaison_core::liaison::Ambient;
use liaison_core::parse::parse_polynomial;
use liaison_core::quadric::{random_form_in, AmbientQuadric};
use liaison_core::resolution::{default_rao_window, minimal_free_resolution, rao_dimensions, RaoTable};
use liaison_core::{Ideal, Polynomial, Ring};
use rand::Rng;

pub fn ring() -> Ring {
    Ring::projective(4)
}

pub fn p(r: &Ring, s: &str) -> Polynomial {
    parse_polynomial(r, s).unwrap()
}

pub fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|s| p(r, s)).collect()).unwrap()
}

pub fn smooth() -> AmbientQuadric {
    AmbientQuadric::smooth(&ring()).unwrap()
}

pub fn singular() -> AmbientQuadric {
    AmbientQuadric::singular(&ring()).unwrap()
}

pub fn on_x(amb: &Ambient, gens: &[&str]) -> Ideal {
    amb.on_x(&ideal(amb.ring(), gens)).unwrap()
}

/// A plane section of `X` by a random plane.
pub fn random_conic(x: &AmbientQuadric, rng: &mut impl Rng) -> Ideal {
    let r = x.ring();
    loop {
        let l1 = random_form_in(r, &[0, 1, 2, 3, 4], 1, rng);
        let l2 = random_form_in(r, &[0, 1, 2, 3, 4], 1, rng);
        let c = Ideal::new(r, vec![l1, l2, x.q.clone()]).unwrap();
        if c.degree() == 2 && c.hilbert().dimension() == Some(2) {
            return c.assume_saturated();
        }
    }
}

pub fn rao(i: &Ideal) -> RaoTable {
    let res = minimal_free_resolution(i).unwrap();
    rao_dimensions(i, &res, default_rao_window(&res)).unwrap()
}
