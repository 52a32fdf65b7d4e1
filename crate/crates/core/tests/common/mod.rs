//! Seeded generators shared by the property tests and the acceptance run.
#![allow(dead_code)]

use qhyper::ellring::{EllElem, EllRing, EllVar};
use qhyper::{PolyX, QRat, RatX, Ring};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `c q^a` with a small rational `c`.
pub fn small_qrat(rng: &mut impl Rng) -> QRat {
    let c = *[1, -1, 2, -2, 3].choose(rng).unwrap();
    let d = *[1, 1, 2].choose(rng).unwrap();
    &QRat::from_ratio(c, d) * &QRat::q_pow(rng.gen_range(-2..=2))
}

/// A nonzero root: `c q^a` or `(q + c) q^a`.
pub fn root(rng: &mut impl Rng) -> QRat {
    let a = QRat::q_pow(rng.gen_range(-2..=2));
    if rng.gen_bool(0.7) {
        let c = *[1, -1, 2, 3, -3].choose(rng).unwrap();
        &QRat::from_int(c) * &a
    } else {
        let c = *[1, 2, -2].choose(rng).unwrap();
        &(&QRat::q() + &QRat::from_int(c)) * &a
    }
}

pub fn poly(rng: &mut impl Rng, max_deg: usize) -> PolyX {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs: Vec<QRat> = (0..=deg)
        .map(|_| if rng.gen_bool(0.3) { QRat::zero() } else { small_qrat(rng) })
        .collect();
    PolyX::from_coeffs(coeffs)
}

/// A random element of Q(q)(x), possibly zero.
pub fn ratx(rng: &mut impl Rng) -> RatX {
    let num = poly(rng, 2);
    let mut den = PolyX::one();
    for _ in 0..rng.gen_range(0..=2) {
        den = &den * &PolyX::linear(if rng.gen_bool(0.2) { QRat::zero() } else { root(rng) });
    }
    RatX::new(num, den)
}

pub fn nonzero_ratx(rng: &mut impl Rng) -> RatX {
    loop {
        let r = ratx(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// A polynomial in `l`, `e0`, `d0`, `d1` of low degree over Q(q)(x).
pub fn ell_elem(rng: &mut impl Rng) -> EllElem {
    let vars = [EllVar::Ell, EllVar::e(0), EllVar::d(0), EllVar::d(1)];
    let mut acc = EllElem::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut m = EllElem::constant(ratx(rng));
        for _ in 0..rng.gen_range(0..=2) {
            m = &m * &EllElem::var(*vars.choose(rng).unwrap());
        }
        acc = acc + m;
    }
    acc
}

pub fn ring() -> EllRing {
    EllRing::default()
}

/// `g = prod (x - beta_i)^(+-1)` with at most three factors and roots prime to `x`.
pub fn rand_g(rng: &mut impl Rng) -> RatX {
    let mut g = RatX::one();
    for _ in 0..rng.gen_range(0..=3) {
        let f = RatX::from_poly(PolyX::linear(root(rng)));
        if rng.gen_bool(0.5) {
            g = &g * &f;
        } else {
            g = g.checked_div(&f).unwrap();
        }
    }
    g
}

/// A rational function with zero constant term: Laurent part plus poles of order <= 2.
pub fn telescopable_f(rng: &mut impl Rng) -> RatX {
    let mut f = RatX::zero();
    for _ in 0..rng.gen_range(0..=2) {
        let n = *[-2, -1, 1, 2].choose(rng).unwrap();
        f = f + RatX::x_pow(n).scale(&small_qrat(rng));
    }
    for _ in 0..rng.gen_range(1..=2) {
        let m = rng.gen_range(1..=2);
        let den = PolyX::linear(root(rng)).pow_u(m);
        f = f + RatX::new(PolyX::constant(small_qrat(rng)), den);
    }
    f
}
