//! Fixed inputs shared by the benchmarks, so timings compare across runs.

use qhyper::{parse_matrix, parse_ratx, Matrix, PolyX, RatX};

fn ratx(s: &str) -> RatX {
    parse_ratx(s).expect("fixture parses")
}

fn poly(s: &str) -> PolyX {
    ratx(s).numer().clone()
}

/// `f(qx) - f(x)` for a mid-sized `f` with two pole orbits.
pub fn telescopable() -> RatX {
    let f = ratx("(x^2 + q*x - 2)/((x - q^2)^2*(q*x + 3)) + x/(x^2 - q)");
    &f.sigma_q() - &f
}

/// Same poles, plus a term that breaks telescoping.
pub fn obstructed() -> RatX {
    &telescopable() + &ratx("1/(x - 5)")
}

/// `a = q^2 x^-1 g(qx)/g(x)` with a degree-four `g`.
pub fn rank1_input() -> RatX {
    let g = ratx("(x - 1)*(x + q^3)*(x^2 - 2*q)/((x - 7)*(q*x + 1))");
    (&ratx("q^2/x") * &g.sigma_q()).checked_div(&g).expect("g is nonzero")
}

/// Products whose roots share q-orbits at several shifts.
pub fn dispersion_pair() -> (PolyX, PolyX) {
    (
        poly("(x - 1)*(x - q^3)*(x + 2*q)*(x^2 - q)*(x - 3)"),
        poly("(x - q)*(x + 2*q^-4)*(x^2 - q^5)*(x - 3*q^2)"),
    )
}

pub fn gcd_pair() -> (PolyX, PolyX) {
    let common = poly("(x - q)*(q^2*x^2 + x - 1)");
    (
        &common * &poly("(x^3 - q^4*x + 2)*(x + q)"),
        &common * &poly("(q*x^2 - 3)*(x - q^3)^2"),
    )
}

pub fn jet_system() -> Matrix<RatX> {
    parse_matrix("1, x/(x - q); q*x, 2").expect("fixture parses")
}
