//! Sparse univariate polynomials in `q` with rational coefficients.
//!
//! Theta-type coefficients are q-powers of high degree (`q^{-n(n-1)/2}`), so the
//! representation is sparse: a sorted list of `(exponent, coefficient)` pairs
//! with no zero coefficients.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    terms: Vec<(u32, BigRational)>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            QPoly { terms: vec![(0, c)] }
        }
    }

    pub fn monomial(c: BigRational, exp: u32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            QPoly { terms: vec![(exp, c)] }
        }
    }

    /// `q^k`.
    pub fn q_pow(k: u32) -> Self {
        Self::monomial(BigRational::one(), k)
    }

    /// Builds from `(exponent, coefficient)` pairs in any order; duplicates are summed.
    pub fn from_terms<I: IntoIterator<Item = (u32, BigRational)>>(iter: I) -> Self {
        let mut terms: Vec<(u32, BigRational)> = iter.into_iter().collect();
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(u32, BigRational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        QPoly { terms: out }
    }

    /// Dense coefficient list, lowest degree first.
    pub fn from_dense(coeffs: &[BigRational]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i as u32, c.clone())),
        )
    }

    pub fn terms(&self) -> &[(u32, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == 0)
    }

    /// A single term `c q^k`.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|t| t.0)
    }

    /// Exponent of the lowest nonzero term (q-adic valuation).
    pub fn valuation(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.terms
            .last()
            .map(|t| t.1.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, exp: u32) -> BigRational {
        match self.terms.binary_search_by_key(&exp, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift_up(&self, k: u32) -> Self {
        QPoly {
            terms: self.terms.iter().map(|(e, a)| (e + k, a.clone())).collect(),
        }
    }

    /// Divides by `q^k`; every exponent must be at least `k`.
    pub fn shift_down(&self, k: u32) -> Self {
        QPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| {
                    debug_assert!(*e >= k);
                    (e - k, a.clone())
                })
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        QPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, -a)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].1 + &b[j].1;
                    if !s.is_zero() {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        QPoly { terms: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.scale(c).shift_up(*e);
        }
        if self.terms.len() == 1 {
            return other.mul(self);
        }
        let mut acc: std::collections::BTreeMap<u32, BigRational> = Default::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                *acc.entry(ea + eb).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        QPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "QPoly division by zero");
        let dd = divisor.degree().unwrap();
        let dlc = divisor.leading_coeff();
        if divisor.terms.len() == 1 {
            // monomial divisor: split terms by exponent
            let (q, r): (Vec<_>, Vec<_>) = self.terms.iter().cloned().partition(|t| t.0 >= dd);
            let q = QPoly {
                terms: q.into_iter().map(|(e, c)| (e - dd, c / &dlc)).collect(),
            };
            return (q, QPoly { terms: r });
        }
        let mut rem = self.clone();
        let mut quot_terms = Vec::new();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading_coeff() / &dlc;
            let e = rd - dd;
            rem = rem.sub(&divisor.scale(&c).shift_up(e));
            quot_terms.push((e, c));
        }
        quot_terms.reverse();
        (QPoly { terms: quot_terms }, rem)
    }

    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact QPoly division");
        q
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading_coeff();
        self.scale(&(BigRational::one() / lc))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.make_monic();
        }
        if other.is_zero() {
            return self.make_monic();
        }
        // common power of q first: keeps the Euclidean loop on the reduced parts
        let v = self.valuation().unwrap().min(other.valuation().unwrap());
        let a = self.shift_down(self.valuation().unwrap());
        let b = other.shift_down(other.valuation().unwrap());
        let core = if a.is_constant() || b.is_constant() || coprime_mod_p(&a, &b) {
            Self::one()
        } else {
            let (mut a, mut b) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
            while !b.is_zero() {
                let (_, r) = a.div_rem(&b);
                a = b;
                b = r.make_monic();
            }
            a.make_monic()
        };
        core.shift_up(v)
    }

    /// `q d/dq`: multiplies the coefficient of `q^k` by `k`.
    pub fn delta_q(&self) -> Self {
        QPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| *e != 0)
                .map(|(e, c)| (*e, c * BigRational::from_integer(BigInt::from(*e))))
                .collect(),
        }
    }

    pub fn eval(&self, q: &BigRational) -> BigRational {
        // Horner over the sparse terms, highest exponent first
        let mut acc = BigRational::zero();
        let mut prev = None;
        for (e, c) in self.terms.iter().rev() {
            if let Some(p) = prev {
                acc *= num_traits::pow::pow(q.clone(), (p - e) as usize);
            }
            acc += c;
            prev = Some(*e);
        }
        if let Some(p) = prev {
            acc *= num_traits::pow::pow(q.clone(), p as usize);
        }
        acc
    }

    /// Value at `t` modulo the screening prime; `None` if a denominator
    /// vanishes there.
    pub(super) fn eval_mod_p(&self, t: u64) -> Option<u64> {
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let d = residue(c.denom());
            if d == 0 {
                return None;
            }
            let v = residue(c.numer()) * pow_mod(d, SCREEN_PRIME - 2) % SCREEN_PRIME;
            acc = (acc + v * pow_mod(t, *e as u64)) % SCREEN_PRIME;
        }
        Some(acc)
    }

    /// Writes the polynomial using `var` as the variable name.
    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let show_coeff = !abs.is_one() || *e == 0;
            if show_coeff {
                if abs.is_integer() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "{}/{}", abs.numer(), abs.denom())?;
                }
            }
            if *e > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "{var}")?;
                if *e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "q")
    }
}

pub(super) const SCREEN_PRIME: u64 = 2_147_483_647;

pub(super) fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % SCREEN_PRIME;
        }
        b = b * b % SCREEN_PRIME;
        e >>= 1;
    }
    acc
}

fn residue(n: &BigInt) -> u64 {
    let r = n % BigInt::from(SCREEN_PRIME);
    let r = if r.is_negative() { r + BigInt::from(SCREEN_PRIME) } else { r };
    r.try_into().expect("residue fits")
}

/// Dense image mod the screening prime; `None` if a denominator vanishes there.
fn image_mod_p(p: &QPoly) -> Option<Vec<u64>> {
    let mut out = vec![0u64; p.degree()? as usize + 1];
    for (e, c) in &p.terms {
        let d = residue(c.denom());
        if d == 0 {
            return None;
        }
        out[*e as usize] = residue(c.numer()) * pow_mod(d, SCREEN_PRIME - 2) % SCREEN_PRIME;
    }
    Some(out)
}

/// True when the reductions mod a prime keep both degrees and are coprime,
/// which proves coprimality over Q.
fn coprime_mod_p(a: &QPoly, b: &QPoly) -> bool {
    let (Some(x), Some(y)) = (image_mod_p(a), image_mod_p(b)) else {
        return false;
    };
    if *x.last().unwrap() == 0 || *y.last().unwrap() == 0 {
        return false;
    }
    gcd_degree_mod_p(x, y) == 0
}

/// Degree of the gcd over F_p of two dense polynomials with nonzero leading
/// coefficients.
pub(super) fn gcd_degree_mod_p(mut x: Vec<u64>, mut y: Vec<u64>) -> usize {
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let inv = pow_mod(*y.last().unwrap(), SCREEN_PRIME - 2);
        while x.len() >= y.len() {
            let c = x.last().unwrap() * inv % SCREEN_PRIME;
            let shift = x.len() - y.len();
            for (i, yc) in y.iter().enumerate() {
                let sub = c * yc % SCREEN_PRIME;
                x[shift + i] = (x[shift + i] + SCREEN_PRIME - sub) % SCREEN_PRIME;
            }
            x.pop();
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len() - 1
}
