//! Sparse multivariate polynomials over a coefficient ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::ring::Ring;

/// A monomial: sorted `(variable, exponent)` pairs with positive exponents.
pub type Monomial<V> = Vec<(V, u32)>;

/// Trait bound shorthand for variable types.
pub trait Var: Clone + Ord + fmt::Debug {}
impl<T: Clone + Ord + fmt::Debug> Var for T {}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly<V: Var, C> {
    terms: BTreeMap<Monomial<V>, C>,
}

fn mono_mul<V: Var>(a: &[(V, u32)], b: &[(V, u32)]) -> Monomial<V> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0.clone(), a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl<V: Var, C: Ring> MPoly<V, C> {
    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MPoly { terms }
    }

    pub fn var(v: V) -> Self {
        Self::monomial(C::one(), vec![(v, 1)])
    }

    pub fn var_pow(v: V, e: u32) -> Self {
        if e == 0 {
            return Self::constant(C::one());
        }
        Self::monomial(C::one(), vec![(v, e)])
    }

    /// `c * m`; `m` is sorted and merged here, so callers may pass any order.
    pub fn monomial(c: C, m: Monomial<V>) -> Self {
        let mut p = Self::constant(C::zero());
        p.add_term(normalize_mono(m), c);
        p
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial<V>, C)>) -> Self {
        let mut p = Self::constant(C::zero());
        for (m, c) in iter {
            p.add_term(normalize_mono(m), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial<V>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<V>, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial<V>) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// The coefficient when the polynomial is a constant.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> Vec<V> {
        let mut vs: Vec<V> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn degree_in(&self, v: &V) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().find(|(w, _)| w == v).map_or(0, |(_, e)| *e))
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_sorted(self.terms.iter().map(|(m, a)| (m.clone(), c.mul(a))))
    }

    fn from_sorted(iter: impl Iterator<Item = (Monomial<V>, C)>) -> Self {
        MPoly {
            terms: iter.filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MPoly<V, D> {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Splits by the exponent of `v`: `self = sum_k out[k] * v^k`.
    pub fn collect_in(&self, v: &V) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.iter().find(|(w, _)| w == v).map_or(0, |(_, e)| *e);
            let rest: Monomial<V> = m.iter().filter(|(w, _)| w != v).cloned().collect();
            out.entry(e)
                .or_insert_with(|| Self::constant(C::zero()))
                .add_term(rest, c.clone());
        }
        out
    }

    /// Ring homomorphism determined by images of coefficients and variables.
    pub fn eval_hom<W: Var, D: Ring, E>(
        &self,
        coeff_map: impl Fn(&C) -> MPoly<W, D>,
        mut var_map: impl FnMut(&V) -> Result<MPoly<W, D>, E>,
    ) -> Result<MPoly<W, D>, E> {
        let mut cache: BTreeMap<(V, u32), MPoly<W, D>> = BTreeMap::new();
        let mut images: BTreeMap<V, MPoly<W, D>> = BTreeMap::new();
        let mut acc = MPoly::<W, D>::zero();
        for (m, c) in &self.terms {
            let mut t = coeff_map(c);
            for (v, e) in m {
                if !cache.contains_key(&(v.clone(), *e)) {
                    if !images.contains_key(v) {
                        images.insert(v.clone(), var_map(v)?);
                    }
                    let p = images[v].pow_u(*e);
                    cache.insert((v.clone(), *e), p);
                }
                t = t.mul(&cache[&(v.clone(), *e)]);
                if t.is_zero() {
                    break;
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Applies the derivation given by its values on coefficients and variables.
    pub fn derive<E>(
        &self,
        coeff_der: impl Fn(&C) -> Self,
        mut var_der: impl FnMut(&V) -> Result<Self, E>,
    ) -> Result<Self, E> {
        let mut images: BTreeMap<V, Self> = BTreeMap::new();
        let mut acc = Self::zero();
        for (m, c) in &self.terms {
            let mono = Self::monomial(C::one(), m.clone());
            acc = acc.add(&coeff_der(c).mul(&mono));
            for (idx, (v, e)) in m.iter().enumerate() {
                if !images.contains_key(v) {
                    images.insert(v.clone(), var_der(v)?);
                }
                let dv = &images[v];
                if dv.is_zero() {
                    continue;
                }
                // e * v^(e-1) * rest
                let mut rest = m.clone();
                if *e == 1 {
                    rest.remove(idx);
                } else {
                    rest[idx].1 -= 1;
                }
                let factor = Self::monomial(c.mul(&C::from_i64(*e as i64)), rest);
                acc = acc.add(&factor.mul(dv));
            }
        }
        Ok(acc)
    }

    /// Substitutes `v := value`, keeping every other variable.
    pub fn substitute(&self, v: &V, value: &Self) -> Self {
        let r: Result<Self, ()> = self.eval_hom(
            |c| Self::constant(c.clone()),
            |w| Ok(if w == v { value.clone() } else { Self::var(w.clone()) }),
        );
        r.unwrap()
    }
}

fn normalize_mono<V: Var>(mut m: Monomial<V>) -> Monomial<V> {
    m.retain(|(_, e)| *e > 0);
    m.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Monomial<V> = Vec::with_capacity(m.len());
    for (v, e) in m {
        match out.last_mut() {
            Some((w, f)) if *w == v => *f += e,
            _ => out.push((v, e)),
        }
    }
    out
}

impl<V: Var, C: Ring> Ring for MPoly<V, C> {
    fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    fn one() -> Self {
        Self::constant(C::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let (big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca.mul(cb));
            }
        }
        out
    }

    fn neg(&self) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    fn from_i64(n: i64) -> Self {
        Self::constant(C::from_i64(n))
    }
}

impl<V: Var, C: Ring> Default for MPoly<V, C> {
    fn default() -> Self {
        Ring::zero()
    }
}

macro_rules! impl_mpoly_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<V: Var, C: Ring> std::ops::$tr<&MPoly<V, C>> for &MPoly<V, C> {
            type Output = MPoly<V, C>;
            fn $m(self, rhs: &MPoly<V, C>) -> MPoly<V, C> {
                Ring::$m(self, rhs)
            }
        }
        impl<V: Var, C: Ring> std::ops::$tr for MPoly<V, C> {
            type Output = MPoly<V, C>;
            fn $m(self, rhs: MPoly<V, C>) -> MPoly<V, C> {
                Ring::$m(&self, &rhs)
            }
        }
    )*};
}
impl_mpoly_ops!(Add add, Sub sub, Mul mul);

impl<V: Var, C: Ring> std::ops::Neg for &MPoly<V, C> {
    type Output = MPoly<V, C>;
    fn neg(self) -> MPoly<V, C> {
        Ring::neg(self)
    }
}

impl<V: Var, C: Ring> std::ops::Neg for MPoly<V, C> {
    type Output = MPoly<V, C>;
    fn neg(self) -> MPoly<V, C> {
        Ring::neg(&self)
    }
}

/// Wraps a printed coefficient in parentheses when it is a sum or a quotient.
fn coeff_atom(s: &str) -> String {
    let body = s.strip_prefix('-').unwrap_or(s);
    if body.contains(" + ") || body.contains(" - ") || body.contains('/') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

impl<V: Var + fmt::Display, C: Ring + fmt::Display> fmt::Display for MPoly<V, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first reads more naturally
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| {
            let da: u32 = a.0.iter().map(|(_, e)| e).sum();
            let db: u32 = b.0.iter().map(|(_, e)| e).sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (idx, (m, c)) in ts.into_iter().enumerate() {
            let cs = c.to_string();
            let (neg, cs) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(" + ") && !rest.contains(" - ") => (true, rest.to_string()),
                _ => (false, cs),
            };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono: Vec<String> = m
                .iter()
                .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            if m.is_empty() {
                write!(f, "{cs}")?;
            } else if cs == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff_atom(&cs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<V: Var, C: Ring> fmt::Debug for MPoly<V, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QRat;

    type P = MPoly<&'static str, QRat>;

    #[test]
    fn product_and_display() {
        let a = P::var("a");
        let b = P::var("b");
        let s = &a + &b;
        let sq = &s * &s;
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.coeff(&vec![("a", 1), ("b", 1)]), QRat::from_int(2));
        assert_eq!((&s - &s).to_string(), "0");
    }

    #[test]
    fn derivation_is_leibniz() {
        // d/da on a^3 b = 3 a^2 b
        let p = P::monomial(QRat::one(), vec![("a", 3), ("b", 1)]);
        let d: Result<P, ()> = p.derive(
            |_| P::zero(),
            |v| Ok(if *v == "a" { P::one() } else { P::zero() }),
        );
        let expect = P::monomial(QRat::from_int(3), vec![("a", 2), ("b", 1)]);
        assert_eq!(d.unwrap(), expect);
    }

    #[test]
    fn substitution() {
        let p = &P::var("a") * &P::var("a");
        let r = p.substitute(&"a", &(P::var("b") + P::one()));
        let b = P::var("b");
        assert_eq!(r, &(&b * &b) + &(&b.scale(&QRat::from_int(2)) + &P::one()));
    }
}
