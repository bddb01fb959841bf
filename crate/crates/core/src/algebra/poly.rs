//! Sparse multivariate polynomials with exact rational coefficients.

use super::rational::{self, Rational};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("cyclic substitution: variable {0} is bound and also occurs in a replacement")]
    CyclicBinding(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("malformed polynomial JSON: {0}")]
    Malformed(String),
}

/// Index of a variable in a [`VarArena`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(pub u32);

/// Names for variable indices. Polynomials only carry indices; the arena is
/// consulted when printing or (de)serializing.
#[derive(Clone, Debug, Default)]
pub struct VarArena {
    names: Vec<String>,
    lookup: HashMap<String, Var>,
}

impl VarArena {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> Var {
        if let Some(&v) = self.lookup.get(name) {
            return v;
        }
        let v = Var(self.names.len() as u32);
        self.names.push(name.to_string());
        self.lookup.insert(name.to_string(), v);
        v
    }

    pub fn get(&self, name: &str) -> Option<Var> {
        self.lookup.get(name).copied()
    }

    pub fn name(&self, v: Var) -> &str {
        self.names.get(v.0 as usize).map(String::as_str).unwrap_or("?")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// A power product, stored as `(variable, exponent)` pairs sorted by
/// variable with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v.0, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *acc.entry(v.0).or_default() += e;
            }
        }
        Monomial(acc.into_iter().collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match self.0.binary_search_by_key(&v.0, |&(x, _)| x) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().map(|&(v, e)| (Var(v), e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Removes `v` and returns its former exponent.
    fn split_off(&self, v: Var) -> (Monomial, u32) {
        let mut rest = self.0.clone();
        match rest.binary_search_by_key(&v.0, |&(x, _)| x) {
            Ok(i) => {
                let e = rest.remove(i).1;
                (Monomial(rest), e)
            }
            Err(_) => (Monomial(rest), 0),
        }
    }

    pub fn display<'a>(&'a self, arena: &'a VarArena) -> impl fmt::Display + 'a {
        MonomialDisplay { m: self, arena }
    }

    pub fn parse(s: &str, arena: &VarArena) -> Result<Monomial, PolyError> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Monomial::one());
        }
        let mut pairs = Vec::new();
        for factor in s.split('*') {
            let (name, exp) = match factor.split_once('^') {
                Some((name, e)) => (
                    name.trim(),
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| PolyError::Malformed(format!("bad exponent in {factor:?}")))?,
                ),
                None => (factor.trim(), 1),
            };
            let v = arena
                .get(name)
                .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
            pairs.push((v, exp));
        }
        Ok(Monomial::from_pairs(pairs))
    }
}

/// Graded lexicographic, with lower variable indices ranking higher.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.total_degree().cmp(&other.total_degree());
        if d != Ordering::Equal {
            return d;
        }
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a.0 != b.0 {
                // the monomial containing the earlier variable is larger
                return b.0.cmp(&a.0);
            }
            if a.1 != b.1 {
                return a.1.cmp(&b.1);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct MonomialDisplay<'a> {
    m: &'a Monomial,
    arena: &'a VarArena,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.m.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", self.arena.name(v))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Finite sum of rational multiples of monomials. Zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

/// Vanishing order of a polynomial along a variable; the zero polynomial
/// vanishes to infinite order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Polynomial {
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { terms }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rational::rat(c))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant term, or `None` if the polynomial is non-constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// True when every term has the same total degree in `vars`.
    pub fn degree_in(&self, vars: &[Var]) -> Option<(u32, u32)> {
        let degs = self
            .terms
            .keys()
            .map(|m| vars.iter().map(|&v| m.exponent(v)).sum::<u32>());
        let mut lo = None;
        let mut hi = None;
        for d in degs {
            lo = Some(lo.map_or(d, |l: u32| l.min(d)));
            hi = Some(hi.map_or(d, |h: u32| h.max(d)));
        }
        lo.zip(hi)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Simultaneous substitution of the bound variables.
    pub fn substitute(&self, bindings: &BTreeMap<Var, Polynomial>) -> Result<Polynomial, PolyError> {
        for v in bindings.keys() {
            for q in bindings.values() {
                if q.terms.keys().any(|m| m.exponent(*v) > 0) {
                    return Err(PolyError::CyclicBinding(format!("#{}", v.0)));
                }
            }
        }
        Ok(self.substitute_unchecked(bindings))
    }

    fn substitute_unchecked(&self, bindings: &BTreeMap<Var, Polynomial>) -> Polynomial {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut powers: HashMap<(u32, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut free = Vec::new();
            let mut factor = Polynomial::constant(c.clone());
            for (v, e) in m.iter() {
                match bindings.get(&v) {
                    Some(q) => {
                        let pw = powers.entry((v.0, e)).or_insert_with(|| q.pow(e));
                        factor = &factor * &*pw;
                    }
                    None => free.push((v, e)),
                }
                if factor.is_zero() {
                    break;
                }
            }
            if factor.is_zero() {
                continue;
            }
            let free = Monomial::from_pairs(free);
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&free), fc);
            }
        }
        out
    }

    /// Substitutes rational constants for variables.
    pub fn evaluate_partial(&self, values: &BTreeMap<Var, Rational>) -> Polynomial {
        let bindings = values
            .iter()
            .map(|(v, r)| (*v, Polynomial::constant(r.clone())))
            .collect();
        self.substitute_unchecked(&bindings)
    }

    /// Minimum exponent of `v` over all terms.
    pub fn order_in(&self, v: Var) -> Order {
        self.terms
            .keys()
            .map(|m| m.exponent(v))
            .min()
            .map_or(Order::Infinite, Order::Finite)
    }

    /// Collects coefficients with respect to `v`: `self = sum_k c_k * v^k`.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(v);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    pub fn display<'a>(&'a self, arena: &'a VarArena) -> impl fmt::Display + 'a {
        PolyDisplay { p: self, arena }
    }

    /// `{"<monomial>": "<rational>"}`.
    pub fn to_json(&self, arena: &VarArena) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                (
                    m.display(arena).to_string(),
                    serde_json::Value::String(rational::to_string(c)),
                )
            })
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json(value: &serde_json::Value, arena: &VarArena) -> Result<Polynomial, PolyError> {
        let obj = value
            .as_object()
            .ok_or_else(|| PolyError::Malformed("expected an object".into()))?;
        let mut p = Polynomial::zero();
        for (k, v) in obj {
            let m = Monomial::parse(k, arena)?;
            let s = v
                .as_str()
                .ok_or_else(|| PolyError::Malformed(format!("coefficient of {k:?} is not a string")))?;
            let c = rational::parse(s).map_err(PolyError::Malformed)?;
            p.add_term(m, c);
        }
        Ok(p)
    }
}

struct PolyDisplay<'a> {
    p: &'a Polynomial,
    arena: &'a VarArena,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.p.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.display(self.arena))?;
            } else {
                write!(f, "{abs}*{}", m.display(self.arena))?;
            }
        }
        Ok(())
    }
}

impl Zero for Polynomial {
    fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Polynomial {
    fn one() -> Self {
        Polynomial::constant(Rational::one())
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Polynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn setup() -> (VarArena, Polynomial, Polynomial) {
        let mut a = VarArena::new();
        let x = Polynomial::var(a.intern("x"));
        let y = Polynomial::var(a.intern("y"));
        (a, x, y)
    }

    #[test]
    fn difference_of_squares() {
        let (a, x, y) = setup();
        let p = (&x + &y) * (&x - &y);
        assert_eq!(p, &(&x * &x) - &(&y * &y));
        assert_eq!(p.display(&a).to_string(), "x^2 - y^2");
    }

    #[test]
    fn annihilator() {
        let (_, x, y) = setup();
        assert!((&x + &y).mul(Polynomial::zero()).is_zero());
    }

    #[test]
    fn squaring_a_binomial() {
        let mut a = VarArena::new();
        let x1 = Polynomial::var(a.intern("x1"));
        let x2 = Polynomial::var(a.intern("x2"));
        let cx1 = Polynomial::var(a.intern("X1"));
        let cx2 = Polynomial::var(a.intern("X2"));
        let b = &(&x1 * &cx2) - &(&x2 * &cx1);
        let sq = &b * &b;
        let expected = &(&(&(&x1 * &x1) * &(&cx2 * &cx2)) - &(&(&x1 * &x2) * &(&cx1 * &cx2)).scale(&rat(2)))
            + &(&(&x2 * &x2) * &(&cx1 * &cx1));
        assert_eq!(sq, expected);
        assert_eq!(sq.num_terms(), 3);
    }

    #[test]
    fn substitution_examples() {
        let mut a = VarArena::new();
        let xv = a.intern("x");
        let yv = a.intern("y");
        let x = Polynomial::var(xv);
        let y = Polynomial::var(yv);
        let b: BTreeMap<_, _> = [(xv, &y + &Polynomial::one())].into();
        let got = (&x * &x).substitute(&b).unwrap();
        assert_eq!(got, &(&(&y * &y) + &y.scale(&rat(2))) + &Polynomial::one());
        assert_eq!(x.substitute(&BTreeMap::new()).unwrap(), x);

        // x_{12} := X1 x2 - X2 x1 at X1 = X2 = 1
        let x1 = a.intern("x1");
        let x2 = a.intern("x2");
        let c1 = a.intern("X1");
        let c2 = a.intern("X2");
        let x12 = &(&Polynomial::var(c1) * &Polynomial::var(x2)) - &(&Polynomial::var(c2) * &Polynomial::var(x1));
        let b: BTreeMap<_, _> = [(c1, Polynomial::one()), (c2, Polynomial::one())].into();
        assert_eq!(x12.substitute(&b).unwrap(), &Polynomial::var(x2) - &Polynomial::var(x1));
    }

    #[test]
    fn cyclic_binding_rejected() {
        let mut a = VarArena::new();
        let xv = a.intern("x");
        let yv = a.intern("y");
        let b: BTreeMap<_, _> = [(xv, Polynomial::var(yv)), (yv, Polynomial::var(xv))].into();
        assert!(matches!(
            Polynomial::var(xv).substitute(&b),
            Err(PolyError::CyclicBinding(_))
        ));
        let b: BTreeMap<_, _> = [(xv, &Polynomial::var(xv) + &Polynomial::one())].into();
        assert!(Polynomial::var(xv).substitute(&b).is_err());
    }

    #[test]
    fn epsilon_orders() {
        let mut a = VarArena::new();
        let e = a.intern("eps");
        let xv = a.intern("x");
        let eps = Polynomial::var(e);
        let x = Polynomial::var(xv);
        let p = &(&(&eps * &eps) * &x) + &eps.pow(3);
        assert_eq!(p.order_in(e), Order::Finite(2));
        assert_eq!((&x + &eps).order_in(e), Order::Finite(0));
        assert_eq!(Polynomial::zero().order_in(e), Order::Infinite);
    }

    #[test]
    fn json_round_trip() {
        let mut a = VarArena::new();
        let x1 = Polynomial::var(a.intern("x1"));
        let cx2 = Polynomial::var(a.intern("X2"));
        let p = &(&(&x1 * &x1) * &cx2).scale(&crate::algebra::rational::ratio(-3, 2)) + &Polynomial::int(4);
        let j = p.to_json(&a);
        assert_eq!(j["x1^2*X2"], "-3/2");
        assert_eq!(j["1"], "4");
        assert_eq!(Polynomial::from_json(&j, &a).unwrap(), p);
        let bad = serde_json::json!({"w": "1"});
        assert!(Polynomial::from_json(&bad, &a).is_err());
    }

    #[test]
    fn graded_lex_order() {
        let mut a = VarArena::new();
        let x = a.intern("x");
        let y = a.intern("y");
        let xy = Monomial::from_pairs([(x, 1), (y, 1)]);
        let y2 = Monomial::from_pairs([(y, 2)]);
        let x2 = Monomial::from_pairs([(x, 2)]);
        let x1 = Monomial::var(x);
        assert!(x2 > xy && xy > y2 && y2 > x1 && x1 > Monomial::one());
    }
}
