//! Sparse multivariate polynomials with exact coefficients.
//!
//! Variables are the formal kernel argument `x`, torus parameters, the
//! coloured shuffle variables `z[i,a]` and auxiliary shift variables `y[k]`.
//! Terms are stored in graded-lex order. Division uses a block order in which
//! every non-parameter variable dominates the parameters, so remainders are
//! linear over the parameter ring whenever the divisor has a parameter-free
//! leading term.

pub mod text;

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use smallvec::SmallVec;

use crate::dimvec::DimVec;
use crate::error::Error;
use crate::scalar::Scalar;

/// Interned parameter name.
#[derive(Clone, Copy)]
pub struct Symbol(&'static str);

fn interner() -> &'static Mutex<HashSet<&'static str>> {
    static INTERNER: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    INTERNER.get_or_init(|| Mutex::new(HashSet::new()))
}

impl Symbol {
    pub fn new(name: &str) -> Symbol {
        let mut set = interner().lock().expect("symbol interner poisoned");
        if let Some(s) = set.get(name) {
            return Symbol(s);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        set.insert(leaked);
        Symbol(leaked)
    }

    pub fn as_str(self) -> &'static str {
        self.0
    }
}

/// The equivariant parameter of the cotangent scaling.
pub fn hbar() -> Symbol {
    Symbol::new("hbar")
}

impl PartialEq for Symbol {
    fn eq(&self, o: &Self) -> bool {
        std::ptr::eq(self.0, o.0) || self.0 == o.0
    }
}
impl Eq for Symbol {}
impl std::hash::Hash for Symbol {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.0.hash(h)
    }
}
impl PartialOrd for Symbol {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Symbol {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.cmp(o.0)
    }
}
impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// A polynomial variable. `vertex` is 0-based, `slot` and `Aux` are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Var {
    X,
    Param(Symbol),
    Z { vertex: u16, slot: u16 },
    Aux(u16),
}

impl Var {
    pub fn z(vertex: usize, slot: usize) -> Var {
        Var::Z { vertex: vertex as u16, slot: slot as u16 }
    }

    pub fn param(name: &str) -> Var {
        Var::Param(Symbol::new(name))
    }

    pub fn is_param(self) -> bool {
        matches!(self, Var::Param(_))
    }

    pub fn is_z(self) -> bool {
        matches!(self, Var::Z { .. })
    }

    pub fn is_aux(self) -> bool {
        matches!(self, Var::Aux(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => f.write_str("x"),
            Var::Param(s) => write!(f, "{s}"),
            Var::Z { vertex, slot } => write!(f, "z[{},{}]", vertex + 1, slot),
            Var::Aux(k) => write!(f, "y[{k}]"),
        }
    }
}

/// Degree with a `-inf` sentinel for the zero polynomial.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    /// Whether `2 * self <= bound`.
    pub fn twice_at_most(self, bound: i64) -> bool {
        match self {
            Degree::NegInfinity => true,
            Degree::Finite(d) => 2 * d as i64 <= bound,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

type Factors = SmallVec<[(Var, u32); 4]>;

/// A monomial: sorted variables with positive exponents.
///
/// Ordered graded-lexicographically with earlier variables more significant.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Factors);

fn lex_cmp(a: &[(Var, u32)], b: &[(Var, u32)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match ea.cmp(eb) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    o => return o,
                },
            },
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| lex_cmp(&self.0, &o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(smallvec::smallvec![(v, e)])
        }
    }

    /// Builds a monomial from unsorted, possibly repeated factors.
    pub fn from_factors<I: IntoIterator<Item = (Var, u32)>>(it: I) -> Self {
        let mut f: Factors = it.into_iter().filter(|p| p.1 > 0).collect();
        f.sort_by_key(|a| a.0);
        let mut out: Factors = SmallVec::with_capacity(f.len());
        for (v, e) in f {
            match out.last_mut() {
                Some((w, x)) if *w == v => *x += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn degree_in(&self, pred: impl Fn(Var) -> bool) -> u32 {
        self.0.iter().filter(|p| pred(p.0)).map(|p| p.1).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|p| p.0 == v).map_or(0, |p| p.1)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out: Factors = SmallVec::with_capacity(a.len() + b.len());
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

    /// `self / d` if `d` divides `self`.
    pub fn div(&self, d: &Monomial) -> Option<Monomial> {
        let mut out: Factors = SmallVec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < d.0.len() && d.0[j].0 == v {
                let f = d.0[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((v, e - f));
                }
                j += 1;
            } else if j < d.0.len() && d.0[j].0 < v {
                return None;
            } else {
                out.push((v, e));
            }
        }
        if j < d.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Splits into the factors satisfying `pred` and the rest.
    pub fn split(&self, pred: impl Fn(Var) -> bool) -> (Monomial, Monomial) {
        let (a, b): (Factors, Factors) = self.0.iter().copied().partition(|p| pred(p.0));
        (Monomial(a), Monomial(b))
    }

    /// Applies a variable renaming.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Monomial {
        Monomial::from_factors(self.0.iter().map(|&(v, e)| (f(v), e)))
    }
}

/// Key of the block order used for division: non-parameter part first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct DivKey {
    main: Monomial,
    params: Monomial,
}

impl DivKey {
    fn new(m: &Monomial) -> Self {
        let (params, main) = m.split(Var::is_param);
        DivKey { main, params }
    }

    fn monomial(&self) -> Monomial {
        self.main.mul(&self.params)
    }
}

/// Returned when a division leaves a nonzero remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonExactDivision<C> {
    pub remainder: Polynomial<C>,
}

impl<C: Scalar> fmt::Display for NonExactDivision<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "division is not exact, remainder {}", self.remainder)
    }
}

impl<C: Scalar> From<NonExactDivision<C>> for Error {
    fn from(e: NonExactDivision<C>) -> Error {
        Error::NonExactDivision(e.remainder.to_string())
    }
}

/// A sparse polynomial over `C`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: fmt::Debug> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c:?})*{m}")?;
        }
        Ok(())
    }
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn from_int(k: i64) -> Self {
        Self::constant(C::from_int(k))
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), C::one())
    }

    pub fn z(vertex: usize, slot: usize) -> Self {
        Self::var(Var::z(vertex, slot))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.clone() * c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Total degree; `-inf` for zero.
    pub fn total_degree(&self) -> Degree {
        self.degree_in(|_| true)
    }

    /// Degree in the variables selected by `pred`; `-inf` for zero.
    pub fn degree_in(&self, pred: impl Fn(Var) -> bool) -> Degree {
        self.terms
            .keys()
            .map(|m| m.degree_in(&pred))
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.factors().iter().map(|p| p.0)).collect()
    }

    pub fn params(&self) -> BTreeSet<Symbol> {
        self.variables()
            .into_iter()
            .filter_map(|v| match v {
                Var::Param(s) => Some(s),
                _ => None,
            })
            .collect()
    }

    pub fn has_params(&self) -> bool {
        self.terms.keys().any(|m| m.factors().iter().any(|p| p.0.is_param()))
    }

    /// Components grouped by the degree in the variables selected by `pred`.
    pub fn components_by(&self, pred: impl Fn(Var) -> bool) -> BTreeMap<u32, Polynomial<C>> {
        let mut out: BTreeMap<u32, Polynomial<C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree_in(&pred))
                .or_insert_with(Self::zero)
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Groups terms by their parameter monomial.
    pub fn split_params(&self) -> BTreeMap<Monomial, Polynomial<C>> {
        let mut out: BTreeMap<Monomial, Polynomial<C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (p, rest) = m.split(Var::is_param);
            out.entry(p).or_insert_with(Self::zero).terms.insert(rest, c.clone());
        }
        out
    }

    /// Applies a variable renaming.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.rename(&f), c.clone());
        }
        out
    }

    /// Substitutes polynomials for the variables where `f` returns `Some`.
    pub fn substitute(&self, f: impl Fn(Var) -> Option<Polynomial<C>>) -> Self {
        let mut images: HashMap<Var, Option<Polynomial<C>>> = HashMap::new();
        let mut powers: HashMap<(Var, u32), Polynomial<C>> = HashMap::new();
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in &self.terms {
            let mut kept: Factors = SmallVec::new();
            let mut part = Self::constant(c.clone());
            for &(v, e) in m.factors() {
                let img = images.entry(v).or_insert_with(|| f(v));
                match img {
                    None => kept.push((v, e)),
                    Some(p) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| p.pow(e));
                        part = &part * &*pw;
                    }
                }
            }
            let kept = Monomial(kept);
            for (n, a) in part.terms {
                let key = n.mul(&kept);
                match acc.get_mut(&key) {
                    Some(x) => *x = x.clone() + a,
                    None => {
                        acc.insert(key, a);
                    }
                }
            }
        }
        Polynomial { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Replaces parameters by the given values; others are kept.
    pub fn specialize(&self, values: &HashMap<Symbol, C>) -> Self {
        self.substitute(|v| match v {
            Var::Param(s) => values.get(&s).map(|c| Self::constant(c.clone())),
            _ => None,
        })
    }

    /// Division with remainder in the block order.
    pub fn div_rem(&self, q: &Polynomial<C>) -> (Polynomial<C>, Polynomial<C>) {
        assert!(!q.is_zero(), "division by the zero polynomial");
        let mut qterms: Vec<(DivKey, C)> = q.terms.iter().map(|(m, c)| (DivKey::new(m), c.clone())).collect();
        qterms.sort_by(|a, b| a.0.cmp(&b.0));
        let (lead_key, lead_c) = qterms.pop().expect("nonzero divisor");
        let lead_m = lead_key.monomial();
        let lead_inv = C::one() / lead_c;
        let tail: Vec<(Monomial, C)> = qterms.into_iter().map(|(k, c)| (k.monomial(), c)).collect();

        let mut work: BTreeMap<DivKey, C> = self.terms.iter().map(|(m, c)| (DivKey::new(m), c.clone())).collect();
        let mut quot = Self::zero();
        let mut rem = Self::zero();
        while let Some((k, c)) = work.pop_last() {
            let m = k.monomial();
            match m.div(&lead_m) {
                Some(t) => {
                    let coef = c * lead_inv.clone();
                    for (qm, qc) in &tail {
                        let key = DivKey::new(&t.mul(qm));
                        let delta = coef.clone() * qc.clone();
                        match work.get_mut(&key) {
                            Some(x) => {
                                let s = x.clone() - delta;
                                if s.is_zero() {
                                    work.remove(&key);
                                } else {
                                    *x = s;
                                }
                            }
                            None => {
                                work.insert(key, -delta);
                            }
                        }
                    }
                    quot.add_term(t, coef);
                }
                None => rem.add_term(m, c),
            }
        }
        (quot, rem)
    }

    /// Remainder of division by `q`.
    pub fn rem(&self, q: &Polynomial<C>) -> Polynomial<C> {
        self.div_rem(q).1
    }

    /// Exact quotient, or the nonzero remainder.
    pub fn exact_div(&self, q: &Polynomial<C>) -> Result<Polynomial<C>, NonExactDivision<C>> {
        let (quot, rem) = self.div_rem(q);
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(NonExactDivision { remainder: rem })
        }
    }

    /// Checks that every `z[i,a]` has `a <= n_i` and no other variables
    /// besides parameters occur.
    pub fn check_z_range(&self, n: &DimVec) -> Result<(), Error> {
        for v in self.variables() {
            match v {
                Var::Param(_) => {}
                Var::Z { vertex, slot } => {
                    let (i, a) = (vertex as usize, slot as u32);
                    if i >= n.len() || a == 0 || a > n[i] {
                        return Err(Error::VariableOutOfRange { var: v.to_string(), n: n.clone() });
                    }
                }
                _ => return Err(Error::VariableOutOfRange { var: v.to_string(), n: n.clone() }),
            }
        }
        Ok(())
    }

    /// Whether the polynomial is invariant under permuting the slots of
    /// each colour.
    pub fn is_color_symmetric(&self, n: &DimVec) -> Result<bool, Error> {
        self.check_z_range(n)?;
        for i in 0..n.len() {
            for a in 1..n[i] as u16 {
                let swapped = self.rename(|v| match v {
                    Var::Z { vertex, slot } if vertex as usize == i && slot == a => Var::Z { vertex, slot: a + 1 },
                    Var::Z { vertex, slot } if vertex as usize == i && slot == a + 1 => Var::Z { vertex, slot: a },
                    w => w,
                });
                if swapped != *self {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl<C: Scalar> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, o: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl<C: Scalar> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, o: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl<C: Scalar> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

impl<C: Scalar, P: Borrow<Polynomial<C>>> AddAssign<P> for Polynomial<C> {
    fn add_assign(&mut self, o: P) {
        for (m, c) in &o.borrow().terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<C: Scalar, P: Borrow<Polynomial<C>>> SubAssign<P> for Polynomial<C> {
    fn sub_assign(&mut self, o: P) {
        for (m, c) in &o.borrow().terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<C: Scalar> Add for Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(mut self, o: Polynomial<C>) -> Polynomial<C> {
        self += o;
        self
    }
}

impl<C: Scalar> Sub for Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(mut self, o: Polynomial<C>) -> Polynomial<C> {
        self -= o;
        self
    }
}

impl<C: Scalar> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, o: &Polynomial<C>) -> Polynomial<C> {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return o.mul_term(m, c);
        }
        if o.terms.len() == 1 {
            let (m, c) = o.terms.iter().next().unwrap();
            return self.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (m, a) in &self.terms {
            for (n, b) in &o.terms {
                let key = m.mul(n);
                let v = a.clone() * b.clone();
                match acc.get_mut(&key) {
                    Some(x) => *x = x.clone() + v,
                    None => {
                        acc.insert(key, v);
                    }
                }
            }
        }
        Polynomial { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl<C: Scalar> Mul for Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, o: Polynomial<C>) -> Polynomial<C> {
        &self * &o
    }
}

impl<C: Scalar> std::iter::Sum for Polynomial<C> {
    fn sum<I: Iterator<Item = Polynomial<C>>>(it: I) -> Self {
        let mut acc = Polynomial::zero();
        for p in it {
            acc += p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    type P = Polynomial<Rational>;

    fn z(i: usize, a: usize) -> P {
        P::z(i, a)
    }

    fn c(k: i64) -> P {
        P::from_int(k)
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let z1 = Monomial::var(Var::z(0, 1), 1);
        let z2 = Monomial::var(Var::z(0, 2), 1);
        let z2sq = Monomial::var(Var::z(0, 2), 2);
        assert!(z1 > z2);
        assert!(z2sq > z1);
        assert!(z1.mul(&z2) < z1.mul(&z1));
        assert!(Monomial::one() < z2);
    }

    #[test]
    fn monomial_division() {
        let a = Monomial::from_factors([(Var::z(0, 1), 2), (Var::z(0, 2), 1)]);
        let b = Monomial::from_factors([(Var::z(0, 1), 1)]);
        assert_eq!(a.div(&b), Some(Monomial::from_factors([(Var::z(0, 1), 1), (Var::z(0, 2), 1)])));
        assert_eq!(b.div(&a), None);
        let y = Monomial::var(Var::Aux(1), 1);
        assert_eq!(a.div(&y), None);
    }

    #[test]
    fn vandermonde_division_is_exact() {
        let d = &z(0, 1) - &z(0, 2);
        let p = &(&z(0, 1) * &z(0, 1)) - &(&z(0, 2) * &z(0, 2));
        assert_eq!(p.exact_div(&d).unwrap(), &z(0, 1) + &z(0, 2));
        let err = z(0, 1).exact_div(&d).unwrap_err();
        assert!(!err.remainder.is_zero());
    }

    #[test]
    fn remainder_is_linear_over_parameters() {
        let u = P::var(Var::param("u"));
        let q = &(&z(0, 1) - &z(0, 2)) - &u;
        let e = &z(0, 1) * &z(0, 1);
        let r1 = e.rem(&q);
        let r2 = (&u * &e).rem(&q);
        assert_eq!(r2, &u * &r1);
        assert!(!r1.variables().contains(&Var::z(0, 1)));
    }

    #[test]
    fn substitute_and_degree() {
        let p = &(&z(0, 1) * &z(0, 1)) + &c(3);
        let s = p.substitute(|v| (v == Var::z(0, 1)).then(|| &P::var(Var::Aux(1)) + &z(0, 1)));
        assert_eq!(s.degree_in(Var::is_aux), Degree::Finite(2));
        assert_eq!(P::zero().degree_in(Var::is_aux), Degree::NegInfinity);
        assert!(Degree::NegInfinity.twice_at_most(-5));
    }

    #[test]
    fn color_symmetry() {
        let n = DimVec::new(vec![2]);
        assert!((&z(0, 1) + &z(0, 2)).is_color_symmetric(&n).unwrap());
        assert!(!z(0, 1).is_color_symmetric(&n).unwrap());
        assert!(z(0, 3).is_color_symmetric(&n).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        let mono = prop::collection::vec((0usize..2, 1usize..3, 0u32..3), 0..3);
        prop::collection::vec((mono, -4i64..5), 0..5).prop_map(|ts| {
            P::from_terms(ts.into_iter().map(|(fs, k)| {
                (Monomial::from_factors(fs.into_iter().map(|(i, a, e)| (Var::z(i, a), e))), Rational::from_integer(k.into()))
            }))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn division_identity(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a.clone());
            prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
        }
    }
}
