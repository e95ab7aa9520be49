//! Bases of colour-symmetric polynomials.
//!
//! The homogeneous degree-`d` part of `V_n` has the basis of products over
//! colours of monomial symmetric functions `m_lambda`. The coordinate of
//! `m_lambda` is the coefficient of its dominant monomial, whose exponents
//! decrease along the slots of each colour.

use std::collections::HashMap;

use crate::dimvec::DimVec;
use crate::error::Error;
use crate::poly::{Monomial, Polynomial, Var};
use crate::scalar::Scalar;

/// Partitions of `total` into at most `parts` parts, padded with zeros,
/// in decreasing lexicographic order.
pub fn partitions(total: u32, parts: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for p in (0..=max.min(rest)).rev() {
            if p * left < rest {
                break;
            }
            cur.push(p);
            go(rest - p, p, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, parts, &mut Vec::new(), &mut out);
    out
}

/// Distinct permutations of a multiset, in lexicographic order.
fn distinct_permutations(items: &[u32]) -> Vec<Vec<u32>> {
    let mut v = items.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    loop {
        let Some(i) = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
            return out;
        };
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("successor exists");
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(v.clone());
    }
}

/// Exponents per colour and slot.
pub type ColourExponents = Vec<Vec<u32>>;

/// The basis of the degree-`degree` part of `V_n`.
#[derive(Clone, Debug)]
pub struct SymBasis {
    n: DimVec,
    degree: u32,
    shapes: Vec<ColourExponents>,
    keys: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

/// The monomial with the given exponents; `offsets[i]` shifts the slots of
/// colour `i`.
pub fn exponent_monomial(exps: &[Vec<u32>], offsets: &[u32]) -> Monomial {
    Monomial::from_factors(exps.iter().enumerate().flat_map(|(i, row)| {
        row.iter()
            .enumerate()
            .map(move |(a, &e)| (Var::z(i, offsets[i] as usize + a + 1), e))
    }))
}

impl SymBasis {
    pub fn new(n: &DimVec, degree: u32) -> Self {
        let mut shapes: Vec<ColourExponents> = vec![Vec::new()];
        for i in 0..n.len() {
            let mut next = Vec::new();
            for s in &shapes {
                let used: u32 = s.iter().flatten().sum();
                let options: Vec<Vec<u32>> = if i + 1 == n.len() {
                    partitions(degree - used, n[i])
                } else {
                    (0..=degree - used).flat_map(|t| partitions(t, n[i])).collect()
                };
                for p in options {
                    let mut t = s.clone();
                    t.push(p);
                    next.push(t);
                }
            }
            shapes = next;
        }
        shapes.retain(|s| s.iter().flatten().sum::<u32>() == degree);
        let zeros = vec![0; n.len()];
        let keys: Vec<Monomial> = shapes.iter().map(|s| exponent_monomial(s, &zeros)).collect();
        let index = keys.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        SymBasis { n: n.clone(), degree, shapes, keys, index }
    }

    pub fn n(&self) -> &DimVec {
        &self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Dominant monomials, one per basis element.
    pub fn keys(&self) -> &[Monomial] {
        &self.keys
    }

    pub fn shapes(&self) -> &[ColourExponents] {
        &self.shapes
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// The basis element `prod_i m_{lambda^i}`.
    pub fn element<C: Scalar>(&self, k: usize) -> Polynomial<C> {
        let mut per_colour: Vec<Vec<Vec<u32>>> = Vec::new();
        for row in &self.shapes[k] {
            per_colour.push(distinct_permutations(row));
        }
        let mut combos: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
        for perms in &per_colour {
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    perms.iter().map(move |p| {
                        let mut c = c.clone();
                        c.push(p.clone());
                        c
                    })
                })
                .collect();
        }
        let zeros = vec![0; self.n.len()];
        Polynomial::from_terms(combos.into_iter().map(|c| (exponent_monomial(&c, &zeros), C::one())))
    }

    /// Coordinates of a colour-symmetric, parameter-free polynomial's
    /// degree-`degree` part.
    pub fn coords<C: Scalar>(&self, p: &Polynomial<C>) -> Vec<C> {
        self.keys.iter().map(|m| p.coeff(m)).collect()
    }

    pub fn combine<C: Scalar>(&self, coords: &[C]) -> Polynomial<C> {
        let mut p = Polynomial::zero();
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                p += self.element::<C>(k).scale(c);
            }
        }
        p
    }
}

/// Checks that `p` is a parameter-free, colour-symmetric element of `V_n`
/// homogeneous of the given degree.
pub fn check_homogeneous<C: Scalar>(p: &Polynomial<C>, n: &DimVec, degree: u32) -> Result<(), Error> {
    if !p.is_color_symmetric(n)? {
        return Err(Error::NotColorSymmetric(n.clone()));
    }
    if p.has_params() || p.terms().any(|(m, _)| m.degree() != degree) {
        return Err(Error::Precondition(format!("expected a parameter-free polynomial homogeneous of degree {degree}")));
    }
    Ok(())
}
