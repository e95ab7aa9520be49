//! Independent oracles and random generators shared by the integration
//! tests and the acceptance target.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::HashMap;

use coha_core::catalog;
use coha_core::filtration::{block_compositions, Filtration};
use coha_core::quiver::ArrowRole;
use coha_core::symmetric::SymBasis;
use coha_core::{
    DimVec, KernelMode, QElement, QKernel, QPolynomial, Rational, ShuffleElement, Symbol, Torus, Var,
    ZetaKernel,
};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn q(k: i64) -> Rational {
    Rational::from_integer(k.into())
}

pub fn tripled_a2() -> QKernel {
    ZetaKernel::new(catalog::a2_quiver().triple().unwrap(), KernelMode::Tripled, Torus::Generic).unwrap()
}

/// Nonzero `n` with `|n| <= max_total`.
pub fn dims_up_to(k: &QKernel, max_total: u32) -> Vec<DimVec> {
    DimVec::new(vec![max_total; k.vertex_count()]).nonzero_below().into_iter().filter(|n| n.total() <= max_total).collect()
}

/// A random element of `V_n` homogeneous of the given degree in `z`, with
/// random parameter monomials when the kernel has parameters.
pub fn random_element<R: Rng>(k: &QKernel, n: &DimVec, degree: u32, rng: &mut R) -> QElement {
    let basis = SymBasis::new(n, degree);
    let params: Vec<Symbol> = k.params().into_iter().collect();
    let mut p = QPolynomial::zero();
    for t in 0..basis.len() {
        if rng.gen_bool(0.3) && basis.len() > 1 {
            continue;
        }
        let c = Rational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into());
        let mut term = basis.element::<Rational>(t).scale(&c);
        if !params.is_empty() && rng.gen_bool(0.4) {
            let s = *params.choose(rng).unwrap();
            term = &term * &QPolynomial::var(Var::Param(s));
        }
        p += term;
    }
    ShuffleElement::new(n.clone(), p).unwrap()
}

/// Random values for the parameters and distinct values for the slots.
pub struct Point {
    pub params: HashMap<Symbol, Rational>,
    pub z: HashMap<(usize, u32), Rational>,
}

pub fn random_point<R: Rng>(k: &QKernel, n: &DimVec, rng: &mut R) -> Point {
    let params = k.params().into_iter().map(|s| (s, Rational::new(rng.gen_range(-50i64..50).into(), rng.gen_range(1i64..7).into()))).collect();
    let mut used = Vec::new();
    let mut z = HashMap::new();
    for i in 0..n.len() {
        for a in 1..=n[i] {
            let v = loop {
                let v = Rational::new(rng.gen_range(-1000i64..1000).into(), rng.gen_range(1i64..11).into());
                if !used.contains(&v) {
                    break v;
                }
            };
            used.push(v.clone());
            z.insert((i, a), v);
        }
    }
    Point { params, z }
}

/// Evaluates a polynomial term by term, reading slot `(i, a)` through `slot`.
pub fn eval(p: &QPolynomial, params: &HashMap<Symbol, Rational>, slot: impl Fn(usize, u32) -> Rational) -> Rational {
    let mut total = Rational::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for &(v, e) in m.factors() {
            let x = match v {
                Var::Z { vertex, slot: s } => slot(vertex as usize, s as u32),
                Var::Param(s) => params[&s].clone(),
                other => panic!("unexpected variable {other}"),
            };
            for _ in 0..e {
                t *= x.clone();
            }
        }
        total += t;
    }
    total
}

/// `zeta_ij(x)` computed from the arrows of the quiver.
pub fn zeta_at(k: &QKernel, i: usize, j: usize, x: &Rational, params: &HashMap<Symbol, Rational>) -> Rational {
    let generic = k.torus() == Torus::Generic;
    let val = |s: &str| if generic { params[&Symbol::new(s)].clone() } else { Rational::zero() };
    let hbar = || val("hbar");
    let label = |a: &coha_core::quiver::Arrow| {
        let l = &a.label;
        let mut t = if l.hbar == 0 { Rational::zero() } else { hbar() * q(l.hbar) };
        for (s, c) in &l.terms {
            t += val(s.as_str()) * q(*c);
        }
        t
    };
    let mut num = Rational::one();
    let diag = i == j;
    match k.mode() {
        KernelMode::ZeroPotential => {
            if diag {
                num = -num;
            }
            for a in k.quiver().arrows() {
                if a.source == i && a.target == j {
                    num *= label(a) - x.clone();
                }
            }
        }
        KernelMode::Tripled => {
            if diag {
                num *= x.clone() - hbar();
            }
            for a in k.quiver().arrows().iter().filter(|a| a.role == ArrowRole::Original) {
                if a.source == i && a.target == j {
                    num *= -x.clone() - label(a);
                }
                if a.source == j && a.target == i {
                    num *= label(a) - x.clone() - hbar();
                }
            }
        }
    }
    if diag {
        num / x.clone()
    } else {
        num
    }
}

fn subsets(n: u32, k: u32) -> Vec<Vec<u32>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() == k)
        .map(|m| (1..=n).filter(|s| m & (1 << (s - 1)) != 0).collect())
        .collect()
}

/// `(E * F)(point)` as the sum over shuffles of
/// `E(z_A) F(z_B) prod_{a in A, b in B} zeta(z_a - z_b)`.
pub fn shuffle_at(k: &QKernel, e: &QElement, f: &QElement, pt: &Point) -> Rational {
    let nv = k.vertex_count();
    let n = e.n() + f.n();
    let mut choices: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
    for i in 0..nv {
        let opts = subsets(n[i], e.n()[i]);
        choices = choices
            .into_iter()
            .flat_map(|c| {
                opts.iter().map(move |o| {
                    let mut c = c.clone();
                    c.push(o.clone());
                    c
                })
            })
            .collect();
    }
    let mut total = Rational::zero();
    for first in choices {
        let second: Vec<Vec<u32>> = (0..nv).map(|i| (1..=n[i]).filter(|s| !first[i].contains(s)).collect()).collect();
        let ev = eval(e.poly(), &pt.params, |i, a| pt.z[&(i, first[i][a as usize - 1])].clone());
        let fv = eval(f.poly(), &pt.params, |i, b| pt.z[&(i, second[i][b as usize - 1])].clone());
        let mut t = ev * fv;
        for i in 0..nv {
            for j in 0..nv {
                for a in &first[i] {
                    for b in &second[j] {
                        t *= zeta_at(k, i, j, &(pt.z[&(i, *a)].clone() - pt.z[&(j, *b)].clone()), &pt.params);
                    }
                }
            }
        }
        total += t;
    }
    total
}

pub fn value_at(e: &QElement, pt: &Point) -> Rational {
    eval(e.poly(), &pt.params, |i, a| pt.z[&(i, a)].clone())
}

/// Membership in `F^d` over ordered compositions of `n`, shifting each block
/// of consecutive slots by its own auxiliary variable.
pub fn member_by_compositions(k: &QKernel, e: &QElement, d: i64) -> bool {
    let n = e.n();
    for blocks in block_compositions(n) {
        let mut owner: HashMap<(usize, u32), u16> = HashMap::new();
        let mut next = vec![1u32; n.len()];
        for (a, b) in blocks.iter().enumerate() {
            for i in 0..n.len() {
                for _ in 0..b[i] {
                    owner.insert((i, next[i]), a as u16 + 1);
                    next[i] += 1;
                }
            }
        }
        let shifted = e.poly().substitute(|v| match v {
            Var::Z { vertex, slot } => {
                let a = owner[&(vertex as usize, slot as u32)];
                Some(&QPolynomial::var(Var::Aux(a)) + &QPolynomial::var(v))
            }
            _ => None,
        });
        let mut pairs = 0i64;
        for x in 0..blocks.len() {
            for y in x + 1..blocks.len() {
                pairs += k.euler_form(&blocks[x], &blocks[y]);
            }
        }
        let bound = d - blocks.len() as i64 - 2 * pairs;
        let ydeg = shifted.terms().map(|(m, _)| m.degree_in(Var::is_aux) as i64).max();
        if let Some(t) = ydeg {
            if 2 * t > bound {
                return false;
            }
        }
    }
    true
}

/// Number of partitions of `total` into at most `parts` parts.
pub fn partitions_at_most(total: u32, parts: u32) -> usize {
    fn go(total: u32, parts: u32, max: u32) -> usize {
        if total == 0 {
            return 1;
        }
        if parts == 0 {
            return 0;
        }
        (1..=max.min(total)).map(|p| go(total - p, parts - 1, p)).sum()
    }
    go(total, parts, total)
}

/// `2 delta + max over block multisets of (k + 2 sum_{a<b} (n^a, n^b))`:
/// the least `d` at which every block bound admits full degree `delta`.
pub fn stabilization_threshold(filt: &Filtration<Rational>, n: &DimVec, delta: u32) -> i64 {
    coha_core::filtration::block_multisets(n)
        .iter()
        .map(|b| 2 * delta as i64 + b.len() as i64 + 2 * filt.pair_sum(b))
        .max()
        .unwrap()
}

/// `2 delta + |n| + 2 sum_{a<b} (e_{i_a}, e_{i_b})` over single slots.
pub fn singleton_threshold(k: &QKernel, n: &DimVec, delta: u32) -> i64 {
    let mut colours = Vec::new();
    for i in 0..n.len() {
        for _ in 0..n[i] {
            colours.push(DimVec::unit(n.len(), i));
        }
    }
    let mut pairs = 0;
    for a in 0..colours.len() {
        for b in a + 1..colours.len() {
            pairs += k.euler_form(&colours[a], &colours[b]);
        }
    }
    2 * delta as i64 + n.total() as i64 + 2 * pairs
}

pub fn monomial_elements(n: &DimVec, degree: u32) -> Vec<QElement> {
    let b = SymBasis::new(n, degree);
    (0..b.len()).map(|t| ShuffleElement::new(n.clone(), b.element(t)).unwrap()).collect()
}
