//! The shuffle algebra of a zeta kernel.
//!
//! `E * F = Sym( E(z') F(z'') prod zeta_ij(z'_ia - z''_jb) )`, the sum over
//! per-colour cosets. Every term is put over the common per-colour
//! Vandermonde denominator and the sum is divided exactly.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::dimvec::DimVec;
use crate::error::Error;
use crate::kernel::ZetaKernel;
use crate::poly::{Polynomial, Var};
use crate::scalar::Scalar;

/// A colour-symmetric polynomial of dimension vector `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ShuffleElement<C> {
    n: DimVec,
    poly: Polynomial<C>,
}

impl<C: Scalar> ShuffleElement<C> {
    /// Validates the variables and the colour symmetry.
    pub fn new(n: DimVec, poly: Polynomial<C>) -> Result<Self, Error> {
        if !poly.is_color_symmetric(&n)? {
            return Err(Error::NotColorSymmetric(n));
        }
        Ok(ShuffleElement { n, poly })
    }

    pub(crate) fn from_parts(n: DimVec, poly: Polynomial<C>) -> Self {
        ShuffleElement { n, poly }
    }

    pub fn zero(n: DimVec) -> Self {
        ShuffleElement { n, poly: Polynomial::zero() }
    }

    pub fn n(&self) -> &DimVec {
        &self.n
    }

    pub fn poly(&self) -> &Polynomial<C> {
        &self.poly
    }

    pub fn into_poly(self) -> Polynomial<C> {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, c: &C) -> Self {
        ShuffleElement { n: self.n.clone(), poly: self.poly.scale(c) }
    }

    pub fn add(&self, o: &Self) -> Result<Self, Error> {
        if self.n != o.n {
            return Err(Error::Precondition(format!("cannot add elements of V{} and V{}", self.n, o.n)));
        }
        Ok(ShuffleElement { n: self.n.clone(), poly: &self.poly + &o.poly })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, Error> {
        self.add(&o.scale(&-C::one()))
    }
}

impl<C: fmt::Debug> fmt::Debug for ShuffleElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {:?}", self.n, self.poly)
    }
}

impl<C: Scalar> fmt::Display for ShuffleElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.n, self.poly)
    }
}

/// `tau(m, n) = (m,m)(n,n) + (m,n) mod 2`.
pub fn tau<C: Scalar>(k: &ZetaKernel<C>, m: &DimVec, n: &DimVec) -> bool {
    let v = k.euler_form(m, m) * k.euler_form(n, n) + k.euler_form(m, n);
    v.rem_euclid(2) == 1
}

/// A bilinear form `psi` mod 2 with `psi(m,n) + psi(n,m) = tau(m,n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignTwist {
    bits: Vec<Vec<bool>>,
}

impl SignTwist {
    /// `psi(e_i, e_j) = tau(e_i, e_j)` for `i < j` and zero otherwise.
    pub fn canonical<C: Scalar>(k: &ZetaKernel<C>) -> Self {
        let nv = k.vertex_count();
        let mut bits = vec![vec![false; nv]; nv];
        for (i, row) in bits.iter_mut().enumerate() {
            for (j, b) in row.iter_mut().enumerate().skip(i + 1) {
                *b = tau(k, &DimVec::unit(nv, i), &DimVec::unit(nv, j));
            }
        }
        SignTwist { bits }
    }

    /// A twist from its values on pairs of vertices, checked against `tau`.
    pub fn from_bits<C: Scalar>(k: &ZetaKernel<C>, bits: Vec<Vec<bool>>) -> Result<Self, Error> {
        let nv = k.vertex_count();
        if bits.len() != nv || bits.iter().any(|r| r.len() != nv) {
            return Err(Error::Precondition("twist matrix has the wrong size".into()));
        }
        let t = SignTwist { bits };
        for i in 0..nv {
            for j in 0..nv {
                let (a, b) = (DimVec::unit(nv, i), DimVec::unit(nv, j));
                if t.psi(&a, &b) ^ t.psi(&b, &a) != tau(k, &a, &b) {
                    return Err(Error::Precondition(format!("twist violates psi + psi^T = tau at ({i},{j})")));
                }
            }
        }
        Ok(t)
    }

    /// `psi(m, n) mod 2`.
    pub fn psi(&self, m: &DimVec, n: &DimVec) -> bool {
        let mut s = 0u64;
        for (i, row) in self.bits.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if b {
                    s += m[i] as u64 * n[j] as u64;
                }
            }
        }
        s % 2 == 1
    }
}

/// `z[i,a] -> y[1] + z[i,a]` for every variable.
pub fn act_shift<C: Scalar>(p: &Polynomial<C>) -> Polynomial<C> {
    p.substitute(|v| match v {
        Var::Z { .. } => Some(&Polynomial::var(Var::Aux(1)) + &Polynomial::var(v)),
        _ => None,
    })
}

/// Shifts the `a`-th block of slots by `y[a]`. Blocks are consecutive slots
/// per colour, in order.
pub fn block_shift<C: Scalar>(p: &Polynomial<C>, n: &DimVec, blocks: &[DimVec]) -> Result<Polynomial<C>, Error> {
    let mut owner: HashMap<Var, u16> = HashMap::new();
    let mut offsets = vec![0u32; n.len()];
    for (a, b) in blocks.iter().enumerate() {
        if b.len() != n.len() {
            return Err(Error::BadBlocks(n.clone()));
        }
        for i in 0..n.len() {
            for s in 0..b[i] {
                owner.insert(Var::z(i, (offsets[i] + s + 1) as usize), a as u16 + 1);
            }
            offsets[i] += b[i];
        }
    }
    if offsets.as_slice() != n.as_slice() {
        return Err(Error::BadBlocks(n.clone()));
    }
    p.check_z_range(n)?;
    Ok(p.substitute(|v| owner.get(&v).map(|&a| &Polynomial::var(Var::Aux(a)) + &Polynomial::var(v))))
}

/// `E` viewed in `V_m (x) V_{n-m}`: slots `1..=m_i` of colour `i` form the
/// first factor, the remaining slots the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTensor<C> {
    pub first: DimVec,
    pub second: DimVec,
    pub poly: Polynomial<C>,
}

pub fn split<C: Scalar>(e: &ShuffleElement<C>, m: &DimVec) -> Result<SplitTensor<C>, Error> {
    let n = e.n();
    if !n.strictly_between(m) {
        return Err(Error::SplitOutOfRange { m: m.clone(), n: n.clone() });
    }
    Ok(SplitTensor { first: m.clone(), second: n.checked_sub(m).expect("m <= n"), poly: e.poly().clone() })
}

/// Equivariant Euler classes of the extension bundle pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerClass {
    /// Arrows `a` from the first factor to the second, with weight `u_a`.
    Omega,
    /// Reversed arrows with weight `-u_a`.
    OmegaOp,
    /// One factor per pair of equal-coloured variables.
    Identity,
}

/// The Euler class in `z'` (slots `1..=n1_i`) and `z''` (slots
/// `n1_i+1..=n1_i+n2_i`), over all arrows of the kernel's quiver.
pub fn eu_class<C: Scalar>(k: &ZetaKernel<C>, n1: &DimVec, n2: &DimVec, which: EulerClass) -> Polynomial<C> {
    let first = |i: usize, a: u32| Polynomial::<C>::z(i, a as usize);
    let second = |i: usize, b: u32| Polynomial::<C>::z(i, (n1[i] + b) as usize);
    let mut acc = Polynomial::one();
    match which {
        EulerClass::Identity => {
            for i in 0..n1.len() {
                for a in 1..=n1[i] {
                    for b in 1..=n2[i] {
                        acc = &acc * &(&second(i, b) - &first(i, a));
                    }
                }
            }
        }
        EulerClass::Omega | EulerClass::OmegaOp => {
            for arrow in k.quiver().arrows() {
                let w = k.label_poly(&arrow.label);
                let (s, t, w) = match which {
                    EulerClass::Omega => (arrow.source, arrow.target, w),
                    _ => (arrow.target, arrow.source, -w),
                };
                for a in 1..=n1[s] {
                    for b in 1..=n2[t] {
                        acc = &acc * &(&(&second(t, b) - &first(s, a)) + &w);
                    }
                }
            }
        }
    }
    acc
}

fn combinations(n: u32, k: u32) -> Vec<Vec<u32>> {
    fn go(start: u32, n: u32, k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() as u32 == k {
            out.push(cur.clone());
            return;
        }
        for s in start..=n {
            if n - s + 1 < k - cur.len() as u32 {
                break;
            }
            cur.push(s);
            go(s + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Moves slot `a` of colour `i` to `blocks[i][a - 1]`.
fn place(blocks: &[Vec<u32>], v: Var) -> Var {
    match v {
        Var::Z { vertex, slot } => Var::Z { vertex, slot: blocks[vertex as usize][slot as usize - 1] as u16 },
        w => w,
    }
}

/// `prod_{a<b} (z[i,a] - z[i,b])` over the given slots of colour `i`.
fn vandermonde<C: Scalar>(i: usize, slots: &[u32]) -> Polynomial<C> {
    let mut acc = Polynomial::one();
    for (x, &a) in slots.iter().enumerate() {
        for &b in &slots[x + 1..] {
            acc = &acc * &(&Polynomial::z(i, a as usize) - &Polynomial::z(i, b as usize));
        }
    }
    acc
}

/// The shuffle algebra of a fixed kernel.
#[derive(Clone, Debug)]
pub struct ShuffleAlgebra<C> {
    kernel: ZetaKernel<C>,
}

impl<C: Scalar> ShuffleAlgebra<C> {
    pub fn new(kernel: ZetaKernel<C>) -> Self {
        ShuffleAlgebra { kernel }
    }

    pub fn kernel(&self) -> &ZetaKernel<C> {
        &self.kernel
    }

    /// Checks the dimension vector against the quiver and builds an element.
    pub fn element(&self, n: DimVec, poly: Polynomial<C>) -> Result<ShuffleElement<C>, Error> {
        self.kernel.check_dim(&n)?;
        ShuffleElement::new(n, poly)
    }

    /// `z^degree` in `V_{e_vertex}`.
    pub fn spherical(&self, vertex: usize, degree: u32) -> ShuffleElement<C> {
        let nv = self.kernel.vertex_count();
        ShuffleElement::from_parts(DimVec::unit(nv, vertex), Polynomial::z(vertex, 1).pow(degree))
    }

    pub fn product(&self, e: &ShuffleElement<C>, f: &ShuffleElement<C>) -> Result<ShuffleElement<C>, Error> {
        let k = &self.kernel;
        k.check_dim(e.n())?;
        k.check_dim(f.n())?;
        let nv = k.vertex_count();
        let n = e.n() + f.n();
        if e.is_zero() || f.is_zero() {
            return Ok(ShuffleElement::zero(n));
        }

        let mut zeta: HashMap<(usize, u32, usize, u32), Polynomial<C>> = HashMap::new();
        for i in 0..nv {
            for a in 1..=n[i] {
                for j in 0..nv {
                    for b in 1..=n[j] {
                        if i == j && a == b {
                            continue;
                        }
                        let t = &Polynomial::z(i, a as usize) - &Polynomial::z(j, b as usize);
                        zeta.insert((i, a, j, b), k.numerator_at(i, j, &t));
                    }
                }
            }
        }

        let mut reps: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
        for i in 0..nv {
            let choices = combinations(n[i], e.n()[i]);
            reps = reps
                .into_iter()
                .flat_map(|r| {
                    choices.iter().map(move |c| {
                        let mut r = r.clone();
                        r.push(c.clone());
                        r
                    })
                })
                .collect();
        }

        let term = |first: &Vec<Vec<u32>>| -> Polynomial<C> {
            let second: Vec<Vec<u32>> =
                (0..nv).map(|i| (1..=n[i]).filter(|s| !first[i].contains(s)).collect()).collect();
            let mut t = &e.poly().rename(|v| place(first, v)) * &f.poly().rename(|v| place(&second, v));
            let mut flips = 0usize;
            for i in 0..nv {
                for j in 0..nv {
                    for &a in &first[i] {
                        for &b in &second[j] {
                            t = &t * &zeta[&(i, a, j, b)];
                        }
                    }
                }
                t = &t * &vandermonde(i, &first[i]);
                t = &t * &vandermonde(i, &second[i]);
                flips += first[i].iter().map(|a| second[i].iter().filter(|b| *b < a).count()).sum::<usize>();
            }
            if flips % 2 == 1 {
                -t
            } else {
                t
            }
        };

        let parts: Vec<Polynomial<C>> = reps.par_iter().map(term).collect();
        let mut numerator = Polynomial::zero();
        for p in parts {
            numerator += p;
        }
        let mut denom = Polynomial::one();
        for i in 0..nv {
            let all: Vec<u32> = (1..=n[i]).collect();
            denom = &denom * &vandermonde(i, &all);
        }
        let poly = numerator.exact_div(&denom)?;
        Ok(ShuffleElement::from_parts(n, poly))
    }

    /// `(-1)^psi(n, n') E * F`.
    pub fn twisted_product(
        &self,
        e: &ShuffleElement<C>,
        f: &ShuffleElement<C>,
        twist: &SignTwist,
    ) -> Result<ShuffleElement<C>, Error> {
        let p = self.product(e, f)?;
        Ok(if twist.psi(e.n(), f.n()) { p.scale(&-C::one()) } else { p })
    }

    /// `E * F - (-1)^{(n,n')} F * E`.
    pub fn bracket(&self, e: &ShuffleElement<C>, f: &ShuffleElement<C>) -> Result<ShuffleElement<C>, Error> {
        let ef = self.product(e, f)?;
        let fe = self.product(f, e)?;
        let sign = if self.kernel.euler_form(e.n(), f.n()).rem_euclid(2) == 1 { -C::one() } else { C::one() };
        ef.sub(&fe.scale(&sign))
    }

    /// Multiplication by `sum_{i,a} z[i,a]`.
    pub fn u_operator(&self, e: &ShuffleElement<C>) -> ShuffleElement<C> {
        let mut s = Polynomial::zero();
        for i in 0..e.n().len() {
            for a in 1..=e.n()[i] {
                s += Polynomial::z(i, a as usize);
            }
        }
        ShuffleElement::from_parts(e.n().clone(), e.poly() * &s)
    }
}
