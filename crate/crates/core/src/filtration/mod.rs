//! The perverse filtration `F^d` on the shuffle algebra.
//!
//! `E` in `V_n` lies in `F^d` when for every way of writing `n` as a sum of
//! `k` nonzero blocks `n^1 + ... + n^k`,
//!
//! `2 deg_y E(y_1 + z^1, ..., y_k + z^k) <= d - k - 2 sum_{a<b} (n^a, n^b)`.
//!
//! Slices `F^d(V_n)_delta` are computed as nullspaces of these linear
//! conditions in the colour-symmetric monomial basis. A second,
//! independent route uses the recursive characterisation through the
//! coproduct-like splitting.

pub mod pbw;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rand::Rng;

use crate::dimvec::DimVec;
use crate::error::Error;
use crate::linalg::Echelon;
use crate::poly::{Monomial, Polynomial, Var};
use crate::scalar::Scalar;
use crate::shuffle::{act_shift, block_shift, ShuffleAlgebra, ShuffleElement};
use crate::symmetric::{exponent_monomial, SymBasis};

/// Unordered decompositions of `n` into nonzero blocks, each listed in
/// non-increasing order.
pub fn block_multisets(n: &DimVec) -> Vec<Vec<DimVec>> {
    fn go(rest: &DimVec, parts: &[DimVec], max: usize, cur: &mut Vec<DimVec>, out: &mut Vec<Vec<DimVec>>) {
        if rest.is_zero() {
            out.push(cur.clone());
            return;
        }
        for (k, p) in parts.iter().enumerate().take(max + 1) {
            if let Some(r) = rest.checked_sub(p) {
                cur.push(p.clone());
                go(&r, parts, k, cur, out);
                cur.pop();
            }
        }
    }
    let parts = n.nonzero_below();
    let mut out = Vec::new();
    if parts.is_empty() {
        return out;
    }
    go(n, &parts, parts.len() - 1, &mut Vec::new(), &mut out);
    out
}

/// Ordered decompositions of `n` into nonzero blocks.
pub fn block_compositions(n: &DimVec) -> Vec<Vec<DimVec>> {
    if n.is_zero() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in n.nonzero_below() {
        let rest = n.checked_sub(&first).expect("first <= n");
        for mut tail in block_compositions(&rest) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

/// A slice `F^d(V_n)_delta`, or any other subspace of a homogeneous slice of
/// `V_n`, stored in reduced echelon form over the symmetric monomial basis.
#[derive(Clone, Debug)]
pub struct GradedSubspace<C> {
    pub n: DimVec,
    pub degree: u32,
    pub d: Option<u32>,
    basis: Arc<SymBasis>,
    span: Echelon<C>,
}

impl<C: Scalar> GradedSubspace<C> {
    pub fn new(n: DimVec, degree: u32, d: Option<u32>, basis: Arc<SymBasis>, span: Echelon<C>) -> Self {
        GradedSubspace { n, degree, d, basis, span }
    }

    pub fn dim(&self) -> usize {
        self.span.rank()
    }

    /// Dimension of the ambient slice of `V_n`.
    pub fn ambient_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn sym_basis(&self) -> &SymBasis {
        &self.basis
    }

    pub fn echelon(&self) -> &Echelon<C> {
        &self.span
    }

    /// The reduced echelon basis as elements.
    pub fn elements(&self) -> Vec<ShuffleElement<C>> {
        self.span
            .rows()
            .iter()
            .map(|r| ShuffleElement::from_parts(self.n.clone(), self.basis.combine(r)))
            .collect()
    }

    /// Whether a polynomial lies in the subspace over the parameter ring:
    /// each parameter coefficient must be a member.
    pub fn contains_poly(&self, p: &Polynomial<C>) -> bool {
        p.split_params().values().all(|q| {
            q.terms().all(|(m, _)| m.degree() == self.degree) && self.span.contains(&self.basis.coords(q))
        })
    }

    /// A random combination of basis elements with small integer coefficients.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> ShuffleElement<C> {
        let mut coords = vec![C::zero(); self.basis.len()];
        for row in self.span.rows() {
            let c = C::from_int(rng.gen_range(-3..=3));
            for (x, r) in coords.iter_mut().zip(row) {
                *x = x.clone() + c.clone() * r.clone();
            }
        }
        ShuffleElement::from_parts(self.n.clone(), self.basis.combine(&coords))
    }
}

/// One row of a dimension table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimRow {
    pub n: DimVec,
    pub degree: u32,
    pub d: u32,
    pub dim: usize,
    pub ambient: usize,
}

type SliceKey = (DimVec, u32, u32);
type TensorKey = (DimVec, DimVec, i64, u32, u32);

/// Filtration queries for one shuffle algebra, with memoised slices.
pub struct Filtration<C> {
    alg: ShuffleAlgebra<C>,
    bases: RwLock<HashMap<(DimVec, u32), Arc<SymBasis>>>,
    direct: RwLock<HashMap<SliceKey, Arc<GradedSubspace<C>>>>,
    recursive: RwLock<HashMap<SliceKey, Arc<Echelon<C>>>>,
    tensor_spans: RwLock<HashMap<TensorKey, Arc<Echelon<C>>>>,
}

fn cached<K: std::hash::Hash + Eq + Clone, V: Clone>(map: &RwLock<HashMap<K, V>>, key: &K, make: impl FnOnce() -> V) -> V {
    if let Some(v) = map.read().expect("cache poisoned").get(key) {
        return v.clone();
    }
    let v = make();
    map.write().expect("cache poisoned").entry(key.clone()).or_insert(v).clone()
}

/// Adds the coefficients of `terms` selected by `keep` as constraint rows
/// on column `col`.
fn collect_rows<C: Scalar>(
    rows: &mut BTreeMap<Monomial, Vec<C>>,
    ncols: usize,
    col: usize,
    p: &Polynomial<C>,
    keep: impl Fn(&Monomial) -> bool,
) {
    for (m, c) in p.terms() {
        if keep(m) {
            rows.entry(m.clone()).or_insert_with(|| vec![C::zero(); ncols])[col] = c.clone();
        }
    }
}

fn solve<C: Scalar>(ncols: usize, rows: impl IntoIterator<Item = Vec<C>>) -> Echelon<C> {
    let constraints = Echelon::from_rows(ncols, rows);
    Echelon::from_rows(ncols, constraints.nullspace())
}

/// Largest `t` with `2t <= bound`, or `None` if `bound < 0`.
fn half_floor(bound: i64) -> Option<u32> {
    (bound >= 0).then_some((bound / 2) as u32)
}

impl<C: Scalar> Filtration<C> {
    pub fn new(alg: ShuffleAlgebra<C>) -> Self {
        Filtration {
            alg,
            bases: RwLock::new(HashMap::new()),
            direct: RwLock::new(HashMap::new()),
            recursive: RwLock::new(HashMap::new()),
            tensor_spans: RwLock::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &ShuffleAlgebra<C> {
        &self.alg
    }

    pub fn euler(&self, m: &DimVec, n: &DimVec) -> i64 {
        self.alg.kernel().euler_form(m, n)
    }

    /// `sum_{a<b} (n^a, n^b)`.
    pub fn pair_sum(&self, blocks: &[DimVec]) -> i64 {
        let mut s = 0;
        for a in 0..blocks.len() {
            for b in a + 1..blocks.len() {
                s += self.euler(&blocks[a], &blocks[b]);
            }
        }
        s
    }

    /// `d - k - 2 sum_{a<b} (n^a, n^b)`.
    pub fn block_bound(&self, d: i64, blocks: &[DimVec]) -> i64 {
        d - blocks.len() as i64 - 2 * self.pair_sum(blocks)
    }

    pub fn sym_basis(&self, n: &DimVec, degree: u32) -> Arc<SymBasis> {
        cached(&self.bases, &(n.clone(), degree), || Arc::new(SymBasis::new(n, degree)))
    }

    fn check_query(&self, n: &DimVec, d: i64) -> Result<(), Error> {
        self.alg.kernel().check_dim(n)?;
        if d < 1 {
            return Err(Error::BadFiltrationIndex(d));
        }
        Ok(())
    }

    /// Membership by the block-shift criterion.
    pub fn member_direct(&self, e: &ShuffleElement<C>, d: i64) -> Result<bool, Error> {
        self.check_query(e.n(), d)?;
        if e.is_zero() {
            return Ok(true);
        }
        for blocks in block_multisets(e.n()) {
            let bound = self.block_bound(d, &blocks);
            let shifted = block_shift(e.poly(), e.n(), &blocks)?;
            if !shifted.degree_in(Var::is_aux).twice_at_most(bound) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `F^d(V_n)_degree` by the block-shift criterion.
    pub fn subspace(&self, n: &DimVec, d: u32, degree: u32) -> Result<Arc<GradedSubspace<C>>, Error> {
        self.check_query(n, d as i64)?;
        Ok(cached(&self.direct, &(n.clone(), d, degree), || Arc::new(self.direct_slice(n, d, degree))))
    }

    fn direct_slice(&self, n: &DimVec, d: u32, degree: u32) -> GradedSubspace<C> {
        let basis = self.sym_basis(n, degree);
        let ncols = basis.len();
        let empty = || GradedSubspace::new(n.clone(), degree, Some(d), basis.clone(), Echelon::new(ncols));
        let mut rows: Vec<Vec<C>> = Vec::new();
        let elements: Vec<Polynomial<C>> = (0..ncols).map(|k| basis.element(k)).collect();
        for blocks in block_multisets(n) {
            let Some(tmax) = half_floor(self.block_bound(d as i64, &blocks)) else {
                return empty();
            };
            if tmax >= degree {
                continue;
            }
            let mut local = BTreeMap::new();
            for (k, e) in elements.iter().enumerate() {
                let s = block_shift(e, n, &blocks).expect("blocks sum to n");
                collect_rows(&mut local, ncols, k, &s, |m| m.degree_in(Var::is_aux) > tmax);
            }
            rows.extend(local.into_values());
        }
        let span = solve(ncols, rows);
        GradedSubspace::new(n.clone(), degree, Some(d), basis, span)
    }

    /// `F^1` slices for degrees `0..=deg_max`.
    pub fn bps_basis(&self, n: &DimVec, deg_max: u32) -> Result<Vec<Arc<GradedSubspace<C>>>, Error> {
        (0..=deg_max).map(|t| self.subspace(n, 1, t)).collect()
    }

    /// Dimensions of `F^d(V_n)_delta` for all nonzero `n <= n_max`,
    /// `delta <= deg_max`, `1 <= d <= d_max`, ordered by `n`, `delta`, `d`.
    pub fn graded_dims(&self, n_max: &DimVec, deg_max: u32, d_max: u32) -> Result<Vec<DimRow>, Error> {
        let mut out = Vec::new();
        for n in n_max.nonzero_below() {
            for degree in 0..=deg_max {
                for d in 1..=d_max {
                    let s = self.subspace(&n, d, degree)?;
                    out.push(DimRow { n: n.clone(), degree, d, dim: s.dim(), ambient: s.ambient_dim() });
                }
            }
        }
        Ok(out)
    }

    // Recursive characterisation.

    /// Tensor coordinates of the `(d1, d2)` bidegree part of a polynomial in
    /// `V_n`, split at `m`.
    fn tensor_coords(&self, p: &Polynomial<C>, m: &DimVec, r: &DimVec, d1: u32, d2: u32) -> Vec<C> {
        let b1 = self.sym_basis(m, d1);
        let b2 = self.sym_basis(r, d2);
        let zeros = vec![0u32; m.len()];
        let mut out = Vec::with_capacity(b1.len() * b2.len());
        for s1 in b1.shapes() {
            let m1 = exponent_monomial(s1, &zeros);
            for s2 in b2.shapes() {
                let m2 = exponent_monomial(s2, m.as_slice());
                out.push(p.coeff(&m1.mul(&m2)));
            }
        }
        out
    }

    /// Span of `F^{d'}(V_m)_{d1} (x) F^{d''}(V_r)_{d2}` over `d' + d'' <= big_d`.
    fn tensor_span(&self, m: &DimVec, r: &DimVec, big_d: i64, d1: u32, d2: u32) -> Arc<Echelon<C>> {
        let key = (m.clone(), r.clone(), big_d, d1, d2);
        cached(&self.tensor_spans, &key, || {
            let n2 = self.sym_basis(r, d2).len();
            let ncols = self.sym_basis(m, d1).len() * n2;
            let mut span = Echelon::new(ncols);
            for dp in 1..big_d {
                let dpp = big_d - dp;
                let left = self.recursive_slice(m, dp as u32, d1);
                let right = self.recursive_slice(r, dpp as u32, d2);
                for f in left.rows() {
                    for g in right.rows() {
                        let mut v = Vec::with_capacity(ncols);
                        for a in f {
                            for b in g {
                                v.push(a.clone() * b.clone());
                            }
                        }
                        span.insert(v);
                    }
                }
            }
            Arc::new(span)
        })
    }

    /// `F^d(V_n)_degree` by the recursive characterisation.
    fn recursive_slice(&self, n: &DimVec, d: u32, degree: u32) -> Arc<Echelon<C>> {
        cached(&self.recursive, &(n.clone(), d, degree), || Arc::new(self.compute_recursive_slice(n, d, degree)))
    }

    fn compute_recursive_slice(&self, n: &DimVec, d: u32, degree: u32) -> Echelon<C> {
        let basis = self.sym_basis(n, degree);
        let ncols = basis.len();
        let elements: Vec<Polynomial<C>> = (0..ncols).map(|k| basis.element(k)).collect();
        let mut rows: Vec<Vec<C>> = Vec::new();

        let Some(tmax) = half_floor(d as i64 - 1) else {
            return Echelon::new(ncols);
        };
        let mut a1 = BTreeMap::new();
        for (k, e) in elements.iter().enumerate() {
            collect_rows(&mut a1, ncols, k, &act_shift(e), |m| m.degree_in(Var::is_aux) > tmax);
        }
        rows.extend(a1.into_values());

        for m in n.nonzero_below() {
            if &m == n {
                continue;
            }
            let r = n.checked_sub(&m).expect("m <= n");
            let big_d = d as i64 - 2 * self.euler(&m, &r);
            if big_d < 2 {
                return Echelon::new(ncols);
            }
            for d1 in 0..=degree {
                let d2 = degree - d1;
                let w = self.tensor_span(&m, &r, big_d, d1, d2);
                if w.ncols() == 0 {
                    continue;
                }
                let mut block = vec![vec![C::zero(); ncols]; w.ncols()];
                for (k, e) in elements.iter().enumerate() {
                    let mut v = self.tensor_coords(e, &m, &r, d1, d2);
                    w.reduce(&mut v);
                    for (t, x) in v.into_iter().enumerate() {
                        block[t][k] = x;
                    }
                }
                rows.extend(block);
            }
        }
        solve(ncols, rows)
    }

    /// `F^d(V_n)_degree` by the recursive characterisation, as a subspace.
    pub fn subspace_recursive(&self, n: &DimVec, d: u32, degree: u32) -> Result<GradedSubspace<C>, Error> {
        self.check_query(n, d as i64)?;
        let span = (*self.recursive_slice(n, d, degree)).clone();
        Ok(GradedSubspace::new(n.clone(), degree, Some(d), self.sym_basis(n, degree), span))
    }

    /// Membership by the recursive characterisation.
    pub fn member_recursive(&self, e: &ShuffleElement<C>, d: i64) -> Result<bool, Error> {
        let n = e.n();
        self.check_query(n, d)?;
        if e.is_zero() {
            return Ok(true);
        }
        if !act_shift(e.poly()).degree_in(Var::is_aux).twice_at_most(d - 1) {
            return Ok(false);
        }
        let pieces: Vec<(u32, Polynomial<C>)> = e
            .poly()
            .split_params()
            .into_values()
            .flat_map(|q| q.components_by(|v| v.is_z()).into_iter())
            .collect();
        for m in n.nonzero_below() {
            if &m == n {
                continue;
            }
            let r = n.checked_sub(&m).expect("m <= n");
            let big_d = d - 2 * self.euler(&m, &r);
            if big_d < 2 {
                return Ok(false);
            }
            for (degree, q) in &pieces {
                for d1 in 0..=*degree {
                    let d2 = degree - d1;
                    let w = self.tensor_span(&m, &r, big_d, d1, d2);
                    if !w.contains(&self.tensor_coords(q, &m, &r, d1, d2)) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}
