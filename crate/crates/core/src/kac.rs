//! Counting absolutely indecomposable representations over `F_q`.
//!
//! Isomorphism classes are found by sweeping `GL_n(F_q)`-orbits on the
//! representation space. A representation is indecomposable when its
//! endomorphism algebra has no idempotents besides 0 and 1, and absolutely
//! indecomposable when moreover the residue field of that local algebra is
//! `F_q`, i.e. its radical (the nilpotent endomorphisms) has `q^(e-1)`
//! elements for `e = dim End`.

use num_traits::{One, Zero};

use crate::dimvec::DimVec;
use crate::error::Error;
use crate::linalg::Echelon;
use crate::quiver::Quiver;
use crate::scalar::{Gf, Rational, Scalar};

/// Default cap on enumeration work.
pub const DEFAULT_LIMIT: u128 = 2_000_000_000;

pub trait FiniteField: Scalar + Copy {
    const ORDER: u32;
    fn from_index(k: u32) -> Self;
    fn to_index(self) -> u32;
}

impl<const Q: u8> FiniteField for Gf<Q> {
    const ORDER: u32 = Q as u32;
    fn from_index(k: u32) -> Self {
        Gf::new(k as u8)
    }
    fn to_index(self) -> u32 {
        self.index() as u32
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: FiniteField> Mat<F> {
    fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    fn at(&self, i: usize, j: usize) -> F {
        self.data[i * self.cols + j]
    }

    fn mul(&self, o: &Mat<F>) -> Mat<F> {
        let mut out = Self::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i * o.cols + j] = out.data[i * o.cols + j] + a * o.at(k, j);
                }
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn inverse(&self) -> Option<Mat<F>> {
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.at(r, c).is_zero())?;
            for j in 0..n {
                a.data.swap(c * n + j, p * n + j);
                inv.data.swap(c * n + j, p * n + j);
            }
            let s = F::one() / a.at(c, c);
            for j in 0..n {
                a.data[c * n + j] = a.data[c * n + j] * s;
                inv.data[c * n + j] = inv.data[c * n + j] * s;
            }
            for r in 0..n {
                if r == c || a.at(r, c).is_zero() {
                    continue;
                }
                let f = a.at(r, c);
                for j in 0..n {
                    a.data[r * n + j] = a.data[r * n + j] - f * a.data[c * n + j];
                    inv.data[r * n + j] = inv.data[r * n + j] - f * inv.data[c * n + j];
                }
            }
        }
        Some(inv)
    }
}

/// `|GL_n(F_q)|`.
fn gl_order(n: u32, q: u128) -> u128 {
    let qn = q.pow(n);
    (0..n).map(|k| qn - q.pow(k)).product()
}

fn all_matrices<F: FiniteField>(rows: usize, cols: usize) -> impl Iterator<Item = Mat<F>> {
    let q = F::ORDER as u64;
    let total = q.pow((rows * cols) as u32);
    (0..total).map(move |mut k| {
        let mut m = Mat::zero(rows, cols);
        for x in m.data.iter_mut() {
            *x = F::from_index((k % q) as u32);
            k /= q;
        }
        m
    })
}

/// A representation: one matrix `n_t x n_s` per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFieldRep<F> {
    n: DimVec,
    maps: Vec<Mat<F>>,
}

/// Counts of isomorphism classes for one `(n, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KacCount {
    pub q: u32,
    pub n: DimVec,
    pub classes: u64,
    pub indecomposable: u64,
    pub absolutely_indecomposable: u64,
}

struct Layout {
    arrows: Vec<(usize, usize)>,
    n: DimVec,
}

impl Layout {
    fn decode<F: FiniteField>(&self, mut k: u128) -> FiniteFieldRep<F> {
        let q = F::ORDER as u128;
        let maps = self
            .arrows
            .iter()
            .map(|&(s, t)| {
                let mut m = Mat::zero(self.n[t] as usize, self.n[s] as usize);
                for x in m.data.iter_mut() {
                    *x = F::from_index((k % q) as u32);
                    k /= q;
                }
                m
            })
            .collect();
        FiniteFieldRep { n: self.n.clone(), maps }
    }

    fn encode<F: FiniteField>(&self, r: &FiniteFieldRep<F>) -> u128 {
        let q = F::ORDER as u128;
        let mut k = 0u128;
        for m in r.maps.iter().rev() {
            for x in m.data.iter().rev() {
                k = k * q + x.to_index() as u128;
            }
        }
        k
    }
}

/// Representatives of the isomorphism classes of `n`-dimensional
/// representations, each the smallest encoding in its orbit.
pub fn iso_classes<F: FiniteField>(quiver: &Quiver, n: &DimVec, limit: u128) -> Result<Vec<FiniteFieldRep<F>>, Error> {
    if n.len() != quiver.vertex_count() {
        return Err(Error::WrongVertexCount { expected: quiver.vertex_count(), got: n.clone() });
    }
    let q = F::ORDER as u128;
    let layout = Layout { arrows: quiver.arrows().iter().map(|a| (a.source, a.target)).collect(), n: n.clone() };
    let entries: u32 = layout.arrows.iter().map(|&(s, t)| n[s] * n[t]).sum();
    let total = q.checked_pow(entries).unwrap_or(u128::MAX);
    let group: u128 = (0..n.len()).map(|i| gl_order(n[i], q)).product();
    if total > limit || group > limit || total > (1 << 28) {
        return Err(Error::SizeGuard { estimate: total.saturating_mul(group), limit });
    }

    let mut per_vertex: Vec<Vec<(Mat<F>, Mat<F>)>> = Vec::new();
    for i in 0..n.len() {
        let k = n[i] as usize;
        per_vertex.push(all_matrices::<F>(k, k).filter_map(|g| g.inverse().map(|h| (g, h))).collect());
    }

    let mut visited = vec![false; total as usize];
    let mut reps = Vec::new();
    let mut work: u128 = 0;
    for start in 0..total {
        if visited[start as usize] {
            continue;
        }
        work += group;
        if work > limit {
            return Err(Error::SizeGuard { estimate: work.saturating_mul(total) / (start + 1), limit });
        }
        let rep = layout.decode::<F>(start);
        let mut idx = vec![0usize; n.len()];
        loop {
            let maps = rep
                .maps
                .iter()
                .zip(&layout.arrows)
                .map(|(m, &(s, t))| per_vertex[t][idx[t]].0.mul(m).mul(&per_vertex[s][idx[s]].1))
                .collect();
            let k = layout.encode(&FiniteFieldRep { n: n.clone(), maps });
            visited[k as usize] = true;
            let mut v = 0;
            while v < n.len() {
                idx[v] += 1;
                if idx[v] < per_vertex[v].len() {
                    break;
                }
                idx[v] = 0;
                v += 1;
            }
            if v == n.len() {
                break;
            }
        }
        reps.push(rep);
    }
    Ok(reps)
}

/// Basis of `End(rep)` as tuples of vertex matrices.
fn endomorphisms<F: FiniteField>(quiver: &Quiver, rep: &FiniteFieldRep<F>) -> Vec<Vec<Mat<F>>> {
    let n = &rep.n;
    let mut offset = vec![0usize; n.len() + 1];
    for i in 0..n.len() {
        offset[i + 1] = offset[i] + (n[i] * n[i]) as usize;
    }
    let nvars = offset[n.len()];
    let var = |i: usize, r: usize, c: usize| offset[i] + r * n[i] as usize + c;
    let mut eqs = Echelon::new(nvars);
    for (a, m) in quiver.arrows().iter().zip(&rep.maps) {
        let (s, t) = (a.source, a.target);
        for r in 0..n[t] as usize {
            for c in 0..n[s] as usize {
                let mut row = vec![F::zero(); nvars];
                for k in 0..n[t] as usize {
                    row[var(t, r, k)] = row[var(t, r, k)] + m.at(k, c);
                }
                for k in 0..n[s] as usize {
                    row[var(s, k, c)] = row[var(s, k, c)] - m.at(r, k);
                }
                eqs.insert(row);
            }
        }
    }
    eqs.nullspace()
        .into_iter()
        .map(|x| {
            (0..n.len())
                .map(|i| {
                    let k = n[i] as usize;
                    Mat { rows: k, cols: k, data: x[offset[i]..offset[i + 1]].to_vec() }
                })
                .collect()
        })
        .collect()
}

/// `(indecomposable, absolutely indecomposable)`.
fn classify<F: FiniteField>(quiver: &Quiver, rep: &FiniteFieldRep<F>, limit: u128) -> Result<(bool, bool), Error> {
    if rep.n.is_zero() {
        return Ok((false, false));
    }
    let basis = endomorphisms(quiver, rep);
    let e = basis.len() as u32;
    let q = F::ORDER as u128;
    let size = q.pow(e);
    if size > limit {
        return Err(Error::SizeGuard { estimate: size, limit });
    }
    let nv = rep.n.len();
    let mut nilpotent = 0u128;
    let mut coeffs = vec![0u32; e as usize];
    for _ in 0..size {
        let phi: Vec<Mat<F>> = (0..nv)
            .map(|i| {
                let k = rep.n[i] as usize;
                let mut m = Mat::zero(k, k);
                for (c, b) in coeffs.iter().zip(&basis) {
                    if *c == 0 {
                        continue;
                    }
                    let f = F::from_index(*c);
                    for (x, y) in m.data.iter_mut().zip(&b[i].data) {
                        *x = *x + f * *y;
                    }
                }
                m
            })
            .collect();
        let square: Vec<Mat<F>> = phi.iter().map(|m| m.mul(m)).collect();
        let zero = phi.iter().all(Mat::is_zero);
        let one = phi.iter().enumerate().all(|(i, m)| *m == Mat::identity(rep.n[i] as usize));
        if square == phi && !zero && !one {
            return Ok((false, false));
        }
        let nil = phi.iter().enumerate().all(|(i, m)| {
            let mut p = Mat::identity(rep.n[i] as usize);
            for _ in 0..rep.n[i] {
                p = p.mul(m);
            }
            p.is_zero()
        });
        if nil {
            nilpotent += 1;
        }
        for c in coeffs.iter_mut() {
            *c += 1;
            if *c < F::ORDER {
                break;
            }
            *c = 0;
        }
    }
    Ok((true, nilpotent == q.pow(e - 1)))
}

pub fn count_with<F: FiniteField>(quiver: &Quiver, n: &DimVec, limit: u128) -> Result<KacCount, Error> {
    let classes = iso_classes::<F>(quiver, n, limit)?;
    let mut indec = 0;
    let mut abs = 0;
    for r in &classes {
        let (i, a) = classify(quiver, r, limit)?;
        indec += i as u64;
        abs += a as u64;
    }
    Ok(KacCount {
        q: F::ORDER,
        n: n.clone(),
        classes: classes.len() as u64,
        indecomposable: indec,
        absolutely_indecomposable: abs,
    })
}

/// Counts over `F_q` for `q` in {2, 3, 4, 5}.
pub fn abs_indec_count(quiver: &Quiver, n: &DimVec, q: u32, limit: u128) -> Result<KacCount, Error> {
    match q {
        2 => count_with::<Gf<2>>(quiver, n, limit),
        3 => count_with::<Gf<3>>(quiver, n, limit),
        4 => count_with::<Gf<4>>(quiver, n, limit),
        5 => count_with::<Gf<5>>(quiver, n, limit),
        _ => Err(Error::UnsupportedField(q)),
    }
}

/// `<n, n> = sum n_i^2 - sum_a n_s(a) n_t(a)`.
pub fn tits_form(quiver: &Quiver, n: &DimVec) -> i64 {
    let sq: i64 = n.as_slice().iter().map(|&x| (x as i64).pow(2)).sum();
    let ar: i64 = quiver.arrows().iter().map(|a| n[a.source] as i64 * n[a.target] as i64).sum();
    sq - ar
}

/// Bound `max(0, 1 - <n,n>)` on the degree of the Kac polynomial.
pub fn degree_bound(quiver: &Quiver, n: &DimVec) -> u32 {
    (1 - tits_form(quiver, n)).max(0) as u32
}

/// The interpolating polynomial through `(x_k, y_k)`, coefficients from
/// the constant term up.
pub fn lagrange(points: &[(Rational, Rational)]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); points.len()];
    for (k, (xk, yk)) in points.iter().enumerate() {
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if j == k {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (t, c) in basis.iter().enumerate() {
                next[t + 1] += c.clone();
                next[t] -= c.clone() * xj.clone();
            }
            basis = next;
            denom *= xk.clone() - xj.clone();
        }
        let scale = yk.clone() / denom;
        for (o, c) in out.iter_mut().zip(basis) {
            *o += c * scale.clone();
        }
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

pub fn evaluate(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x.clone() + c.clone())
}

/// The Kac polynomial `A_{Q,n}(q)` interpolated from counts at the smallest
/// field orders needed by the degree bound.
pub fn kac_polynomial(quiver: &Quiver, n: &DimVec, limit: u128) -> Result<(Vec<Rational>, Vec<KacCount>), Error> {
    let needed = degree_bound(quiver, n) as usize + 1;
    let orders = [2u32, 3, 4, 5];
    if needed > orders.len() {
        return Err(Error::Precondition(format!(
            "the Kac polynomial of {n} may have degree {}, more than the supported field orders determine",
            needed - 1
        )));
    }
    let counts: Vec<KacCount> =
        orders[..needed].iter().map(|&q| abs_indec_count(quiver, n, q, limit)).collect::<Result<_, _>>()?;
    let points: Vec<(Rational, Rational)> = counts
        .iter()
        .map(|c| (Rational::from_integer(c.q.into()), Rational::from_integer(c.absolutely_indecomposable.into())))
        .collect();
    Ok((lagrange(&points), counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{a2_quiver, loop_quiver};

    fn one(n: u32) -> DimVec {
        DimVec::new(vec![n])
    }

    #[test]
    fn loops_in_dimension_one() {
        for g in 0..3 {
            for q in [2u32, 3, 4, 5] {
                let c = abs_indec_count(&loop_quiver(g), &one(1), q, DEFAULT_LIMIT).unwrap();
                assert_eq!(c.absolutely_indecomposable, (q as u64).pow(g as u32));
                assert_eq!(c.classes, (q as u64).pow(g as u32));
            }
        }
    }

    #[test]
    fn jordan_dimension_two() {
        for q in [2u32, 3, 4] {
            let c = abs_indec_count(&loop_quiver(1), &one(2), q, DEFAULT_LIMIT).unwrap();
            assert_eq!(c.absolutely_indecomposable, q as u64);
            let irreducible_quadratics = (q * q - q) / 2;
            assert_eq!(c.indecomposable, (q + irreducible_quadratics) as u64);
            assert_eq!(c.classes, (q * q + q) as u64);
        }
    }

    #[test]
    fn a2_counts() {
        let q = a2_quiver();
        let c = abs_indec_count(&q, &DimVec::new(vec![1, 1]), 2, DEFAULT_LIMIT).unwrap();
        assert_eq!((c.classes, c.absolutely_indecomposable), (2, 1));
        let c = abs_indec_count(&q, &DimVec::new(vec![2, 1]), 3, DEFAULT_LIMIT).unwrap();
        assert_eq!(c.absolutely_indecomposable, 0);
    }

    #[test]
    fn interpolation() {
        let (p, _) = kac_polynomial(&loop_quiver(2), &one(1), DEFAULT_LIMIT).unwrap();
        assert_eq!(p, vec![Rational::zero(), Rational::zero(), Rational::one()]);
        let (p, _) = kac_polynomial(&loop_quiver(0), &one(2), DEFAULT_LIMIT).unwrap();
        assert!(p.is_empty());
    }

    #[test]
    fn guards() {
        assert!(matches!(abs_indec_count(&loop_quiver(1), &one(2), 7, DEFAULT_LIMIT), Err(Error::UnsupportedField(7))));
        assert!(matches!(abs_indec_count(&loop_quiver(3), &one(3), 5, DEFAULT_LIMIT), Err(Error::SizeGuard { .. })));
    }
}
