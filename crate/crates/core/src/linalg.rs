//! Exact linear algebra over a field.

use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// A subspace of `F^ncols` kept in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<F> {
    ncols: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Scalar> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<I: IntoIterator<Item = Vec<F>>>(ncols: usize, rows: I) -> Self {
        let mut e = Self::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rows sorted by pivot column, each with pivot entry 1.
    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Eliminates the pivot columns of `v`.
    pub fn reduce(&self, v: &mut [F]) {
        assert_eq!(v.len(), self.ncols, "vector length does not match the ambient space");
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - c.clone() * r.clone();
                }
            }
        }
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<F>) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = F::one() / v[p].clone();
        for x in v.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x = x.clone() - c.clone() * r.clone();
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Basis of the solutions of `A x = 0` where `A` has the stored rows.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| self.pivots.binary_search(c).is_err()) {
            let mut x = vec![F::zero(); self.ncols];
            x[free] = F::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                x[p] = -row[free].clone();
            }
            out.push(x);
        }
        out
    }
}

/// Rank of a matrix.
pub fn rank<F: Scalar>(ncols: usize, rows: &[Vec<F>]) -> usize {
    Echelon::from_rows(ncols, rows.iter().cloned()).rank()
}

/// Rank over the fraction field of a polynomial ring, by fraction-free
/// elimination with exact division.
pub fn fraction_free_rank<F: Scalar>(mut m: Vec<Vec<Polynomial<F>>>) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = Polynomial::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in r + 1..nrows {
            let f = m[i][c].clone();
            let (top, bottom) = m.split_at_mut(i);
            for (x, y) in bottom[0][c..ncols].iter_mut().zip(&top[r][c..ncols]) {
                let v = &(&piv * &*x) - &(&f * y);
                *x = v.exact_div(&prev).expect("fraction-free elimination divides exactly");
            }
        }
        prev = piv;
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;
    use crate::scalar::{Gf, Rational};
    use proptest::prelude::*;

    fn q(k: i64) -> Rational {
        Rational::from_integer(k.into())
    }

    #[test]
    fn nullspace_of_small_matrix() {
        let e = Echelon::from_rows(3, vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]);
        assert_eq!(e.rank(), 1);
        let ns = e.nullspace();
        assert_eq!(ns.len(), 2);
        for x in ns {
            assert_eq!(x[0].clone() + q(2) * x[1].clone() + q(3) * x[2].clone(), q(0));
        }
    }

    #[test]
    fn finite_field_rank() {
        let one = Gf::<2>::new(1);
        let zero = Gf::<2>::new(0);
        let rows = vec![vec![one, one], vec![one, one], vec![zero, one]];
        assert_eq!(rank(2, &rows), 2);
    }

    #[test]
    fn fraction_free_rank_detects_generic_rank() {
        type P = Polynomial<Rational>;
        let u = P::var(Var::param("u"));
        let one = P::one();
        let m = vec![vec![u.clone(), one.clone()], vec![&u * &u, u.clone()]];
        assert_eq!(fraction_free_rank(m), 1);
        let m = vec![vec![u.clone(), one.clone()], vec![one.clone(), u.clone()]];
        assert_eq!(fraction_free_rank(m), 2);
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 0..6)) {
            let rows: Vec<Vec<Rational>> = rows.into_iter().map(|r| r.into_iter().map(q).collect()).collect();
            let e = Echelon::from_rows(4, rows.clone());
            let ns = e.nullspace();
            prop_assert_eq!(e.rank() + ns.len(), 4);
            for x in &ns {
                for r in &rows {
                    let dot = r.iter().zip(x).fold(q(0), |acc, (a, b)| acc + a.clone() * b.clone());
                    prop_assert_eq!(dot, q(0));
                }
            }
            for r in &rows {
                prop_assert!(e.contains(r));
            }
        }
    }
}
