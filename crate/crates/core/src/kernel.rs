//! Zeta kernels `zeta_ij(x) = N_ij(x) / x^delta_ij` and the Euler form.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::dimvec::DimVec;
use crate::error::Error;
use crate::poly::{hbar, Degree, Monomial, Polynomial, Symbol, Var};
use crate::quiver::{ArrowRole, ParamLabel, Quiver, QuiverKind};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelMode {
    /// `prod_{a: i->j} (-x + u_a) / (-x)^delta_ij` over all arrows.
    ZeroPotential,
    /// `((x - hbar)/x)^delta_ij prod_{a: i->j} (-x - u_a) prod_{a: j->i} (-x - hbar + u_a)`
    /// over the original arrows of a tripled quiver.
    Tripled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Torus {
    /// All parameters specialised to zero.
    Trivial,
    Generic,
}

#[derive(Debug, PartialEq, Eq)]
struct Inner<C> {
    quiver: Quiver,
    mode: KernelMode,
    torus: Torus,
    /// `coeffs[i][j][k]` is the coefficient of `x^k` in `N_ij`.
    coeffs: Vec<Vec<Vec<Polynomial<C>>>>,
    sharp: Vec<Vec<i64>>,
}

/// A zeta kernel. Cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaKernel<C> {
    inner: Arc<Inner<C>>,
}

fn linear<C: Scalar>(x_coeff: i64, constant: Polynomial<C>) -> Polynomial<C> {
    &Polynomial::var(Var::X).scale(&C::from_int(x_coeff)) + &constant
}

impl<C: Scalar> ZetaKernel<C> {
    pub fn new(quiver: Quiver, mode: KernelMode, torus: Torus) -> Result<Self, Error> {
        let nv = quiver.vertex_count();
        let label = |l: &ParamLabel| -> Polynomial<C> {
            match torus {
                Torus::Trivial => Polynomial::zero(),
                Torus::Generic => l.poly(),
            }
        };
        let h: Polynomial<C> = label(&ParamLabel::hbar_multiple(1));
        let mut numerators = vec![vec![Polynomial::<C>::one(); nv]; nv];
        match mode {
            KernelMode::ZeroPotential => {
                quiver.check_symmetric()?;
                for a in quiver.arrows() {
                    let f = linear(-1, label(&a.label));
                    numerators[a.source][a.target] = &numerators[a.source][a.target] * &f;
                }
                for (i, row) in numerators.iter_mut().enumerate() {
                    row[i] = -&row[i];
                }
            }
            KernelMode::Tripled => {
                if quiver.kind() != QuiverKind::Tripled {
                    return Err(Error::NotTripled);
                }
                for a in quiver.arrows().iter().filter(|a| a.role == ArrowRole::Original) {
                    let (i, j) = (a.source, a.target);
                    let f = linear(-1, -label(&a.label));
                    numerators[i][j] = &numerators[i][j] * &f;
                    let g = linear(-1, &label(&a.label) - &h);
                    numerators[j][i] = &numerators[j][i] * &g;
                }
                for (i, row) in numerators.iter_mut().enumerate() {
                    row[i] = &row[i] * &linear(1, -h.clone());
                }
            }
        }
        let mut coeffs = vec![vec![Vec::new(); nv]; nv];
        let mut sharp = vec![vec![0i64; nv]; nv];
        for i in 0..nv {
            for j in 0..nv {
                let n = &numerators[i][j];
                let Degree::Finite(deg) = n.degree_in(|v| v == Var::X) else {
                    return Err(Error::KernelInvariant(format!("zero numerator at ({i},{j})")));
                };
                let mut cs = vec![Polynomial::zero(); deg as usize + 1];
                for (m, c) in n.terms() {
                    let e = m.exponent(Var::X);
                    let rest = Monomial::from_factors(m.factors().iter().copied().filter(|p| p.0 != Var::X));
                    cs[e as usize].add_term(rest, c.clone());
                }
                coeffs[i][j] = cs;
                sharp[i][j] = deg as i64 - (i == j) as i64;
            }
        }
        let k = ZetaKernel { inner: Arc::new(Inner { quiver, mode, torus, coeffs, sharp }) };
        k.check_invariants()?;
        Ok(k)
    }

    /// Checks `#_ij = #_ji`, `# >= -delta` and that the leading coefficient
    /// of `N_ij` is `(-1)^#_ij`.
    pub fn check_invariants(&self) -> Result<(), Error> {
        let nv = self.vertex_count();
        for i in 0..nv {
            for j in 0..nv {
                let s = self.sharp(i, j);
                if s != self.sharp(j, i) {
                    return Err(Error::KernelInvariant(format!("#_{{{i},{j}}} = {s} differs from #_{{{j},{i}}}")));
                }
                if s < -(self.delta(i, j) as i64) {
                    return Err(Error::KernelInvariant(format!("#_{{{i},{j}}} = {s} below -delta")));
                }
                let lead = self.inner.coeffs[i][j].last().expect("nonempty numerator");
                let expected = Polynomial::from_int(if s.rem_euclid(2) == 0 { 1 } else { -1 });
                if *lead != expected {
                    return Err(Error::KernelInvariant(format!("leading coefficient of N_{{{i},{j}}} is {lead}")));
                }
            }
        }
        Ok(())
    }

    pub fn quiver(&self) -> &Quiver {
        &self.inner.quiver
    }

    pub fn mode(&self) -> KernelMode {
        self.inner.mode
    }

    pub fn torus(&self) -> Torus {
        self.inner.torus
    }

    pub fn vertex_count(&self) -> usize {
        self.inner.quiver.vertex_count()
    }

    pub fn delta(&self, i: usize, j: usize) -> u32 {
        (i == j) as u32
    }

    pub fn sharp(&self, i: usize, j: usize) -> i64 {
        self.inner.sharp[i][j]
    }

    /// Coefficients of `N_ij` by power of `x`.
    pub fn numerator_coeffs(&self, i: usize, j: usize) -> &[Polynomial<C>] {
        &self.inner.coeffs[i][j]
    }

    /// `N_ij` as a polynomial in `x` and the parameters.
    pub fn numerator(&self, i: usize, j: usize) -> Polynomial<C> {
        self.numerator_at(i, j, &Polynomial::var(Var::X))
    }

    /// `N_ij(t)` by Horner's rule.
    pub fn numerator_at(&self, i: usize, j: usize, t: &Polynomial<C>) -> Polynomial<C> {
        let mut acc = Polynomial::zero();
        for c in self.inner.coeffs[i][j].iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    /// A parameter label under this kernel's torus.
    pub fn label_poly(&self, l: &ParamLabel) -> Polynomial<C> {
        match self.torus() {
            Torus::Trivial => Polynomial::zero(),
            Torus::Generic => l.poly(),
        }
    }

    pub fn hbar_poly(&self) -> Polynomial<C> {
        self.label_poly(&ParamLabel::hbar_multiple(1))
    }

    /// Parameters occurring in the kernel.
    pub fn params(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        for row in &self.inner.coeffs {
            for cs in row {
                for c in cs {
                    out.extend(c.params());
                }
            }
        }
        if self.mode() == KernelMode::Tripled && self.torus() == Torus::Generic {
            out.insert(hbar());
        }
        out
    }

    /// `(m, n) = -sum_{i,j} m_i n_j #_ij`.
    pub fn euler_form(&self, m: &DimVec, n: &DimVec) -> i64 {
        let nv = self.vertex_count();
        let mut s = 0;
        for i in 0..nv {
            for j in 0..nv {
                s += m[i] as i64 * n[j] as i64 * self.sharp(i, j);
            }
        }
        -s
    }

    pub fn check_dim(&self, n: &DimVec) -> Result<(), Error> {
        if n.len() != self.vertex_count() {
            return Err(Error::WrongVertexCount { expected: self.vertex_count(), got: n.clone() });
        }
        Ok(())
    }
}
