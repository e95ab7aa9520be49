//! Wheel conditions for tripled kernels, the spherical subalgebra, and the
//! comparison of `F^1 ∩ S` with Kac polynomials at `q = 1`.
//!
//! For vertices `i, j`, slots `a != c` of colour `i` and `b` of colour `j`
//! (distinct from `a`, `c` when `i = j`), substituting `z[i,a] -> z[i,c] + hbar`
//! must leave a polynomial divisible by
//!
//! `prod_{e: i->j} (z[j,b] - z[i,c] - u_e) * prod_{e: j->i} (z[j,b] - z[i,c] - hbar + u_e)`
//!
//! over the original arrows. Elements are colour-symmetric, so one slot
//! pattern per pair `(i, j)` decides all of them.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dimvec::DimVec;
use crate::error::Error;
use crate::filtration::Filtration;
use crate::kac;
use crate::kernel::{KernelMode, ZetaKernel};
use crate::linalg::{fraction_free_rank, Echelon};
use crate::poly::{Monomial, Polynomial, Symbol, Var};
use crate::scalar::{Rational, Scalar};
use crate::shuffle::{ShuffleAlgebra, ShuffleElement};

/// One wheel condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WheelInstance<C> {
    pub i: usize,
    pub j: usize,
    pub a: u32,
    pub c: u32,
    pub b: u32,
    pub divisor: Polynomial<C>,
}

fn require_tripled<C: Scalar>(k: &ZetaKernel<C>) -> Result<(), Error> {
    if k.mode() != KernelMode::Tripled {
        return Err(Error::NotTripled);
    }
    Ok(())
}

fn divisor<C: Scalar>(k: &ZetaKernel<C>, i: usize, j: usize, c: u32, b: u32) -> Option<Polynomial<C>> {
    let diff = &Polynomial::z(j, b as usize) - &Polynomial::z(i, c as usize);
    let h = k.hbar_poly();
    let mut acc = Polynomial::one();
    let mut any = false;
    for e in k.quiver().original_arrows() {
        let u = k.label_poly(&e.label);
        if e.source == i && e.target == j {
            acc = &acc * &(&diff - &u);
            any = true;
        }
        if e.source == j && e.target == i {
            acc = &acc * &(&(&diff - &h) + &u);
            any = true;
        }
    }
    any.then_some(acc)
}

/// Wheel conditions on `V_n`: all slot patterns, or one per `(i, j)`.
pub fn instances<C: Scalar>(k: &ZetaKernel<C>, n: &DimVec, representatives: bool) -> Result<Vec<WheelInstance<C>>, Error> {
    require_tripled(k)?;
    k.check_dim(n)?;
    let nv = k.vertex_count();
    let mut out = Vec::new();
    for i in 0..nv {
        for j in 0..nv {
            'pair: for a in 1..=n[i] {
                for c in 1..=n[i] {
                    if a == c {
                        continue;
                    }
                    for b in 1..=n[j] {
                        if i == j && (b == a || b == c) {
                            continue;
                        }
                        if let Some(divisor) = divisor(k, i, j, c, b) {
                            out.push(WheelInstance { i, j, a, c, b, divisor });
                            if representatives {
                                break 'pair;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn substituted<C: Scalar>(k: &ZetaKernel<C>, p: &Polynomial<C>, w: &WheelInstance<C>) -> Polynomial<C> {
    let target = Var::z(w.i, w.a as usize);
    let image = &Polynomial::z(w.i, w.c as usize) + &k.hbar_poly();
    p.substitute(|v| (v == target).then(|| image.clone()))
}

fn member_with<C: Scalar>(k: &ZetaKernel<C>, e: &ShuffleElement<C>, all: bool) -> Result<bool, Error> {
    for w in instances(k, e.n(), !all)? {
        if !substituted(k, e.poly(), &w).rem(&w.divisor).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `e` satisfies the wheel conditions.
pub fn wheel_member<C: Scalar>(k: &ZetaKernel<C>, e: &ShuffleElement<C>) -> Result<bool, Error> {
    member_with(k, e, false)
}

/// The same test over every slot pattern.
pub fn wheel_member_exhaustive<C: Scalar>(k: &ZetaKernel<C>, e: &ShuffleElement<C>) -> Result<bool, Error> {
    member_with(k, e, true)
}

/// Rows of the linear wheel conditions on a family of elements of `V_n`,
/// with entries in the parameter ring.
fn condition_rows<C: Scalar>(k: &ZetaKernel<C>, n: &DimVec, columns: &[Polynomial<C>]) -> Result<Vec<Vec<Polynomial<C>>>, Error> {
    let mut rows: BTreeMap<(usize, Monomial), Vec<Polynomial<C>>> = BTreeMap::new();
    let ncols = columns.len();
    for (t, w) in instances(k, n, true)?.iter().enumerate() {
        for (col, p) in columns.iter().enumerate() {
            let r = substituted(k, p, w).rem(&w.divisor);
            for (m, c) in r.terms() {
                let (params, rest) = m.split(Var::is_param);
                let entry = rows.entry((t, rest)).or_insert_with(|| vec![Polynomial::zero(); ncols]);
                entry[col].add_term(params, c.clone());
            }
        }
    }
    Ok(rows.into_values().collect())
}

/// Dimension of the solution space of the wheel conditions on a span,
/// over the fraction field of the parameter ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WheelRank {
    pub columns: usize,
    /// Solution dimensions at the two specialisations that were compared.
    pub specialized: [usize; 2],
    /// Set when the specialisations disagreed and exact elimination ran.
    pub exact: Option<usize>,
    /// The dimension.
    pub dim: usize,
}

fn rank_at<C: Scalar>(rows: &[Vec<Polynomial<C>>], ncols: usize, point: &HashMap<Symbol, C>) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r.iter().map(|p| p.specialize(point).constant_term()).collect());
    }
    e.rank()
}

fn random_point<C: Scalar, R: Rng>(params: &[Symbol], rng: &mut R) -> HashMap<Symbol, C> {
    params.iter().map(|&s| (s, C::from_int(rng.gen_range(2..100_000)))).collect()
}

/// Solves the wheel conditions on the span of `columns`, which must be
/// linearly independent. Parameters are specialised twice at random points
/// from `seed`; after three disagreeing attempts an exact fraction-free
/// elimination decides.
pub fn solution_rank<C: Scalar>(
    k: &ZetaKernel<C>,
    n: &DimVec,
    columns: &[Polynomial<C>],
    seed: u64,
) -> Result<WheelRank, Error> {
    let ncols = columns.len();
    let rows = condition_rows(k, n, columns)?;
    let params: Vec<Symbol> = k.params().into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = [0, 0];
    for _ in 0..3 {
        let p1 = random_point(&params, &mut rng);
        let p2 = random_point(&params, &mut rng);
        let r1 = rank_at(&rows, ncols, &p1);
        let r2 = rank_at(&rows, ncols, &p2);
        last = [ncols - r1, ncols - r2];
        if r1 == r2 {
            return Ok(WheelRank { columns: ncols, specialized: last, exact: None, dim: ncols - r1 });
        }
    }
    let r = fraction_free_rank(rows);
    Ok(WheelRank { columns: ncols, specialized: last, exact: Some(ncols - r), dim: ncols - r })
}

/// `S ∩ V_{n,degree}`.
pub fn wheel_subspace<C: Scalar>(k: &ZetaKernel<C>, n: &DimVec, degree: u32, seed: u64) -> Result<WheelRank, Error> {
    let b = crate::symmetric::SymBasis::new(n, degree);
    let cols: Vec<Polynomial<C>> = (0..b.len()).map(|t| b.element(t)).collect();
    solution_rank(k, n, &cols, seed)
}

/// Products of spherical generators grouped by `(n, total degree)`.
#[derive(Clone, Debug)]
pub struct SphericalSlice<C> {
    pub n: DimVec,
    pub degree: u32,
    /// A maximal independent subset of the products, in input order.
    pub elements: Vec<ShuffleElement<C>>,
}

impl<C: Scalar> SphericalSlice<C> {
    pub fn rank(&self) -> usize {
        self.elements.len()
    }
}

/// The product `z^{d_1}_{i_1} * ... * z^{d_r}_{i_r}` for a word of
/// `(vertex, degree)` pairs.
pub fn spherical_product<C: Scalar>(alg: &ShuffleAlgebra<C>, word: &[(usize, u32)]) -> Result<ShuffleElement<C>, Error> {
    let nv = alg.kernel().vertex_count();
    let (&(v0, d0), rest) = word.split_first().ok_or_else(|| Error::Precondition("empty spherical word".into()))?;
    for &(v, _) in word {
        if v >= nv {
            return Err(Error::Precondition(format!("vertex index {} out of range", v + 1)));
        }
    }
    let mut acc = alg.spherical(v0, d0);
    for &(v, d) in rest {
        acc = alg.product(&acc, &alg.spherical(v, d))?;
    }
    Ok(acc)
}

/// Reduced spans of spherical products, one slice per `(n, degree)`.
/// Independence is decided at a random specialisation of the parameters.
pub fn spherical_span<C: Scalar>(alg: &ShuffleAlgebra<C>, words: &[Vec<(usize, u32)>], seed: u64) -> Result<Vec<SphericalSlice<C>>, Error> {
    let params: Vec<Symbol> = alg.kernel().params().into_iter().collect();
    let point: HashMap<Symbol, C> = random_point(&params, &mut ChaCha8Rng::seed_from_u64(seed));
    type Group<C> = (Vec<ShuffleElement<C>>, Vec<Polynomial<C>>);
    let mut groups: BTreeMap<(DimVec, u32), Group<C>> = BTreeMap::new();
    for w in words {
        let p = spherical_product(alg, w)?;
        if p.is_zero() {
            continue;
        }
        let crate::poly::Degree::Finite(deg) = p.poly().total_degree() else { continue };
        let entry = groups.entry((p.n().clone(), deg)).or_default();
        let q = p.poly().specialize(&point);
        if q.is_zero() {
            continue;
        }
        let mut all = entry.1.clone();
        all.push(q.clone());
        if independent_rank(&all) == all.len() {
            entry.0.push(p);
            entry.1.push(q);
        }
    }
    Ok(groups
        .into_iter()
        .map(|((n, degree), (elements, _))| SphericalSlice { n, degree, elements })
        .collect())
}

fn independent_rank<C: Scalar>(polys: &[Polynomial<C>]) -> usize {
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let len = index.len();
            index.entry(m.clone()).or_insert(len);
        }
    }
    let mut e = Echelon::new(index.len());
    for p in polys {
        let mut v = vec![C::zero(); index.len()];
        for (m, c) in p.terms() {
            v[index[m]] = c.clone();
        }
        e.insert(v);
    }
    e.rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Inconsistent,
    /// The Kac value could not be computed.
    Unavailable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "inconsistent",
            Verdict::Unavailable => "unavailable",
        }
    }
}

/// Comparison of `F^1 ∩ S` with `A_{Q,n}(1)` for one dimension vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureRow {
    pub n: DimVec,
    /// `(degree, dim F^1(V_n)_degree, dim (F^1 ∩ S)_degree)`.
    pub slices: Vec<(u32, usize, usize)>,
    /// Dimension of `F^1 ∩ S` on the whole degree window.
    pub joint: WheelRank,
    pub kac_at_one: Option<Rational>,
    pub note: Option<String>,
    pub verdict: Verdict,
}

/// Reports, for every nonzero `n <= n_max`, the rank of `F^1 ∩ S` on degrees
/// `0..=deg_max` next to `A_{Q,n}(1)` for the original quiver. The verdict
/// uses the joint rank over the window. Nothing here is asserted.
pub fn conjecture_report(
    filt: &Filtration<Rational>,
    n_max: &DimVec,
    deg_max: u32,
    seed: u64,
    kac_limit: u128,
) -> Result<Vec<ConjectureRow>, Error> {
    let k = filt.algebra().kernel();
    require_tripled(k)?;
    k.check_dim(n_max)?;
    let original = k.quiver().original();
    let mut out = Vec::new();
    for n in n_max.nonzero_below() {
        let mut slices = Vec::new();
        let mut joint_cols = Vec::new();
        for degree in 0..=deg_max {
            let f1 = filt.subspace(&n, 1, degree)?;
            let cols: Vec<Polynomial<Rational>> = f1.elements().into_iter().map(|e| e.into_poly()).collect();
            let r = solution_rank(k, &n, &cols, seed)?;
            slices.push((degree, cols.len(), r.dim));
            joint_cols.extend(cols);
        }
        let joint = solution_rank(k, &n, &joint_cols, seed)?;
        let (kac_at_one, note) = match kac::kac_polynomial(&original, &n, kac_limit) {
            Ok((coeffs, _)) => (Some(kac::evaluate(&coeffs, &Rational::from_integer(1.into()))), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let verdict = match &kac_at_one {
            None => Verdict::Unavailable,
            Some(a) if *a == Rational::from_integer((joint.dim as i64).into()) => Verdict::Consistent,
            Some(_) => Verdict::Inconsistent,
        };
        out.push(ConjectureRow { n, slices, joint, kac_at_one, note, verdict });
    }
    Ok(out)
}
