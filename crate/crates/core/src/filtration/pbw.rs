//! PBW check: ordered twisted products of BPS generators span `F^d`.
//!
//! Generators are `u^j b` for `b` in a basis of `F^1(V_m)_t`; such a
//! generator has weight `1 + 2j` and degree `t + j`. A monomial in
//! generators has degree `sum (t + j) - sum_{a<b} (m^a, m^b)` and weight the
//! sum of weights. Generators with odd `(m, m)` appear at most once.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{block_multisets, Filtration};
use crate::dimvec::DimVec;
use crate::error::Error;
use crate::linalg::Echelon;
use crate::poly::{Polynomial, Symbol};
use crate::scalar::Scalar;
use crate::shuffle::{ShuffleElement, SignTwist};

/// `u^power` applied to the `index`-th basis vector of `F^1(V_n)_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub n: DimVec,
    pub degree: u32,
    pub index: usize,
    pub power: u32,
}

impl Generator {
    pub fn weight(&self) -> u32 {
        1 + 2 * self.power
    }

    pub fn total_degree(&self) -> u32 {
        self.degree + self.power
    }
}

/// One cell `(n, delta, d)` of the check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwCell {
    pub n: DimVec,
    pub degree: u32,
    pub d: u32,
    /// `dim F^d(V_n)_delta`.
    pub dim: usize,
    /// Number of ordered monomials of weight at most `d`.
    pub monomials: usize,
    /// Rank of their products.
    pub rank: usize,
    /// Whether every product lies in `F^d`.
    pub contained: bool,
}

impl PbwCell {
    pub fn passed(&self) -> bool {
        self.contained && self.dim == self.monomials && self.dim == self.rank
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwReport {
    pub cells: Vec<PbwCell>,
    /// Whether parameters were specialised to compute ranks.
    pub specialized: bool,
}

impl PbwReport {
    pub fn passed(&self) -> bool {
        self.cells.iter().all(PbwCell::passed)
    }
}

/// Echelon form of polynomials over the monomials seen so far.
struct SpanBuilder<C> {
    columns: HashMap<crate::poly::Monomial, usize>,
    rows: Vec<Polynomial<C>>,
    echelon: Echelon<C>,
}

impl<C: Scalar> SpanBuilder<C> {
    fn new() -> Self {
        SpanBuilder { columns: HashMap::new(), rows: Vec::new(), echelon: Echelon::new(0) }
    }

    fn insert(&mut self, p: Polynomial<C>) {
        let before = self.columns.len();
        for (m, _) in p.terms() {
            let len = self.columns.len();
            self.columns.entry(m.clone()).or_insert(len);
        }
        self.rows.push(p);
        if self.columns.len() != before || self.rows.len() == 1 {
            self.echelon = Echelon::from_rows(self.columns.len(), self.rows.iter().map(|q| self.vector(q)));
        } else {
            let v = self.vector(self.rows.last().expect("just pushed"));
            self.echelon.insert(v);
        }
    }

    fn vector(&self, p: &Polynomial<C>) -> Vec<C> {
        let mut v = vec![C::zero(); self.columns.len()];
        for (m, c) in p.terms() {
            v[self.columns[m]] = c.clone();
        }
        v
    }
}

struct Monomial {
    n: DimVec,
    degree: u32,
    weight: u32,
    factors: Vec<usize>,
}

impl<C: Scalar> Filtration<C> {
    /// Runs the PBW check on every nonzero `n <= n_max`, `delta <= deg_max`
    /// and `1 <= d <= d_max`. Degrees of products count parameters; ranks are
    /// taken after specialising parameters at random integers drawn from
    /// `seed`.
    pub fn pbw_check(
        &self,
        twist: &SignTwist,
        n_max: &DimVec,
        deg_max: u32,
        d_max: u32,
        seed: u64,
    ) -> Result<PbwReport, Error> {
        self.algebra().kernel().check_dim(n_max)?;
        if d_max < 1 {
            return Err(Error::BadFiltrationIndex(d_max as i64));
        }
        let targets = n_max.nonzero_below();
        let max_pairs = targets
            .iter()
            .flat_map(|n| block_multisets(n).into_iter().map(|b| self.pair_sum(&b)))
            .max()
            .unwrap_or(0)
            .max(0) as u32;
        let gen_deg_max = deg_max + max_pairs;
        let max_power = (d_max - 1) / 2;

        let mut gens: Vec<Generator> = Vec::new();
        let mut gen_elements: Vec<ShuffleElement<C>> = Vec::new();
        for m in &targets {
            for t in 0..=gen_deg_max {
                let slice = self.subspace(m, 1, t)?;
                for (index, b) in slice.elements().into_iter().enumerate() {
                    let mut e = b;
                    for power in 0..=max_power.min(gen_deg_max - t) {
                        gens.push(Generator { n: m.clone(), degree: t, index, power });
                        gen_elements.push(e.clone());
                        e = self.algebra().u_operator(&e);
                    }
                }
            }
        }
        let odd: Vec<bool> = gens.iter().map(|g| self.euler(&g.n, &g.n).rem_euclid(2) == 1).collect();

        let mut monomials: Vec<Monomial> = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        self.enumerate_monomials(&gens, &odd, n_max, gen_deg_max, d_max, deg_max, 0, &mut stack, &mut monomials);

        let mut by_cell: HashMap<(DimVec, u32), Vec<&Monomial>> = HashMap::new();
        for mono in &monomials {
            by_cell.entry((mono.n.clone(), mono.degree)).or_default().push(mono);
        }

        let params: Vec<Symbol> = self.algebra().kernel().params().into_iter().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let point: HashMap<Symbol, C> = params.iter().map(|&s| (s, C::from_int(rng.gen_range(2..1000)))).collect();

        let mut products: HashMap<Vec<usize>, ShuffleElement<C>> = HashMap::new();
        let mut cells = Vec::new();
        for n in &targets {
            for degree in 0..=deg_max {
                let mut monos: Vec<&Monomial> = by_cell.remove(&(n.clone(), degree)).unwrap_or_default();
                monos.sort_by_key(|m| m.weight);
                let mut polys: Vec<(u32, Polynomial<C>)> = Vec::new();
                for mono in &monos {
                    let p = self.monomial_product(&mono.factors, &gen_elements, twist, &mut products)?;
                    polys.push((mono.weight, p.into_poly()));
                }
                for d in 1..=d_max {
                    let slice = self.subspace(n, d, degree)?;
                    let mut span = SpanBuilder::new();
                    let mut count = 0;
                    let mut contained = true;
                    for (w, p) in &polys {
                        if *w > d {
                            break;
                        }
                        count += 1;
                        contained = contained && self.contains_graded(n, d, degree, p)?;
                        span.insert(if params.is_empty() { p.clone() } else { p.specialize(&point) });
                    }
                    cells.push(PbwCell {
                        n: n.clone(),
                        degree,
                        d,
                        dim: slice.dim(),
                        monomials: count,
                        rank: span.echelon.rank(),
                        contained,
                    });
                }
            }
        }
        Ok(PbwReport { cells, specialized: !params.is_empty() })
    }

    /// Whether `p`, of total degree `degree` counting parameters, has each
    /// parameter coefficient in the `F^d` slice of the complementary degree.
    fn contains_graded(&self, n: &DimVec, d: u32, degree: u32, p: &Polynomial<C>) -> Result<bool, Error> {
        for (pm, q) in p.split_params() {
            let Some(rest) = degree.checked_sub(pm.degree()) else {
                return Ok(false);
            };
            if !self.subspace(n, d, rest)?.contains_poly(&q) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate_monomials(
        &self,
        gens: &[Generator],
        odd: &[bool],
        n_max: &DimVec,
        gen_deg_max: u32,
        d_max: u32,
        deg_max: u32,
        start: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Monomial>,
    ) {
        if !stack.is_empty() {
            let blocks: Vec<DimVec> = stack.iter().map(|&g| gens[g].n.clone()).collect();
            let n = blocks.iter().skip(1).fold(blocks[0].clone(), |a, b| &a + b);
            let raw: i64 = stack.iter().map(|&g| gens[g].total_degree() as i64).sum();
            let degree = raw - self.pair_sum(&blocks);
            if (0..=deg_max as i64).contains(&degree) {
                out.push(Monomial {
                    n,
                    degree: degree as u32,
                    weight: stack.iter().map(|&g| gens[g].weight()).sum(),
                    factors: stack.clone(),
                });
            }
        }
        let used_n = stack.iter().fold(DimVec::zero(n_max.len()), |a, &g| &a + &gens[g].n);
        let used_deg: u32 = stack.iter().map(|&g| gens[g].total_degree()).sum();
        let used_w: u32 = stack.iter().map(|&g| gens[g].weight()).sum();
        let seen: HashSet<usize> = stack.iter().copied().collect();
        for g in start..gens.len() {
            if odd[g] && seen.contains(&g) {
                continue;
            }
            let gen = &gens[g];
            if !(&used_n + &gen.n).le(n_max) || used_deg + gen.total_degree() > gen_deg_max || used_w + gen.weight() > d_max {
                continue;
            }
            stack.push(g);
            self.enumerate_monomials(gens, odd, n_max, gen_deg_max, d_max, deg_max, g, stack, out);
            stack.pop();
        }
    }

    fn monomial_product(
        &self,
        factors: &[usize],
        elements: &[ShuffleElement<C>],
        twist: &SignTwist,
        cache: &mut HashMap<Vec<usize>, ShuffleElement<C>>,
    ) -> Result<ShuffleElement<C>, Error> {
        if let Some(p) = cache.get(factors) {
            return Ok(p.clone());
        }
        let p = match factors.split_last() {
            None => unreachable!("monomials are nonempty"),
            Some((&g, [])) => elements[g].clone(),
            Some((&g, prefix)) => {
                let left = self.monomial_product(prefix, elements, twist, cache)?;
                self.algebra().twisted_product(&left, &elements[g], twist)?
            }
        };
        cache.insert(factors.to_vec(), p.clone());
        Ok(p)
    }
}
