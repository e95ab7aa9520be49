//! Dimension vectors.

use std::fmt;
use std::ops::{Add, Index};
use std::str::FromStr;

/// A dimension vector, one entry per vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct DimVec(Vec<u32>);

impl DimVec {
    pub fn new(entries: Vec<u32>) -> Self {
        DimVec(entries)
    }

    pub fn zero(vertices: usize) -> Self {
        DimVec(vec![0; vertices])
    }

    /// The unit vector at vertex `i`.
    pub fn unit(vertices: usize, i: usize) -> Self {
        let mut v = vec![0; vertices];
        v[i] = 1;
        DimVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVec) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self - other` if componentwise nonnegative.
    pub fn checked_sub(&self, other: &DimVec) -> Option<DimVec> {
        if !other.le(self) {
            return None;
        }
        Some(DimVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// `0 < m < self` in the componentwise order.
    pub fn strictly_between(&self, m: &DimVec) -> bool {
        m.le(self) && !m.is_zero() && m != self
    }

    /// All `m` with `0 <= m <= self`, in lexicographic order.
    pub fn below(&self) -> Vec<DimVec> {
        let mut out = vec![Vec::with_capacity(self.len())];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=bound).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(DimVec).collect()
    }

    /// All nonzero `m <= self`.
    pub fn nonzero_below(&self) -> Vec<DimVec> {
        self.below().into_iter().filter(|m| !m.is_zero()).collect()
    }
}

impl Index<usize> for DimVec {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl Add for &DimVec {
    type Output = DimVec;
    fn add(self, o: &DimVec) -> DimVec {
        assert_eq!(self.len(), o.len(), "dimension vectors over different quivers");
        DimVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Accepts `2`, `1,0` and `(1,0)`.
impl FromStr for DimVec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        let t = t.strip_prefix('(').map_or(t, |r| r.strip_suffix(')').unwrap_or(r));
        let entries = t
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| format!("invalid dimension vector entry {:?} in {s:?}", x.trim()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DimVec(entries))
    }
}
