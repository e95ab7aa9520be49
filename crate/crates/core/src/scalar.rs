//! Coefficient fields.
//!
//! Everything downstream is generic over [`Scalar`]. Exact work uses
//! [`Rational`]; Kac counting uses the small fields [`Gf`].

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_traits::{FromPrimitive, Num, One, Zero};

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;

/// A field with exact arithmetic.
pub trait Scalar:
    Num
    + Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Neg<Output = Self>
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    fn from_int(k: i64) -> Self {
        Self::from_i64(k).expect("integer embeds into the field")
    }
}

impl<T> Scalar for T where
    T: Num
        + Clone
        + Eq
        + Hash
        + fmt::Debug
        + fmt::Display
        + Neg<Output = Self>
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Finite field with `Q` elements, `Q` in {2, 3, 4, 5}.
///
/// Prime orders use residues. `Gf<4>` stores `a + b w` as the bits `b a`
/// with `w^2 = w + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf<const Q: u8>(u8);

const GF4_MUL: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];

impl<const Q: u8> Gf<Q> {
    const VALID: () = assert!(Q == 2 || Q == 3 || Q == 4 || Q == 5, "unsupported field order");

    pub const ORDER: u8 = Q;

    pub const fn characteristic() -> u8 {
        if Q == 4 {
            2
        } else {
            Q
        }
    }

    /// Element with index `k` in `0..Q`.
    pub fn new(k: u8) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::VALID;
        assert!(k < Q, "element index {k} out of range for GF({Q})");
        Gf(k)
    }

    /// Index of the element in `0..Q`.
    pub fn index(self) -> u8 {
        self.0
    }

    /// All field elements in index order.
    pub fn elements() -> impl Iterator<Item = Self> {
        (0..Q).map(Gf::new)
    }

    fn reduce(k: i64) -> Self {
        let p = Self::characteristic() as i64;
        Gf(k.rem_euclid(p) as u8)
    }
}

impl<const Q: u8> fmt::Debug for Gf<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF{}({})", Q, self.0)
    }
}

impl<const Q: u8> fmt::Display for Gf<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const Q: u8> Add for Gf<Q> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if Q == 4 {
            Gf(self.0 ^ o.0)
        } else {
            Gf((self.0 + o.0) % Q)
        }
    }
}

impl<const Q: u8> Neg for Gf<Q> {
    type Output = Self;
    fn neg(self) -> Self {
        if Q == 4 || self.0 == 0 {
            self
        } else {
            Gf(Q - self.0)
        }
    }
}

impl<const Q: u8> Sub for Gf<Q> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<const Q: u8> Mul for Gf<Q> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if Q == 4 {
            Gf(GF4_MUL[self.0 as usize][o.0 as usize])
        } else {
            Gf((self.0 * o.0) % Q)
        }
    }
}

impl<const Q: u8> Div for Gf<Q> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        assert!(o.0 != 0, "division by zero in GF({Q})");
        let inv = (1..Q)
            .map(Gf)
            .find(|c| (*c * o).0 == 1)
            .expect("nonzero elements are invertible");
        self * inv
    }
}

impl<const Q: u8> Rem for Gf<Q> {
    type Output = Self;
    fn rem(self, o: Self) -> Self {
        assert!(o.0 != 0, "division by zero in GF({Q})");
        Gf(0)
    }
}

impl<const Q: u8> Zero for Gf<Q> {
    fn zero() -> Self {
        Gf(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const Q: u8> One for Gf<Q> {
    fn one() -> Self {
        Gf(1)
    }
}

impl<const Q: u8> Num for Gf<Q> {
    type FromStrRadixErr = std::num::ParseIntError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let k = i64::from_str_radix(s, radix)?;
        Ok(Self::reduce(k))
    }
}

impl<const Q: u8> FromPrimitive for Gf<Q> {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Self::reduce(n))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Self::reduce((n % Self::characteristic() as u64) as i64))
    }
}
