//! Exponent vectors: lattice points of `N^n`, one per monomial.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// The exponent vector of a monomial `x_1^{e_1} ... x_n^{e_n}`.
///
/// Coordinates are arbitrary precision. Ordering is lexicographic on the
/// coordinates, which is the canonical order for generator lists.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ExponentVector {
    coords: Vec<BigUint>,
}

impl ExponentVector {
    pub fn new(coords: Vec<BigUint>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyDimension);
        }
        Ok(ExponentVector { coords })
    }

    /// Builds a vector from machine integers.
    ///
    /// Panics if `coords` is empty.
    pub fn from_u64s(coords: &[u64]) -> Self {
        assert!(!coords.is_empty(), "exponent vector needs at least one coordinate");
        ExponentVector {
            coords: coords.iter().map(|&c| BigUint::from(c)).collect(),
        }
    }

    pub(crate) fn from_u32s(coords: &[u32]) -> Self {
        debug_assert!(!coords.is_empty());
        ExponentVector {
            coords: coords.iter().map(|&c| BigUint::from(c)).collect(),
        }
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::new(vec![BigUint::zero(); dim])
    }

    /// The exponent vector of the variable `x_index`.
    pub fn unit(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "variable index {index} out of range for dimension {dim}"
            )));
        }
        let mut v = Self::zero(dim)?;
        v.coords[index] = BigUint::from(1u32);
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigUint] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigUint> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn degree(&self) -> BigUint {
        self.coords.iter().sum()
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }

    /// `self <= other` componentwise, i.e. the monomial `x^self` divides `x^other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.dim() == other.dim() && self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// Monomial product.
    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.dim(), other.dim());
        ExponentVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    /// Least common multiple: componentwise maximum.
    pub fn lcm(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.dim(), other.dim());
        ExponentVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.max(b).clone())
                .collect(),
        }
    }

    /// `self - min(self, other)`: the exponent of `x^self / gcd(x^self, x^other)`.
    pub fn quotient(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.dim(), other.dim());
        ExponentVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| if a > b { a - b } else { BigUint::zero() })
                .collect(),
        }
    }

    pub fn scale(&self, factor: &BigUint) -> ExponentVector {
        ExponentVector {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    /// Machine-word view of the coordinates, when every one fits.
    pub(crate) fn to_u32s(&self) -> Option<Vec<u32>> {
        self.coords.iter().map(ToPrimitive::to_u32).collect()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// JSON form: an array of numbers; coordinates beyond `u64` become decimal strings.
impl Serialize for ExponentVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coords.len()))?;
        for c in &self.coords {
            seq.serialize_element(&Natural(c))?;
        }
        seq.end()
    }
}

/// Serializes a `BigUint` as a number when it fits in `u64`, else as a string.
pub(crate) struct Natural<'a>(pub(crate) &'a BigUint);

impl Serialize for Natural<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(small) => serializer.serialize_u64(small),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}
