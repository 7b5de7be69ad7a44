//! Elements of free finite-rank modules `R^m`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

/// A coordinate vector in `R^m`, `m >= 1`; all coordinates share one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElem {
    coords: Vec<Elem>,
}

impl ModuleElem {
    pub fn new(coords: Vec<Elem>) -> Result<ModuleElem> {
        let Some(first) = coords.first() else {
            return Err(Error::LengthMismatch { expected: 1, found: 0 });
        };
        let ring = first.ring();
        for c in &coords[1..] {
            ring.check(c)?;
        }
        Ok(ModuleElem { coords })
    }

    /// Rank-one element.
    pub fn scalar(x: Elem) -> ModuleElem {
        ModuleElem { coords: vec![x] }
    }

    pub fn zero(ring: &Ring, rank: usize) -> ModuleElem {
        assert!(rank > 0, "free module rank must be positive");
        ModuleElem { coords: vec![ring.zero(); rank] }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn ring(&self) -> Ring {
        self.coords[0].ring()
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Elem {
        &self.coords[i]
    }

    pub fn into_coords(self) -> Vec<Elem> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Elem::is_zero)
    }

    pub fn compatible(&self, other: &ModuleElem) -> bool {
        self.rank() == other.rank() && self.coords[0].same_ring(&other.coords[0])
    }

    pub fn checked_add(&self, other: &ModuleElem) -> Result<ModuleElem> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(ModuleElem { coords })
    }

    /// Panics on rank or ring mismatch.
    pub fn add(&self, other: &ModuleElem) -> ModuleElem {
        self.checked_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, other: &ModuleElem) -> ModuleElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ModuleElem {
        ModuleElem { coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Elem) -> ModuleElem {
        ModuleElem { coords: self.coords.iter().map(|x| c * x).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Elem, other: &ModuleElem) -> ModuleElem {
        debug_assert_eq!(self.rank(), other.rank());
        ModuleElem {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + &(c * b)).collect(),
        }
    }

    /// Kronecker product: coordinate `(u, v)` lands at `u * other.rank() + v`.
    pub fn tensor(&self, other: &ModuleElem) -> ModuleElem {
        let mut coords = Vec::with_capacity(self.rank() * other.rank());
        for a in &self.coords {
            for b in &other.coords {
                coords.push(a * b);
            }
        }
        ModuleElem { coords }
    }

    /// Direct-sum coordinates: `self` then `other`.
    pub fn concat(&self, other: &ModuleElem) -> ModuleElem {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        ModuleElem { coords }
    }

    /// Coordinates `range` as a module element of smaller rank.
    pub fn project(&self, range: std::ops::Range<usize>) -> ModuleElem {
        assert!(!range.is_empty() && range.end <= self.rank(), "bad projection range");
        ModuleElem { coords: self.coords[range].to_vec() }
    }
}

/// Linear combination `sum_i coeffs[i] * elems[i]`; both slices nonempty and
/// of equal length.
pub fn combine(coeffs: &[Elem], elems: &[ModuleElem]) -> ModuleElem {
    assert_eq!(coeffs.len(), elems.len());
    let mut acc = elems[0].scale(&coeffs[0]);
    for (c, e) in coeffs.iter().zip(elems).skip(1) {
        acc = acc.add_scaled(c, e);
    }
    acc
}

impl From<Elem> for ModuleElem {
    fn from(x: Elem) -> ModuleElem {
        ModuleElem::scalar(x)
    }
}

impl fmt::Display for ModuleElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}
