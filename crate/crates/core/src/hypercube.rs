//! Dense `p`-dimensional arrays stored with axis 1 varying fastest.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypercube<T> {
    shape: Vec<usize>,
    data: Vec<T>,
}

impl<T> Hypercube<T> {
    pub fn new(shape: Vec<usize>, data: Vec<T>) -> Result<Hypercube<T>> {
        let size: usize = shape.iter().product();
        if shape.is_empty() {
            return Err(Error::LengthMismatch { expected: 1, found: 0 });
        }
        if data.len() != size {
            return Err(Error::LengthMismatch { expected: size, found: data.len() });
        }
        Ok(Hypercube { shape, data })
    }

    pub fn from_fn(shape: Vec<usize>, mut f: impl FnMut(&[usize]) -> T) -> Hypercube<T> {
        let data = multi_indices(&shape).map(|idx| f(&idx)).collect();
        Hypercube { shape, data }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn dims(&self) -> usize {
        self.shape.len()
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Flat offset of `idx`; panics when out of bounds.
    pub fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.shape.len(), "index dimension mismatch");
        let mut off = 0;
        let mut stride = 1;
        for (&i, &s) in idx.iter().zip(&self.shape) {
            assert!(i < s, "index {idx:?} out of bounds for shape {:?}", self.shape);
            off += i * stride;
            stride *= s;
        }
        off
    }

    pub fn get(&self, idx: &[usize]) -> &T {
        &self.data[self.offset(idx)]
    }

    pub fn contains(&self, idx: &[usize]) -> bool {
        idx.len() == self.shape.len() && idx.iter().zip(&self.shape).all(|(i, s)| i < s)
    }

    /// `(index, value)` pairs in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &T)> {
        multi_indices(&self.shape).zip(self.data.iter())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Hypercube<U> {
        Hypercube { shape: self.shape.clone(), data: self.data.iter().map(f).collect() }
    }
}

/// All indices of a box in storage order (first axis fastest).
pub fn multi_indices(shape: &[usize]) -> impl Iterator<Item = Vec<usize>> {
    let shape = shape.to_vec();
    let total: usize = if shape.is_empty() { 0 } else { shape.iter().product() };
    let mut cur = vec![0usize; shape.len()];
    (0..total).map(move |step| {
        if step > 0 {
            for (c, &s) in cur.iter_mut().zip(&shape) {
                *c += 1;
                if *c < s {
                    break;
                }
                *c = 0;
            }
        }
        cur.clone()
    })
}
