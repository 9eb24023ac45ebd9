//! Dense rank-3 tensors of exact rationals.
//!
//! All structure constants in this crate are rank-3 arrays over small bases
//! (desk scale, dimensions ≤ 12), so a flat dense `Vec` is the right storage.
//! Sparse entry lists are accepted as an *input* format and densified on load.

use crate::scalar::Scalar;
use thiserror::Error;

/// A dense `dims[0] × dims[1] × dims[2]` array of [`Scalar`]s.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor3 {
    dims: [usize; 3],
    data: Vec<Scalar>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TensorError {
    #[error("entry index ({0}, {1}, {2}) out of range for dims {3:?}")]
    IndexOutOfRange(usize, usize, usize, [usize; 3]),
    #[error("duplicate entry at ({0}, {1}, {2})")]
    DuplicateEntry(usize, usize, usize),
}

impl Tensor3 {
    pub fn zeros(dims: [usize; 3]) -> Self {
        Tensor3 {
            dims,
            data: vec![Scalar::zero(); dims[0] * dims[1] * dims[2]],
        }
    }

    /// Densifies a zero-omitted entry list. Entries must be in range and
    /// pairwise distinct.
    pub fn from_entries(
        dims: [usize; 3],
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self, TensorError> {
        let mut t = Tensor3::zeros(dims);
        let mut seen = vec![false; t.data.len()];
        for (i, j, k, v) in entries {
            if i >= dims[0] || j >= dims[1] || k >= dims[2] {
                return Err(TensorError::IndexOutOfRange(i, j, k, dims));
            }
            let idx = t.flat(i, j, k);
            if seen[idx] {
                return Err(TensorError::DuplicateEntry(i, j, k));
            }
            seen[idx] = true;
            t.data[idx] = v;
        }
        Ok(t)
    }

    /// Builds from a closure over all index triples.
    pub fn from_fn(dims: [usize; 3], mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Self {
        let mut t = Tensor3::zeros(dims);
        for i in 0..dims[0] {
            for j in 0..dims[1] {
                for k in 0..dims[2] {
                    let idx = t.flat(i, j, k);
                    t.data[idx] = f(i, j, k);
                }
            }
        }
        t
    }

    #[inline]
    fn flat(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[self.flat(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let idx = self.flat(i, j, k);
        self.data[idx] = v;
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    /// Zero-omitted entry list in lexicographic index order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dims[0] {
            for j in 0..self.dims[1] {
                for k in 0..self.dims[2] {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }

    /// Indices of nonzero entries, lexicographic.
    pub fn nonzero_indices(&self) -> Vec<(usize, usize, usize)> {
        self.entries().into_iter().map(|(i, j, k, _)| (i, j, k)).collect()
    }
}
