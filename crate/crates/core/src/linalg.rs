//! Dense square matrices over an exact field.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    field: Field,
    size: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zero(field: &Field, size: usize) -> Self {
        ScalarMatrix {
            field: field.clone(),
            size,
            data: vec![field.zero(); size * size],
        }
    }

    pub fn identity(field: &Field, size: usize) -> Self {
        let mut m = Self::zero(field, size);
        for i in 0..size {
            m.data[i * size + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: &Field, size: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != size * size {
            return Err(Error::DimensionMismatch {
                expected: size * size,
                got: data.len(),
            });
        }
        for c in &data {
            field.check(c)?;
        }
        Ok(ScalarMatrix {
            field: field.clone(),
            size,
            data,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.size + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.size + c]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.field, self.size)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| self.field.is_zero(c))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.size != other.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                got: other.size,
            });
        }
        if self.field != other.field {
            return Err(Error::CarrierMismatch);
        }
        let (f, n) = (&self.field, self.size);
        let mut out = Self::zero(f, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let cell = out.get_mut(i, j);
                        *cell = f.add(cell, &f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Rank by Gauss-Jordan elimination; exact, so any nonzero pivot works.
    pub fn rank(&self) -> usize {
        self.eliminate(None).0
    }

    /// Inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let mut inv = Self::identity(&self.field, self.size);
        let (rank, _) = self.eliminate(Some(&mut inv));
        (rank == self.size).then_some(inv)
    }

    /// Row-reduces a copy of `self`, mirroring row operations on `companion`.
    fn eliminate(&self, mut companion: Option<&mut Self>) -> (usize, Self) {
        let (f, n) = (&self.field, self.size);
        let mut m = self.clone();
        let mut row = 0;
        for col in 0..n {
            let Some(pivot) = (row..n).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            m.swap_rows(row, pivot);
            if let Some(c) = companion.as_deref_mut() {
                c.swap_rows(row, pivot);
            }
            let inv = f.inv(m.get(row, col)).expect("nonzero pivot");
            m.scale_row(row, &inv);
            if let Some(c) = companion.as_deref_mut() {
                c.scale_row(row, &inv);
            }
            for r in 0..n {
                if r != row && !f.is_zero(m.get(r, col)) {
                    let factor = f.neg(m.get(r, col));
                    m.add_row_multiple(r, row, &factor);
                    if let Some(c) = companion.as_deref_mut() {
                        c.add_row_multiple(r, row, &factor);
                    }
                }
            }
            row += 1;
        }
        (row, m)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.size {
                self.data.swap(a * self.size + c, b * self.size + c);
            }
        }
    }

    fn scale_row(&mut self, r: usize, by: &Scalar) {
        for c in 0..self.size {
            let v = self.field.mul(self.get(r, c), by);
            *self.get_mut(r, c) = v;
        }
    }

    /// `row[dst] += factor * row[src]`
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &Scalar) {
        for c in 0..self.size {
            let v = self
                .field
                .add(self.get(dst, c), &self.field.mul(factor, self.get(src, c)));
            *self.get_mut(dst, c) = v;
        }
    }
}

impl fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.size {
            let row: Vec<String> = (0..self.size)
                .map(|c| self.field.format(self.get(r, c)))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
