use std::collections::HashMap;

use super::{FieldElement, FieldError, FiniteField};
use crate::linalg::Matrix;

enum Embedding {
    /// Base and extension are the same field.
    Identity,
    /// Base is the prime field: its elements are the constants of the extension.
    PrimeConstants,
    Table {
        forward: Vec<u32>,
        backward: HashMap<u32, u32>,
    },
}

/// A subfield pair GF(q) ⊆ GF(q^s) with an explicit embedding.
///
/// When GF(q) is not prime the embedding sends the polynomial-basis
/// generator of GF(q) to the smallest root of its modulus in GF(q^s).
pub struct FieldTower {
    base: FiniteField,
    ext: FiniteField,
    degree: u32,
    embedding: Embedding,
}

impl FieldTower {
    pub fn new(base: &FiniteField, ext: &FiniteField) -> Result<Self, FieldError> {
        let not_sub = || FieldError::NotASubfield {
            q: base.size(),
            size: ext.size(),
        };
        if base.characteristic() != ext.characteristic()
            || !ext.degree().is_multiple_of(base.degree())
        {
            return Err(not_sub());
        }
        let degree = ext.degree() / base.degree();
        let embedding = if base == ext {
            Embedding::Identity
        } else if base.degree() == 1 {
            Embedding::PrimeConstants
        } else {
            Self::table_embedding(base, ext)
        };
        Ok(FieldTower {
            base: base.clone(),
            ext: ext.clone(),
            degree,
            embedding,
        })
    }

    fn table_embedding(base: &FiniteField, ext: &FiniteField) -> Embedding {
        let q = base.size();
        // Nonzero elements of the copy of GF(q) are the powers of omega.
        let omega = ext.primitive_element().pow((ext.size() - 1) / (q - 1));
        let modulus = base.modulus();
        let eval = |x: u32| {
            modulus
                .iter()
                .rev()
                .fold(0u32, |acc, &c| ext.add_raw(ext.mul_raw(acc, x), c))
        };
        let beta = (0..q - 1)
            .map(|j| ext.pow_raw(omega.value(), j))
            .filter(|&x| eval(x) == 0)
            .min()
            .expect("the modulus of GF(q) splits in GF(q^s)");
        let t = base.degree() as usize;
        let beta_powers: Vec<u32> = (0..t as u64).map(|u| ext.pow_raw(beta, u)).collect();
        let forward: Vec<u32> = (0..q as u32)
            .map(|v| {
                base.digits(v)
                    .iter()
                    .zip(&beta_powers)
                    .fold(0u32, |acc, (&d, &b)| ext.add_raw(acc, ext.mul_raw(d, b)))
            })
            .collect();
        let backward = forward
            .iter()
            .enumerate()
            .map(|(v, &img)| (img, v as u32))
            .collect();
        Embedding::Table { forward, backward }
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn ext(&self) -> &FiniteField {
        &self.ext
    }

    /// `s` in GF(q^s) over GF(q).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn embed_raw(&self, v: u32) -> u32 {
        match &self.embedding {
            Embedding::Identity | Embedding::PrimeConstants => v,
            Embedding::Table { forward, .. } => forward[v as usize],
        }
    }

    pub fn descend_raw(&self, v: u32) -> Option<u32> {
        match &self.embedding {
            Embedding::Identity => Some(v),
            Embedding::PrimeConstants => (v < self.base.size() as u32).then_some(v),
            Embedding::Table { backward, .. } => backward.get(&v).copied(),
        }
    }

    pub fn embed(&self, x: &FieldElement) -> Result<FieldElement, FieldError> {
        if x.field() != &self.base {
            return Err(FieldError::FieldMismatch {
                left: x.field().size(),
                right: self.base.size(),
            });
        }
        Ok(FieldElement::from_raw(
            self.ext.clone(),
            self.embed_raw(x.value()),
        ))
    }

    /// Image in GF(q) of an extension element fixed by `x -> x^q`, or `None`.
    pub fn descend(&self, x: &FieldElement) -> Option<FieldElement> {
        if x.field() != &self.ext {
            return None;
        }
        if x.pow(self.base.size()) != *x {
            return None;
        }
        let v = self
            .descend_raw(x.value())
            .expect("Frobenius-fixed elements lie in the subfield");
        Some(FieldElement::from_raw(self.base.clone(), v))
    }

    /// Coordinates over GF(q) with respect to `1, theta, ..., theta^(s-1)`.
    pub fn coordinate_map(&self, theta: &FieldElement) -> Result<CoordinateMap, FieldError> {
        if theta.field() != &self.ext {
            return Err(FieldError::FieldMismatch {
                left: theta.field().size(),
                right: self.ext.size(),
            });
        }
        let prime = FiniteField::new(self.ext.characteristic(), 1)?;
        let t = self.base.degree() as usize;
        let s = self.degree as usize;
        let dim = t * s;
        // Column (i, u) holds the GF(p) digits of embed(y^u) * theta^i.
        let mut a = Matrix::zeros(&prime, dim, dim);
        for i in 0..s {
            let th = self.ext.pow_raw(theta.value(), i as u64);
            for u in 0..t {
                let y_u = self.base.pow_raw(
                    if t == 1 {
                        1
                    } else {
                        self.base.characteristic() as u32
                    },
                    u as u64,
                );
                let v = self.ext.mul_raw(self.embed_raw(y_u), th);
                for (r, d) in self.ext.digits(v).into_iter().enumerate() {
                    a.set(r, i * t + u, d);
                }
            }
        }
        let inverse = a.inverse().ok_or(FieldError::DegenerateBasis)?;
        Ok(CoordinateMap {
            base: self.base.clone(),
            ext: self.ext.clone(),
            inverse,
            t,
            s,
        })
    }
}

/// Linear map from GF(q^s) to GF(q)^s for a fixed basis.
pub struct CoordinateMap {
    base: FiniteField,
    ext: FiniteField,
    inverse: Matrix,
    t: usize,
    s: usize,
}

impl CoordinateMap {
    pub fn dimension(&self) -> usize {
        self.s
    }

    /// Raw GF(q) coordinates of a raw GF(q^s) value.
    pub fn coordinates_raw(&self, v: u32) -> Vec<u32> {
        let digits = self.ext.digits(v);
        let sol = self.inverse.mul_vec(&digits);
        sol.chunks(self.t)
            .map(|c| self.base.from_digits(c))
            .collect()
    }

    pub fn coordinates(&self, x: &FieldElement) -> Vec<FieldElement> {
        self.coordinates_raw(x.value())
            .into_iter()
            .map(|v| FieldElement::from_raw(self.base.clone(), v))
            .collect()
    }
}
