use crate::error::{Error, Result};
use crate::ring::Ring;
use serde_json::{json, Value};

/// A linear map `R^domain -> R^codomain`, stored as a `codomain x domain`
/// matrix acting on column vectors: column `j` is the image of `b_j`.
#[derive(Clone, Debug)]
pub struct LinearMap<R: Ring> {
    ring: R,
    domain: usize,
    rows: Vec<Vec<R::Elem>>,
}

impl<R: Ring> PartialEq for LinearMap<R> {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.rows == other.rows
    }
}

impl<R: Ring> Eq for LinearMap<R> {}

impl<R: Ring> LinearMap<R> {
    pub fn new(ring: &R, domain: usize, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != domain) {
            return Err(Error::DimensionMismatch { expected: domain, found: r.len() });
        }
        Ok(LinearMap { ring: ring.clone(), domain, rows })
    }

    /// The map sending `b_j` to `columns[j]`.
    pub fn from_columns(ring: &R, codomain: usize, columns: &[Vec<R::Elem>]) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != codomain) {
            return Err(Error::DimensionMismatch { expected: codomain, found: c.len() });
        }
        let rows = (0..codomain).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        Ok(LinearMap { ring: ring.clone(), domain: columns.len(), rows })
    }

    pub fn zero(ring: &R, codomain: usize, domain: usize) -> Self {
        LinearMap { ring: ring.clone(), domain, rows: vec![ring.zero_vec(domain); codomain] }
    }

    pub fn identity(ring: &R, dim: usize) -> Self {
        Self::permutation(ring, &(0..dim).collect::<Vec<_>>())
    }

    /// The map `b_j -> b_{perm[j]}`; `perm` must be a permutation.
    pub fn permutation(ring: &R, perm: &[usize]) -> Self {
        let d = perm.len();
        let mut rows = vec![ring.zero_vec(d); d];
        for (j, &i) in perm.iter().enumerate() {
            rows[i][j] = ring.one();
        }
        LinearMap { ring: ring.clone(), domain: d, rows }
    }

    pub fn domain_dim(&self) -> usize {
        self.domain
    }

    pub fn codomain_dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<R::Elem>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &R::Elem {
        &self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<R::Elem> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| self.ring.is_zero_vec(r))
    }

    pub fn apply(&self, v: &[R::Elem]) -> Result<Vec<R::Elem>> {
        if v.len() != self.domain {
            return Err(Error::DimensionMismatch { expected: self.domain, found: v.len() });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| {
                let mut acc = self.ring.zero();
                for (a, b) in row.iter().zip(v) {
                    if !self.ring.is_zero(a) && !self.ring.is_zero(b) {
                        self.ring.add_mul_assign(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.codomain_dim() != self.domain {
            return Err(Error::DimensionMismatch { expected: self.domain, found: other.codomain_dim() });
        }
        let columns: Vec<Vec<R::Elem>> =
            (0..other.domain).map(|j| self.apply(&other.column(j))).collect::<Result<_>>()?;
        Self::from_columns(&self.ring, self.codomain_dim(), &columns)
    }

    /// Invertibility over the ring: the canonical echelon form of a square
    /// matrix is the identity exactly when it is invertible (RREF over a
    /// field, Hermite normal form over `Z`).
    pub fn is_invertible(&self) -> Result<bool> {
        let d = self.domain;
        if self.codomain_dim() != d {
            return Ok(false);
        }
        let echelon = self.ring.echelon(self.rows.clone())?;
        Ok(echelon.len() == d && echelon.iter().enumerate().all(|(i, r)| *r == self.ring.unit_vec(d, i)))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> =
            self.rows.iter().map(|r| r.iter().map(|a| self.ring.format(a)).collect()).collect();
        json!(rows)
    }
}
