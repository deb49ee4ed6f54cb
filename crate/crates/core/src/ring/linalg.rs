//! Echelon forms, kernels and submodules.

use super::{Field, Ring};
use crate::error::{Error, Result};

/// Sparse vector: `(column, value)` pairs sorted by column, values nonzero.
pub type SparseRow<E> = Vec<(usize, E)>;

pub fn to_sparse<R: Ring>(ring: &R, v: &[R::Elem]) -> SparseRow<R::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, a)| !ring.is_zero(a))
        .map(|(i, a)| (i, a.clone()))
        .collect()
}

pub fn to_dense<R: Ring>(ring: &R, v: &SparseRow<R::Elem>, len: usize) -> Vec<R::Elem> {
    let mut out = ring.zero_vec(len);
    for (i, a) in v {
        out[*i] = a.clone();
    }
    out
}

fn leading<R: Ring>(ring: &R, v: &[R::Elem]) -> Option<usize> {
    v.iter().position(|a| !ring.is_zero(a))
}

/// `target -= coef * src` on dense vectors.
pub fn sub_scaled<R: Ring>(ring: &R, target: &mut [R::Elem], coef: &R::Elem, src: &[R::Elem]) {
    for (t, s) in target.iter_mut().zip(src) {
        if !ring.is_zero(s) {
            *t = ring.sub(t, &ring.mul(coef, s));
        }
    }
}

/// `a - coef * b` on sparse rows.
fn sparse_sub_scaled<R: Ring>(
    ring: &R,
    a: &SparseRow<R::Elem>,
    coef: &R::Elem,
    b: &SparseRow<R::Elem>,
) -> SparseRow<R::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, ring.neg(&ring.mul(coef, &b[j].1))));
            j += 1;
        } else {
            let v = ring.sub(&a[i].1, &ring.mul(coef, &b[j].1));
            if !ring.is_zero(&v) {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row echelon form over a field, built incrementally.
pub fn rref<F: Field>(field: &F, rows: Vec<Vec<F::Elem>>) -> Vec<Vec<F::Elem>> {
    let mut basis: Vec<Vec<F::Elem>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for mut v in rows {
        for (row, &p) in basis.iter().zip(&pivots) {
            if !field.is_zero(&v[p]) {
                let c = v[p].clone();
                sub_scaled(field, &mut v, &c, row);
            }
        }
        let Some(p) = leading(field, &v) else { continue };
        let inv = field.inv(&v[p]);
        for a in v.iter_mut() {
            if !field.is_zero(a) {
                *a = field.mul(a, &inv);
            }
        }
        for row in basis.iter_mut() {
            if !field.is_zero(&row[p]) {
                let c = row[p].clone();
                sub_scaled(field, row, &c, &v);
            }
        }
        let at = pivots.partition_point(|&q| q < p);
        pivots.insert(at, p);
        basis.insert(at, v);
    }
    basis
}

/// Remainder of `v` modulo the span of a reduced row echelon basis.
pub fn rref_reduce<F: Field>(field: &F, basis: &[Vec<F::Elem>], mut v: Vec<F::Elem>) -> Vec<F::Elem> {
    for row in basis {
        let p = leading(field, row).expect("echelon rows are nonzero");
        if !field.is_zero(&v[p]) {
            let c = v[p].clone();
            sub_scaled(field, &mut v, &c, row);
        }
    }
    v
}

/// Sparse reduced row echelon form; rows sorted by pivot column.
pub fn sparse_rref<F: Field>(
    field: &F,
    rows: Vec<SparseRow<F::Elem>>,
    ncols: usize,
) -> Vec<SparseRow<F::Elem>> {
    let mut basis: Vec<SparseRow<F::Elem>> = Vec::new();
    let mut pivot_row: Vec<Option<usize>> = vec![None; ncols];
    for mut r in rows {
        loop {
            let Some((c, lead)) = r.first().cloned() else { break };
            match pivot_row[c] {
                Some(b) => r = sparse_sub_scaled(field, &r, &lead, &basis[b]),
                None => {
                    let inv = field.inv(&lead);
                    for e in r.iter_mut() {
                        e.1 = field.mul(&e.1, &inv);
                    }
                    pivot_row[c] = Some(basis.len());
                    basis.push(r);
                    break;
                }
            }
        }
    }
    basis.sort_by_key(|r| r[0].0);
    let is_pivot: Vec<bool> = pivot_row.iter().map(Option::is_some).collect();
    let index_of: std::collections::HashMap<usize, usize> =
        basis.iter().enumerate().map(|(i, r)| (r[0].0, i)).collect();
    for i in (0..basis.len()).rev() {
        loop {
            let target = basis[i]
                .iter()
                .skip(1)
                .find(|(c, _)| is_pivot[*c])
                .map(|(c, a)| (*c, a.clone()));
            let Some((c, a)) = target else { break };
            let j = index_of[&c];
            let reduced = sparse_sub_scaled(field, &basis[i], &a, &basis[j]);
            basis[i] = reduced;
        }
    }
    basis
}

/// Canonical kernel basis of a sparse matrix over a field.
pub fn field_kernel<F: Field>(
    field: &F,
    rows: Vec<SparseRow<F::Elem>>,
    ncols: usize,
) -> Vec<Vec<F::Elem>> {
    let mut rows = rows;
    rows.retain(|r| !r.is_empty());
    rows.sort_by_key(|a| a.len());
    let echelon = sparse_rref(field, rows, ncols);
    kernel_from_rref(field, &echelon, ncols)
}

pub(crate) fn kernel_from_rref<F: Field>(
    field: &F,
    echelon: &[SparseRow<F::Elem>],
    ncols: usize,
) -> Vec<Vec<F::Elem>> {
    let mut is_pivot = vec![false; ncols];
    for r in echelon {
        is_pivot[r[0].0] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = field.zero_vec(ncols);
        v[free] = field.one();
        for r in echelon {
            if let Some((_, a)) = r.iter().find(|(c, _)| *c == free) {
                v[r[0].0] = field.neg(a);
            }
        }
        vectors.push(v);
    }
    rref(field, vectors)
}

/// Some solution of `A x = b` where `equations` are the rows of `A`.
pub fn solve<F: Field>(field: &F, equations: &[Vec<F::Elem>], rhs: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let ncols = equations.first().map_or(0, Vec::len);
    let augmented: Vec<SparseRow<F::Elem>> = equations
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = to_sparse(field, row);
            if !field.is_zero(b) {
                r.push((ncols, b.clone()));
            }
            r
        })
        .collect();
    let echelon = sparse_rref(field, augmented, ncols + 1);
    let mut x = field.zero_vec(ncols);
    for r in &echelon {
        let p = r[0].0;
        if p == ncols {
            return None;
        }
        if let Some((_, b)) = r.iter().find(|(c, _)| *c == ncols) {
            x[p] = b.clone();
        }
    }
    Some(x)
}

/// Inverse of a square matrix over a field, if it exists.
pub fn inverse<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Option<Vec<Vec<F::Elem>>> {
    let d = m.len();
    let rows: Vec<Vec<F::Elem>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(field.unit_vec(d, i));
            r
        })
        .collect();
    let echelon = rref(field, rows);
    if echelon.len() != d || echelon.iter().enumerate().any(|(i, r)| leading(field, r) != Some(i)) {
        return None;
    }
    Some(echelon.into_iter().map(|r| r[d..].to_vec()).collect())
}

/// A submodule of `R^dim` stored by its canonical echelon basis, so equal
/// submodules have identical representations.
#[derive(Clone, Debug)]
pub struct Submodule<R: Ring> {
    ring: R,
    dim: usize,
    rows: Vec<Vec<R::Elem>>,
}

impl<R: Ring> PartialEq for Submodule<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.spec() == other.ring.spec() && self.dim == other.dim && self.rows == other.rows
    }
}

impl<R: Ring> Eq for Submodule<R> {}

impl<R: Ring> Submodule<R> {
    pub fn span(ring: &R, dim: usize, vectors: Vec<Vec<R::Elem>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
        }
        let rows = ring.echelon(vectors)?;
        Ok(Submodule { ring: ring.clone(), dim, rows })
    }

    pub fn span_sparse(ring: &R, dim: usize, rows: Vec<SparseRow<R::Elem>>) -> Result<Self> {
        if let Some(&(c, _)) = rows.iter().flat_map(|r| r.last()).find(|(c, _)| *c >= dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: c + 1 });
        }
        let rows = ring.echelon_sparse(rows, dim)?;
        Ok(Submodule { ring: ring.clone(), dim, rows })
    }

    pub fn zero(ring: &R, dim: usize) -> Self {
        Submodule { ring: ring.clone(), dim, rows: Vec::new() }
    }

    pub fn full(ring: &R, dim: usize) -> Self {
        let rows = (0..dim).map(|i| ring.unit_vec(dim, i)).collect();
        Submodule { ring: ring.clone(), dim, rows }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<R::Elem>] {
        &self.rows
    }

    /// Remainder of `v` against the canonical basis.
    pub fn reduce(&self, v: &[R::Elem]) -> Result<Vec<R::Elem>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        self.ring.reduce(&self.rows, v.to_vec())
    }

    pub fn contains(&self, v: &[R::Elem]) -> Result<bool> {
        Ok(self.ring.is_zero_vec(&self.reduce(v)?))
    }

    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        for row in &self.rows {
            if !other.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        let mut vectors = self.rows.clone();
        vectors.extend(other.rows.iter().cloned());
        Self::span(&self.ring, self.dim, vectors)
    }
}
