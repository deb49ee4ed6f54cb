//! Finite free algebras given by structure constants, and linear maps
//! between them.

mod flag;
mod linear_map;
mod table;

pub use flag::{AlgebraContext, FlagElement, PowerWitness};
pub use linear_map::LinearMap;
pub use table::{RawTable, StructureConstants};

use crate::error::{Error, Result};
use crate::ring::{linalg, Field, Ring, SparseRow};
use std::sync::atomic::{AtomicU64, Ordering};

pub type Elem<A> = <<A as Algebra>::Ring as Ring>::Elem;

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

pub(crate) fn fresh_algebra_id() -> u64 {
    NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed)
}

/// A free `R`-module with basis `b_0..b_{d-1}` and a bilinear product
/// `b_i b_j = sum_k c_ij^k b_k`. No associativity or unit is assumed.
pub trait Algebra: Send + Sync {
    type Ring: Ring;

    fn ring(&self) -> &Self::Ring;
    fn dim(&self) -> usize;
    /// Identifies the algebra so that submodules of different algebras are
    /// never mixed.
    fn algebra_id(&self) -> u64;
    /// The sparse coefficient row of `b_i b_j`.
    fn basis_product_row(&self, i: usize, j: usize) -> &SparseRow<Elem<Self>>;
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Product of two coordinate vectors.
pub fn multiply<A: Algebra + ?Sized>(alg: &A, u: &[Elem<A>], v: &[Elem<A>]) -> Result<Vec<Elem<A>>> {
    let d = alg.dim();
    check_len(d, u.len())?;
    check_len(d, v.len())?;
    let ring = alg.ring();
    let mut out = ring.zero_vec(d);
    for (i, a) in u.iter().enumerate().filter(|(_, a)| !ring.is_zero(a)) {
        for (j, b) in v.iter().enumerate().filter(|(_, b)| !ring.is_zero(b)) {
            let ab = ring.mul(a, b);
            for (k, c) in alg.basis_product_row(i, j) {
                ring.add_mul_assign(&mut out[*k], &ab, c);
            }
        }
    }
    Ok(out)
}

pub fn commutator<A: Algebra + ?Sized>(alg: &A, u: &[Elem<A>], v: &[Elem<A>]) -> Result<Vec<Elem<A>>> {
    let uv = multiply(alg, u, v)?;
    let vu = multiply(alg, v, u)?;
    let ring = alg.ring();
    Ok(uv.iter().zip(&vu).map(|(a, b)| ring.sub(a, b)).collect())
}

/// Columns `u b_j` of the left multiplication by `u`, stored sparsely, so
/// that `u v = sum_j v_j (u b_j)`.
pub struct LeftMultiplication<R: Ring> {
    columns: Vec<SparseRow<R::Elem>>,
}

impl<R: Ring> LeftMultiplication<R> {
    pub fn new<A: Algebra<Ring = R> + ?Sized>(alg: &A, u: &[R::Elem]) -> Self {
        let ring = alg.ring();
        let d = alg.dim();
        let columns = (0..d)
            .map(|j| {
                let mut acc = ring.zero_vec(d);
                for (i, a) in u.iter().enumerate().filter(|(_, a)| !ring.is_zero(a)) {
                    for (k, c) in alg.basis_product_row(i, j) {
                        ring.add_mul_assign(&mut acc[*k], a, c);
                    }
                }
                linalg::to_sparse(ring, &acc)
            })
            .collect();
        LeftMultiplication { columns }
    }

    pub fn apply(&self, ring: &R, v: &[R::Elem]) -> Vec<R::Elem> {
        let mut out = ring.zero_vec(self.columns.len());
        for (j, b) in v.iter().enumerate().filter(|(_, b)| !ring.is_zero(b)) {
            for (k, c) in &self.columns[j] {
                ring.add_mul_assign(&mut out[*k], b, c);
            }
        }
        out
    }

    /// The dense `d x d` matrix of `v -> u v`.
    pub fn matrix(&self, ring: &R) -> Vec<Vec<R::Elem>> {
        let d = self.columns.len();
        let mut m = vec![ring.zero_vec(d); d];
        for (j, col) in self.columns.iter().enumerate() {
            for (k, c) in col {
                m[k.to_owned()][j] = c.clone();
            }
        }
        m
    }
}

pub fn is_commutative<A: Algebra + ?Sized>(alg: &A) -> bool {
    let d = alg.dim();
    (0..d).all(|i| (i + 1..d).all(|j| alg.basis_product_row(i, j) == alg.basis_product_row(j, i)))
}

/// Checks `(b_i b_j) b_k = b_i (b_j b_k)` on all basis triples.
pub fn is_associative<A: Algebra + ?Sized>(alg: &A) -> bool {
    let d = alg.dim();
    let ring = alg.ring();
    let basis: Vec<Vec<Elem<A>>> = (0..d).map(|i| ring.unit_vec(d, i)).collect();
    for i in 0..d {
        for j in 0..d {
            let ij = linalg::to_dense(ring, alg.basis_product_row(i, j), d);
            for k in 0..d {
                let jk = linalg::to_dense(ring, alg.basis_product_row(j, k), d);
                let left = multiply(alg, &ij, &basis[k]).expect("dimensions agree");
                let right = multiply(alg, &basis[i], &jk).expect("dimensions agree");
                if left != right {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Solves for `e` with `e b = b` (left) or `b e = b` (right) for every basis
/// element `b`. Returns `None` when the linear system is infeasible.
pub fn one_sided_identity<A>(alg: &A, side: Side) -> Option<Vec<Elem<A>>>
where
    A: Algebra + ?Sized,
    A::Ring: Field,
{
    let d = alg.dim();
    let ring = alg.ring();
    let mut equations = Vec::with_capacity(d * d);
    let mut rhs = Vec::with_capacity(d * d);
    for j in 0..d {
        // Row k of the equation `sum_i a_i (b_i b_j)_k = delta_jk`.
        let mut rows = vec![ring.zero_vec(d); d];
        for i in 0..d {
            let row = match side {
                Side::Left => alg.basis_product_row(i, j),
                Side::Right => alg.basis_product_row(j, i),
            };
            for (k, c) in row {
                rows[*k][i] = c.clone();
            }
        }
        for (k, row) in rows.into_iter().enumerate() {
            equations.push(row);
            rhs.push(if k == j { ring.one() } else { ring.zero() });
        }
    }
    if d == 0 {
        return Some(Vec::new());
    }
    linalg::solve(ring, &equations, &rhs)
}

/// The two-sided identity, if one exists.
pub fn identity<A>(alg: &A) -> Result<Vec<Elem<A>>>
where
    A: Algebra + ?Sized,
    A::Ring: Field,
{
    let e = one_sided_identity(alg, Side::Left).ok_or(Error::NoIdentity)?;
    let d = alg.dim();
    let ring = alg.ring();
    for j in 0..d {
        let b = ring.unit_vec(d, j);
        if multiply(alg, &b, &e)? != b {
            return Err(Error::NoIdentity);
        }
    }
    Ok(e)
}
