//! Linear derivations `D(ab) = D(a) b + a D(b)` as the kernel of the
//! Leibniz linear system.

use crate::algebra::{commutator, Algebra, AlgebraContext, LinearMap};
use crate::error::{Error, Result};
use crate::ring::{linalg, Ring, SparseRow};
use std::collections::HashSet;

/// The Leibniz equations in the `d^2` unknowns `D_{k,l}` (the coefficient
/// of `b_k` in `D(b_l)`, stored at column `k d + l`).
///
/// Row `(i, j, k)` is the `b_k` coefficient of
/// `D(b_i b_j) - D(b_i) b_j - b_i D(b_j)`:
/// `sum_m c_ij^m D_{k,m} - sum_l c_lj^k D_{l,i} - sum_l c_il^k D_{l,j}`.
#[derive(Clone, Debug)]
pub struct LeibnizSystem<R: Ring> {
    pub dim: usize,
    /// `d^3`, the number of equations before pruning.
    pub raw_rows: usize,
    /// Distinct nonzero rows.
    pub rows: Vec<SparseRow<R::Elem>>,
}

impl<R: Ring> LeibnizSystem<R> {
    pub fn unknowns(&self) -> usize {
        self.dim * self.dim
    }
}

pub fn leibniz_system<A: Algebra + ?Sized>(alg: &A) -> LeibnizSystem<A::Ring> {
    let ring = alg.ring();
    let d = alg.dim();
    let mut seen: HashSet<SparseRow<_>> = HashSet::new();
    let mut rows = Vec::new();
    let minus_one = ring.neg(&ring.one());
    let mut acc: Vec<Vec<(usize, _)>> = vec![Vec::new(); d];
    for i in 0..d {
        for j in 0..d {
            for row in acc.iter_mut() {
                row.clear();
            }
            for (m, c) in alg.basis_product_row(i, j) {
                for (k, row) in acc.iter_mut().enumerate() {
                    row.push((k * d + m, c.clone()));
                }
            }
            for l in 0..d {
                for (k, c) in alg.basis_product_row(l, j) {
                    acc[*k].push((l * d + i, ring.mul(&minus_one, c)));
                }
                for (k, c) in alg.basis_product_row(i, l) {
                    acc[*k].push((l * d + j, ring.mul(&minus_one, c)));
                }
            }
            for terms in acc.iter_mut() {
                terms.sort_by_key(|t| t.0);
                let mut row: SparseRow<_> = Vec::with_capacity(terms.len());
                for (col, c) in terms.drain(..) {
                    match row.last_mut() {
                        Some((last, v)) if *last == col => *v = ring.add(v, &c),
                        _ => row.push((col, c)),
                    }
                }
                row.retain(|(_, v)| !ring.is_zero(v));
                if !row.is_empty() && seen.insert(row.clone()) {
                    rows.push(row);
                }
            }
        }
    }
    LeibnizSystem { dim: d, raw_rows: d * d * d, rows }
}

/// A canonical basis of the derivations, each as the matrix of `D` in the
/// algebra basis.
pub fn derivation_basis<A: Algebra + ?Sized>(alg: &A) -> Result<Vec<LinearMap<A::Ring>>> {
    solve_leibniz(alg.ring(), leibniz_system(alg))
}

pub fn solve_leibniz<R: Ring>(ring: &R, system: LeibnizSystem<R>) -> Result<Vec<LinearMap<R>>> {
    let d = system.dim;
    let kernel = ring.kernel(system.rows, d * d)?;
    kernel.into_iter().map(|v| LinearMap::new(ring, d, v.chunks(d.max(1)).map(<[_]>::to_vec).collect())).collect()
}

/// Checks the Leibniz rule on every basis pair using the convolution
/// product, independently of the structure-constant table.
pub fn check_derivation<R: Ring>(ctx: &AlgebraContext<R>, t: &LinearMap<R>) -> Result<bool> {
    let d = ctx.dim();
    if t.domain_dim() != d || t.codomain_dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: t.domain_dim() });
    }
    let images: Vec<_> = (0..d).map(|j| ctx.from_dense(&t.column(j))).collect::<Result<_>>()?;
    for i in 0..d {
        let bi = ctx.basis_element_at(i);
        for j in 0..d {
            let bj = ctx.basis_element_at(j);
            let lhs = t.apply(&ctx.to_dense(&ctx.convolve(&bi, &bj)?)?)?;
            let rhs = ctx.add(&ctx.convolve(&images[i], &bj)?, &ctx.convolve(&bi, &images[j])?)?;
            if lhs != ctx.to_dense(&rhs)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The inner derivation `b -> a b - b a`.
pub fn inner_derivation<A: Algebra + ?Sized>(alg: &A, a: &[<A::Ring as Ring>::Elem]) -> Result<LinearMap<A::Ring>> {
    let ring = alg.ring();
    let d = alg.dim();
    let columns: Vec<_> = (0..d).map(|j| commutator(alg, a, &ring.unit_vec(d, j))).collect::<Result<_>>()?;
    LinearMap::from_columns(ring, d, &columns)
}

/// For `n = 3`, the basis elements on which a derivation must vanish:
/// `e_xxx`, `e_xxy` and `e_xyy` for `x < y`, and `e_xzy` for `x < z < y`.
/// Returns a description of each violated identity.
pub fn structural_violations<R: Ring>(ctx: &AlgebraContext<R>, t: &LinearMap<R>) -> Result<Vec<String>> {
    if ctx.n() != 3 {
        return Err(Error::Unsupported("the structural identities are stated for n = 3".into()));
    }
    let ring = ctx.ring();
    let mut out = Vec::new();
    for (j, x) in ctx.basis().iter().enumerate() {
        let e = x.entries();
        if ring.is_zero_vec(&t.column(j)) {
            continue;
        }
        let kind = if e[0] == e[2] {
            "D(e_xxx) = 0"
        } else if e[1] == e[0] {
            "D(e_xxy) = 0"
        } else if e[1] == e[2] {
            "D(e_xyy) = 0"
        } else {
            "D(e_xzy) = 0"
        };
        out.push(format!("{kind} fails at {x}"));
    }
    Ok(out)
}

/// The kernel vector of `t` as a sparse row over the `d^2` unknowns, for
/// reporting.
pub fn as_unknowns<R: Ring>(ring: &R, t: &LinearMap<R>) -> SparseRow<R::Elem> {
    let flat: Vec<R::Elem> = t.rows().iter().flatten().cloned().collect();
    linalg::to_sparse(ring, &flat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{enumerate_posets, parse_poset, Poset};
    use crate::ring::{Integers, PrimeField, Rationals};

    #[test]
    fn system_shape() {
        let c = AlgebraContext::new(Poset::chain(2), 3, Rationals).unwrap();
        let s = leibniz_system(&c);
        assert_eq!(s.raw_rows, 64);
        assert_eq!(s.unknowns(), 16);
        assert!(s.rows.iter().all(|r| !r.is_empty()));
        // Inner derivations of the classical algebra satisfy every row.
        let c = AlgebraContext::new(Poset::chain(2), 2, Rationals).unwrap();
        let s = leibniz_system(&c);
        let t = inner_derivation(&c, &Rationals.unit_vec(3, 0)).unwrap();
        let flat = t.rows().concat();
        for row in &s.rows {
            let dot = row.iter().fold(Rationals.zero(), |acc, (col, a)| acc + a * &flat[*col]);
            assert_eq!(dot, Rationals.zero());
        }
        assert_eq!(as_unknowns(&Rationals, &t).len(), flat.iter().filter(|a| **a != Rationals.zero()).count());
    }

    #[test]
    fn one_element_and_antichains() {
        // D(e) = e D(e) + D(e) e = 2 D(e) forces D = 0.
        let c = AlgebraContext::new(Poset::chain(1), 3, Rationals).unwrap();
        let s = leibniz_system(&c);
        assert_eq!(s.rows, vec![vec![(0, Rationals.from_i64(-1))]]);
        assert!(derivation_basis(&c).unwrap().is_empty());
        for m in 1..=4 {
            let a = AlgebraContext::new(Poset::antichain(m), 3, Rationals).unwrap();
            assert!(derivation_basis(&a).unwrap().is_empty());
        }
    }

    #[test]
    fn third_flag_algebras_have_no_derivations() {
        for m in 1..=3 {
            for p in enumerate_posets(m).unwrap() {
                assert!(derivation_basis(&AlgebraContext::new(p.clone(), 3, Rationals).unwrap()).unwrap().is_empty());
                assert!(derivation_basis(&AlgebraContext::new(p.clone(), 3, PrimeField::new(2)).unwrap()).unwrap().is_empty());
                assert!(derivation_basis(&AlgebraContext::new(p, 3, Integers).unwrap()).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn classical_two_chain() {
        let c = AlgebraContext::new(Poset::chain(2), 2, Rationals).unwrap();
        let basis = derivation_basis(&c).unwrap();
        assert_eq!(basis.len(), 2);
        for t in &basis {
            assert!(check_derivation(&c, t).unwrap());
        }
        let d = c.dim();
        let ex = inner_derivation(&c, &Rationals.unit_vec(d, c.index_of(&[0, 0]).unwrap())).unwrap();
        let exy = inner_derivation(&c, &Rationals.unit_vec(d, c.index_of(&[0, 1]).unwrap())).unwrap();
        assert!(check_derivation(&c, &ex).unwrap());
        assert!(check_derivation(&c, &exy).unwrap());
        // The two inner derivations are independent and span the kernel.
        let span = |maps: &[&LinearMap<Rationals>]| {
            crate::ring::Submodule::span(&Rationals, d * d, maps.iter().map(|t| t.rows().concat()).collect()).unwrap()
        };
        let kernel = span(&basis.iter().collect::<Vec<_>>());
        assert_eq!(span(&[&ex, &exy]), kernel);
    }

    #[test]
    fn classical_contrast_is_nonempty() {
        let v = parse_poset("elements: a b c\ncovers:\na b\na c").unwrap();
        for p in [Poset::chain(3), v] {
            let c = AlgebraContext::new(p, 2, Rationals).unwrap();
            assert!(!derivation_basis(&c).unwrap().is_empty());
        }
        let c = AlgebraContext::new(Poset::chain(1), 2, Rationals).unwrap();
        assert!(derivation_basis(&c).unwrap().is_empty());
        for m in 2..=3 {
            for p in enumerate_posets(m).unwrap() {
                let c = AlgebraContext::new(p.clone(), 2, Rationals).unwrap();
                assert_eq!(derivation_basis(&c).unwrap().is_empty(), p.is_antichain());
            }
        }
    }

    #[test]
    fn checker_examples() {
        let c = AlgebraContext::new(Poset::chain(2), 3, Rationals).unwrap();
        assert!(check_derivation(&c, &LinearMap::zero(&Rationals, 4, 4)).unwrap());
        assert!(!check_derivation(&c, &LinearMap::identity(&Rationals, 4)).unwrap());
        assert!(check_derivation(&c, &LinearMap::identity(&Rationals, 3)).is_err());
        let id = LinearMap::identity(&Rationals, 4);
        let v = structural_violations(&c, &id).unwrap();
        assert_eq!(v.len(), 4);
        assert!(v[1].starts_with("D(e_xxy)"));
        assert!(structural_violations(&c, &LinearMap::zero(&Rationals, 4, 4)).unwrap().is_empty());
    }
}
