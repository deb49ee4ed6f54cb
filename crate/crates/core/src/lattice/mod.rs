//! Submodules of an algebra: the ideals `J^n_k`, submodule and commutator
//! products, the commutator chain, quotients and primitive idempotents.

mod idempotent;
mod quotient;

pub use idempotent::{primitive_idempotents, SPLITTING_ATTEMPTS};
pub use quotient::QuotientAlgebra;

use crate::algebra::{Algebra, AlgebraContext, Elem, LeftMultiplication};
use crate::error::{Error, Result};
use crate::ring::{linalg, Ring, SparseRow, Submodule};
use std::collections::HashSet;

/// A submodule of the coefficient space of a particular algebra.
#[derive(Clone, Debug)]
pub struct AlgebraSubmodule<R: Ring> {
    algebra: u64,
    module: Submodule<R>,
}

impl<R: Ring> PartialEq for AlgebraSubmodule<R> {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.module == other.module
    }
}

impl<R: Ring> Eq for AlgebraSubmodule<R> {}

impl<R: Ring> AlgebraSubmodule<R> {
    pub fn span<A: Algebra<Ring = R> + ?Sized>(alg: &A, vectors: Vec<Vec<R::Elem>>) -> Result<Self> {
        Ok(AlgebraSubmodule { algebra: alg.algebra_id(), module: Submodule::span(alg.ring(), alg.dim(), vectors)? })
    }

    pub fn span_sparse<A: Algebra<Ring = R> + ?Sized>(alg: &A, rows: Vec<SparseRow<R::Elem>>) -> Result<Self> {
        Ok(AlgebraSubmodule {
            algebra: alg.algebra_id(),
            module: Submodule::span_sparse(alg.ring(), alg.dim(), rows)?,
        })
    }

    pub fn whole<A: Algebra<Ring = R> + ?Sized>(alg: &A) -> Self {
        AlgebraSubmodule { algebra: alg.algebra_id(), module: Submodule::full(alg.ring(), alg.dim()) }
    }

    pub fn zero<A: Algebra<Ring = R> + ?Sized>(alg: &A) -> Self {
        AlgebraSubmodule { algebra: alg.algebra_id(), module: Submodule::zero(alg.ring(), alg.dim()) }
    }

    pub fn algebra_id(&self) -> u64 {
        self.algebra
    }

    pub fn module(&self) -> &Submodule<R> {
        &self.module
    }

    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero()
    }

    pub fn basis(&self) -> &[Vec<R::Elem>] {
        self.module.basis()
    }

    pub fn contains(&self, v: &[R::Elem]) -> Result<bool> {
        self.module.contains(v)
    }

    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        same_algebra(self.algebra, other.algebra)?;
        self.module.is_subset_of(&other.module)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        same_algebra(self.algebra, other.algebra)?;
        Ok(AlgebraSubmodule { algebra: self.algebra, module: self.module.sum(&other.module)? })
    }
}

fn same_algebra(a: u64, b: u64) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

fn check_owner<A: Algebra + ?Sized>(alg: &A, u: &AlgebraSubmodule<A::Ring>) -> Result<()> {
    same_algebra(alg.algebra_id(), u.algebra)
}

/// `J^n_k`: spanned by the `e_x` with `l(x_1, x_n) >= k`.
pub fn ideal_j<R: Ring>(ctx: &AlgebraContext<R>, k: usize) -> Result<AlgebraSubmodule<R>> {
    let p = ctx.poset();
    let one = ctx.ring().one();
    let rows = ctx
        .basis()
        .iter()
        .enumerate()
        .filter(|(_, x)| p.length(x.first(), x.last()).expect("multichain endpoints are comparable") >= k)
        .map(|(i, _)| vec![(i, one.clone())])
        .collect();
    AlgebraSubmodule::span_sparse(ctx, rows)
}

/// Collects nonzero vectors once each, as sparse rows.
struct Generators<R: Ring> {
    ring: R,
    seen: HashSet<SparseRow<R::Elem>>,
    rows: Vec<SparseRow<R::Elem>>,
}

impl<R: Ring> Generators<R> {
    fn new(ring: &R) -> Self {
        Generators { ring: ring.clone(), seen: HashSet::new(), rows: Vec::new() }
    }

    fn push(&mut self, v: &[R::Elem]) {
        let row = linalg::to_sparse(&self.ring, v);
        if !row.is_empty() && self.seen.insert(row.clone()) {
            self.rows.push(row);
        }
    }
}

/// `UV`: the span of the products of the basis rows of `U` and `V`.
pub fn mul_submodule<A: Algebra + ?Sized>(
    alg: &A,
    u: &AlgebraSubmodule<A::Ring>,
    v: &AlgebraSubmodule<A::Ring>,
) -> Result<AlgebraSubmodule<A::Ring>> {
    check_owner(alg, u)?;
    check_owner(alg, v)?;
    let ring = alg.ring();
    let mut gens = Generators::new(ring);
    for a in u.basis() {
        let left = LeftMultiplication::new(alg, a);
        for b in v.basis() {
            gens.push(&left.apply(ring, b));
        }
    }
    AlgebraSubmodule::span_sparse(alg, gens.rows)
}

/// `[U, V]`: the span of the commutators of basis rows.
pub fn commutator_submodule<A: Algebra + ?Sized>(
    alg: &A,
    u: &AlgebraSubmodule<A::Ring>,
    v: &AlgebraSubmodule<A::Ring>,
) -> Result<AlgebraSubmodule<A::Ring>> {
    check_owner(alg, u)?;
    check_owner(alg, v)?;
    let ring = alg.ring();
    let lefts_u: Vec<_> = u.basis().iter().map(|a| LeftMultiplication::new(alg, a)).collect();
    let same = u == v;
    let lefts_v: Vec<_> =
        if same { Vec::new() } else { v.basis().iter().map(|b| LeftMultiplication::new(alg, b)).collect() };
    let mut gens = Generators::new(ring);
    for (i, a) in u.basis().iter().enumerate() {
        for (j, b) in v.basis().iter().enumerate() {
            // [u_i, u_j] = -[u_j, u_i] and [u_i, u_i] = 0.
            if same && j <= i {
                continue;
            }
            let lv = if same { &lefts_u[j] } else { &lefts_v[j] };
            let ab = lefts_u[i].apply(ring, b);
            let ba = lv.apply(ring, a);
            let c: Vec<Elem<A>> = ab.iter().zip(&ba).map(|(x, y)| ring.sub(x, y)).collect();
            gens.push(&c);
        }
    }
    AlgebraSubmodule::span_sparse(alg, gens.rows)
}

/// `U V ⊆ W` and, when `both_sides`, also `V U ⊆ W`.
pub fn products_within<A: Algebra + ?Sized>(
    alg: &A,
    u: &AlgebraSubmodule<A::Ring>,
    v: &AlgebraSubmodule<A::Ring>,
    w: &AlgebraSubmodule<A::Ring>,
    both_sides: bool,
) -> Result<bool> {
    for s in [u, v, w] {
        check_owner(alg, s)?;
    }
    let ring = alg.ring();
    for a in u.basis() {
        let left = LeftMultiplication::new(alg, a);
        for b in v.basis() {
            if !w.contains(&left.apply(ring, b))? {
                return Ok(false);
            }
        }
    }
    if both_sides {
        for b in v.basis() {
            let left = LeftMultiplication::new(alg, b);
            for a in u.basis() {
                if !w.contains(&left.apply(ring, a))? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `V` is a two-sided ideal of `U`: `UV ⊆ V` and `VU ⊆ V`.
pub fn is_ideal_of<A: Algebra + ?Sized>(
    alg: &A,
    v: &AlgebraSubmodule<A::Ring>,
    u: &AlgebraSubmodule<A::Ring>,
) -> Result<bool> {
    products_within(alg, u, v, v, true)
}

pub fn is_subalgebra<A: Algebra + ?Sized>(alg: &A, u: &AlgebraSubmodule<A::Ring>) -> Result<bool> {
    products_within(alg, u, u, u, false)
}

/// `C1 = [A, A]`, `C2 = [C1, C1]`, `C3 = [C2, C2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorChain<R: Ring> {
    pub c1: AlgebraSubmodule<R>,
    pub c2: AlgebraSubmodule<R>,
    pub c3: AlgebraSubmodule<R>,
}

impl<R: Ring> CommutatorChain<R> {
    pub fn ranks(&self) -> [usize; 3] {
        [self.c1.rank(), self.c2.rank(), self.c3.rank()]
    }
}

/// The first three terms of the commutator chain of any algebra.
pub fn commutator_chain<A: Algebra + ?Sized>(alg: &A) -> Result<CommutatorChain<A::Ring>> {
    let whole = AlgebraSubmodule::whole(alg);
    let c1 = commutator_submodule(alg, &whole, &whole)?;
    let c2 = commutator_submodule(alg, &c1, &c1)?;
    let c3 = commutator_submodule(alg, &c2, &c2)?;
    Ok(CommutatorChain { c1, c2, c3 })
}

/// The commutator chain of `I^3(P, R)`.
pub fn z_chain<R: Ring>(ctx: &AlgebraContext<R>) -> Result<CommutatorChain<R>> {
    if ctx.n() != 3 {
        return Err(Error::Unsupported(format!("the commutator chain is only computed for n = 3, not n = {}", ctx.n())));
    }
    commutator_chain(ctx)
}

/// `span{e_xxy + e_xyy : l(x, y) = 1} + J^3_2`, built directly from the poset.
pub fn explicit_c2<R: Ring>(ctx: &AlgebraContext<R>) -> Result<AlgebraSubmodule<R>> {
    if ctx.n() != 3 {
        return Err(Error::Unsupported("the explicit C2 basis is stated for n = 3".into()));
    }
    let one = ctx.ring().one();
    let mut rows: Vec<SparseRow<R::Elem>> = ctx
        .poset()
        .covers()
        .iter()
        .map(|&(x, y)| {
            let a = ctx.index_of(&[x, x, y]).expect("cover tuple");
            let b = ctx.index_of(&[x, y, y]).expect("cover tuple");
            vec![(a, one.clone()), (b, one.clone())]
        })
        .collect();
    rows.extend(ideal_j(ctx, 2)?.basis().iter().map(|r| linalg::to_sparse(ctx.ring(), r)));
    AlgebraSubmodule::span_sparse(ctx, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{enumerate_posets, parse_poset, Poset};
    use crate::ring::{Integers, IntegersMod, PrimeField, Rationals};

    fn ctx(p: Poset) -> AlgebraContext<Rationals> {
        AlgebraContext::new(p, 3, Rationals).unwrap()
    }

    fn units(c: &AlgebraContext<Rationals>, tuples: &[&[usize]]) -> AlgebraSubmodule<Rationals> {
        let d = c.dim();
        AlgebraSubmodule::span(c, tuples.iter().map(|t| Rationals.unit_vec(d, c.index_of(t).unwrap())).collect())
            .unwrap()
    }

    #[test]
    fn ideal_j_examples() {
        let c = ctx(Poset::chain(2));
        assert_eq!(ideal_j(&c, 0).unwrap(), AlgebraSubmodule::whole(&c));
        assert_eq!(ideal_j(&c, 1).unwrap(), units(&c, &[&[0, 0, 1], &[0, 1, 1]]));
        assert!(ideal_j(&c, 2).unwrap().is_zero());
        assert!(matches!(
            ideal_j(&AlgebraContext::new(Poset::chain(2), 3, IntegersMod::new(6)).unwrap(), 1),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn mul_examples() {
        let c = ctx(Poset::chain(2));
        let j1 = ideal_j(&c, 1).unwrap();
        assert!(mul_submodule(&c, &j1, &AlgebraSubmodule::zero(&c)).unwrap().is_zero());
        let sq = mul_submodule(&c, &j1, &j1).unwrap();
        let d = c.dim();
        let mut v = Rationals.zero_vec(d);
        v[c.index_of(&[0, 0, 1]).unwrap()] = Rationals.one();
        v[c.index_of(&[0, 1, 1]).unwrap()] = Rationals.one();
        assert_eq!(sq, AlgebraSubmodule::span(&c, vec![v]).unwrap());
        let a = ctx(Poset::antichain(3));
        let whole = AlgebraSubmodule::whole(&a);
        assert_eq!(mul_submodule(&a, &whole, &whole).unwrap(), whole);
        let other = ctx(Poset::chain(2));
        assert_eq!(mul_submodule(&c, &j1, &ideal_j(&other, 1).unwrap()), Err(Error::ContextMismatch));
    }

    #[test]
    fn commutator_examples() {
        let a = ctx(Poset::antichain(3));
        let whole = AlgebraSubmodule::whole(&a);
        assert!(commutator_submodule(&a, &whole, &whole).unwrap().is_zero());
        let c = ctx(Poset::chain(2));
        let whole = AlgebraSubmodule::whole(&c);
        let c1 = commutator_submodule(&c, &whole, &whole).unwrap();
        assert_eq!(c1, ideal_j(&c, 1).unwrap());
        assert_eq!(c1.rank(), 2);
        // Asymmetric pair exercises the separate left multiplications.
        let j1 = ideal_j(&c, 1).unwrap();
        let mixed = commutator_submodule(&c, &whole, &j1).unwrap();
        assert!(mixed.is_subset_of(&mul_submodule(&c, &whole, &j1).unwrap().sum(&mul_submodule(&c, &j1, &whole).unwrap()).unwrap()).unwrap());
    }

    #[test]
    fn z_chain_examples() {
        assert_eq!(z_chain(&ctx(Poset::chain(2))).unwrap().ranks(), [2, 1, 0]);
        let c = ctx(Poset::chain(3));
        let chain = z_chain(&c).unwrap();
        assert_eq!(chain.c3, units(&c, &[&[0, 0, 2], &[0, 1, 2], &[0, 2, 2]]));
        assert_eq!(chain.c3, ideal_j(&c, 2).unwrap());
        assert_eq!(z_chain(&ctx(Poset::antichain(4))).unwrap().ranks(), [0, 0, 0]);
        let c2 = AlgebraContext::new(Poset::chain(2), 2, Rationals).unwrap();
        assert!(matches!(z_chain(&c2), Err(Error::Unsupported(_))));
    }

    fn check_lattice<R: Ring>(c: &AlgebraContext<R>) {
        let whole = AlgebraSubmodule::whole(c);
        let len = c.poset().poset_length();
        let mut previous = whole.clone();
        for k in 0..=len + 1 {
            let j = ideal_j(c, k).unwrap();
            assert!(is_ideal_of(c, &j, &whole).unwrap());
            assert!(j.is_subset_of(&previous).unwrap());
            previous = j;
        }
        assert!(previous.is_zero());
        let chain = z_chain(c).unwrap();
        assert_eq!(chain.c1, ideal_j(c, 1).unwrap());
        assert_eq!(chain.c2, mul_submodule(c, &chain.c1, &chain.c1).unwrap());
        assert_eq!(chain.c2, explicit_c2(c).unwrap());
        assert!(is_subalgebra(c, &chain.c2).unwrap());
        assert_eq!(chain.c3, ideal_j(c, 2).unwrap());
        assert!(is_ideal_of(c, &chain.c3, &whole).unwrap());
        let squares = mul_submodule(c, &chain.c1, &chain.c1).unwrap();
        assert!(chain.c2.is_subset_of(&squares).unwrap());
    }

    #[test]
    fn lattice_invariants_for_small_posets() {
        for m in 1..=4 {
            for p in enumerate_posets(m).unwrap() {
                check_lattice(&ctx(p.clone()));
                check_lattice(&AlgebraContext::new(p.clone(), 3, PrimeField::new(2)).unwrap());
                if m <= 3 {
                    check_lattice(&AlgebraContext::new(p, 3, Integers).unwrap());
                }
            }
        }
    }

    #[test]
    fn higher_order_ideals() {
        let p = parse_poset("elements: 0 a b 1\ncovers:\n0 a\n0 b\na 1\nb 1").unwrap();
        let c = AlgebraContext::new(p, 4, Rationals).unwrap();
        let whole = AlgebraSubmodule::whole(&c);
        for k in 0..=3 {
            assert!(is_ideal_of(&c, &ideal_j(&c, k).unwrap(), &whole).unwrap());
        }
    }
}
