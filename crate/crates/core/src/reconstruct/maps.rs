use super::{reconstruct_poset, AbstractAlgebra};
use crate::algebra::{Algebra, AlgebraContext, LeftMultiplication, LinearMap, StructureConstants};
use crate::error::{Error, Result};
use crate::poset::{find_isomorphism, is_order_isomorphism};
use crate::ring::{linalg, Field, Ring, RingSpec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A seeded random matrix of determinant `±1`: a permutation matrix
/// followed by `2d` elementary row additions `r_i += c r_j`. Over `Q` the
/// multipliers are `±1, ±2`; over `F_p` any nonzero residue.
pub fn random_unimodular<F: Field>(field: &F, d: usize, seed: u64) -> Vec<Vec<F::Elem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(&mut rng);
    let mut m: Vec<Vec<F::Elem>> = perm.iter().map(|&p| field.unit_vec(d, p)).collect();
    if d < 2 {
        return m;
    }
    for _ in 0..2 * d {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        let c = if field.spec() == RingSpec::Rationals {
            field.from_i64(*[1, -1, 2, -2].choose(&mut rng).expect("nonempty"))
        } else {
            loop {
                let c = field.random(&mut rng);
                if !field.is_zero(&c) {
                    break c;
                }
            }
        };
        let src = m[j].clone();
        for (t, s) in m[i].iter_mut().zip(&src) {
            field.add_mul_assign(t, &c, s);
        }
    }
    m
}

/// The table of `alg` in the basis given by the columns of `t`.
pub fn conjugate_by<A>(alg: &A, t: &LinearMap<A::Ring>) -> Result<StructureConstants<A::Ring>>
where
    A: Algebra + ?Sized,
    A::Ring: Field,
{
    let d = alg.dim();
    if t.domain_dim() != d || t.codomain_dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: t.domain_dim() });
    }
    let inv = linalg::inverse(alg.ring(), t.rows())
        .ok_or_else(|| Error::InvalidTable("change of basis is not invertible".into()))?;
    let sc = StructureConstants::from_fn(alg.ring().clone(), d, |i, j| {
        linalg::to_dense(alg.ring(), alg.basis_product_row(i, j), d)
    })?;
    sc.change_basis(t.rows(), &inv)
}

/// The algebra of `ctx` rewritten in a seeded random basis, together with
/// the change of basis `T` (column `i` is the new basis vector `b'_i`).
pub fn scramble<F: Field>(ctx: &AlgebraContext<F>, seed: u64) -> Result<(AbstractAlgebra<F>, LinearMap<F>)> {
    let d = ctx.dim();
    let t = LinearMap::new(ctx.ring(), d, random_unimodular(ctx.ring(), d, seed))?;
    let table = conjugate_by(ctx, &t)?;
    Ok((AbstractAlgebra::new(table)?, t))
}

/// The basis permutation `e_(x_1..x_n) -> e_(phi x_1..phi x_n)` of an order
/// isomorphism `phi: P -> Q` (`phi[x]` is the image of `x`).
pub fn induced_isomorphism<R: Ring>(
    phi: &[usize],
    from: &AlgebraContext<R>,
    to: &AlgebraContext<R>,
) -> Result<LinearMap<R>> {
    if from.n() != to.n() || from.ring().spec() != to.ring().spec() {
        return Err(Error::ContextMismatch);
    }
    if !is_order_isomorphism(from.poset(), to.poset(), phi) {
        return Err(Error::NotOrderIsomorphism(format!("{phi:?}")));
    }
    let perm: Vec<usize> = from
        .basis()
        .iter()
        .map(|x| {
            let image: Vec<usize> = x.entries().iter().map(|&e| phi[e]).collect();
            to.index_of(&image).expect("order isomorphisms map multichains to multichains")
        })
        .collect();
    Ok(LinearMap::permutation(from.ring(), &perm))
}

/// Whether `t: A -> B` is bijective and multiplicative on basis pairs.
pub fn is_algebra_isomorphism<A, B>(t: &LinearMap<A::Ring>, a: &A, b: &B) -> Result<bool>
where
    A: Algebra + ?Sized,
    B: Algebra<Ring = A::Ring> + ?Sized,
{
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    if t.domain_dim() != a.dim() || t.codomain_dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: t.domain_dim() });
    }
    if !t.is_invertible()? {
        return Ok(false);
    }
    let ring = a.ring();
    let d = a.dim();
    let images: Vec<Vec<_>> = (0..d).map(|j| t.column(j)).collect();
    for i in 0..d {
        let left = LeftMultiplication::new(b, &images[i]);
        for j in 0..d {
            let product = linalg::to_dense(ring, a.basis_product_row(i, j), d);
            if t.apply(&product)? != left.apply(ring, &images[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Reconstructs both posets and searches for an order isomorphism between
/// them. The returned bijection maps elements of the poset recovered from
/// `a` to those recovered from `b`.
pub fn decide_isomorphism<A, B>(a: &A, b: &B, seed: u64) -> Result<Option<Vec<usize>>>
where
    A: Algebra + ?Sized,
    B: Algebra<Ring = A::Ring> + ?Sized,
    A::Ring: Field,
{
    if a.dim() != b.dim() {
        return Ok(None);
    }
    let pa = reconstruct_poset(a, seed)?.poset;
    let pb = reconstruct_poset(b, seed)?.poset;
    Ok(find_isomorphism(&pa, &pb))
}
