use crate::algebra::{identity, is_associative, is_commutative, multiply, Algebra, Elem, LeftMultiplication};
use crate::error::{Error, Result};
use crate::ring::{linalg, Field, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random elements tried per splitting step before giving up.
pub const SPLITTING_ATTEMPTS: usize = 32;

/// The primitive idempotents of a commutative, associative, unital algebra
/// over a field that is split semisimple (a product of copies of the field).
///
/// Starting from the identity, each idempotent `e` whose component `eA` has
/// dimension above one is split: for a random `t` in `eA` the minimal
/// polynomial of `t` is computed; if it has at least two roots and splits
/// into distinct linear factors, the Lagrange idempotents
/// `prod_{j != i} (t - l_j e) / (l_i - l_j)` refine `e`. Over a small field a
/// single `t` may not separate every component, hence the repetition.
///
/// The result is sorted by the index of the first nonzero coordinate.
pub fn primitive_idempotents<A>(alg: &A, seed: u64) -> Result<Vec<Vec<Elem<A>>>>
where
    A: Algebra + ?Sized,
    A::Ring: Field,
{
    let d = alg.dim();
    if d == 0 {
        return Ok(Vec::new());
    }
    if !is_commutative(alg) {
        return Err(Error::NotCommutative);
    }
    if !is_associative(alg) {
        return Err(Error::NotAssociative);
    }
    let field = alg.ring();
    let one = identity(alg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pending = vec![one.clone()];
    let mut done: Vec<Vec<Elem<A>>> = Vec::new();
    while let Some(e) = pending.pop() {
        let left = LeftMultiplication::new(alg, &e);
        let component: Vec<Vec<Elem<A>>> = (0..d).map(|j| left.apply(field, &field.unit_vec(d, j))).collect();
        let rank = linalg::rref(field, component.clone()).len();
        if rank == 1 {
            done.push(e);
            continue;
        }
        let parts = split(alg, &e, &component, &mut rng).ok_or_else(|| {
            Error::SplittingFailed(format!(
                "no element of a {rank}-dimensional component separated it after {SPLITTING_ATTEMPTS} attempts; \
                 the algebra may not be split semisimple over {} (try Q)",
                field.spec()
            ))
        })?;
        pending.extend(parts);
    }
    verify(alg, &done, &one)?;
    done.sort_by_key(|e| e.iter().position(|a| !field.is_zero(a)));
    Ok(done)
}

/// Splits the idempotent `e` into at least two orthogonal idempotents.
fn split<A>(alg: &A, e: &[Elem<A>], component: &[Vec<Elem<A>>], rng: &mut ChaCha8Rng) -> Option<Vec<Vec<Elem<A>>>>
where
    A: Algebra + ?Sized,
    A::Ring: Field,
{
    let field = alg.ring();
    let d = alg.dim();
    for _ in 0..SPLITTING_ATTEMPTS {
        let mut t = field.zero_vec(d);
        for c in component {
            let a = field.random(rng);
            for (o, x) in t.iter_mut().zip(c) {
                field.add_mul_assign(o, &a, x);
            }
        }
        let Some(poly) = minimal_polynomial(alg, e, &t) else { continue };
        if poly.len() < 3 {
            continue;
        }
        let Some(roots) = field.split_roots(&poly) else { continue };
        let scaled: Vec<Vec<Elem<A>>> = roots
            .iter()
            .map(|l| {
                let le: Vec<Elem<A>> = e.iter().map(|x| field.mul(l, x)).collect();
                t.iter().zip(&le).map(|(a, b)| field.sub(a, b)).collect()
            })
            .collect();
        let mut parts = Vec::with_capacity(roots.len());
        for (i, li) in roots.iter().enumerate() {
            let mut acc = e.to_vec();
            for (j, lj) in roots.iter().enumerate().filter(|(j, _)| *j != i) {
                let inv = field.inv(&field.sub(li, lj));
                acc = multiply(alg, &acc, &scaled[j]).ok()?.iter().map(|x| field.mul(x, &inv)).collect();
            }
            parts.push(acc);
        }
        return Some(parts);
    }
    None
}

/// Minimal polynomial of `t` in the unital algebra `eA`, monic with the
/// constant term first: the first power `t^k` dependent on `e, t, ..., t^{k-1}`.
fn minimal_polynomial<A>(alg: &A, e: &[Elem<A>], t: &[Elem<A>]) -> Option<Vec<Elem<A>>>
where
    A: Algebra + ?Sized,
    A::Ring: Field,
{
    let field = alg.ring();
    let d = alg.dim();
    let mut powers = vec![e.to_vec()];
    let left = LeftMultiplication::new(alg, t);
    for _ in 0..=d {
        let next = left.apply(field, powers.last().expect("nonempty"));
        let equations: Vec<Vec<Elem<A>>> =
            (0..d).map(|r| powers.iter().map(|p| p[r].clone()).collect()).collect();
        if let Some(a) = linalg::solve(field, &equations, &next) {
            let mut poly: Vec<Elem<A>> = a.iter().map(|x| field.neg(x)).collect();
            poly.push(field.one());
            return Some(poly);
        }
        powers.push(next);
    }
    None
}

fn verify<A>(alg: &A, idempotents: &[Vec<Elem<A>>], one: &[Elem<A>]) -> Result<()>
where
    A: Algebra + ?Sized,
    A::Ring: Field,
{
    let field = alg.ring();
    let mut sum = field.zero_vec(alg.dim());
    for (i, e) in idempotents.iter().enumerate() {
        for (j, f) in idempotents.iter().enumerate() {
            let p = multiply(alg, e, f)?;
            let ok = if i == j { p == *e } else { field.is_zero_vec(&p) };
            if !ok {
                return Err(Error::SplittingFailed("computed idempotents are not orthogonal idempotents".into()));
            }
        }
        sum = sum.iter().zip(e).map(|(a, b)| field.add(a, b)).collect();
    }
    if sum != one {
        return Err(Error::SplittingFailed("computed idempotents do not sum to the identity".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraContext, StructureConstants};
    use crate::lattice::{ideal_j, z_chain, AlgebraSubmodule, QuotientAlgebra};
    use crate::poset::{parse_poset, Poset};
    use crate::ring::{PrimeField, Rationals};

    /// `F^r` presented in the basis `b_i = e_0 + ... + e_i` (a non-idempotent basis).
    fn staircase<F: Field>(field: F, r: usize) -> StructureConstants<F> {
        // b_i b_j = b_min(i, j).
        StructureConstants::from_fn(field.clone(), r, |i, j| field.unit_vec(r, i.min(j))).unwrap()
    }

    #[test]
    fn product_of_fields_in_a_skew_basis() {
        for r in 1..=5 {
            for field_case in 0..2 {
                let count = if field_case == 0 {
                    primitive_idempotents(&staircase(Rationals, r), 3).unwrap().len()
                } else {
                    primitive_idempotents(&staircase(PrimeField::new(2), r), 3).unwrap().len()
                };
                assert_eq!(count, r);
            }
        }
    }

    #[test]
    fn one_dimensional_unital_algebra() {
        let sc = StructureConstants::from_fn(Rationals, 1, |_, _| vec![Rationals.one()]).unwrap();
        assert_eq!(primitive_idempotents(&sc, 0).unwrap(), vec![vec![Rationals.one()]]);
    }

    #[test]
    fn quotient_idempotents() {
        let c = AlgebraContext::new(Poset::chain(2), 3, Rationals).unwrap();
        let q = QuotientAlgebra::new(&c, &AlgebraSubmodule::whole(&c), &ideal_j(&c, 1).unwrap()).unwrap();
        assert_eq!(primitive_idempotents(&q, 0).unwrap().len(), 2);
        let c = AlgebraContext::new(Poset::chain(3), 3, Rationals).unwrap();
        let chain = z_chain(&c).unwrap();
        let q = QuotientAlgebra::new(&c, &chain.c2, &chain.c3).unwrap();
        assert_eq!(primitive_idempotents(&q, 0).unwrap().len(), 2);
        let diamond = parse_poset("elements: 0 a b 1\ncovers:\n0 a\n0 b\na 1\nb 1").unwrap();
        let c = AlgebraContext::new(diamond, 3, PrimeField::new(2)).unwrap();
        let chain = z_chain(&c).unwrap();
        let q = QuotientAlgebra::new(&c, &chain.c2, &chain.c3).unwrap();
        assert_eq!(primitive_idempotents(&q, 0).unwrap().len(), 4);
    }

    #[test]
    fn failures() {
        // F[x]/(x^2) is local but not a field.
        let dual = StructureConstants::from_fn(Rationals, 2, |i, j| {
            if i + j < 2 { Rationals.unit_vec(2, i + j) } else { Rationals.zero_vec(2) }
        })
        .unwrap();
        assert!(matches!(primitive_idempotents(&dual, 0), Err(Error::SplittingFailed(_))));
        // Q(i) = Q[x]/(x^2 + 1) does not split over Q.
        let gauss = StructureConstants::from_fn(Rationals, 2, |i, j| match (i, j) {
            (1, 1) => vec![Rationals.from_i64(-1), Rationals.zero()],
            _ => Rationals.unit_vec(2, i + j),
        })
        .unwrap();
        assert!(matches!(primitive_idempotents(&gauss, 0), Err(Error::SplittingFailed(_))));
        let c = AlgebraContext::new(Poset::chain(2), 3, Rationals).unwrap();
        assert_eq!(primitive_idempotents(&c, 0), Err(Error::NotCommutative));
        let nilpotent = StructureConstants::from_fn(Rationals, 1, |_, _| vec![Rationals.zero()]).unwrap();
        assert_eq!(primitive_idempotents(&nilpotent, 0), Err(Error::NoIdentity));
    }
}
