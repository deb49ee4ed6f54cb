//! Recovering a poset from the anonymous structure constants of a third
//! flag algebra, and the isomorphisms between such algebras.

mod exhaustive;
mod maps;

pub use exhaustive::{enumerate_isomorphisms_exhaustive, EXHAUSTIVE_MAX_DIM};
pub use maps::{conjugate_by, decide_isomorphism, induced_isomorphism, is_algebra_isomorphism, random_unimodular, scramble};

use crate::algebra::{Algebra, StructureConstants};
use crate::error::{Error, Result};
use crate::lattice::{commutator_chain, primitive_idempotents, products_within, AlgebraSubmodule, QuotientAlgebra};
use crate::poset::Poset;
use crate::ring::{Field, Ring, SparseRow};
use serde_json::{json, Value};

/// Structure constants over an indecomposable ring, with no poset attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractAlgebra<R: Ring> {
    table: StructureConstants<R>,
}

impl<R: Ring> AbstractAlgebra<R> {
    pub fn new(table: StructureConstants<R>) -> Result<Self> {
        let spec = table.ring().spec();
        if !spec.is_indecomposable() {
            return Err(Error::Capability(format!(
                "{spec} is decomposable; reconstruction needs an indecomposable coefficient ring"
            )));
        }
        Ok(AbstractAlgebra { table })
    }

    pub fn table(&self) -> &StructureConstants<R> {
        &self.table
    }
}

impl<R: Ring> Algebra for AbstractAlgebra<R> {
    type Ring = R;

    fn ring(&self) -> &R {
        self.table.ring()
    }
    fn dim(&self) -> usize {
        self.table.dim()
    }
    fn algebra_id(&self) -> u64 {
        self.table.algebra_id()
    }
    fn basis_product_row(&self, i: usize, j: usize) -> &SparseRow<R::Elem> {
        self.table.get(i, j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StageRanks {
    pub dim: usize,
    pub c1: usize,
    pub c2: usize,
    pub c3: usize,
    pub elements: usize,
    pub covers: usize,
}

#[derive(Clone, Debug)]
pub struct Reconstruction<F: Field> {
    pub poset: Poset,
    /// Lift of the primitive idempotent of `A / C1` labelling element `x`.
    pub element_idempotents: Vec<Vec<F::Elem>>,
    /// Lifts of the primitive idempotents of `C2 / C3`, one per entry of
    /// `poset.covers()`.
    pub cover_idempotents: Vec<Vec<F::Elem>>,
    pub ranks: StageRanks,
    ring: F,
}

impl<F: Field> Reconstruction<F> {
    pub fn to_json(&self) -> Value {
        let fmt = |v: &Vec<F::Elem>| -> Vec<String> { v.iter().map(|a| self.ring.format(a)).collect() };
        json!({
            "elements": self.poset.size(),
            "covers": self.poset.covers(),
            "element_idempotents": self.element_idempotents.iter().map(fmt).collect::<Vec<_>>(),
            "cover_idempotents": self.cover_idempotents.iter().map(fmt).collect::<Vec<_>>(),
            "ranks": {
                "dim": self.ranks.dim,
                "c1": self.ranks.c1,
                "c2": self.ranks.c2,
                "c3": self.ranks.c3,
                "elements": self.ranks.elements,
                "covers": self.ranks.covers,
            },
        })
    }
}

fn diagnostic(msg: impl Into<String>) -> Error {
    Error::Reconstruction(msg.into())
}

/// Runs the reconstruction pipeline on an algebra presumed isomorphic to
/// some `I^3(P, F)`:
///
/// 1. `C1 = [A, A]`; the primitive idempotents of `A / C1` are the elements.
/// 2. `C2 = [C1, C1]`, `C3 = [C2, C2]`; the primitive idempotents of
///    `C2 / C3` are the covers.
/// 3. A cover idempotent `f` goes from `x` to `y` where `e_x f` and `f e_y`
///    (products of lifts) fall outside `C2`. This does not depend on the
///    lifts because `C1 C2 + C2 C1 ⊆ C2` and `A C3 + C3 A ⊆ C2`, which are
///    checked here rather than assumed.
/// 4. The poset is the reflexive-transitive closure of the cover digraph.
pub fn reconstruct_poset<A>(alg: &A, seed: u64) -> Result<Reconstruction<A::Ring>>
where
    A: Algebra + ?Sized,
    A::Ring: Field,
{
    let field = alg.ring();
    let whole = AlgebraSubmodule::whole(alg);
    let chain = commutator_chain(alg)?;

    let elements_q = QuotientAlgebra::new(alg, &whole, &chain.c1)
        .map_err(|e| diagnostic(format!("A / [A, A] is not a quotient algebra: {e}")))?;
    let element_idempotents: Vec<Vec<_>> = primitive_idempotents(&elements_q, seed)
        .map_err(|e| diagnostic(format!("A / [A, A]: {e}")))?
        .iter()
        .map(|c| elements_q.lift(c))
        .collect::<Result<_>>()?;

    if !products_within(alg, &chain.c1, &chain.c2, &chain.c2, true)? {
        return Err(diagnostic("self-check failed: C1 C2 + C2 C1 is not contained in C2"));
    }
    if !products_within(alg, &whole, &chain.c3, &chain.c2, true)? {
        return Err(diagnostic("self-check failed: A C3 + C3 A is not contained in C2"));
    }

    let covers_q = QuotientAlgebra::new(alg, &chain.c2, &chain.c3)
        .map_err(|e| diagnostic(format!("C2 / C3 is not a quotient algebra: {e}")))?;
    let cover_lifts: Vec<Vec<_>> = primitive_idempotents(&covers_q, seed.wrapping_add(1))
        .map_err(|e| diagnostic(format!("C2 / C3: {e}")))?
        .iter()
        .map(|c| covers_q.lift(c))
        .collect::<Result<_>>()?;

    let outside = |v: Vec<_>| -> Result<bool> { Ok(!chain.c2.contains(&v)?) };
    let mut edges = Vec::with_capacity(cover_lifts.len());
    for (k, f) in cover_lifts.iter().enumerate() {
        let mut sources = Vec::new();
        let mut targets = Vec::new();
        for (x, e) in element_idempotents.iter().enumerate() {
            if outside(crate::algebra::multiply(alg, e, f)?)? {
                sources.push(x);
            }
            if outside(crate::algebra::multiply(alg, f, e)?)? {
                targets.push(x);
            }
        }
        match (sources.as_slice(), targets.as_slice()) {
            ([x], [y]) if x != y => edges.push((*x, *y, k)),
            ([x], [_]) => return Err(diagnostic(format!("cover idempotent {k} is a loop at element {x}; closure is not antisymmetric"))),
            _ => {
                return Err(diagnostic(format!(
                    "cover idempotent {k} has sources {sources:?} and targets {targets:?}; expected exactly one of each"
                )))
            }
        }
    }

    let m = element_idempotents.len();
    let pairs: Vec<(usize, usize)> = edges.iter().map(|&(x, y, _)| (x, y)).collect();
    let poset = Poset::from_covers(Poset::default_names(m), &pairs).map_err(|e| match e {
        Error::Cycle(c) => diagnostic(format!("cover digraph has a cycle ({c}); closure is not antisymmetric")),
        other => diagnostic(other.to_string()),
    })?;
    let mut sorted_pairs = pairs.clone();
    sorted_pairs.sort_unstable();
    sorted_pairs.dedup();
    if sorted_pairs.len() != pairs.len() {
        return Err(diagnostic("two cover idempotents attach to the same pair of elements"));
    }
    if sorted_pairs != poset.covers() {
        return Err(diagnostic("some recovered edges are not covers of their transitive closure"));
    }
    let cover_idempotents = poset
        .covers()
        .iter()
        .map(|c| {
            let k = edges.iter().find(|(x, y, _)| (*x, *y) == *c).expect("edge present").2;
            cover_lifts[k].clone()
        })
        .collect();
    let ranks = StageRanks {
        dim: alg.dim(),
        c1: chain.c1.rank(),
        c2: chain.c2.rank(),
        c3: chain.c3.rank(),
        elements: m,
        covers: pairs.len(),
    };
    Ok(Reconstruction { poset, element_idempotents, cover_idempotents, ranks, ring: field.clone() })
}
