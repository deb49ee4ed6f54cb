use super::{check_owner, is_ideal_of, is_subalgebra, AlgebraSubmodule};
use crate::algebra::{Algebra, LeftMultiplication, StructureConstants};
use crate::error::{Error, Result};
use crate::ring::{linalg, Field, SparseRow};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `U / V` for a subalgebra `U` and an ideal `V` of `U`, over a field.
///
/// The quotient basis is a transversal `t_1..t_r` of `V` in `U`: the reduced
/// echelon basis of `U` reduced modulo `V`. Its pivot columns avoid those of
/// `V`, so the coordinate of a coset on `t_k` is read off at the `k`-th
/// transversal pivot after reducing modulo `V`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra<F: Field> {
    numerator: AlgebraSubmodule<F>,
    denominator: AlgebraSubmodule<F>,
    transversal: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    table: StructureConstants<F>,
}

impl<F: Field> QuotientAlgebra<F> {
    pub fn new<A: Algebra<Ring = F> + ?Sized>(
        alg: &A,
        numerator: &AlgebraSubmodule<F>,
        denominator: &AlgebraSubmodule<F>,
    ) -> Result<Self> {
        check_owner(alg, numerator)?;
        check_owner(alg, denominator)?;
        if !denominator.is_subset_of(numerator)? {
            return Err(Error::NotContained);
        }
        if !is_subalgebra(alg, numerator)? {
            return Err(Error::NotSubalgebra);
        }
        if !is_ideal_of(alg, denominator, numerator)? {
            return Err(Error::NotAnIdeal("the denominator is not an ideal of the numerator".into()));
        }
        let field = alg.ring();
        let reduced: Vec<Vec<F::Elem>> =
            numerator.basis().iter().map(|u| denominator.module().reduce(u)).collect::<Result<_>>()?;
        let transversal = linalg::rref(field, reduced);
        let pivots: Vec<usize> = transversal
            .iter()
            .map(|t| t.iter().position(|a| !field.is_zero(a)).expect("echelon rows are nonzero"))
            .collect();
        let r = transversal.len();
        let mut products: Vec<SparseRow<F::Elem>> = Vec::with_capacity(r * r);
        let mut quotient = QuotientAlgebra {
            numerator: numerator.clone(),
            denominator: denominator.clone(),
            transversal,
            pivots,
            table: StructureConstants::new(field.clone(), 0, Vec::new())?,
        };
        for t in &quotient.transversal {
            let left = LeftMultiplication::new(alg, t);
            for s in &quotient.transversal {
                let coords = quotient.project(&left.apply(field, s))?;
                products.push(linalg::to_sparse(field, &coords));
            }
        }
        quotient.table = StructureConstants::new(field.clone(), r, products)?;
        Ok(quotient)
    }

    pub fn numerator(&self) -> &AlgebraSubmodule<F> {
        &self.numerator
    }

    pub fn denominator(&self) -> &AlgebraSubmodule<F> {
        &self.denominator
    }

    /// Coset representatives in ambient coordinates.
    pub fn transversal(&self) -> &[Vec<F::Elem>] {
        &self.transversal
    }

    pub fn table(&self) -> &StructureConstants<F> {
        &self.table
    }

    /// Quotient coordinates of the coset of `v`; `v` must lie in `U`.
    pub fn project(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let field = self.table.ring();
        let r = self.denominator.module().reduce(v)?;
        let coords: Vec<F::Elem> = self.pivots.iter().map(|&p| r[p].clone()).collect();
        let mut rest = r;
        for (c, t) in coords.iter().zip(&self.transversal) {
            linalg::sub_scaled(field, &mut rest, c, t);
        }
        if !field.is_zero_vec(&rest) {
            return Err(Error::NotContained);
        }
        Ok(coords)
    }

    /// The representative `sum_k c_k t_k` of a coset given by coordinates.
    pub fn lift(&self, coords: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if coords.len() != self.transversal.len() {
            return Err(Error::DimensionMismatch { expected: self.transversal.len(), found: coords.len() });
        }
        let field = self.table.ring();
        let mut out = field.zero_vec(self.numerator.module().ambient_dim());
        for (c, t) in coords.iter().zip(&self.transversal) {
            if !field.is_zero(c) {
                for (o, a) in out.iter_mut().zip(t) {
                    field.add_mul_assign(o, c, a);
                }
            }
        }
        Ok(out)
    }

    /// Checks on random representatives `t_i + v`, `t_j + v'` that the
    /// product lands in the coset given by the quotient table.
    pub fn spot_check<A: Algebra<Ring = F> + ?Sized>(&self, alg: &A, seed: u64, trials: usize) -> Result<bool> {
        check_owner(alg, &self.numerator)?;
        let field = alg.ring();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = self.transversal.len();
        let random_in_v = |rng: &mut ChaCha8Rng| {
            let mut v = field.zero_vec(alg.dim());
            for b in self.denominator.basis() {
                let c = field.random(rng);
                for (o, a) in v.iter_mut().zip(b) {
                    field.add_mul_assign(o, &c, a);
                }
            }
            v
        };
        for trial in 0..trials {
            if r == 0 {
                break;
            }
            let (i, j) = (trial % r, (trial / r) % r);
            let shift = |t: &Vec<F::Elem>, rng: &mut ChaCha8Rng| -> Vec<F::Elem> {
                random_in_v(rng).iter().zip(t).map(|(a, b)| field.add(a, b)).collect()
            };
            let a = shift(&self.transversal[i], &mut rng);
            let b = shift(&self.transversal[j], &mut rng);
            let coords = self.project(&crate::algebra::multiply(alg, &a, &b)?)?;
            if linalg::to_sparse(field, &coords) != *self.table.get(i, j) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl<F: Field> Algebra for QuotientAlgebra<F> {
    type Ring = F;

    fn ring(&self) -> &F {
        self.table.ring()
    }
    fn dim(&self) -> usize {
        self.transversal.len()
    }
    fn algebra_id(&self) -> u64 {
        self.table.algebra_id()
    }
    fn basis_product_row(&self, i: usize, j: usize) -> &SparseRow<F::Elem> {
        self.table.get(i, j)
    }
}
