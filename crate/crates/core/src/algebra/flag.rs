//! The partial flag incidence algebra `I^n(P, R)`: functions on the
//! multichains `x_1 <= ... <= x_n` of a finite poset with the product
//! `(fg)(x) = sum_{y in I(x)} f(x_1, y) g(y, x_n)`, where
//! `I(x) = [x_1, x_2] x ... x [x_{n-1}, x_n]`.

use super::{Algebra, StructureConstants};
use crate::error::{Error, Result};
use crate::poset::{MultiChain, Poset};
use crate::ring::{linalg, Ring, SparseRow};
use serde_json::{json, Value};
use std::collections::HashMap;

/// One term of `I(x)`: the middle tuple `y` together with the basis indices
/// of `(x_1, y)` and `(y, x_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalTerm {
    pub middle: Vec<usize>,
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug)]
pub struct AlgebraContext<R: Ring> {
    poset: Poset,
    n: usize,
    basis: Vec<MultiChain>,
    index: HashMap<Vec<usize>, usize>,
    intervals: Vec<Vec<IntervalTerm>>,
    table: StructureConstants<R>,
}

/// An element of `I^n(P, R)`: sorted nonzero coefficients on basis indices.
#[derive(Clone, Debug)]
pub struct FlagElement<R: Ring> {
    context: u64,
    coeffs: SparseRow<R::Elem>,
}

impl<R: Ring> PartialEq for FlagElement<R> {
    fn eq(&self, other: &Self) -> bool {
        self.context == other.context && self.coeffs == other.coeffs
    }
}

impl<R: Ring> Eq for FlagElement<R> {}

impl<R: Ring> FlagElement<R> {
    pub fn coeffs(&self) -> &SparseRow<R::Elem> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn context_id(&self) -> u64 {
        self.context
    }
}

/// The element `f = e_(x^n) + e_(x^(n-1), y) + e_(x^(n-2), y, y)` for
/// `x < y`, together with both bracketings of its cube.
#[derive(Clone, Debug)]
pub struct PowerWitness<R: Ring> {
    pub x: usize,
    pub y: usize,
    pub f: FlagElement<R>,
    pub f_ff: FlagElement<R>,
    pub ff_f: FlagElement<R>,
}

impl<R: Ring> PowerWitness<R> {
    pub fn is_witness(&self) -> bool {
        self.f_ff != self.ff_f
    }
}

/// All tuples in `[a_1, a_2] x ... x [a_{k-1}, a_k]`, lexicographically.
fn interval_product(poset: &Poset, a: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for w in a.windows(2) {
        let choices = poset.interval_unchecked(w[0], w[1]);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |&z| {
                    let mut t = prefix.clone();
                    t.push(z);
                    t
                })
            })
            .collect();
    }
    out
}

impl<R: Ring> AlgebraContext<R> {
    pub fn new(poset: Poset, n: usize, ring: R) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfRange(format!("flag order n must be at least 2, got {n}")));
        }
        let basis = poset.multichains(n);
        let index: HashMap<Vec<usize>, usize> =
            basis.iter().enumerate().map(|(i, x)| (x.entries().to_vec(), i)).collect();
        let intervals: Vec<Vec<IntervalTerm>> = basis
            .iter()
            .map(|x| {
                let e = x.entries();
                interval_product(&poset, e)
                    .into_iter()
                    .map(|middle| {
                        let mut l = vec![e[0]];
                        l.extend(&middle);
                        let mut r = middle.clone();
                        r.push(e[n - 1]);
                        IntervalTerm { left: index[&l], right: index[&r], middle }
                    })
                    .collect()
            })
            .collect();
        let d = basis.len();
        let products = if n == 2 {
            // Each term of I(w) contributes e_w to the product e_left e_right.
            let mut products: Vec<SparseRow<R::Elem>> = vec![Vec::new(); d * d];
            for (w, terms) in intervals.iter().enumerate() {
                for t in terms {
                    products[t.left * d + t.right].push((w, ring.one()));
                }
            }
            products
        } else {
            closed_form_table(&poset, &basis, &index, &ring)
        };
        let table = StructureConstants::new(ring, d, products)?;
        Ok(AlgebraContext { poset, n, basis, index, intervals, table })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &R {
        self.table.ring()
    }

    pub fn basis(&self) -> &[MultiChain] {
        &self.basis
    }

    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    /// The cached terms of `I(x)` for the basis tuple with index `i`.
    pub fn interval_terms(&self, i: usize) -> &[IntervalTerm] {
        &self.intervals[i]
    }

    pub fn structure_constants(&self) -> &StructureConstants<R> {
        &self.table
    }

    fn check(&self, f: &FlagElement<R>) -> Result<()> {
        if f.context == self.table.algebra_id() {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn zero(&self) -> FlagElement<R> {
        FlagElement { context: self.table.algebra_id(), coeffs: Vec::new() }
    }

    /// The indicator function `e_x`.
    pub fn basis_element(&self, tuple: &[usize]) -> Result<FlagElement<R>> {
        let chain = MultiChain::new(&self.poset, tuple.to_vec())?;
        if chain.len() != self.n {
            return Err(Error::InvalidMultichain(tuple.to_vec()));
        }
        Ok(self.basis_element_at(self.index[chain.entries()]))
    }

    pub fn basis_element_at(&self, i: usize) -> FlagElement<R> {
        FlagElement { context: self.table.algebra_id(), coeffs: vec![(i, self.ring().one())] }
    }

    pub fn from_dense(&self, v: &[R::Elem]) -> Result<FlagElement<R>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.len() });
        }
        Ok(FlagElement { context: self.table.algebra_id(), coeffs: linalg::to_sparse(self.ring(), v) })
    }

    pub fn to_dense(&self, f: &FlagElement<R>) -> Result<Vec<R::Elem>> {
        self.check(f)?;
        Ok(linalg::to_dense(self.ring(), &f.coeffs, self.dim()))
    }

    /// `f(x)` for a basis tuple `x`.
    pub fn eval(&self, f: &FlagElement<R>, tuple: &[usize]) -> Result<R::Elem> {
        self.check(f)?;
        let i = self.index_of(tuple).ok_or_else(|| Error::InvalidMultichain(tuple.to_vec()))?;
        Ok(f.coeffs.iter().find(|(k, _)| *k == i).map_or_else(|| self.ring().zero(), |(_, a)| a.clone()))
    }

    /// `a f + b g`.
    pub fn combine(&self, a: &R::Elem, f: &FlagElement<R>, b: &R::Elem, g: &FlagElement<R>) -> Result<FlagElement<R>> {
        let ring = self.ring();
        let mut v = self.to_dense(f)?;
        for x in v.iter_mut() {
            *x = ring.mul(a, x);
        }
        for (k, c) in &g.coeffs {
            ring.add_mul_assign(&mut v[*k], b, c);
        }
        self.check(g)?;
        self.from_dense(&v)
    }

    pub fn add(&self, f: &FlagElement<R>, g: &FlagElement<R>) -> Result<FlagElement<R>> {
        let one = self.ring().one();
        self.combine(&one, f, &one, g)
    }

    pub fn sub(&self, f: &FlagElement<R>, g: &FlagElement<R>) -> Result<FlagElement<R>> {
        let ring = self.ring();
        self.combine(&ring.one(), f, &ring.neg(&ring.one()), g)
    }

    /// The product evaluated pointwise from its definition, via the cached
    /// interval products.
    pub fn convolve(&self, f: &FlagElement<R>, g: &FlagElement<R>) -> Result<FlagElement<R>> {
        let fd = self.to_dense(f)?;
        let gd = self.to_dense(g)?;
        let ring = self.ring();
        let mut out = ring.zero_vec(self.dim());
        for (w, terms) in self.intervals.iter().enumerate() {
            for t in terms {
                let (a, b) = (&fd[t.left], &gd[t.right]);
                if !ring.is_zero(a) && !ring.is_zero(b) {
                    ring.add_mul_assign(&mut out[w], a, b);
                }
            }
        }
        self.from_dense(&out)
    }

    /// The product through the structure-constant table.
    pub fn multiply(&self, f: &FlagElement<R>, g: &FlagElement<R>) -> Result<FlagElement<R>> {
        self.check(f)?;
        self.check(g)?;
        let ring = self.ring();
        let mut out = ring.zero_vec(self.dim());
        for (i, a) in &f.coeffs {
            for (j, b) in &g.coeffs {
                let ab = ring.mul(a, b);
                for (k, c) in self.table.get(*i, *j) {
                    ring.add_mul_assign(&mut out[*k], &ab, c);
                }
            }
        }
        self.from_dense(&out)
    }

    pub fn commutator(&self, f: &FlagElement<R>, g: &FlagElement<R>) -> Result<FlagElement<R>> {
        self.sub(&self.convolve(f, g)?, &self.convolve(g, f)?)
    }

    /// `e_x e_y` from the closed form: zero unless `(x_2..x_n) = (y_1..y_{n-1}) = u`,
    /// in which case it is `sum_{z in I(u)} e_(x_1, z, y_n)`. Requires `n >= 3`.
    pub fn basis_product(&self, x: &[usize], y: &[usize]) -> Result<FlagElement<R>> {
        if self.n < 3 {
            return Err(Error::Unsupported("the closed-form basis product needs n >= 3".into()));
        }
        self.basis_element(x)?;
        self.basis_element(y)?;
        let coeffs = closed_form_product(&self.poset, &self.index, x, y)
            .into_iter()
            .map(|k| (k, self.ring().one()))
            .collect();
        Ok(FlagElement { context: self.table.algebra_id(), coeffs })
    }

    /// The lexicographically least comparable pair `x < y`, if any.
    fn least_comparable_pair(&self) -> Option<(usize, usize)> {
        let m = self.poset.size();
        (0..m).flat_map(|x| (0..m).map(move |y| (x, y))).find(|&(x, y)| self.poset.lt(x, y))
    }

    /// The non-power-associativity witness for the least comparable pair;
    /// `None` for an antichain.
    pub fn power_assoc_witness(&self) -> Result<Option<PowerWitness<R>>> {
        if self.n < 3 {
            return Err(Error::Unsupported("the power-associativity witness needs n >= 3".into()));
        }
        let Some((x, y)) = self.least_comparable_pair() else { return Ok(None) };
        let n = self.n;
        let mut f = self.zero();
        for ys in 0..3 {
            let mut t = vec![x; n - ys];
            t.extend(std::iter::repeat_n(y, ys));
            f = self.add(&f, &self.basis_element(&t)?)?;
        }
        let ff = self.convolve(&f, &f)?;
        let f_ff = self.convolve(&f, &ff)?;
        let ff_f = self.convolve(&ff, &f)?;
        Ok(Some(PowerWitness { x, y, f, f_ff, ff_f }))
    }

    /// JSON form `[[["a","a","b"],"1"], ...]` using element names.
    pub fn element_to_json(&self, f: &FlagElement<R>) -> Result<Value> {
        self.check(f)?;
        let terms: Vec<Value> = f
            .coeffs
            .iter()
            .map(|(k, c)| {
                let names: Vec<&str> = self.basis[*k].entries().iter().map(|&e| self.poset.name(e)).collect();
                json!([names, self.ring().format(c)])
            })
            .collect();
        Ok(Value::Array(terms))
    }

    pub fn element_from_json(&self, value: &Value) -> Result<FlagElement<R>> {
        let bad = |msg: String| Error::Parse { line: 0, message: msg };
        let terms = value.as_array().ok_or_else(|| bad("an element is a JSON array of [tuple, scalar] terms".into()))?;
        let ring = self.ring();
        let mut v = ring.zero_vec(self.dim());
        for term in terms {
            let pair = term.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad(format!("bad term {term}")))?;
            let names = pair[0].as_array().ok_or_else(|| bad(format!("bad tuple {}", pair[0])))?;
            let tuple = names
                .iter()
                .map(|n| {
                    let name = n.as_str().ok_or_else(|| bad(format!("bad element name {n}")))?;
                    self.poset.index_of(name).ok_or_else(|| Error::UndeclaredElement(name.to_owned()))
                })
                .collect::<Result<Vec<usize>>>()?;
            let scalar = pair[1].as_str().ok_or_else(|| bad(format!("scalar {} must be a string", pair[1])))?;
            let k = self.basis_element(&tuple)?.coeffs[0].0;
            v[k] = ring.add(&v[k], &ring.parse(scalar)?);
        }
        self.from_dense(&v)
    }
}

/// Basis indices of `e_x e_y` in the closed form (all coefficients are 1).
fn closed_form_product(
    poset: &Poset,
    index: &HashMap<Vec<usize>, usize>,
    x: &[usize],
    y: &[usize],
) -> Vec<usize> {
    let n = x.len();
    if x[1..] != y[..n - 1] {
        return Vec::new();
    }
    let mut out: Vec<usize> = interval_product(poset, &x[1..])
        .into_iter()
        .map(|z| {
            let mut t = Vec::with_capacity(n);
            t.push(x[0]);
            t.extend(z);
            t.push(y[n - 1]);
            index[&t]
        })
        .collect();
    out.sort_unstable();
    out
}

fn closed_form_table<R: Ring>(
    poset: &Poset,
    basis: &[MultiChain],
    index: &HashMap<Vec<usize>, usize>,
    ring: &R,
) -> Vec<SparseRow<R::Elem>> {
    let d = basis.len();
    let n = basis.first().map_or(0, MultiChain::len);
    // Right factors grouped by their first n - 1 entries.
    let mut by_prefix: HashMap<&[usize], Vec<usize>> = HashMap::new();
    for (j, y) in basis.iter().enumerate() {
        by_prefix.entry(&y.entries()[..n - 1]).or_default().push(j);
    }
    let mut products = vec![Vec::new(); d * d];
    for (i, x) in basis.iter().enumerate() {
        let Some(partners) = by_prefix.get(&x.entries()[1..]) else { continue };
        for &j in partners {
            products[i * d + j] = closed_form_product(poset, index, x.entries(), basis[j].entries())
                .into_iter()
                .map(|k| (k, ring.one()))
                .collect();
        }
    }
    products
}

impl<R: Ring> Algebra for AlgebraContext<R> {
    type Ring = R;

    fn ring(&self) -> &R {
        self.table.ring()
    }
    fn dim(&self) -> usize {
        self.basis.len()
    }
    fn algebra_id(&self) -> u64 {
        self.table.algebra_id()
    }
    fn basis_product_row(&self, i: usize, j: usize) -> &SparseRow<R::Elem> {
        self.table.get(i, j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{is_associative, one_sided_identity, Side};
    use crate::poset::{enumerate_posets, parse_poset};
    use crate::ring::{PrimeField, Rationals};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn v_poset() -> Poset {
        parse_poset("elements: a b c\ncovers:\na b\na c").unwrap()
    }

    fn ctx(p: Poset, n: usize) -> AlgebraContext<Rationals> {
        AlgebraContext::new(p, n, Rationals).unwrap()
    }

    fn q(k: i64) -> BigRational {
        Rationals.from_i64(k)
    }

    /// `sum_k c_k e_{t_k}` by tuple.
    fn elem(c: &AlgebraContext<Rationals>, terms: &[(i64, &[usize])]) -> FlagElement<Rationals> {
        let mut f = c.zero();
        for (k, t) in terms {
            let e = c.basis_element(t).unwrap();
            f = c.combine(&q(1), &f, &q(*k), &e).unwrap();
        }
        f
    }

    /// Every weakly increasing tuple, by brute force over `P^n`.
    fn all_multichains(p: &Poset, n: usize) -> Vec<Vec<usize>> {
        let m = p.size();
        let mut out = Vec::new();
        for code in 0..m.pow(n as u32) {
            let t: Vec<usize> = (0..n).map(|i| code / m.pow((n - 1 - i) as u32) % m).collect();
            if t.windows(2).all(|w| p.leq(w[0], w[1])) {
                out.push(t);
            }
        }
        out
    }

    /// The product evaluated straight from the definition, without caches:
    /// for each `x`, sum over `y` with `x_i <= y_i <= x_{i+1}`.
    fn oracle_product(p: &Poset, n: usize, f: &HashMap<Vec<usize>, i64>, g: &HashMap<Vec<usize>, i64>) -> HashMap<Vec<usize>, i64> {
        let m = p.size();
        let mut out = HashMap::new();
        for x in all_multichains(p, n) {
            let mut total = 0;
            for code in 0..m.pow((n - 1) as u32) {
                let y: Vec<usize> = (0..n - 1).map(|i| code / m.pow((n - 2 - i) as u32) % m).collect();
                if (0..n - 1).all(|i| p.leq(x[i], y[i]) && p.leq(y[i], x[i + 1])) {
                    let mut l = vec![x[0]];
                    l.extend(&y);
                    let mut r = y.clone();
                    r.push(x[n - 1]);
                    total += f.get(&l).unwrap_or(&0) * g.get(&r).unwrap_or(&0);
                }
            }
            if total != 0 {
                out.insert(x, total);
            }
        }
        out
    }

    fn to_map(c: &AlgebraContext<Rationals>, f: &FlagElement<Rationals>) -> HashMap<Vec<usize>, i64> {
        f.coeffs()
            .iter()
            .map(|(k, a)| (c.basis()[*k].entries().to_vec(), i64::try_from(a.to_integer()).unwrap()))
            .collect()
    }

    #[test]
    fn basis_element_examples() {
        let c = ctx(Poset::chain(2), 3);
        let e = c.basis_element(&[0, 0, 1]).unwrap();
        assert_eq!(e.coeffs(), &vec![(1, q(1))]);
        assert_eq!(c.eval(&e, &[0, 1, 1]).unwrap(), q(0));
        assert!(c.basis_element(&[1, 0, 1]).is_err());
        assert!(c.basis_element(&[0, 1]).is_err());
        let mut sum = c.zero();
        for i in 0..c.dim() {
            sum = c.add(&sum, &c.basis_element_at(i)).unwrap();
        }
        assert!(sum.coeffs().iter().all(|(_, a)| *a == q(1)) && sum.coeffs().len() == 4);
    }

    #[test]
    fn convolution_examples() {
        let c = ctx(Poset::chain(2), 3);
        let p = c.convolve(&elem(&c, &[(1, &[0, 1, 1])]), &elem(&c, &[(1, &[1, 1, 1])])).unwrap();
        assert_eq!(p, elem(&c, &[(1, &[0, 1, 1])]));
        let p = c.convolve(&elem(&c, &[(1, &[0, 0, 1])]), &elem(&c, &[(1, &[0, 1, 1])])).unwrap();
        assert_eq!(p, elem(&c, &[(1, &[0, 0, 1]), (1, &[0, 1, 1])]));
        assert!(c.convolve(&c.zero(), &elem(&c, &[(5, &[0, 0, 1])])).unwrap().is_zero());
        let other = ctx(Poset::chain(2), 3);
        assert_eq!(c.convolve(&c.zero(), &other.zero()), Err(Error::ContextMismatch));
    }

    #[test]
    fn closed_form_examples() {
        let c = ctx(Poset::chain(3), 3);
        let p = c.basis_product(&[0, 1, 2], &[1, 2, 2]).unwrap();
        assert_eq!(p, elem(&c, &[(1, &[0, 1, 2]), (1, &[0, 2, 2])]));
        assert!(c.basis_product(&[0, 1, 2], &[1, 1, 2]).unwrap().is_zero());
        for x in 0..3 {
            let t = [x, x, x];
            assert_eq!(c.basis_product(&t, &t).unwrap(), elem(&c, &[(1, &t)]));
        }
        let c2 = ctx(Poset::chain(2), 2);
        assert!(matches!(c2.basis_product(&[0, 0], &[0, 1]), Err(Error::Unsupported(_))));
    }

    #[test]
    fn commutator_examples() {
        let c = ctx(Poset::chain(2), 3);
        let f = elem(&c, &[(1, &[0, 0, 1])]);
        let g = elem(&c, &[(1, &[0, 1, 1])]);
        assert!(c.commutator(&f, &f).unwrap().is_zero());
        assert_eq!(c.commutator(&f, &g).unwrap(), elem(&c, &[(1, &[0, 0, 1]), (1, &[0, 1, 1])]));
        let a = ctx(Poset::antichain(3), 3);
        let f = elem(&a, &[(2, &[0, 0, 0]), (-1, &[2, 2, 2])]);
        let g = elem(&a, &[(3, &[0, 0, 0]), (1, &[1, 1, 1])]);
        assert!(a.commutator(&f, &g).unwrap().is_zero());
    }

    #[test]
    fn structure_constant_examples() {
        let c = ctx(Poset::chain(1), 3);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.structure_constants().get(0, 0), &vec![(0, q(1))]);
        let a = ctx(Poset::antichain(2), 3);
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j { vec![(i, q(1))] } else { vec![] };
                assert_eq!(a.structure_constants().get(i, j), &expected);
            }
        }
    }

    #[test]
    fn interval_cache_matches_intervals() {
        for p in [Poset::chain(3), v_poset(), v_poset().dual()] {
            for n in 2..=4 {
                let c = ctx(p.clone(), n);
                for (i, x) in c.basis().iter().enumerate() {
                    let e = x.entries();
                    let mut expected = vec![vec![]];
                    for w in e.windows(2) {
                        let iv = p.interval(w[0], w[1]).unwrap();
                        expected = expected
                            .into_iter()
                            .flat_map(|pre: Vec<usize>| iv.iter().map(move |&z| [pre.clone(), vec![z]].concat()))
                            .collect();
                    }
                    let got: Vec<Vec<usize>> = c.interval_terms(i).iter().map(|t| t.middle.clone()).collect();
                    assert_eq!(got, expected);
                }
            }
        }
    }

    #[test]
    fn table_matches_definition_for_small_posets() {
        for m in 1..=3 {
            for p in enumerate_posets(m).unwrap() {
                for n in 2..=4 {
                    let c = ctx(p.clone(), n);
                    let d = c.dim();
                    for i in 0..d {
                        for j in 0..d {
                            let (ei, ej) = (c.basis_element_at(i), c.basis_element_at(j));
                            let expected = oracle_product(&p, n, &to_map(&c, &ei), &to_map(&c, &ej));
                            let table = c.multiply(&ei, &ej).unwrap();
                            assert_eq!(to_map(&c, &table), expected);
                            assert_eq!(c.convolve(&ei, &ej).unwrap(), table);
                            if n >= 3 {
                                let (x, y) = (c.basis()[i].entries(), c.basis()[j].entries());
                                assert_eq!(c.basis_product(x, y).unwrap(), table);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn two_chain_witness() {
        let c = ctx(Poset::chain(2), 3);
        let w = c.power_assoc_witness().unwrap().unwrap();
        assert_eq!((w.x, w.y), (0, 1));
        assert_eq!(w.f, elem(&c, &[(1, &[0, 0, 0]), (1, &[0, 0, 1]), (1, &[0, 1, 1])]));
        assert_eq!(w.f_ff, elem(&c, &[(1, &[0, 0, 0]), (3, &[0, 0, 1]), (1, &[0, 1, 1])]));
        assert_eq!(w.ff_f, elem(&c, &[(1, &[0, 0, 0]), (3, &[0, 0, 1]), (2, &[0, 1, 1])]));
        assert!(w.is_witness());
    }

    #[test]
    fn three_chain_witness_difference() {
        let c = ctx(Poset::chain(3), 3);
        let w = c.power_assoc_witness().unwrap().unwrap();
        // Difference is sum over x < z <= y of e_(x, z, y) for the least pair (0, 1).
        let diff = c.sub(&w.ff_f, &w.f_ff).unwrap();
        assert_eq!(diff, elem(&c, &[(1, &[0, 1, 1])]));
        let a = ctx(Poset::antichain(3), 3);
        assert!(a.power_assoc_witness().unwrap().is_none());
        assert!(is_associative(&a));
        assert!(ctx(Poset::chain(2), 2).power_assoc_witness().is_err());
    }

    #[test]
    fn witness_in_higher_order_and_small_field() {
        let c = AlgebraContext::new(v_poset(), 4, PrimeField::new(2)).unwrap();
        assert!(c.power_assoc_witness().unwrap().unwrap().is_witness());
    }

    #[test]
    fn classical_incidence_algebra() {
        for p in [Poset::chain(3), v_poset(), Poset::antichain(2)] {
            let c = ctx(p.clone(), 2);
            assert!(is_associative(&c));
            let mut e = c.zero();
            for x in 0..p.size() {
                e = c.add(&e, &c.basis_element(&[x, x]).unwrap()).unwrap();
            }
            for i in 0..c.dim() {
                let b = c.basis_element_at(i);
                assert_eq!(c.convolve(&e, &b).unwrap(), b);
                assert_eq!(c.convolve(&b, &e).unwrap(), b);
            }
        }
    }

    #[test]
    fn one_sided_identities_only_for_antichains() {
        for m in 1..=4 {
            for p in enumerate_posets(m).unwrap() {
                for n in [3, 4] {
                    let c = ctx(p.clone(), n);
                    for side in [Side::Left, Side::Right] {
                        assert_eq!(one_sided_identity(&c, side).is_some(), p.is_antichain(), "{:?} n={n}", p.covers());
                    }
                }
            }
        }
    }

    #[test]
    fn element_json_round_trip() {
        let c = ctx(v_poset(), 3);
        let f = elem(&c, &[(2, &[0, 0, 1]), (-3, &[0, 2, 2])]);
        let j = c.element_to_json(&f).unwrap();
        assert_eq!(j.to_string(), r#"[[["a","a","b"],"2"],[["a","c","c"],"-3"]]"#);
        assert_eq!(c.element_from_json(&j).unwrap(), f);
        assert!(c.element_from_json(&serde_json::json!([[["b", "a", "a"], "1"]])).is_err());
        assert!(c.element_from_json(&serde_json::json!([[["a", "z", "z"], "1"]])).is_err());
    }

    /// Values of f on length-i tuples of J^3_i.
    fn random_in_j(c: &AlgebraContext<Rationals>, k: usize, coeffs: &[i64]) -> FlagElement<Rationals> {
        let p = c.poset();
        let v: Vec<BigRational> = c
            .basis()
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let e = x.entries();
                if p.length(e[0], e[2]).unwrap() >= k {
                    q(coeffs[i % coeffs.len()])
                } else {
                    q(0)
                }
            })
            .collect();
        c.from_dense(&v).unwrap()
    }

    fn diamond() -> Poset {
        parse_poset("elements: 0 a b 1\ncovers:\n0 a\n0 b\na 1\nb 1").unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn convolution_is_bilinear(a in -4i64..5, b in -4i64..5, seed in proptest::collection::vec(-3i64..4, 3 * 16)) {
            let c = ctx(diamond(), 3);
            let d = c.dim();
            let mk = |s: &[i64]| c.from_dense(&(0..d).map(|i| q(s[i % s.len()])).collect::<Vec<_>>()).unwrap();
            let (f, g, h) = (mk(&seed[..16]), mk(&seed[16..32]), mk(&seed[32..]));
            let afbg = c.combine(&q(a), &f, &q(b), &g).unwrap();
            let left = c.convolve(&afbg, &h).unwrap();
            let expected = c.combine(&q(a), &c.convolve(&f, &h).unwrap(), &q(b), &c.convolve(&g, &h).unwrap()).unwrap();
            prop_assert_eq!(left, expected);
            let right = c.convolve(&h, &afbg).unwrap();
            let expected = c.combine(&q(a), &c.convolve(&h, &f).unwrap(), &q(b), &c.convolve(&h, &g).unwrap()).unwrap();
            prop_assert_eq!(right, expected);
        }

        #[test]
        fn products_of_j_layers(k in 0usize..3, s in proptest::collection::vec(-3i64..4, 1..8), t in proptest::collection::vec(-3i64..4, 1..8)) {
            let c = ctx(diamond(), 3);
            let p = c.poset().clone();
            let f = random_in_j(&c, k, &s);
            let g = random_in_j(&c, k, &t);
            let fg = c.convolve(&f, &g).unwrap();
            for x in c.basis() {
                let e = x.entries();
                if p.length(e[0], e[2]).unwrap() == k {
                    let expected = c.eval(&f, &[e[0], e[0], e[2]]).unwrap() * c.eval(&g, &[e[0], e[2], e[2]]).unwrap();
                    prop_assert_eq!(c.eval(&fg, e).unwrap(), expected);
                }
            }
            // e_xyz f with x < y, and f e_xyz with y < z, lie one layer deeper.
            for x in c.basis() {
                let e = x.entries();
                let b = c.basis_element(e).unwrap();
                let deeper = |h: &FlagElement<Rationals>| h.coeffs().iter().all(|(i, _)| {
                    let t = c.basis()[*i].entries();
                    p.length(t[0], t[2]).unwrap() > k
                });
                if p.lt(e[0], e[1]) {
                    prop_assert!(deeper(&c.convolve(&b, &f).unwrap()));
                }
                if p.lt(e[1], e[2]) {
                    prop_assert!(deeper(&c.convolve(&f, &b).unwrap()));
                }
            }
        }
    }
}
