use crate::algebra::{Algebra, LinearMap};
use crate::error::{Error, Result};
use crate::ring::PrimeField;

/// Largest dimension scanned exhaustively (`2^(d^2)` candidate matrices).
pub const EXHAUSTIVE_MAX_DIM: usize = 4;

/// Products `b_i b_j` as bitmasks over the basis, for an algebra over `F_2`.
fn bit_table<A: Algebra<Ring = PrimeField> + ?Sized>(alg: &A) -> Vec<Vec<u8>> {
    let d = alg.dim();
    (0..d)
        .map(|i| (0..d).map(|j| alg.basis_product_row(i, j).iter().fold(0u8, |acc, (k, _)| acc | (1 << k))).collect())
        .collect()
}

/// Invertibility over `F_2` of the matrix whose columns are `cols`.
fn invertible(cols: &[u8]) -> bool {
    let mut rows: Vec<u8> = cols.to_vec();
    let d = rows.len();
    for bit in 0..d {
        let Some(p) = (bit..d).find(|&r| rows[r] >> bit & 1 == 1) else { return false };
        rows.swap(bit, p);
        for r in 0..d {
            if r != bit && rows[r] >> bit & 1 == 1 {
                rows[r] ^= rows[bit];
            }
        }
    }
    true
}

/// Every algebra isomorphism `A -> B` over `F_2`, by scanning all
/// `2^(d^2)` matrices in increasing bitmask order.
pub fn enumerate_isomorphisms_exhaustive<A, B>(a: &A, b: &B) -> Result<Vec<LinearMap<PrimeField>>>
where
    A: Algebra<Ring = PrimeField> + ?Sized,
    B: Algebra<Ring = PrimeField> + ?Sized,
{
    let field = a.ring();
    if field.modulus() != 2 || b.ring().modulus() != 2 {
        return Err(Error::OutOfRange("the exhaustive scan runs over F_2 only".into()));
    }
    let d = a.dim();
    if d.max(b.dim()) > EXHAUSTIVE_MAX_DIM {
        return Err(Error::OutOfRange(format!(
            "dimension {} exceeds the exhaustive budget of {EXHAUSTIVE_MAX_DIM}",
            d.max(b.dim())
        )));
    }
    if d != b.dim() {
        return Ok(Vec::new());
    }
    let ta = bit_table(a);
    let tb = bit_table(b);
    let apply = |cols: &[u8], v: u8| (0..d).filter(|k| v >> k & 1 == 1).fold(0u8, |acc, k| acc ^ cols[k]);
    let mut found = Vec::new();
    let mask_bits = d * d;
    for mask in 0u32..(1u32 << mask_bits) {
        // Column j (the image of b_j) occupies bits j*d .. j*d + d.
        let cols: Vec<u8> = (0..d).map(|j| ((mask >> (j * d)) & ((1 << d) - 1)) as u8).collect();
        if !invertible(&cols) {
            continue;
        }
        let multiplicative = (0..d).all(|i| {
            (0..d).all(|j| {
                let lhs = apply(&cols, ta[i][j]);
                let mut rhs = 0u8;
                for k in (0..d).filter(|k| cols[i] >> k & 1 == 1) {
                    for l in (0..d).filter(|l| cols[j] >> l & 1 == 1) {
                        rhs ^= tb[k][l];
                    }
                }
                lhs == rhs
            })
        });
        if multiplicative {
            let columns: Vec<Vec<u64>> =
                cols.iter().map(|c| (0..d).map(|k| u64::from(c >> k & 1)).collect()).collect();
            found.push(LinearMap::from_columns(field, d, &columns)?);
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraContext;
    use crate::poset::{all_isomorphisms, automorphisms, Poset};
    use crate::reconstruct::{induced_isomorphism, is_algebra_isomorphism};

    fn f2(p: Poset) -> AlgebraContext<PrimeField> {
        AlgebraContext::new(p, 3, PrimeField::new(2)).unwrap()
    }

    fn assert_rigid(p: Poset, expected: usize) {
        let c = f2(p.clone());
        let found = enumerate_isomorphisms_exhaustive(&c, &c).unwrap();
        assert_eq!(found.len(), expected);
        let mut induced: Vec<_> = automorphisms(&p).iter().map(|phi| induced_isomorphism(phi, &c, &c).unwrap()).collect();
        assert_eq!(induced.len(), expected);
        for t in &found {
            assert!(is_algebra_isomorphism(t, &c, &c).unwrap());
            let pos = induced.iter().position(|s| s == t).expect("every automorphism is induced");
            induced.remove(pos);
        }
        assert!(induced.is_empty());
    }

    #[test]
    fn two_element_posets() {
        assert_rigid(Poset::chain(2), 1);
        assert_rigid(Poset::antichain(2), 2);
        assert_rigid(Poset::chain(1), 1);
        assert!(enumerate_isomorphisms_exhaustive(&f2(Poset::chain(2)), &f2(Poset::antichain(2))).unwrap().is_empty());
        assert!(all_isomorphisms(&Poset::chain(2), &Poset::antichain(2)).is_empty());
    }

    #[test]
    fn budget() {
        let big = f2(Poset::chain(3));
        assert!(matches!(enumerate_isomorphisms_exhaustive(&big, &big), Err(Error::OutOfRange(_))));
        let q = AlgebraContext::new(Poset::chain(1), 3, PrimeField::new(3)).unwrap();
        assert!(matches!(enumerate_isomorphisms_exhaustive(&q, &q), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn bit_invertibility() {
        assert!(invertible(&[0b01, 0b10]));
        assert!(invertible(&[0b11, 0b10]));
        assert!(!invertible(&[0b11, 0b11]));
        assert!(!invertible(&[0b00, 0b01]));
    }
}
