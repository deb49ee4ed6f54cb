use super::linalg::{sparse_rref, SparseRow};
use super::{Rationals, Ring, RingSpec};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};

/// The integers. Submodules are lattices in Hermite normal form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn spec(&self) -> RingSpec {
        RingSpec::Integers
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        v.into()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add_mul_assign(&self, acc: &mut BigInt, a: &BigInt, b: &BigInt) {
        *acc += a * b;
    }

    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<BigInt> {
        s.trim()
            .replace('\u{2212}', "-")
            .parse()
            .map_err(|_| Error::InvalidScalar { value: s.to_owned(), ring: "Z".into() })
    }

    fn random(&self, rng: &mut dyn RngCore) -> BigInt {
        rng.gen_range(-3i64..=3).into()
    }

    fn echelon(&self, rows: Vec<Vec<BigInt>>) -> Result<Vec<Vec<BigInt>>> {
        Ok(hnf(rows))
    }

    fn reduce(&self, echelon: &[Vec<BigInt>], mut v: Vec<BigInt>) -> Result<Vec<BigInt>> {
        for row in echelon {
            let p = row.iter().position(|a| !a.is_zero()).expect("nonzero echelon row");
            let q = v[p].div_floor(&row[p]);
            if !q.is_zero() {
                for (t, s) in v.iter_mut().zip(row) {
                    *t -= &q * s;
                }
            }
        }
        Ok(v)
    }

    /// Kernel lattice `{x in Z^n : M x = 0}`.
    ///
    /// The lattice only depends on the rational row space of `M`, so the
    /// system is first reduced over `Q`; a full-rank system has trivial
    /// kernel. Otherwise the reduced rows are scaled to integers and the
    /// kernel is read off the Hermite normal form of `[M^T | I]`.
    fn kernel(&self, rows: Vec<SparseRow<BigInt>>, ncols: usize) -> Result<Vec<Vec<BigInt>>> {
        let rational: Vec<SparseRow<BigRational>> = rows
            .into_iter()
            .filter(|r| !r.is_empty())
            .map(|r| r.into_iter().map(|(c, a)| (c, BigRational::from_integer(a))).collect())
            .collect();
        let echelon = sparse_rref(&Rationals, rational, ncols);
        if echelon.len() == ncols {
            return Ok(Vec::new());
        }
        let reduced: Vec<Vec<BigInt>> = echelon
            .iter()
            .map(|r| {
                let denom = r.iter().fold(BigInt::one(), |acc, (_, a)| acc.lcm(a.denom()));
                let mut dense = vec![BigInt::zero(); ncols];
                for (c, a) in r {
                    dense[*c] = (a * BigRational::from_integer(denom.clone())).to_integer();
                }
                dense
            })
            .collect();
        Ok(integer_kernel(&reduced, ncols))
    }
}

/// Kernel lattice of a dense integer matrix via the HNF of `[M^T | I]`.
pub(crate) fn integer_kernel(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let r = rows.len();
    let augmented: Vec<Vec<BigInt>> = (0..ncols)
        .map(|j| {
            let mut v: Vec<BigInt> = rows.iter().map(|row| row[j].clone()).collect();
            v.extend((0..ncols).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            v
        })
        .collect();
    let h = hnf(augmented);
    let kernel = h
        .into_iter()
        .filter(|v| v[..r].iter().all(Zero::is_zero))
        .map(|v| v[r..].to_vec())
        .collect();
    hnf(kernel)
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Convention: nonzero rows only, strictly increasing pivot columns,
/// positive pivots, zeros below each pivot, and entries above each pivot
/// reduced into `0..pivot`. Two generating sets of the same lattice yield
/// identical output.
pub fn hnf(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pending: Vec<Vec<BigInt>> =
        rows.into_iter().filter(|r| r.iter().any(|a| !a.is_zero())).collect();
    let mut result: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for col in 0..ncols {
        if pending.is_empty() {
            break;
        }
        loop {
            let mut active: Vec<usize> =
                (0..pending.len()).filter(|&i| !pending[i][col].is_zero()).collect();
            if active.len() <= 1 {
                if let Some(&i) = active.first() {
                    let mut row = pending.swap_remove(i);
                    if row[col].is_negative() {
                        row.iter_mut().for_each(|a| *a = -&*a);
                    }
                    result.push((col, row));
                }
                break;
            }
            active.sort_by(|&a, &b| pending[a][col].abs().cmp(&pending[b][col].abs()));
            let pivot = pending[active[0]].clone();
            for &i in &active[1..] {
                let q = pending[i][col].div_floor(&pivot[col]);
                for (t, s) in pending[i].iter_mut().zip(&pivot) {
                    *t -= &q * s;
                }
            }
            pending.retain(|r| r.iter().any(|a| !a.is_zero()));
        }
    }
    for i in 0..result.len() {
        let (col, pivot_row) = result[i].clone();
        for j in 0..i {
            let q = result[j].1[col].div_floor(&pivot_row[col]);
            if !q.is_zero() {
                for (t, s) in result[j].1.iter_mut().zip(&pivot_row) {
                    *t -= &q * s;
                }
            }
        }
    }
    result.into_iter().map(|(_, r)| r).collect()
}
