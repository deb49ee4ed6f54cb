use super::linalg::{field_kernel, rref, rref_reduce, sparse_rref, to_dense, SparseRow};
use super::{Field, Ring, RingSpec};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};

/// The field of rational numbers with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> RingSpec {
        RingSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add_mul_assign(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        *acc += a * b;
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<BigRational> {
        let t = s.trim().replace('\u{2212}', "-");
        let bad = || Error::InvalidScalar { value: s.to_owned(), ring: "Q".into() };
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim().parse::<BigInt>(), d.trim().parse::<BigInt>()),
            None => (t.parse::<BigInt>(), Ok(BigInt::one())),
        };
        let (num, den) = (num.map_err(|_| bad())?, den.map_err(|_| bad())?);
        if den.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(num, den))
    }

    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        self.from_i64(rng.gen_range(-3..=3))
    }

    fn echelon(&self, rows: Vec<Vec<BigRational>>) -> Result<Vec<Vec<BigRational>>> {
        Ok(rref(self, rows))
    }

    fn echelon_sparse(&self, rows: Vec<SparseRow<BigRational>>, ncols: usize) -> Result<Vec<Vec<BigRational>>> {
        Ok(sparse_rref(self, rows, ncols).iter().map(|r| to_dense(self, r, ncols)).collect())
    }

    fn reduce(&self, echelon: &[Vec<BigRational>], v: Vec<BigRational>) -> Result<Vec<BigRational>> {
        Ok(rref_reduce(self, echelon, v))
    }

    fn kernel(&self, rows: Vec<SparseRow<BigRational>>, ncols: usize) -> Result<Vec<Vec<BigRational>>> {
        Ok(field_kernel(self, rows, ncols))
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }

    fn split_roots(&self, poly: &[BigRational]) -> Option<Vec<BigRational>> {
        rational_roots(poly)
    }
}

/// Distinct rational roots of a monic polynomial that splits into distinct
/// linear factors over `Q`; `None` otherwise.
///
/// Clearing denominators gives an integer polynomial with leading
/// coefficient `a`; substituting `y = a x` yields a monic integer polynomial
/// whose roots are integers. Those are found by integer Newton iteration
/// from above the largest root, which never overshoots for real-rooted
/// polynomials, followed by exact deflation.
fn rational_roots(poly: &[BigRational]) -> Option<Vec<BigRational>> {
    let deg = poly.len().checked_sub(1)?;
    if deg == 0 {
        return Some(Vec::new());
    }
    let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = poly.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let lead = ints[deg].clone();
    // g(y) = lead^(deg-1) * h(y / lead), monic with integer coefficients.
    let mut monic: Vec<BigInt> = Vec::with_capacity(deg + 1);
    for (i, c) in ints.iter().enumerate() {
        if i == deg {
            monic.push(BigInt::one());
        } else {
            monic.push(c * num_traits::pow(lead.clone(), deg - 1 - i));
        }
    }
    let roots = monic_integer_roots(monic)?;
    Some(roots.into_iter().map(|y| BigRational::new(y, lead.clone())).collect())
}

fn eval(poly: &[BigInt], x: &BigInt) -> BigInt {
    poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn derivative(poly: &[BigInt]) -> Vec<BigInt> {
    poly.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// Integer roots (descending) of a monic integer polynomial whose roots
/// are all distinct integers.
fn monic_integer_roots(mut poly: Vec<BigInt>) -> Option<Vec<BigInt>> {
    const MAX_STEPS: usize = 100_000;
    let mut roots = Vec::new();
    // Cauchy bound: every root lies strictly below 1 + max |c_i|.
    let mut x = BigInt::one() + poly.iter().map(|c| c.abs()).max().unwrap_or_default();
    while poly.len() > 1 {
        let deriv = derivative(&poly);
        let mut steps = 0;
        loop {
            let gx = eval(&poly, &x);
            if gx.is_zero() {
                break;
            }
            let dx = eval(&deriv, &x);
            if gx.is_negative() || !dx.is_positive() {
                return None;
            }
            let step = (&gx / &dx).max(BigInt::one());
            x -= step;
            steps += 1;
            if steps > MAX_STEPS {
                return None;
            }
        }
        if roots.last() == Some(&x) {
            return None;
        }
        // Synthetic division by (y - x).
        let n = poly.len() - 1;
        let mut quotient = vec![BigInt::zero(); n];
        let mut carry = BigInt::zero();
        for i in (0..n).rev() {
            carry = &poly[i + 1] + &carry * &x;
            quotient[i] = carry.clone();
        }
        roots.push(x.clone());
        poly = quotient;
    }
    Some(roots)
}
