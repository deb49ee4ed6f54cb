//! Exact commutative coefficient rings and linear algebra over them.
//!
//! Four rings are supported: the rationals, prime fields `F_p`, the integers,
//! and `Z/m` for composite `m`. Submodule computations (echelon forms,
//! membership, kernels) work over fields and over `Z`; `Z/m` with composite
//! `m` only supports element arithmetic.

mod integer;
pub mod linalg;
mod modular;
mod prime;
mod rational;

pub use integer::{hnf, Integers};
pub use linalg::{SparseRow, Submodule};
pub use modular::IntegersMod;
pub use prime::PrimeField;
pub use rational::Rationals;

use crate::error::{Error, Result};
use rand::RngCore;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

/// Names one of the supported coefficient rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Rationals,
    PrimeField(u64),
    Integers,
    IntegersMod(u64),
}

pub fn is_prime(n: u64) -> bool {
    primal_check::miller_rabin(n)
}

/// `Some((p, k))` when `n = p^k` with `p` prime and `k >= 1`.
fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    let mut rest = n;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > rest {
        // `rest == n` is prime.
        return Some((n, 1));
    }
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

impl RingSpec {
    /// A ring is indecomposable when 0 and 1 are its only idempotents.
    pub fn is_indecomposable(&self) -> bool {
        match *self {
            RingSpec::Rationals | RingSpec::PrimeField(_) | RingSpec::Integers => true,
            RingSpec::IntegersMod(m) => prime_power(m).is_some(),
        }
    }

    pub fn is_field(&self) -> bool {
        match *self {
            RingSpec::Rationals | RingSpec::PrimeField(_) => true,
            RingSpec::Integers => false,
            RingSpec::IntegersMod(m) => is_prime(m),
        }
    }

    /// Whether span, membership and kernel computations are available.
    pub fn supports_submodules(&self) -> bool {
        self.is_field() || *self == RingSpec::Integers
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::PrimeField(p) => write!(f, "Fp:{p}"),
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::IntegersMod(m) => write!(f, "Zm:{m}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let modulus = |rest: &str| {
            rest.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidRing(format!("bad modulus in `{s}`")))
        };
        match s.trim() {
            "Q" => Ok(RingSpec::Rationals),
            "Z" => Ok(RingSpec::Integers),
            t => {
                if let Some(rest) = t.strip_prefix("Fp:") {
                    let p = modulus(rest)?;
                    if !is_prime(p) {
                        return Err(Error::InvalidRing(format!("{p} is not prime")));
                    }
                    Ok(RingSpec::PrimeField(p))
                } else if let Some(rest) = t.strip_prefix("Zm:") {
                    let m = modulus(rest)?;
                    if m < 2 {
                        return Err(Error::InvalidRing(format!("modulus {m} must be at least 2")));
                    }
                    Ok(RingSpec::IntegersMod(m))
                } else {
                    Err(Error::InvalidRing(format!(
                        "unknown ring `{s}` (expected Q, Fp:<p>, Z or Zm:<m>)"
                    )))
                }
            }
        }
    }
}

/// A commutative unital ring with exact, canonically represented elements.
pub trait Ring: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn spec(&self) -> RingSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc += a * b`
    fn add_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, &self.mul(a, b));
    }

    /// Exact text form: `3/4`, `-7`, `2 mod 5`.
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// A random element; over infinite rings, a small integer.
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// Canonical echelon form of the submodule spanned by `rows`
    /// (reduced row echelon over fields, Hermite normal form over `Z`).
    fn echelon(&self, rows: Vec<Vec<Self::Elem>>) -> Result<Vec<Vec<Self::Elem>>>;

    /// Same canonical form as [`Ring::echelon`], from sparse rows.
    fn echelon_sparse(&self, rows: Vec<SparseRow<Self::Elem>>, ncols: usize) -> Result<Vec<Vec<Self::Elem>>> {
        self.echelon(rows.iter().map(|r| linalg::to_dense(self, r, ncols)).collect())
    }

    /// Remainder of `v` against a canonical echelon basis; zero iff `v` lies
    /// in the submodule.
    fn reduce(&self, echelon: &[Vec<Self::Elem>], v: Vec<Self::Elem>) -> Result<Vec<Self::Elem>>;

    /// Canonical basis of `{x : M x = 0}` for the sparse matrix `M`.
    fn kernel(&self, rows: Vec<SparseRow<Self::Elem>>, ncols: usize) -> Result<Vec<Vec<Self::Elem>>>;

    fn zero_vec(&self, len: usize) -> Vec<Self::Elem> {
        vec![self.zero(); len]
    }

    fn unit_vec(&self, len: usize, i: usize) -> Vec<Self::Elem> {
        let mut v = self.zero_vec(len);
        v[i] = self.one();
        v
    }

    fn is_zero_vec(&self, v: &[Self::Elem]) -> bool {
        v.iter().all(|a| self.is_zero(a))
    }

    fn capability_error(&self, what: &str) -> Error {
        Error::Capability(format!("{what} is not supported over {}", self.spec()))
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Inverse of a nonzero element.
    ///
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    /// The roots of the monic polynomial with coefficients `poly`
    /// (constant term first), when it splits into distinct linear factors.
    fn split_roots(&self, poly: &[Self::Elem]) -> Option<Vec<Self::Elem>>;
}
