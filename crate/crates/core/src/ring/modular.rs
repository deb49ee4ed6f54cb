use super::linalg::SparseRow;
use super::prime::parse_residue;
use super::{Ring, RingSpec};
use crate::error::Result;
use rand::{Rng, RngCore};

/// `Z/m`. Only element arithmetic is available: canonical forms for
/// submodules over a non-field residue ring are not implemented, so every
/// linear-algebra entry point reports a capability error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegersMod {
    m: u64,
}

impl IntegersMod {
    pub fn new(m: u64) -> Self {
        assert!(m >= 2, "modulus must be at least 2");
        IntegersMod { m }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }
}

impl Ring for IntegersMod {
    type Elem = u64;

    fn spec(&self) -> RingSpec {
        RingSpec::IntegersMod(self.m)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.m as i128) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.m as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + (self.m - *b) as u128) % self.m as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.m - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.m as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn format(&self, a: &u64) -> String {
        format!("{a} mod {}", self.m)
    }

    fn parse(&self, s: &str) -> Result<u64> {
        parse_residue(s, self.m, &self.spec())
    }

    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.m)
    }

    fn echelon(&self, _rows: Vec<Vec<u64>>) -> Result<Vec<Vec<u64>>> {
        Err(self.capability_error("submodule computation"))
    }

    fn reduce(&self, _echelon: &[Vec<u64>], _v: Vec<u64>) -> Result<Vec<u64>> {
        Err(self.capability_error("submodule membership"))
    }

    fn kernel(&self, _rows: Vec<SparseRow<u64>>, _ncols: usize) -> Result<Vec<Vec<u64>>> {
        Err(self.capability_error("kernel computation"))
    }
}
