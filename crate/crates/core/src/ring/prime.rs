use super::linalg::{field_kernel, rref, rref_reduce, sparse_rref, to_dense, SparseRow};
use super::{is_prime, Field, Ring, RingSpec};
use crate::error::{Error, Result};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The prime field `F_p`, elements stored as residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

/// Below this size roots are found by exhaustive evaluation.
const BRUTE_FORCE_LIMIT: u64 = 1 << 16;

impl PrimeField {
    /// Panics if `p` is not prime.
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn spec(&self) -> RingSpec {
        RingSpec::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i128(v as i128)
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + (self.p - *b) as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn format(&self, a: &u64) -> String {
        format!("{a} mod {}", self.p)
    }

    fn parse(&self, s: &str) -> Result<u64> {
        parse_residue(s, self.p, &self.spec())
    }

    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn echelon(&self, rows: Vec<Vec<u64>>) -> Result<Vec<Vec<u64>>> {
        Ok(rref(self, rows))
    }

    fn echelon_sparse(&self, rows: Vec<SparseRow<u64>>, ncols: usize) -> Result<Vec<Vec<u64>>> {
        Ok(sparse_rref(self, rows, ncols).iter().map(|r| to_dense(self, r, ncols)).collect())
    }

    fn reduce(&self, echelon: &[Vec<u64>], v: Vec<u64>) -> Result<Vec<u64>> {
        Ok(rref_reduce(self, echelon, v))
    }

    fn kernel(&self, rows: Vec<SparseRow<u64>>, ncols: usize) -> Result<Vec<Vec<u64>>> {
        Ok(field_kernel(self, rows, ncols))
    }
}

/// Parses `a`, `-a` or `a mod m`, reducing into `0..m`.
pub(super) fn parse_residue(s: &str, m: u64, spec: &RingSpec) -> Result<u64> {
    let bad = || Error::InvalidScalar { value: s.to_owned(), ring: spec.to_string() };
    let t = s.trim().replace('\u{2212}', "-");
    let value = match t.split_once("mod") {
        Some((v, modulus)) => {
            if modulus.trim().parse::<u64>().map_err(|_| bad())? != m {
                return Err(bad());
            }
            v.trim().to_owned()
        }
        None => t,
    };
    let v: i128 = value.parse().map_err(|_| bad())?;
    Ok(v.rem_euclid(m as i128) as u64)
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }

    fn split_roots(&self, poly: &[u64]) -> Option<Vec<u64>> {
        let deg = poly.len().checked_sub(1)?;
        let roots = if self.p <= BRUTE_FORCE_LIMIT {
            let eval = |x: u64| poly.iter().rev().fold(0, |acc, c| self.add(&self.mul(&acc, &x), c));
            (0..self.p).filter(|&x| eval(x) == 0).collect::<Vec<_>>()
        } else {
            PolyMod::new(*self).roots(poly.to_vec())
        };
        (roots.len() == deg).then_some(roots)
    }
}

/// Polynomial arithmetic over a large prime field, for equal-degree
/// (Cantor-Zassenhaus) root splitting.
struct PolyMod {
    f: PrimeField,
}

type Poly = Vec<u64>;

impl PolyMod {
    fn new(f: PrimeField) -> Self {
        PolyMod { f }
    }

    fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.f.sub(a.get(i).unwrap_or(&0), b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(out)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.f.add(&out[i + j], &self.f.mul(x, y));
            }
        }
        Self::trim(out)
    }

    /// Quotient and remainder; `b` nonzero.
    fn divmod(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        let mut r = a.clone();
        let db = b.len() - 1;
        let lead_inv = self.f.inv(&b[db]);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![0; r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = self.f.mul(r.last().unwrap(), &lead_inv);
            q[shift] = c;
            for (i, y) in b.iter().enumerate() {
                r[shift + i] = self.f.sub(&r[shift + i], &self.f.mul(&c, y));
            }
            r = Self::trim(r);
        }
        (Self::trim(q), r)
    }

    fn monic(&self, a: Poly) -> Poly {
        let inv = self.f.inv(a.last().unwrap());
        a.iter().map(|c| self.f.mul(c, &inv)).collect()
    }

    fn gcd(&self, mut a: Poly, mut b: Poly) -> Poly {
        while !b.is_empty() {
            let (_, r) = self.divmod(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.monic(a)
        }
    }

    fn powmod(&self, base: &Poly, mut exp: u64, modulus: &Poly) -> Poly {
        let mut acc: Poly = vec![1];
        let mut b = self.divmod(base, modulus).1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.divmod(&self.mul(&acc, &b), modulus).1;
            }
            b = self.divmod(&self.mul(&b, &b), modulus).1;
            exp >>= 1;
        }
        acc
    }

    /// Distinct roots of `poly` in `F_p`.
    fn roots(&self, poly: Poly) -> Vec<u64> {
        let poly = Self::trim(poly);
        if poly.len() < 2 {
            return Vec::new();
        }
        let poly = self.monic(poly);
        // gcd with x^p - x isolates the product of distinct linear factors.
        let xp = self.powmod(&vec![0, 1], self.f.p, &poly);
        let linear = self.gcd(poly.clone(), self.sub(&xp, &vec![0, 1]));
        let mut rng = ChaCha8Rng::seed_from_u64(self.f.p);
        let mut out = Vec::new();
        self.split(linear, &mut rng, &mut out);
        out.sort_unstable();
        out
    }

    fn split(&self, f: Poly, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
        match f.len() {
            0 | 1 => {}
            2 => out.push(self.f.neg(&f[0])),
            _ => loop {
                let a = rng.gen_range(0..self.f.p);
                let h = self.powmod(&vec![a, 1], (self.f.p - 1) / 2, &f);
                let g = self.gcd(f.clone(), self.sub(&h, &vec![1]));
                if g.len() > 1 && g.len() < f.len() {
                    let (q, _) = self.divmod(&f, &g);
                    self.split(g, rng, out);
                    self.split(self.monic(q), rng, out);
                    return;
                }
            },
        }
    }
}
