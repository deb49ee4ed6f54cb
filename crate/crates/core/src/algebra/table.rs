use super::{fresh_algebra_id, Algebra};
use crate::error::{Error, Result};
use crate::ring::{linalg, Ring, RingSpec, SparseRow};
use serde_json::{json, Value};

/// Multiplication table `b_i b_j = sum_k c_ij^k b_k` of a free algebra,
/// with no poset attached.
#[derive(Clone, Debug)]
pub struct StructureConstants<R: Ring> {
    ring: R,
    dim: usize,
    /// Row `i * dim + j` holds the sparse product `b_i b_j`.
    table: Vec<SparseRow<R::Elem>>,
    id: u64,
}

impl<R: Ring> PartialEq for StructureConstants<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.spec() == other.ring.spec() && self.dim == other.dim && self.table == other.table
    }
}

impl<R: Ring> Eq for StructureConstants<R> {}

/// A parsed table whose scalars have not been interpreted in a ring yet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTable {
    pub dim: usize,
    pub ring: RingSpec,
    pub entries: Vec<(usize, usize, Vec<(usize, String)>)>,
}

impl RawTable {
    pub fn from_json(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidTable(msg.to_owned());
        let value: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
        let dim = value["dim"].as_u64().ok_or_else(|| bad("missing integer field `dim`"))? as usize;
        let ring: RingSpec = value["ring"].as_str().ok_or_else(|| bad("missing string field `ring`"))?.parse()?;
        let table = value["table"].as_array().ok_or_else(|| bad("missing array field `table`"))?;
        let index = |v: &Value| v.as_u64().map(|x| x as usize).ok_or_else(|| bad("indices must be nonnegative integers"));
        let mut entries = Vec::with_capacity(table.len());
        for entry in table {
            let parts = entry.as_array().filter(|p| p.len() == 3).ok_or_else(|| bad("entries must be [i, j, terms]"))?;
            let terms = parts[2].as_array().ok_or_else(|| bad("terms must be an array"))?;
            let mut out = Vec::with_capacity(terms.len());
            for term in terms {
                let pair = term.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("terms must be [k, scalar]"))?;
                let scalar = pair[1].as_str().ok_or_else(|| bad("scalars must be strings"))?;
                out.push((index(&pair[0])?, scalar.to_owned()));
            }
            entries.push((index(&parts[0])?, index(&parts[1])?, out));
        }
        Ok(RawTable { dim, ring, entries })
    }
}

impl<R: Ring> StructureConstants<R> {
    /// `products[i * dim + j]` is the sparse row of `b_i b_j`; rows are
    /// normalized (sorted, zeros dropped, repeated indices summed).
    pub fn new(ring: R, dim: usize, products: Vec<SparseRow<R::Elem>>) -> Result<Self> {
        if products.len() != dim * dim {
            return Err(Error::InvalidTable(format!(
                "expected {} products for dimension {dim}, found {}",
                dim * dim,
                products.len()
            )));
        }
        let mut table = Vec::with_capacity(products.len());
        for row in products {
            let mut dense = ring.zero_vec(dim);
            for (k, c) in row {
                if k >= dim {
                    return Err(Error::InvalidTable(format!("basis index {k} out of range for dimension {dim}")));
                }
                dense[k] = ring.add(&dense[k], &c);
            }
            table.push(linalg::to_sparse(&ring, &dense));
        }
        Ok(StructureConstants { ring, dim, table, id: fresh_algebra_id() })
    }

    /// Builds the table from `b_i b_j` given as dense vectors.
    pub fn from_fn(ring: R, dim: usize, mut f: impl FnMut(usize, usize) -> Vec<R::Elem>) -> Result<Self> {
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                products.push(linalg::to_sparse(&ring, &f(i, j)));
            }
        }
        Self::new(ring, dim, products)
    }

    pub fn from_raw(ring: R, raw: &RawTable) -> Result<Self> {
        if raw.ring != ring.spec() {
            return Err(Error::InvalidTable(format!("table is over {}, expected {}", raw.ring, ring.spec())));
        }
        let d = raw.dim;
        let mut products = vec![Vec::new(); d * d];
        let mut seen = vec![false; d * d];
        for (i, j, terms) in &raw.entries {
            if *i >= d || *j >= d {
                return Err(Error::InvalidTable(format!("pair ({i}, {j}) out of range for dimension {d}")));
            }
            if std::mem::replace(&mut seen[i * d + j], true) {
                return Err(Error::InvalidTable(format!("pair ({i}, {j}) listed twice")));
            }
            products[i * d + j] =
                terms.iter().map(|(k, s)| Ok((*k, ring.parse(s)?))).collect::<Result<Vec<_>>>()?;
        }
        Self::new(ring, d, products)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> &SparseRow<R::Elem> {
        &self.table[i * self.dim + j]
    }

    /// Number of nonzero structure constants.
    pub fn nonzero_count(&self) -> usize {
        self.table.iter().map(Vec::len).sum()
    }

    pub fn to_json(&self) -> Value {
        let mut entries = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let row = self.get(i, j);
                if !row.is_empty() {
                    let terms: Vec<Value> = row.iter().map(|(k, c)| json!([k, self.ring.format(c)])).collect();
                    entries.push(json!([i, j, terms]));
                }
            }
        }
        json!({ "dim": self.dim, "ring": self.ring.spec().to_string(), "table": entries })
    }

    /// The table in the basis `b'_i = b_{perm[i]}`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let d = self.dim;
        let mut inverse = vec![usize::MAX; d];
        for (i, &p) in perm.iter().enumerate() {
            if p >= d || inverse[p] != usize::MAX {
                return Err(Error::InvalidTable("not a permutation of the basis".into()));
            }
            inverse[p] = i;
        }
        if perm.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: perm.len() });
        }
        let products = (0..d * d)
            .map(|ij| {
                let (i, j) = (ij / d, ij % d);
                self.get(perm[i], perm[j]).iter().map(|(k, c)| (inverse[*k], c.clone())).collect()
            })
            .collect();
        Self::new(self.ring.clone(), d, products)
    }

    /// The table in the basis `b'_i = sum_k t[k][i] b_k`, i.e. the columns of
    /// `t`. `t_inv` must be the inverse matrix of `t`.
    pub fn change_basis(&self, t: &[Vec<R::Elem>], t_inv: &[Vec<R::Elem>]) -> Result<Self> {
        let d = self.dim;
        let ring = &self.ring;
        if t.len() != d || t_inv.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: t.len().min(t_inv.len()) });
        }
        let columns: Vec<Vec<R::Elem>> = (0..d).map(|i| t.iter().map(|row| row[i].clone()).collect()).collect();
        let lefts: Vec<_> = columns.iter().map(|c| super::LeftMultiplication::new(self, c)).collect();
        let mut products = Vec::with_capacity(d * d);
        for left in &lefts {
            for col in &columns {
                let p = left.apply(ring, col);
                let coords: Vec<R::Elem> = t_inv
                    .iter()
                    .map(|row| {
                        let mut acc = ring.zero();
                        for (a, b) in row.iter().zip(&p) {
                            if !ring.is_zero(b) {
                                ring.add_mul_assign(&mut acc, a, b);
                            }
                        }
                        acc
                    })
                    .collect();
                products.push(linalg::to_sparse(ring, &coords));
            }
        }
        Self::new(ring.clone(), d, products)
    }
}

impl<R: Ring> Algebra for StructureConstants<R> {
    type Ring = R;

    fn ring(&self) -> &R {
        &self.ring
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn algebra_id(&self) -> u64 {
        self.id
    }
    fn basis_product_row(&self, i: usize, j: usize) -> &SparseRow<R::Elem> {
        self.get(i, j)
    }
}
