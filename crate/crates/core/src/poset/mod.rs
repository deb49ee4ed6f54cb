//! Finite posets on dense element indices `0..m`.
//!
//! External element names are kept in a side table and only matter for
//! parsing and reporting; every algorithm works on indices.

mod enumerate;
mod iso;
mod parse;

pub use enumerate::enumerate_posets;
pub use iso::{all_isomorphisms, automorphisms, find_isomorphism, is_order_isomorphism};
pub use parse::parse_poset;

use crate::error::{Error, Result};
use std::fmt;

/// A weakly increasing tuple `x_1 <= ... <= x_n` of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiChain(Vec<usize>);

impl MultiChain {
    /// Wraps `entries` after checking that they form a multichain of `poset`.
    pub fn new(poset: &Poset, entries: Vec<usize>) -> Result<Self> {
        let valid = entries.iter().all(|&x| x < poset.size())
            && entries.windows(2).all(|w| poset.leq(w[0], w[1]));
        if valid {
            Ok(MultiChain(entries))
        } else {
            Err(Error::InvalidMultichain(entries))
        }
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        self.0[self.0.len() - 1]
    }
}

impl fmt::Display for MultiChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    /// Row-major `size * size` order relation.
    leq: Vec<bool>,
    /// Pairs `(x, y)` with `y` covering `x`, sorted.
    covers: Vec<(usize, usize)>,
}

impl Poset {
    /// Builds the poset generated by `covers` (reflexive-transitive closure).
    ///
    /// The declared pairs need not be a transitive reduction; the stored
    /// cover list is recomputed from the closure.
    pub fn from_covers(names: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let m = names.len();
        let mut leq = vec![false; m * m];
        for x in 0..m {
            leq[x * m + x] = true;
        }
        for &(x, y) in covers {
            if x >= m || y >= m {
                return Err(Error::OutOfRange(format!("cover ({x}, {y}) on {m} elements")));
            }
            if x == y {
                return Err(Error::Cycle(names[x].clone()));
            }
            leq[x * m + y] = true;
        }
        // Warshall closure.
        for k in 0..m {
            for i in 0..m {
                if leq[i * m + k] {
                    for j in 0..m {
                        if leq[k * m + j] {
                            leq[i * m + j] = true;
                        }
                    }
                }
            }
        }
        for x in 0..m {
            for y in (x + 1)..m {
                if leq[x * m + y] && leq[y * m + x] {
                    return Err(Error::Cycle(names[x].clone()));
                }
            }
        }
        Ok(Self::from_closed(names, leq))
    }

    /// Builds a poset from a full order relation, checking the partial-order axioms.
    pub fn from_relation(names: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let m = names.len();
        if leq.len() != m * m {
            return Err(Error::DimensionMismatch { expected: m * m, found: leq.len() });
        }
        for x in 0..m {
            if !leq[x * m + x] {
                return Err(Error::NotPartialOrder(format!("not reflexive at {}", names[x])));
            }
            for y in 0..m {
                if x != y && leq[x * m + y] && leq[y * m + x] {
                    return Err(Error::NotPartialOrder(format!(
                        "not antisymmetric at {} and {}",
                        names[x], names[y]
                    )));
                }
                for z in 0..m {
                    if leq[x * m + y] && leq[y * m + z] && !leq[x * m + z] {
                        return Err(Error::NotPartialOrder(format!(
                            "not transitive at {}, {}, {}",
                            names[x], names[y], names[z]
                        )));
                    }
                }
            }
        }
        Ok(Self::from_closed(names, leq))
    }

    fn from_closed(names: Vec<String>, leq: Vec<bool>) -> Self {
        let m = names.len();
        let mut covers = Vec::new();
        for x in 0..m {
            for y in 0..m {
                if x == y || !leq[x * m + y] {
                    continue;
                }
                let between = (0..m).any(|z| {
                    z != x && z != y && leq[x * m + z] && leq[z * m + y]
                });
                if !between {
                    covers.push((x, y));
                }
            }
        }
        Poset { names, leq, covers }
    }

    pub fn default_names(m: usize) -> Vec<String> {
        (0..m).map(|i| i.to_string()).collect()
    }

    /// The chain `0 < 1 < ... < m-1`.
    pub fn chain(m: usize) -> Self {
        let covers: Vec<_> = (1..m).map(|i| (i - 1, i)).collect();
        Self::from_covers(Self::default_names(m), &covers).expect("chain is a poset")
    }

    pub fn antichain(m: usize) -> Self {
        Self::from_covers(Self::default_names(m), &[]).expect("antichain is a poset")
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size() + y]
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.covers.binary_search(&(x, y)).is_ok()
    }

    pub fn is_antichain(&self) -> bool {
        self.covers.is_empty()
    }

    /// Number of pairs `x <= y`, including the diagonal.
    pub fn relation_count(&self) -> usize {
        self.leq.iter().filter(|&&b| b).count()
    }

    /// `{z : x <= z <= y}` in increasing index order.
    pub fn interval(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        if !self.leq(x, y) {
            return Err(Error::InvalidInterval(x, y));
        }
        Ok(self.interval_unchecked(x, y))
    }

    pub(crate) fn interval_unchecked(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.size()).filter(|&z| self.leq(x, z) && self.leq(z, y)).collect()
    }

    /// Length of the longest chain in `[x, y]`, by longest-path DP over covers.
    pub fn length(&self, x: usize, y: usize) -> Result<usize> {
        let mut elems = self.interval(x, y)?;
        // Down-set size is a linear extension of the order.
        elems.sort_by_key(|&z| self.down_degree(z));
        let mut best = vec![None::<usize>; self.size()];
        best[x] = Some(0);
        for &z in &elems {
            if z == x {
                continue;
            }
            best[z] = self
                .covers
                .iter()
                .filter(|&&(w, t)| t == z && self.leq(x, w))
                .filter_map(|&(w, _)| best[w].map(|b| b + 1))
                .max();
        }
        Ok(best[y].expect("y is reachable from x through covers"))
    }

    /// Length `l(P)` of the poset: the longest chain length overall.
    pub fn poset_length(&self) -> usize {
        let m = self.size();
        (0..m)
            .flat_map(|x| (0..m).map(move |y| (x, y)))
            .filter(|&(x, y)| self.leq(x, y))
            .map(|(x, y)| self.length(x, y).expect("x <= y"))
            .max()
            .unwrap_or(0)
    }

    /// Number of elements strictly above `x`.
    pub fn up_degree(&self, x: usize) -> usize {
        (0..self.size()).filter(|&y| self.lt(x, y)).count()
    }

    /// Number of elements strictly below `x`.
    pub fn down_degree(&self, x: usize) -> usize {
        (0..self.size()).filter(|&y| self.lt(y, x)).count()
    }

    /// Longest chain ending at `x`.
    pub fn height(&self, x: usize) -> usize {
        (0..self.size())
            .filter(|&w| self.leq(w, x))
            .map(|w| self.length(w, x).expect("w <= x"))
            .max()
            .unwrap_or(0)
    }

    /// All weakly increasing `n`-tuples in lexicographic order of indices.
    ///
    /// The position in this list is the canonical basis index of the
    /// corresponding basis element in every algebra built on the poset.
    pub fn multichains(&self, n: usize) -> Vec<MultiChain> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        self.extend_multichains(n, &mut current, &mut out);
        out
    }

    fn extend_multichains(&self, n: usize, current: &mut Vec<usize>, out: &mut Vec<MultiChain>) {
        if current.len() == n {
            out.push(MultiChain(current.clone()));
            return;
        }
        for z in 0..self.size() {
            if current.last().is_none_or(|&p| self.leq(p, z)) {
                current.push(z);
                self.extend_multichains(n, current, out);
                current.pop();
            }
        }
    }

    /// The poset with `x` renamed to `perm[x]`; `perm` must be a permutation.
    pub fn relabel(&self, perm: &[usize]) -> Poset {
        let m = self.size();
        let mut names = vec![String::new(); m];
        for x in 0..m {
            names[perm[x]] = self.names[x].clone();
        }
        let covers: Vec<_> = self.covers.iter().map(|&(x, y)| (perm[x], perm[y])).collect();
        Poset::from_covers(names, &covers).expect("relabeling preserves the order axioms")
    }

    /// The order-dual poset.
    pub fn dual(&self) -> Poset {
        let covers: Vec<_> = self.covers.iter().map(|&(x, y)| (y, x)).collect();
        Poset::from_covers(self.names.clone(), &covers).expect("dual of a poset is a poset")
    }

    /// Serializes in the line-oriented poset text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("elements: {}\ncovers:\n", self.names.join(" "));
        for &(x, y) in &self.covers {
            s.push_str(&format!("{} {}\n", self.names[x], self.names[y]));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_poset() -> Poset {
        Poset::from_covers(Poset::default_names(3), &[(0, 1), (0, 2)]).unwrap()
    }

    fn diamond() -> Poset {
        Poset::from_covers(Poset::default_names(4), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn intervals() {
        let c = Poset::chain(3);
        assert_eq!(c.interval(0, 2).unwrap(), vec![0, 1, 2]);
        assert_eq!(c.interval(1, 1).unwrap(), vec![1]);
        assert_eq!(v_poset().interval(0, 1).unwrap(), vec![0, 1]);
        assert_eq!(v_poset().interval(1, 2), Err(Error::InvalidInterval(1, 2)));
    }

    #[test]
    fn lengths() {
        assert_eq!(Poset::chain(3).length(0, 2).unwrap(), 2);
        assert_eq!(Poset::chain(3).length(1, 1).unwrap(), 0);
        assert_eq!(diamond().length(0, 3).unwrap(), 2);
        assert_eq!(diamond().poset_length(), 2);
        assert!(v_poset().length(2, 0).is_err());
        // Longest, not shortest: 0<1<2<3 plus a shortcut 0<4<3.
        let p = Poset::from_covers(
            Poset::default_names(5),
            &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 3)],
        )
        .unwrap();
        assert_eq!(p.length(0, 3).unwrap(), 3);
    }

    #[test]
    fn multichain_counts() {
        let two = Poset::chain(2);
        let tuples: Vec<Vec<usize>> =
            two.multichains(3).into_iter().map(|c| c.entries().to_vec()).collect();
        assert_eq!(tuples, vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]);
        assert_eq!(Poset::chain(3).multichains(3).len(), 10);
        assert_eq!(v_poset().multichains(3).len(), 7);
        assert_eq!(Poset::antichain(4).multichains(5).len(), 4);
    }

    #[test]
    fn covers_are_transitive_reduction() {
        let p = Poset::from_covers(Poset::default_names(3), &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert!(p.leq(0, 2));
    }

    #[test]
    fn cycles_rejected() {
        let err = Poset::from_covers(Poset::default_names(2), &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, Error::Cycle(_)));
        assert!(Poset::from_covers(Poset::default_names(1), &[(0, 0)]).is_err());
    }

    #[test]
    fn relation_checks() {
        let names = Poset::default_names(3);
        // 0<1, 1<2 without 0<2.
        let leq = vec![true, true, false, false, true, true, false, false, true];
        assert!(matches!(
            Poset::from_relation(names.clone(), leq),
            Err(Error::NotPartialOrder(_))
        ));
        let leq = vec![true, true, true, false, true, true, false, false, true];
        assert_eq!(Poset::from_relation(names, leq).unwrap(), Poset::chain(3));
    }

    #[test]
    fn dual_and_relabel() {
        let v = v_poset();
        let lambda = v.dual();
        assert_eq!(lambda.covers(), &[(1, 0), (2, 0)]);
        let r = v.relabel(&[2, 0, 1]);
        assert_eq!(r.covers(), &[(2, 0), (2, 1)]);
        assert_eq!(r.name(2), "0");
    }
}
