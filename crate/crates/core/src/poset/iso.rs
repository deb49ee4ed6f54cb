use super::Poset;

type Invariant = (usize, usize, usize);

fn invariants(p: &Poset) -> Vec<Invariant> {
    (0..p.size())
        .map(|x| (p.up_degree(x), p.down_degree(x), p.height(x)))
        .collect()
}

/// Backtracking search for order isomorphisms `P -> Q`.
///
/// Candidate images are restricted to elements with the same
/// (up-degree, down-degree, height) triple. `visit` returns `false` to stop.
fn search<F: FnMut(&[usize]) -> bool>(p: &Poset, q: &Poset, mut visit: F) {
    let m = p.size();
    if m != q.size() || p.relation_count() != q.relation_count() {
        return;
    }
    let inv_p = invariants(p);
    let inv_q = invariants(q);
    let candidates: Vec<Vec<usize>> = (0..m)
        .map(|x| (0..m).filter(|&y| inv_p[x] == inv_q[y]).collect())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return;
    }
    // Most constrained elements first.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&x| candidates[x].len());

    let mut image = vec![usize::MAX; m];
    let mut used = vec![false; m];
    fn step<F: FnMut(&[usize]) -> bool>(
        depth: usize,
        order: &[usize],
        candidates: &[Vec<usize>],
        p: &Poset,
        q: &Poset,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut F,
    ) -> bool {
        if depth == order.len() {
            return visit(image);
        }
        let x = order[depth];
        for &y in &candidates[x] {
            if used[y] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&w| {
                let fw = image[w];
                p.leq(w, x) == q.leq(fw, y) && p.leq(x, w) == q.leq(y, fw)
            });
            if !consistent {
                continue;
            }
            image[x] = y;
            used[y] = true;
            let keep_going = step(depth + 1, order, candidates, p, q, image, used, visit);
            used[y] = false;
            image[x] = usize::MAX;
            if !keep_going {
                return false;
            }
        }
        true
    }
    step(0, &order, &candidates, p, q, &mut image, &mut used, &mut visit);
}

/// Some order isomorphism `phi: P -> Q` (`phi[x]` is the image of `x`), if any.
pub fn find_isomorphism(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    let mut found = None;
    search(p, q, |phi| {
        found = Some(phi.to_vec());
        false
    });
    found
}

/// Every order isomorphism `P -> Q`, sorted lexicographically.
pub fn all_isomorphisms(p: &Poset, q: &Poset) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    search(p, q, |phi| {
        all.push(phi.to_vec());
        true
    });
    all.sort();
    all
}

/// The automorphism group of `P` as a sorted list of permutations.
pub fn automorphisms(p: &Poset) -> Vec<Vec<usize>> {
    all_isomorphisms(p, p)
}

/// Whether `phi` is a bijection with `x <= y` iff `phi(x) <= phi(y)`.
pub fn is_order_isomorphism(p: &Poset, q: &Poset, phi: &[usize]) -> bool {
    let m = p.size();
    if q.size() != m || phi.len() != m {
        return false;
    }
    let mut hit = vec![false; m];
    for &y in phi {
        if y >= m || hit[y] {
            return false;
        }
        hit[y] = true;
    }
    (0..m).all(|x| (0..m).all(|y| p.leq(x, y) == q.leq(phi[x], phi[y])))
}
