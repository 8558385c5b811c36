//! Brute-force reference implementations.
//!
//! Nothing in here calls into the characterization, the inclusion-exclusion
//! f-vector, the Hilbert series or the cover formulas; these routines only
//! see the raw graph (vertices and edge endpoints) or a raw facet list.

mod verify;

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::chain_graph::ChainGraph;
use crate::edgeset::{EdgeSet, KSubsets};
use crate::error::{Error, Result};

pub use verify::{
    family, hilbert_pair, verify_family, verify_instance, Check, CheckOutcome, CheckStatus,
    FamilyReport, InstanceDescriptor, OracleReport, VerifyOptions,
};

/// Default cap on candidate edge subsets examined by the tree search.
pub const TREE_CANDIDATE_CAP: u128 = 1_000_000;
/// Default cap on subsets visited by downset enumeration.
pub const DOWNSET_CAP: u128 = 1 << 24;
/// Default cap on search nodes in the hitting-set search.
pub const HITTING_SET_NODE_CAP: u128 = 10_000_000;
/// Default cap on monomials visited by literal monomial counting.
pub const MONOMIAL_CAP: u128 = 1 << 24;

fn choose(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Connected and acyclic on all vertices, by a depth-first walk.
fn spans_as_tree(vertex_count: usize, endpoints: &[(usize, usize)], s: EdgeSet) -> bool {
    if s.len() + 1 != vertex_count {
        return false;
    }
    let mut adjacency = vec![Vec::new(); vertex_count];
    for e in s {
        let (a, b) = endpoints[e];
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let mut seen = vec![false; vertex_count];
    let mut stack = vec![0];
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &w in &adjacency[v] {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    // connected with |V| - 1 edges means acyclic
    reached == vertex_count
}

/// Every spanning tree, found by testing all `(n choose |V|-1)` edge subsets.
pub fn spanning_trees_bruteforce(g: &ChainGraph, cap: u128) -> Result<Vec<EdgeSet>> {
    let n = g.n();
    let k = g.vertex_count() - 1;
    let candidates = choose(n as u128, k as u128);
    if candidates > cap {
        return Err(Error::SearchSpaceTooLarge {
            what: "spanning-tree candidates",
            size: candidates,
            cap,
        });
    }
    Ok(KSubsets::new(n, k)
        .filter(|&s| spans_as_tree(g.vertex_count(), g.edge_endpoints(), s))
        .collect())
}

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination. Zero pivots are replaced by the first usable row below.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let size = m.len();
    if size == 0 {
        return BigInt::from(1);
    }
    assert!(
        m.iter().all(|row| row.len() == size),
        "matrix must be square"
    );
    let mut sign = 1i32;
    let mut previous = BigInt::from(1);
    for k in 0..size - 1 {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let value = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &previous;
                m[i][j] = value;
            }
        }
        previous = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Graph Laplacian with integer entries.
pub fn laplacian(vertex_count: usize, endpoints: &[(usize, usize)]) -> Vec<Vec<BigInt>> {
    let mut l = vec![vec![BigInt::zero(); vertex_count]; vertex_count];
    for &(a, b) in endpoints {
        l[a][a] += 1;
        l[b][b] += 1;
        l[a][b] -= 1;
        l[b][a] -= 1;
    }
    l
}

/// Spanning-tree count: determinant of the Laplacian with the last row and
/// column deleted.
pub fn kirchhoff_count(g: &ChainGraph) -> u128 {
    let mut l = laplacian(g.vertex_count(), g.edge_endpoints());
    l.pop();
    for row in &mut l {
        row.pop();
    }
    let det = bareiss_determinant(l);
    debug_assert!(!det.is_negative());
    det.to_u128().expect("tree count fits in u128")
}

/// Face counts by cardinality: entry `i` is the number of faces with
/// `i + 1` elements. Materializes the union of all facet downsets.
pub fn f_vector_downsets(facets: &[EdgeSet], cap: u128) -> Result<Vec<u64>> {
    let work: u128 = facets.iter().map(|f| 1u128 << f.len()).sum();
    if work > cap {
        return Err(Error::SearchSpaceTooLarge {
            what: "downset enumeration",
            size: work,
            cap,
        });
    }
    let top = facets.iter().map(|f| f.len()).max().unwrap_or(0);
    let mut faces: HashSet<EdgeSet> = HashSet::new();
    for f in facets {
        faces.extend(f.subsets());
    }
    let mut counts = vec![0u64; top];
    for face in faces.into_iter().filter(|s| !s.is_empty()) {
        counts[face.len() - 1] += 1;
    }
    Ok(counts)
}

/// All inclusion-minimal sets meeting every member of `sets`, sorted by
/// bitmask.
pub fn minimal_hitting_sets(sets: &[EdgeSet], cap: u128) -> Result<Vec<EdgeSet>> {
    if sets.iter().any(|s| s.is_empty()) {
        return Ok(Vec::new());
    }
    let mut search = HittingSearch {
        sets,
        found: Vec::new(),
        nodes: 0,
        cap,
    };
    search.extend(EdgeSet::EMPTY, EdgeSet::EMPTY)?;
    let mut found = search.found;
    found.sort();
    found.dedup();
    Ok(found)
}

struct HittingSearch<'a> {
    sets: &'a [EdgeSet],
    found: Vec<EdgeSet>,
    nodes: u128,
    cap: u128,
}

impl HittingSearch<'_> {
    fn extend(&mut self, current: EdgeSet, forbidden: EdgeSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::SearchSpaceTooLarge {
                what: "hitting-set search nodes",
                size: self.nodes,
                cap: self.cap,
            });
        }
        let Some(&unhit) = self.sets.iter().find(|s| s.is_disjoint(current)) else {
            self.found.push(current);
            return Ok(());
        };
        let mut forbidden = forbidden;
        for v in unhit - forbidden {
            let next = current.with(v);
            if self.every_member_critical(next) {
                self.extend(next, forbidden)?;
            }
            forbidden.insert(v);
        }
        Ok(())
    }

    /// Each member of `c` is the only member of `c` in some set; a set
    /// failing this cannot be contained in a minimal hitting set.
    fn every_member_critical(&self, c: EdgeSet) -> bool {
        let mut critical = EdgeSet::EMPTY;
        for s in self.sets {
            let meet = *s & c;
            if meet.len() == 1 {
                critical = critical | meet;
            }
        }
        critical == c
    }
}

/// Number of degree-`degree` monomials in `n` variables whose support lies
/// inside some facet, by listing the monomials one at a time.
pub fn monomial_count(facets: &[EdgeSet], n: usize, degree: usize, cap: u128) -> Result<u128> {
    let total = choose((n + degree) as u128 - 1, degree as u128);
    if degree > 0 && total > cap {
        return Err(Error::SearchSpaceTooLarge {
            what: "monomial enumeration",
            size: total,
            cap,
        });
    }
    if degree == 0 {
        return Ok(1);
    }
    let mut is_face: HashMap<EdgeSet, bool> = HashMap::new();
    let mut exponents = vec![0usize; degree];
    let mut count = 0u128;
    // non-decreasing variable sequences of length `degree`
    loop {
        let support: EdgeSet = exponents.iter().copied().collect();
        let face = *is_face
            .entry(support)
            .or_insert_with(|| facets.iter().any(|f| support.is_subset(*f)));
        if face {
            count += 1;
        }
        let mut pos = degree;
        loop {
            if pos == 0 {
                return Ok(count);
            }
            pos -= 1;
            if exponents[pos] + 1 < n {
                let v = exponents[pos] + 1;
                for e in &mut exponents[pos..] {
                    *e = v;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_graph::ForestSpec;
    use proptest::prelude::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn determinant_small() {
        assert_eq!(
            bareiss_determinant(big(&[&[2, 1], &[1, 3]])),
            BigInt::from(5)
        );
        assert_eq!(
            bareiss_determinant(big(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])),
            BigInt::from(-1)
        );
        assert_eq!(
            bareiss_determinant(big(&[&[1, 2], &[2, 4]])),
            BigInt::zero()
        );
        assert_eq!(bareiss_determinant(Vec::new()), BigInt::from(1));
    }

    #[test]
    fn tree_counts() {
        let tri = ChainGraph::new(&[3], ForestSpec::Count(0)).unwrap();
        assert_eq!(kirchhoff_count(&tri), 3);
        assert_eq!(
            spanning_trees_bruteforce(&tri, TREE_CANDIDATE_CAP)
                .unwrap()
                .len(),
            3
        );

        // theta graphs: path lengths a, b, c give ab + bc + ca trees
        let fig1 = ChainGraph::new(&[3, 4], ForestSpec::Count(4)).unwrap();
        assert_eq!(kirchhoff_count(&fig1), 11);
        assert_eq!(
            spanning_trees_bruteforce(&fig1, TREE_CANDIDATE_CAP)
                .unwrap()
                .len(),
            11
        );
        let theta = ChainGraph::new(&[3, 4], ForestSpec::Count(0)).unwrap();
        // paths of lengths 1, 2 and 3
        assert_eq!(kirchhoff_count(&theta), 2 + 6 + 3);
        let square_pair = ChainGraph::new(&[4, 4], ForestSpec::Count(0)).unwrap();
        assert_eq!(kirchhoff_count(&square_pair), 15);
    }

    #[test]
    fn tree_search_respects_cap() {
        let g = ChainGraph::new(&[5, 5, 5, 5], ForestSpec::Count(3)).unwrap();
        assert!(matches!(
            spanning_trees_bruteforce(&g, 100),
            Err(Error::SearchSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn downsets_of_triangle_boundary() {
        let facets = [
            EdgeSet::from_indices([0, 1]),
            EdgeSet::from_indices([1, 2]),
            EdgeSet::from_indices([0, 2]),
        ];
        assert_eq!(f_vector_downsets(&facets, DOWNSET_CAP).unwrap(), vec![3, 3]);
        assert!(f_vector_downsets(&facets, 4).is_err());
    }

    #[test]
    fn hitting_sets_small() {
        let facets = [
            EdgeSet::from_indices([0, 1]),
            EdgeSet::from_indices([1, 2]),
            EdgeSet::from_indices([0, 2]),
        ];
        assert_eq!(
            minimal_hitting_sets(&facets, HITTING_SET_NODE_CAP).unwrap(),
            vec![
                EdgeSet::from_indices([0, 1]),
                EdgeSet::from_indices([0, 2]),
                EdgeSet::from_indices([1, 2]),
            ]
        );
        // a cone point is a cover by itself
        let cone = [EdgeSet::from_indices([0, 3]), EdgeSet::from_indices([1, 3])];
        let covers = minimal_hitting_sets(&cone, HITTING_SET_NODE_CAP).unwrap();
        assert!(covers.contains(&EdgeSet::singleton(3)));
        assert!(covers.contains(&EdgeSet::from_indices([0, 1])));
        assert_eq!(covers.len(), 2);
    }

    #[test]
    fn monomials_on_triangle_boundary() {
        let facets = [
            EdgeSet::from_indices([0, 1]),
            EdgeSet::from_indices([1, 2]),
            EdgeSet::from_indices([0, 2]),
        ];
        let counts: Vec<u128> = (0..4)
            .map(|d| monomial_count(&facets, 3, d, MONOMIAL_CAP).unwrap())
            .collect();
        assert_eq!(counts, vec![1, 3, 6, 9]);
    }

    fn hitting_sets_exhaustive(sets: &[EdgeSet], n: usize) -> Vec<EdgeSet> {
        let covers: Vec<EdgeSet> = EdgeSet::full(n)
            .subsets()
            .filter(|c| sets.iter().all(|s| s.intersects(*c)))
            .collect();
        let mut minimal: Vec<EdgeSet> = covers
            .iter()
            .copied()
            .filter(|c| !covers.iter().any(|d| d != c && d.is_subset(*c)))
            .collect();
        minimal.sort();
        minimal
    }

    proptest! {
        #[test]
        fn hitting_search_matches_exhaustive(raw in prop::collection::vec(1u64..(1 << 7), 1..6)) {
            let sets: Vec<EdgeSet> = raw.into_iter().map(EdgeSet::from_bits).collect();
            let found = minimal_hitting_sets(&sets, HITTING_SET_NODE_CAP).unwrap();
            prop_assert_eq!(found, hitting_sets_exhaustive(&sets, 7));
        }
    }
}
