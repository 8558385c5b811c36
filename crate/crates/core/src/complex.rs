//! The spanning simplicial complex and its f-vector.
//!
//! Faces are the edge sets that contain no cycle, so the cycles of the graph
//! are exactly the minimal non-faces. [`f_vector_exact`] counts faces by
//! inclusion-exclusion over sets of cycles using true union sizes.
//! [`f_vector_paper`] evaluates the closed form that estimates each union
//! from sizes and pairwise overlaps only, for comparison.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binomial::{binomial, binomial_big};
use crate::chain_graph::ChainGraph;
use crate::edgeset::{is_antichain, minimalize, EdgeSet};
use crate::error::{Error, Result};
use crate::oracle;
use crate::spanning::enumerate_trees_characterized;

/// Largest number of cycles for which `2^tau` inclusion-exclusion terms are
/// summed.
pub const MAX_CYCLES_FOR_INCLUSION_EXCLUSION: usize = 21;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    ground_size: usize,
    facets: Vec<EdgeSet>,
}

impl SimplicialComplex {
    /// Complex generated by `facets`; non-maximal generators are dropped.
    pub fn new(ground_size: usize, mut facets: Vec<EdgeSet>) -> Self {
        let ground = EdgeSet::full(ground_size);
        assert!(facets.iter().all(|f| f.is_subset(ground)));
        facets.sort_by_key(|f| std::cmp::Reverse(f.len()));
        let mut kept: Vec<EdgeSet> = Vec::with_capacity(facets.len());
        for f in facets {
            if !kept.iter().any(|k| f.is_subset(*k)) {
                kept.push(f);
            }
        }
        kept.sort();
        SimplicialComplex {
            ground_size,
            facets: kept,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn facets(&self) -> &[EdgeSet] {
        &self.facets
    }

    /// `max |F| - 1`; `-1` for the void complex.
    pub fn dimension(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize)
            .max()
            .unwrap_or(0)
            - 1
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn contains_face(&self, s: EdgeSet) -> bool {
        self.facets.iter().any(|f| s.is_subset(*f))
    }
}

/// `f[i]` is the number of `i`-dimensional faces.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    pub fn dimension(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// Reduced Euler characteristic excluding the empty face:
    /// `sum (-1)^i f_i`.
    pub fn euler_characteristic(&self) -> i128 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i128 } else { -(f as i128) })
            .sum()
    }
}

/// The spanning simplicial complex: facets are the spanning trees.
pub fn ssc(g: &ChainGraph) -> SimplicialComplex {
    let facets = enumerate_trees_characterized(g).edge_sets();
    let c = SimplicialComplex::new(g.n(), facets);
    debug_assert!(c.is_pure());
    debug_assert_eq!(c.dimension(), g.n() as isize - g.r() as isize - 1);
    c
}

/// f-vector by materializing every face (see [`oracle::f_vector_downsets`]).
pub fn f_vector_bruteforce(c: &SimplicialComplex, cap: u128) -> Result<FVector> {
    oracle::f_vector_downsets(c.facets(), cap).map(FVector)
}

/// Signed count of cycle subsets by union size: `hist[u] = sum (-1)^|S|`
/// over all `S` with `|union S| = u`.
fn union_size_histogram(g: &ChainGraph) -> Result<Vec<i64>> {
    let cycles: Vec<EdgeSet> = g.all_cycles().iter().map(|c| c.edges).collect();
    let tau = cycles.len();
    if tau > MAX_CYCLES_FOR_INCLUSION_EXCLUSION {
        return Err(Error::SearchSpaceTooLarge {
            what: "inclusion-exclusion cycle subsets",
            size: 1u128 << tau,
            cap: 1u128 << MAX_CYCLES_FOR_INCLUSION_EXCLUSION,
        });
    }

    fn walk(cycles: &[EdgeSet], union: EdgeSet, odd: bool, hist: &mut [i64]) {
        match cycles.split_first() {
            None => hist[union.len()] += if odd { -1 } else { 1 },
            Some((&c, rest)) => {
                walk(rest, union, odd, hist);
                walk(rest, union | c, !odd, hist);
            }
        }
    }

    // fan out over the choices for the first few cycles
    let head = tau.min(6);
    let (first, rest) = cycles.split_at(head);
    let n = g.n();
    let hist = (0u64..1 << head)
        .into_par_iter()
        .map(|choice| {
            let picked = EdgeSet::from_bits(choice);
            let union = picked.iter().fold(EdgeSet::EMPTY, |u, i| u | first[i]);
            let mut hist = vec![0i64; n + 1];
            walk(rest, union, picked.len() % 2 == 1, &mut hist);
            hist
        })
        .reduce(
            || vec![0i64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(hist)
}

/// Exact f-vector: `f_i = sum_S (-1)^|S| C(n - |U_S|, i + 1 - |U_S|)` over
/// sets `S` of cycles with union `U_S`, for `0 <= i <= n - r - 1`.
pub fn f_vector_exact(g: &ChainGraph) -> Result<FVector> {
    let hist = union_size_histogram(g)?;
    let n = g.n() as i64;
    let top = g.n() - g.r();
    let f = (0..top as i64)
        .map(|i| {
            let total: i128 = hist
                .iter()
                .enumerate()
                .filter(|(_, &w)| w != 0)
                .map(|(u, &w)| {
                    let u = u as i64;
                    w as i128 * binomial(n - u, i + 1 - u) as i128
                })
                .sum();
            u64::try_from(total).expect("face counts are non-negative")
        })
        .collect();
    Ok(FVector(f))
}

/// Closed-form f-vector evaluated with pairwise union estimates, next to the
/// exact values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaperFVector {
    /// Values of the closed form.
    pub values: Vec<BigInt>,
    pub exact: FVector,
    /// Indices where the closed form differs from the exact count.
    pub mismatches: Vec<usize>,
    /// Two-cycle closed form, when `r = 2`.
    pub two_cycle: Option<Vec<BigInt>>,
}

impl PaperFVector {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
            && self
                .two_cycle
                .as_ref()
                .is_none_or(|v| matches_exact(v, &self.exact))
    }
}

fn matches_exact(values: &[BigInt], exact: &FVector) -> bool {
    values.len() == exact.0.len()
        && values
            .iter()
            .zip(&exact.0)
            .all(|(v, &e)| *v == BigInt::from(e))
}

/// Evaluates the closed form where the union of a cycle set `S` is
/// estimated as `sum |C| - sum_{u < v} |C_u ∩ C_v|`.
pub fn f_vector_paper(g: &ChainGraph) -> Result<PaperFVector> {
    let exact = f_vector_exact(g)?;
    let cycles = g.all_cycles();
    let tau = cycles.len();
    let sizes: Vec<i64> = cycles.iter().map(|c| c.len() as i64).collect();
    let overlap: Vec<Vec<i64>> = cycles
        .iter()
        .map(|a| {
            cycles
                .iter()
                .map(|b| (a.edges & b.edges).len() as i64)
                .collect()
        })
        .collect();

    // signed histogram of the estimated union sizes (which may be negative)
    let mut estimates: std::collections::BTreeMap<i64, i64> = Default::default();
    for mask in 0u64..1 << tau {
        let members: Vec<usize> = EdgeSet::from_bits(mask).iter().collect();
        let mut estimate: i64 = members.iter().map(|&u| sizes[u]).sum();
        for (x, &u) in members.iter().enumerate() {
            for &v in &members[x + 1..] {
                estimate -= overlap[u][v];
            }
        }
        let sign = if members.len().is_multiple_of(2) {
            1
        } else {
            -1
        };
        *estimates.entry(estimate).or_insert(0) += sign;
    }

    let n = g.n() as i64;
    let top = (g.n() - g.r()) as i64;
    let values: Vec<BigInt> = (0..top)
        .map(|i| {
            estimates
                .iter()
                .map(|(&u, &w)| BigInt::from(w) * binomial_big(n - u, i + 1 - u))
                .sum()
        })
        .collect();
    let mismatches = values
        .iter()
        .zip(&exact.0)
        .enumerate()
        .filter(|(_, (v, &e))| **v != BigInt::from(e))
        .map(|(i, _)| i)
        .collect();
    let two_cycle = (g.r() == 2).then(|| two_cycle_closed_form(g));
    Ok(PaperFVector {
        values,
        exact,
        mismatches,
        two_cycle,
    })
}

/// The eight-term closed form for two cycles sharing one edge.
///
/// The three-cycle term carries the sign `(-1)^3` of the general
/// inclusion-exclusion sum.
pub fn two_cycle_closed_form(g: &ChainGraph) -> Vec<BigInt> {
    assert_eq!(g.r(), 2, "two-cycle form needs r = 2");
    let c1 = g.composite_cycle(1, 0).expect("C_1").edges;
    let c2 = g.composite_cycle(2, 0).expect("C_2").edges;
    let c12 = g.composite_cycle(1, 1).expect("C_12").edges;
    let (m1, m2, m12) = (c1.len() as i64, c2.len() as i64, c12.len() as i64);
    let meet = |a: EdgeSet, b: EdgeSet| (a & b).len() as i64;
    let (x12, x1_12, x2_12) = (meet(c1, c2), meet(c1, c12), meet(c2, c12));
    let n = g.n() as i64;
    let term = |u: i64, i: i64| binomial_big(n - u, i + 1 - u);
    (0..n - 2)
        .map(|i| {
            term(0, i) - (term(m1, i) + term(m2, i) + term(m12, i))
                + (term(m1 + m2 - x12, i) + term(m1 + m12 - x1_12, i) + term(m2 + m12 - x2_12, i))
                - term(m1 + m2 + m12 - x12 - x1_12 - x2_12, i)
        })
        .collect()
}

/// Minimal non-faces: the edge sets of all cycles.
pub fn minimal_nonfaces(g: &ChainGraph) -> Vec<EdgeSet> {
    let mut sets: Vec<EdgeSet> = g.all_cycles().iter().map(|c| c.edges).collect();
    let before = sets.len();
    minimalize(&mut sets);
    debug_assert_eq!(sets.len(), before, "cycles form an antichain");
    debug_assert!(is_antichain(&sets));
    sets
}

/// Face test by the non-face criterion: `s` contains no cycle.
pub fn is_face(g: &ChainGraph, s: EdgeSet) -> bool {
    s.is_subset(g.ground()) && g.all_cycles().iter().all(|c| !c.edges.is_subset(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_graph::ForestSpec;
    use crate::oracle::DOWNSET_CAP;

    fn graph(lengths: &[usize], t: usize) -> ChainGraph {
        ChainGraph::new(lengths, ForestSpec::Count(t)).unwrap()
    }

    #[test]
    fn triangle() {
        let g = graph(&[3], 0);
        let c = ssc(&g);
        assert_eq!(c.facets().len(), 3);
        assert_eq!(c.dimension(), 1);
        assert_eq!(f_vector_exact(&g).unwrap(), FVector(vec![3, 3]));
        assert_eq!(
            f_vector_bruteforce(&c, DOWNSET_CAP).unwrap(),
            FVector(vec![3, 3])
        );
        let paper = f_vector_paper(&g).unwrap();
        assert!(paper.agrees());
        assert_eq!(minimal_nonfaces(&g), vec![EdgeSet::full(3)]);
    }

    #[test]
    fn fig1() {
        let g = graph(&[3, 4], 4);
        let c = ssc(&g);
        assert!(c.is_pure());
        assert_eq!(c.facets().len(), 11);
        assert_eq!(c.dimension(), 7);
        let exact = f_vector_exact(&g).unwrap();
        assert_eq!(exact, f_vector_bruteforce(&c, DOWNSET_CAP).unwrap());
        assert_eq!(exact.get(0), 10);
        assert_eq!(exact.get(7), 11);
        let paper = f_vector_paper(&g).unwrap();
        assert!(paper.agrees(), "{paper:?}");
        assert_eq!(minimal_nonfaces(&g).len(), 3);
    }

    #[test]
    fn theta_facets() {
        let g = graph(&[3, 3], 0);
        assert_eq!(ssc(&g).facets().len(), 8);
    }

    #[test]
    fn chain_of_three_report_runs() {
        let g = graph(&[3, 3, 3], 0);
        let paper = f_vector_paper(&g).unwrap();
        assert_eq!(paper.values.len(), paper.exact.0.len());
        assert!(paper.two_cycle.is_none());
        let nonfaces = minimal_nonfaces(&g);
        assert_eq!(nonfaces.len(), 6);
        assert!(is_antichain(&nonfaces));
    }

    #[test]
    fn face_criterion_matches_facets() {
        let g = graph(&[3, 4, 3], 1);
        let c = ssc(&g);
        for s in g.ground().subsets() {
            assert_eq!(is_face(&g, s), c.contains_face(s), "{s:?}");
        }
    }

    #[test]
    fn complex_drops_non_maximal() {
        let c = SimplicialComplex::new(
            3,
            vec![
                EdgeSet::from_indices([0]),
                EdgeSet::from_indices([0, 1]),
                EdgeSet::from_indices([2]),
            ],
        );
        assert_eq!(c.facets().len(), 2);
        assert!(!c.is_pure());
        assert_eq!(c.dimension(), 1);
    }

    #[test]
    fn too_many_cycles() {
        let g = graph(&[3; 7], 0);
        assert!(matches!(
            f_vector_exact(&g),
            Err(Error::SearchSpaceTooLarge { .. })
        ));
    }
}
