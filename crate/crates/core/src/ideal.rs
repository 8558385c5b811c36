//! Square-free monomial ideals over the edge variables: the facet ideal, its
//! minimal primes (vertex covers), colon ideals and the quasi-linear
//! quotients certificate for Cohen-Macaulayness.
//!
//! A square-free monomial is identified with its support, so every
//! generator is an [`EdgeSet`].

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::chain_graph::{ChainGraph, EdgeLabel};
use crate::complex::{ssc, SimplicialComplex};
use crate::edgeset::{minimalize, EdgeSet};
use crate::error::{Error, Result};
use crate::oracle;

/// Cap on intermediate generator counts in [`intersect_primes`].
pub const INTERSECTION_GENERATOR_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    ground_size: usize,
    generators: Vec<EdgeSet>,
}

impl MonomialIdeal {
    /// Ideal generated by `generators`, reduced to its minimal generating
    /// system (sorted by bitmask).
    pub fn new(ground_size: usize, mut generators: Vec<EdgeSet>) -> Self {
        minimalize(&mut generators);
        MonomialIdeal {
            ground_size,
            generators,
        }
    }

    /// Keeps the given generators and order as is. The caller guarantees
    /// they are already minimal.
    fn from_minimal(ground_size: usize, generators: Vec<EdgeSet>) -> Self {
        MonomialIdeal {
            ground_size,
            generators,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn generators(&self) -> &[EdgeSet] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.is_empty())
    }

    /// Membership of the square-free monomial with support `m`.
    pub fn contains(&self, m: EdgeSet) -> bool {
        self.generators.iter().any(|g| g.is_subset(m))
    }

    /// Smallest generator degree; `None` for the zero ideal.
    pub fn min_degree(&self) -> Option<usize> {
        self.generators.iter().map(|g| g.len()).min()
    }
}

/// Prime ideal generated by a set of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VariablePrime {
    pub vars: EdgeSet,
}

/// Generators are the facets.
pub fn facet_ideal(c: &SimplicialComplex) -> MonomialIdeal {
    MonomialIdeal::new(c.ground_size(), c.facets().to_vec())
}

/// All minimal vertex covers of `c` by exhaustive hitting-set search.
pub fn minimal_vertex_covers_oracle(c: &SimplicialComplex, cap: u128) -> Result<Vec<EdgeSet>> {
    oracle::minimal_hitting_sets(c.facets(), cap)
}

/// The covers predicted for a chain graph: every forest edge alone, and
/// every pair of distinct edges of one cycle drawn from that cycle's
/// index range (positions `2..=m_1` on the first cycle, `2..=m_j - 1` on
/// middle cycles, `1..=m_r - 1` on the last; all positions when `r = 1`).
pub fn covers_lemma41(g: &ChainGraph) -> Vec<EdgeSet> {
    let r = g.r();
    let mut covers: Vec<EdgeSet> = g.forest_edges().iter().map(EdgeSet::singleton).collect();
    for j in 1..=r {
        let m = g.lengths()[j - 1];
        let positions = match (j, r) {
            (1, 1) => 1..=m,
            (1, _) => 2..=m,
            (j, r) if j == r => 1..=m - 1,
            _ => 2..=m - 1,
        };
        let edges: Vec<usize> = positions
            .filter_map(|position| g.index_of(EdgeLabel::Cycle { cycle: j, position }))
            .collect();
        for (x, &a) in edges.iter().enumerate() {
            for &b in &edges[x + 1..] {
                covers.push(EdgeSet::from_indices([a, b]));
            }
        }
    }
    covers.sort();
    covers.dedup();
    covers
}

/// Intersection of variable primes, built one prime at a time:
/// `I ∩ (vars) = (g if g meets vars, else g·x_v for each v in vars)`,
/// reduced after each step.
pub fn intersect_primes(primes: &[VariablePrime], ground_size: usize) -> Result<MonomialIdeal> {
    intersect_primes_capped(primes, ground_size, INTERSECTION_GENERATOR_CAP)
}

pub fn intersect_primes_capped(
    primes: &[VariablePrime],
    ground_size: usize,
    cap: usize,
) -> Result<MonomialIdeal> {
    let Some((first, rest)) = primes.split_first() else {
        return Err(Error::EmptyIdeal);
    };
    let mut gens: Vec<EdgeSet> = first.vars.iter().map(EdgeSet::singleton).collect();
    for p in rest {
        let mut next = Vec::with_capacity(gens.len());
        for &g in &gens {
            if g.intersects(p.vars) {
                next.push(g);
            } else {
                next.extend(p.vars.iter().map(|v| g.with(v)));
            }
            if next.len() > cap {
                return Err(Error::CapacityExceeded {
                    edges: next.len(),
                    max: cap,
                });
            }
        }
        minimalize(&mut next);
        gens = next;
    }
    Ok(MonomialIdeal::new(ground_size, gens))
}

/// `(I : m)` together with its least generator degree and the generators
/// attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colon {
    pub ideal: MonomialIdeal,
    pub mindeg: usize,
    pub witnesses: Vec<EdgeSet>,
}

/// Colon of a square-free ideal by a square-free monomial: generated by the
/// support differences `g \ m`. The unit ideal has `mindeg` 0.
pub fn colon_mindeg(i: &MonomialIdeal, m: EdgeSet) -> Result<Colon> {
    if i.is_zero() {
        return Err(Error::EmptyIdeal);
    }
    colon_of_generators(i.ground_size(), i.generators(), m)
}

fn colon_of_generators(ground_size: usize, gens: &[EdgeSet], m: EdgeSet) -> Result<Colon> {
    if gens.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let ideal = MonomialIdeal::new(ground_size, gens.iter().map(|&g| g - m).collect());
    let mindeg = ideal.min_degree().expect("non-empty");
    let witnesses = ideal
        .generators()
        .iter()
        .copied()
        .filter(|w| w.len() == mindeg)
        .collect();
    Ok(Colon {
        ideal,
        mindeg,
        witnesses,
    })
}

/// Generator order exhibiting quasi-linear quotients, with one linear
/// witness per step after the first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientCertificate {
    /// Indices into the ideal's generator list.
    pub ordering: Vec<usize>,
    /// `witnesses[s]` is the variable for step `s + 1` of the ordering.
    pub witnesses: Vec<usize>,
}

impl QuotientCertificate {
    /// Replays the certificate using membership tests only: at each step the
    /// generator is outside the earlier ideal, and multiplying it by the
    /// witness variable lands inside.
    pub fn replay(&self, ideal: &MonomialIdeal) -> bool {
        let gens = ideal.generators();
        if self.ordering.len() != gens.len() || self.witnesses.len() + 1 != gens.len().max(1) {
            return false;
        }
        let mut seen = vec![false; gens.len()];
        for &i in &self.ordering {
            if i >= gens.len() || std::mem::replace(&mut seen[i], true) {
                return false;
            }
        }
        self.witnesses.iter().enumerate().all(|(s, &v)| {
            let step = s + 1;
            let current = gens[self.ordering[step]];
            let earlier = MonomialIdeal::from_minimal(
                ideal.ground_size(),
                self.ordering[..step].iter().map(|&i| gens[i]).collect(),
            );
            !current.contains(v) && !earlier.contains(current) && earlier.contains(current.with(v))
        })
    }
}

/// Checks that every colon `(m_1, .., m_{i-1}) : m_i` along `ordering` has a
/// linear generator and no unit generator.
pub fn quasi_linear_certificate(
    ideal: &MonomialIdeal,
    ordering: &[usize],
) -> Result<QuotientCertificate> {
    let gens = ideal.generators();
    let mut sorted = ordering.to_vec();
    sorted.sort_unstable();
    if sorted != (0..gens.len()).collect::<Vec<_>>() {
        return Err(Error::InvalidOrdering(format!(
            "expected a permutation of 0..{}",
            gens.len()
        )));
    }
    let mut witnesses = Vec::with_capacity(gens.len().saturating_sub(1));
    let mut prefix: Vec<EdgeSet> = Vec::with_capacity(gens.len());
    for (step, &idx) in ordering.iter().enumerate() {
        let m = gens[idx];
        if step > 0 {
            let colon = colon_of_generators(ideal.ground_size(), &prefix, m)?;
            if colon.mindeg != 1 {
                return Err(Error::CertificateFails {
                    step,
                    mindeg: colon.mindeg,
                });
            }
            let v = colon.witnesses[0].first().expect("linear witness");
            witnesses.push(v);
        }
        prefix.push(m);
    }
    Ok(QuotientCertificate {
        ordering: ordering.to_vec(),
        witnesses,
    })
}

/// Length of the initial run `e_{1,1}, e_{2,1}, ..` contained in the removal
/// set; `e_{r,1}` continues the run after `e_{r-1,1}`.
fn leading_run(g: &ChainGraph, removed: EdgeSet) -> usize {
    (1..=g.r())
        .take_while(|&j| {
            g.index_of(EdgeLabel::Cycle {
                cycle: j,
                position: 1,
            })
            .is_some_and(|e| removed.contains(e))
        })
        .count()
}

/// Block of a generator in the block ordering: generators whose removal set
/// starts with a longer run of `e_{j,1}` edges come first.
pub fn ordering_block(g: &ChainGraph, generator: EdgeSet) -> usize {
    g.r() - leading_run(g, generator.complement(g.n()))
}

/// Generator order of the facet ideal `facet_ideal(ssc(g))`: blocks by
/// decreasing leading run of removed `e_{j,1}` edges, then removal sets in
/// label-lexicographic order within a block.
pub fn paper_ordering(g: &ChainGraph) -> Vec<usize> {
    let ideal = facet_ideal(&ssc(g));
    paper_ordering_for(g, &ideal)
}

pub fn paper_ordering_for(g: &ChainGraph, ideal: &MonomialIdeal) -> Vec<usize> {
    let n = g.n();
    let gens = ideal.generators();
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by(|&a, &b| {
        let (ra, rb) = (gens[a].complement(n), gens[b].complement(n));
        ordering_block(g, gens[a])
            .cmp(&ordering_block(g, gens[b]))
            .then_with(|| ra.cmp_lex(rb))
            .then(Ordering::Equal)
    });
    order
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Pure, and the facet ideal has quasi-linear quotients.
    CohenMacaulay(QuotientCertificate),
    /// The ordering did not certify; says nothing either way.
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::CohenMacaulay(_))
    }
}

/// Purity plus a quasi-linear quotients certificate along [`paper_ordering`].
pub fn cohen_macaulay_verdict(g: &ChainGraph) -> (MonomialIdeal, Verdict) {
    let complex = ssc(g);
    let ideal = facet_ideal(&complex);
    if !complex.is_pure() {
        return (
            ideal,
            Verdict::Inconclusive {
                reason: "complex is not pure".into(),
            },
        );
    }
    let ordering = paper_ordering_for(g, &ideal);
    let verdict = match quasi_linear_certificate(&ideal, &ordering) {
        Ok(cert) => Verdict::CohenMacaulay(cert),
        Err(e) => Verdict::Inconclusive {
            reason: e.to_string(),
        },
    };
    (ideal, verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_graph::ForestSpec;
    use crate::oracle::HITTING_SET_NODE_CAP;

    fn graph(lengths: &[usize], t: usize) -> ChainGraph {
        ChainGraph::new(lengths, ForestSpec::Count(t)).unwrap()
    }

    fn set(g: &ChainGraph, labels: &[&str]) -> EdgeSet {
        labels
            .iter()
            .map(|l| g.index_of(l.parse().unwrap()).unwrap())
            .collect()
    }

    fn xy(bits: &[usize]) -> EdgeSet {
        EdgeSet::from_indices(bits.iter().copied())
    }

    #[test]
    fn fig1_facet_ideal() {
        let g = graph(&[3, 4], 4);
        let ideal = facet_ideal(&ssc(&g));
        assert_eq!(ideal.generators().len(), 11);
        assert!(ideal.generators().iter().all(|m| m.len() == 8));
        let tri = facet_ideal(&ssc(&graph(&[3], 0)));
        assert_eq!(tri.generators().len(), 3);
        assert!(tri.generators().iter().all(|m| m.len() == 2));
    }

    #[test]
    fn fig1_covers() {
        let g = graph(&[3, 4], 4);
        let lemma = covers_lemma41(&g);
        let mut expected: Vec<EdgeSet> = vec![
            set(&g, &["e_1"]),
            set(&g, &["e_2"]),
            set(&g, &["e_3"]),
            set(&g, &["e_4"]),
            set(&g, &["e_{1,2}", "e_{1,3}"]),
            set(&g, &["e_{2,1}", "e_{2,2}"]),
            set(&g, &["e_{2,1}", "e_{2,3}"]),
            set(&g, &["e_{2,2}", "e_{2,3}"]),
        ];
        expected.sort();
        assert_eq!(lemma, expected);

        // the exhaustive search also finds the three-edge bonds through e_{1,1}
        let oracle = minimal_vertex_covers_oracle(&ssc(&g), HITTING_SET_NODE_CAP).unwrap();
        assert_eq!(oracle.len(), 14);
        assert!(lemma.iter().all(|c| oracle.contains(c)));
        assert!(oracle.contains(&set(&g, &["e_{1,1}", "e_{1,2}", "e_{2,1}"])));
    }

    #[test]
    fn triangle_covers() {
        let g = graph(&[3], 0);
        let oracle = minimal_vertex_covers_oracle(&ssc(&g), HITTING_SET_NODE_CAP).unwrap();
        assert_eq!(oracle, covers_lemma41(&g));
        assert_eq!(oracle.len(), 3);
    }

    #[test]
    fn prime_intersections() {
        let p = |bits: &[usize]| VariablePrime { vars: xy(bits) };
        let i = intersect_primes(&[p(&[0]), p(&[1])], 2).unwrap();
        assert_eq!(i.generators(), &[xy(&[0, 1])]);
        let i = intersect_primes(&[p(&[0, 1])], 2).unwrap();
        assert_eq!(i.generators(), &[xy(&[0]), xy(&[1])]);
        assert_eq!(intersect_primes(&[], 2), Err(Error::EmptyIdeal));
    }

    #[test]
    fn decomposition_of_fig1() {
        let g = graph(&[3, 4], 4);
        let complex = ssc(&g);
        let covers = minimal_vertex_covers_oracle(&complex, HITTING_SET_NODE_CAP).unwrap();
        let primes: Vec<VariablePrime> =
            covers.iter().map(|&vars| VariablePrime { vars }).collect();
        assert_eq!(
            intersect_primes(&primes, g.n()).unwrap(),
            facet_ideal(&complex)
        );
    }

    #[test]
    fn colon_examples() {
        let i = MonomialIdeal::new(3, vec![xy(&[0, 1])]);
        let c = colon_mindeg(&i, xy(&[0, 2])).unwrap();
        assert_eq!(c.mindeg, 1);
        assert_eq!(c.witnesses, vec![xy(&[1])]);
        let c = colon_mindeg(&i, xy(&[0, 1])).unwrap();
        assert_eq!(c.mindeg, 0);
        assert!(c.ideal.is_unit());
        assert_eq!(
            colon_mindeg(&MonomialIdeal::new(3, vec![]), xy(&[0])),
            Err(Error::EmptyIdeal)
        );
    }

    #[test]
    fn fig1_second_step_colon() {
        let g = graph(&[3, 4], 4);
        let e = g.ground();
        let first = e - set(&g, &["e_{1,1}", "e_{2,1}"]);
        let second = e - set(&g, &["e_{1,1}", "e_{2,2}"]);
        let c = colon_mindeg(&MonomialIdeal::new(g.n(), vec![first]), second).unwrap();
        assert_eq!(c.mindeg, 1);
        assert_eq!(c.witnesses, vec![set(&g, &["e_{2,2}"])]);
    }

    #[test]
    fn fig1_ordering_blocks() {
        let g = graph(&[3, 4], 4);
        let ideal = facet_ideal(&ssc(&g));
        let order = paper_ordering_for(&g, &ideal);
        let n = g.n();
        assert_eq!(
            ideal.generators()[order[0]].complement(n),
            set(&g, &["e_{1,1}", "e_{2,1}"])
        );
        let blocks: Vec<usize> = order
            .iter()
            .map(|&i| ordering_block(&g, ideal.generators()[i]))
            .collect();
        assert_eq!(blocks, [0, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2]);
        let cert = quasi_linear_certificate(&ideal, &order).unwrap();
        assert_eq!(cert.witnesses.len(), 10);
        assert!(cert.replay(&ideal));
    }

    #[test]
    fn certificate_failures() {
        let disjoint = MonomialIdeal::new(4, vec![xy(&[0, 1]), xy(&[2, 3])]);
        assert_eq!(
            quasi_linear_certificate(&disjoint, &[0, 1]),
            Err(Error::CertificateFails { step: 1, mindeg: 2 })
        );
        assert_eq!(
            quasi_linear_certificate(&disjoint, &[1, 0]),
            Err(Error::CertificateFails { step: 1, mindeg: 2 })
        );
        assert!(matches!(
            quasi_linear_certificate(&disjoint, &[0, 0]),
            Err(Error::InvalidOrdering(_))
        ));
        let single = MonomialIdeal::new(2, vec![xy(&[0, 1])]);
        let cert = quasi_linear_certificate(&single, &[0]).unwrap();
        assert!(cert.witnesses.is_empty());
        assert!(cert.replay(&single));
    }

    #[test]
    fn replay_rejects_tampering() {
        let g = graph(&[3, 4], 0);
        let (ideal, verdict) = cohen_macaulay_verdict(&g);
        let Verdict::CohenMacaulay(cert) = verdict else {
            panic!("expected certificate")
        };
        assert!(cert.replay(&ideal));
        // a witness inside the generator's own support proves nothing
        let mut bad = cert.clone();
        let step_gen = ideal.generators()[cert.ordering[1]];
        bad.witnesses[0] = step_gen.first().unwrap();
        assert!(!bad.replay(&ideal));
        let mut short = cert.clone();
        short.witnesses.pop();
        assert!(!short.replay(&ideal));
    }

    #[test]
    fn triangle_is_certified() {
        let (_, verdict) = cohen_macaulay_verdict(&graph(&[3], 0));
        assert!(verdict.is_certified());
    }
}
