//! Chain-of-cycles graphs with their canonical edge labeling.
//!
//! A chain graph has `r` cycles `C_1, .., C_r` of lengths `m_1, .., m_r`
//! where consecutive cycles share exactly one edge, plus `t` forest edges.
//! Ground-set indices follow the label order
//!
//! ```text
//! e_{1,1} .. e_{1,m_1}, e_{2,1} .. e_{2,m_2-1}, .., e_{r,1} .. e_{r,m_r-1}, e_1 .. e_t
//! ```
//!
//! and `e_{j,1}` (for `j < r`) is the edge shared by `C_j` and `C_{j+1}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::edgeset::{EdgeSet, MAX_EDGES};
use crate::error::{Error, Result};

/// Label of a ground-set edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    /// `e_{cycle,position}`, both 1-based.
    Cycle { cycle: usize, position: usize },
    /// `e_index`, 1-based.
    Forest { index: usize },
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EdgeLabel::Cycle { cycle, position } => write!(f, "e_{{{cycle},{position}}}"),
            EdgeLabel::Forest { index } => write!(f, "e_{index}"),
        }
    }
}

impl FromStr for EdgeLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let body = s
            .strip_prefix("e_")
            .ok_or_else(|| format!("edge label must start with `e_`: {s:?}"))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad edge label {s:?}"))
        };
        match body.strip_prefix('{').and_then(|b| b.strip_suffix('}')) {
            Some(inner) => {
                let (c, p) = inner
                    .split_once(',')
                    .ok_or_else(|| format!("bad edge label {s:?}"))?;
                Ok(EdgeLabel::Cycle {
                    cycle: parse(c)?,
                    position: parse(p)?,
                })
            }
            None => Ok(EdgeLabel::Forest {
                index: parse(body)?,
            }),
        }
    }
}

impl Serialize for EdgeLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EdgeLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Where the forest edges hang.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ForestSpec {
    /// `count` edges forming a path hanging off vertex 0.
    Count(usize),
    /// Forest edge `k` joins `attach[k]` to a fresh vertex. Fresh vertices
    /// of earlier forest edges may be named.
    Attach(Vec<usize>),
}

impl ForestSpec {
    pub fn edge_count(&self) -> usize {
        match self {
            ForestSpec::Count(t) => *t,
            ForestSpec::Attach(v) => v.len(),
        }
    }
}

impl Default for ForestSpec {
    fn default() -> Self {
        ForestSpec::Count(0)
    }
}

/// `C_{start, .., start+span}`: symmetric difference of the simple cycles
/// `C_start .. C_{start+span}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CompositeCycle {
    /// 1-based index of the first simple cycle.
    pub start: usize,
    /// Number of merged neighbours; 0 for a simple cycle.
    pub span: usize,
    pub edges: EdgeSet,
}

impl CompositeCycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn end(&self) -> usize {
        self.start + self.span
    }

    /// `C_{1,2,3}` style name.
    pub fn name(&self) -> String {
        let parts: Vec<String> = (self.start..=self.end()).map(|i| i.to_string()).collect();
        if parts.len() == 1 {
            format!("C_{}", parts[0])
        } else {
            format!("C_{{{}}}", parts.join(","))
        }
    }
}

/// The labeled chain graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainGraph {
    lengths: Vec<usize>,
    forest: ForestSpec,
    vertex_count: usize,
    endpoints: Vec<(usize, usize)>,
    labels: Vec<EdgeLabel>,
    simple_cycles: Vec<EdgeSet>,
}

impl ChainGraph {
    /// Builds the chain graph with cycle lengths `lengths` (so `r = lengths.len()`).
    pub fn new(lengths: &[usize], forest: ForestSpec) -> Result<Self> {
        let r = lengths.len();
        if r == 0 {
            return Err(Error::InvalidCycleCount { r, lengths: 0 });
        }
        if let Some((j, &m)) = lengths.iter().enumerate().find(|(_, &m)| m < 3) {
            return Err(Error::InvalidLength {
                cycle: j + 1,
                length: m,
            });
        }
        let t = forest.edge_count();
        let n = lengths.iter().sum::<usize>() - (r - 1) + t;
        if n > MAX_EDGES {
            return Err(Error::CapacityExceeded {
                edges: n,
                max: MAX_EDGES,
            });
        }

        // (label, endpoints) in construction order; sorted into label order below
        let mut edges: Vec<(EdgeLabel, (usize, usize))> = Vec::with_capacity(n);

        // cycle 1: e_{1,1} = (0, 1), then the path 1 -> 2 -> .. -> m_1 - 1 -> 0
        let m1 = lengths[0];
        edges.push((
            EdgeLabel::Cycle {
                cycle: 1,
                position: 1,
            },
            (0, 1),
        ));
        for p in 2..=m1 {
            let a = p - 1;
            let b = if p == m1 { 0 } else { p };
            edges.push((
                EdgeLabel::Cycle {
                    cycle: 1,
                    position: p,
                },
                (a, b),
            ));
        }
        let mut vertex_count = m1;
        let mut shared = (0usize, 1usize);

        for (jdx, &m) in lengths.iter().enumerate().skip(1) {
            let j = jdx + 1;
            // path of m - 1 edges from shared.1 back to shared.0
            let path_len = m - 1;
            let mut walk = Vec::with_capacity(path_len + 1);
            walk.push(shared.1);
            for _ in 1..path_len {
                walk.push(vertex_count);
                vertex_count += 1;
            }
            walk.push(shared.0);

            let common_at = (j < r).then_some(path_len / 2);
            let mut position = 2;
            for s in 0..path_len {
                let ends = (walk[s], walk[s + 1]);
                let pos = match common_at {
                    Some(c) if c == s => 1,
                    Some(_) => {
                        position += 1;
                        position - 1
                    }
                    None => s + 1,
                };
                edges.push((
                    EdgeLabel::Cycle {
                        cycle: j,
                        position: pos,
                    },
                    ends,
                ));
            }
            if let Some(c) = common_at {
                shared = (walk[c], walk[c + 1]);
            }
        }

        match &forest {
            ForestSpec::Count(t) => {
                let mut tip = 0;
                for k in 1..=*t {
                    edges.push((EdgeLabel::Forest { index: k }, (tip, vertex_count)));
                    tip = vertex_count;
                    vertex_count += 1;
                }
            }
            ForestSpec::Attach(at) => {
                for (k, &v) in at.iter().enumerate() {
                    if v >= vertex_count {
                        return Err(Error::BadAttachment {
                            edge: k + 1,
                            vertex: v,
                        });
                    }
                    edges.push((EdgeLabel::Forest { index: k + 1 }, (v, vertex_count)));
                    vertex_count += 1;
                }
            }
        }

        edges.sort_by_key(|&(label, _)| label);
        debug_assert_eq!(edges.len(), n);
        let labels: Vec<EdgeLabel> = edges.iter().map(|e| e.0).collect();
        let endpoints: Vec<(usize, usize)> = edges.iter().map(|e| e.1).collect();

        let index_of = |label: EdgeLabel| labels.binary_search(&label).expect("label present");
        let simple_cycles = (1..=r)
            .map(|j| {
                let own = if j == 1 {
                    lengths[0]
                } else {
                    lengths[j - 1] - 1
                };
                let mut set: EdgeSet = (1..=own)
                    .map(|p| {
                        index_of(EdgeLabel::Cycle {
                            cycle: j,
                            position: p,
                        })
                    })
                    .collect();
                if j > 1 {
                    set.insert(index_of(EdgeLabel::Cycle {
                        cycle: j - 1,
                        position: 1,
                    }));
                }
                set
            })
            .collect();

        Ok(ChainGraph {
            lengths: lengths.to_vec(),
            forest,
            vertex_count,
            endpoints,
            labels,
            simple_cycles,
        })
    }

    /// Number of cycles in the chain.
    pub fn r(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn forest_spec(&self) -> &ForestSpec {
        &self.forest
    }

    /// Number of forest edges.
    pub fn t(&self) -> usize {
        self.forest.edge_count()
    }

    /// Number of edges.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn ground(&self) -> EdgeSet {
        EdgeSet::full(self.n())
    }

    pub fn label(&self, index: usize) -> EdgeLabel {
        self.labels[index]
    }

    pub fn labels(&self) -> &[EdgeLabel] {
        &self.labels
    }

    pub fn index_of(&self, label: EdgeLabel) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn endpoints(&self, index: usize) -> (usize, usize) {
        self.endpoints[index]
    }

    pub fn edge_endpoints(&self) -> &[(usize, usize)] {
        &self.endpoints
    }

    /// Labels of the members of `s`, in ground-set order.
    pub fn labels_of(&self, s: EdgeSet) -> Vec<EdgeLabel> {
        s.iter().map(|i| self.labels[i]).collect()
    }

    /// Edge set of the simple cycle `C_j` (1-based).
    pub fn simple_cycle(&self, j: usize) -> EdgeSet {
        self.simple_cycles[j - 1]
    }

    /// Ground index of the common edge `e_{j,1}` between `C_j` and `C_{j+1}`.
    pub fn common_edge(&self, j: usize) -> Option<usize> {
        (j >= 1 && j < self.r()).then(|| {
            self.index_of(EdgeLabel::Cycle {
                cycle: j,
                position: 1,
            })
            .expect("common edge present")
        })
    }

    /// All common edges `e_{1,1} .. e_{r-1,1}`.
    pub fn common_edges(&self) -> EdgeSet {
        (1..self.r()).filter_map(|j| self.common_edge(j)).collect()
    }

    pub fn cycle_edges(&self) -> EdgeSet {
        self.simple_cycles
            .iter()
            .fold(EdgeSet::EMPTY, |a, &c| a | c)
    }

    pub fn forest_edges(&self) -> EdgeSet {
        self.ground() - self.cycle_edges()
    }

    /// Edges of `C_j` that are shared with no other cycle.
    pub fn private_edges(&self, j: usize) -> EdgeSet {
        self.simple_cycle(j) - self.common_edges()
    }

    /// `C_{start, .., start+span}`, built by symmetric difference.
    pub fn composite_cycle(&self, start: usize, span: usize) -> Result<CompositeCycle> {
        let r = self.r();
        if start == 0 || start + span > r {
            return Err(Error::IndexOutOfRange { start, span, r });
        }
        let edges =
            (start..=start + span).fold(EdgeSet::EMPTY, |acc, j| acc ^ self.simple_cycle(j));
        Ok(CompositeCycle { start, span, edges })
    }

    /// Every cycle of the graph, ordered by span then start.
    pub fn all_cycles(&self) -> Vec<CompositeCycle> {
        let r = self.r();
        (0..r)
            .flat_map(|span| (1..=r - span).map(move |start| (start, span)))
            .map(|(start, span)| self.composite_cycle(start, span).expect("in range"))
            .collect()
    }

    /// Length predicted from the simple cycle lengths: `sum m - 2 * span`.
    pub fn composite_length(&self, start: usize, span: usize) -> Result<usize> {
        let r = self.r();
        if start == 0 || start + span > r {
            return Err(Error::IndexOutOfRange { start, span, r });
        }
        let total: usize = self.lengths[start - 1..start + span].iter().sum();
        Ok(total - 2 * span)
    }

    /// True iff `s` induces a connected 2-regular subgraph.
    pub fn is_cycle(&self, s: EdgeSet) -> bool {
        if s.len() < 3 {
            return false;
        }
        let mut degree = vec![0usize; self.vertex_count];
        for e in s {
            let (a, b) = self.endpoints[e];
            degree[a] += 1;
            degree[b] += 1;
        }
        if degree.iter().any(|&d| d != 0 && d != 2) {
            return false;
        }
        // walk the cycle from one edge and make sure it uses every edge
        let start = s.first().expect("non-empty");
        let (origin, mut at) = self.endpoints[start];
        let mut used = EdgeSet::singleton(start);
        while at != origin {
            let next = (s - used).iter().find(|&e| {
                let (a, b) = self.endpoints[e];
                a == at || b == at
            });
            match next {
                Some(e) => {
                    used.insert(e);
                    let (a, b) = self.endpoints[e];
                    at = if a == at { b } else { a };
                }
                None => return false,
            }
        }
        used == s
    }
}

/// Which row of the pairwise intersection table applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableCase {
    /// The shorter cycle ends just before the other starts.
    AdjacentBefore,
    /// Overlap at the left end of the longer cycle.
    LeftOverlap,
    /// Same start, shorter span.
    SameStart,
    /// Identical cycles.
    Identical,
    /// Strictly nested inside.
    Interior,
    /// Same end, later start.
    SameEnd,
    /// Overlap at the right end of the longer cycle.
    RightOverlap,
    /// The shorter cycle starts just after the other ends.
    AdjacentAfter,
    Disjoint,
}

/// Exact intersection size alongside the tabulated prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleIntersection {
    pub exact: usize,
    pub case: TableCase,
    pub predicted: i64,
}

impl CycleIntersection {
    pub fn agrees(&self) -> bool {
        self.predicted == self.exact as i64
    }
}

/// Number of shared edges of two cycles, computed from their edge sets and
/// also predicted by the nine-row table of shared-edge counts.
pub fn cycle_intersection_size(
    g: &ChainGraph,
    a: &CompositeCycle,
    b: &CompositeCycle,
) -> CycleIntersection {
    let exact = (a.edges & b.edges).len();
    let (case, predicted) = intersection_table(g, a, b);
    CycleIntersection {
        exact,
        case,
        predicted,
    }
}

fn intersection_table(g: &ChainGraph, a: &CompositeCycle, b: &CompositeCycle) -> (TableCase, i64) {
    // the table is stated with the shorter span first
    let (a, b) = if a.span <= b.span { (a, b) } else { (b, a) };
    let (i, k) = (a.start as i64, a.span as i64);
    let (j, l) = (b.start as i64, b.span as i64);
    let len = |start: i64, span: i64| {
        g.composite_length(start as usize, span as usize)
            .map(|x| x as i64)
            .unwrap_or(0)
    };
    let end = i + k;

    if end == j - 1 {
        return (TableCase::AdjacentBefore, 1);
    }
    let alpha = end - j;
    if (0..k).contains(&alpha) {
        return (TableCase::LeftOverlap, len(j, alpha) - 2);
    }
    if end == j + k && k < l {
        return (TableCase::SameStart, len(j, k) - 1);
    }
    if end == j + l && l == k {
        return (TableCase::Identical, len(j, l));
    }
    if (k + 1..l).contains(&alpha) {
        return (TableCase::Interior, len(i, k) - 2);
    }
    if end == j + l {
        return (TableCase::SameEnd, len(i, k) - 1);
    }
    let beta = end - (j + l);
    if (1..=k).contains(&beta) {
        return (TableCase::RightOverlap, len(i, k - beta) - 2);
    }
    if i == j + l + 1 {
        return (TableCase::AdjacentAfter, 1);
    }
    (TableCase::Disjoint, 0)
}

/// A pair of cycles where the tabulated count differs from the exact one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDisagreement {
    pub first: String,
    pub second: String,
    pub case: TableCase,
    pub predicted: i64,
    pub exact: usize,
}

/// Evaluates the intersection table on every ordered pair of distinct cycles
/// and lists the disagreements with the exact edge-set intersection.
pub fn intersection_table_disagreements(g: &ChainGraph) -> Vec<TableDisagreement> {
    let cycles = g.all_cycles();
    let mut out = Vec::new();
    for a in &cycles {
        for b in &cycles {
            let x = cycle_intersection_size(g, a, b);
            if !x.agrees() {
                out.push(TableDisagreement {
                    first: a.name(),
                    second: b.name(),
                    case: x.case,
                    predicted: x.predicted,
                    exact: x.exact,
                });
            }
        }
    }
    out
}

/// Number of cycles in a chain of `r` cycles: `r (r + 1) / 2`.
pub fn cycle_count(r: usize) -> usize {
    r * (r + 1) / 2
}
