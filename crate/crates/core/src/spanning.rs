//! Spanning trees of a chain graph.
//!
//! A spanning tree is determined by the `r` edges it leaves out. Choosing
//! which common edges to delete splits the chain into maximal runs of
//! merged cycles; each merged cycle then loses exactly one edge that is not
//! one of its two boundary common edges. [`removals`] walks those choices
//! directly, and [`enumerate_trees_oracle`] cross-checks them against plain
//! search.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chain_graph::ChainGraph;
use crate::edgeset::EdgeSet;
use crate::error::Result;
use crate::oracle;

/// Class of a removal pattern, keyed on the deleted common edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TreeClass {
    /// No common edge removed.
    C1,
    /// Exactly one common edge removed.
    C2,
    /// Two or more common edges, all in one contiguous run.
    C3a,
    /// Two or more common edges, no two consecutive.
    C3b,
    /// Two or more common edges, mixing runs and isolated edges.
    C3c,
}

impl TreeClass {
    pub const ALL: [TreeClass; 5] = [
        TreeClass::C1,
        TreeClass::C2,
        TreeClass::C3a,
        TreeClass::C3b,
        TreeClass::C3c,
    ];

    /// Classifies a set of removed common edges given by cycle index `j`
    /// (edge `e_{j,1}`), as a bitmask with bit `j - 1` per edge.
    fn of_common_mask(mask: u64) -> TreeClass {
        match mask.count_ones() {
            0 => TreeClass::C1,
            1 => TreeClass::C2,
            _ => {
                let runs = run_lengths(mask);
                if runs.len() == 1 {
                    TreeClass::C3a
                } else if runs.iter().all(|&l| l == 1) {
                    TreeClass::C3b
                } else {
                    TreeClass::C3c
                }
            }
        }
    }
}

impl fmt::Display for TreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn run_lengths(mut mask: u64) -> Vec<u32> {
    let mut runs = Vec::new();
    while mask != 0 {
        mask >>= mask.trailing_zeros();
        let len = mask.trailing_ones();
        runs.push(len);
        mask = mask.checked_shr(len).unwrap_or(0);
    }
    runs
}

/// Edges removed to obtain one spanning tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TreeRemoval {
    pub removed: EdgeSet,
    pub class: TreeClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpanningTree {
    pub edges: EdgeSet,
    pub class: Option<TreeClass>,
}

/// A duplicate-free list of spanning trees in ascending bitmask order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningTreeSet {
    pub trees: Vec<SpanningTree>,
}

impl SpanningTreeSet {
    /// Sorts, and drops repeated edge sets keeping the smallest class tag.
    pub fn from_trees(mut trees: Vec<SpanningTree>) -> Self {
        trees.sort_by_key(|t| (t.edges, t.class));
        trees.dedup_by_key(|t| t.edges);
        SpanningTreeSet { trees }
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn edge_sets(&self) -> Vec<EdgeSet> {
        self.trees.iter().map(|t| t.edges).collect()
    }

    pub fn contains(&self, edges: EdgeSet) -> bool {
        self.trees.binary_search_by_key(&edges, |t| t.edges).is_ok()
    }

    /// Tree count per class tag. Untagged trees are not counted.
    pub fn by_class(&self) -> BTreeMap<TreeClass, usize> {
        let mut counts = BTreeMap::new();
        for class in self.trees.iter().filter_map(|t| t.class) {
            *counts.entry(class).or_insert(0) += 1;
        }
        counts
    }
}

/// Streams every removal pattern licensed by the class characterization.
pub fn removals(g: &ChainGraph) -> impl Iterator<Item = TreeRemoval> + '_ {
    let r = g.r();
    let common_subsets = 1u64 << (r - 1);
    (0..common_subsets).flat_map(move |mask| {
        let class = TreeClass::of_common_mask(mask);
        let deleted: EdgeSet = (1..r)
            .filter(|j| mask >> (j - 1) & 1 == 1)
            .map(|j| g.common_edge(j).expect("common edge"))
            .collect();
        let choices = merged_groups(g, mask)
            .into_iter()
            .map(|(start, end)| {
                let merged = g
                    .composite_cycle(start, end - start)
                    .expect("group in range")
                    .edges;
                let boundary: EdgeSet = [start.checked_sub(1), Some(end)]
                    .into_iter()
                    .flatten()
                    .filter_map(|j| g.common_edge(j))
                    .collect();
                (merged - boundary).iter().collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        Product::new(choices).map(move |picks| TreeRemoval {
            removed: deleted | picks.into_iter().collect(),
            class,
        })
    })
}

/// Maximal runs of cycles glued together by the deleted common edges,
/// as inclusive 1-based `(first, last)` cycle ranges.
fn merged_groups(g: &ChainGraph, mask: u64) -> Vec<(usize, usize)> {
    let mut groups = Vec::new();
    let mut start = 1;
    for j in 1..g.r() {
        if mask >> (j - 1) & 1 == 0 {
            groups.push((start, j));
            start = j + 1;
        }
    }
    groups.push((start, g.r()));
    groups
}

/// Cartesian product over index lists, odometer style.
struct Product {
    choices: Vec<Vec<usize>>,
    cursor: Option<Vec<usize>>,
}

impl Product {
    fn new(choices: Vec<Vec<usize>>) -> Self {
        let cursor = (!choices.iter().any(|c| c.is_empty())).then(|| vec![0; choices.len()]);
        Product { choices, cursor }
    }
}

impl Iterator for Product {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cursor = self.cursor.as_mut()?;
        let item = cursor
            .iter()
            .zip(&self.choices)
            .map(|(&i, c)| c[i])
            .collect();
        let mut pos = cursor.len();
        loop {
            if pos == 0 {
                self.cursor = None;
                break;
            }
            pos -= 1;
            cursor[pos] += 1;
            if cursor[pos] < self.choices[pos].len() {
                break;
            }
            cursor[pos] = 0;
        }
        Some(item)
    }
}

/// Spanning trees built from the class characterization, tagged by class.
pub fn enumerate_trees_characterized(g: &ChainGraph) -> SpanningTreeSet {
    let ground = g.ground();
    let trees = removals(g)
        .map(|rm| {
            let edges = ground - rm.removed;
            debug_assert!(is_spanning_tree(g, edges), "{rm:?}");
            SpanningTree {
                edges,
                class: Some(rm.class),
            }
        })
        .collect();
    SpanningTreeSet::from_trees(trees)
}

/// All spanning trees by exhaustive search (untagged).
pub fn enumerate_trees_oracle(g: &ChainGraph, cap: u128) -> Result<SpanningTreeSet> {
    let trees = oracle::spanning_trees_bruteforce(g, cap)?
        .into_iter()
        .map(|edges| SpanningTree { edges, class: None })
        .collect();
    Ok(SpanningTreeSet::from_trees(trees))
}

/// Spanning-tree count from the reduced Laplacian determinant.
pub fn count_trees_kirchhoff(g: &ChainGraph) -> u128 {
    oracle::kirchhoff_count(g)
}

/// True iff `s` is the edge set of a spanning tree of `g`.
pub fn is_spanning_tree(g: &ChainGraph, s: EdgeSet) -> bool {
    if !s.is_subset(g.ground()) || s.len() + 1 != g.vertex_count() {
        return false;
    }
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in s {
        let (a, b) = g.endpoints(e);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    // |V| - 1 edges without a cycle span every vertex
    true
}
