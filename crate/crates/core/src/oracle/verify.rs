//! Cross-checks between the formula paths and the brute-force oracles.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain_graph::{intersection_table_disagreements, ChainGraph, ForestSpec};
use crate::complex::{f_vector_bruteforce, f_vector_exact, f_vector_paper, ssc};
use crate::edgeset::{is_antichain, EdgeSet};
use crate::error::Result;
use crate::hilbert::{hilbert_function_oracle_values, hilbert_series, OracleCaps};
use crate::ideal::{
    cohen_macaulay_verdict, covers_lemma41, facet_ideal, intersect_primes,
    minimal_vertex_covers_oracle, VariablePrime, Verdict,
};
use crate::spanning::{
    count_trees_kirchhoff, enumerate_trees_characterized, enumerate_trees_oracle,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Characterized spanning trees equal the brute-force set.
    TreeSet,
    /// Tree count agrees with the Laplacian determinant.
    TreeCount,
    /// Inclusion-exclusion f-vector equals the face-enumeration f-vector.
    FVector,
    /// Hilbert series expansion equals the oracle Hilbert function.
    Hilbert,
    /// Oracle covers form an antichain of minimal covers.
    Covers,
    /// Intersection of the cover primes equals the facet ideal.
    Decomposition,
    /// Quasi-linear quotients certificate along the block ordering.
    Certificate,
    /// Closed-form f-vector (pairwise union estimates) against exact values.
    FVectorClosedForm,
    /// Tabulated pairwise cycle intersections against exact ones.
    IntersectionTable,
    /// Predicted cover list against the oracle covers.
    CoverFormula,
    /// Worked example for the 10-edge two-cycle graph against the oracle.
    PrintedExample,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::TreeSet,
        Check::TreeCount,
        Check::FVector,
        Check::Hilbert,
        Check::Covers,
        Check::Decomposition,
        Check::Certificate,
        Check::FVectorClosedForm,
        Check::IntersectionTable,
        Check::CoverFormula,
        Check::PrintedExample,
    ];

    /// Checks that compare printed formulas rather than code paths; a
    /// difference is reported as a note.
    pub fn is_formula_comparison(self) -> bool {
        matches!(
            self,
            Check::FVectorClosedForm
                | Check::IntersectionTable
                | Check::CoverFormula
                | Check::PrintedExample
        )
    }
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::TreeSet => "tree_set",
            Check::TreeCount => "tree_count",
            Check::FVector => "f_vector",
            Check::Hilbert => "hilbert",
            Check::Covers => "covers",
            Check::Decomposition => "decomposition",
            Check::Certificate => "certificate",
            Check::FVectorClosedForm => "f_vector_closed_form",
            Check::IntersectionTable => "intersection_table",
            Check::CoverFormula => "cover_formula",
            Check::PrintedExample => "printed_example",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Match,
    Mismatch,
    /// A printed formula or example differs from the oracle.
    Note,
    /// Not run (capacity caps, or not applicable to this instance).
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: Check,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub actual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_us: Option<u64>,
}

impl CheckOutcome {
    fn new(check: Check, status: CheckStatus) -> Self {
        CheckOutcome {
            check,
            status,
            detail: String::new(),
            expected: None,
            actual: None,
            witness: None,
            elapsed_us: None,
        }
    }

    fn matched(check: Check) -> Self {
        CheckOutcome::new(check, CheckStatus::Match)
    }

    fn differs(check: Check, expected: String, actual: String, witness: String) -> Self {
        let status = if check.is_formula_comparison() {
            CheckStatus::Note
        } else {
            CheckStatus::Mismatch
        };
        CheckOutcome {
            expected: Some(expected),
            actual: Some(actual),
            witness: Some(witness),
            ..CheckOutcome::new(check, status)
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDescriptor {
    pub r: usize,
    pub m: Vec<usize>,
    pub t: usize,
    pub n: usize,
}

impl fmt::Display for InstanceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.m.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "r={} m=[{}] t={} n={}",
            self.r,
            m.join(","),
            self.t,
            self.n
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub instance: InstanceDescriptor,
    pub checks: Vec<CheckOutcome>,
}

impl OracleReport {
    /// No check reported a mismatch. Notes and skips do not count.
    pub fn all_matched(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.status != CheckStatus::Mismatch)
    }

    pub fn outcome(&self, check: Check) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.check == check)
    }

    pub fn strip_timings(&mut self) {
        self.checks.iter_mut().for_each(|c| c.elapsed_us = None);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub instances: Vec<OracleReport>,
}

impl FamilyReport {
    pub fn all_matched(&self) -> bool {
        self.instances.iter().all(OracleReport::all_matched)
    }

    pub fn strip_timings(&mut self) {
        self.instances
            .iter_mut()
            .for_each(OracleReport::strip_timings);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub checks: Vec<Check>,
    pub caps: OracleCaps,
    pub hitting_set_nodes: u128,
    /// Highest degree compared by the Hilbert check.
    pub hilbert_degree: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            checks: Check::ALL.to_vec(),
            caps: OracleCaps::default(),
            hitting_set_nodes: super::HITTING_SET_NODE_CAP,
            hilbert_degree: 10,
        }
    }
}

/// Runs the selected checks on one instance, concurrently. Outcomes come
/// back in the order of `options.checks`.
pub fn verify_instance(g: &ChainGraph, options: &VerifyOptions) -> OracleReport {
    let checks = options
        .checks
        .par_iter()
        .map(|&check| {
            let started = Instant::now();
            let mut outcome = match run_check(g, check, options) {
                Ok(outcome) => outcome,
                Err(e) => CheckOutcome::new(check, CheckStatus::Skipped).with_detail(e.to_string()),
            };
            outcome.elapsed_us = Some(started.elapsed().as_micros() as u64);
            outcome
        })
        .collect();
    OracleReport {
        instance: InstanceDescriptor {
            r: g.r(),
            m: g.lengths().to_vec(),
            t: g.t(),
            n: g.n(),
        },
        checks,
    }
}

/// Every chain with `1 <= r <= rmax`, cycle lengths in `3..=mmax` and
/// `0..=tmax` pendant forest edges, in lexicographic `(r, m, t)` order.
pub fn family(rmax: usize, mmax: usize, tmax: usize) -> Vec<(Vec<usize>, usize)> {
    let mut out = Vec::new();
    for r in 1..=rmax {
        let mut lengths = vec![3; r];
        loop {
            for t in 0..=tmax {
                out.push((lengths.clone(), t));
            }
            // odometer over lengths
            let mut pos = r;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                if lengths[pos] < mmax {
                    lengths[pos] += 1;
                    lengths[pos + 1..].iter_mut().for_each(|x| *x = 3);
                    break;
                }
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX || mmax < 3 {
                break;
            }
        }
    }
    out
}

/// [`verify_instance`] over [`family`], fanned out across threads; graphs
/// exceeding edge capacity are left out.
pub fn verify_family(
    rmax: usize,
    mmax: usize,
    tmax: usize,
    options: &VerifyOptions,
) -> FamilyReport {
    let instances = family(rmax, mmax, tmax)
        .into_par_iter()
        .filter_map(|(lengths, t)| ChainGraph::new(&lengths, ForestSpec::Count(t)).ok())
        .map(|g| verify_instance(&g, options))
        .collect();
    FamilyReport { instances }
}

fn labels(g: &ChainGraph, s: EdgeSet) -> String {
    let l: Vec<String> = g.labels_of(s).iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", l.join(","))
}

fn list(g: &ChainGraph, sets: &[EdgeSet]) -> String {
    let l: Vec<String> = sets.iter().map(|&s| labels(g, s)).collect();
    format!("[{}]", l.join(","))
}

fn ints<T: ToString>(v: &[T]) -> String {
    let l: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", l.join(","))
}

/// First element of the symmetric difference of two sorted lists.
fn first_difference(a: &[EdgeSet], b: &[EdgeSet]) -> Option<EdgeSet> {
    let mut x = a.iter().filter(|s| b.binary_search(s).is_err());
    let mut y = b.iter().filter(|s| a.binary_search(s).is_err());
    match (x.next(), y.next()) {
        (Some(&p), Some(&q)) => Some(p.min(q)),
        (Some(&p), None) | (None, Some(&p)) => Some(p),
        (None, None) => None,
    }
}

fn run_check(g: &ChainGraph, check: Check, opt: &VerifyOptions) -> Result<CheckOutcome> {
    let caps = opt.caps;
    Ok(match check {
        Check::TreeSet => {
            let characterized = enumerate_trees_characterized(g).edge_sets();
            let oracle = enumerate_trees_oracle(g, caps.tree_candidates)?.edge_sets();
            match first_difference(&characterized, &oracle) {
                None => CheckOutcome::matched(check).with_detail(format!("{} trees", oracle.len())),
                Some(w) => CheckOutcome::differs(
                    check,
                    format!("{} oracle trees", oracle.len()),
                    format!("{} characterized trees", characterized.len()),
                    format!(
                        "{} ({})",
                        labels(g, w),
                        if oracle.binary_search(&w).is_ok() {
                            "missing"
                        } else {
                            "extra"
                        }
                    ),
                ),
            }
        }
        Check::TreeCount => {
            let det = count_trees_kirchhoff(g);
            let listed = enumerate_trees_characterized(g).len() as u128;
            if det == listed {
                CheckOutcome::matched(check).with_detail(format!("{det} trees"))
            } else {
                CheckOutcome::differs(check, det.to_string(), listed.to_string(), "count".into())
            }
        }
        Check::FVector => {
            let exact = f_vector_exact(g)?;
            let brute = f_vector_bruteforce(&ssc(g), caps.downset)?;
            match (0..exact.0.len().max(brute.0.len())).find(|&i| exact.get(i) != brute.get(i)) {
                None => CheckOutcome::matched(check).with_detail(ints(&exact.0)),
                Some(i) => CheckOutcome::differs(
                    check,
                    ints(&brute.0),
                    ints(&exact.0),
                    format!("index {i}"),
                ),
            }
        }
        Check::Hilbert => {
            let series = hilbert_series(&f_vector_exact(g)?);
            let expansion = series.expand(opt.hilbert_degree);
            let oracle = hilbert_function_oracle_values(g, opt.hilbert_degree, caps)?;
            match (0..expansion.len()).find(|&j| expansion[j] != oracle[j]) {
                None => CheckOutcome::matched(check).with_detail(ints(&expansion)),
                Some(j) => CheckOutcome::differs(
                    check,
                    ints(&oracle),
                    ints(&expansion),
                    format!("degree {j}"),
                ),
            }
        }
        Check::Covers => {
            let complex = ssc(g);
            let covers = minimal_vertex_covers_oracle(&complex, opt.hitting_set_nodes)?;
            let hits = |c: EdgeSet| complex.facets().iter().all(|f| f.intersects(c));
            let bad = covers
                .iter()
                .find(|&&c| !hits(c) || c.iter().any(|v| hits(c.without(v))));
            match (bad, is_antichain(&covers)) {
                (None, true) => CheckOutcome::matched(check)
                    .with_detail(format!("{} minimal covers", covers.len())),
                (Some(&c), _) => CheckOutcome::differs(
                    check,
                    "minimal cover".into(),
                    "non-minimal or non-covering set".into(),
                    labels(g, c),
                ),
                (None, false) => CheckOutcome::differs(
                    check,
                    "antichain".into(),
                    "nested covers".into(),
                    list(g, &covers),
                ),
            }
        }
        Check::Decomposition => {
            let complex = ssc(g);
            let covers = minimal_vertex_covers_oracle(&complex, opt.hitting_set_nodes)?;
            let primes: Vec<VariablePrime> =
                covers.iter().map(|&vars| VariablePrime { vars }).collect();
            let product = intersect_primes(&primes, g.n())?;
            let facets = facet_ideal(&complex);
            match first_difference(product.generators(), facets.generators()) {
                None => {
                    CheckOutcome::matched(check).with_detail(format!("{} primes", primes.len()))
                }
                Some(w) => CheckOutcome::differs(
                    check,
                    format!("{} facet generators", facets.generators().len()),
                    format!("{} intersection generators", product.generators().len()),
                    labels(g, w),
                ),
            }
        }
        Check::Certificate => {
            let (ideal, verdict) = cohen_macaulay_verdict(g);
            match verdict {
                Verdict::CohenMacaulay(cert) if cert.replay(&ideal) => CheckOutcome::matched(check)
                    .with_detail(format!("{} steps", cert.ordering.len())),
                Verdict::CohenMacaulay(_) => CheckOutcome::differs(
                    check,
                    "replayable certificate".into(),
                    "replay failed".into(),
                    String::new(),
                ),
                Verdict::Inconclusive { reason } => CheckOutcome::differs(
                    check,
                    "certificate".into(),
                    "inconclusive".into(),
                    reason,
                ),
            }
        }
        Check::FVectorClosedForm => {
            let paper = f_vector_paper(g)?;
            let two_cycle = paper
                .two_cycle
                .as_ref()
                .map(|v| format!("; two-cycle form {}", ints(v)))
                .unwrap_or_default();
            if paper.agrees() {
                CheckOutcome::matched(check)
                    .with_detail(format!("{}{two_cycle}", ints(&paper.values)))
            } else {
                CheckOutcome::differs(
                    check,
                    ints(&paper.exact.0),
                    format!("{}{two_cycle}", ints(&paper.values)),
                    format!("indices {}", ints(&paper.mismatches)),
                )
            }
        }
        Check::IntersectionTable => {
            let bad = intersection_table_disagreements(g);
            match bad.first() {
                None => CheckOutcome::matched(check),
                Some(d) => CheckOutcome::differs(
                    check,
                    d.exact.to_string(),
                    d.predicted.to_string(),
                    format!(
                        "{} vs {} ({:?}); {} pairs differ",
                        d.first,
                        d.second,
                        d.case,
                        bad.len()
                    ),
                ),
            }
        }
        Check::CoverFormula => {
            let oracle = minimal_vertex_covers_oracle(&ssc(g), opt.hitting_set_nodes)?;
            let lemma = covers_lemma41(g);
            cover_comparison(g, check, &oracle, &lemma)
        }
        Check::PrintedExample => printed_example(g, opt)?,
    })
}

fn cover_comparison(
    g: &ChainGraph,
    check: Check,
    oracle: &[EdgeSet],
    listed: &[EdgeSet],
) -> CheckOutcome {
    let missing: Vec<EdgeSet> = oracle
        .iter()
        .copied()
        .filter(|c| !listed.contains(c))
        .collect();
    let extra: Vec<EdgeSet> = listed
        .iter()
        .copied()
        .filter(|c| !oracle.contains(c))
        .collect();
    if missing.is_empty() && extra.is_empty() {
        return CheckOutcome::matched(check).with_detail(format!("{} covers", oracle.len()));
    }
    CheckOutcome::differs(
        check,
        format!("{} oracle covers", oracle.len()),
        format!("{} listed covers", listed.len()),
        format!("missing {}; extra {}", list(g, &missing), list(g, &extra)),
    )
}

/// Tree list and cover list printed for the 10-edge graph with cycles of
/// lengths 3 and 4 and four forest edges.
const PRINTED_TREES: [[&str; 8]; 13] = [
    [
        "e_1", "e_2", "e_3", "e_4", "e_{1,3}", "e_{1,1}", "e_{2,3}", "e_{2,1}",
    ],
    [
        "e_1", "e_2", "e_3", "e_4", "e_{1,3}", "e_{1,1}", "e_{2,3}", "e_{2,2}",
    ],
    [
        "e_1", "e_2", "e_3", "e_4", "e_{1,3}", "e_{1,1}", "e_{2,1}", "e_{2,2}",
    ],
    [
        "e_1", "e_2", "e_3", "e_4", "e_{1,3}", "e_{2,3}", "e_{2,1}", "e_{2,2}",
    ],
    [
        "e_1", "e_2", "e_3", "e_4", "e_{1,2}", "e_{1,1}", "e_{2,3}", "e_{2,1}",
    ],
    [
        "e_1", "e_2", "e_3", "e_4", "e_{1,2}", "e_{1,1}", "e_{2,3}", "e_{2,2}",
    ],
    [
        "e_1", "e_2", "e_3", "e_4", "e_{1,2}", "e_{1,1}", "e_{2,1}", "e_{2,2}",
    ],
    [
        "e_1", "e_2", "e_3", "e_4", "e_{1,2}", "e_{2,3}", "e_{2,1}", "e_{2,2}",
    ],
    [
        "e_1", "e_2", "e_3", "e_4", "e_{1,3}", "e_{1,2}", "e_{2,3}", "e_{2,2}",
    ],
    [
        "e_1", "e_2", "e_3", "e_4", "e_{1,3}", "e_{1,2}", "e_{2,3}", "e_{2,1}",
    ],
    [
        "e_1", "e_2", "e_3", "e_4", "e_{1,3}", "e_{1,2}", "e_{2,1}", "e_{2,2}",
    ],
    [
        "e_1", "e_2", "e_3", "e_4", "e_{1,3}", "e_{2,3}", "e_{2,1}", "e_{2,2}",
    ],
    [
        "e_1", "e_2", "e_3", "e_4", "e_{1,2}", "e_{2,3}", "e_{2,1}", "e_{2,2}",
    ],
];

const PRINTED_COVERS: [&[&str]; 6] = [
    &["e_1"],
    &["e_2"],
    &["e_3"],
    &["e_4"],
    &["e_{1,3}", "e_{1,2}"],
    &["e_{2,3}", "e_{2,2}"],
];

fn parse_set(g: &ChainGraph, labels: &[&str]) -> EdgeSet {
    labels
        .iter()
        .map(|l| {
            g.index_of(l.parse().expect("valid label"))
                .expect("label in graph")
        })
        .collect()
}

pub(crate) fn printed_trees(g: &ChainGraph) -> Vec<EdgeSet> {
    PRINTED_TREES.iter().map(|t| parse_set(g, t)).collect()
}

pub(crate) fn printed_covers(g: &ChainGraph) -> Vec<EdgeSet> {
    PRINTED_COVERS.iter().map(|c| parse_set(g, c)).collect()
}

fn is_printed_example(g: &ChainGraph) -> bool {
    g.lengths() == [3, 4] && g.t() == 4
}

fn printed_example(g: &ChainGraph, opt: &VerifyOptions) -> Result<CheckOutcome> {
    let check = Check::PrintedExample;
    if !is_printed_example(g) {
        return Ok(CheckOutcome::new(check, CheckStatus::Skipped)
            .with_detail("only defined for r=2 m=[3,4] t=4"));
    }
    let trees = printed_trees(g);
    let mut distinct = trees.clone();
    distinct.sort();
    distinct.dedup();
    let oracle_trees = enumerate_trees_oracle(g, opt.caps.tree_candidates)?.edge_sets();
    let oracle_covers = minimal_vertex_covers_oracle(&ssc(g), opt.hitting_set_nodes)?;
    let covers = printed_covers(g);

    let mut notes = Vec::new();
    if trees.len() != distinct.len() {
        notes.push(format!(
            "printed tree list has {} entries, {} distinct",
            trees.len(),
            distinct.len()
        ));
    }
    if let Some(w) = first_difference(&distinct, &oracle_trees) {
        notes.push(format!(
            "printed trees differ from oracle at {}",
            labels(g, w)
        ));
    }
    let mut sorted_covers = covers.clone();
    sorted_covers.sort();
    let cover_note = cover_comparison(g, check, &oracle_covers, &sorted_covers);
    if cover_note.status != CheckStatus::Match {
        notes.push(format!(
            "printed cover list has {} of {} minimal covers; {}",
            covers.len(),
            oracle_covers.len(),
            cover_note.witness.unwrap_or_default()
        ));
    }
    if notes.is_empty() {
        return Ok(CheckOutcome::matched(check));
    }
    Ok(CheckOutcome::differs(
        check,
        format!(
            "{} trees, {} covers",
            oracle_trees.len(),
            oracle_covers.len()
        ),
        format!(
            "{} trees listed ({} distinct), {} covers listed",
            trees.len(),
            distinct.len(),
            covers.len()
        ),
        notes.join("; "),
    ))
}

/// Expansion of the Hilbert series next to the oracle values, for reports.
pub fn hilbert_pair(
    g: &ChainGraph,
    degree: usize,
    caps: OracleCaps,
) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let series = hilbert_series(&f_vector_exact(g)?);
    Ok((
        series.expand(degree),
        hilbert_function_oracle_values(g, degree, caps)?,
    ))
}
