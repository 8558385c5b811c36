mod input;
mod render;

use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

use chain_ssc::complex::{f_vector_bruteforce, f_vector_paper};
use chain_ssc::hilbert::OracleCaps;
use chain_ssc::ideal::{
    covers_lemma41, facet_ideal, intersect_primes, minimal_vertex_covers_oracle, VariablePrime,
};
use chain_ssc::oracle::{self, verify_family, verify_instance, Check, VerifyOptions};
use chain_ssc::spanning::enumerate_trees_characterized;
use chain_ssc::{
    cohen_macaulay_verdict, f_vector_exact, hilbert_series, ssc, ChainGraph, EdgeSet, Error,
    Verdict,
};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use input::{GraphArgs, InputError};

#[derive(Parser, Debug)]
#[command(
    name = "chain-ssc",
    version,
    about = "Spanning simplicial complexes of chains of cycles"
)]
struct Cli {
    #[command(flatten)]
    graph: GraphArgs,

    /// Print a human-readable table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Cap on edge subsets tried by the brute-force tree search.
    #[arg(long, global = true, default_value_t = oracle::TREE_CANDIDATE_CAP)]
    tree_cap: u128,

    /// Cap on subsets visited by face enumeration.
    #[arg(long, global = true, default_value_t = oracle::DOWNSET_CAP)]
    downset_cap: u128,

    /// Cap on search nodes in the minimal cover search.
    #[arg(long, global = true, default_value_t = oracle::HITTING_SET_NODE_CAP)]
    cover_cap: u128,

    /// Cap on monomials listed by the Hilbert function oracle.
    #[arg(long, global = true, default_value_t = oracle::MONOMIAL_CAP)]
    monomial_cap: u128,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Echo the normalized graph with its edge labels.
    Gen,
    /// List all simple and composite cycles.
    Cycles,
    /// Spanning trees from the removal characterization.
    Trees {
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        by_class: bool,
    },
    /// f-vector of the spanning simplicial complex.
    Fvector {
        #[arg(long, value_enum, default_value_t = FMethod::Exact)]
        method: FMethod,
    },
    /// Hilbert series of the face ring.
    Hilbert {
        /// Number of expansion terms after the constant one.
        #[arg(long, default_value_t = 10)]
        expand: usize,
    },
    /// Minimal vertex covers of the facet family.
    Covers {
        #[arg(long, value_enum, default_value_t = CoverMethod::Oracle)]
        method: CoverMethod,
    },
    /// Primary decomposition of the facet ideal.
    Decompose,
    /// Quasi-linear quotients certificate for the facet ideal.
    Certify,
    /// Cross-check formulas against brute force.
    Verify {
        /// Run over a family `rmax,mmax,tmax` instead of one graph.
        #[arg(long, value_parser = parse_family)]
        family: Option<(usize, usize, usize)>,
        /// Checks to run, comma separated; all by default.
        #[arg(long, value_delimiter = ',', value_parser = Check::from_str)]
        checks: Option<Vec<Check>>,
        /// Keep per-check timings in the report.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FMethod {
    Exact,
    Paper,
    Brute,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CoverMethod {
    Lemma,
    Oracle,
}

fn parse_family(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [r, m, t] => Ok((r, m, t)),
        _ => Err("expected rmax,mmax,tmax".into()),
    }
}

enum Failure {
    Validation(String),
    Capacity(String),
    Certificate(Value),
    Mismatch(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapacityExceeded { .. } | Error::SearchSpaceTooLarge { .. } => {
                Failure::Capacity(e.to_string())
            }
            _ => Failure::Validation(e.to_string()),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Graph(e) => e.into(),
            e => Failure::Validation(e.to_string()),
        }
    }
}

pub(crate) fn labels(g: &ChainGraph, s: EdgeSet) -> Value {
    Value::from(
        g.labels_of(s)
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>(),
    )
}

fn label_sets(g: &ChainGraph, sets: &[EdgeSet]) -> Value {
    Value::from(sets.iter().map(|&s| labels(g, s)).collect::<Vec<_>>())
}

pub(crate) fn big(x: &BigInt) -> Value {
    serde_json::Number::from_str(&x.to_string())
        .map(Value::Number)
        .unwrap_or_else(|_| Value::String(x.to_string()))
}

fn bigs(xs: &[BigInt]) -> Value {
    Value::from(xs.iter().map(big).collect::<Vec<_>>())
}

fn caps(cli: &Cli) -> OracleCaps {
    OracleCaps {
        tree_candidates: cli.tree_cap,
        downset: cli.downset_cap,
        monomials: cli.monomial_cap,
    }
}

fn gen(g: &ChainGraph) -> Value {
    let v0 = g.vertex_count() - g.t();
    let forest = g.forest_edges();
    let attach: Vec<usize> = forest
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let (a, b) = g.endpoints(e);
            if b == v0 + k {
                a
            } else {
                b
            }
        })
        .collect();
    let edges: Vec<Value> = (0..g.n())
        .map(|e| {
            let (a, b) = g.endpoints(e);
            json!({"label": g.label(e).to_string(), "endpoints": [a, b]})
        })
        .collect();
    json!({
        "r": g.r(),
        "m": g.lengths(),
        "forest": {"attach": attach},
        "n": g.n(),
        "vertices": g.vertex_count(),
        "edges": edges,
    })
}

fn cycles(g: &ChainGraph) -> Value {
    let cycles: Vec<Value> = g
        .all_cycles()
        .iter()
        .map(|c| {
            json!({
                "name": c.name(),
                "start": c.start,
                "span": c.span,
                "length": c.len(),
                "edges": labels(g, c.edges),
            })
        })
        .collect();
    json!({"count": cycles.len(), "cycles": cycles})
}

fn trees(g: &ChainGraph, count_only: bool, by_class: bool) -> Value {
    let set = enumerate_trees_characterized(g);
    let mut out = json!({"count": set.len()});
    if by_class {
        let counts: serde_json::Map<String, Value> = set
            .by_class()
            .into_iter()
            .map(|(c, k)| (c.to_string(), Value::from(k)))
            .collect();
        out["by_class"] = Value::Object(counts);
    }
    if !count_only {
        out["trees"] = set
            .trees
            .iter()
            .map(|t| {
                let removed = g.ground() - t.edges;
                json!({
                    "edges": labels(g, t.edges),
                    "removed": labels(g, removed),
                    "class": t.class.map(|c| c.to_string()),
                })
            })
            .collect();
    }
    out
}

fn fvector(cli: &Cli, g: &ChainGraph, method: FMethod) -> Result<Value, Failure> {
    Ok(match method {
        FMethod::Exact => {
            let f = f_vector_exact(g)?;
            json!({"method": "exact", "dimension": f.dimension(), "f_vector": f.0})
        }
        FMethod::Brute => {
            let f = f_vector_bruteforce(&ssc(g), cli.downset_cap)?;
            json!({"method": "brute", "dimension": f.dimension(), "f_vector": f.0})
        }
        FMethod::Paper => {
            let p = f_vector_paper(g)?;
            let mut out = json!({
                "method": "paper",
                "f_vector": bigs(&p.values),
                "exact": p.exact.0,
                "agrees": p.agrees(),
                "mismatches": p.mismatches,
            });
            if let Some(two) = &p.two_cycle {
                out["two_cycle"] = bigs(two);
            }
            if !p.agrees() {
                eprintln!("note: closed form differs from the exact f-vector");
            }
            out
        }
    })
}

fn hilbert(g: &ChainGraph, expand: usize) -> Result<Value, Failure> {
    let series = hilbert_series(&f_vector_exact(g)?);
    Ok(json!({
        "numerator": bigs(series.numerator.coefficients()),
        "denom_power": series.denom_power,
        "expansion": bigs(&series.expand(expand)),
    }))
}

fn covers(cli: &Cli, g: &ChainGraph, method: CoverMethod) -> Result<Value, Failure> {
    let (name, covers) = match method {
        CoverMethod::Lemma => ("lemma", covers_lemma41(g)),
        CoverMethod::Oracle => (
            "oracle",
            minimal_vertex_covers_oracle(&ssc(g), cli.cover_cap)?,
        ),
    };
    Ok(json!({"method": name, "count": covers.len(), "covers": label_sets(g, &covers)}))
}

fn decompose(cli: &Cli, g: &ChainGraph) -> Result<Value, Failure> {
    let complex = ssc(g);
    let covers = minimal_vertex_covers_oracle(&complex, cli.cover_cap)?;
    let primes: Vec<VariablePrime> = covers.iter().map(|&vars| VariablePrime { vars }).collect();
    let intersection = intersect_primes(&primes, g.n())?;
    let ideal = facet_ideal(&complex);
    let equal = intersection == ideal;
    let out = json!({
        "primes": label_sets(g, &covers),
        "facet_ideal": label_sets(g, ideal.generators()),
        "intersection_equals_facet_ideal": equal,
    });
    if equal {
        Ok(out)
    } else {
        Err(Failure::Mismatch(out))
    }
}

fn certify(g: &ChainGraph) -> Result<Value, Failure> {
    let (ideal, verdict) = cohen_macaulay_verdict(g);
    match verdict {
        Verdict::CohenMacaulay(cert) => {
            let gens = ideal.generators();
            let ordering: Vec<Value> = cert.ordering.iter().map(|&i| labels(g, gens[i])).collect();
            let witnesses: Vec<String> = cert
                .witnesses
                .iter()
                .map(|&v| g.label(v).to_string())
                .collect();
            Ok(json!({
                "verdict": "cohen_macaulay",
                "replayed": cert.replay(&ideal),
                "ordering": ordering,
                "witnesses": witnesses,
            }))
        }
        Verdict::Inconclusive { reason } => Err(Failure::Certificate(json!({
            "verdict": "inconclusive",
            "reason": reason,
        }))),
    }
}

fn verify(
    cli: &Cli,
    family: Option<(usize, usize, usize)>,
    checks: Option<Vec<Check>>,
    timings: bool,
) -> Result<Value, Failure> {
    let options = VerifyOptions {
        checks: checks.unwrap_or_else(|| Check::ALL.to_vec()),
        caps: caps(cli),
        hitting_set_nodes: cli.cover_cap,
        ..VerifyOptions::default()
    };
    let (value, matched) = match family {
        Some((rmax, mmax, tmax)) => {
            let mut report = verify_family(rmax, mmax, tmax, &options);
            if !timings {
                report.strip_timings();
            }
            let matched = report.all_matched();
            let count = |status| {
                report
                    .instances
                    .iter()
                    .flat_map(|r| &r.checks)
                    .filter(|c| c.status == status)
                    .count()
            };
            let summary = json!({
                "instances": report.instances.len(),
                "all_matched": matched,
                "mismatches": count(oracle::CheckStatus::Mismatch),
                "notes": count(oracle::CheckStatus::Note),
                "skipped": count(oracle::CheckStatus::Skipped),
            });
            let mut value = serde_json::to_value(&report).expect("serializable report");
            value["summary"] = summary;
            (value, matched)
        }
        None => {
            let g = cli.graph.graph()?;
            let mut report = verify_instance(&g, &options);
            if !timings {
                report.strip_timings();
            }
            let mut value = serde_json::to_value(&report).expect("serializable report");
            value["all_matched"] = Value::from(report.all_matched());
            (value, report.all_matched())
        }
    };
    if matched {
        Ok(value)
    } else {
        Err(Failure::Mismatch(value))
    }
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    if let Command::Verify {
        family,
        checks,
        timings,
    } = &cli.command
    {
        return verify(cli, *family, checks.clone(), *timings);
    }
    let g = cli.graph.graph()?;
    match &cli.command {
        Command::Gen => Ok(gen(&g)),
        Command::Cycles => Ok(cycles(&g)),
        Command::Trees {
            count_only,
            by_class,
        } => Ok(trees(&g, *count_only, *by_class)),
        Command::Fvector { method } => fvector(cli, &g, *method),
        Command::Hilbert { expand } => hilbert(&g, *expand),
        Command::Covers { method } => covers(cli, &g, *method),
        Command::Decompose => decompose(cli, &g),
        Command::Certify => certify(&g),
        Command::Verify { .. } => unreachable!(),
    }
}

fn emit(cli: &Cli, value: &Value) {
    let text = if cli.pretty {
        render::table(value)
    } else {
        serde_json::to_string(value).expect("serializable output") + "\n"
    };
    // a closed pipe downstream is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            emit(&cli, &value);
            ExitCode::SUCCESS
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Capacity(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Certificate(value)) => {
            emit(&cli, &value);
            eprintln!("error: ordering did not certify quasi-linear quotients");
            ExitCode::from(4)
        }
        Err(Failure::Mismatch(value)) => {
            emit(&cli, &value);
            eprintln!("error: oracle mismatch");
            ExitCode::from(5)
        }
    }
}
