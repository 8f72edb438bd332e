//! The `hyperpack` command line.
//!
//! Exit codes: 0 when the verdict holds (or a document was produced), 1 when
//! it fails, 2 on unusable input, 3 when a search cap is exceeded.

mod document;
mod report;

pub use document::{
    AssignmentDocument, CertificateDocument, DecompositionDocument, EdgeDocument, FamilyDocument, Instance,
    InstanceDocument,
};
pub use report::{partition_json, Caps, Report};

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::assignment::{flatten, star_centers, LabelledMultigraph, TreeAssignment};
use crate::certificate::{certified_uniqueness, certified_wpc, verify_certificate, VerifyMode};
use crate::decomposition::{
    enumerate_decompositions, fibers, has_k_distinguishable_assignment, is_k_distinguishable_graph, signature,
    AssignmentSearch, KTreeDecomposition,
};
use crate::error::Error;
use crate::families;
use crate::hypergraph::{is_k_critical, is_k_wpc, total_excess, weak_partition_excess, Hypergraph};
use crate::limits::Limits;
use crate::partition::{enumerate_partitions_capped, Partition};
use crate::slack::{assignment_slack, finite_system_check, slack_identity_check, star_lambda_closed_form};
use crate::support::{
    check_weight_conditions, full_rowset_size, monomial_exponents, support_hypergraph, weight_partition_identity,
    COEFFICIENT_LIMITATION,
};
use report::signature_json;

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Exact checks for tree packings in hypergraphs
#[derive(Debug, Parser)]
#[command(name = "hyperpack", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub caps: CapArgs,

    /// Add wall-clock time to reports (makes output run-dependent)
    #[arg(long, global = true)]
    pub timing: bool,

    /// Write output to this file instead of stdout
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CapArgs {
    /// Largest vertex count for partition loops
    #[arg(long, global = true, default_value_t = Limits::default().max_t)]
    pub max_t: usize,
    /// Largest labelled-edge count for decomposition searches
    #[arg(long, global = true, default_value_t = Limits::default().max_edges)]
    pub max_edges: usize,
    /// Largest k for decomposition searches
    #[arg(long, global = true, default_value_t = Limits::default().max_k)]
    pub max_k: usize,
    /// Largest hyperedge size for tree enumeration
    #[arg(long, global = true, default_value_t = Limits::default().max_support)]
    pub max_support: usize,
    /// Largest family size for subset scans
    #[arg(long, global = true, default_value_t = Limits::default().max_subset_t)]
    pub max_subset_t: usize,
}

impl CapArgs {
    pub fn limits(&self) -> Limits {
        Limits {
            max_t: self.max_t,
            max_support: self.max_support,
            max_edges: self.max_edges,
            max_k: self.max_k,
            max_subset_t: self.max_subset_t,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test k-weak-partition-connectivity over all partitions
    CheckWpc {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Test rho(H) = k(t-1)
    CheckCritical {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Look for a decomposition alone in its signature fiber
    CheckDistinguishable {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// Search every tree assignment instead of the document's
        #[arg(long)]
        full_search: bool,
    },
    /// Verify the document's two-sided star certificate
    VerifyCertificate {
        file: PathBuf,
        /// Accept non-star trees in interior layers
        #[arg(long)]
        relaxed: bool,
    },
    /// List all ordered k-tree decompositions of the assigned multigraph
    EnumerateDecompositions {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// Group decompositions by signature
        #[arg(long)]
        fibers: bool,
    },
    /// Slack terms and the slack identity at one or all partitions
    SlackReport {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// A restricted-growth string such as 011, or `all`
        #[arg(long)]
        partition: String,
    },
    /// Generate an instance document
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Glue two instances at one vertex
    Sum {
        file1: PathBuf,
        file2: PathBuf,
        /// Glue point as `vertex1=vertex2`
        #[arg(long)]
        at: String,
        /// Append this suffix to every name of the second instance except the glue vertex
        #[arg(long)]
        rename_suffix: Option<String>,
    },
    /// Weight calculus of an index family's support hypergraph
    Support {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenFamily {
    /// k+q copies of the full edge on t vertices
    Bundle { t: usize, k: usize, q: usize },
    /// m parallel edges on two vertices
    Lines { m: usize },
    /// Stars in the outer layers and spanning trees of rank-two edges inside
    SaturatedBlock {
        t: usize,
        k: usize,
        /// Center (vertex index) of the layer-0 star
        #[arg(long, default_value_t = 0)]
        minus: usize,
        /// Center (vertex index) of the last-layer star
        #[arg(long, default_value_t = 0)]
        plus: usize,
        /// One interior tree as `u-v,u-v,...`; repeat k-2 times
        #[arg(long)]
        middle: Vec<String>,
    },
    /// The three-label block with one hyperedge and two lines
    Nongraphic,
    /// Two triples on four vertices
    PruningExample,
}

enum Failure {
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_limit() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

enum Output {
    Report(Report),
    Document(Value),
}

/// Run a parsed command line and return the process exit code.
pub fn run(cli: Cli) -> i32 {
    let start = Instant::now();
    let limits = cli.caps.limits();
    let result = dispatch(&cli.command, &limits);
    let (text, code) = match result {
        Ok(Output::Report(mut report)) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            let code = if report.verdict { EXIT_TRUE } else { EXIT_FALSE };
            (to_text(&report), code)
        }
        Ok(Output::Document(doc)) => (to_text(&doc), EXIT_TRUE),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_INPUT;
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_CAP;
        }
    };
    let written = match &cli.output {
        Some(path) => write_atomically(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return EXIT_INPUT;
    }
    code
}

fn to_text<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let doc: InstanceDocument = read_json(path)?;
    Ok(doc.resolve()?)
}

fn need<'a, T>(item: &'a Option<T>, what: &str) -> Result<&'a T, Failure> {
    item.as_ref()
        .ok_or_else(|| Failure::Input(format!("the document has no {what}")))
}

fn positive(k: usize) -> Result<(), Failure> {
    if k == 0 {
        Err(Failure::Input("k must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn dispatch(command: &Command, limits: &Limits) -> Result<Output, Failure> {
    match command {
        Command::CheckWpc { file, k } => check_wpc(&load(file)?, *k, limits),
        Command::CheckCritical { file, k } => {
            positive(*k)?;
            let h = load(file)?.hypergraph;
            let rho = total_excess(&h);
            let budget = k * (h.t() - 1);
            Ok(Output::Report(Report::new(
                "check-critical",
                limits,
                json!({ "k": k, "t": h.t() }),
                is_k_critical(&h, *k),
                json!({ "rho": rho, "budget": budget }),
            )))
        }
        Command::CheckDistinguishable { file, k, full_search } => {
            check_distinguishable(&load(file)?, *k, *full_search, limits)
        }
        Command::VerifyCertificate { file, relaxed } => verify(&load(file)?, *relaxed, limits),
        Command::EnumerateDecompositions { file, k, fibers } => enumerate(&load(file)?, *k, *fibers, limits),
        Command::SlackReport { file, k, partition } => slack_report(&load(file)?, *k, partition, limits),
        Command::Gen { family } => generate(family),
        Command::Sum {
            file1,
            file2,
            at,
            rename_suffix,
        } => sum(file1, file2, at, rename_suffix.as_deref()),
        Command::Support { file, k } => support(file, *k, limits),
    }
}

fn check_wpc(inst: &Instance, k: usize, limits: &Limits) -> Result<Output, Failure> {
    positive(k)?;
    let h = &inst.hypergraph;
    let verdict = is_k_wpc(h, k, limits)?;
    let witness = match &verdict.witness {
        Some(p) => json!({
            "partition": partition_json(p, h.vertices()),
            "excess": weak_partition_excess(h, p)?,
            "required": k * (p.num_blocks() - 1),
        }),
        None => Value::Null,
    };
    Ok(Output::Report(Report::new(
        "check-wpc",
        limits,
        json!({ "k": k, "t": h.t() }),
        verdict.holds,
        json!({ "violation": witness, "partitions_checked": verdict.partitions_checked }),
    )))
}

fn decomposition_json(a: &TreeAssignment, d: &KTreeDecomposition) -> Result<Value, Failure> {
    let g = flatten(a)?;
    Ok(json!({
        "layers": document::layer_map_document(&g, d),
        "signature": signature_json(&signature(a, d)?),
    }))
}

fn check_distinguishable(inst: &Instance, k: usize, full_search: bool, limits: &Limits) -> Result<Output, Failure> {
    positive(k)?;
    let h = &inst.hypergraph;
    let params = json!({ "k": k, "t": h.t(), "full_search": full_search || inst.assignment.is_none() });
    if !is_k_critical(h, k) {
        let report = Report::new(
            "check-distinguishable",
            limits,
            params,
            false,
            json!({
                "obstruction": "rho != k(t-1)",
                "rho": total_excess(h),
                "budget": k * (h.t() - 1),
            }),
        );
        return Ok(Output::Report(report));
    }
    let report = match (&inst.assignment, full_search) {
        (Some(a), false) => {
            let r = is_k_distinguishable_graph(a, k, limits)?;
            let witness = match &r.witness {
                Some(d) => decomposition_json(a, d)?,
                None => Value::Null,
            };
            Report::new(
                "check-distinguishable",
                limits,
                params,
                r.distinguishable,
                json!({ "decomposition": witness, "decompositions": r.decompositions, "fibers": r.fibers }),
            )
        }
        _ => match has_k_distinguishable_assignment(h, k, limits)? {
            AssignmentSearch::Found {
                assignment,
                decomposition,
                assignments_tried,
            } => {
                let doc = InstanceDocument::from_hypergraph(h)
                    .with_assignment(&assignment)
                    .with_decomposition(&assignment, &decomposition)?;
                Report::new(
                    "check-distinguishable",
                    limits,
                    params,
                    true,
                    json!({
                        "instance": doc,
                        "signature": signature_json(&signature(&assignment, &decomposition)?),
                        "assignments_tried": assignments_tried,
                    }),
                )
            }
            AssignmentSearch::NotFound { assignments_tried } => Report::new(
                "check-distinguishable",
                limits,
                params,
                false,
                json!({ "assignments_tried": assignments_tried }),
            ),
            AssignmentSearch::ExcessObstruction { .. } => unreachable!("criticality checked above"),
        },
    };
    Ok(Output::Report(report))
}

fn verify(inst: &Instance, relaxed: bool, limits: &Limits) -> Result<Output, Failure> {
    let c = need(&inst.certificate, "certificate")?;
    let mode = if relaxed { VerifyMode::Relaxed } else { VerifyMode::Strict };
    let params = json!({ "k": c.k(), "t": inst.hypergraph.t(), "mode": if relaxed { "relaxed" } else { "strict" } });
    if let Err(diagnostic) = verify_certificate(c, mode) {
        return Ok(Output::Report(Report::new(
            "verify-certificate",
            limits,
            params,
            false,
            json!({ "diagnostic": diagnostic.to_string() }),
        )));
    }
    let uniqueness = certified_uniqueness(c, limits)?;
    let mut witnesses = json!({
        "signature": signature_json(&uniqueness.signature),
        "forced_by_signature": uniqueness.forced,
        "fiber_size": uniqueness.fiber_size,
    });
    if inst.hypergraph.t() <= limits.max_t {
        witnesses["wpc_by_layers"] = json!(certified_wpc(c, limits)?.holds);
    }
    Ok(Output::Report(Report::new(
        "verify-certificate",
        limits,
        params,
        true,
        witnesses,
    )))
}

fn enumerate(inst: &Instance, k: usize, grouped: bool, limits: &Limits) -> Result<Output, Failure> {
    positive(k)?;
    let a = need(&inst.assignment, "assignment")?;
    let g = flatten(a)?;
    let layer_maps = |ds: &[KTreeDecomposition], g: &LabelledMultigraph| -> Vec<Value> {
        ds.iter().map(|d| json!(document::layer_map_document(g, d))).collect()
    };
    let (total, witnesses) = if grouped {
        let report = fibers(a, k, limits)?;
        let list: Vec<Value> = report
            .fibers
            .iter()
            .map(|(sig, ds)| json!({ "signature": signature_json(sig), "size": ds.len(), "decompositions": layer_maps(ds, &g) }))
            .collect();
        let singletons = report.singletons().count();
        (report.total(), json!({ "total": report.total(), "singleton_fibers": singletons, "fibers": list }))
    } else {
        limits.check_decomposition(g.edges.len(), k)?;
        let all: Vec<KTreeDecomposition> = enumerate_decompositions(&g, k).collect();
        (all.len(), json!({ "total": all.len(), "decompositions": layer_maps(&all, &g) }))
    };
    Ok(Output::Report(Report::new(
        "enumerate-decompositions",
        limits,
        json!({ "k": k, "edges": g.edges.len(), "fibers": grouped }),
        total > 0,
        witnesses,
    )))
}

fn slack_report(inst: &Instance, k: usize, which: &str, limits: &Limits) -> Result<Output, Failure> {
    positive(k)?;
    let a = need(&inst.assignment, "assignment")?;
    let d = need(&inst.decomposition, "decomposition")?;
    if d.k() != k {
        return Err(Failure::Input(format!("the decomposition has {} layers, not {k}", d.k())));
    }
    let h = &inst.hypergraph;
    let partitions: Vec<Partition> = if which == "all" {
        enumerate_partitions_capped(h.t(), limits)?.collect()
    } else {
        let p = Partition::parse(which)?;
        if p.len() != h.t() {
            return Err(Error::PartitionMismatch {
                expected: h.t(),
                got: p.len(),
            }
            .into());
        }
        vec![p]
    };
    let centers = star_centers(a);
    let mut all_equal = true;
    let mut entries = Vec::new();
    for p in &partitions {
        let id = slack_identity_check(a, d, p)?;
        let per_label = assignment_slack(a, p)?.per_label;
        all_equal &= id.equal;
        let mut entry = json!({
            "partition": partition_json(p, h.vertices()),
            "excess": weak_partition_excess(h, p)?,
            "lhs": id.lhs,
            "rhs": id.rhs,
            "surplus": id.surplus,
            "lambda": id.lambda,
            "lambda_by_label": h.labels().zip(per_label).map(|(l, v)| (l.to_string(), v)).collect::<std::collections::BTreeMap<_, _>>(),
            "equal": id.equal,
        });
        if let Some(c) = &centers {
            if let Ok(closed) = star_lambda_closed_form(a, c, p) {
                all_equal &= closed == id.lambda;
                entry["lambda_star_closed_form"] = json!(closed);
            }
        }
        entries.push(entry);
    }
    let mut witnesses = json!({ "partitions": entries });
    if which == "all" {
        let fs = finite_system_check(a, d, k, limits)?;
        all_equal &= fs.wpc_agrees;
        witnesses["finite_system"] = json!({
            "holds": fs.holds,
            "wpc_agrees": fs.wpc_agrees,
            "violation": fs.violation.map(|v| json!({
                "partition": partition_json(&v.partition, h.vertices()),
                "lambda": v.lambda,
                "surplus": v.surplus,
            })),
        });
    }
    Ok(Output::Report(Report::new(
        "slack-report",
        limits,
        json!({ "k": k, "t": h.t(), "partition": which }),
        all_equal,
        witnesses,
    )))
}

fn parse_tree(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (u, v) = pair
                .split_once('-')
                .ok_or_else(|| Failure::Input(format!("tree edge `{pair}` is not of the form u-v")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Failure::Input(format!("bad vertex index `{s}` in `{pair}`")))
            };
            Ok((parse(u)?, parse(v)?))
        })
        .collect()
}

fn document_value(doc: &InstanceDocument) -> Value {
    serde_json::to_value(doc).expect("documents serialize")
}

fn generate(family: &GenFamily) -> Result<Output, Failure> {
    let doc = match family {
        GenFamily::Bundle { t, k, q } => InstanceDocument::from_hypergraph(&families::full_edge_bundle(*t, *k, *q)?),
        GenFamily::Lines { m } => InstanceDocument::from_hypergraph(&families::parallel_lines(*m)?),
        GenFamily::SaturatedBlock {
            t,
            k,
            minus,
            plus,
            middle,
        } => {
            let trees = middle.iter().map(|m| parse_tree(m)).collect::<Result<Vec<_>, _>>()?;
            let (_, c) = families::saturated_star_block(*t, *k, *minus, *plus, &trees)?;
            InstanceDocument::from_certificate(&c)?
        }
        GenFamily::Nongraphic => InstanceDocument::from_certificate(&families::nongraphic_triple_block().1)?,
        GenFamily::PruningExample => InstanceDocument::from_hypergraph(&families::subhypergraph_pruning_counterexample()),
    };
    Ok(Output::Document(document_value(&doc)))
}

fn sum(file1: &Path, file2: &Path, at: &str, suffix: Option<&str>) -> Result<Output, Failure> {
    let (v1, v2) = at
        .split_once('=')
        .ok_or_else(|| Failure::Input(format!("--at expects vertex1=vertex2, got `{at}`")))?;
    let left = load(file1)?;
    let mut right = load(file2)?;
    let r1 = left.hypergraph.vertex_id(v1)?;
    let r2 = right.hypergraph.vertex_id(v2)?;
    if let Some(s) = suffix {
        right = Instance {
            hypergraph: right.hypergraph.disjoint_copy(s, Some(r2)),
            assignment: right.assignment.map(|a| a.disjoint_copy(s, Some(r2))),
            decomposition: right.decomposition,
            certificate: right.certificate.map(|c| c.disjoint_copy(s, Some(r2))),
        };
    }
    let certificates = match (&left.certificate, &right.certificate) {
        (Some(c1), Some(c2)) => Some((c1, c2)),
        _ => None,
    };
    let glued = families::one_vertex_sum(&left.hypergraph, &right.hypergraph, r1, r2, certificates)?;
    let doc = match &glued.certificate {
        Some(c) => InstanceDocument::from_certificate(c)?,
        None => InstanceDocument::from_hypergraph(&glued.hypergraph),
    };
    Ok(Output::Document(document_value(&doc)))
}

fn support(file: &Path, k: usize, limits: &Limits) -> Result<Output, Failure> {
    positive(k)?;
    let doc: FamilyDocument = read_json(file)?;
    let f = doc.family()?;
    let s = support_hypergraph(&f);
    let h: &Hypergraph = &s.hypergraph;
    let rowset = full_rowset_size(&f, k);
    let conditions = check_weight_conditions(&f, k, limits)?;
    let member_names = |js: &[usize]| -> Vec<String> { js.iter().map(|j| (j + 1).to_string()).collect() };

    let mut witnesses = json!({
        "support_hypergraph": InstanceDocument::from_hypergraph(h),
        "dropped_coordinates": s.dropped,
        "rowset": {
            "rho": rowset.rho,
            "full_weight": rowset.full_weight,
            "budget": rowset.budget,
            "square": rowset.square,
        },
        "weight_conditions": {
            "holds": conditions.holds,
            "full_weight": conditions.full_weight,
            "violation": conditions.violation.as_deref().map(member_names),
        },
    });
    let mut notes = vec![COEFFICIENT_LIMITATION.to_string()];

    if h.t() <= limits.max_t {
        let mut checked = 0u64;
        let mut equal = true;
        for p in enumerate_partitions_capped(h.t(), limits)? {
            checked += 1;
            equal &= weight_partition_identity(&f, k, &p)?.equal;
        }
        witnesses["partition_identity"] = json!({ "partitions_checked": checked, "holds": equal });
    } else {
        notes.push(format!("partition identity skipped: t = {} exceeds max_t", h.t()));
    }

    let within_caps = rowset.square
        && rowset.rho <= limits.max_edges
        && k <= limits.max_k
        && h.edges().iter().all(|e| e.rank() <= limits.max_support);
    if within_caps {
        let a = crate::assignment::star_assignment(h, &crate::assignment::CenterMap::first_vertex(h))?;
        let g = flatten(&a)?;
        let mut count = 0usize;
        let mut agrees = true;
        for d in enumerate_decompositions(&g, k) {
            count += 1;
            agrees &= monomial_exponents(&a, &d)? == signature(&a, &d)?.0;
        }
        witnesses["monomial_grouping"] = json!({ "decompositions": count, "exponents_match_signatures": agrees });
    }

    let mut report = Report::new(
        "support",
        limits,
        json!({ "k": k, "n": f.n(), "t": f.t() }),
        conditions.holds,
        witnesses,
    );
    for n in notes {
        report = report.note(n);
    }
    Ok(Output::Report(report))
}
