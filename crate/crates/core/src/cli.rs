//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::format::{ice_to_text, parse_quiver, QuiverFile};
use crate::harness::{
    self, build_affine, descending_path_property, mutation_involution_property, reports_to_json,
    reports_to_table, HarnessConfig, Orientations, PropertyOutcome, VerificationReport,
};
use crate::mgs::{build_exchange_graph, default_depth_bound, enumerate_mgs, EnumerationConfig};
use crate::quiver::{framed, ClusterQuiver, IceQuiver, QuiverError, Vertex, VertexColor};
use crate::slice::{self, SliceVector};
use crate::type_a::{self, IntervalModule, TauRoute, TypeAQuiver};
use crate::Error;

#[derive(Debug, Parser)]
#[command(
    name = "greenseq",
    version,
    about = "Maximal green sequences and tilting combinatorics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Exchange,
    Hasse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    TypeA,
    Affine,
}

/// Enumeration settings shared by the search commands.
#[derive(Clone, Debug, Args)]
pub struct Config {
    /// Override the depth bound derived from the quiver's family.
    #[arg(long)]
    pub depth_bound: Option<usize>,
    /// Worker threads.
    #[arg(long, env = "GREENSEQ_THREADS", default_value_t = 1)]
    pub threads: usize,
    /// Disable isomorphism memoization.
    #[arg(long)]
    pub no_memo: bool,
    /// Allow the heaviest verification jobs.
    #[arg(long)]
    pub long_running: bool,
}

impl Config {
    fn validate(&self) -> Result<(), Error> {
        if self.threads == 0 {
            return Err(Error::Usage("--threads must be at least 1".into()));
        }
        Ok(())
    }

    fn enumeration(&self, q: &ClusterQuiver) -> Result<EnumerationConfig, Error> {
        self.validate()?;
        let bound = match self.depth_bound {
            Some(b) => b,
            None => default_depth_bound(q)?,
        };
        Ok(EnumerationConfig::new(bound)
            .memoize(!self.no_memo)
            .threads(self.threads))
    }

    fn harness(&self) -> Result<HarnessConfig, Error> {
        self.validate()?;
        Ok(HarnessConfig {
            threads: self.threads,
            memoize: !self.no_memo,
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mutate the framed quiver (or a given ice quiver) along a sequence of vertices.
    Mutate {
        file: PathBuf,
        /// Vertex labels, applied left to right.
        vertices: Vec<usize>,
        /// Refuse to mutate at a red vertex.
        #[arg(long)]
        green_only: bool,
    },
    /// Length spectrum of maximal green sequences.
    Spectrum {
        file: PathBuf,
        #[command(flatten)]
        config: Config,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Exit with status 1 when the enumeration was truncated.
        #[arg(long)]
        strict: bool,
    },
    /// Print every maximal green sequence, one per line.
    Enumerate {
        file: PathBuf,
        #[command(flatten)]
        config: Config,
        /// Stop printing after this many sequences.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Check that the length spectrum of A_n or Ã_(n,1) is the expected interval.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        n: usize,
        #[command(flatten)]
        config: Config,
        /// Orientations to check for type A (default: all).
        #[arg(long = "orientation")]
        orientations: Vec<String>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Export the oriented exchange graph or the support tilting Hasse quiver as DOT.
    Graph {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphKind::Exchange)]
        kind: GraphKind,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        depth_bound: Option<usize>,
    },
    /// Ext-compatibility of two interval modules, e.g. `compat ++ 0,2 1,3`.
    Compat {
        #[arg(allow_hyphen_values = true)]
        orientation: String,
        a: String,
        b: String,
    },
    /// Auslander-Reiten translate of an interval module, e.g. `tau + 0 1`.
    Tau {
        #[arg(allow_hyphen_values = true)]
        orientation: String,
        i: usize,
        j: usize,
    },
    /// Slice queries on an acyclic quiver.
    Slice {
        #[command(subcommand)]
        query: SliceQuery,
    },
    /// Seeded randomized property checks.
    Check {
        #[arg(long)]
        seed: u64,
        /// Cases per property.
        #[arg(long, default_value_t = 500)]
        cases: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum SliceQuery {
    /// Is the vector (JSON array) a slice?
    Check { file: PathBuf, vector: String },
    /// Sources of a slice.
    Sources { file: PathBuf, vector: String },
    /// Mutate a slice at a source (vertex label).
    Mutate {
        file: PathBuf,
        vector: String,
        vertex: usize,
    },
    /// Source mutations from one slice up to another.
    Path {
        file: PathBuf,
        from: String,
        to: String,
    },
}

fn read_file(path: &Path) -> Result<QuiverFile, Error> {
    let text = fs::read_to_string(path)?;
    Ok(parse_quiver(&text)?)
}

fn read_cluster(path: &Path) -> Result<ClusterQuiver, Error> {
    match read_file(path)? {
        QuiverFile::Cluster(q) => Ok(q),
        QuiverFile::Ice(_) => Err(Error::Usage(format!(
            "{} is an ice quiver; this command needs a cluster quiver",
            path.display()
        ))),
    }
}

fn index_of(q: &ClusterQuiver, label: usize) -> Result<Vertex, Error> {
    q.index_of(label)
        .ok_or_else(|| Error::Usage(format!("no vertex labeled {label}")))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output serializes")
}

fn colors_line(r: &IceQuiver) -> Result<String, Error> {
    let parts: Vec<String> = r
        .colors()?
        .into_iter()
        .map(|(v, c)| format!("{}:{c}", r.label(v)))
        .collect();
    Ok(format!("colors: {}", parts.join(" ")))
}

fn cmd_mutate(
    out: &mut dyn Write,
    file: &Path,
    vertices: &[usize],
    green_only: bool,
) -> Result<(), Error> {
    let mut state = match read_file(file)? {
        QuiverFile::Cluster(q) => framed(&q).with_base(q.base()),
        QuiverFile::Ice(r) => r,
    };
    for &label in vertices {
        let k = state
            .index_of(label)
            .ok_or_else(|| Error::Usage(format!("no vertex labeled {label}")))?;
        if state.is_frozen(k) {
            return Err(QuiverError::MutationAtFrozen(k).into());
        }
        if green_only && state.color_of(k)? != VertexColor::Green {
            return Err(Error::Usage(format!("vertex {label} is not green")));
        }
        state = state.mutate(k)?;
    }
    write!(out, "{}", ice_to_text(&state))?;
    writeln!(out, "{}", colors_line(&state)?)?;
    Ok(())
}

fn cmd_spectrum(
    out: &mut dyn Write,
    file: &Path,
    config: &Config,
    format: OutputFormat,
    strict: bool,
) -> Result<(), Error> {
    let q = read_cluster(file)?;
    let report = enumerate_mgs(&q, &config.enumeration(&q)?, None)?;
    match format {
        OutputFormat::Json => writeln!(out, "{}", report.to_json())?,
        OutputFormat::Table => {
            writeln!(out, "{:>8} {:>12}", "length", "sequences")?;
            for (l, c) in &report.counts {
                writeln!(out, "{l:>8} {c:>12}")?;
            }
            writeln!(
                out,
                "depth bound {}, states visited {}, truncated {}",
                report.depth_bound, report.states_visited, report.truncated
            )?;
        }
        OutputFormat::Dot => {
            return Err(Error::Usage(
                "spectrum supports json or table output".into(),
            ))
        }
    }
    if strict && report.truncated {
        return Err(Error::VerificationFailed(format!(
            "enumeration truncated at depth bound {}",
            report.depth_bound
        )));
    }
    Ok(())
}

fn cmd_enumerate(
    out: &mut dyn Write,
    file: &Path,
    config: &Config,
    limit: Option<usize>,
) -> Result<(), Error> {
    let q = read_cluster(file)?;
    let mut printed = 0usize;
    let mut io_error = None;
    let mut visit = |seq: &[Vertex]| {
        if limit.is_some_and(|l| printed >= l) || io_error.is_some() {
            return;
        }
        let labels: Vec<String> = seq.iter().map(|&v| q.label(v).to_string()).collect();
        if let Err(e) = writeln!(out, "{}", labels.join(" ")) {
            io_error = Some(e);
        }
        printed += 1;
    };
    let report = enumerate_mgs(&q, &config.enumeration(&q)?, Some(&mut visit))?;
    if let Some(e) = io_error {
        return Err(e.into());
    }
    writeln!(out, "# {}", report.to_json())?;
    Ok(())
}

/// Largest `n` run without `--long-running`.
const AFFINE_GATE: usize = 3;
const TYPE_A_GATE: usize = 5;

fn cmd_verify(
    out: &mut dyn Write,
    target: VerifyTarget,
    n: usize,
    config: &Config,
    orientations: &[String],
    format: OutputFormat,
) -> Result<(), Error> {
    let hc = config.harness()?;
    let reports: Vec<VerificationReport> = match target {
        VerifyTarget::TypeA => {
            let list = if orientations.is_empty() {
                Orientations::All
            } else {
                Orientations::List(
                    orientations
                        .iter()
                        .map(|s| s.parse::<TypeAQuiver>())
                        .collect::<Result<_, _>>()?,
                )
            };
            if n > TYPE_A_GATE && !config.long_running {
                return Err(Error::Usage(format!(
                    "type A with n = {n} exceeds the default limit n <= {TYPE_A_GATE}; \
                     pass --long-running together with explicit --orientation values"
                )));
            }
            harness::verify_type_a_spectrum(n, &list, hc)?
        }
        VerifyTarget::Affine => {
            if n > AFFINE_GATE && !config.long_running {
                return Err(Error::Usage(format!(
                    "Ã_({n},1) (depth {}) is beyond the default limit n <= {AFFINE_GATE}; \
                     pass --long-running to run it",
                    n * (n + 3) / 2
                )));
            }
            vec![harness::verify_affine_spectrum(n, hc)?]
        }
    };
    match format {
        OutputFormat::Json => writeln!(out, "{}", reports_to_json(&reports))?,
        OutputFormat::Table => write!(out, "{}", reports_to_table(&reports))?,
        OutputFormat::Dot => {
            return Err(Error::Usage("verify supports json or table output".into()))
        }
    }
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.quiver.as_str())
        .collect();
    if !failed.is_empty() {
        return Err(Error::VerificationFailed(failed.join(", ")));
    }
    Ok(())
}

fn cmd_graph(
    out: &mut dyn Write,
    file: &Path,
    kind: GraphKind,
    target: Option<&Path>,
    depth_bound: Option<usize>,
) -> Result<(), Error> {
    let q = read_cluster(file)?;
    let dot = match kind {
        GraphKind::Exchange => {
            let bound = match depth_bound {
                Some(b) => b,
                None => default_depth_bound(&q)?,
            };
            build_exchange_graph(&q, bound)?.to_dot(|v| q.label(v))
        }
        GraphKind::Hasse => {
            let tq = TypeAQuiver::from_cluster_quiver(&q).ok_or_else(|| {
                Error::Usage(
                    "the Hasse quiver is only available for type A quivers labeled along the path"
                        .into(),
                )
            })?;
            type_a::hasse_quiver(&tq)?.to_dot()
        }
    };
    match target {
        Some(path) => fs::write(path, dot)?,
        None => write!(out, "{dot}")?,
    }
    Ok(())
}

fn parse_interval(token: &str, n: usize) -> Result<IntervalModule, Error> {
    let bad = || Error::Usage(format!("expected an interval `i,j`, found `{token}`"));
    let (i, j) = token
        .trim_matches(|c| c == '[' || c == ']')
        .split_once(',')
        .ok_or_else(bad)?;
    let i = i.trim().parse().map_err(|_| bad())?;
    let j = j.trim().parse().map_err(|_| bad())?;
    Ok(IntervalModule::new(i, j, n)?)
}

#[derive(Serialize)]
struct CompatOutput {
    a: IntervalModule,
    b: IntervalModule,
    compatible: bool,
    ext_ab: usize,
    ext_ba: usize,
}

fn cmd_compat(out: &mut dyn Write, orientation: &str, a: &str, b: &str) -> Result<(), Error> {
    let q: TypeAQuiver = orientation.parse()?;
    let a = parse_interval(a, q.n())?;
    let b = parse_interval(b, q.n())?;
    let compatible = type_a::ext_mutually_vanishes(&q, a, b);
    let ext_ab = type_a::ext_dim(&q, a, b)?;
    let ext_ba = type_a::ext_dim(&q, b, a)?;
    if compatible != (ext_ab == 0 && ext_ba == 0) {
        return Err(Error::Internal(format!(
            "Ext criterion and exact oracle disagree on {a}, {b} over {q}"
        )));
    }
    writeln!(
        out,
        "{}",
        json(&CompatOutput {
            a,
            b,
            compatible,
            ext_ab,
            ext_ba
        })
    )?;
    Ok(())
}

#[derive(Serialize)]
struct TauOutput {
    module: IntervalModule,
    tau: Option<IntervalModule>,
    route: &'static str,
}

fn cmd_tau(out: &mut dyn Write, orientation: &str, i: usize, j: usize) -> Result<(), Error> {
    let q: TypeAQuiver = orientation.parse()?;
    let x = IntervalModule::new(i, j, q.n())?;
    let outcome = type_a::tau_interval(&q, x)?;
    let route = match outcome.route {
        TauRoute::Projective => "projective",
        TauRoute::Formula => "formula",
        TauRoute::OracleFallback => "coxeter",
    };
    writeln!(
        out,
        "{}",
        json(&TauOutput {
            module: x,
            tau: outcome.module,
            route
        })
    )?;
    Ok(())
}

fn parse_vector(text: &str) -> Result<SliceVector, Error> {
    serde_json::from_str(text).map_err(|e| {
        Error::Usage(format!(
            "expected a JSON array of non-negative integers: {e}"
        ))
    })
}

fn cmd_slice(out: &mut dyn Write, query: &SliceQuery) -> Result<(), Error> {
    match query {
        SliceQuery::Check { file, vector } => {
            let q = read_cluster(file)?;
            let s = parse_vector(vector)?;
            if s.len() != q.n() {
                return Err(Error::Usage(format!("vector needs {} entries", q.n())));
            }
            writeln!(out, "{}", slice::is_slice_tilting(&q, &s))?;
        }
        SliceQuery::Sources { file, vector } => {
            let q = read_cluster(file)?;
            let sources = slice::slice_sources(&q, &parse_vector(vector)?)?;
            let labels: Vec<usize> = sources.into_iter().map(|v| q.label(v)).collect();
            writeln!(out, "{}", json(&labels))?;
        }
        SliceQuery::Mutate {
            file,
            vector,
            vertex,
        } => {
            let q = read_cluster(file)?;
            let x = index_of(&q, *vertex)?;
            let next = slice::mutate_slice_at_source(&q, &parse_vector(vector)?, x)?;
            writeln!(out, "{}", json(&next))?;
        }
        SliceQuery::Path { file, from, to } => {
            let q = read_cluster(file)?;
            let path = slice::descending_path(&q, &parse_vector(from)?, &parse_vector(to)?)?;
            writeln!(out, "{}", json(&path))?;
        }
    }
    Ok(())
}

fn cmd_check(out: &mut dyn Write, seed: u64, cases: usize) -> Result<(), Error> {
    let mut outcomes: Vec<PropertyOutcome> = vec![mutation_involution_property(seed, cases)];
    let a4 = crate::harness::build_type_a(&TypeAQuiver::linear(4));
    for (name, q) in [("Ã_(2,1)", build_affine(2)?), ("A_4", a4)] {
        outcomes.push(descending_path_property(&q, name, seed, cases));
    }
    let mut failed = Vec::new();
    for o in &outcomes {
        let status = if o.passed() { "ok" } else { "FAILED" };
        writeln!(out, "{}: {} cases, {status}", o.property, o.cases)?;
        for f in &o.failures {
            writeln!(out, "  {f}")?;
        }
        if !o.passed() {
            failed.push(o.property.clone());
        }
    }
    if !failed.is_empty() {
        return Err(Error::VerificationFailed(format!(
            "{} (seed {seed})",
            failed.join(", ")
        )));
    }
    Ok(())
}

/// Runs one parsed command, writing normal output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), Error> {
    match &cli.command {
        Command::Mutate {
            file,
            vertices,
            green_only,
        } => cmd_mutate(out, file, vertices, *green_only),
        Command::Spectrum {
            file,
            config,
            format,
            strict,
        } => cmd_spectrum(out, file, config, *format, *strict),
        Command::Enumerate {
            file,
            config,
            limit,
        } => cmd_enumerate(out, file, config, *limit),
        Command::Verify {
            target,
            n,
            config,
            orientations,
            format,
        } => cmd_verify(out, *target, *n, config, orientations, *format),
        Command::Graph {
            file,
            kind,
            out: target,
            depth_bound,
        } => cmd_graph(out, file, *kind, target.as_deref(), *depth_bound),
        Command::Compat { orientation, a, b } => cmd_compat(out, orientation, a, b),
        Command::Tau { orientation, i, j } => cmd_tau(out, orientation, *i, *j),
        Command::Slice { query } => cmd_slice(out, query),
        Command::Check { seed, cases } => cmd_check(out, *seed, *cases),
    }
}
