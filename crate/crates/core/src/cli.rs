//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::dds::{matroid_from_dds, residue_relation, DifferenceSystem};
use crate::equiv::{classify_rank2, rank2_matroid_from_equiv, EquivRelation};
use crate::error::Error;
use crate::groups::FiniteGroup;
use crate::matroid::Matroid;
use crate::oracle::{enumerate_invariant_matroids_with, Filter, OracleConfig};
use crate::props::{sweep, PropertyReport};
use crate::quotient::loopless_from_pair;
use crate::rank3::{classify_rank3, duplicate_matroids, matroid_from_rank3_relation, Rank3Relation};

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: msg.into() + "\n",
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "gmatroid", version, about = "Group-invariant matroids of low rank")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the invariant matroids of rank 2 or 3 on a group.
    Classify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value = "all")]
        filter: FilterArg,
        #[command(flatten)]
        common: Common,
    },
    /// Build one matroid from a difference system, the residue
    /// construction or a relation file.
    Construct {
        #[command(flatten)]
        source: Source,
        /// Primitive 6th root of unity for --residue.
        #[arg(long)]
        root: Option<usize>,
        /// Group for --relation.
        #[arg(long)]
        group: Option<String>,
        /// Subgroup members (comma separated) for a rank-3 --relation on G/H.
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Compare a classification with the brute-force oracle.
    Verify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value = "all")]
        filter: FilterArg,
        #[command(flatten)]
        common: Common,
    },
    /// Run the property sweeps for a comma-separated list of groups.
    Props {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Difference system, e.g. "Z7:{0,1,3}".
    #[arg(long)]
    dds: Option<String>,
    /// Prime p with p = 7 mod 12.
    #[arg(long)]
    residue: Option<usize>,
    /// Relation JSON file.
    #[arg(long)]
    relation: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format; `construct` defaults to json, the rest to text.
    #[arg(long)]
    format: Option<Format>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    workers: Option<u16>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FilterArg {
    All,
    Loopless,
    Simple,
}

impl From<FilterArg> for Filter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::All => Filter::All,
            FilterArg::Loopless => Filter::Loopless,
            FilterArg::Simple => Filter::Simple,
        }
    }
}

/// A finished report: the text written to stdout or `--output`, plus the
/// exit code and any notes for stderr.
struct Report {
    code: i32,
    body: String,
    notes: String,
}

impl Report {
    fn ok(body: String) -> Self {
        Report {
            code: 0,
            body,
            notes: String::new(),
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => Outcome::usage(e.to_string().lines().next().unwrap_or("error: bad usage")),
            };
        }
    };
    let common = match &cli.command {
        Command::Classify { common, .. }
        | Command::Construct { common, .. }
        | Command::Verify { common, .. }
        | Command::Props { common, .. } => common,
    };
    let result = match common.workers {
        None => dispatch(&cli.command),
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w as usize).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command)),
            Err(e) => Err(Cmd::Fail(Error::Internal(e.to_string()))),
        },
    };
    let report = match result {
        Ok(r) => r,
        Err(Cmd::Usage(msg)) => return Outcome::usage(format!("error: {msg}")),
        Err(Cmd::Fail(e)) => return Outcome::error(&e),
    };
    match &common.output {
        Some(path) => match std::fs::write(path, &report.body) {
            Ok(()) => Outcome {
                code: report.code,
                stdout: String::new(),
                stderr: report.notes,
            },
            Err(e) => Outcome::error(&Error::from(e)),
        },
        None => Outcome {
            code: report.code,
            stdout: report.body,
            stderr: report.notes,
        },
    }
}

enum Cmd {
    Usage(String),
    Fail(Error),
}

impl From<Error> for Cmd {
    fn from(e: Error) -> Self {
        Cmd::Fail(e)
    }
}

type CmdResult = std::result::Result<Report, Cmd>;

fn dispatch(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Classify {
            group,
            rank,
            filter,
            common,
        } => classify(group, *rank, (*filter).into(), common.format.unwrap_or(Format::Text)),
        Command::Construct {
            source,
            root,
            group,
            subgroup,
            rank,
            common,
        } => construct(source, *root, group.as_deref(), subgroup.as_deref(), *rank, common.format.unwrap_or(Format::Json)),
        Command::Verify {
            group,
            rank,
            filter,
            common,
        } => verify(group, *rank, (*filter).into(), common),
        Command::Props { group, common } => props(group, common.format.unwrap_or(Format::Text)),
    }
}

fn json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable") + "\n"
}

fn classify(group: &str, rank: usize, filter: Filter, format: Format) -> CmdResult {
    let g = FiniteGroup::parse(group)?;
    let mut notes = String::new();
    let body = match rank {
        2 => {
            let mut list = classify_rank2(&g.regular_action())?;
            list.retain(|(_, m)| filter.accepts(m));
            match format {
                Format::Json => json_line(
                    &list
                        .iter()
                        .map(|(r, m)| json!({"relation": r.to_json_value(), "matroid": m.to_json_value()}))
                        .collect::<Vec<_>>(),
                ),
                Format::Text => {
                    let mut s = format!("{} rank-2 invariant matroids on {group}\n", list.len());
                    for (r, m) in &list {
                        let _ = writeln!(s, "  classes {:?}: {m}", r.class_lists());
                    }
                    s
                }
            }
        }
        3 => {
            let mut list = classify_rank3(&g)?;
            let dups = duplicate_matroids(&list);
            if !dups.is_empty() {
                let _ = writeln!(notes, "note: {} matroids arise from more than one subgroup/relation pair", dups.len());
            }
            list.retain(|e| filter.accepts(&e.matroid));
            match format {
                Format::Json => json_line(&list.iter().map(|e| e.to_json_value()).collect::<Vec<_>>()),
                Format::Text => {
                    let mut s = format!("{} rank-3 invariant matroids on {group}\n", list.len());
                    for e in &list {
                        let _ = writeln!(
                            s,
                            "  H = {:?}, classes {:?}: {}{}",
                            e.subgroup.to_vec(),
                            e.relation.classes(),
                            e.matroid,
                            if e.matroid.is_simple() { ", simple" } else { "" }
                        );
                    }
                    s
                }
            }
        }
        _ => return Err(Cmd::Usage(format!("classify supports --rank 2 or 3, not {rank}"))),
    };
    Ok(Report { code: 0, body, notes })
}

fn parse_members(list: &str) -> std::result::Result<Vec<usize>, Cmd> {
    list.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Cmd::Usage(format!("bad subgroup member {t:?}")))
        })
        .collect()
}

fn matroid_text(label: &str, m: &Matroid) -> String {
    let stats = m.stats();
    format!(
        "{label}: {m}{}{}\n",
        if stats.simple { ", simple" } else { "" },
        if stats.loopless && !stats.simple { ", loopless" } else { "" }
    )
}

fn construct(
    source: &Source,
    root: Option<usize>,
    group: Option<&str>,
    subgroup: Option<&str>,
    rank: Option<usize>,
    format: Format,
) -> CmdResult {
    if root.is_some() && source.residue.is_none() {
        return Err(Cmd::Usage("--root applies to --residue only".into()));
    }
    if let Some(desc) = &source.dds {
        if group.is_some() || subgroup.is_some() {
            return Err(Cmd::Usage("--dds carries its own group".into()));
        }
        let d = DifferenceSystem::parse(desc)?;
        let m = matroid_from_dds(&d, rank.unwrap_or(3))?;
        return Ok(Report::ok(match format {
            Format::Json => json_line(&m.to_json_value()),
            Format::Text => matroid_text(&d.to_string(), &m),
        }));
    }
    if let Some(p) = source.residue {
        if rank.is_some_and(|k| k != 3) {
            return Err(Cmd::Usage("the residue construction has rank 3".into()));
        }
        if group.is_some() || subgroup.is_some() {
            return Err(Cmd::Usage("--residue fixes the group Z_p".into()));
        }
        let r = residue_relation(p, root)?;
        return Ok(Report::ok(match format {
            Format::Json => json_line(&r.matroid.to_json_value()),
            Format::Text => {
                let classes: Vec<Vec<usize>> = r.relation.class_lists().into_iter().filter(|c| c != &[0]).collect();
                format!(
                    "{}primitive 6th roots mod {p}: {:?}\nclasses: {classes:?}\n",
                    matroid_text(&format!("residues mod {p}, u = {}", r.u), &r.matroid),
                    r.roots
                )
            }
        }));
    }
    let path = source.relation.as_ref().expect("clap enforces one source");
    let group = group.ok_or_else(|| Cmd::Usage("--relation needs --group".into()))?;
    let rank = rank.ok_or_else(|| Cmd::Usage("--relation needs --rank".into()))?;
    let g = FiniteGroup::parse(group)?;
    let r = EquivRelation::from_json(&std::fs::read_to_string(path).map_err(Error::from)?)?;
    let m = match rank {
        2 => {
            if subgroup.is_some() {
                return Err(Cmd::Usage("--subgroup applies to rank 3 only".into()));
            }
            if r.ground_size() != g.order() {
                return Err(Error::GroundSizeMismatch {
                    expected: g.order(),
                    actual: r.ground_size(),
                }
                .into());
            }
            if !r.is_invariant(&g.regular_action())? {
                return Err(Error::NotInvariant.into());
            }
            rank2_matroid_from_equiv(&r)?
        }
        3 => {
            let members = match subgroup {
                Some(list) => parse_members(list)?,
                None => vec![g.identity()],
            };
            let h = g.subgroup(crate::bits::from_elements(members.iter().copied().filter(|&x| x < 64)))?;
            if members.iter().any(|&x| x >= g.order()) {
                return Err(Error::OutOfRange {
                    point: *members.iter().max().unwrap(),
                    ground_size: g.order(),
                }
                .into());
            }
            let cs = g.coset_space(&h)?;
            let rel = Rank3Relation::new(&cs, r)?;
            let simple = matroid_from_rank3_relation(&rel)?;
            if h.is_trivial() {
                simple
            } else {
                loopless_from_pair(&EquivRelation::from_labels(cs.labels())?, &simple)?
            }
        }
        _ => return Err(Cmd::Usage(format!("relations define rank 2 or 3 matroids, not {rank}"))),
    };
    Ok(Report::ok(match format {
        Format::Json => json_line(&m.to_json_value()),
        Format::Text => matroid_text(&path.display().to_string(), &m),
    }))
}

fn verify(group: &str, rank: usize, filter: Filter, common: &Common) -> CmdResult {
    let g = FiniteGroup::parse(group)?;
    let mut classified: Vec<Matroid> = match rank {
        2 => classify_rank2(&g.regular_action())?.into_iter().map(|(_, m)| m).collect(),
        3 => classify_rank3(&g)?.into_iter().map(|e| e.matroid).collect(),
        _ => return Err(Cmd::Usage(format!("verify supports --rank 2 or 3, not {rank}"))),
    };
    classified.retain(|m| filter.accepts(m));
    classified.sort();
    classified.dedup();
    let config = OracleConfig {
        workers: common.workers.map(usize::from),
        ..OracleConfig::default()
    };
    let oracle = enumerate_invariant_matroids_with(&g.regular_action(), rank, filter, &config)?;
    let only_classified: Vec<&Matroid> = classified.iter().filter(|m| oracle.binary_search(m).is_err()).collect();
    let only_oracle: Vec<&Matroid> = oracle.iter().filter(|m| classified.binary_search(m).is_err()).collect();
    let matched = only_classified.is_empty() && only_oracle.is_empty();
    let body = match common.format.unwrap_or(Format::Text) {
        Format::Json => {
            let side = |ms: &[&Matroid]| ms.iter().map(|m| m.to_json_value()).collect::<Vec<_>>();
            json_line(&json!({
                "group": group,
                "rank": rank,
                "result": if matched { "MATCH" } else { "MISMATCH" },
                "classification": classified.len(),
                "oracle": oracle.len(),
                "only_in_classification": side(&only_classified),
                "only_in_oracle": side(&only_oracle),
            }))
        }
        Format::Text if matched => {
            format!("classification = oracle: MATCH ({} matroids)\n", oracle.len())
        }
        Format::Text => {
            let mut s = format!(
                "classification = oracle: MISMATCH (classification {}, oracle {})\n",
                classified.len(),
                oracle.len()
            );
            for (label, side) in [("only in classification", &only_classified), ("only in oracle", &only_oracle)] {
                for m in side.iter() {
                    let _ = writeln!(s, "{label}: {}", m.to_json());
                }
            }
            s
        }
    };
    Ok(Report {
        code: if matched { 0 } else { 1 },
        body,
        notes: String::new(),
    })
}

fn props(groups: &str, format: Format) -> CmdResult {
    let mut reports: Vec<PropertyReport> = Vec::new();
    for name in groups.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let g = FiniteGroup::parse(name)?;
        reports.extend(sweep(&g, name)?);
    }
    if reports.is_empty() {
        return Err(Cmd::Usage("props needs at least one group".into()));
    }
    let failed = reports.iter().any(|r| !r.passed());
    let body = match format {
        Format::Json => json_line(&Value::Array(
            reports
                .iter()
                .map(|r| json!({"name": r.name, "group": r.group, "checked": r.checked, "failures": r.failures}))
                .collect(),
        )),
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "{verdict} {} on {} ({} checks)", r.name, r.group, r.checked);
                for f in &r.failures {
                    let _ = writeln!(s, "    {f}");
                }
            }
            s
        }
    };
    Ok(Report {
        code: if failed { 1 } else { 0 },
        body,
        notes: String::new(),
    })
}
