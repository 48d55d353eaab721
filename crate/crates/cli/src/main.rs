//! `groupcover`: covering numbers of permutation groups from the command line.
//!
//! Exit codes: 0 success, 1 rejected cover or table mismatch, 2 unparsable
//! input, 3 budget or cap exhausted, 4 internal invariant violated.

mod document;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use groupcover::{
    is_sigma_elementary, paper_table_report, parse_cycles, parse_group_file, verify_cover, CoverCheck, ElementTable,
    Error, GroupSpec, PermGroup, SolveOptions, DEFAULT_CAP,
};
use serde::Serialize;

use document::{parse_cover, ResultDocument};

#[derive(Parser)]
#[command(name = "groupcover", version, about = "Exact covering numbers of finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute sigma with a witness cover and lower-bound certificates.
    Sigma {
        /// `catalog:Name(args)` or a path to a group file.
        spec: String,
        #[command(flatten)]
        run: RunConfig,
        /// Count all minimum covers and report whether the cover is unique.
        #[arg(long)]
        enumerate_all: bool,
    },
    /// Check that a cover file lists proper subgroups covering the group.
    Verify { spec: String, cover: PathBuf },
    /// Decide whether sigma drops strictly in every proper quotient.
    Elementary {
        spec: String,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Recompute the table of sigma-elementary groups by sum.
    Table {
        #[arg(long, default_value_t = 25)]
        max_sum: u64,
        #[command(flatten)]
        run: RunConfig,
    },
}

#[derive(Args)]
struct RunConfig {
    /// Largest group order that will be tabulated.
    #[arg(long, default_value_t = DEFAULT_CAP, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    cap: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    threads: usize,
    /// Branch-and-bound nodes allowed per search.
    #[arg(long, default_value_t = 100_000_000)]
    node_budget: u64,
    /// Write the JSON document here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON document instead of the summary.
    #[arg(long)]
    json: bool,
}

impl RunConfig {
    fn options(&self) -> SolveOptions {
        SolveOptions { cap: self.cap, threads: self.threads, node_budget: self.node_budget, ..SolveOptions::default() }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Cycle(_)
            | Error::Syntax { .. }
            | Error::DegreeMismatch { .. }
            | Error::Unsupported(_)
            | Error::InvalidParameters { .. } => 2,
            Error::OverCap { .. } | Error::IncompleteEnumeration { .. } | Error::NodeBudget { .. } => 3,
            _ => 4,
        };
        Failure { code, message: e.to_string() }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type Outcome = Result<u8, Failure>;

fn load_spec(spec: &str) -> Result<(GroupSpec, PermGroup), Failure> {
    let parsed = if spec.trim_start().starts_with("catalog:") {
        GroupSpec::parse_inline(spec)?
    } else {
        let text = std::fs::read_to_string(spec).map_err(|e| fail(2, format!("{spec}: {e}")))?;
        parse_group_file(&text)?
    };
    let group = parsed.construct()?;
    Ok((parsed, group))
}

fn emit<T: Serialize>(run: &RunConfig, doc: &T, summary: &str) -> Result<(), Failure> {
    let json = serde_json::to_string_pretty(doc).map_err(|e| fail(4, e.to_string()))? + "\n";
    if let Some(path) = &run.out {
        write_file(path, &json)?;
    }
    if run.json {
        print!("{json}");
    } else {
        print!("{summary}");
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| fail(4, format!("{}: {e}", path.display())))
}

fn cmd_sigma(spec: &str, run: &RunConfig, enumerate_all: bool) -> Outcome {
    let (parsed, group) = load_spec(spec)?;
    let mut opts = run.options();
    if enumerate_all {
        opts.enumerate_limit = Some(usize::MAX);
    }
    let result = groupcover::sigma(&group, &opts)?;
    let doc = ResultDocument::new(parsed.canonical(), group.degree(), result);

    // the emitted cover must pass the same check `verify` applies
    if !doc.cover.is_empty() {
        let table = ElementTable::new(&group, opts.cap)?;
        let subgroups = parse_subgroups(&doc.cover, group.degree())?;
        if verify_cover(&table, &subgroups)? != CoverCheck::Valid {
            return Err(fail(4, "computed cover failed verification"));
        }
    }

    let mut summary = format!("group         {}\norder         {}\n", doc.group, doc.order);
    let exit = match (doc.sigma, doc.interval) {
        (Some(s), _) => {
            summary += &format!("sigma         {s}\n");
            0
        }
        (None, Some([lo, hi])) => {
            summary += &format!("sigma         unproven, in [{lo}, {hi}] (node budget exhausted)\n");
            3
        }
        _ => return Err(fail(4, "no sigma and no interval")),
    };
    if !doc.cover.is_empty() {
        summary += &format!("cover         {} subgroups\n", doc.cover.len());
        for (i, gens) in doc.cover.iter().enumerate() {
            summary += &format!("  {:>3}  <{}>\n", i + 1, gens.join(", "));
        }
    }
    for cert in &doc.certificates {
        summary += &format!("certificate   {}\n", serde_json::to_string(cert).map_err(|e| fail(4, e.to_string()))?);
    }
    if let Some(count) = doc.optimal_count {
        let count = serde_json::to_string(&count).map_err(|e| fail(4, e.to_string()))?;
        let unique = doc.unique.map_or("unknown".to_string(), |u| u.to_string());
        summary += &format!("optimal count {}\nunique        {unique}\n", count.trim_matches('"'));
    }
    emit(run, &doc, &summary)?;
    Ok(exit)
}

fn parse_subgroups(cover: &[Vec<String>], degree: usize) -> Result<Vec<Vec<groupcover::Permutation>>, Failure> {
    cover
        .iter()
        .map(|gens| gens.iter().map(|g| parse_cycles(g, degree).map_err(|e| Failure::from(Error::from(e)))).collect())
        .collect()
}

fn cmd_verify(spec: &str, cover: &Path) -> Outcome {
    let (_, group) = load_spec(spec)?;
    let text = std::fs::read_to_string(cover).map_err(|e| fail(2, format!("{}: {e}", cover.display())))?;
    let cover = parse_cover(&text).map_err(|m| fail(2, m))?;
    let subgroups = parse_subgroups(&cover, group.degree())?;
    let table = ElementTable::new(&group, DEFAULT_CAP)?;
    match verify_cover(&table, &subgroups) {
        Ok(CoverCheck::Valid) => {
            println!("valid: {} proper subgroups cover the group of order {}", subgroups.len(), table.size());
            Ok(0)
        }
        Ok(CoverCheck::NotProper { index }) => {
            println!("rejected: subgroup {} is the whole group", index + 1);
            Ok(1)
        }
        Ok(CoverCheck::Uncovered { element }) => {
            println!("rejected: {} lies in none of the subgroups", element.to_cycle_string());
            Ok(1)
        }
        Err(Error::NotInGroup(p)) => {
            println!("rejected: generator {p} is not an element of the group");
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct ElementaryDocument {
    group: String,
    order: u128,
    degree: usize,
    #[serde(flatten)]
    verdict: groupcover::ElementaryVerdict,
}

fn cmd_elementary(spec: &str, run: &RunConfig) -> Outcome {
    let (parsed, group) = load_spec(spec)?;
    let opts = run.options();
    let table = ElementTable::new(&group, opts.cap)?;
    let verdict = is_sigma_elementary(&table, &opts)?;
    let mut summary = format!(
        "group         {}\norder         {}\nsigma         {}\nelementary    {}\n",
        parsed.canonical(),
        table.size(),
        verdict.sigma,
        verdict.is_elementary
    );
    for q in &verdict.quotient_sigmas {
        summary += &format!("  |N| = {:<6} |G/N| = {:<6} sigma(G/N) = {}\n", q.normal_order, q.quotient_order, q.sigma);
    }
    if let Some(w) = &verdict.witness {
        summary += &format!(
            "witness       N = <{}> of order {}, sigma(G/N) = {} <= {}\n",
            w.normal_generators.join(", "),
            w.normal_order,
            w.sigma,
            verdict.sigma
        );
    }
    let doc =
        ElementaryDocument { group: parsed.canonical(), order: table.size() as u128, degree: group.degree(), verdict };
    emit(run, &doc, &summary)?;
    Ok(0)
}

fn cmd_table(max_sum: u64, run: &RunConfig) -> Outcome {
    let report = paper_table_report(&run.options(), max_sum)?;
    emit(run, &report, &report.render_text())?;
    Ok(if !report.passed() {
        1
    } else if report.skipped > 0 {
        3
    } else {
        0
    })
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Sigma { spec, run, enumerate_all } => cmd_sigma(spec, run, *enumerate_all),
        Command::Verify { spec, cover } => cmd_verify(spec, cover),
        Command::Elementary { spec, run } => cmd_elementary(spec, run),
        Command::Table { max_sum, run } => cmd_table(*max_sum, run),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
