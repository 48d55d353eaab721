//! Reproduction of the published classification of σ-elementary groups by
//! sum, and of the published σ values and bounds for primitive groups.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{is_sigma_elementary, ElementaryVerdict};
use crate::catalog::CatalogGroup;
use crate::cover::{solve_elements, SigmaValue, SolveOptions};
use crate::elements::ElementTable;
use crate::error::{Error, Result};

/// One sum and the σ-elementary groups listed for it, as `(label, catalog name)`.
#[derive(Clone, Copy, Debug)]
pub struct SumRow {
    pub sum: u64,
    pub groups: &'static [(&'static str, &'static str)],
}

const fn row(sum: u64, groups: &'static [(&'static str, &'static str)]) -> SumRow {
    SumRow { sum, groups }
}

pub const SUM_TABLE: &[SumRow] = &[
    row(3, &[("C2 x C2", "ElemAbelian(2,2)")]),
    row(4, &[("C3 x C3", "ElemAbelian(3,2)"), ("Sym(3)", "Sym(3)")]),
    row(5, &[("Alt(4)", "Alt(4)")]),
    row(6, &[("C5 x C5", "ElemAbelian(5,2)"), ("D10", "Dihedral(5)"), ("AGL(1,5)", "AGL1(5)")]),
    row(7, &[]),
    row(
        8,
        &[("C7 x C7", "ElemAbelian(7,2)"), ("D14", "Dihedral(7)"), ("7:3", "Frobenius(7,3)"), ("AGL(1,7)", "AGL1(7)")],
    ),
    row(9, &[("AGL(1,8)", "AGL1(8)")]),
    row(10, &[("3^2:4", "AffineSemilinear(9,4,1)"), ("AGL(1,9)", "AGL1(9)"), ("Alt(5)", "Alt(5)")]),
    row(11, &[]),
    row(
        12,
        &[
            ("C11 x C11", "ElemAbelian(11,2)"),
            ("11:5", "Frobenius(11,5)"),
            ("D22", "Dihedral(11)"),
            ("AGL(1,11)", "AGL1(11)"),
        ],
    ),
    row(13, &[("Sym(6)", "Sym(6)")]),
    row(
        14,
        &[
            ("C13 x C13", "ElemAbelian(13,2)"),
            ("D26", "Dihedral(13)"),
            ("13:3", "Frobenius(13,3)"),
            ("13:4", "Frobenius(13,4)"),
            ("13:6", "Frobenius(13,6)"),
            ("AGL(1,13)", "AGL1(13)"),
        ],
    ),
    row(15, &[("SL(3,2)", "PSL3(2)")]),
    row(16, &[("Sym(5)", "Sym(5)"), ("Alt(6)", "Alt(6)")]),
    row(17, &[("2^4:5", "AffineSemilinear(16,5,1)"), ("AGL(1,16)", "AGL1(16)")]),
    row(
        18,
        &[
            ("C17 x C17", "ElemAbelian(17,2)"),
            ("D34", "Dihedral(17)"),
            ("17:4", "Frobenius(17,4)"),
            ("17:8", "Frobenius(17,8)"),
            ("AGL(1,17)", "AGL1(17)"),
        ],
    ),
    row(19, &[]),
    row(
        20,
        &[
            ("C19 x C19", "ElemAbelian(19,2)"),
            ("AGL(1,19)", "AGL1(19)"),
            ("D38", "Dihedral(19)"),
            ("19:3", "Frobenius(19,3)"),
            ("19:6", "Frobenius(19,6)"),
            ("19:9", "Frobenius(19,9)"),
        ],
    ),
    row(21, &[]),
    row(22, &[]),
    row(23, &[("M11", "M11")]),
    row(
        24,
        &[
            ("C23 x C23", "ElemAbelian(23,2)"),
            ("D46", "Dihedral(23)"),
            ("23:11", "Frobenius(23,11)"),
            ("AGL(1,23)", "AGL1(23)"),
        ],
    ),
    row(25, &[]),
];

/// Catalog groups absent from [`SUM_TABLE`]: none may turn out σ-elementary
/// with a sum inside the table's range.
pub const CONTROLS: &[&str] = &[
    "Cyclic(6)",
    "ElemAbelian(2,3)",
    "Dihedral(4)",
    "Dihedral(6)",
    "Sym(4)",
    "AffineSemilinear(9,2,1)",
    "AffineSemilinear(9,8,2)",
    "AffineSemilinear(16,3,1)",
    "AffineSemilinear(16,15,2)",
    "ASL3(2)",
    "PGL2(7)",
    "PSL2(8)",
    "PGammaL2(8)",
    "M10",
    "PGL2(9)",
    "PGammaL2(9)",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Exact(u64),
    AtLeast(u64),
}

impl Claim {
    pub fn holds(&self, sigma: SigmaValue) -> bool {
        match *self {
            Claim::Exact(n) => sigma == SigmaValue::Finite(n),
            Claim::AtLeast(n) => sigma >= SigmaValue::Finite(n),
        }
    }
}

impl Serialize for Claim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Claim::Exact(n) => s.serialize_str(&format!("={n}")),
            Claim::AtLeast(n) => s.serialize_str(&format!(">={n}")),
        }
    }
}

/// A published σ value or lower bound for a primitive group of the given degree.
#[derive(Clone, Copy, Debug)]
pub struct ClaimEntry {
    pub degree: u32,
    pub label: &'static str,
    pub group: &'static str,
    pub claim: Claim,
    /// Set when the claim is known to be inconsistent with another one.
    pub note: Option<&'static str>,
}

const fn claim(degree: u32, label: &'static str, group: &'static str, claim: Claim) -> ClaimEntry {
    ClaimEntry { degree, label, group, claim, note: None }
}

const fn disputed(
    degree: u32,
    label: &'static str,
    group: &'static str,
    claim: Claim,
    note: &'static str,
) -> ClaimEntry {
    ClaimEntry { degree, label, group, claim, note: Some(note) }
}

use Claim::{AtLeast, Exact};

const JOINT_BOUND: &str = "bound is stated jointly for the degree-18 row together with Alt(18) and Sym(18)";

pub const CLAIMS: &[ClaimEntry] = &[
    claim(4, "Alt(4)", "Alt(4)", Exact(5)),
    claim(5, "Alt(5)", "Alt(5)", Exact(10)),
    claim(5, "Sym(5)", "Sym(5)", Exact(16)),
    claim(6, "Sym(6)", "Sym(6)", Exact(13)),
    claim(7, "SL(3,2)", "PSL3(2)", Exact(15)),
    claim(7, "Alt(7)", "Alt(7)", Exact(31)),
    claim(7, "Sym(7)", "Sym(7)", Exact(64)),
    disputed(8, "PSL(2,7)", "PSL2(7)", Exact(29), "PSL(2,7) is isomorphic to SL(3,2), listed with sigma 15"),
    claim(8, "PGL(2,7)", "PGL2(7)", Exact(29)),
    claim(8, "AGL(1,8)", "AGL1(8)", Exact(9)),
    claim(8, "ASL(3,2)", "ASL3(2)", Exact(15)),
    claim(9, "Aut(PSL(2,8))", "PGammaL2(8)", Exact(29)),
    claim(9, "PSL(2,8)", "PSL2(8)", Exact(36)),
    claim(9, "3^2:4", "AffineSemilinear(9,4,1)", Exact(10)),
    claim(9, "AGL(1,9)", "AGL1(9)", Exact(10)),
    claim(10, "Alt(6)", "Alt(6)", Exact(16)),
    claim(10, "PGL(2,9)", "PGL2(9)", Exact(46)),
    claim(10, "M10", "M10", AtLeast(45)),
    claim(10, "PGammaL(2,9)", "PGammaL2(9)", Exact(3)),
    claim(11, "M11", "M11", Exact(23)),
    claim(11, "PSL(2,11)", "PSL2(11)", Exact(67)),
    claim(12, "PGL(2,11)", "PGL2(11)", Exact(67)),
    claim(13, "PSL(3,3)", "PSL3(3)", AtLeast(144)),
    claim(14, "PSL(2,13)", "PSL2(13)", AtLeast(92)),
    claim(14, "PGL(2,13)", "PGL2(13)", AtLeast(92)),
    claim(16, "2^4:5", "AffineSemilinear(16,5,1)", Exact(17)),
    claim(16, "AGL(1,16)", "AGL1(16)", Exact(17)),
    claim(17, "PSL(2,16)", "PSL2(16)", AtLeast(68)),
    claim(17, "PSL(2,16):2", "PSL2(16):2", AtLeast(68)),
    claim(17, "PGammaL(2,16)", "PGammaL2(16)", AtLeast(68)),
    disputed(18, "PSL(2,17)", "PSL2(17)", AtLeast(1 << 16), JOINT_BOUND),
    disputed(18, "PGL(2,17)", "PGL2(17)", AtLeast(1 << 16), JOINT_BOUND),
    claim(20, "PSL(2,19)", "PSL2(19)", AtLeast(191)),
    claim(20, "PGL(2,19)", "PGL2(19)", AtLeast(191)),
    claim(24, "PSL(2,23)", "PSL2(23)", AtLeast(277)),
    claim(24, "PGL(2,23)", "PGL2(23)", AtLeast(277)),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Match,
    Mismatch,
    /// A budget or cap ran out; the entry is neither confirmed nor refuted.
    Skipped,
    /// Disagrees with a claim already known to be inconsistent.
    Conflict,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Match => "MATCH",
            Status::Mismatch => "MISMATCH",
            Status::Skipped => "SKIPPED",
            Status::Conflict => "CONFLICT",
        }
    }
}

/// Outcome for one group of the sum table or of the controls.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowEntry {
    pub label: String,
    pub group: String,
    pub sigma: Option<SigmaValue>,
    pub interval: Option<(u64, u64)>,
    pub elementary: Option<bool>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub sum: u64,
    pub entries: Vec<RowEntry>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimOutcome {
    pub degree: u32,
    pub label: String,
    pub group: String,
    pub claim: Claim,
    pub sigma: Option<SigmaValue>,
    pub interval: Option<(u64, u64)>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub max_sum: u64,
    pub rows: Vec<RowReport>,
    pub controls: Vec<RowEntry>,
    pub claims: Vec<ClaimOutcome>,
    pub mismatches: usize,
    pub conflicts: usize,
    pub skipped: usize,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let sigma = |s: Option<SigmaValue>, i: Option<(u64, u64)>| match (s, i) {
            (Some(s), _) => s.to_string(),
            (None, Some((lo, hi))) => format!("[{lo},{hi}]"),
            _ => "?".to_string(),
        };
        let elem = |e: Option<bool>| match e {
            Some(true) => "yes",
            Some(false) => "no",
            None => "?",
        };
        let _ = writeln!(out, "sigma-elementary groups by sum (up to {})", self.max_sum);
        for row in &self.rows {
            if row.entries.is_empty() {
                let _ = writeln!(out, "{:>4}  (none)  {}", row.sum, row.status.label());
            }
            for e in &row.entries {
                let _ = writeln!(
                    out,
                    "{:>4}  {:<12} {:<26} sigma {:<8} elementary {:<3}  {}",
                    row.sum,
                    e.label,
                    e.group,
                    sigma(e.sigma, e.interval),
                    elem(e.elementary),
                    e.status.label()
                );
            }
        }
        let _ = writeln!(out, "\ncontrols (not listed)");
        for e in &self.controls {
            let _ = writeln!(
                out,
                "      {:<26} sigma {:<8} elementary {:<3}  {}{}",
                e.group,
                sigma(e.sigma, e.interval),
                elem(e.elementary),
                e.status.label(),
                e.detail.as_deref().map(|d| format!("  ({d})")).unwrap_or_default()
            );
        }
        let _ = writeln!(out, "\nprimitive groups");
        for c in &self.claims {
            let expected = match c.claim {
                Claim::Exact(n) => format!("= {n}"),
                Claim::AtLeast(n) => format!(">= {n}"),
            };
            let _ = writeln!(
                out,
                "{:>4}  {:<14} {:<26} claimed {:<9} computed {:<8}  {}{}",
                c.degree,
                c.label,
                c.group,
                expected,
                sigma(c.sigma, c.interval),
                c.status.label(),
                c.note.as_deref().map(|d| format!("  ({d})")).unwrap_or_default()
            );
        }
        let _ =
            writeln!(out, "\n{} mismatches, {} conflicts, {} skipped", self.mismatches, self.conflicts, self.skipped);
        out
    }
}

/// What was learned about one catalog group.
#[derive(Clone, Debug)]
enum Evaluation {
    Verdict(ElementaryVerdict),
    Sigma(SigmaValue),
    Skipped { interval: Option<(u64, u64)>, reason: String },
}

impl Evaluation {
    fn sigma(&self) -> Option<SigmaValue> {
        match self {
            Evaluation::Verdict(v) => Some(v.sigma),
            Evaluation::Sigma(s) => Some(*s),
            Evaluation::Skipped { .. } => None,
        }
    }

    fn interval(&self) -> Option<(u64, u64)> {
        match self {
            Evaluation::Skipped { interval, .. } => *interval,
            _ => None,
        }
    }

    fn elementary(&self) -> Option<bool> {
        match self {
            Evaluation::Verdict(v) => Some(v.is_elementary),
            _ => None,
        }
    }
}

fn evaluate(name: &str, verdict: bool, opts: &SolveOptions) -> Result<Evaluation> {
    let group = CatalogGroup::parse(name)?.construct()?;
    let outcome = ElementTable::new(&group, opts.cap).and_then(|table| {
        if verdict {
            is_sigma_elementary(&table, opts).map(Evaluation::Verdict)
        } else {
            let r = solve_elements(&table, opts)?;
            match (r.sigma, r.interval) {
                (Some(s), _) => Ok(Evaluation::Sigma(s)),
                (None, Some((lower, upper))) => Err(Error::NodeBudget { lower, upper }),
                _ => Err(Error::Invariant("result carries neither sigma nor interval".into())),
            }
        }
    });
    match outcome {
        Ok(e) => Ok(e),
        Err(Error::NodeBudget { lower, upper }) => {
            Ok(Evaluation::Skipped { interval: Some((lower, upper)), reason: "node budget".into() })
        }
        Err(e @ (Error::OverCap { .. } | Error::IncompleteEnumeration { .. })) => {
            Ok(Evaluation::Skipped { interval: None, reason: e.to_string() })
        }
        Err(e) => Err(e),
    }
}

fn row_entry(label: &str, group: &str, eval: &Evaluation, status: Status, detail: Option<String>) -> RowEntry {
    RowEntry {
        label: label.to_string(),
        group: group.to_string(),
        sigma: eval.sigma(),
        interval: eval.interval(),
        elementary: eval.elementary(),
        status,
        detail,
    }
}

/// Computes every group of the sum table up to `max_sum`, the controls and
/// the primitive-group claims, and compares them with the listed values.
/// Groups are evaluated in parallel when `opts.threads > 1`; the report
/// does not depend on it.
pub fn paper_table_report(opts: &SolveOptions, max_sum: u64) -> Result<TableReport> {
    let rows: Vec<&SumRow> = SUM_TABLE.iter().filter(|r| r.sum <= max_sum).collect();
    // (catalog name, needs an elementary verdict)
    let mut jobs: BTreeMap<&'static str, bool> = BTreeMap::new();
    for r in &rows {
        for &(_, g) in r.groups {
            jobs.insert(g, true);
        }
    }
    for &g in CONTROLS {
        jobs.insert(g, true);
    }
    for c in CLAIMS {
        jobs.entry(c.group).or_insert(false);
    }
    let jobs: Vec<(&'static str, bool)> = jobs.into_iter().collect();
    let inner = SolveOptions { threads: 1, enumerate_limit: None, ..opts.clone() };
    let run = |&(name, verdict): &(&'static str, bool)| evaluate(name, verdict, &inner).map(|e| (name, e));
    let results: Vec<Result<(&str, Evaluation)>> = if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Invariant(e.to_string()))?;
        pool.install(|| jobs.par_iter().map(run).collect())
    } else {
        jobs.iter().map(run).collect()
    };
    let evals: BTreeMap<&str, Evaluation> = results.into_iter().collect::<Result<_>>()?;

    let mut report = TableReport {
        max_sum,
        rows: Vec::new(),
        controls: Vec::new(),
        claims: Vec::new(),
        mismatches: 0,
        conflicts: 0,
        skipped: 0,
    };
    for r in rows {
        let mut entries = Vec::new();
        for &(label, g) in r.groups {
            let eval = &evals[g];
            let (status, detail) = match eval {
                Evaluation::Skipped { reason, .. } => (Status::Skipped, Some(reason.clone())),
                e if e.sigma() == Some(SigmaValue::Finite(r.sum)) && e.elementary() == Some(true) => {
                    (Status::Match, None)
                }
                _ => (Status::Mismatch, None),
            };
            entries.push(row_entry(label, g, eval, status, detail));
        }
        let status = row_status(&entries);
        report.rows.push(RowReport { sum: r.sum, entries, status });
    }
    for &g in CONTROLS {
        let eval = &evals[g];
        let (status, detail) = match eval {
            Evaluation::Skipped { reason, .. } => (Status::Skipped, Some(reason.clone())),
            e => match (e.sigma(), e.elementary()) {
                (Some(SigmaValue::Finite(s)), Some(true)) if s <= max_sum => {
                    (Status::Mismatch, Some(format!("sigma-elementary with sum {s} but not listed")))
                }
                _ => (Status::Match, None),
            },
        };
        report.controls.push(row_entry(g, g, eval, status, detail));
    }
    for c in CLAIMS {
        let eval = &evals[c.group];
        let status = match eval.sigma() {
            None => Status::Skipped,
            Some(s) if c.claim.holds(s) => Status::Match,
            Some(_) if c.note.is_some() => Status::Conflict,
            Some(_) => Status::Mismatch,
        };
        report.claims.push(ClaimOutcome {
            degree: c.degree,
            label: c.label.to_string(),
            group: c.group.to_string(),
            claim: c.claim,
            sigma: eval.sigma(),
            interval: eval.interval(),
            status,
            note: if status == Status::Conflict { c.note.map(str::to_string) } else { None },
        });
    }
    let statuses = report
        .rows
        .iter()
        .flat_map(|r| r.entries.iter().map(|e| e.status))
        .chain(report.controls.iter().map(|e| e.status))
        .chain(report.claims.iter().map(|c| c.status));
    for s in statuses {
        match s {
            Status::Mismatch => report.mismatches += 1,
            Status::Conflict => report.conflicts += 1,
            Status::Skipped => report.skipped += 1,
            Status::Match => {}
        }
    }
    Ok(report)
}

fn row_status(entries: &[RowEntry]) -> Status {
    [Status::Mismatch, Status::Skipped]
        .into_iter()
        .find(|s| entries.iter().any(|e| e.status == *s))
        .unwrap_or(Status::Match)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_names_parse() {
        for r in SUM_TABLE {
            for &(_, g) in r.groups {
                CatalogGroup::parse(g).unwrap();
            }
        }
        for g in CONTROLS.iter().chain(CLAIMS.iter().map(|c| &c.group)) {
            CatalogGroup::parse(g).unwrap();
        }
    }

    #[test]
    fn manifest_rows_are_consecutive() {
        let sums: Vec<u64> = SUM_TABLE.iter().map(|r| r.sum).collect();
        assert_eq!(sums, (3..=25).collect::<Vec<_>>());
        for empty in [7, 11, 19, 21, 22, 25] {
            assert!(SUM_TABLE[empty as usize - 3].groups.is_empty());
        }
    }

    #[test]
    fn small_report() {
        let r = paper_table_report(&SolveOptions::default(), 6).unwrap();
        assert_eq!(r.rows.len(), 4);
        assert!(r.rows.iter().all(|row| row.status == Status::Match), "{}", r.render_text());
        assert_eq!(r.rows[2].entries[0].label, "Alt(4)");
    }

    #[test]
    fn claim_semantics() {
        assert!(Claim::Exact(3).holds(SigmaValue::Finite(3)));
        assert!(!Claim::Exact(29).holds(SigmaValue::Finite(15)));
        assert!(Claim::AtLeast(68).holds(SigmaValue::Finite(86)));
        assert!(Claim::AtLeast(68).holds(SigmaValue::Infinity));
    }
}
