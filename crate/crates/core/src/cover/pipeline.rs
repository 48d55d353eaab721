//! End-to-end computation of the covering number of one group.

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{
    build_instance, counting_certificates, describe, enumerate_optimal_covers, greedy_upper_bound, reduce, solve_exact,
    weighted_bound, weighted_certificate, Certificate, SigmaValue,
};
use crate::bitset::Bitset;
use crate::elements::{ElementTable, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::lattice::{SubgroupLattice, DEFAULT_JOIN_BUDGET};
use crate::subgroup::SubgroupSet;

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub cap: usize,
    pub join_budget: u64,
    pub node_budget: u64,
    /// How deep the forcing rule may recurse into maximal subgroups.
    pub forcing_depth: u32,
    /// Count minimum covers up to this many.
    pub enumerate_limit: Option<usize>,
    pub threads: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            cap: DEFAULT_CAP,
            join_budget: DEFAULT_JOIN_BUDGET,
            node_budget: 100_000_000,
            forcing_depth: 1,
            enumerate_limit: None,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverMember {
    pub order: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OptimalCount {
    Exact(usize),
    AtLeast(usize),
}

impl Serialize for OptimalCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            OptimalCount::Exact(n) => s.serialize_u64(*n as u64),
            OptimalCount::AtLeast(n) => s.serialize_str(&format!(">={n}")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub enumeration_nodes: u64,
    pub universe_rows: usize,
    pub maximal_subgroups: usize,
    pub forced: usize,
    pub subsolves: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaResult {
    pub order: u128,
    /// `None` when the node budget ran out before optimality was proven.
    pub sigma: Option<SigmaValue>,
    /// `(lower, upper)` when `sigma` is unproven.
    pub interval: Option<(u64, u64)>,
    pub cover: Vec<CoverMember>,
    pub certificates: Vec<Certificate>,
    pub unique: Option<bool>,
    pub optimal_count: Option<OptimalCount>,
    pub stats: SearchStats,
}

impl SigmaResult {
    fn infinite(order: u128) -> Self {
        SigmaResult {
            order,
            sigma: Some(SigmaValue::Infinity),
            interval: None,
            cover: Vec::new(),
            certificates: Vec::new(),
            unique: None,
            optimal_count: None,
            stats: SearchStats::default(),
        }
    }

    /// Best lower bound known for sigma.
    pub fn lower(&self) -> SigmaValue {
        match (self.sigma, self.interval) {
            (Some(s), _) => s,
            (None, Some((lo, _))) => SigmaValue::Finite(lo),
            (None, None) => SigmaValue::Finite(0),
        }
    }
}

/// Computes sigma of `group`: lattice, instance, reductions, search and,
/// on request, enumeration of all minimum covers.
pub fn solve_group(group: &PermGroup, opts: &SolveOptions) -> Result<SigmaResult> {
    let table = ElementTable::new(group, opts.cap)?;
    solve_table(&table, opts, opts.forcing_depth)
}

/// Same as [`solve_group`] for a group whose elements are already listed.
pub fn solve_elements(table: &ElementTable, opts: &SolveOptions) -> Result<SigmaResult> {
    solve_table(table, opts, opts.forcing_depth)
}

/// Like [`SigmaResult::sigma`], but an unproven value is an error.
pub fn exact_sigma(result: &SigmaResult) -> Result<SigmaValue> {
    match (result.sigma, result.interval) {
        (Some(s), _) => Ok(s),
        (None, Some((lower, upper))) => Err(Error::NodeBudget { lower, upper }),
        (None, None) => Err(Error::Invariant("result carries neither sigma nor interval".into())),
    }
}

fn is_cyclic(table: &ElementTable) -> bool {
    table.orders().iter().any(|&o| o as usize == table.size())
}

fn solve_table(table: &ElementTable, opts: &SolveOptions, depth: u32) -> Result<SigmaResult> {
    let order = table.size() as u128;
    if is_cyclic(table) {
        return Ok(SigmaResult::infinite(order));
    }
    let lattice = SubgroupLattice::enumerate(table, opts.join_budget)?;
    let maximals = lattice.maximal_subgroups(table);
    let mut inst = build_instance(table, &maximals)?;
    let mut certificates = counting_certificates(table, &maximals);
    certificates.extend(weighted_certificate(table, &inst));
    let cert_lb = certificates.iter().filter_map(|c| c.bound()).max().unwrap_or(0);

    // unique coverers first: they usually shrink the greedy cover, and the
    // forcing rule below is only as strong as the upper bound it is given
    let first = greedy_upper_bound(&inst);
    let pre = reduce(table, &mut inst, first.len() as u64, |_| Ok(None))?;
    certificates.extend(pre.certificates);
    let greedy = {
        let g = greedy_upper_bound(&inst);
        if g.len() <= first.len() {
            g
        } else {
            with_forced(&inst.forced, &first)
        }
    };
    let upper = greedy.len() as u64;
    if cert_lb > upper {
        return Err(Error::Invariant(format!("lower bound {cert_lb} exceeds a cover of size {upper}")));
    }
    log::debug!(
        "order {order}: {} rows, {} maximal subgroups, bounds [{cert_lb}, {upper}]",
        inst.rows.len(),
        inst.cols.len()
    );

    // forcing rule, evaluated per column class (in parallel when allowed)
    let reps: Vec<usize> =
        first_of_each_class(&inst.col_class).into_iter().filter(|&c| !inst.forced.contains(c)).collect();
    let verdicts: Vec<Result<Option<(SigmaValue, bool)>>> = if depth == 0 {
        reps.iter().map(|_| Ok(None)).collect()
    } else {
        let eval = |&c: &usize| subgroup_exceeds(table, &inst.cols[c], upper, opts, depth - 1);
        if opts.threads > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .map_err(|e| Error::Invariant(e.to_string()))?;
            pool.install(|| reps.par_iter().map(eval).collect())
        } else {
            reps.iter().map(eval).collect()
        }
    };
    let mut verdict_of = vec![None; inst.cols.len()];
    for (&c, v) in reps.iter().zip(verdicts) {
        verdict_of[c] = v?;
    }
    let report = reduce(table, &mut inst, upper, |c| Ok(verdict_of[c]))?;
    certificates.extend(report.certificates);

    let incumbent = {
        let g = greedy_upper_bound(&inst);
        if g.len() <= greedy.len() {
            g
        } else {
            with_forced(&inst.forced, &greedy)
        }
    };
    log::debug!("order {order}: {} columns forced, search starts at {}", inst.forced.count(), incumbent.len());
    let outcome = solve_exact(table, &inst, &incumbent, opts.node_budget);
    if !inst.is_cover(&outcome.cover) {
        return Err(Error::Invariant("search returned a non-cover".into()));
    }
    let size = outcome.cover.len() as u64;
    let lower = outcome.lower_bound.max(cert_lb);
    if lower > size {
        return Err(Error::Invariant(format!("lower bound {lower} exceeds a cover of size {size}")));
    }
    let stats = SearchStats {
        nodes: outcome.nodes,
        enumeration_nodes: 0,
        universe_rows: inst.rows.len(),
        maximal_subgroups: inst.cols.len(),
        forced: inst.forced.count(),
        subsolves: report.subsolves,
    };
    let mut result = SigmaResult {
        order,
        sigma: None,
        interval: None,
        cover: outcome.cover.iter().map(|&c| member(table, &inst.cols[c])).collect(),
        certificates,
        unique: None,
        optimal_count: None,
        stats,
    };
    if !outcome.optimal && lower < size {
        result.interval = Some((lower, size));
        return Ok(result);
    }
    result.sigma = Some(SigmaValue::Finite(size));
    if let Some(limit) = opts.enumerate_limit {
        let e = enumerate_optimal_covers(&inst, size, limit, opts.node_budget);
        result.stats.enumeration_nodes = e.nodes;
        let n = e.covers.len();
        result.optimal_count = Some(if e.complete { OptimalCount::Exact(n) } else { OptimalCount::AtLeast(n) });
        result.unique = if e.complete {
            Some(n == 1)
        } else if n > 1 {
            Some(false)
        } else {
            None
        };
        if n == 0 && e.complete {
            return Err(Error::Invariant("enumeration found no minimum cover".into()));
        }
    }
    Ok(result)
}

fn first_of_each_class(classes: &[u32]) -> Vec<usize> {
    let mut seen = vec![false; classes.len()];
    let mut out = Vec::new();
    for (c, &k) in classes.iter().enumerate() {
        if !seen[k as usize] {
            seen[k as usize] = true;
            out.push(c);
        }
    }
    out
}

fn with_forced(forced: &Bitset, cover: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = forced.iter().chain(cover.iter().copied()).collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn member(table: &ElementTable, h: &SubgroupSet) -> CoverMember {
    CoverMember { order: h.order(), generators: describe(table, h) }
}

/// `Some((bound, exact))` when sigma of the subgroup `h` is shown to exceed
/// `upper`: first by counting bounds, then (if `depth` allows and a greedy
/// cover of `h` does not already fit) by solving `h` exactly.
fn subgroup_exceeds(
    table: &ElementTable,
    h: &SubgroupSet,
    upper: u64,
    opts: &SolveOptions,
    depth: u32,
) -> Result<Option<(SigmaValue, bool)>> {
    let group = h.to_perm_group(table);
    let sub = ElementTable::new(&group, opts.cap)?;
    if is_cyclic(&sub) {
        return Ok(Some((SigmaValue::Infinity, true)));
    }
    let maximals = SubgroupLattice::enumerate(&sub, opts.join_budget)?.maximal_subgroups(&sub);
    let inst = build_instance(&sub, &maximals)?;
    let all_rows = Bitset::full(inst.rows.len());
    let all_cols = Bitset::full(inst.cols.len());
    let lb = weighted_bound(&inst, &all_rows, &all_cols).map_or(0, |(b, _)| b);
    if lb > upper {
        return Ok(Some((SigmaValue::Finite(lb), false)));
    }
    if greedy_upper_bound(&inst).len() as u64 <= upper {
        return Ok(None);
    }
    let sub_opts = SolveOptions { enumerate_limit: None, threads: 1, ..opts.clone() };
    let r = solve_table(&sub, &sub_opts, depth)?;
    Ok(match (r.sigma, r.interval) {
        (Some(s), _) if s > SigmaValue::Finite(upper) => Some((s, true)),
        (None, Some((lo, _))) if lo > upper => Some((SigmaValue::Finite(lo), false)),
        _ => None,
    })
}
