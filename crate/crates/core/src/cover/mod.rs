//! Covers of a group by maximal subgroups as a set-cover problem.
//!
//! Rows are the maximal cyclic subgroups, columns the maximal subgroups; a
//! column covers a row when it contains the row's generator, hence the
//! whole row. A set of columns covers the group iff it covers every row.

mod lp;
mod pipeline;
mod search;

use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Serialize, Serializer};

pub use pipeline::{
    exact_sigma, solve_elements, solve_group, CoverMember, OptimalCount, SearchStats, SigmaResult, SolveOptions,
};
pub use search::{enumerate_optimal_covers, solve_exact, Enumeration, SearchOutcome};

use crate::bitset::Bitset;
use crate::elements::{ElemId, ElementTable};
use crate::error::{Error, Result};
use crate::lattice::CyclicSubgroups;
use crate::perm::Permutation;
use crate::subgroup::SubgroupSet;

/// A covering number: a natural number or infinity, which sorts last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SigmaValue {
    Finite(u64),
    Infinity,
}

impl fmt::Display for SigmaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaValue::Finite(n) => write!(f, "{n}"),
            SigmaValue::Infinity => f.write_str("infinity"),
        }
    }
}

impl Serialize for SigmaValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SigmaValue::Finite(n) => s.serialize_u64(*n),
            SigmaValue::Infinity => s.serialize_str("infinity"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// `ceil(elements / max_per_subgroup)` for the elements of one order.
    CountingBound {
        order: u32,
        elements: usize,
        max_per_subgroup: usize,
        bound: u64,
    },
    /// Counting bound with integer weights on conjugacy classes of maximal
    /// cyclic subgroups: `ceil(total / max_per_subgroup)`.
    WeightedCounting {
        classes: Vec<WeightedClass>,
        total: u128,
        max_per_subgroup: u128,
        bound: u64,
    },
    ForcedSubgroup {
        order: usize,
        generators: Vec<String>,
        orbit: usize,
        reason: ForceReason,
    },
    UniqueCoverer {
        element: String,
        order: usize,
        generators: Vec<String>,
    },
}

impl Certificate {
    pub fn bound(&self) -> Option<u64> {
        match self {
            Certificate::CountingBound { bound, .. } | Certificate::WeightedCounting { bound, .. } => Some(*bound),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedClass {
    /// Generator of one maximal cyclic subgroup in the class.
    pub representative: String,
    pub element_order: u32,
    pub rows: usize,
    pub weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum ForceReason {
    /// `sigma(H)` is at least `lower`, which exceeds the upper bound on
    /// `sigma(G)`; `exact` when `lower` is `sigma(H)` itself.
    SigmaExceeds { lower: SigmaValue, upper: u64, exact: bool },
}

/// Universe rows x candidate columns with incidence and symmetry data.
#[derive(Clone, Debug)]
pub struct CoverInstance {
    pub rows: Vec<SubgroupSet>,
    pub cols: Vec<SubgroupSet>,
    /// Columns containing each row.
    pub row_cols: Vec<Bitset>,
    /// Rows contained in each column.
    pub col_rows: Vec<Bitset>,
    /// Conjugacy class of each row, numbered from 0.
    pub row_class: Vec<u32>,
    pub row_class_count: usize,
    /// Conjugacy class of each column, numbered from 0.
    pub col_class: Vec<u32>,
    pub col_normal: Vec<bool>,
    /// Permutation of the columns induced by each generator of the table.
    pub col_action: Vec<Vec<u32>>,
    /// Rows still to be covered.
    pub active_rows: Bitset,
    /// Columns proven to lie in every minimum cover.
    pub forced: Bitset,
}

impl CoverInstance {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols.len()
    }

    /// Columns of the orbit containing `c`.
    pub fn col_orbit(&self, c: usize) -> Vec<usize> {
        (0..self.cols.len()).filter(|&d| self.col_class[d] == self.col_class[c]).collect()
    }

    /// True iff the columns cover every row.
    pub fn is_cover(&self, cols: &[usize]) -> bool {
        let mut covered = Bitset::new(self.rows.len());
        for &c in cols {
            covered.union_with(&self.col_rows[c]);
        }
        covered.count() == self.rows.len()
    }

    fn cover_rows(&mut self, c: usize) {
        let rows = self.col_rows[c].clone();
        self.active_rows.difference_with(&rows);
    }
}

/// Builds the instance; rows are sorted by digest, columns keep the
/// (digest-sorted) order of `maximals`.
pub fn build_instance(table: &ElementTable, maximals: &[SubgroupSet]) -> Result<CoverInstance> {
    let cyclic = CyclicSubgroups::new(table);
    let mut rows = cyclic.maximal_subgroups();
    if rows.len() == 1 && rows[0].order() == table.size() {
        return Err(Error::Cyclic);
    }
    rows.sort_by_key(|r| (r.digest(), r.bits().clone()));
    let cols: Vec<SubgroupSet> = maximals.to_vec();

    let classes = table.conjugacy_classes();
    let mut class_ids: FxHashMap<u32, u32> = FxHashMap::default();
    let row_class: Vec<u32> = rows
        .iter()
        .map(|r| {
            let g = r.generators()[0];
            let key = r
                .elements()
                .filter(|&x| table.order_of(x) == table.order_of(g))
                .map(|x| classes.class_of[x as usize])
                .min()
                .unwrap();
            let next = class_ids.len() as u32;
            *class_ids.entry(key).or_insert(next)
        })
        .collect();

    let mut row_cols = vec![Bitset::new(cols.len()); rows.len()];
    let mut col_rows = vec![Bitset::new(rows.len()); cols.len()];
    for (r, row) in rows.iter().enumerate() {
        let g = row.generators()[0];
        for (c, col) in cols.iter().enumerate() {
            if col.contains(g) {
                row_cols[r].insert(c);
                col_rows[c].insert(r);
            }
        }
    }

    let index: FxHashMap<&Bitset, u32> = cols.iter().enumerate().map(|(i, c)| (c.bits(), i as u32)).collect();
    let col_action: Vec<Vec<u32>> = table
        .generators()
        .iter()
        .map(|&s| {
            cols.iter()
                .map(|c| {
                    *index.get(c.conjugate(table, s).bits()).expect("maximal subgroups are closed under conjugation")
                })
                .collect()
        })
        .collect();
    let mut col_class = vec![u32::MAX; cols.len()];
    let mut class_sizes = Vec::new();
    for c in 0..cols.len() {
        if col_class[c] != u32::MAX {
            continue;
        }
        let k = class_sizes.len() as u32;
        col_class[c] = k;
        let mut stack = vec![c];
        let mut size = 1;
        while let Some(x) = stack.pop() {
            for act in &col_action {
                let y = act[x] as usize;
                if col_class[y] == u32::MAX {
                    col_class[y] = k;
                    size += 1;
                    stack.push(y);
                }
            }
        }
        class_sizes.push(size);
    }
    let col_normal = col_class.iter().map(|&k| class_sizes[k as usize] == 1).collect();

    let inst = CoverInstance {
        active_rows: Bitset::full(rows.len()),
        forced: Bitset::new(cols.len()),
        row_class_count: class_ids.len(),
        rows,
        cols,
        row_cols,
        col_rows,
        row_class,
        col_class,
        col_normal,
        col_action,
    };
    if let Some(r) = (0..inst.rows.len()).find(|&r| inst.row_cols[r].is_empty()) {
        return Err(Error::Invariant(format!("row {r} lies in no maximal subgroup")));
    }
    Ok(inst)
}

/// `ceil(N_k / m_k)` for the elements of order `k`.
pub fn counting_lower_bound(table: &ElementTable, maximals: &[SubgroupSet], k: u32) -> Result<Certificate> {
    let elements = table.count_of_order(k);
    if elements == 0 {
        return Err(Error::NoElementsOfOrder(k));
    }
    let max_per_subgroup =
        maximals.iter().map(|m| m.elements().filter(|&x| table.order_of(x) == k).count()).max().unwrap_or(0);
    let bound = if max_per_subgroup == 0 { u64::MAX } else { elements.div_ceil(max_per_subgroup) as u64 };
    Ok(Certificate::CountingBound { order: k, elements, max_per_subgroup, bound })
}

/// Counting bounds for every non-trivial element order present, in
/// increasing order.
pub fn counting_certificates(table: &ElementTable, maximals: &[SubgroupSet]) -> Vec<Certificate> {
    table
        .order_histogram()
        .into_iter()
        .filter(|&(k, _)| k > 1)
        .filter_map(|(k, _)| counting_lower_bound(table, maximals, k).ok())
        .collect()
}

/// Re-derives a counting certificate from the raw element table.
pub fn verify_certificate(table: &ElementTable, inst: &CoverInstance, cert: &Certificate) -> bool {
    match cert {
        Certificate::CountingBound { order, elements, max_per_subgroup, bound } => {
            counting_lower_bound(table, &inst.cols, *order).ok()
                == Some(Certificate::CountingBound {
                    order: *order,
                    elements: *elements,
                    max_per_subgroup: *max_per_subgroup,
                    bound: *bound,
                })
        }
        Certificate::WeightedCounting { classes, total, max_per_subgroup, bound } => {
            let mut weight = vec![0u128; inst.row_class_count];
            for wc in classes {
                let Some(p) = parse_element(table, &wc.representative) else { return false };
                let Some(r) =
                    inst.rows.iter().position(|row| row.contains(p) && table.order_of(p) as usize == row.order())
                else {
                    return false;
                };
                weight[inst.row_class[r] as usize] = wc.weight as u128;
            }
            let t: u128 = (0..inst.rows.len()).map(|r| weight[inst.row_class[r] as usize]).sum();
            let m: u128 = inst
                .col_rows
                .iter()
                .map(|rows| rows.iter().map(|r| weight[inst.row_class[r] as usize]).sum::<u128>())
                .max()
                .unwrap_or(0);
            m > 0 && t == *total && m == *max_per_subgroup && *bound == t.div_ceil(m) as u64
        }
        _ => true,
    }
}

fn parse_element(table: &ElementTable, text: &str) -> Option<ElemId> {
    let p = crate::perm::parse_cycles(text, table.degree()).ok()?;
    table.id_of(&p)
}

/// Class-weighted counting bound on the rows of `uncovered` using the
/// columns of `avail`; weights come from the packing LP and the bound is
/// evaluated exactly. Returns `None` when some uncovered row has no
/// available column.
pub(crate) fn weighted_bound(inst: &CoverInstance, uncovered: &Bitset, avail: &Bitset) -> Option<(u64, Vec<u64>)> {
    let k = inst.row_class_count;
    if uncovered.is_empty() {
        return Some((0, vec![0; k]));
    }
    let mut totals = vec![0u64; k];
    for r in uncovered.iter() {
        totals[inst.row_class[r] as usize] += 1;
    }
    let mut profiles: Vec<Vec<u64>> = Vec::new();
    let mut reach = vec![false; k];
    for c in avail.iter() {
        let mut v = vec![0u64; k];
        let mut any = false;
        for r in inst.col_rows[c].iter() {
            if uncovered.contains(r) {
                v[inst.row_class[r] as usize] += 1;
                any = true;
            }
        }
        if any {
            for (i, &x) in v.iter().enumerate() {
                if x > 0 {
                    reach[i] = true;
                }
            }
            profiles.push(v);
        }
    }
    if (0..k).any(|i| totals[i] > 0 && !reach[i]) {
        return None;
    }
    profiles.sort_unstable();
    profiles.dedup();
    // drop profiles dominated componentwise by another
    let keep: Vec<&Vec<u64>> = profiles
        .iter()
        .enumerate()
        .filter(|(i, p)| {
            !profiles.iter().enumerate().any(|(j, q)| j != *i && q != *p && p.iter().zip(q.iter()).all(|(a, b)| a <= b))
        })
        .map(|(_, p)| p)
        .collect();
    let live: Vec<usize> = (0..k).filter(|&i| totals[i] > 0).collect();
    let c: Vec<f64> = live.iter().map(|&i| totals[i] as f64).collect();
    let a: Vec<Vec<f64>> = keep.iter().map(|p| live.iter().map(|&i| p[i] as f64).collect()).collect();
    let mut weights = vec![0u64; k];
    if let Some(w) = lp::max_packing(&c, &a) {
        for (j, &i) in live.iter().enumerate() {
            weights[i] = (w[j] * 1e6).round() as u64;
        }
    }
    let bound = |weights: &[u64]| -> u64 {
        let total: u128 = (0..k).map(|i| weights[i] as u128 * totals[i] as u128).sum();
        let per: u128 =
            keep.iter().map(|p| (0..k).map(|i| weights[i] as u128 * p[i] as u128).sum::<u128>()).max().unwrap_or(0);
        if per == 0 {
            0
        } else {
            total.div_ceil(per) as u64
        }
    };
    let uniform: Vec<u64> = (0..k).map(|i| u64::from(totals[i] > 0)).collect();
    let (b1, b2) = (bound(&weights), bound(&uniform));
    Some(if b1 >= b2 { (b1, weights) } else { (b2, uniform) })
}

/// The root weighted counting bound as a certificate.
pub fn weighted_certificate(table: &ElementTable, inst: &CoverInstance) -> Option<Certificate> {
    let all = Bitset::full(inst.rows.len());
    let cols = Bitset::full(inst.cols.len());
    let (bound, weights) = weighted_bound(inst, &all, &cols)?;
    let mut classes = Vec::new();
    let mut total = 0u128;
    for (k, &w) in weights.iter().enumerate() {
        let members: Vec<usize> = (0..inst.rows.len()).filter(|&r| inst.row_class[r] as usize == k).collect();
        total += w as u128 * members.len() as u128;
        if w == 0 {
            continue;
        }
        let g = inst.rows[members[0]].generators()[0];
        classes.push(WeightedClass {
            representative: table.perm(g).to_cycle_string(),
            element_order: table.order_of(g),
            rows: members.len(),
            weight: w,
        });
    }
    let max_per_subgroup = inst
        .col_rows
        .iter()
        .map(|rows| rows.iter().map(|r| weights[inst.row_class[r] as usize] as u128).sum::<u128>())
        .max()
        .unwrap_or(0);
    Some(Certificate::WeightedCounting { classes, total, max_per_subgroup, bound })
}

/// Greedy cover: forced columns first, then repeatedly the column covering
/// the most uncovered rows (lowest index on ties).
pub fn greedy_upper_bound(inst: &CoverInstance) -> Vec<usize> {
    let mut chosen: Vec<usize> = inst.forced.iter().collect();
    let mut uncovered = Bitset::full(inst.rows.len());
    for &c in &chosen {
        uncovered.difference_with(&inst.col_rows[c]);
    }
    while !uncovered.is_empty() {
        let (best, _) = (0..inst.cols.len())
            .map(|c| (c, inst.col_rows[c].intersection_count(&uncovered)))
            .max_by_key(|&(c, n)| (n, std::cmp::Reverse(c)))
            .expect("non-empty instance");
        chosen.push(best);
        uncovered.difference_with(&inst.col_rows[best]);
    }
    chosen.sort_unstable();
    chosen
}

/// What [`reduce`] established.
#[derive(Clone, Debug, Default)]
pub struct Reduction {
    pub certificates: Vec<Certificate>,
    pub removed_rows: usize,
    pub subsolves: usize,
}

/// Forces columns that lie in every minimum cover and drops rows that are
/// covered or implied by other rows. `sigma_exceeds` decides the
/// subgroup rule: called once per column class with a representative
/// column, it returns a lower bound for the covering number of that
/// subgroup when the bound exceeds `upper_bound`.
pub fn reduce(
    table: &ElementTable,
    inst: &mut CoverInstance,
    upper_bound: u64,
    mut sigma_exceeds: impl FnMut(usize) -> Result<Option<(SigmaValue, bool)>>,
) -> Result<Reduction> {
    let mut report = Reduction::default();
    let mut seen_class = vec![false; inst.cols.len()];
    for c in 0..inst.cols.len() {
        let k = inst.col_class[c] as usize;
        if seen_class[k] || inst.forced.contains(c) {
            continue;
        }
        seen_class[k] = true;
        report.subsolves += 1;
        if let Some((lower, exact)) = sigma_exceeds(c)? {
            let orbit = inst.col_orbit(c);
            for &d in &orbit {
                inst.forced.insert(d);
                inst.cover_rows(d);
            }
            report.certificates.push(Certificate::ForcedSubgroup {
                order: inst.cols[c].order(),
                generators: describe(table, &inst.cols[c]),
                orbit: orbit.len(),
                reason: ForceReason::SigmaExceeds { lower, upper: upper_bound, exact },
            });
        }
    }
    loop {
        let mut changed = false;
        for r in 0..inst.rows.len() {
            if !inst.active_rows.contains(r) || inst.row_cols[r].count() != 1 {
                continue;
            }
            let c = inst.row_cols[r].first().unwrap();
            if !inst.forced.contains(c) {
                inst.forced.insert(c);
                report.certificates.push(Certificate::UniqueCoverer {
                    element: table.perm(inst.rows[r].generators()[0]).to_cycle_string(),
                    order: inst.cols[c].order(),
                    generators: describe(table, &inst.cols[c]),
                });
            }
            inst.cover_rows(c);
            changed = true;
        }
        let before = inst.active_rows.count();
        let active: Vec<usize> = inst.active_rows.iter().collect();
        for &r2 in &active {
            let dominated = active.iter().any(|&r1| {
                r1 != r2
                    && inst.active_rows.contains(r1)
                    && inst.row_cols[r1].is_subset(&inst.row_cols[r2])
                    && (inst.row_cols[r1] != inst.row_cols[r2] || r1 < r2)
            });
            if dominated {
                inst.active_rows.remove(r2);
            }
        }
        report.removed_rows += before - inst.active_rows.count();
        if !changed {
            break;
        }
    }
    let forced = inst.forced.count() as u64;
    if forced > upper_bound {
        return Err(Error::Invariant(format!("{forced} forced subgroups exceed the upper bound {upper_bound}")));
    }
    Ok(report)
}

/// Generators of a subgroup in cycle notation, reduced greedily.
pub fn describe(table: &ElementTable, h: &SubgroupSet) -> Vec<String> {
    crate::subgroup::greedy_generators(table, h.bits()).iter().map(|&g| table.perm(g).to_cycle_string()).collect()
}

/// Outcome of [`verify_cover`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverCheck {
    Valid,
    /// The subgroup at this position is the whole group.
    NotProper {
        index: usize,
    },
    /// An element lying in none of the subgroups.
    Uncovered {
        element: Permutation,
    },
}

/// Checks that every listed subgroup is proper and that together they
/// contain every element.
pub fn verify_cover(table: &ElementTable, subgroups: &[Vec<Permutation>]) -> Result<CoverCheck> {
    let mut union = Bitset::new(table.size());
    for (i, gens) in subgroups.iter().enumerate() {
        let ids: Vec<ElemId> = gens
            .iter()
            .map(|p| table.id_of(p).ok_or_else(|| Error::NotInGroup(p.to_cycle_string())))
            .collect::<Result<_>>()?;
        let h = SubgroupSet::generated(table, &ids);
        if h.order() == table.size() {
            return Ok(CoverCheck::NotProper { index: i });
        }
        union.union_with(h.bits());
    }
    match Bitset::full(table.size()).first_not_in(&union) {
        Some(x) => Ok(CoverCheck::Uncovered { element: table.perm(x as ElemId) }),
        None => Ok(CoverCheck::Valid),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CatalogGroup;
    use crate::elements::DEFAULT_CAP;
    use crate::lattice::{maximal_subgroups, DEFAULT_JOIN_BUDGET};

    fn setup(g: CatalogGroup) -> (ElementTable, CoverInstance) {
        let t = ElementTable::new(&g.construct().unwrap(), DEFAULT_CAP).unwrap();
        let m = maximal_subgroups(&t, DEFAULT_JOIN_BUDGET).unwrap();
        let inst = build_instance(&t, &m).unwrap();
        (t, inst)
    }

    #[test]
    fn klein_instance_is_identity() {
        let (_, inst) = setup(CatalogGroup::ElemAbelian(2, 2));
        assert_eq!((inst.row_count(), inst.col_count()), (3, 3));
        for r in 0..3 {
            assert_eq!(inst.row_cols[r].count(), 1);
        }
        assert_eq!(greedy_upper_bound(&inst).len(), 3);
    }

    #[test]
    fn alt5_instance_shape() {
        let (t, inst) = setup(CatalogGroup::Alt(5));
        assert_eq!((inst.row_count(), inst.col_count()), (31, 21));
        let w = weighted_certificate(&t, &inst).unwrap();
        assert!(verify_certificate(&t, &inst, &w));
        assert!(w.bound().unwrap() <= 10);
    }

    #[test]
    fn cyclic_is_refused() {
        let t = ElementTable::new(&CatalogGroup::Cyclic(6).construct().unwrap(), DEFAULT_CAP).unwrap();
        let m = maximal_subgroups(&t, DEFAULT_JOIN_BUDGET).unwrap();
        assert_eq!(build_instance(&t, &m).unwrap_err(), Error::Cyclic);
    }

    #[test]
    fn counting_bound_trivial_order() {
        let (t, inst) = setup(CatalogGroup::Sym(4));
        let c = counting_lower_bound(&t, &inst.cols, 1).unwrap();
        assert_eq!(c.bound(), Some(1));
        assert!(verify_certificate(&t, &inst, &c));
        assert_eq!(counting_lower_bound(&t, &inst.cols, 5).unwrap_err(), Error::NoElementsOfOrder(5));
    }

    #[test]
    fn unique_coverers_force_klein() {
        let (t, mut inst) = setup(CatalogGroup::ElemAbelian(2, 2));
        let report = reduce(&t, &mut inst, 3, |_| Ok(None)).unwrap();
        assert_eq!(inst.forced.count(), 3);
        assert_eq!(report.certificates.len(), 3);
        assert!(inst.active_rows.is_empty());
        // idempotent
        let again = reduce(&t, &mut inst, 3, |_| Ok(None)).unwrap();
        assert!(again.certificates.is_empty());
        assert_eq!(inst.forced.count(), 3);
    }

    #[test]
    fn verify_klein_covers() {
        let t = ElementTable::new(&CatalogGroup::ElemAbelian(2, 2).construct().unwrap(), DEFAULT_CAP).unwrap();
        let p = |s: &str| crate::perm::parse_cycles(s, 4).unwrap();
        let three = vec![vec![p("(1 2)")], vec![p("(3 4)")], vec![p("(1 2)(3 4)")]];
        assert_eq!(verify_cover(&t, &three).unwrap(), CoverCheck::Valid);
        let two = &three[..2];
        assert_eq!(verify_cover(&t, two).unwrap(), CoverCheck::Uncovered { element: p("(1 2)(3 4)") });
        let whole = vec![vec![p("(1 2)"), p("(3 4)")]];
        assert_eq!(verify_cover(&t, &whole).unwrap(), CoverCheck::NotProper { index: 0 });
        assert!(matches!(verify_cover(&t, &[vec![p("(1 3)")]]), Err(Error::NotInGroup(_))));
    }
}
