//! Covering numbers in context: σ-elementary tests, the solvable formula,
//! Klein quotients, structural audits and cycle-type counting.

mod table;

use serde::Serialize;

pub use table::{
    paper_table_report, Claim, ClaimEntry, ClaimOutcome, RowEntry, RowReport, Status, SumRow, TableReport, CLAIMS,
    CONTROLS, SUM_TABLE,
};

use crate::cover::{describe, exact_sigma, solve_elements, solve_group, SigmaResult, SigmaValue, SolveOptions};
use crate::elements::ElementTable;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::lattice::{
    center, chief_series, frattini, is_solvable, minimal_normal_subgroups, normal_subgroups, quotient, socle,
    ChiefFactorRecord, SubgroupLattice,
};
use crate::perm::lcm as lcm_of;
use crate::subgroup::{join, SubgroupSet};

/// σ of a permutation group; `Infinity` when it is cyclic.
pub fn sigma(group: &PermGroup, opts: &SolveOptions) -> Result<SigmaResult> {
    solve_group(group, opts)
}

/// σ of `G/N` for one non-trivial normal subgroup `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientSigma {
    pub normal_order: usize,
    pub normal_generators: Vec<String>,
    pub quotient_order: usize,
    pub sigma: SigmaValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementaryVerdict {
    pub is_elementary: bool,
    pub sigma: SigmaValue,
    /// Smallest normal subgroup whose quotient has the same σ.
    pub witness: Option<QuotientSigma>,
    /// Every non-trivial normal subgroup, by order.
    pub quotient_sigmas: Vec<QuotientSigma>,
}

fn is_cyclic(table: &ElementTable) -> bool {
    table.orders().iter().any(|&o| o as usize == table.size())
}

/// Decides σ-elementarity by computing σ(G/N) for every non-trivial normal N.
pub fn is_sigma_elementary(table: &ElementTable, opts: &SolveOptions) -> Result<ElementaryVerdict> {
    let opts = SolveOptions { enumerate_limit: None, ..opts.clone() };
    let sigma = exact_sigma(&solve_elements(table, &opts)?)?;
    let mut quotient_sigmas = Vec::new();
    for n in normal_subgroups(table).iter().filter(|n| n.order() > 1) {
        let q = quotient(table, n)?;
        let qt = ElementTable::new(&q.group, opts.cap)?;
        let qs = exact_sigma(&solve_elements(&qt, &opts)?)?;
        if qs < sigma {
            return Err(Error::Invariant(format!("sigma of a quotient ({qs}) is below sigma of the group ({sigma})")));
        }
        quotient_sigmas.push(QuotientSigma {
            normal_order: n.order(),
            normal_generators: describe(table, n),
            quotient_order: qt.size(),
            sigma: qs,
        });
    }
    let witness = quotient_sigmas.iter().find(|q| q.sigma <= sigma).cloned();
    Ok(ElementaryVerdict { is_elementary: witness.is_none(), sigma, witness, quotient_sigmas })
}

#[derive(Clone, Debug)]
pub struct TomkinsonResult {
    pub q: usize,
    pub sigma: u64,
    pub factor: ChiefFactorRecord,
}

/// σ of a solvable non-cyclic group as one more than the least order of a
/// chief factor with at least two complements.
pub fn tomkinson_sigma(table: &ElementTable) -> Result<TomkinsonResult> {
    if is_cyclic(table) {
        return Err(Error::Precondition("the group is cyclic".into()));
    }
    if !is_solvable(table) {
        return Err(Error::Precondition("the group is not solvable".into()));
    }
    let normals = normal_subgroups(table);
    let factor = chief_series(table, &normals, table.size())?
        .into_iter()
        .filter(|f| f.complement_count >= 2)
        .min_by_key(|f| f.factor_order)
        .ok_or_else(|| Error::Invariant("no chief factor has two complements".into()))?;
    let q = factor.factor_order;
    Ok(TomkinsonResult { q, sigma: q as u64 + 1, factor })
}

/// The subgroup generated by all squares. Its quotient is the largest
/// elementary abelian 2-quotient, so it contains the derived subgroup.
pub fn squares_subgroup(table: &ElementTable) -> SubgroupSet {
    let mut d = SubgroupSet::trivial(table);
    for x in 0..table.size() as u32 {
        let s = table.mul(x, x);
        if !d.contains(s) {
            d = join(table, &d, &[s], usize::MAX).expect("no limit");
        }
    }
    d
}

/// True iff `C2 x C2` is a quotient, i.e. the 2-rank of the
/// abelianization is at least two.
pub fn has_klein_quotient(table: &ElementTable) -> bool {
    table.size() / squares_subgroup(table).order() >= 4
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvableElementaryReport {
    pub monolithic: bool,
    pub socle_order: usize,
    pub socle_quotient_cyclic: bool,
    /// Monolithic with cyclic `G/soc(G)`.
    pub predicted: bool,
    pub verdict: ElementaryVerdict,
    /// Prediction agrees with the verdict, and σ = |soc| + 1 when elementary.
    pub consistent: bool,
}

/// Compares the monolithic/cyclic-top criterion with a direct verdict.
pub fn solvable_elementary_check(table: &ElementTable, opts: &SolveOptions) -> Result<SolvableElementaryReport> {
    if !is_solvable(table) {
        return Err(Error::Precondition("the group is not solvable".into()));
    }
    if SubgroupSet::whole(table).is_abelian(table) {
        return Err(Error::Precondition("the group is abelian".into()));
    }
    let normals = normal_subgroups(table);
    let monolithic = minimal_normal_subgroups(&normals).len() == 1;
    let soc = socle(table, &normals);
    let top = quotient(table, &soc)?;
    let top_cyclic = is_cyclic(&ElementTable::new(&top.group, opts.cap)?);
    let predicted = monolithic && top_cyclic;
    let verdict = is_sigma_elementary(table, opts)?;
    let consistent = predicted == verdict.is_elementary
        && (!verdict.is_elementary || verdict.sigma == SigmaValue::Finite(soc.order() as u64 + 1));
    Ok(SolvableElementaryReport {
        monolithic,
        socle_order: soc.order(),
        socle_quotient_cyclic: top_cyclic,
        predicted,
        verdict,
        consistent,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub frattini_order: usize,
    pub center_order: usize,
    pub abelian_minimal_normals: usize,
    pub passed: bool,
}

/// Checks `Φ(G) = Z(G) = 1` and at most one abelian minimal normal subgroup.
/// A failed check is reported as an invariant error.
pub fn structural_audit(table: &ElementTable, opts: &SolveOptions) -> Result<AuditReport> {
    let maximals = SubgroupLattice::enumerate(table, opts.join_budget)?.maximal_subgroups(table);
    let normals = normal_subgroups(table);
    let report = AuditReport {
        frattini_order: frattini(table, &maximals).order(),
        center_order: center(table).order(),
        abelian_minimal_normals: minimal_normal_subgroups(&normals).iter().filter(|n| n.is_abelian(table)).count(),
        passed: false,
    };
    let passed = report.frattini_order == 1 && report.center_order == 1 && report.abelian_minimal_normals <= 1;
    if !passed {
        return Err(Error::Invariant(format!("structural audit failed: {report:?}")));
    }
    Ok(AuditReport { passed, ..report })
}

/// Number of elements of order exactly `k` in `Sym(n)`, summed over cycle
/// types.
///
/// # Panics
/// If `n` is 0 or above 30.
pub fn count_symmetric_order_elements(n: u32, k: u64) -> u128 {
    assert!((1..=30).contains(&n), "n must lie in 1..=30");
    let mut c = CycleTypes { k, factorial: (1..=n as u128).product(), total: 0 };
    c.walk(n, n, 1, 1, 0);
    c.total
}

struct CycleTypes {
    k: u64,
    factorial: u128,
    total: u128,
}

impl CycleTypes {
    /// Parts are chosen in non-increasing order; `denom` is the centralizer
    /// order of the partial cycle type, `mult` the multiplicity of `max_part`.
    fn walk(&mut self, left: u32, max_part: u32, lcm: u64, denom: u128, mult: u32) {
        if left == 0 {
            if lcm == self.k {
                self.total += self.factorial / denom;
            }
            return;
        }
        for part in (1..=max_part.min(left)).rev() {
            let l = lcm_of(lcm, part as u64);
            if !self.k.is_multiple_of(l) {
                continue;
            }
            let m = if part == max_part { mult + 1 } else { 1 };
            self.walk(left - part, part, l, denom * part as u128 * m as u128, m);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CatalogGroup;
    use crate::elements::DEFAULT_CAP;

    fn table(g: CatalogGroup) -> ElementTable {
        ElementTable::new(&g.construct().unwrap(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn symmetric_order_counts() {
        assert_eq!(count_symmetric_order_elements(10, 21), 172_800);
        assert_eq!(count_symmetric_order_elements(3, 2), 3);
        assert_eq!(count_symmetric_order_elements(7, 7), 720);
        assert_eq!(count_symmetric_order_elements(1, 1), 1);
        let all: u128 = (1..=12).map(|k| count_symmetric_order_elements(5, k)).sum();
        assert_eq!(all, 120);
    }

    #[test]
    fn symmetric_counts_match_tables() {
        for n in 1..=6 {
            let t = table(CatalogGroup::Sym(n));
            for k in 1..=12u32 {
                assert_eq!(count_symmetric_order_elements(n, k as u64), t.count_of_order(k) as u128, "Sym({n}), {k}");
            }
        }
    }

    #[test]
    fn klein_quotients() {
        assert!(has_klein_quotient(&table(CatalogGroup::ElemAbelian(2, 2))));
        assert!(has_klein_quotient(&table(CatalogGroup::PGammaL2(9))));
        assert!(has_klein_quotient(&table(CatalogGroup::Dihedral(4))));
        assert!(!has_klein_quotient(&table(CatalogGroup::Sym(3))));
        assert!(!has_klein_quotient(&table(CatalogGroup::Sym(4))));
        assert!(!has_klein_quotient(&table(CatalogGroup::Cyclic(8))));
    }

    #[test]
    fn tomkinson_examples() {
        let cases = [(CatalogGroup::Sym(3), 3), (CatalogGroup::Dihedral(5), 5), (CatalogGroup::Alt(4), 4)];
        for (g, q) in cases {
            let r = tomkinson_sigma(&table(g)).unwrap();
            assert_eq!((r.q, r.sigma), (q, q as u64 + 1), "{}", g.name());
        }
        assert_eq!(tomkinson_sigma(&table(CatalogGroup::ElemAbelian(2, 2))).unwrap().sigma, 3);
        assert!(matches!(tomkinson_sigma(&table(CatalogGroup::Cyclic(6))), Err(Error::Precondition(_))));
        assert!(matches!(tomkinson_sigma(&table(CatalogGroup::Alt(5))), Err(Error::Precondition(_))));
    }

    #[test]
    fn elementary_verdicts() {
        let opts = SolveOptions::default();
        let v = is_sigma_elementary(&table(CatalogGroup::ElemAbelian(2, 2)), &opts).unwrap();
        assert!(v.is_elementary);
        assert_eq!(v.sigma, SigmaValue::Finite(3));

        let v = is_sigma_elementary(&table(CatalogGroup::Alt(5)), &opts).unwrap();
        assert!(v.is_elementary);
        assert_eq!(v.sigma, SigmaValue::Finite(10));
        assert_eq!(v.quotient_sigmas.len(), 1);
        assert_eq!(v.quotient_sigmas[0].sigma, SigmaValue::Infinity);

        let v = is_sigma_elementary(&table(CatalogGroup::Sym(4)), &opts).unwrap();
        assert!(!v.is_elementary);
        assert_eq!(v.sigma, SigmaValue::Finite(4));
        let w = v.witness.unwrap();
        assert_eq!((w.normal_order, w.quotient_order, w.sigma), (4, 6, SigmaValue::Finite(4)));
    }

    #[test]
    fn cyclic_groups_are_not_elementary() {
        let v = is_sigma_elementary(&table(CatalogGroup::Cyclic(5)), &SolveOptions::default()).unwrap();
        assert!(!v.is_elementary);
        assert_eq!(v.sigma, SigmaValue::Infinity);
    }

    #[test]
    fn solvable_criterion() {
        let opts = SolveOptions::default();
        let r = solvable_elementary_check(&table(CatalogGroup::Frobenius(5, 4)), &opts).unwrap();
        assert!(r.monolithic && r.socle_quotient_cyclic && r.verdict.is_elementary && r.consistent);
        assert_eq!(r.verdict.sigma, SigmaValue::Finite(6));

        let r = solvable_elementary_check(&table(CatalogGroup::AffineSemilinear(8, 7, 1)), &opts).unwrap();
        assert!(r.consistent);
        assert_eq!(r.verdict.sigma, SigmaValue::Finite(9));

        let r = solvable_elementary_check(&table(CatalogGroup::Sym(4)), &opts).unwrap();
        assert!(r.monolithic && !r.socle_quotient_cyclic && !r.predicted && !r.verdict.is_elementary && r.consistent);
    }

    #[test]
    fn audits() {
        let opts = SolveOptions::default();
        for g in [CatalogGroup::Sym(3), CatalogGroup::Agl1(7), CatalogGroup::Alt(5)] {
            assert!(structural_audit(&table(g), &opts).unwrap().passed, "{}", g.name());
        }
        let r = structural_audit(&table(CatalogGroup::Alt(5)), &opts).unwrap();
        assert_eq!(r.abelian_minimal_normals, 0);
        assert!(matches!(structural_audit(&table(CatalogGroup::Dihedral(4)), &opts), Err(Error::Invariant(_))));
    }
}
