mod common;

use groupcover::lattice::SubgroupLattice;
use groupcover::{catalog_sweep, sigma, CatalogGroup, ElementTable, SigmaValue, SolveOptions, DEFAULT_CAP};

#[test]
fn catalog_orders_match_naive_closure() {
    for g in catalog_sweep(20_000) {
        let group = g.construct().unwrap();
        let naive = common::closure_order(group.degree(), group.generators());
        assert_eq!(naive as u128, group.order(), "{}", g.name());
        assert_eq!(group.order(), g.expected_order(), "{}", g.name());
    }
}

#[test]
fn subgroup_counts_match_join_closure() {
    // (group, number of subgroups)
    let known = [
        ("Sym(3)", 6),
        ("Alt(4)", 10),
        ("Sym(4)", 30),
        ("Dihedral(4)", 10),
        ("ElemAbelian(2,3)", 16),
        ("Alt(5)", 59),
        ("Sym(5)", 156),
        ("PSL3(2)", 179),
    ];
    for (name, count) in known {
        let t = ElementTable::new(&CatalogGroup::parse(name).unwrap().construct().unwrap(), DEFAULT_CAP).unwrap();
        let oracle = common::all_subgroups(&t);
        assert_eq!(oracle.len(), count, "{name} (oracle)");
        let lattice = SubgroupLattice::enumerate(&t, u64::MAX).unwrap();
        assert_eq!(lattice.subgroup_count(), count - 1, "{name} (lattice, proper only)");
        let mut proper: Vec<_> = lattice.proper_subgroups(&t).iter().map(|h| h.bits().clone()).collect();
        proper.sort();
        let expected: Vec<_> = oracle.into_iter().filter(|b| b.count() < t.size()).collect();
        assert_eq!(proper, expected, "{name}");
    }
}

#[test]
fn small_groups_agree_with_brute_force() {
    let opts = SolveOptions::default();
    for g in catalog_sweep(60) {
        let group = g.construct().unwrap();
        let t = ElementTable::new(&group, DEFAULT_CAP).unwrap();
        let expected = match common::brute_force_sigma(&t) {
            Some(n) => SigmaValue::Finite(n as u64),
            None => SigmaValue::Infinity,
        };
        assert_eq!(sigma(&group, &opts).unwrap().sigma, Some(expected), "{}", g.name());
    }
}
