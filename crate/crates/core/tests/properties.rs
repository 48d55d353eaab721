use std::collections::BTreeSet;

use groupcover::{
    parse_cycles, parse_group_file, sigma, verify_cover, Bitset, CatalogGroup, CoverCheck, ElementTable, GroupSpec,
    Permutation, SigmaValue, SolveOptions, DEFAULT_CAP,
};
use proptest::prelude::*;
use proptest::sample::select;

fn perm(max_degree: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_degree)
        .prop_flat_map(|n| Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

fn perm_pair(max_degree: usize) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1..=max_degree).prop_flat_map(|n| {
        let one = || {
            Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
        };
        (one(), one(), one())
    })
}

const SMALL: &[&str] = &[
    "ElemAbelian(2,2)",
    "ElemAbelian(3,2)",
    "Sym(3)",
    "Alt(4)",
    "Sym(4)",
    "Dihedral(5)",
    "Dihedral(6)",
    "Dihedral(12)",
    "AGL1(5)",
    "Frobenius(7,3)",
    "AGL1(8)",
    "AGL1(9)",
    "Alt(5)",
    "ElemAbelian(2,3)",
    "Cyclic(10)",
];

proptest! {
    #[test]
    fn composition_is_associative_with_inverses((a, b, c) in perm_pair(12)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert!(a.inverse().then(&a).is_identity());
        for x in 0..a.degree() as u32 {
            prop_assert_eq!(a.then(&b).apply(x), b.apply(a.apply(x)));
        }
    }

    #[test]
    fn order_matches_cycle_type(p in perm(14)) {
        let lcm = p.cycle_type().iter().fold(1u64, |acc, &l| groupcover::perm::lcm(acc, l as u64));
        prop_assert_eq!(p.order(), lcm);
        prop_assert!(p.pow(p.order()).is_identity());
        prop_assert_eq!(p.cycle_type().iter().sum::<usize>(), p.degree());
    }

    #[test]
    fn cycle_notation_round_trips(p in perm(16)) {
        let text = p.to_cycle_string();
        prop_assert_eq!(parse_cycles(&text, p.degree()).unwrap(), p.clone());
        let one_based = Permutation::from_one_based(&p.one_based_images()).unwrap();
        prop_assert_eq!(one_based, p);
    }

    #[test]
    fn group_files_round_trip(gens in prop::collection::vec(perm(9), 1..4)) {
        let degree = gens.iter().map(|g| g.degree()).max().unwrap();
        let gens: Vec<Permutation> = gens
            .into_iter()
            .map(|g| {
                let mut images = g.images().to_vec();
                images.extend(g.degree() as u32..degree as u32);
                Permutation::from_images(images).unwrap()
            })
            .collect();
        let spec = GroupSpec::from_generators(degree, gens);
        let back = parse_group_file(&format!("# generated\n{}", spec.render())).unwrap();
        prop_assert_eq!(back.render(), spec.render());
    }

    #[test]
    fn bitset_ops_match_sets(
        a in prop::collection::btree_set(0usize..200, 0..80),
        b in prop::collection::btree_set(0usize..200, 0..80),
    ) {
        let bits = |s: &BTreeSet<usize>| Bitset::from_indices(200, s.iter().copied());
        let (x, y) = (bits(&a), bits(&b));
        let mut u = x.clone();
        u.union_with(&y);
        prop_assert_eq!(u.iter().collect::<BTreeSet<_>>(), a.union(&b).copied().collect());
        prop_assert_eq!(x.intersection(&y).iter().collect::<BTreeSet<_>>(), a.intersection(&b).copied().collect());
        prop_assert_eq!(x.intersection_count(&y), a.intersection(&b).count());
        let mut d = x.clone();
        d.difference_with(&y);
        prop_assert_eq!(d.iter().collect::<BTreeSet<_>>(), a.difference(&b).copied().collect());
        prop_assert_eq!(x.is_subset(&y), a.is_subset(&b));
        prop_assert_eq!(x.intersects(&y), !a.is_disjoint(&b));
        prop_assert_eq!(x.count(), a.len());
        prop_assert_eq!(x.first(), a.first().copied());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn covers_are_valid_and_irredundant(name in select(SMALL)) {
        let group = CatalogGroup::parse(name).unwrap().construct().unwrap();
        let t = ElementTable::new(&group, DEFAULT_CAP).unwrap();
        let r = sigma(&group, &SolveOptions::default()).unwrap();
        let covers: Vec<Vec<Permutation>> = r
            .cover
            .iter()
            .map(|m| m.generators.iter().map(|g| parse_cycles(g, group.degree()).unwrap()).collect())
            .collect();
        match r.sigma.unwrap() {
            SigmaValue::Infinity => prop_assert!(covers.is_empty()),
            SigmaValue::Finite(n) => {
                prop_assert_eq!(covers.len() as u64, n);
                prop_assert_eq!(verify_cover(&t, &covers).unwrap(), CoverCheck::Valid);
                for skip in 0..covers.len() {
                    let mut fewer = covers.clone();
                    fewer.remove(skip);
                    let dropped = verify_cover(&t, &fewer).unwrap();
                    prop_assert!(matches!(dropped, CoverCheck::Uncovered { .. }), "{} still covers without member {}", name, skip);
                }
            }
        }
    }
}
