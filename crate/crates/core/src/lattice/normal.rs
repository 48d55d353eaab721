//! Normal subgroups, quotients, chief series and related constructions.

use rustc_hash::FxHashSet;

use super::{SubgroupLattice, DEFAULT_JOIN_BUDGET};
use crate::bitset::Bitset;
use crate::elements::{ElemId, ElementTable};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::subgroup::{join, SubgroupSet};

/// All normal subgroups, trivial and whole group included, sorted by order
/// then digest.
pub fn normal_subgroups(table: &ElementTable) -> Vec<SubgroupSet> {
    let mut seen: FxHashSet<Bitset> = FxHashSet::default();
    let mut list = Vec::new();
    let mut push = |n: SubgroupSet, list: &mut Vec<SubgroupSet>| {
        if seen.insert(n.bits().clone()) {
            list.push(n);
        }
    };
    push(SubgroupSet::trivial(table), &mut list);
    let classes = table.conjugacy_classes();
    for &x in &classes.reps {
        if x != table.identity() {
            push(SubgroupSet::generated(table, &[x]).normal_closure(table), &mut list);
        }
    }
    let mut done = 0;
    while done < list.len() {
        let b = list[done].clone();
        for i in 0..done {
            let product = join(table, &list[i], b.generators(), usize::MAX).expect("no limit");
            push(product, &mut list);
        }
        done += 1;
    }
    for n in &mut list {
        n.flags.normal = Some(true);
    }
    list.sort_by_key(|n| (n.order(), n.digest()));
    list
}

/// Non-trivial normal subgroups containing no smaller non-trivial normal
/// subgroup; `normals` as returned by [`normal_subgroups`].
pub fn minimal_normal_subgroups(normals: &[SubgroupSet]) -> Vec<SubgroupSet> {
    let nontrivial: Vec<&SubgroupSet> = normals.iter().filter(|n| n.order() > 1).collect();
    nontrivial
        .iter()
        .filter(|n| !nontrivial.iter().any(|m| m.order() < n.order() && m.is_subgroup_of(n)))
        .map(|n| (*n).clone())
        .collect()
}

pub fn socle(table: &ElementTable, normals: &[SubgroupSet]) -> SubgroupSet {
    minimal_normal_subgroups(normals)
        .iter()
        .fold(SubgroupSet::trivial(table), |acc, n| join(table, &acc, n.generators(), usize::MAX).expect("no limit"))
}

pub fn center(table: &ElementTable) -> SubgroupSet {
    SubgroupSet::from_bits(table, table.center_bits())
}

/// Elements commuting with every element of `h`.
pub fn centralizer(table: &ElementTable, h: &SubgroupSet) -> SubgroupSet {
    let gens = h.generators();
    let bits = Bitset::from_indices(
        table.size(),
        (0..table.size() as ElemId).filter(|&x| gens.iter().all(|&g| table.commute(x, g))).map(|x| x as usize),
    );
    SubgroupSet::from_bits(table, bits)
}

/// Intersection of the given maximal subgroups (the whole group if none).
pub fn frattini(table: &ElementTable, maximals: &[SubgroupSet]) -> SubgroupSet {
    let mut bits = Bitset::full(table.size());
    for m in maximals {
        bits.intersect_with(m.bits());
    }
    SubgroupSet::from_bits(table, bits)
}

/// Smallest subgroup containing `seeds` and normalized by `ambient`.
fn normal_closure_in(table: &ElementTable, seeds: &[ElemId], ambient: &[ElemId]) -> SubgroupSet {
    let mut current = SubgroupSet::generated(table, seeds);
    loop {
        let extra: Vec<ElemId> = ambient
            .iter()
            .flat_map(|&g| current.generators().iter().map(move |&h| (h, g)))
            .map(|(h, g)| table.conj(h, g))
            .filter(|&x| !current.contains(x))
            .collect();
        if extra.is_empty() {
            return current;
        }
        current = join(table, &current, &extra, usize::MAX).expect("no limit");
    }
}

/// Commutator subgroup of `h`.
pub fn derived_subgroup(table: &ElementTable, h: &SubgroupSet) -> SubgroupSet {
    let gens = h.generators();
    let mut commutators = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let c = table.mul(table.mul(table.inv(a), table.inv(b)), table.mul(a, b));
            if c != table.identity() {
                commutators.push(c);
            }
        }
    }
    normal_closure_in(table, &commutators, gens)
}

/// True iff the derived series of the whole group reaches the identity.
pub fn is_solvable(table: &ElementTable) -> bool {
    let mut h = SubgroupSet::whole(table);
    loop {
        if h.order() == 1 {
            return true;
        }
        let d = derived_subgroup(table, &h);
        if d.order() == h.order() {
            return false;
        }
        h = d;
    }
}

/// Action of the group on the right cosets of a normal subgroup.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: PermGroup,
    /// Coset index of every element.
    pub coset_of: Vec<u32>,
    pub reps: Vec<ElemId>,
}

impl Quotient {
    /// Image of an element as a permutation of the cosets.
    pub fn image(&self, table: &ElementTable, x: ElemId) -> Permutation {
        let images = self.reps.iter().map(|&r| self.coset_of[table.mul(r, x) as usize]).collect();
        Permutation::from_images(images).expect("coset action is a bijection")
    }
}

pub fn quotient(table: &ElementTable, n: &SubgroupSet) -> Result<Quotient> {
    if !n.is_normal(table) {
        return Err(Error::NotNormal);
    }
    let mut coset_of = vec![u32::MAX; table.size()];
    let mut reps = Vec::new();
    let n_elems: Vec<ElemId> = n.elements().collect();
    for x in 0..table.size() as ElemId {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &m in &n_elems {
            coset_of[table.mul(m, x) as usize] = c;
        }
    }
    let mut q = Quotient { group: PermGroup::trivial(reps.len()), coset_of, reps };
    let gens: Vec<Permutation> =
        table.generators().iter().map(|&g| q.image(table, g)).filter(|p| !p.is_identity()).collect();
    q.group = PermGroup::new(q.reps.len(), gens)?;
    Ok(q)
}

/// One step `K < S` of a chief series.
#[derive(Clone, Debug)]
pub struct ChiefFactorRecord {
    pub s: SubgroupSet,
    pub k: SubgroupSet,
    pub factor_order: usize,
    /// Number of subgroups `H` with `HS = G` and `H ∩ S = K`.
    pub complement_count: usize,
}

/// A chief series from the bottom up, built greedily from the top by
/// repeatedly taking the largest normal subgroup below the current one.
/// Complements are counted in `G/K` by exhaustive subgroup search.
pub fn chief_series(table: &ElementTable, normals: &[SubgroupSet], cap: usize) -> Result<Vec<ChiefFactorRecord>> {
    let mut chain = vec![SubgroupSet::whole(table)];
    loop {
        let cur = chain.last().unwrap();
        if cur.order() == 1 {
            break;
        }
        let next = normals
            .iter()
            .filter(|n| n.order() < cur.order() && n.is_subgroup_of(cur))
            .max_by_key(|n| (n.order(), std::cmp::Reverse(n.digest())))
            .expect("trivial subgroup is normal")
            .clone();
        chain.push(next);
    }
    chain.reverse();
    let mut lattice = None;
    let mut out = Vec::new();
    for pair in chain.windows(2) {
        let (k, s) = (&pair[0], &pair[1]);
        let complement_count = if s.order() == table.size() {
            1
        } else if abelian_modulo(table, s, k) {
            // complements of an abelian chief factor are the maximal
            // subgroups containing K but not S
            let lattice = match &mut lattice {
                Some(l) => l,
                None => lattice.insert(SubgroupLattice::enumerate(table, DEFAULT_JOIN_BUDGET)?),
            };
            lattice
                .classes
                .iter()
                .filter(|c| c.maximal && k.is_subgroup_of(&c.rep) && !s.is_subgroup_of(&c.rep))
                .map(|c| c.orbit_len)
                .sum()
        } else {
            count_complements(table, s, k, cap)?
        };
        out.push(ChiefFactorRecord {
            s: s.clone(),
            k: k.clone(),
            factor_order: s.order() / k.order(),
            complement_count,
        });
    }
    Ok(out)
}

fn abelian_modulo(table: &ElementTable, s: &SubgroupSet, k: &SubgroupSet) -> bool {
    let gens = s.generators();
    gens.iter().all(|&a| {
        gens.iter().all(|&b| {
            let ab = table.mul(a, b);
            let ba = table.mul(b, a);
            k.contains(table.mul(table.inv(ba), ab))
        })
    })
}

fn count_complements(table: &ElementTable, s: &SubgroupSet, k: &SubgroupSet, cap: usize) -> Result<usize> {
    let q = quotient(table, k)?;
    let qt = ElementTable::new(&q.group, cap)?;
    let s_gens: Vec<ElemId> =
        s.generators().iter().map(|&x| qt.id_of(&q.image(table, x)).expect("image lies in the quotient")).collect();
    let s_bar = SubgroupSet::generated(&qt, &s_gens);
    let target = qt.size() / s_bar.order();
    let lattice = SubgroupLattice::enumerate(&qt, DEFAULT_JOIN_BUDGET)?;
    Ok(lattice
        .proper_subgroups(&qt)
        .iter()
        .filter(|h| h.order() == target && h.bits().intersection_count(s_bar.bits()) == 1)
        .count())
}

/// Least index of a proper supplement of `n`, i.e. of a maximal subgroup
/// not containing it.
pub fn min_supplement_index(table: &ElementTable, maximals: &[SubgroupSet], n: &SubgroupSet) -> Result<usize> {
    maximals.iter().filter(|m| !n.is_subgroup_of(m)).map(|m| table.size() / m.order()).min().ok_or(Error::NoSupplement)
}

/// The primitive monolithic group attached to a minimal normal subgroup
/// `n`: `G/C_G(N)` when `n` is non-abelian, otherwise `N ⋊ H/C_H(N)` acting
/// affinely on the points of `N`, for a complement `H`.
pub fn associated_primitive_monolithic(
    table: &ElementTable,
    maximals: &[SubgroupSet],
    n: &SubgroupSet,
) -> Result<PermGroup> {
    if !n.is_abelian(table) {
        let c = centralizer(table, n);
        return Ok(quotient(table, &c)?.group);
    }
    let h = maximals.iter().find(|m| m.bits().intersection_count(n.bits()) == 1).ok_or(Error::NoComplement)?;
    let points: Vec<ElemId> = n.elements().collect();
    let index = |x: ElemId| points.binary_search(&x).expect("closed") as u32;
    let mut gens = Vec::new();
    for &m in n.generators() {
        gens.push(Permutation::from_images(points.iter().map(|&p| index(table.mul(p, m))).collect()).unwrap());
    }
    for &g in h.generators() {
        let p = Permutation::from_images(points.iter().map(|&x| index(table.conj(x, g))).collect()).unwrap();
        if !p.is_identity() {
            gens.push(p);
        }
    }
    PermGroup::new(points.len(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CatalogGroup;
    use crate::elements::DEFAULT_CAP;
    use crate::lattice::maximal_subgroups;

    fn table(g: CatalogGroup) -> ElementTable {
        ElementTable::new(&g.construct().unwrap(), DEFAULT_CAP).unwrap()
    }

    fn orders(list: &[SubgroupSet]) -> Vec<usize> {
        list.iter().map(|h| h.order()).collect()
    }

    #[test]
    fn normal_lattices() {
        assert_eq!(orders(&normal_subgroups(&table(CatalogGroup::Alt(5)))), vec![1, 60]);
        assert_eq!(orders(&normal_subgroups(&table(CatalogGroup::Sym(3)))), vec![1, 3, 6]);
        assert_eq!(orders(&normal_subgroups(&table(CatalogGroup::Sym(4)))), vec![1, 4, 12, 24]);
        assert_eq!(normal_subgroups(&table(CatalogGroup::ElemAbelian(3, 2))).len(), 6);
    }

    #[test]
    fn socle_of_alt4() {
        let t = table(CatalogGroup::Alt(4));
        assert_eq!(socle(&t, &normal_subgroups(&t)).order(), 4);
    }

    #[test]
    fn frattini_examples() {
        let t = table(CatalogGroup::Sym(3));
        assert_eq!(frattini(&t, &maximal_subgroups(&t, DEFAULT_JOIN_BUDGET).unwrap()).order(), 1);
        let t = table(CatalogGroup::Cyclic(4));
        assert_eq!(frattini(&t, &maximal_subgroups(&t, DEFAULT_JOIN_BUDGET).unwrap()).order(), 2);
    }

    #[test]
    fn quotient_sym4_by_klein() {
        let t = table(CatalogGroup::Sym(4));
        let v4 = normal_subgroups(&t).into_iter().find(|n| n.order() == 4).unwrap();
        let q = quotient(&t, &v4).unwrap();
        assert_eq!(q.group.order(), 6);
        let qt = ElementTable::new(&q.group, DEFAULT_CAP).unwrap();
        assert!(!SubgroupSet::whole(&qt).is_abelian(&qt));
        assert_eq!(quotient(&t, &SubgroupSet::whole(&t)).unwrap().group.order(), 1);
    }

    #[test]
    fn quotient_requires_normality() {
        let t = table(CatalogGroup::Sym(3));
        let c2 = SubgroupSet::generated(&t, &[t.generators()[1]]);
        let c2 = if c2.order() == 2 { c2 } else { SubgroupSet::generated(&t, &[t.generators()[0]]) };
        assert_eq!(quotient(&t, &c2).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn chief_series_sym4() {
        let t = table(CatalogGroup::Sym(4));
        let series = chief_series(&t, &normal_subgroups(&t), DEFAULT_CAP).unwrap();
        let factors: Vec<(usize, usize)> = series.iter().map(|f| (f.factor_order, f.complement_count)).collect();
        assert_eq!(factors, vec![(4, 4), (3, 3), (2, 1)]);
    }

    #[test]
    fn chief_series_dihedral() {
        let t = table(CatalogGroup::Dihedral(5));
        let series = chief_series(&t, &normal_subgroups(&t), DEFAULT_CAP).unwrap();
        let factors: Vec<(usize, usize)> = series.iter().map(|f| (f.factor_order, f.complement_count)).collect();
        assert_eq!(factors, vec![(5, 5), (2, 1)]);
    }

    #[test]
    fn solvability() {
        assert!(is_solvable(&table(CatalogGroup::Sym(4))));
        assert!(!is_solvable(&table(CatalogGroup::Alt(5))));
        assert!(is_solvable(&table(CatalogGroup::Agl1(8))));
    }

    #[test]
    fn supplements() {
        let t = table(CatalogGroup::Agl1(5));
        let m = maximal_subgroups(&t, DEFAULT_JOIN_BUDGET).unwrap();
        let soc = socle(&t, &normal_subgroups(&t));
        assert_eq!(min_supplement_index(&t, &m, &soc).unwrap(), 5);
        let t = table(CatalogGroup::Sym(5));
        let m = maximal_subgroups(&t, DEFAULT_JOIN_BUDGET).unwrap();
        let a5 = normal_subgroups(&t).into_iter().find(|n| n.order() == 60).unwrap();
        assert_eq!(min_supplement_index(&t, &m, &a5).unwrap(), 5);
        let t = table(CatalogGroup::Cyclic(4));
        let m = maximal_subgroups(&t, DEFAULT_JOIN_BUDGET).unwrap();
        let c2 = normal_subgroups(&t).into_iter().find(|n| n.order() == 2).unwrap();
        assert_eq!(min_supplement_index(&t, &m, &c2).unwrap_err(), Error::NoSupplement);
    }

    #[test]
    fn primitive_monolithic() {
        let t = table(CatalogGroup::Sym(4));
        let m = maximal_subgroups(&t, DEFAULT_JOIN_BUDGET).unwrap();
        let v4 = normal_subgroups(&t).into_iter().find(|n| n.order() == 4).unwrap();
        let x = associated_primitive_monolithic(&t, &m, &v4).unwrap();
        assert_eq!((x.order(), x.degree()), (24, 4));
        assert_eq!(centralizer(&t, &v4), v4);
        let t = table(CatalogGroup::Alt(5));
        let m = maximal_subgroups(&t, DEFAULT_JOIN_BUDGET).unwrap();
        let x = associated_primitive_monolithic(&t, &m, &SubgroupSet::whole(&t)).unwrap();
        assert_eq!(x.order(), 60);
    }
}
