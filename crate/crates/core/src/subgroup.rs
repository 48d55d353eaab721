//! Subgroups as bit-vectors over element IDs.

use crate::bitset::Bitset;
use crate::elements::{ElemId, ElementTable};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Cached facts about a subgroup; `None` means not yet decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub normal: Option<bool>,
    pub maximal: Option<bool>,
    pub cyclic: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct SubgroupSet {
    bits: Bitset,
    order: usize,
    generators: Vec<ElemId>,
    pub flags: Flags,
}

impl PartialEq for SubgroupSet {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for SubgroupSet {}

impl SubgroupSet {
    pub fn trivial(table: &ElementTable) -> Self {
        let mut bits = Bitset::new(table.size());
        bits.insert(table.identity() as usize);
        SubgroupSet {
            bits,
            order: 1,
            generators: Vec::new(),
            flags: Flags { normal: Some(true), maximal: None, cyclic: Some(true) },
        }
    }

    pub fn whole(table: &ElementTable) -> Self {
        SubgroupSet {
            bits: Bitset::full(table.size()),
            order: table.size(),
            generators: table.generators().to_vec(),
            flags: Flags { normal: Some(true), maximal: Some(false), cyclic: None },
        }
    }

    /// Subgroup generated by `gens`.
    pub fn generated(table: &ElementTable, gens: &[ElemId]) -> Self {
        join(table, &SubgroupSet::trivial(table), gens, usize::MAX).expect("no limit")
    }

    /// Wraps a bitset already known to be a subgroup, with the given generators.
    pub(crate) fn from_parts(bits: Bitset, generators: Vec<ElemId>) -> Self {
        let order = bits.count();
        SubgroupSet { bits, order, generators, flags: Flags::default() }
    }

    /// Wraps a bitset already known to be a subgroup; generators are
    /// recomputed greedily.
    pub fn from_bits(table: &ElementTable, bits: Bitset) -> Self {
        let generators = greedy_generators(table, &bits);
        Self::from_parts(bits, generators)
    }

    #[inline]
    pub fn bits(&self) -> &Bitset {
        &self.bits
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn contains(&self, x: ElemId) -> bool {
        self.bits.contains(x as usize)
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.bits.iter().map(|x| x as ElemId)
    }

    pub fn is_subgroup_of(&self, other: &SubgroupSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_proper_in(&self, table: &ElementTable) -> bool {
        self.order < table.size()
    }

    pub fn digest(&self) -> u64 {
        self.bits.digest()
    }

    pub fn intersection(&self, table: &ElementTable, other: &SubgroupSet) -> SubgroupSet {
        SubgroupSet::from_bits(table, self.bits.intersection(&other.bits))
    }

    /// `g^-1 H g`.
    pub fn conjugate(&self, table: &ElementTable, g: ElemId) -> SubgroupSet {
        let mut bits = Bitset::new(table.size());
        for h in self.elements() {
            bits.insert(table.conj(h, g) as usize);
        }
        SubgroupSet {
            bits,
            order: self.order,
            generators: self.generators.iter().map(|&h| table.conj(h, g)).collect(),
            flags: self.flags,
        }
    }

    pub fn is_normal(&self, table: &ElementTable) -> bool {
        table.generators().iter().all(|&g| self.generators.iter().all(|&h| self.contains(table.conj(h, g))))
    }

    pub fn is_abelian(&self, table: &ElementTable) -> bool {
        self.generators.iter().enumerate().all(|(i, &a)| self.generators[i + 1..].iter().all(|&b| table.commute(a, b)))
    }

    pub fn is_cyclic(&self, table: &ElementTable) -> bool {
        self.elements().any(|x| table.order_of(x) as usize == self.order)
    }

    /// Smallest normal subgroup of the ambient group containing `self`.
    pub fn normal_closure(&self, table: &ElementTable) -> SubgroupSet {
        let mut current = self.clone();
        loop {
            let extra: Vec<ElemId> = table
                .generators()
                .iter()
                .flat_map(|&g| current.generators.iter().map(move |&h| (h, g)))
                .map(|(h, g)| table.conj(h, g))
                .filter(|&x| !current.contains(x))
                .collect();
            if extra.is_empty() {
                current.flags.normal = Some(true);
                return current;
            }
            current = join(table, &current, &extra, usize::MAX).expect("no limit");
        }
    }

    /// Generators as permutations.
    pub fn generator_perms(&self, table: &ElementTable) -> Vec<Permutation> {
        self.generators.iter().map(|&g| table.perm(g)).collect()
    }

    /// The subgroup as a standalone permutation group on the same points.
    pub fn to_perm_group(&self, table: &ElementTable) -> PermGroup {
        PermGroup::new(table.degree(), self.generator_perms(table)).expect("same degree")
    }
}

/// `<H, extra>` built coset by coset. Returns `None` as soon as the order
/// would exceed `limit`.
pub fn join(table: &ElementTable, h: &SubgroupSet, extra: &[ElemId], limit: usize) -> Option<SubgroupSet> {
    let mut bits = h.bits.clone();
    let h_elems: Vec<ElemId> = h.elements().collect();
    let mut generators = h.generators.clone();
    for &x in extra {
        if !bits.contains(x as usize) && !generators.contains(&x) {
            generators.push(x);
        }
    }
    let mut order = h.order;
    let mut reps = vec![table.identity()];
    let mut i = 0;
    while i < reps.len() {
        let x = reps[i];
        i += 1;
        for &s in &generators {
            let y = table.mul(x, s);
            if bits.contains(y as usize) {
                continue;
            }
            order += h_elems.len();
            if order > limit {
                return None;
            }
            for &e in &h_elems {
                bits.insert(table.mul(e, y) as usize);
            }
            reps.push(y);
        }
    }
    debug_assert_eq!(order, bits.count());
    Some(SubgroupSet { bits, order, generators, flags: Flags::default() })
}

/// A small generating set for the subgroup on `bits`, chosen greedily by
/// adding the smallest missing element.
pub fn greedy_generators(table: &ElementTable, bits: &Bitset) -> Vec<ElemId> {
    let mut current = SubgroupSet::trivial(table);
    let mut gens = Vec::new();
    while current.order < bits.count() {
        let x = bits.first_not_in(&current.bits).expect("proper") as ElemId;
        gens.push(x);
        current = join(table, &current, &[x], usize::MAX).expect("no limit");
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elements::DEFAULT_CAP;
    use crate::perm::parse_cycles;

    fn table(degree: usize, gens: &[&str]) -> ElementTable {
        let g = PermGroup::new(degree, gens.iter().map(|s| parse_cycles(s, degree).unwrap()).collect()).unwrap();
        ElementTable::new(&g, DEFAULT_CAP).unwrap()
    }

    fn id(t: &ElementTable, s: &str) -> ElemId {
        t.id_of(&parse_cycles(s, t.degree()).unwrap()).unwrap()
    }

    #[test]
    fn conjugating_a_transposition_subgroup() {
        let t = table(3, &["(1 2 3)", "(1 2)"]);
        let h = SubgroupSet::generated(&t, &[id(&t, "(1 2)")]);
        let k = h.conjugate(&t, id(&t, "(1 2 3)"));
        assert_eq!(k, SubgroupSet::generated(&t, &[id(&t, "(2 3)")]));
        assert_eq!(k.order(), 2);
    }

    #[test]
    fn normal_subgroups_are_fixed_by_conjugation() {
        let t = table(4, &["(1 2 3 4)", "(1 2)"]);
        let v4 = SubgroupSet::generated(&t, &[id(&t, "(1 2)(3 4)"), id(&t, "(1 3)(2 4)")]);
        assert!(v4.is_normal(&t));
        for g in 0..t.size() as ElemId {
            assert_eq!(v4.conjugate(&t, g), v4);
        }
        let c2 = SubgroupSet::generated(&t, &[id(&t, "(1 2)")]);
        assert!(!c2.is_normal(&t));
        assert_eq!(c2.normal_closure(&t).order(), 24);
        let dbl = SubgroupSet::generated(&t, &[id(&t, "(1 2)(3 4)")]);
        assert_eq!(dbl.normal_closure(&t), v4);
    }

    #[test]
    fn join_respects_limit() {
        let t = table(4, &["(1 2 3 4)", "(1 2)"]);
        let c3 = SubgroupSet::generated(&t, &[id(&t, "(1 2 3)")]);
        assert!(join(&t, &c3, &[id(&t, "(1 2)(3 4)")], 11).is_none());
        assert_eq!(join(&t, &c3, &[id(&t, "(1 2)(3 4)")], 12).unwrap().order(), 12);
    }

    #[test]
    fn greedy_generators_generate() {
        let t = table(5, &["(1 2 3 4 5)", "(1 2)"]);
        let a5 = SubgroupSet::generated(&t, &[id(&t, "(1 2 3)"), id(&t, "(3 4 5)")]);
        let gens = greedy_generators(&t, a5.bits());
        assert_eq!(SubgroupSet::generated(&t, &gens), a5);
        assert!(a5.to_perm_group(&t).order() == 60);
    }
}
