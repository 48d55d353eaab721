//! Subgroup machinery over an element table.
//!
//! Subgroups are found up to conjugacy by ascending join-closure: every
//! subgroup of prime order is a seed, and each class representative `H` is
//! extended by one representative of every double coset `HgH` whose
//! members include an element of prime-power order. Every subgroup is
//! generated by its prime-power elements, so this reaches all of them.

mod normal;

use rustc_hash::FxHashMap;

pub use normal::{
    associated_primitive_monolithic, center, centralizer, chief_series, derived_subgroup, frattini, is_solvable,
    min_supplement_index, minimal_normal_subgroups, normal_subgroups, quotient, socle, ChiefFactorRecord, Quotient,
};

use crate::bitset::Bitset;
use crate::catalog::is_prime;
use crate::elements::{ElemId, ElementTable};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{gcd, Permutation};
use crate::subgroup::{join, SubgroupSet};

/// Default number of join operations allowed per enumeration.
pub const DEFAULT_JOIN_BUDGET: u64 = 10_000_000;

/// The cyclic subgroups of a group, with the subgroup owning each element.
#[derive(Clone, Debug)]
pub struct CyclicSubgroups {
    pub subgroups: Vec<SubgroupSet>,
    /// `owner[x]` is the index of `<x>`.
    pub owner: Vec<u32>,
    pub maximal: Vec<bool>,
}

impl CyclicSubgroups {
    pub fn new(table: &ElementTable) -> Self {
        let n = table.size();
        let mut owner = vec![u32::MAX; n];
        let mut subgroups = Vec::new();
        for x in 0..n as ElemId {
            if owner[x as usize] != u32::MAX {
                continue;
            }
            let k = subgroups.len() as u32;
            let ord = table.order_of(x) as u64;
            let mut bits = Bitset::new(n);
            let mut p = table.identity();
            for i in 0..ord {
                bits.insert(p as usize);
                if gcd(i, ord) == 1 {
                    owner[p as usize] = k;
                }
                p = table.mul(p, x);
            }
            let gens = if x == table.identity() { Vec::new() } else { vec![x] };
            let mut c = SubgroupSet::from_parts(bits, gens);
            c.flags.cyclic = Some(true);
            subgroups.push(c);
        }
        let mut maximal = vec![true; subgroups.len()];
        for c in &subgroups {
            let Some(&y) = c.generators().first() else { continue };
            let ord = table.order_of(y) as u64;
            for p in (2..=ord).filter(|&p| ord.is_multiple_of(p) && is_prime(p as u32)) {
                maximal[owner[table.pow(y, p) as usize] as usize] = false;
            }
        }
        if n == 1 {
            maximal[0] = true;
        }
        CyclicSubgroups { subgroups, owner, maximal }
    }

    pub fn maximal_subgroups(&self) -> Vec<SubgroupSet> {
        self.subgroups.iter().zip(&self.maximal).filter(|(_, &m)| m).map(|(c, _)| c.clone()).collect()
    }
}

/// One distinct cyclic subgroup `<g>` per cyclic subgroup of the group,
/// the trivial subgroup included.
pub fn cyclic_subgroups(table: &ElementTable) -> Vec<SubgroupSet> {
    CyclicSubgroups::new(table).subgroups
}

/// Cyclic subgroups contained in no strictly larger cyclic subgroup.
pub fn maximal_cyclic_subgroups(table: &ElementTable) -> Vec<SubgroupSet> {
    CyclicSubgroups::new(table).maximal_subgroups()
}

/// A conjugacy class of proper subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub rep: SubgroupSet,
    pub orbit_len: usize,
    pub maximal: bool,
}

/// Conjugacy classes of proper subgroups, in discovery order.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    pub classes: Vec<SubgroupClass>,
    pub joins: u64,
}

impl SubgroupLattice {
    pub fn enumerate(table: &ElementTable, budget: u64) -> Result<Self> {
        Enumerator::new(table, budget).run()
    }

    /// All maximal subgroups, sorted by digest.
    pub fn maximal_subgroups(&self, table: &ElementTable) -> Vec<SubgroupSet> {
        let mut out: Vec<SubgroupSet> =
            self.classes.iter().filter(|c| c.maximal).flat_map(|c| conjugates(table, &c.rep)).collect();
        out.sort_by_key(|m| (m.digest(), m.bits().clone()));
        out
    }

    /// All proper subgroups (trivial included), sorted by order then digest.
    pub fn proper_subgroups(&self, table: &ElementTable) -> Vec<SubgroupSet> {
        let mut out: Vec<SubgroupSet> = self.classes.iter().flat_map(|c| conjugates(table, &c.rep)).collect();
        out.sort_by_key(|m| (m.order(), m.digest()));
        out
    }

    pub fn subgroup_count(&self) -> usize {
        self.classes.iter().map(|c| c.orbit_len).sum()
    }
}

/// Complete list of maximal subgroups; an error (never a truncated list) if
/// the budget runs out.
pub fn maximal_subgroups(table: &ElementTable, budget: u64) -> Result<Vec<SubgroupSet>> {
    Ok(SubgroupLattice::enumerate(table, budget)?.maximal_subgroups(table))
}

/// `g^-1 H g` for every `g`, without repetition, in breadth-first order.
pub fn conjugates(table: &ElementTable, h: &SubgroupSet) -> Vec<SubgroupSet> {
    let mut seen: FxHashMap<Bitset, ()> = FxHashMap::default();
    seen.insert(h.bits().clone(), ());
    let mut out = vec![h.clone()];
    let mut head = 0;
    while head < out.len() {
        let cur = out[head].clone();
        head += 1;
        for &s in table.generators() {
            let k = cur.conjugate(table, s);
            if seen.insert(k.bits().clone(), ()).is_none() {
                out.push(k);
            }
        }
    }
    out
}

fn conjugate_bits(table: &ElementTable, h: &SubgroupSet, c: ElemId) -> Bitset {
    let ci = table.inv(c);
    let mut bits = Bitset::new(table.size());
    for x in h.elements() {
        bits.insert(table.mul(table.mul(ci, x), c) as usize);
    }
    bits
}

struct Enumerator<'a> {
    table: &'a ElementTable,
    budget: u64,
    joins: u64,
    classes: Vec<SubgroupClass>,
    /// digest of every known subgroup -> (class, conjugator of the rep)
    known: FxHashMap<u64, Vec<(u32, ElemId)>>,
    candidates: Vec<ElemId>,
}

impl<'a> Enumerator<'a> {
    fn new(table: &'a ElementTable, budget: u64) -> Self {
        let candidates = (0..table.size() as ElemId)
            .filter(|&x| {
                let o = table.order_of(x);
                o > 1 && is_prime_power(o)
            })
            .collect();
        Enumerator { table, budget, joins: 0, classes: Vec::new(), known: FxHashMap::default(), candidates }
    }

    fn run(mut self) -> Result<SubgroupLattice> {
        let t = self.table;
        let n = t.size();
        if n == 1 {
            return Ok(SubgroupLattice { classes: Vec::new(), joins: 0 });
        }
        let trivial = SubgroupSet::trivial(t);
        self.intern(trivial);
        if is_prime(n as u32) {
            self.classes[0].maximal = true;
            return Ok(self.finish());
        }
        for x in 0..n as ElemId {
            if is_prime(t.order_of(x)) {
                self.intern(SubgroupSet::generated(t, &[x]));
            }
        }
        let mut i = 1;
        while i < self.classes.len() {
            self.extend(i)?;
            i += 1;
        }
        Ok(self.finish())
    }

    fn finish(self) -> SubgroupLattice {
        let mut classes = self.classes;
        for c in &mut classes {
            c.rep.flags.maximal = Some(c.maximal);
            c.rep.flags.normal = Some(c.orbit_len == 1);
        }
        SubgroupLattice { classes, joins: self.joins }
    }

    fn lookup(&self, k: &SubgroupSet) -> Option<u32> {
        let hits = self.known.get(&k.digest())?;
        hits.iter()
            .find(|&&(cls, c)| {
                let rep = &self.classes[cls as usize].rep;
                rep.order() == k.order() && conjugate_bits(self.table, rep, c) == *k.bits()
            })
            .map(|&(cls, _)| cls)
    }

    fn intern(&mut self, k: SubgroupSet) -> u32 {
        if let Some(cls) = self.lookup(&k) {
            return cls;
        }
        let t = self.table;
        let cls = self.classes.len() as u32;
        // orbit of k under conjugation, keyed by digest with exact checks
        let mut local: FxHashMap<u64, Vec<ElemId>> = FxHashMap::default();
        let mut conjugators = vec![t.identity()];
        local.insert(k.digest(), vec![t.identity()]);
        let mut head = 0;
        while head < conjugators.len() {
            let c = conjugators[head];
            head += 1;
            for &s in t.generators() {
                let cs = t.mul(c, s);
                let bits = conjugate_bits(t, &k, cs);
                let d = bits.digest();
                let entry = local.entry(d).or_default();
                if entry.iter().any(|&e| conjugate_bits(t, &k, e) == bits) {
                    continue;
                }
                entry.push(cs);
                conjugators.push(cs);
            }
        }
        for (d, cs) in local {
            let slot = self.known.entry(d).or_default();
            slot.extend(cs.into_iter().map(|c| (cls, c)));
        }
        let index_prime = is_prime((t.size() / k.order()) as u32);
        self.classes.push(SubgroupClass { rep: k, orbit_len: conjugators.len(), maximal: index_prime });
        cls
    }

    fn extend(&mut self, i: usize) -> Result<()> {
        if self.classes[i].maximal {
            return Ok(());
        }
        let t = self.table;
        let n = t.size() as u128;
        let h = self.classes[i].rep.clone();
        let h_gens = h.generators().to_vec();
        let h_perms: Vec<Permutation> = h.generator_perms(t);
        let mut mark = h.bits().clone();
        let mut maximal = true;
        let mut stack = Vec::new();
        for ci in 0..self.candidates.len() {
            let g = self.candidates[ci];
            if mark.contains(g as usize) {
                continue;
            }
            // mark the double coset HgH
            mark.insert(g as usize);
            stack.push(g);
            while let Some(x) = stack.pop() {
                for &s in &h_gens {
                    for y in [t.mul(s, x), t.mul(x, s)] {
                        if mark.insert(y as usize) {
                            stack.push(y);
                        }
                    }
                }
            }
            self.joins += 1;
            if self.joins > self.budget {
                return Err(Error::IncompleteEnumeration { budget: self.budget });
            }
            let mut gens = h_perms.clone();
            gens.push(t.perm(g));
            let order = PermGroup::new(t.degree(), gens).expect("same degree").order();
            if order == n {
                continue;
            }
            maximal = false;
            let k = join(t, &h, &[g], order as usize).expect("order known");
            self.intern(k);
        }
        self.classes[i].maximal = maximal;
        Ok(())
    }
}

fn is_prime_power(n: u32) -> bool {
    crate::catalog::prime_power(n).is_some()
}
