//! Brute-force oracles shared by the integration tests.
//!
//! Nothing here touches the lattice or the cover solver: subgroups come from
//! closing cyclic subgroups under joins, covers from a plain exact search
//! over element sets.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use groupcover::{Bitset, ElemId, ElementTable, Permutation};

/// Order of the group generated by `gens`, by breadth-first closure on raw
/// image vectors.
pub fn closure_order(degree: usize, gens: &[Permutation]) -> usize {
    let identity: Vec<u32> = (0..degree as u32).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<u32> = x.iter().map(|&i| g.images()[i as usize]).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

struct Sub {
    bits: Bitset,
    gens: Vec<ElemId>,
}

fn close(table: &ElementTable, gens: &[ElemId]) -> Bitset {
    let mut bits = Bitset::new(table.size());
    let e = table.identity();
    bits.insert(e as usize);
    let mut stack = vec![e];
    while let Some(x) = stack.pop() {
        for &g in gens {
            let y = table.mul(x, g);
            if bits.insert(y as usize) {
                stack.push(y);
            }
        }
    }
    bits
}

/// Every subgroup of the group, as element bitsets.
pub fn all_subgroups(table: &ElementTable) -> Vec<Bitset> {
    let n = table.size();
    let mut found: HashSet<Bitset> = HashSet::new();
    let mut cyclic: Vec<Sub> = Vec::new();
    for x in 0..n as ElemId {
        let bits = close(table, &[x]);
        if found.insert(bits.clone()) {
            cyclic.push(Sub { bits, gens: vec![x] });
        }
    }
    let mut queue: VecDeque<Sub> = cyclic.iter().map(|c| Sub { bits: c.bits.clone(), gens: c.gens.clone() }).collect();
    let mut all: Vec<Bitset> = found.iter().cloned().collect();
    while let Some(h) = queue.pop_front() {
        for c in &cyclic {
            if c.bits.is_subset(&h.bits) {
                continue;
            }
            let mut gens = h.gens.clone();
            gens.push(c.gens[0]);
            let bits = close(table, &gens);
            if found.insert(bits.clone()) {
                all.push(bits.clone());
                queue.push_back(Sub { bits, gens });
            }
        }
    }
    all.sort();
    all
}

/// Minimum number of proper subgroups whose union is the group, or `None`
/// when no such family exists.
pub fn brute_force_sigma(table: &ElementTable) -> Option<usize> {
    let n = table.size();
    let proper: Vec<Bitset> = all_subgroups(table).into_iter().filter(|b| b.count() < n).collect();
    // a subgroup inside a larger proper one never helps
    let sets: Vec<Bitset> =
        proper.iter().filter(|a| !proper.iter().any(|b| b.count() > a.count() && a.is_subset(b))).cloned().collect();
    let mut union = Bitset::new(n);
    for s in &sets {
        union.union_with(s);
    }
    if union.count() < n {
        return None;
    }
    let mut uncovered = Bitset::full(n);
    uncovered.remove(table.identity() as usize);
    let mut best = sets.len() + 1;
    search(&sets, &uncovered, 0, &mut best);
    Some(best)
}

fn search(sets: &[Bitset], uncovered: &Bitset, depth: usize, best: &mut usize) {
    let left = uncovered.count();
    if left == 0 {
        *best = (*best).min(depth);
        return;
    }
    let widest = sets.iter().map(|s| s.intersection_count(uncovered)).max().unwrap_or(0);
    if depth + left.div_ceil(widest) >= *best {
        return;
    }
    // branch on the element with the fewest coverers
    let mut pick = None;
    let mut fewest = usize::MAX;
    for x in uncovered.iter() {
        let k = sets.iter().filter(|s| s.contains(x)).count();
        if k < fewest {
            fewest = k;
            pick = Some(x);
            if k == 1 {
                break;
            }
        }
    }
    let x = pick.unwrap();
    let mut options: Vec<&Bitset> = sets.iter().filter(|s| s.contains(x)).collect();
    options.sort_by_key(|s| std::cmp::Reverse(s.intersection_count(uncovered)));
    for s in options {
        let mut rest = uncovered.clone();
        rest.difference_with(s);
        search(sets, &rest, depth + 1, best);
    }
}
