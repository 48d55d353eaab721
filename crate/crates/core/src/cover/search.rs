//! Branch-and-bound over a reduced [`CoverInstance`].
//!
//! Each node first takes every column that is the only one left for some
//! row, then branches on the uncovered row with the fewest available
//! columns. When optimizing, candidates are grouped into orbits of `K`, the
//! elements normalizing every chosen column: one child takes an orbit
//! representative, and the orbit is then excluded from the remaining
//! children. Excluded sets stay unions of orbits of every ancestor's `K`,
//! so each node's subproblem is invariant under its own `K`.

use super::{weighted_bound, CoverInstance};
use crate::bitset::Bitset;
use crate::elements::ElementTable;

/// Largest `|G| * columns` for which the full column action is tabulated.
const ACTION_LIMIT: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Best cover found, forced columns included, sorted.
    pub cover: Vec<usize>,
    /// True when the search finished, so `cover` is a minimum.
    pub optimal: bool,
    pub lower_bound: u64,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    /// Distinct minimum covers, each sorted, in discovery order.
    pub covers: Vec<Vec<usize>>,
    /// False when the limit or the node budget cut the search short.
    pub complete: bool,
    pub nodes: u64,
}

enum Mode {
    Optimize { best: Vec<usize> },
    Enumerate { target: usize, limit: usize, found: Vec<Vec<usize>> },
}

struct Search<'a> {
    inst: &'a CoverInstance,
    /// `action[g * cols + c]`: image of column `c` under element `g`.
    action: Option<Vec<u16>>,
    budget: u64,
    nodes: u64,
    stopped: bool,
    mode: Mode,
}

/// Minimum cover of the active rows. `incumbent` must be a cover
/// containing the forced columns; it is returned if nothing smaller exists.
pub fn solve_exact(table: &ElementTable, inst: &CoverInstance, incumbent: &[usize], node_budget: u64) -> SearchOutcome {
    let forced: Vec<usize> = inst.forced.iter().collect();
    let uncovered = inst.active_rows.clone();
    let mut avail = Bitset::full(inst.cols.len());
    avail.difference_with(&inst.forced);
    drop_dominated_columns(inst, &uncovered, &mut avail);

    let root_lb = forced.len() as u64 + weighted_bound(inst, &uncovered, &avail).map_or(0, |(b, _)| b);
    let best_rest: Vec<usize> = incumbent.iter().copied().filter(|&c| !inst.forced.contains(c)).collect();
    if root_lb >= incumbent.len() as u64 {
        return SearchOutcome { cover: sorted(incumbent.to_vec()), optimal: true, lower_bound: root_lb, nodes: 0 };
    }
    let mut search = Search {
        inst,
        action: column_action(table, inst),
        budget: node_budget,
        nodes: 0,
        stopped: false,
        mode: Mode::Optimize { best: best_rest },
    };
    let k = search.action.as_ref().map(|_| Bitset::full(table.size()));
    search.node(uncovered, avail, &mut Vec::new(), k);
    let Mode::Optimize { best } = search.mode else { unreachable!() };
    let mut cover = forced;
    cover.extend(best);
    let size = cover.len() as u64;
    SearchOutcome {
        cover: sorted(cover),
        optimal: !search.stopped,
        lower_bound: if search.stopped { root_lb } else { size },
        nodes: search.nodes,
    }
}

/// All covers of size `sigma` (up to `limit`). Uses plain exclusion
/// branching, so every cover is produced exactly once.
pub fn enumerate_optimal_covers(inst: &CoverInstance, sigma: u64, limit: usize, node_budget: u64) -> Enumeration {
    let forced: Vec<usize> = inst.forced.iter().collect();
    let mut avail = Bitset::full(inst.cols.len());
    avail.difference_with(&inst.forced);
    let Some(target) = (sigma as usize).checked_sub(forced.len()) else {
        return Enumeration { covers: Vec::new(), complete: true, nodes: 0 };
    };
    let mut search = Search {
        inst,
        action: None,
        budget: node_budget,
        nodes: 0,
        stopped: false,
        mode: Mode::Enumerate { target, limit, found: Vec::new() },
    };
    search.node(inst.active_rows.clone(), avail, &mut Vec::new(), None);
    let Mode::Enumerate { found, .. } = search.mode else { unreachable!() };
    let covers = found
        .into_iter()
        .map(|rest| {
            let mut c = forced.clone();
            c.extend(rest);
            sorted(c)
        })
        .collect();
    Enumeration { covers, complete: !search.stopped, nodes: search.nodes }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Removes columns whose uncovered rows are a strict subset of another
/// available column's. The relation is invariant under the group.
fn drop_dominated_columns(inst: &CoverInstance, uncovered: &Bitset, avail: &mut Bitset) {
    let restricted: Vec<(usize, Bitset)> =
        avail.iter().map(|c| (c, inst.col_rows[c].intersection(uncovered))).collect();
    for (c, rows) in &restricted {
        let dominated =
            rows.is_empty() || restricted.iter().any(|(d, other)| d != c && rows.is_subset(other) && rows != other);
        if dominated {
            avail.remove(*c);
        }
    }
}

fn column_action(table: &ElementTable, inst: &CoverInstance) -> Option<Vec<u16>> {
    let n = table.size();
    let m = inst.cols.len();
    if n.checked_mul(m)? > ACTION_LIMIT || m > u16::MAX as usize {
        return None;
    }
    let mut action = vec![u16::MAX; n * m];
    let id = table.identity() as usize;
    for c in 0..m {
        action[id * m + c] = c as u16;
    }
    let mut seen = Bitset::new(n);
    seen.insert(id);
    let mut queue = vec![table.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (gi, &s) in table.generators().iter().enumerate() {
            let y = table.mul(x, s);
            if seen.insert(y as usize) {
                let (xs, ys) = (x as usize * m, y as usize * m);
                for c in 0..m {
                    action[ys + c] = inst.col_action[gi][action[xs + c] as usize] as u16;
                }
                queue.push(y);
            }
        }
    }
    Some(action)
}

impl Search<'_> {
    fn orbit(&self, k: &Option<Bitset>, c: usize) -> Vec<usize> {
        match (&self.action, k) {
            (Some(action), Some(k)) => {
                let m = self.inst.cols.len();
                let mut seen = Bitset::new(m);
                for g in k.iter() {
                    seen.insert(action[g * m + c] as usize);
                }
                seen.iter().collect()
            }
            _ => vec![c],
        }
    }

    fn take(
        &self,
        c: usize,
        chosen: &mut Vec<usize>,
        uncovered: &mut Bitset,
        avail: &mut Bitset,
        k: &mut Option<Bitset>,
    ) {
        chosen.push(c);
        uncovered.difference_with(&self.inst.col_rows[c]);
        avail.remove(c);
        if let Some(k) = k {
            if !self.inst.col_normal[c] {
                k.intersect_with(self.inst.cols[c].bits());
            }
        }
    }

    fn node(&mut self, uncovered: Bitset, avail: Bitset, chosen: &mut Vec<usize>, k: Option<Bitset>) {
        let depth = chosen.len();
        self.visit(uncovered, avail, chosen, k);
        chosen.truncate(depth);
    }

    fn visit(&mut self, mut uncovered: Bitset, mut avail: Bitset, chosen: &mut Vec<usize>, mut k: Option<Bitset>) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.stopped = true;
            return;
        }
        let inst = self.inst;
        let branch_row = loop {
            let mut best: Option<(usize, usize)> = None;
            let mut unit = None;
            for r in uncovered.iter() {
                let n = inst.row_cols[r].intersection_count(&avail);
                if n == 0 {
                    return;
                }
                if n == 1 {
                    unit = inst.row_cols[r].intersection(&avail).first();
                    break;
                }
                if best.is_none_or(|(bn, _)| n < bn) {
                    best = Some((n, r));
                }
            }
            match unit {
                Some(c) => self.take(c, chosen, &mut uncovered, &mut avail, &mut k),
                None => break best.map(|(_, r)| r),
            }
        };

        let Some(r) = branch_row else {
            match &mut self.mode {
                Mode::Optimize { best } => {
                    if chosen.len() < best.len() {
                        *best = chosen.clone();
                    }
                }
                Mode::Enumerate { target, limit, found } => {
                    if chosen.len() == *target {
                        found.push(sorted(chosen.clone()));
                        if found.len() >= *limit {
                            self.stopped = true;
                        }
                    }
                }
            }
            return;
        };

        let cutoff = match &self.mode {
            Mode::Optimize { best } => best.len(),
            Mode::Enumerate { target, .. } => target + 1,
        };
        if chosen.len() + 1 >= cutoff {
            return;
        }
        let Some((lb, _)) = weighted_bound(inst, &uncovered, &avail) else { return };
        let lb = chosen.len() + lb as usize;
        if lb >= cutoff {
            return;
        }

        let mut candidates: Vec<(usize, usize)> = inst.row_cols[r]
            .intersection(&avail)
            .iter()
            .map(|c| (c, inst.col_rows[c].intersection_count(&uncovered)))
            .collect();
        candidates.sort_by_key(|&(c, n)| (std::cmp::Reverse(n), c));
        let orbital = matches!(self.mode, Mode::Optimize { .. });
        for (c, _) in candidates {
            if !avail.contains(c) {
                continue;
            }
            let mut child_unc = uncovered.clone();
            let mut child_avail = avail.clone();
            let mut child_k = k.clone();
            let depth = chosen.len();
            self.take(c, chosen, &mut child_unc, &mut child_avail, &mut child_k);
            self.node(child_unc, child_avail, chosen, child_k);
            chosen.truncate(depth);
            if self.stopped {
                return;
            }
            if orbital {
                for d in self.orbit(&k, c) {
                    avail.remove(d);
                }
            } else {
                avail.remove(c);
            }
            let cutoff = match &self.mode {
                Mode::Optimize { best } => best.len(),
                Mode::Enumerate { target, .. } => target + 1,
            };
            if lb >= cutoff {
                return;
            }
        }
    }
}
