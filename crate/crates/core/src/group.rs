//! Permutation groups backed by a deterministic Schreier–Sims stabilizer chain.

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// One level of a stabilizer chain: the orbit of a base point under the
/// strong generators that fix all earlier base points, stored as a Schreier
/// vector.
#[derive(Clone, Debug)]
struct Level {
    point: u32,
    gens: Vec<Permutation>,
    inv_gens: Vec<Permutation>,
    orbit: Vec<u32>,
    /// `label[p]`: `ROOT` for the base point, `NONE` outside the orbit,
    /// otherwise the generator index that reached `p` from `parent[p]`.
    label: Vec<u32>,
    parent: Vec<u32>,
}

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

impl Level {
    fn new(point: u32, degree: usize) -> Self {
        let mut level = Level {
            point,
            gens: Vec::new(),
            inv_gens: Vec::new(),
            orbit: Vec::new(),
            label: vec![NONE; degree],
            parent: vec![NONE; degree],
        };
        level.rebuild_orbit();
        level
    }

    fn push_gen(&mut self, g: Permutation) {
        self.inv_gens.push(g.inverse());
        self.gens.push(g);
        self.rebuild_orbit();
    }

    fn rebuild_orbit(&mut self) {
        self.label.iter_mut().for_each(|x| *x = NONE);
        self.orbit.clear();
        self.label[self.point as usize] = ROOT;
        self.orbit.push(self.point);
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for (gi, g) in self.gens.iter().enumerate() {
                let q = g.apply(p);
                if self.label[q as usize] == NONE {
                    self.label[q as usize] = gi as u32;
                    self.parent[q as usize] = p;
                    self.orbit.push(q);
                }
            }
        }
    }

    #[inline]
    fn contains(&self, p: u32) -> bool {
        self.label[p as usize] != NONE
    }

    /// Transversal element mapping the base point to `p`.
    fn transversal(&self, p: u32) -> Permutation {
        let mut path = Vec::new();
        let mut q = p;
        while self.label[q as usize] != ROOT {
            path.push(self.label[q as usize]);
            q = self.parent[q as usize];
        }
        let degree = self.label.len();
        path.iter().rev().fold(Permutation::identity(degree), |acc, &gi| acc.then(&self.gens[gi as usize]))
    }

    /// `y` followed by the inverse of the transversal element for `y(base)`.
    fn unwind(&self, mut y: Permutation) -> Permutation {
        let mut q = y.apply(self.point);
        while self.label[q as usize] != ROOT {
            let gi = self.label[q as usize] as usize;
            y = y.then(&self.inv_gens[gi]);
            q = self.parent[q as usize];
        }
        y
    }
}

/// Stabilizer chain for a permutation group. Base points are chosen as the
/// smallest point moved by the element that forces a new level.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn build(degree: usize, generators: &[Permutation]) -> StabChain {
        let mut chain = StabChain { degree, levels: Vec::new() };
        let gens: Vec<Permutation> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in &gens {
            if chain.levels.iter().all(|l| g.apply(l.point) == l.point) {
                let point = g.first_moved().expect("non-identity");
                chain.levels.push(Level::new(point, degree));
            }
        }
        for g in &gens {
            // g lies in G^(l) for every l up to its first moved base point
            let depth = chain.levels.iter().take_while(|l| g.apply(l.point) == l.point).count();
            for l in 0..=depth.min(chain.levels.len() - 1) {
                chain.levels[l].push_gen(g.clone());
            }
        }
        if chain.levels.is_empty() {
            return chain;
        }

        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            match chain.find_failing_schreier_generator(lvl) {
                Some((h, j)) => {
                    if j == chain.levels.len() {
                        let point = h.first_moved().expect("strip residue is non-trivial");
                        chain.levels.push(Level::new(point, degree));
                    }
                    for l in lvl + 1..=j {
                        chain.levels[l].push_gen(h.clone());
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
        chain
    }

    fn find_failing_schreier_generator(&self, lvl: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[lvl];
        for &p in &level.orbit {
            let up = level.transversal(p);
            for s in &level.gens {
                let ups = up.then(s);
                let y = level.unwind(ups);
                if y.is_identity() {
                    continue;
                }
                let (h, j) = self.strip(y, lvl + 1);
                if j < self.levels.len() || !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    /// Sifts `g` through the levels starting at `from`; returns the residue
    /// and the level at which sifting stopped (`levels.len()` on success).
    fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let p = g.apply(level.point);
            if !level.contains(p) {
                return (g, j);
            }
            g = level.unwind(g);
        }
        (g, self.levels.len())
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip(g.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    /// Explicit transversals, level by level.
    pub(crate) fn transversals(&self) -> Vec<Vec<Permutation>> {
        self.levels.iter().map(|l| l.orbit.iter().map(|&p| l.transversal(p)).collect()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        let chain = StabChain::build(degree, &generators);
        Ok(PermGroup { degree, generators, chain })
    }

    /// Group generated by a non-empty generator list of equal degrees.
    pub fn from_generators(generators: Vec<Permutation>) -> Result<Self> {
        let degree = generators
            .first()
            .map(|g| g.degree())
            .ok_or_else(|| Error::Precondition("at least one generator is required".into()))?;
        Self::new(degree, generators)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("no generators")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain.base()
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Orbit of a point, in breadth-first order.
    pub fn orbit(&self, point: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point as usize] = true;
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    orbit.push(q);
                }
            }
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;
    use std::collections::HashSet;

    fn group(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(degree, gens.iter().map(|g| parse_cycles(g, degree).unwrap()).collect()).unwrap()
    }

    fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut seen = HashSet::new();
        let id = Permutation::identity(degree);
        let mut stack = vec![id.clone()];
        seen.insert(id);
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn klein_four() {
        let g = group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        assert_eq!(group(5, &["(1 2 3 4 5)", "(1 2)"]).order(), 120);
        assert_eq!(group(5, &["(1 2 3)", "(3 4 5)", "(2 3 4)"]).order(), 60);
        assert_eq!(group(10, &["(1 2 3 4 5 6 7 8 9 10)", "(1 2)"]).order(), 3_628_800);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let err = PermGroup::new(4, vec![Permutation::identity(5)]).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { expected: 4, found: 5 });
    }

    #[test]
    fn membership_agrees_with_closure() {
        let gens: Vec<Permutation> =
            ["(1 2 3 4 5 6)", "(1 3)(4 6)"].iter().map(|s| parse_cycles(s, 6).unwrap()).collect();
        let g = PermGroup::new(6, gens.clone()).unwrap();
        let elements = closure(6, &gens);
        assert_eq!(g.order(), elements.len() as u128);
        let all = closure(6, &[parse_cycles("(1 2 3 4 5 6)", 6).unwrap(), parse_cycles("(1 2)", 6).unwrap()]);
        for p in &all {
            assert_eq!(g.contains(p), elements.contains(p), "{p}");
        }
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::trivial(3);
        assert_eq!(g.order(), 1);
        assert!(g.contains(&Permutation::identity(3)));
        assert!(!g.contains(&parse_cycles("(1 2)", 3).unwrap()));
        assert!(g.base().is_empty());
    }

    #[test]
    fn construction_is_deterministic() {
        let a = group(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]);
        let b = group(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]);
        assert_eq!(a.base(), b.base());
        assert_eq!(a.chain().orbit_lengths(), b.chain().orbit_lengths());
        assert_eq!(a.order(), 21);
    }
}
