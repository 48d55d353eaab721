//! Full element tables with stable integer IDs.
//!
//! Elements are numbered `0..|G|` in lexicographic order of their image
//! tables, so IDs (and everything keyed by them) are reproducible across runs.
//! An element is determined by the images of the base points, which gives a
//! cheap product: `id(a*b)` only needs `b(a(beta_i))` for each base point.

use rustc_hash::FxHashMap;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

pub type ElemId = u32;

pub const DEFAULT_CAP: usize = 20_000;

/// Largest dense lookup table (entries) before falling back to hashing.
const DENSE_LIMIT: usize = 1 << 22;

#[derive(Clone, Debug)]
enum Lookup {
    Dense { radix: usize, table: Vec<u32> },
    Hashed(FxHashMap<Box<[u32]>, u32>),
}

#[derive(Clone, Debug)]
pub struct ElementTable {
    degree: usize,
    size: usize,
    base: Vec<u32>,
    images: Vec<u32>,
    orders: Vec<u32>,
    inverse: Vec<ElemId>,
    identity: ElemId,
    generators: Vec<ElemId>,
    lookup: Lookup,
}

impl ElementTable {
    /// Enumerates all elements of `group`; fails if `|G| > cap`.
    pub fn new(group: &PermGroup, cap: usize) -> Result<Self> {
        let order = group.order();
        if order > cap as u128 {
            return Err(Error::OverCap { order, cap });
        }
        let degree = group.degree();
        let size = order as usize;
        let base = group.base();

        let mut elements = vec![Permutation::identity(degree)];
        for level in group.chain().transversals().iter().rev() {
            let mut next = Vec::with_capacity(elements.len() * level.len());
            for e in &elements {
                for t in level {
                    next.push(e.then(t));
                }
            }
            elements = next;
        }
        debug_assert_eq!(elements.len(), size);
        elements.sort_unstable();

        let mut images = Vec::with_capacity(size * degree);
        for e in &elements {
            images.extend_from_slice(e.images());
        }

        let lookup = build_lookup(degree, &base, &elements);
        let mut table = ElementTable {
            degree,
            size,
            base,
            images,
            orders: elements.iter().map(|e| e.order() as u32).collect(),
            inverse: Vec::new(),
            identity: 0,
            generators: Vec::new(),
            lookup,
        };
        table.identity = table.id_of(&Permutation::identity(degree)).expect("identity");
        table.inverse = elements.iter().map(|e| table.id_of(&e.inverse()).expect("closed")).collect();
        table.generators = group
            .generators()
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| table.id_of(g).expect("generator is a member"))
            .collect();
        Ok(table)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> ElemId {
        self.identity
    }

    /// IDs of the group's (non-identity) generators.
    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    #[inline]
    pub fn images(&self, id: ElemId) -> &[u32] {
        let start = id as usize * self.degree;
        &self.images[start..start + self.degree]
    }

    pub fn perm(&self, id: ElemId) -> Permutation {
        Permutation::from_images_unchecked(self.images(id).to_vec())
    }

    #[inline]
    pub fn order_of(&self, id: ElemId) -> u32 {
        self.orders[id as usize]
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    #[inline]
    pub fn inv(&self, id: ElemId) -> ElemId {
        self.inverse[id as usize]
    }

    #[inline]
    fn find(&self, image_of_base: impl Fn(u32) -> u32) -> ElemId {
        match &self.lookup {
            Lookup::Dense { radix, table } => {
                let mut idx = 0usize;
                for &b in self.base.iter().rev() {
                    idx = idx * radix + image_of_base(b) as usize;
                }
                table[idx]
            }
            Lookup::Hashed(map) => {
                let key: Box<[u32]> = self.base.iter().map(|&b| image_of_base(b)).collect();
                *map.get(&key).unwrap_or(&u32::MAX)
            }
        }
    }

    /// `a` followed by `b`.
    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        let ia = self.images(a);
        let ib = self.images(b);
        self.find(|p| ib[ia[p as usize] as usize])
    }

    /// `g^-1 a g`.
    #[inline]
    pub fn conj(&self, a: ElemId, g: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn pow(&self, a: ElemId, exp: u64) -> ElemId {
        let exp = exp % self.order_of(a) as u64;
        let mut acc = self.identity;
        for _ in 0..exp {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// ID of a permutation, or `None` if it is not in the group.
    pub fn id_of(&self, p: &Permutation) -> Option<ElemId> {
        if p.degree() != self.degree {
            return None;
        }
        let id = self.find(|b| p.apply(b));
        if (id as usize) < self.size && self.images(id) == p.images() {
            Some(id)
        } else {
            None
        }
    }

    pub fn count_of_order(&self, k: u32) -> usize {
        self.orders.iter().filter(|&&o| o == k).count()
    }

    /// Histogram of element orders, sorted by order.
    pub fn order_histogram(&self) -> Vec<(u32, usize)> {
        let mut map = std::collections::BTreeMap::new();
        for &o in &self.orders {
            *map.entry(o).or_insert(0usize) += 1;
        }
        map.into_iter().collect()
    }

    pub fn commute(&self, a: ElemId, b: ElemId) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Conjugacy class index of every element; classes are numbered by
    /// their smallest member.
    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        let mut class_of = vec![u32::MAX; self.size];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for x in 0..self.size as u32 {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            class_of[x as usize] = c;
            let mut stack = vec![x];
            let mut size = 1;
            while let Some(y) = stack.pop() {
                for &g in &self.generators {
                    let z = self.conj(y, g);
                    if class_of[z as usize] == u32::MAX {
                        class_of[z as usize] = c;
                        size += 1;
                        stack.push(z);
                    }
                }
            }
            sizes.push(size);
        }
        ConjugacyClasses { class_of, reps, sizes }
    }

    /// Elements commuting with every generator.
    pub fn center_bits(&self) -> Bitset {
        Bitset::from_indices(
            self.size,
            (0..self.size as u32).filter(|&x| self.generators.iter().all(|&g| self.commute(x, g))).map(|x| x as usize),
        )
    }

    /// Elements commuting with every element of `set`.
    pub fn centralizer_bits(&self, set: &Bitset) -> Bitset {
        let members: Vec<u32> = set.iter().map(|x| x as u32).collect();
        Bitset::from_indices(
            self.size,
            (0..self.size as u32).filter(|&x| members.iter().all(|&g| self.commute(x, g))).map(|x| x as usize),
        )
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    pub class_of: Vec<u32>,
    pub reps: Vec<ElemId>,
    pub sizes: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

fn build_lookup(degree: usize, base: &[u32], elements: &[Permutation]) -> Lookup {
    let dense_size = (degree as u128).checked_pow(base.len() as u32).unwrap_or(u128::MAX);
    if dense_size <= DENSE_LIMIT as u128 {
        let mut table = vec![u32::MAX; dense_size.max(1) as usize];
        for (id, e) in elements.iter().enumerate() {
            let mut idx = 0usize;
            for &b in base.iter().rev() {
                idx = idx * degree + e.apply(b) as usize;
            }
            table[idx] = id as u32;
        }
        Lookup::Dense { radix: degree, table }
    } else {
        let mut map = FxHashMap::default();
        for (id, e) in elements.iter().enumerate() {
            map.insert(base.iter().map(|&b| e.apply(b)).collect::<Box<[u32]>>(), id as u32);
        }
        Lookup::Hashed(map)
    }
}
