//! Permutations of `{0, .., n-1}` stored as image tables.
//!
//! Composition follows the right-action convention used by cycle notation:
//! `a.then(b)` maps `p` to `b(a(p))`, so `(1 2)(2 3)` read left to right is
//! the product of `(1 2)` followed by `(2 3)`. Points are 0-based internally
//! and 1-based in every textual form.

use std::fmt;

use crate::error::CycleParseError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_some());
        Permutation { images }
    }

    /// Builds a permutation from 1-based images.
    pub fn from_one_based(images: &[u32]) -> Option<Self> {
        if images.contains(&0) {
            return None;
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// Product of disjoint cycles given with 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Self {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                images[p as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images).expect("cycles must be disjoint")
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// 1-based image table.
    pub fn one_based_images(&self) -> Vec<u32> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            exp >>= 1;
        }
        acc
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    /// Smallest moved point, if any.
    pub fn first_moved(&self) -> Option<u32> {
        self.images.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i as u32)
    }

    /// Non-trivial cycles, each starting at its smallest point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Lengths of all cycles, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.images[p] as usize;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Least `k >= 1` with `self^k = 1`: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_type().into_iter().fold(1u64, |acc, len| lcm(acc, len as u64))
    }

    pub fn is_even(&self) -> bool {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        transpositions.is_multiple_of(2)
    }

    /// Cycle notation with 1-based points; the identity renders as `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                s.push_str(&(p + 1).to_string());
            }
            s.push(')');
        }
        s
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.to_cycle_string())
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Parses disjoint cycles such as `(1 2 3)(4 5)` over the points `1..=degree`.
///
/// Points inside a cycle may be separated by whitespace or commas. The empty
/// string and `()` both denote the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, CycleParseError> {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c != b'(' {
            return Err(CycleParseError::Malformed { token: token_at(text, i) });
        }
        let Some(close) = text[i..].find(')').map(|off| i + off) else {
            return Err(CycleParseError::Malformed { token: text[i..].to_string() });
        };
        let body = &text[i + 1..close];
        let cycle_token = &text[i..=close];
        if body.contains('(') {
            return Err(CycleParseError::Malformed { token: cycle_token.to_string() });
        }
        let mut points = Vec::new();
        for tok in body.split(|ch: char| ch.is_whitespace() || ch == ',').filter(|t| !t.is_empty()) {
            let point: u64 = tok.parse().map_err(|_| CycleParseError::Malformed { token: tok.to_string() })?;
            if point == 0 || point as usize > degree {
                return Err(CycleParseError::PointOutOfRange { token: tok.to_string(), point, degree });
            }
            let p = (point - 1) as usize;
            if used[p] {
                return Err(CycleParseError::RepeatedPoint { token: cycle_token.to_string(), point });
            }
            used[p] = true;
            points.push(p as u32);
        }
        for (k, &p) in points.iter().enumerate() {
            images[p as usize] = points[(k + 1) % points.len()];
        }
        i = close + 1;
    }
    Ok(Permutation { images })
}

fn token_at(text: &str, start: usize) -> String {
    text[start..].split_whitespace().next().unwrap_or("").to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_three_cycle() {
        let p = parse_cycles("(1 2 3)", 5).unwrap();
        assert_eq!(p.one_based_images(), vec![2, 3, 1, 4, 5]);
    }

    #[test]
    fn parse_empty_is_identity() {
        let p = parse_cycles("", 4).unwrap();
        assert_eq!(p.one_based_images(), vec![1, 2, 3, 4]);
        assert!(parse_cycles("()", 4).unwrap().is_identity());
    }

    #[test]
    fn parse_rejects_repeated_point() {
        let err = parse_cycles("(1 2)(2 3)", 3).unwrap_err();
        assert!(matches!(err, CycleParseError::RepeatedPoint { point: 2, .. }), "{err:?}");
        let err = parse_cycles("(1 2 1)", 3).unwrap_err();
        assert!(matches!(err, CycleParseError::RepeatedPoint { point: 1, .. }));
    }

    #[test]
    fn parse_rejects_out_of_range_and_garbage() {
        let err = parse_cycles("(1 7)", 5).unwrap_err();
        assert_eq!(err, CycleParseError::PointOutOfRange { token: "7".into(), point: 7, degree: 5 });
        assert!(matches!(parse_cycles("(0 1)", 5), Err(CycleParseError::PointOutOfRange { .. })));
        assert!(matches!(parse_cycles("(1 2", 5), Err(CycleParseError::Malformed { .. })));
        assert!(matches!(parse_cycles("1 2", 5), Err(CycleParseError::Malformed { .. })));
        assert!(matches!(parse_cycles("(1 x)", 5), Err(CycleParseError::Malformed { token }) if token == "x"));
        assert!(matches!(parse_cycles("((1 2))", 5), Err(CycleParseError::Malformed { .. })));
    }

    #[test]
    fn commas_are_accepted() {
        assert_eq!(parse_cycles("(1,2,3)(4,5)", 5).unwrap(), parse_cycles("(1 2 3)(4 5)", 5).unwrap());
    }

    #[test]
    fn element_orders() {
        assert_eq!(Permutation::identity(6).order(), 1);
        assert_eq!(parse_cycles("(1 2)(3 4 5)", 5).unwrap().order(), 6);
        assert_eq!(parse_cycles("(1 3 5 7 2 4 6)", 9).unwrap().order(), 7);
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = parse_cycles("(1 2)", 3).unwrap();
        let b = parse_cycles("(2 3)", 3).unwrap();
        // 1 -> 2 -> 3, 2 -> 1, 3 -> 2
        assert_eq!(a.then(&b), parse_cycles("(1 3 2)", 3).unwrap());
    }

    #[test]
    fn render_round_trip() {
        let p = parse_cycles("(4 5)(1 3 2)", 6).unwrap();
        assert_eq!(p.to_cycle_string(), "(1 3 2)(4 5)");
        assert_eq!(parse_cycles(&p.to_cycle_string(), 6).unwrap(), p);
        assert_eq!(Permutation::identity(3).to_cycle_string(), "()");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn perm(n: usize) -> impl Strategy<Value = Permutation> {
            Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
        }

        proptest! {
            #[test]
            fn order_is_conjugation_invariant(p in perm(9), q in perm(9)) {
                prop_assert_eq!(p.order(), p.conjugate_by(&q).order());
            }

            #[test]
            fn inverse_and_associativity(p in perm(8), q in perm(8), r in perm(8)) {
                prop_assert!(p.then(&p.inverse()).is_identity());
                prop_assert_eq!(p.then(&q).then(&r), p.then(&q.then(&r)));
                prop_assert_eq!(p.order(), p.inverse().order());
            }

            #[test]
            fn cycle_string_round_trips(p in perm(12)) {
                prop_assert_eq!(parse_cycles(&p.to_cycle_string(), 12).unwrap(), p);
            }

            #[test]
            fn order_is_least_annihilating_power(p in perm(7)) {
                let k = p.order();
                prop_assert!(p.pow(k).is_identity());
                for j in 1..k {
                    prop_assert!(!p.pow(j).is_identity());
                }
            }
        }
    }
}
