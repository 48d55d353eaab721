//! Named groups in their natural low-degree permutation actions, and the
//! line-oriented group file format.
//!
//! Group file format (UTF-8, one statement per line, `#` starts a comment
//! line):
//!
//! ```text
//! # Klein four-group
//! degree 4
//! gen (1 2)(3 4)
//! gen (1 3)(2 4)
//! ```
//!
//! or a single line `catalog: PGammaL2(8)`.

mod field;
mod sweep;

use std::fmt;

pub use field::{is_prime, prime_power, Field};
pub use sweep::catalog_sweep;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{parse_cycles, Permutation};

/// Every supported catalog family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogGroup {
    Cyclic(u32),
    /// `C_p^r` acting on `r` disjoint orbits of length `p`.
    ElemAbelian(u32, u32),
    /// Dihedral group of order `2n` on `n` points.
    Dihedral(u32),
    /// `x -> a x + b` over GF(p) with `a` in the subgroup of order `d`.
    Frobenius(u32, u32),
    /// `x -> a x^s + b` over GF(q): `a` in the multiplicative subgroup of
    /// order `d`, `s` in the group of field automorphisms of order `f`.
    AffineSemilinear(u32, u32, u32),
    Agl1(u32),
    Sym(u32),
    Alt(u32),
    Psl2(u32),
    Pgl2(u32),
    PGammaL2(u32),
    /// `PSL(2,q)` extended by the field automorphisms of order `f`.
    PSigmaL2(u32, u32),
    Psl3(u32),
    Asl3_2,
    M10,
    M11,
}

impl CatalogGroup {
    pub fn name(&self) -> String {
        use CatalogGroup::*;
        match *self {
            Cyclic(n) => format!("Cyclic({n})"),
            ElemAbelian(p, r) => format!("ElemAbelian({p},{r})"),
            Dihedral(n) => format!("Dihedral({n})"),
            Frobenius(p, d) => format!("Frobenius({p},{d})"),
            AffineSemilinear(q, d, f) => format!("AffineSemilinear({q},{d},{f})"),
            Agl1(q) => format!("AGL1({q})"),
            Sym(n) => format!("Sym({n})"),
            Alt(n) => format!("Alt({n})"),
            Psl2(q) => format!("PSL2({q})"),
            Pgl2(q) => format!("PGL2({q})"),
            PGammaL2(q) => format!("PGammaL2({q})"),
            PSigmaL2(q, f) => format!("PSigmaL2({q},{f})"),
            Psl3(q) => format!("PSL3({q})"),
            Asl3_2 => "ASL3(2)".to_string(),
            M10 => "M10".to_string(),
            M11 => "M11".to_string(),
        }
    }

    /// Parses `Name(args)`, accepting a few common aliases.
    pub fn parse(text: &str) -> Result<CatalogGroup> {
        use CatalogGroup::*;
        let text = text.trim();
        let unsupported = || Error::Unsupported(text.to_string());
        let (name, args) = match text.find('(') {
            Some(open) => {
                let rest = &text[open + 1..];
                let close = rest.find(')').ok_or_else(unsupported)?;
                let tail = rest[close + 1..].trim();
                let args: Vec<u32> = rest[..close]
                    .split(',')
                    .map(|a| a.trim().parse::<u32>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| unsupported())?;
                let name = &text[..open];
                if !tail.is_empty() {
                    // PSL2(q):f
                    let f = tail.strip_prefix(':').and_then(|f| f.trim().parse::<u32>().ok());
                    return match (name, args.as_slice(), f) {
                        ("PSL2", [q], Some(f)) => Self::validated(PSigmaL2(*q, f)),
                        _ => Err(unsupported()),
                    };
                }
                (name, args)
            }
            None => (text, Vec::new()),
        };
        let group = match (name, args.as_slice()) {
            ("Cyclic" | "C", [n]) => Cyclic(*n),
            ("ElemAbelian", [p, r]) => ElemAbelian(*p, *r),
            ("Dihedral" | "D", [n]) => Dihedral(*n),
            ("Frobenius", [p, d]) => Frobenius(*p, *d),
            ("AffineSemilinear", [q, d, f]) => AffineSemilinear(*q, *d, *f),
            ("AGL1", [q]) => Agl1(*q),
            ("Sym" | "S", [n]) => Sym(*n),
            ("Alt" | "A", [n]) => Alt(*n),
            ("PSL2", [q]) => Psl2(*q),
            ("PGL2", [q]) => Pgl2(*q),
            ("PGammaL2", [q]) => PGammaL2(*q),
            ("PSigmaL2", [q, f]) => PSigmaL2(*q, *f),
            ("PSL3" | "SL3", [q]) => Psl3(*q),
            ("ASL3", [2]) | ("AGL3", [2]) => Asl3_2,
            ("M10", []) => M10,
            ("M11", []) => M11,
            ("S4", []) => Sym(4),
            ("A4", []) => Alt(4),
            _ => return Err(unsupported()),
        };
        Self::validated(group)
    }

    fn validated(self) -> Result<CatalogGroup> {
        self.check()?;
        Ok(self)
    }

    fn invalid(&self, reason: impl Into<String>) -> Error {
        Error::InvalidParameters { family: self.name(), reason: reason.into() }
    }

    fn check(&self) -> Result<()> {
        use CatalogGroup::*;
        let need_prime = |p: u32| if is_prime(p) { Ok(()) } else { Err(self.invalid(format!("{p} is not prime"))) };
        let need_field = |q: u32| {
            if prime_power(q).is_some() && q <= 1024 {
                Ok(())
            } else {
                Err(self.invalid(format!("{q} is not a supported prime power")))
            }
        };
        match *self {
            Cyclic(n) | Sym(n) | Alt(n) if n == 0 => Err(self.invalid("degree must be positive")),
            Cyclic(_) | Sym(_) | Alt(_) => Ok(()),
            ElemAbelian(p, r) => {
                need_prime(p)?;
                if r == 0 {
                    return Err(self.invalid("rank must be positive"));
                }
                Ok(())
            }
            Dihedral(n) if n < 3 => Err(self.invalid("n must be at least 3")),
            Dihedral(_) => Ok(()),
            Frobenius(p, d) => {
                need_prime(p)?;
                if d == 0 || (p - 1) % d != 0 {
                    return Err(self.invalid(format!("{d} does not divide {}", p - 1)));
                }
                Ok(())
            }
            AffineSemilinear(q, d, f) => {
                need_field(q)?;
                let (_, e) = prime_power(q).unwrap();
                if d == 0 || (q - 1) % d != 0 {
                    return Err(self.invalid(format!("{d} does not divide {}", q - 1)));
                }
                if f == 0 || e % f != 0 {
                    return Err(self.invalid(format!("{f} does not divide the field degree {e}")));
                }
                Ok(())
            }
            Agl1(q) | Psl2(q) | Pgl2(q) | PGammaL2(q) => need_field(q),
            PSigmaL2(q, f) => {
                need_field(q)?;
                let (_, e) = prime_power(q).unwrap();
                if f == 0 || e % f != 0 {
                    return Err(self.invalid(format!("{f} does not divide the field degree {e}")));
                }
                Ok(())
            }
            Psl3(q) => {
                need_prime(q)?;
                if q > 7 {
                    return Err(self.invalid("only prime fields up to 7 are supported"));
                }
                Ok(())
            }
            Asl3_2 | M10 | M11 => Ok(()),
        }
    }

    pub fn degree(&self) -> usize {
        use CatalogGroup::*;
        (match *self {
            Cyclic(n) | Sym(n) | Alt(n) | Dihedral(n) => n,
            ElemAbelian(p, r) => p * r,
            Frobenius(p, _) => p,
            AffineSemilinear(q, _, _) | Agl1(q) => q,
            Psl2(q) | Pgl2(q) | PGammaL2(q) | PSigmaL2(q, _) => q + 1,
            Psl3(q) => q * q + q + 1,
            Asl3_2 => 8,
            M10 => 10,
            M11 => 11,
        }) as usize
    }

    /// The documented order, asserted at construction.
    pub fn expected_order(&self) -> u128 {
        use CatalogGroup::*;
        let psl2 = |q: u128| q * (q * q - 1) / if q.is_multiple_of(2) { 1 } else { 2 };
        match *self {
            Cyclic(n) => n as u128,
            ElemAbelian(p, r) => (p as u128).pow(r),
            Dihedral(n) => 2 * n as u128,
            Frobenius(p, d) => p as u128 * d as u128,
            AffineSemilinear(q, d, f) => q as u128 * d as u128 * f as u128,
            Agl1(q) => q as u128 * (q as u128 - 1),
            Sym(n) => (1..=n as u128).product(),
            Alt(n) => (1..=n as u128).product::<u128>() / if n >= 2 { 2 } else { 1 },
            Psl2(q) => psl2(q as u128),
            Pgl2(q) => q as u128 * (q as u128 * q as u128 - 1),
            PGammaL2(q) => prime_power(q).unwrap().1 as u128 * q as u128 * (q as u128 * q as u128 - 1),
            PSigmaL2(q, f) => f as u128 * psl2(q as u128),
            Psl3(q) => {
                let q = q as u128;
                q.pow(3) * (q.pow(3) - 1) * (q * q - 1) / if (q - 1).is_multiple_of(3) { 3 } else { 1 }
            }
            Asl3_2 => 1344,
            M10 => 720,
            M11 => 7920,
        }
    }

    pub fn construct(&self) -> Result<PermGroup> {
        self.check()?;
        let gens = self.generators();
        let group = PermGroup::new(self.degree(), gens)?;
        let expected = self.expected_order();
        if group.order() != expected {
            return Err(Error::CatalogOrder { name: self.name(), expected, found: group.order() });
        }
        Ok(group)
    }

    fn generators(&self) -> Vec<Permutation> {
        use CatalogGroup::*;
        let n = self.degree();
        match *self {
            Cyclic(_) => vec![cycle(n, 0..n as u32)],
            ElemAbelian(p, r) => (0..r).map(|i| cycle(n, i * p..(i + 1) * p)).collect(),
            Dihedral(m) => {
                let refl: Vec<u32> = (0..m).map(|x| (m - x) % m).collect();
                vec![cycle(n, 0..m), Permutation::from_images(refl).unwrap()]
            }
            Sym(m) => match m {
                1 => vec![],
                2 => vec![cycle(n, 0..2)],
                _ => vec![cycle(n, 0..m), cycle(n, 0..2)],
            },
            Alt(m) => match m {
                1 | 2 => vec![],
                3 => vec![cycle(n, 0..3)],
                _ if m % 2 == 1 => vec![cycle(n, 0..3), cycle(n, 0..m)],
                _ => vec![cycle(n, 0..3), cycle(n, 1..m)],
            },
            Frobenius(p, d) => affine_generators(&Field::new(p).unwrap(), d, 1),
            AffineSemilinear(q, d, f) => affine_generators(&Field::new(q).unwrap(), d, f),
            Agl1(q) => affine_generators(&Field::new(q).unwrap(), q - 1, 1),
            Psl2(q) => projective_generators(&Field::new(q).unwrap(), ProjectiveKind::Special),
            Pgl2(q) => projective_generators(&Field::new(q).unwrap(), ProjectiveKind::General),
            PGammaL2(q) => {
                let f = Field::new(q).unwrap();
                let mut g = projective_generators(&f, ProjectiveKind::General);
                g.push(semilinear_map(&f, 1, 0, 0, 1, 1));
                g
            }
            PSigmaL2(q, order) => {
                let f = Field::new(q).unwrap();
                let mut g = projective_generators(&f, ProjectiveKind::Special);
                if order > 1 {
                    g.push(semilinear_map(&f, 1, 0, 0, 1, f.degree() / order));
                }
                g
            }
            M10 => {
                let f = Field::new(9).unwrap();
                let mut g = projective_generators(&f, ProjectiveKind::Special);
                // x -> w x^3 with w a non-square
                g.push(semilinear_map(&f, f.primitive(), 0, 0, 1, 1));
                g
            }
            Psl3(p) => psl3_generators(p),
            Asl3_2 => asl3_2_generators(),
            M11 => vec![
                parse_cycles("(1 2 3 4 5 6 7 8 9 10 11)", 11).unwrap(),
                parse_cycles("(3 7 11 8)(4 10 5 6)", 11).unwrap(),
            ],
        }
    }
}

impl fmt::Display for CatalogGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn cycle(degree: usize, points: std::ops::Range<u32>) -> Permutation {
    let pts: Vec<u32> = points.collect();
    Permutation::from_cycles(degree, &[&pts])
}

/// Translations by a basis of GF(q) over GF(p), multiplication by an
/// element of order `d`, and the field automorphism of order `f`.
fn affine_generators(field: &Field, d: u32, f: u32) -> Vec<Permutation> {
    let q = field.order();
    let p = field.characteristic();
    let mut gens = Vec::new();
    for i in 0..field.degree() {
        let shift = p.pow(i);
        gens.push(Permutation::from_images((0..q).map(|x| field.add(x, shift)).collect()).unwrap());
    }
    if d > 1 {
        let a = field.pow(field.primitive(), ((q - 1) / d) as u64);
        gens.push(Permutation::from_images((0..q).map(|x| field.mul(a, x)).collect()).unwrap());
    }
    if f > 1 {
        let k = field.degree() / f;
        gens.push(Permutation::from_images((0..q).map(|x| field.frobenius(x, k)).collect()).unwrap());
    }
    gens
}

#[derive(Clone, Copy)]
enum ProjectiveKind {
    Special,
    General,
}

/// Points `0..q` are field elements, point `q` is infinity.
fn projective_generators(field: &Field, kind: ProjectiveKind) -> Vec<Permutation> {
    let w = field.primitive();
    let one = 1;
    let minus_one = field.neg(1);
    let translation = semilinear_map(field, one, one, 0, one, 0);
    match kind {
        ProjectiveKind::Special => vec![
            translation,
            // x -> w^2 x
            semilinear_map(field, w, 0, 0, field.inv(w), 0),
            // x -> -1/x
            semilinear_map(field, 0, minus_one, one, 0, 0),
        ],
        ProjectiveKind::General => {
            vec![translation, semilinear_map(field, w, 0, 0, one, 0), semilinear_map(field, 0, one, one, 0, 0)]
        }
    }
}

/// `x -> (a y + b) / (c y + d)` with `y = x^(p^k)`, on the projective line.
fn semilinear_map(field: &Field, a: u32, b: u32, c: u32, d: u32, k: u32) -> Permutation {
    let q = field.order();
    let inf = q;
    let apply = |x: u32| -> u32 {
        if x == inf {
            return if c == 0 { inf } else { field.mul(a, field.inv(c)) };
        }
        let y = field.frobenius(x, k);
        let num = field.add(field.mul(a, y), b);
        let den = field.add(field.mul(c, y), d);
        if den == 0 {
            inf
        } else {
            field.mul(num, field.inv(den))
        }
    };
    Permutation::from_images((0..=q).map(apply).collect()).expect("invertible map")
}

/// Points of the projective plane over GF(p), as normalized vectors.
fn projective_plane_points(p: u32) -> Vec<[u32; 3]> {
    let mut pts = Vec::new();
    for v in 0..p * p * p {
        let x = [v / (p * p), (v / p) % p, v % p];
        if let Some(&lead) = x.iter().find(|&&c| c != 0) {
            if lead == 1 {
                pts.push(x);
            }
        }
    }
    pts
}

fn psl3_generators(p: u32) -> Vec<Permutation> {
    let pts = projective_plane_points(p);
    let index = |v: [u32; 3]| -> u32 {
        let lead = *v.iter().find(|&&c| c != 0).unwrap();
        let inv = (1..p).find(|&t| t * lead % p == 1).unwrap();
        let w = v.map(|c| c * inv % p);
        pts.iter().position(|&x| x == w).unwrap() as u32
    };
    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            // row vector times the transvection I + E_ij: coordinate j += coordinate i
            let images = pts
                .iter()
                .map(|&v| {
                    let mut w = v;
                    w[j] = (w[j] + w[i]) % p;
                    index(w)
                })
                .collect();
            gens.push(Permutation::from_images(images).unwrap());
        }
    }
    gens
}

fn asl3_2_generators() -> Vec<Permutation> {
    let mut gens = Vec::new();
    for i in 0..3 {
        gens.push(Permutation::from_images((0..8u32).map(|x| x ^ (1 << i)).collect()).unwrap());
    }
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let images = (0..8u32).map(|x| x ^ (((x >> i) & 1) << j)).collect();
                gens.push(Permutation::from_images(images).unwrap());
            }
        }
    }
    gens
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Catalog(CatalogGroup),
    Generators(Vec<Permutation>),
}

/// A parsed group description: a catalog name or an explicit generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub degree: usize,
    pub label: String,
}

impl GroupSpec {
    pub fn catalog(group: CatalogGroup) -> GroupSpec {
        GroupSpec { degree: group.degree(), label: group.name(), kind: GroupKind::Catalog(group) }
    }

    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> GroupSpec {
        let label = format!("<{} generators on {} points>", gens.len(), degree);
        GroupSpec { kind: GroupKind::Generators(gens), degree, label }
    }

    /// Parses an inline `catalog:Name(args)` reference.
    pub fn parse_inline(text: &str) -> Result<GroupSpec> {
        let name = text.trim().strip_prefix("catalog:").ok_or_else(|| Error::Syntax {
            line: 1,
            message: format!("expected `catalog:Name(args)`, got `{text}`"),
        })?;
        Ok(GroupSpec::catalog(CatalogGroup::parse(name)?))
    }

    /// Canonical text: `catalog: Name(args)` or a `degree`/`gen` block.
    pub fn render(&self) -> String {
        match &self.kind {
            GroupKind::Catalog(c) => format!("catalog: {}\n", c.name()),
            GroupKind::Generators(gens) => {
                let mut s = format!("degree {}\n", self.degree);
                for g in gens {
                    s.push_str(&format!("gen {}\n", g.to_cycle_string()));
                }
                s
            }
        }
    }

    /// Short single-line form used in result documents.
    pub fn canonical(&self) -> String {
        match &self.kind {
            GroupKind::Catalog(c) => format!("catalog:{}", c.name()),
            GroupKind::Generators(gens) => {
                let gens: Vec<String> = gens.iter().map(|g| g.to_cycle_string()).collect();
                format!("degree {}; {}", self.degree, gens.join("; "))
            }
        }
    }

    pub fn construct(&self) -> Result<PermGroup> {
        match &self.kind {
            GroupKind::Catalog(c) => c.construct(),
            GroupKind::Generators(gens) => PermGroup::new(self.degree, gens.clone()),
        }
    }
}

/// Parses the group file format described in the module docs.
pub fn parse_group_file(text: &str) -> Result<GroupSpec> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    let mut catalog: Option<(usize, CatalogGroup)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |message: String| Error::Syntax { line: line_no, message };
        if catalog.is_some() {
            return Err(syntax("nothing may follow a catalog line".into()));
        }
        if let Some(rest) = line.strip_prefix("catalog:") {
            if degree.is_some() {
                return Err(syntax("catalog line after a degree header".into()));
            }
            let group = CatalogGroup::parse(rest).map_err(|e| syntax(e.to_string()))?;
            catalog = Some((line_no, group));
        } else if let Some(rest) = line.strip_prefix("degree") {
            if degree.is_some() {
                return Err(syntax("duplicate degree header".into()));
            }
            let n: usize = rest.trim().parse().map_err(|_| syntax(format!("bad degree `{}`", rest.trim())))?;
            if n == 0 {
                return Err(syntax("degree must be positive".into()));
            }
            degree = Some(n);
        } else if let Some(rest) = line.strip_prefix("gen") {
            let n = degree.ok_or_else(|| syntax("`gen` before `degree`".into()))?;
            let perm = parse_cycles(rest.trim(), n).map_err(|e| syntax(e.to_string()))?;
            gens.push(perm);
        } else {
            return Err(syntax(format!("unrecognized line `{line}`")));
        }
    }
    if let Some((_, group)) = catalog {
        return Ok(GroupSpec::catalog(group));
    }
    let degree = degree.ok_or(Error::Syntax { line: 1, message: "missing `degree` header or catalog line".into() })?;
    Ok(GroupSpec::from_generators(degree, gens))
}
