//! A fixed list of catalog groups used for property sweeps.

use super::{is_prime, prime_power, CatalogGroup};

const FIELDS: &[u32] = &[2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47];

fn divisors(n: u32) -> impl Iterator<Item = u32> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

/// Catalog groups of order at most `max_order`, family by family, with
/// the obvious duplicates left out (`Frobenius(p, 2)` is dihedral,
/// `Frobenius(p, p - 1)` is `AGL1(p)`, and so on).
pub fn catalog_sweep(max_order: u128) -> Vec<CatalogGroup> {
    use CatalogGroup::*;
    let mut out = Vec::new();
    out.extend((2..=12).map(Cyclic));
    out.extend([(2, 2), (2, 3), (2, 4), (3, 3)].map(|(p, r)| ElemAbelian(p, r)));
    out.extend(FIELDS.iter().filter(|&&p| p > 2 && is_prime(p)).map(|&p| ElemAbelian(p, 2)));
    out.extend((3..=40).map(Dihedral));
    for &p in FIELDS.iter().filter(|&&p| is_prime(p)) {
        out.extend(divisors(p - 1).filter(|&d| d > 2 && d < p - 1).map(|d| Frobenius(p, d)));
    }
    for &q in FIELDS.iter().filter(|&&q| !is_prime(q)) {
        let e = prime_power(q).unwrap().1;
        for d in divisors(q - 1) {
            for f in divisors(e) {
                if (d, f) != (q - 1, 1) && d * f > 1 {
                    out.push(AffineSemilinear(q, d, f));
                }
            }
        }
    }
    out.extend(FIELDS.iter().filter(|&&q| q > 2).map(|&q| Agl1(q)));
    out.extend((3..=7).map(Sym));
    out.extend((4..=8).map(Alt));
    for &q in FIELDS.iter().filter(|&&q| q > 3) {
        out.push(Psl2(q));
        if q % 2 == 1 {
            out.push(Pgl2(q));
        }
        if !is_prime(q) {
            out.push(PGammaL2(q));
        }
    }
    out.extend([Psl3(2), Psl3(3), Asl3_2, M10, M11]);
    out.retain(|g| g.expected_order() <= max_order);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_is_valid_and_bounded() {
        let list = catalog_sweep(2000);
        assert!(list.len() > 100);
        for g in &list {
            assert!(CatalogGroup::parse(&g.name()).is_ok(), "{}", g.name());
            assert!(g.expected_order() <= 2000);
        }
        let names: std::collections::HashSet<String> = list.iter().map(|g| g.name()).collect();
        assert_eq!(names.len(), list.len());
        assert!(names.contains("PGammaL2(8)") && names.contains("Sym(6)") && !names.contains("M11"));
    }
}
