//! Small finite fields GF(p^e) with log/exp tables.
//!
//! Elements are encoded as integers `0..q` holding base-`p` coefficient
//! vectors of polynomials over GF(p); `0` is zero and `1` is one. The
//! modulus is the first monic primitive polynomial of degree `e` in
//! lexicographic order of its coefficients, so the encoding is deterministic.

#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// `Some((p, e))` if `q = p^e` with `p` prime.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl Field {
    pub fn new(q: u32) -> Option<Field> {
        let (p, e) = prime_power(q)?;
        // modulus coefficients c_0..c_{e-1} encoded as an integer, x^e implicit
        for code in 0..q {
            let modulus: Vec<u32> = digits(code, p, e);
            if let Some(exp) = powers_of_x(p, e, &modulus) {
                let mut log = vec![u32::MAX; q as usize];
                for (k, &v) in exp.iter().enumerate() {
                    log[v as usize] = k as u32;
                }
                return Some(Field { p, e, q, exp, log });
            }
        }
        None
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// The fixed primitive element.
    pub fn primitive(&self) -> u32 {
        self.exp[1 % (self.q as usize - 1)]
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (p, mut a, mut b) = (self.p, a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let (p, mut a) = (self.p, a);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (k % n)) % n) as usize]
    }

    /// `a^(p^k)`, the `k`-th power of the Frobenius automorphism.
    pub fn frobenius(&self, a: u32, k: u32) -> u32 {
        self.pow(a, (self.p as u64).pow(k))
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize].is_multiple_of(2)
    }
}

fn digits(mut code: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

/// Powers `x^0..x^(q-2)` modulo `x^e + sum c_i x^i`, or `None` unless `x`
/// has order exactly `q - 1`.
fn powers_of_x(p: u32, e: u32, modulus: &[u32]) -> Option<Vec<u32>> {
    let q = p.pow(e);
    let mut cur = vec![0u32; e as usize];
    cur[0] = 1;
    let mut out = Vec::with_capacity(q as usize - 1);
    for k in 0..q - 1 {
        let code = cur.iter().rev().fold(0, |acc, &c| acc * p + c);
        if k > 0 && code == 1 {
            return None;
        }
        out.push(code);
        // multiply by x
        let top = cur[e as usize - 1];
        for i in (1..e as usize).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        for i in 0..e as usize {
            cur[i] = (cur[i] + p * p - top * modulus[i] % p) % p;
        }
    }
    let code = cur.iter().rev().fold(0, |acc, &c| acc * p + c);
    (code == 1).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn field_axioms_small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32] {
            let f = Field::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in [0, 1, q - 1] {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)), "q={q}");
                    }
                }
            }
            // Frobenius is additive and multiplicative
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
                }
            }
        }
    }

    #[test]
    fn primitive_element_generates() {
        let f = Field::new(16).unwrap();
        let w = f.primitive();
        let mut seen = std::collections::HashSet::new();
        let mut x = 1;
        for _ in 0..15 {
            seen.insert(x);
            x = f.mul(x, w);
        }
        assert_eq!(seen.len(), 15);
    }
}
