//! Small finite fields: prime fields `F_q` with `q < 2^31` and binary fields
//! `GF(2^f)` with `f <= 32`.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic modulo a prime `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) || q >= 1 << 31 {
            return Err(Error::ParamOutOfRange(format!("{q} is not a usable prime")));
        }
        Ok(PrimeField { q })
    }

    /// Least prime `q ≡ 1 (mod e)` with `q > lower`.
    pub fn least_prime_above(e: u64, lower: u64) -> Result<Self> {
        let bound = 1u64 << 31;
        let mut q = (lower / e + 1) * e + 1;
        while q < bound {
            if q > lower && is_prime(q) {
                return Ok(PrimeField { q });
            }
            q += e;
        }
        Err(Error::NoSuitablePrime { exponent: e, bound })
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.q - b) % self.q
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.q - a) % self.q
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.q as i64) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.q;
        a %= self.q;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.q != 0, "inverse of zero in F_{}", self.q);
        self.pow(a, self.q - 2)
    }

    /// Smallest primitive root.
    pub fn primitive_root(&self) -> u64 {
        let n = self.q - 1;
        let factors = odd_and_two_factors(n);
        (2..self.q)
            .find(|&g| factors.iter().all(|&p| self.pow(g, n / p) != 1))
            .unwrap_or(1)
    }

    /// Symmetric lift to `(-q/2, q/2]`.
    pub fn lift(&self, a: u64) -> i64 {
        if a > self.q / 2 {
            a as i64 - self.q as i64
        } else {
            a as i64
        }
    }

    /// Basis of the right nullspace of a matrix over `F_q`.
    pub fn nullspace(&self, m: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
        let mut a: Vec<Vec<u64>> = m.to_vec();
        let rows = a.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
            a.swap(r, p);
            let inv = self.inv(a[r][c]);
            for v in a[r].iter_mut() {
                *v = self.mul(*v, inv);
            }
            for i in 0..rows {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..cols {
                        let t = self.mul(f, a[r][j]);
                        a[i][j] = self.sub(a[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = self.neg(a[row][free]);
            }
            basis.push(v);
        }
        basis
    }
}

fn odd_and_two_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `a` modulo `r` (`gcd(a, r) = 1`).
pub fn multiplicative_order(a: u64, r: u64) -> u64 {
    if r == 1 {
        return 1;
    }
    let mut x = a % r;
    let mut k = 1;
    while x != 1 {
        x = x * a % r;
        k += 1;
    }
    k
}

/// `GF(2^f)` with elements as bit vectors modulo an irreducible polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinaryField {
    pub f: u32,
    modulus: u64,
}

impl BinaryField {
    pub fn new(f: u32) -> Result<Self> {
        if f == 0 || f > 32 {
            return Err(Error::ParamOutOfRange(format!("GF(2^{f}) is out of range")));
        }
        let modulus = ((1u64 << f)..(1u64 << (f + 1)))
            .find(|&p| is_irreducible_gf2(p))
            .expect("irreducible polynomials exist in every degree");
        Ok(BinaryField { f, modulus })
    }

    pub fn size(&self) -> u64 {
        1 << self.f
    }

    pub fn mul(&self, mut a: u64, mut b: u64) -> u64 {
        let mut r = 0u64;
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & (1 << self.f) != 0 {
                a ^= self.modulus;
            }
        }
        r
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u64) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// All elements of exact multiplicative order `r`, ascending.
    pub fn elements_of_order(&self, r: u64) -> Vec<u64> {
        (1..self.size()).filter(|&a| self.order(a) == r).collect()
    }
}

fn is_irreducible_gf2(p: u64) -> bool {
    let deg = 63 - p.leading_zeros();
    (1u64..(1 << (deg / 2 + 1))).filter(|&d| d > 1).all(|d| gf2_rem(p, d) != 0)
}

fn gf2_rem(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    while a != 0 && 63 - a.leading_zeros() >= db {
        a ^= b << (63 - a.leading_zeros() - db);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = PrimeField::least_prime_above(12, 19).unwrap();
        assert_eq!(f.q, 37);
        let g = f.primitive_root();
        assert_eq!(multiplicative_order(g, f.q), 36);
        assert_eq!(f.mul(f.inv(5), 5), 1);
        assert_eq!(f.lift(36), -1);
    }

    #[test]
    fn nullspace_dimension() {
        let f = PrimeField::new(7).unwrap();
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ns = f.nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!((v[0] + 2 * v[1] + 3 * v[2]) % 7, 0);
        }
    }

    #[test]
    fn binary_field_orders() {
        let f4 = BinaryField::new(2).unwrap();
        assert_eq!(f4.elements_of_order(3).len(), 2);
        let f8 = BinaryField::new(3).unwrap();
        assert_eq!(f8.elements_of_order(7).len(), 6);
        assert_eq!(multiplicative_order(2, 7), 3);
    }
}
