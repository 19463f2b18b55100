use serde::{Deserialize, Serialize};

use super::GroupTable;
use crate::error::{Error, Result};

/// Parameters of `D(n, m) = D_{2^n} * C_{2^m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupParams {
    pub n: u32,
    pub m: u32,
}

impl GroupParams {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::ParamOutOfRange(format!("n = {n} violates n >= 3")));
        }
        if m < 2 {
            return Err(Error::ParamOutOfRange(format!("m = {m} violates m >= 2")));
        }
        if n + m - 1 > 13 {
            return Err(Error::ParamOutOfRange(format!(
                "n + m - 1 = {} exceeds the desk-scale bound 13",
                n + m - 1
            )));
        }
        Ok(GroupParams { n, m })
    }

    /// `|D| = 2^{n+m-1}`.
    pub fn order(&self) -> usize {
        1 << (self.n + self.m - 1)
    }

    /// Range of the normal-form `x` exponent, `2^{n-2}`.
    pub fn x_range(&self) -> u32 {
        1 << (self.n - 2)
    }

    pub fn x_order(&self) -> u32 {
        1 << (self.n - 1)
    }

    pub fn z_order(&self) -> u32 {
        1 << self.m
    }

    /// Reduces an arbitrary word `x^i y^j z^k` to normal form.
    pub fn reduce(&self, i: i64, j: i64, k: i64) -> Element {
        let half = self.x_range() as i64;
        let mut i = i.rem_euclid(self.x_order() as i64);
        let mut k = k;
        if i >= half {
            i -= half;
            k += (self.z_order() / 2) as i64;
        }
        Element {
            i: i as u32,
            j: j.rem_euclid(2) as u32,
            k: k.rem_euclid(self.z_order() as i64) as u32,
        }
    }

    /// `(x^{i1} y^{j1} z^{k1})(x^{i2} y^{j2} z^{k2}) = x^{i1 ± i2} y^{j1+j2} z^{k1+k2}`.
    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        let sign = if a.j == 0 { 1 } else { -1 };
        self.reduce(
            a.i as i64 + sign * b.i as i64,
            (a.j + b.j) as i64,
            (a.k + b.k) as i64,
        )
    }

    #[inline]
    pub fn index(&self, e: Element) -> usize {
        ((e.i as usize * 2 + e.j as usize) << self.m) + e.k as usize
    }

    #[inline]
    pub fn element(&self, idx: usize) -> Element {
        let k = (idx & ((1 << self.m) - 1)) as u32;
        let rest = idx >> self.m;
        Element { i: (rest / 2) as u32, j: (rest % 2) as u32, k }
    }

    pub fn checked_index(&self, e: Element) -> Result<usize> {
        if e.i >= self.x_range() || e.j > 1 || e.k >= self.z_order() {
            return Err(Error::ParamOutOfRange(format!(
                "element [{},{},{}] is not in normal form for D({},{})",
                e.i, e.j, e.k, self.n, self.m
            )));
        }
        Ok(self.index(e))
    }

    pub fn x(&self) -> usize {
        self.index(self.reduce(1, 0, 0))
    }

    pub fn y(&self) -> usize {
        self.index(self.reduce(0, 1, 0))
    }

    pub fn z(&self) -> usize {
        self.index(self.reduce(0, 0, 1))
    }

    /// Index of `x^i y^j z^k` for arbitrary integer exponents.
    pub fn word(&self, i: i64, j: i64, k: i64) -> usize {
        self.index(self.reduce(i, j, k))
    }
}

/// Normal-form element `x^i y^j z^k`; serialized as `[i, j, k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[u32; 3]", into = "[u32; 3]")]
pub struct Element {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

impl From<[u32; 3]> for Element {
    fn from(v: [u32; 3]) -> Self {
        Element { i: v[0], j: v[1], k: v[2] }
    }
}

impl From<Element> for [u32; 3] {
    fn from(e: Element) -> Self {
        [e.i, e.j, e.k]
    }
}

impl Element {
    pub const IDENTITY: Element = Element { i: 0, j: 0, k: 0 };
}

/// The group `D(n, m)` with generators `x, y, z`.
pub fn make_group(params: GroupParams) -> Result<GroupTable> {
    let params = GroupParams::new(params.n, params.m)?;
    GroupTable::from_family(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: u32, m: u32) -> (GroupParams, GroupTable) {
        let p = GroupParams::new(n, m).unwrap();
        (p, make_group(p).unwrap())
    }

    #[test]
    fn constructor_rejects_small_parameters() {
        let e = GroupParams::new(2, 3).unwrap_err();
        assert!(e.to_string().contains("n >= 3"));
        let e = GroupParams::new(3, 1).unwrap_err();
        assert!(e.to_string().contains("m >= 2"));
    }

    #[test]
    fn order_of_d32() {
        let (_, g) = d(3, 2);
        assert_eq!(g.order(), 16);
    }

    #[test]
    fn y_x_y_is_x_z_squared() {
        let (p, g) = d(3, 2);
        let yxy = g.mul(g.mul(p.y(), p.x()), p.y());
        assert_eq!(p.element(yxy), Element { i: 1, j: 0, k: 2 });
        assert_eq!(yxy, g.inv(p.x()));
    }

    #[test]
    fn generator_orders() {
        let (p, g) = d(4, 2);
        assert_eq!(g.element_order(p.x()), 8);
        assert_eq!(g.element_order(p.y()), 2);
        assert_eq!(g.element_order(p.z()), 4);
    }

    #[test]
    fn defining_relations_hold() {
        for n in 3..=6 {
            for m in 2..=4 {
                let (p, g) = d(n, m);
                let (x, y, z) = (p.x(), p.y(), p.z());
                assert_eq!(g.pow(x, 1 << (n - 1)), 0);
                assert_eq!(g.mul(y, y), 0);
                assert_eq!(g.pow(z, 1 << m), 0);
                assert_eq!(g.commutator(x, z), 0);
                assert_eq!(g.commutator(y, z), 0);
                assert_eq!(g.conj(y, x), g.inv(x));
                assert_eq!(g.pow(x, 1 << (n - 2)), g.pow(z, 1 << (m - 1)));
            }
        }
    }

    #[test]
    fn element_index_roundtrip() {
        let p = GroupParams::new(5, 3).unwrap();
        for idx in 0..p.order() {
            assert_eq!(p.index(p.element(idx)), idx);
        }
        assert!(p.checked_index(Element { i: 8, j: 0, k: 0 }).is_err());
    }
}
