//! Exact cyclotomic numbers.
//!
//! A [`Cyclotomic`] of conductor `N` is stored by its rational coefficients in
//! the power basis `1, ζ_N, …, ζ_N^{φ(N)-1}` of `Q(ζ_N) = Q[x]/Φ_N`. For
//! `N = 2^k` this is the basis with exponents in `[0, 2^{k-1})`, obtained by
//! eliminating `ζ^{2^{k-1}} = -1`.

mod coeffs;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;

pub use coeffs::{galois_coeffs, galois_expand, parity_check_height_zero, CoeffColumns};

/// `x^e mod Φ_N` for every `e < N`, as integer vectors of length `φ(N)`.
struct Field {
    phi: usize,
    powers: Vec<Vec<i64>>,
}

fn field(n: u64) -> Arc<Field> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Field>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().expect("cyclotomic cache poisoned").get(&n) {
        return f.clone();
    }
    let f = Arc::new(build_field(n));
    cache.lock().expect("cyclotomic cache poisoned").insert(n, f.clone());
    f
}

fn build_field(n: u64) -> Field {
    let phi_poly = cyclotomic_polynomial(n);
    let phi = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce by the monic Φ_N
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1] - top * phi_poly[i];
        }
        cur[0] = -top * phi_poly[0];
    }
    Field { phi, powers }
}

/// Coefficients of `Φ_N`, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "conductor must be positive");
    // x^N - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = divide_monic(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quo = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = r[i + dd];
        quo[i] = c;
        for j in 0..=dd {
            r[i + j] -= c * den[j];
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    quo
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn prime_factors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Reduces an integer vector indexed by exponents `0..N` to power-basis
/// coefficients modulo `Φ_N`.
pub(crate) fn reduce_raw(n: u64, raw: &[i64]) -> Vec<i64> {
    let f = field(n);
    let mut acc = vec![0i64; f.phi];
    for (e, &c) in raw.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (a, &p) in acc.iter_mut().zip(&f.powers[e]) {
            *a += c * p;
        }
    }
    acc
}

/// An element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct Cyclotomic {
    n: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { n: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(linalg::q(v))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(v))
    }

    pub fn from_rational(v: BigRational) -> Self {
        Cyclotomic { n: 1, coeffs: vec![v] }
    }

    /// `ζ_N^e` for any integer `e`.
    pub fn zeta(n: u64, e: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let f = field(n);
        let e = e.rem_euclid(n as i64) as usize;
        Cyclotomic { n, coeffs: f.powers[e].iter().map(|&c| linalg::q(c)).collect() }
    }

    /// `Σ_e c_e ζ_N^e` from integer multiplicities indexed by exponent.
    pub fn from_exponents(n: u64, mult: &[i64]) -> Self {
        let f = field(n);
        let mut acc = vec![0i64; f.phi];
        for (e, &c) in mult.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (a, &p) in acc.iter_mut().zip(&f.powers[e % n as usize]) {
                *a += c * p;
            }
        }
        Cyclotomic { n, coeffs: acc.into_iter().map(linalg::q).collect() }
    }

    /// Builds an element from power-basis coefficients of length `φ(N)`.
    pub fn from_coeffs(n: u64, coeffs: Vec<BigRational>) -> Result<Self> {
        let phi = euler_phi(n) as usize;
        if coeffs.len() != phi {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for conductor {n} (expected {phi})",
                coeffs.len()
            )));
        }
        Ok(Cyclotomic { n, coeffs })
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        let r = self.reduced();
        (r.n == 1).then(|| r.coeffs[0].clone())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_rational().filter(linalg::is_integral).and_then(|q| q.to_integer().to_i64())
    }

    /// Algebraic integer test: the power basis is an integral basis of
    /// `Z[ζ_N]`, so integrality of every coefficient is exact.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(linalg::is_integral)
    }

    /// Same element written over `Q(ζ_M)`; `M` must be a multiple of `N`.
    pub fn lift(&self, m: u64) -> Self {
        if m == self.n {
            return self.clone();
        }
        assert!(m % self.n == 0, "conductor {m} is not a multiple of {}", self.n);
        let f = field(m);
        let step = (m / self.n) as usize;
        let mut acc = vec![BigRational::zero(); f.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, &p) in acc.iter_mut().zip(&f.powers[i * step % m as usize]) {
                if p != 0 {
                    *a += c * BigRational::from_integer(p.into());
                }
            }
        }
        Cyclotomic { n: m, coeffs: acc }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let l = self.n.lcm(&other.n);
        (self.lift(l), other.lift(l))
    }

    /// Galois image under `ζ_N ↦ ζ_N^g`; `g` must be coprime to `N`.
    pub fn galois(&self, g: i64) -> Result<Self> {
        let n = self.n as i64;
        if g.gcd(&n) != 1 {
            return Err(Error::EvenGaloisExponent(g));
        }
        let f = field(self.n);
        let g = g.rem_euclid(n) as usize;
        let mut acc = vec![BigRational::zero(); f.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, &p) in acc.iter_mut().zip(&f.powers[i * g % self.n as usize]) {
                if p != 0 {
                    *a += c * BigRational::from_integer(p.into());
                }
            }
        }
        Ok(Cyclotomic { n: self.n, coeffs: acc })
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit modulo every conductor")
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Smallest conductor over which the element is defined.
    pub fn reduced(&self) -> Self {
        let mut cur = self.clone();
        'outer: loop {
            if cur.n == 1 {
                return cur;
            }
            if cur.is_rational() {
                return Cyclotomic { n: 1, coeffs: vec![cur.coeffs[0].clone()] };
            }
            for p in prime_factors(cur.n) {
                let d = cur.n / p;
                if let Some(r) = cur.descend(d) {
                    cur = r;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Rewrites over `Q(ζ_d)` for `d | N` when the element lies there.
    fn descend(&self, d: u64) -> Option<Self> {
        let n = self.n as i64;
        // fixed by Gal(Q(ζ_N)/Q(ζ_d)) = {g ≡ 1 mod d}
        let mut g = 1 + d as i64;
        while g < n {
            if g.gcd(&n) == 1 && self.galois(g).ok()? != *self {
                return None;
            }
            g += d as i64;
        }
        let fd = field(d);
        let fnn = field(self.n);
        let step = (self.n / d) as usize;
        let basis: Vec<&Vec<i64>> =
            (0..fd.phi).map(|j| &fnn.powers[j * step % self.n as usize]).collect();
        let a: linalg::QMatrix = (0..fnn.phi)
            .map(|r| basis.iter().map(|b| linalg::q(b[r])).collect())
            .collect();
        let x = linalg::solve(&a, &self.coeffs)?;
        Some(Cyclotomic { n: d, coeffs: x })
    }

    /// Multiplication matrix columns `self·ζ^j`, scaled to integers.
    fn integral_norm_parts(&self) -> (linalg::ZMatrix, BigInt) {
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled = self.scale(&BigRational::from_integer(den.clone()));
        let phi = self.coeffs.len();
        let mut cols = Vec::with_capacity(phi);
        for j in 0..phi {
            let p = &scaled * &Cyclotomic::zeta(self.n, j as i64);
            cols.push(p.coeffs.iter().map(|c| c.to_integer()).collect::<Vec<_>>());
        }
        (linalg::transpose(&cols), den)
    }

    /// Absolute norm `N_{Q(ζ_N)/Q}`.
    pub fn norm(&self) -> BigRational {
        let (m, den) = self.integral_norm_parts();
        let phi = self.coeffs.len() as u32;
        BigRational::new(linalg::det_bareiss(&m), num_traits::pow(den, phi as usize))
    }

    /// 2-adic valuation normalized so that `ν(2) = 1`. The conductor must
    /// be a power of 2 after reduction.
    pub fn valuation(&self) -> Result<Valuation> {
        if self.is_zero() {
            return Ok(Valuation::Infinite);
        }
        let r = if self.n.is_power_of_two() { self.clone() } else { self.reduced() };
        if !r.n.is_power_of_two() {
            return Err(Error::Unsupported(format!(
                "valuation needs a 2-power conductor, got {}",
                r.n
            )));
        }
        let norm = r.norm();
        let num = linalg::v2(norm.numer()) as i64 - linalg::v2(norm.denom()) as i64;
        let phi = r.coeffs.len() as i64;
        Ok(Valuation::Finite(BigRational::new(num.into(), phi.into())))
    }

    /// Multiplicative inverse, by solving `self · y = 1` over the power basis.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Internal("inverse of zero".into()));
        }
        let phi = self.coeffs.len();
        let cols: Vec<Vec<BigRational>> = (0..phi)
            .map(|j| (self * &Cyclotomic::zeta(self.n, j as i64)).coeffs)
            .collect();
        let a = linalg::transpose(&cols);
        let mut e = vec![BigRational::zero(); phi];
        e[0] = BigRational::one();
        let x = linalg::solve(&a, &e).ok_or_else(|| Error::Internal("singular element".into()))?;
        Ok(Cyclotomic { n: self.n, coeffs: x })
    }

    /// Canonical key for sorting and hashing: reduced conductor, then
    /// coefficients.
    pub fn sort_key(&self) -> (u64, Vec<BigRational>) {
        let r = self.reduced();
        (r.n, r.coeffs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let r = self.reduced();
        let mut coeffs = serde_json::Map::new();
        for (e, c) in r.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(e.to_string(), serde_json::json!([int_json(c.numer()), int_json(c.denom())]));
            }
        }
        serde_json::json!({ "N": r.n, "coeffs": coeffs })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |s: &str| Error::Internal(format!("malformed cyclotomic JSON: {s}"));
        let n = v.get("N").and_then(|x| x.as_u64()).ok_or_else(|| bad("N"))?;
        if n == 0 {
            return Err(bad("N = 0"));
        }
        let phi = euler_phi(n) as usize;
        let mut coeffs = vec![BigRational::zero(); phi];
        let map = v.get("coeffs").and_then(|x| x.as_object()).ok_or_else(|| bad("coeffs"))?;
        for (k, pair) in map {
            let e: usize = k.parse().map_err(|_| bad("exponent"))?;
            let arr = pair.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("pair"))?;
            let num = json_int(&arr[0]).ok_or_else(|| bad("numerator"))?;
            let den = json_int(&arr[1]).ok_or_else(|| bad("denominator"))?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            let c = BigRational::new(num, den);
            if e < phi {
                coeffs[e] += c;
            } else {
                // exponents past φ(N) are reduced modulo Φ_N
                let z = Cyclotomic::zeta(n, e as i64).scale(&c);
                for (a, b) in coeffs.iter_mut().zip(z.coeffs) {
                    *a += b;
                }
            }
        }
        Ok(Cyclotomic { n, coeffs })
    }
}

fn int_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(x) => serde_json::Value::from(x),
        None => serde_json::Value::from(v.to_string()),
    }
}

fn json_int(v: &serde_json::Value) -> Option<BigInt> {
    if let Some(x) = v.as_i64() {
        return Some(BigInt::from(x));
    }
    v.as_str().and_then(|s| s.parse().ok())
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Cyclotomic::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        let mut terms = Vec::new();
        for (e, c) in r.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = match e {
                0 => c.to_string(),
                _ if c.is_one() => format!("z{}^{e}", r.n),
                _ if (-c).is_one() => format!("-z{}^{e}", r.n),
                _ => format!("{c}*z{}^{e}", r.n),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

impl std::ops::Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n == rhs.n {
            let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
            return Cyclotomic { n: self.n, coeffs };
        }
        let (a, b) = self.common(rhs);
        &a + &b
    }
}

impl std::ops::Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl std::ops::Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n != rhs.n {
            let (a, b) = self.common(rhs);
            return &a * &b;
        }
        let f = field(self.n);
        let n = self.n as usize;
        let mut raw = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[(i + j) % n] += a * b;
                }
            }
        }
        let mut acc = vec![BigRational::zero(); f.phi];
        for (e, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, &p) in acc.iter_mut().zip(&f.powers[e]) {
                if p != 0 {
                    *a += c * BigRational::from_integer(p.into());
                }
            }
        }
        Cyclotomic { n: self.n, coeffs: acc }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl std::ops::$tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl std::ops::Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
        iter.fold(Cyclotomic::zero(), |a, b| &a + &b)
    }
}

/// Value of `ν`; `Infinite` is the valuation of zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(BigRational),
    Infinite,
}

impl Valuation {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Valuation::Finite(v) if v.is_zero())
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Equal,
            (Valuation::Infinite, _) => Greater,
            (_, Valuation::Infinite) => Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl std::ops::Add for &Valuation {
    type Output = Valuation;
    fn add(self, rhs: &Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// `ν` of an element.
pub fn valuation(c: &Cyclotomic) -> Result<Valuation> {
    c.valuation()
}

/// Integer coefficients of an integral element, or `None`.
pub fn integer_coeffs(c: &Cyclotomic) -> Option<Vec<BigInt>> {
    c.is_integral().then(|| c.coeffs.iter().map(|x| x.to_integer()).collect())
}

/// Sparse exponent map of a reduced element, for diagnostics.
pub fn support(c: &Cyclotomic) -> BTreeMap<usize, BigRational> {
    c.coeffs.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(e, v)| (e, v.clone())).collect()
}
