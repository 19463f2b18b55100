use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Cyclotomic;
use crate::error::{Error, Result};

/// Integer coefficients `a_s(χ)`, `0 <= s < 2^{k-1}`, of a column of
/// generalized decomposition numbers for an element `u` of order `2^k`.
/// Indices beyond the stored half follow `a_{s + 2^{k-1}} = -a_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffColumns {
    pub k: u32,
    pub rows: Vec<Vec<BigInt>>,
}

impl CoeffColumns {
    pub fn new(k: u32, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::ParamOutOfRange("coefficient columns need k >= 1".into()));
        }
        let half = 1usize << (k - 1);
        if let Some(r) = rows.iter().find(|r| r.len() != half) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} for k = {k} (expected {half})",
                r.len()
            )));
        }
        Ok(CoeffColumns { k, rows })
    }

    pub fn from_i64(k: u32, rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(k, rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn half(&self) -> usize {
        1 << (self.k - 1)
    }

    /// `a_s(χ)` for any integer `s`, using the sign convention.
    pub fn coeff(&self, row: usize, s: i64) -> BigInt {
        let n = 1i64 << self.k;
        let s = s.rem_euclid(n) as usize;
        let half = self.half();
        if s < half {
            self.rows[row][s].clone()
        } else {
            -self.rows[row][s - half].clone()
        }
    }
}

/// `d(u^γ)_χ = Σ_s a_s(χ) ζ_{2^k}^{sγ}` for odd `γ`.
pub fn galois_expand(cols: &CoeffColumns, gamma: i64) -> Result<Vec<Cyclotomic>> {
    if gamma.is_even() {
        return Err(Error::EvenGaloisExponent(gamma));
    }
    let n = 1u64 << cols.k;
    let half = cols.half() as i64;
    Ok(cols
        .rows
        .iter()
        .map(|row| {
            let mut acc = vec![BigRational::zero(); half as usize];
            for (s, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let e = (s as i64 * gamma).rem_euclid(n as i64);
                let a = BigRational::from_integer(a.clone());
                if e < half {
                    acc[e as usize] += a;
                } else {
                    acc[(e - half) as usize] -= a;
                }
            }
            Cyclotomic::from_coeffs(n, acc).expect("2-power conductor has φ = 2^{k-1}")
        })
        .collect())
}

/// Inverse transform `a_s = 2^{1-k} Σ_γ d(u^γ) ζ_{2^k}^{-γ s}` over the odd
/// residues `γ` modulo `2^k`. Keys of `columns` are Galois exponents and must
/// cover every odd residue exactly once.
pub fn galois_coeffs(columns: &BTreeMap<i64, Vec<Cyclotomic>>, k: u32) -> Result<CoeffColumns> {
    if k == 0 {
        return Err(Error::ParamOutOfRange("coefficient columns need k >= 1".into()));
    }
    let n = 1i64 << k;
    let mut by_residue: BTreeMap<i64, &Vec<Cyclotomic>> = BTreeMap::new();
    for (&g, col) in columns {
        if g.is_even() {
            return Err(Error::EvenGaloisExponent(g));
        }
        if by_residue.insert(g.rem_euclid(n), col).is_some() {
            return Err(Error::IncompleteTransversal(format!("residue {} repeated", g.rem_euclid(n))));
        }
    }
    let missing: Vec<i64> =
        (1..n).step_by(2).filter(|r| !by_residue.contains_key(r)).collect();
    if !missing.is_empty() {
        return Err(Error::IncompleteTransversal(format!("missing odd residues {missing:?}")));
    }
    let rows = by_residue.values().next().map_or(0, |c| c.len());
    if by_residue.values().any(|c| c.len() != rows) {
        return Err(Error::DimensionMismatch("columns of different lengths".into()));
    }
    let half = (n / 2) as usize;
    let scale = BigRational::new(BigInt::one(), BigInt::from(half));
    let mut out = vec![vec![BigInt::zero(); half]; rows];
    for (chi, row_out) in out.iter_mut().enumerate() {
        for (s, slot) in row_out.iter_mut().enumerate() {
            let mut acc = Cyclotomic::zero();
            for (&g, col) in &by_residue {
                let term = &col[chi] * &Cyclotomic::zeta(n as u64, -g * s as i64);
                acc = &acc + &term;
            }
            let v = acc.scale(&scale).to_rational().ok_or_else(|| {
                Error::NonIntegral(format!("a_{s} of row {chi} is not rational"))
            })?;
            if !v.is_integer() {
                return Err(Error::NonIntegral(format!("a_{s} of row {chi} equals {v}")));
            }
            *slot = v.to_integer();
        }
    }
    CoeffColumns::new(k, out)
}

/// Whether `Σ_{s < 2^{k-1}} a_s(χ)` is odd.
pub fn parity_check_height_zero(cols: &CoeffColumns, row: usize) -> bool {
    let s: BigInt = cols.rows[row].iter().sum();
    s.is_odd()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_twist_and_single_term() {
        let cols = CoeffColumns::from_i64(3, &[vec![0, 1, 0, 0], vec![2, 0, -1, 1]]).unwrap();
        let d = galois_expand(&cols, 1).unwrap();
        assert_eq!(d[0], Cyclotomic::zeta(8, 1));
        let d3 = galois_expand(&cols, 3).unwrap();
        assert_eq!(d3[0], Cyclotomic::zeta(8, 3));
        assert!(galois_expand(&cols, 2).is_err());
    }

    #[test]
    fn conjugation_fixes_real_columns() {
        // a_j = -a_{2^{k-1}-j} makes every entry real
        let cols = CoeffColumns::from_i64(3, &[vec![1, 2, 0, -2], vec![3, 0, 0, 0]]).unwrap();
        assert_eq!(galois_expand(&cols, -1).unwrap(), galois_expand(&cols, 1).unwrap());
    }

    #[test]
    fn constant_family_has_only_a0() {
        let d = vec![Cyclotomic::from_int(3), Cyclotomic::from_int(-1)];
        let family: BTreeMap<i64, Vec<Cyclotomic>> = [1, 3, 5, 7].map(|g| (g, d.clone())).into();
        let c = galois_coeffs(&family, 3).unwrap();
        assert_eq!(c, CoeffColumns::from_i64(3, &[vec![3, 0, 0, 0], vec![-1, 0, 0, 0]]).unwrap());
    }

    #[test]
    fn incomplete_transversal_is_rejected() {
        let d = vec![Cyclotomic::one()];
        let family: BTreeMap<i64, Vec<Cyclotomic>> = [1, 3, 5].map(|g| (g, d.clone())).into();
        assert!(matches!(galois_coeffs(&family, 3), Err(Error::IncompleteTransversal(_))));
    }

    #[test]
    fn parity_examples() {
        let c = CoeffColumns::from_i64(2, &[vec![1, 0], vec![1, 1]]).unwrap();
        assert!(parity_check_height_zero(&c, 0));
        assert!(!parity_check_height_zero(&c, 1));
    }
}
