//! Closed-form block invariants, conjecture checks and the weight count.

use serde::Serialize;

use crate::blocks::defect_zero_count;
use crate::chartab::dixon_table;
use crate::error::{Error, Result};
use crate::fusion::{build_fusion, FusionCase, FusionSystem};
use crate::pcgroup::GroupParams;

/// Numerical invariants of a block. For `n = 3` the heights `1` and `n - 2`
/// coincide and `k_n2` is `None`; `k_n2` is also `None` when no character
/// has height `n - 2 >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockInvariants {
    pub k: u64,
    pub k0: u64,
    pub k1: u64,
    pub k_n2: Option<u64>,
    pub l: u64,
    pub e: u64,
}

impl BlockInvariants {
    /// Height counts indexed by height, for defect group parameter `n`.
    pub fn height_counts(&self, n: u32) -> Vec<u64> {
        let mut v = vec![self.k0, self.k1];
        if let Some(c) = self.k_n2 {
            v.resize(n as usize - 1, 0);
            v[n as usize - 2] += c;
        }
        v
    }

    /// `k^d(B)`: number of characters of defect `d = n + m - 1 - h`.
    pub fn defect_count(&self, n: u32, m: u32, d: u32) -> u64 {
        let top = n + m - 1;
        if d > top {
            return 0;
        }
        self.height_counts(n).get((top - d) as usize).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "k": self.k, "k0": self.k0, "k1": self.k1, "l": self.l, "e": self.e
        });
        if let Some(c) = self.k_n2 {
            v["k_n2"] = c.into();
        }
        v
    }
}

/// The formulas as plain arithmetic; accepts `m = 1` for the quaternion
/// comparison, which the group constructor does not.
pub fn formula(n: u32, m: u32, case: FusionCase) -> Result<BlockInvariants> {
    case.validate(n)?;
    if m == 0 || n + m > 64 {
        return Err(Error::ParamOutOfRange(format!("m = {m}")));
    }
    let half = 1u64 << (m - 1);
    let top = 1u64 << (n - 2);
    let k0 = 1u64 << (m + 1);
    let e = case.inertial_index(n);
    let (k, k1, k_n2) = match case {
        FusionCase::Aa if n == 3 => (half * 7, half * 3, None),
        FusionCase::Aa => (half * (top + 5), half * (top - 1), Some(1u64 << m)),
        FusionCase::Ab => (half * (top + 4), half * (top - 1), Some(half)),
        FusionCase::Bb => (half * (top + 3), half * (top - 1), None),
    };
    Ok(BlockInvariants { k, k0, k1, k_n2, l: case.major_l(), e })
}

pub fn theorem_main(params: GroupParams, case: FusionCase) -> Result<BlockInvariants> {
    formula(params.n, params.m, case)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsectionSum {
    pub k_minus_l: u64,
    pub sum: u64,
    pub pass: bool,
}

/// Compares `k - l` with the sum of `l(b_u)` over nontrivial subsections.
pub fn subsection_sum_check(params: GroupParams, case: FusionCase) -> Result<SubsectionSum> {
    let inv = theorem_main(params, case)?;
    let fs = build_fusion(params, case)?;
    subsection_sum_with(&fs, &inv)
}

pub fn subsection_sum_with(fs: &FusionSystem, inv: &BlockInvariants) -> Result<SubsectionSum> {
    let sum: u64 = fs
        .subsection_reps(inv.l)
        .iter()
        .filter(|s| s.representative != 0)
        .map(|s| s.l)
        .sum();
    let k_minus_l = inv.k - inv.l;
    Ok(SubsectionSum { k_minus_l, sum, pass: k_minus_l == sum })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: u64,
    pub rhs: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub checks: Vec<Check>,
}

impl ConjectureReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check(name: &str, lhs: u64, rhs: u64, pass: bool) -> Check {
    Check { name: name.into(), lhs, rhs, pass }
}

/// `k(B) <= |D|`, `k_0(B) <= |D:D'|`, `k_0(B) < k(B)`, and `k_0` agreeing
/// across all cases at the same `(n, m)`.
pub fn conjecture_suite(inv: &BlockInvariants, params: GroupParams) -> Result<ConjectureReport> {
    let order = params.order() as u64;
    let abel = 1u64 << (params.m + 1);
    let sum: u64 = inv.height_counts(params.n).iter().sum();
    let mut checks = vec![
        check("heights sum to k", sum, inv.k, sum == inv.k),
        check("k(B) <= |D|", inv.k, order, inv.k <= order),
        check("k0(B) <= |D:D'|", inv.k0, abel, inv.k0 <= abel),
        check("k0(B) < k(B)", inv.k0, inv.k, inv.k0 < inv.k),
    ];
    for case in FusionCase::valid_cases(params.n) {
        let other = theorem_main(params, case)?;
        checks.push(check(
            &format!("k0 agrees with case {case}"),
            inv.k0,
            other.k0,
            inv.k0 == other.k0,
        ));
    }
    Ok(ConjectureReport { checks })
}

/// Sum over F-classes of F-centric F-radical `Q` of the number of 2-blocks
/// of defect zero of `Out_F(Q)`.
pub fn alperin_weight_count(fs: &FusionSystem) -> Result<u64> {
    let mut total = 0;
    for q in fs.centric_radical_reps()? {
        let out = fs.out_f(&q)?;
        total += defect_zero_count(&dixon_table(&out)?) as u64;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, m: u32) -> GroupParams {
        GroupParams::new(n, m).unwrap()
    }

    #[test]
    fn table_values() {
        let a = theorem_main(p(3, 2), FusionCase::Aa).unwrap();
        assert_eq!((a.k, a.k0, a.k1, a.k_n2, a.l, a.e), (14, 8, 6, None, 3, 3));
        let b = theorem_main(p(4, 2), FusionCase::Ab).unwrap();
        assert_eq!((b.k, b.k0, b.k1, b.k_n2, b.l, b.e), (16, 8, 6, Some(2), 2, 1));
        let c = theorem_main(p(4, 2), FusionCase::Bb).unwrap();
        assert_eq!((c.k, c.k0, c.k1, c.l), (14, 8, 6, 1));
        assert!(theorem_main(p(3, 2), FusionCase::Ab).is_err());
    }

    #[test]
    fn defect_counts_n3_merge() {
        let a = theorem_main(p(3, 2), FusionCase::Aa).unwrap();
        assert_eq!(a.defect_count(3, 2, 4), 8);
        assert_eq!(a.defect_count(3, 2, 3), 6);
        let b = theorem_main(p(4, 2), FusionCase::Aa).unwrap();
        assert_eq!(b.defect_count(4, 2, 3), 4);
    }

    #[test]
    fn subsection_sums_small() {
        let r = subsection_sum_check(p(3, 2), FusionCase::Aa).unwrap();
        assert_eq!((r.k_minus_l, r.sum), (11, 11));
        let r = subsection_sum_check(p(4, 3), FusionCase::Ab).unwrap();
        assert_eq!((r.k_minus_l, r.sum), (30, 30));
    }

    #[test]
    fn weight_counts() {
        for (n, case, l) in [(3, FusionCase::Aa, 3), (4, FusionCase::Aa, 3), (4, FusionCase::Ab, 2), (4, FusionCase::Bb, 1)] {
            let fs = build_fusion(p(n, 2), case).unwrap();
            assert_eq!(alperin_weight_count(&fs).unwrap(), l, "n={n} {case}");
        }
    }

    #[test]
    fn conjectures_pass() {
        let inv = theorem_main(p(6, 4), FusionCase::Aa).unwrap();
        assert_eq!(inv.k, 168);
        assert!(conjecture_suite(&inv, p(6, 4)).unwrap().all_pass());
    }
}
