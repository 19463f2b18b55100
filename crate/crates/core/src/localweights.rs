//! Alternating sums `w(Q, d)` over chains of 2-subgroups of `Out_F(Q)` and
//! the ledger comparing them with the block's defect counts.

use std::collections::HashSet;

use serde::Serialize;

use crate::blocks::defect_zero_count;
use crate::chartab::{dixon_table, family_table, CharacterTable};
use crate::error::{Error, Result};
use crate::fusion::{build_fusion, FusionCase, FusionSystem};
use crate::invariants::theorem_main;
use crate::pcgroup::{subgroups_containing, GroupParams, GroupTable, Subgroup};

/// `Out_F(Q)` with its action on `Irr(Q)`.
pub struct OuterAction {
    pub out: GroupTable,
    pub table: CharacterTable,
    /// `char_perm[o][χ]`: image of character `χ` under outer element `o`.
    pub char_perm: Vec<Vec<usize>>,
    /// Defect of each character of `Q`.
    pub defects: Vec<u32>,
}

impl OuterAction {
    pub fn new(fs: &FusionSystem, q: &Subgroup) -> Result<Self> {
        let aut = fs.aut_f_subgroup(q)?;
        let inner = fs.inner_part(&aut)?;
        let (out, proj) = aut.table.quotient(&inner)?;
        let qt = fs.group.subgroup_table(q)?;
        let table = if q.order() == fs.group.order() {
            family_table(fs.params)?
        } else {
            dixon_table(&qt)?
        };
        // class of each local element of Q
        let classes = table.classes();
        let mut class_of = vec![usize::MAX; q.order()];
        let qclasses = qt.conjugacy_classes()?;
        for cl in &qclasses {
            let c = classes
                .iter()
                .position(|ci| ci.representative == cl.representative)
                .ok_or_else(|| Error::Internal("class representative mismatch".into()))?;
            for &e in &cl.elements {
                class_of[e] = c;
            }
        }
        // for the family table, representatives are parent indices equal to
        // local ones because Q = D; otherwise the Dixon table uses local ones
        let mut lift = vec![usize::MAX; out.order()];
        for (a, &o) in proj.iter().enumerate() {
            if lift[o] == usize::MAX {
                lift[o] = a;
            }
        }
        let rows = table.characters();
        let mut char_perm = Vec::with_capacity(out.order());
        for &a in &lift {
            let perm = &aut.perms[a];
            // class c ↦ class of φ(rep_c)
            let pi: Vec<usize> =
                classes.iter().map(|ci| class_of[perm[ci.representative]]).collect();
            let mut images = Vec::with_capacity(rows.len());
            for row in rows {
                // (μ∘φ^{-1})(φ(g)) = μ(g)
                let mut new_row = vec![None; row.len()];
                for (c, v) in row.iter().enumerate() {
                    new_row[pi[c]] = Some(v);
                }
                let idx = rows
                    .iter()
                    .position(|r| r.iter().zip(&new_row).all(|(x, y)| Some(x) == *y))
                    .ok_or_else(|| Error::Internal("automorphism does not permute Irr(Q)".into()))?;
                images.push(idx);
            }
            char_perm.push(images);
        }
        let q2 = q.order().trailing_zeros();
        let defects = table.degrees().iter().map(|d| q2 - d.trailing_zeros()).collect();
        Ok(OuterAction { out, table, char_perm, defects })
    }

    /// Orbits of `sub` on the characters of defect `d`.
    pub fn character_orbits(&self, sub: &Subgroup, d: u32) -> Vec<Vec<usize>> {
        let mut seen = HashSet::new();
        let mut orbits = Vec::new();
        for chi in (0..self.defects.len()).filter(|&c| self.defects[c] == d) {
            if seen.contains(&chi) {
                continue;
            }
            let mut orbit: Vec<usize> = sub.elements().iter().map(|&o| self.char_perm[o][chi]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            seen.extend(orbit.iter().copied());
            orbits.push(orbit);
        }
        orbits
    }

    fn stabilizer(&self, sub: &Subgroup, chi: usize) -> Subgroup {
        let elems: Vec<usize> =
            sub.elements().iter().copied().filter(|&o| self.char_perm[o][chi] == chi).collect();
        self.out.closure(&elems)
    }
}

/// Chains `1 = V_0 < V_1 < … < V_k` of 2-subgroups of `o`, one per
/// `o`-conjugacy class.
pub fn two_chains(o: &GroupTable) -> Result<Vec<Vec<Subgroup>>> {
    let twos: Vec<Subgroup> = subgroups_containing(o, &o.trivial_subgroup())?
        .into_iter()
        .filter(|s| s.order().is_power_of_two())
        .collect();
    let mut chains: Vec<Vec<Subgroup>> = vec![vec![o.trivial_subgroup()]];
    let mut frontier = chains.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            let top = c.last().expect("nonempty");
            for s in &twos {
                if s.order() > top.order() && top.is_subgroup_of(s) {
                    let mut e = c.clone();
                    e.push(s.clone());
                    next.push(e);
                }
            }
        }
        chains.extend(next.iter().cloned());
        frontier = next;
    }
    // conjugacy classes of chains
    let key = |c: &[Subgroup]| -> Vec<Vec<usize>> { c.iter().map(|s| s.elements().to_vec()).collect() };
    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
    let mut reps = Vec::new();
    for c in chains {
        if seen.contains(&key(&c)) {
            continue;
        }
        for g in 0..o.order() {
            let conj: Vec<Subgroup> = c.iter().map(|s| o.conjugate_subgroup(g, s)).collect();
            seen.insert(key(&conj));
        }
        reps.push(c);
    }
    Ok(reps)
}

/// Elements of `o` normalizing every member of the chain.
pub fn chain_stabilizer(o: &GroupTable, chain: &[Subgroup]) -> Subgroup {
    let elems: Vec<usize> = (0..o.order())
        .filter(|&g| chain.iter().all(|s| s.generators().iter().all(|&a| s.contains(o.conj(g, a)))))
        .collect();
    o.closure(&elems)
}

/// `w(Q, d) = Σ_σ (-1)^{|σ|} Σ_{μ ∈ Irr^d(Q)/I(σ)} z(F I(σ, μ))`.
pub fn weight_sum(fs: &FusionSystem, q: &Subgroup, d: u32) -> Result<i64> {
    weight_sum_with(&OuterAction::new(fs, q)?, d)
}

pub fn weight_sum_with(act: &OuterAction, d: u32) -> Result<i64> {
    let mut w = 0i64;
    for chain in two_chains(&act.out)? {
        let sign = if (chain.len() - 1) % 2 == 0 { 1 } else { -1 };
        let i_sigma = chain_stabilizer(&act.out, &chain);
        for orbit in act.character_orbits(&i_sigma, d) {
            let stab = act.stabilizer(&i_sigma, orbit[0]);
            let t = act.out.subgroup_table(&stab)?;
            w += sign * defect_zero_count(&dixon_table(&t)?) as i64;
        }
    }
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerRow {
    pub label: String,
    pub order: usize,
    /// `w(Q, d)` for `d = 0..=n+m-1`.
    pub weights: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightLedger {
    pub rows: Vec<LedgerRow>,
    /// `k^d(B)` for `d = 0..=n+m-1`.
    pub targets: Vec<u64>,
    pub expected_classes: bool,
    pub pass: bool,
}

fn label(fs: &FusionSystem, q: &Subgroup) -> String {
    let in_class = |t: &Subgroup| fs.subgroup_orbit(q).iter().any(|(s, _)| s == t);
    if q.order() == fs.group.order() {
        "D".into()
    } else if in_class(&fs.q1) {
        "Q1".into()
    } else if in_class(&fs.q2) {
        "Q2".into()
    } else {
        format!("order {}", q.order())
    }
}

pub fn owc_check(params: GroupParams, case: FusionCase) -> Result<WeightLedger> {
    owc_check_with(&build_fusion(params, case)?)
}

pub fn owc_check_with(fs: &FusionSystem) -> Result<WeightLedger> {
    let (n, m) = (fs.params.n, fs.params.m);
    let inv = theorem_main(fs.params, fs.case)?;
    let top = n + m - 1;
    let targets: Vec<u64> = (0..=top).map(|d| inv.defect_count(n, m, d)).collect();
    let mut rows = Vec::new();
    for q in fs.centric_radical_reps()? {
        let act = OuterAction::new(fs, &q)?;
        let weights = (0..=top).map(|d| weight_sum_with(&act, d)).collect::<Result<Vec<_>>>()?;
        rows.push(LedgerRow { label: label(fs, &q), order: q.order(), weights });
    }
    let mut labels: Vec<&str> = rows.iter().map(|r| r.label.as_str()).collect();
    labels.sort_unstable();
    let expected: &[&str] = match (fs.case, n) {
        (FusionCase::Aa, 3) | (FusionCase::Bb, _) => &["D"],
        (FusionCase::Aa, _) => &["D", "Q1", "Q2"],
        (FusionCase::Ab, _) => &["D", "Q2"],
    };
    let expected_classes = labels == expected;
    let sums_match = (0..=top as usize)
        .all(|d| rows.iter().map(|r| r.weights[d]).sum::<i64>() == targets[d] as i64);
    Ok(WeightLedger { rows, targets, expected_classes, pass: expected_classes && sums_match })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(n: u32, m: u32, c: FusionCase) -> FusionSystem {
        build_fusion(GroupParams::new(n, m).unwrap(), c).unwrap()
    }

    #[test]
    fn essential_weights() {
        for m in 2..=3u32 {
            let f = fs(4, m, FusionCase::Aa);
            let half = 1i64 << (m - 1);
            assert_eq!(weight_sum(&f, &f.q1, m + 1).unwrap(), half);
            assert_eq!(weight_sum(&f, &f.q1, m + 2).unwrap(), 0);
        }
    }

    #[test]
    fn weights_at_d_for_n3() {
        let f = fs(3, 2, FusionCase::Aa);
        let d = f.group.whole();
        assert_eq!(weight_sum(&f, &d, 3).unwrap(), 6);
        assert_eq!(weight_sum(&f, &d, 4).unwrap(), 8);
    }

    #[test]
    fn s3_orbits_on_linear_characters() {
        for m in 2..=3u32 {
            let f = fs(4, m, FusionCase::Aa);
            let act = OuterAction::new(&f, &f.q1).unwrap();
            let whole = act.out.whole();
            let orbits = act.character_orbits(&whole, m + 2);
            let half = 1usize << (m - 1);
            assert_eq!(orbits.iter().filter(|o| o.len() == 1).count(), half);
            let c = subgroups_containing(&act.out, &act.out.trivial_subgroup())
                .unwrap()
                .into_iter()
                .find(|s| s.order() == 2)
                .unwrap();
            let corbits = act.character_orbits(&c, m + 2);
            assert_eq!(corbits.iter().filter(|o| o.len() == 2).count(), half);
        }
    }

    #[test]
    fn ledger_small() {
        for (n, c) in [(3, FusionCase::Aa), (4, FusionCase::Aa), (4, FusionCase::Ab), (4, FusionCase::Bb)] {
            let l = owc_check(GroupParams::new(n, 2).unwrap(), c).unwrap();
            assert!(l.pass, "{n} {c}: {l:?}");
        }
    }
}
