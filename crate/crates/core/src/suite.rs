//! Grid driver running every verification over a range of `(n, m)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chartab::{dixon_table, family_table};
use crate::decomp::{cartan_case, census_check, contribution, contribution_closed_form, random_row};
use crate::error::{Error, Result};
use crate::fusion::{build_fusion, FusionCase};
use crate::gluing::gluing_check_with;
use crate::invariants::{alperin_weight_count, conjecture_suite, subsection_sum_with, theorem_main};
use crate::localweights::owc_check_with;
use crate::pcgroup::{make_group, GroupParams};
use crate::witness::{witness_report, WitnessKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteRow {
    pub check: String,
    pub n: u32,
    pub m: u32,
    pub case: Option<FusionCase>,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    fn push(&mut self, check: &str, p: GroupParams, case: Option<FusionCase>, pass: bool, detail: String) {
        self.rows.push(SuiteRow { check: check.into(), n: p.n, m: p.m, case, pass, detail });
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("check\tn\tm\tcase\tpass\tdetail\n");
        for r in &self.rows {
            let case = r.case.map_or("-".to_string(), |c| c.to_string());
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                r.check,
                r.n,
                r.m,
                case,
                if r.pass { "PASS" } else { "FAIL" },
                r.detail
            ));
        }
        s
    }
}

/// Number of random row pairs per case in the contribution check.
pub const RANDOM_PAIRS: usize = 100;

fn run_case(report: &mut SuiteReport, p: GroupParams, case: FusionCase, rng: &mut ChaCha8Rng) -> Result<()> {
    let some = Some(case);
    let inv = theorem_main(p, case)?;
    let conj = conjecture_suite(&inv, p)?;
    report.push("conjectures", p, some, conj.all_pass(), format!("k = {}", inv.k));

    let fs = build_fusion(p, case)?;
    let classes = fs.f_classes().len() as u64;
    let half = 1u64 << (p.m - 1);
    let base = (1u64 << (p.n - 2)) + 1;
    let expected = match case {
        FusionCase::Aa => base * half,
        FusionCase::Ab => (base + 1) * half,
        FusionCase::Bb => half * (base + 2),
    };
    let reps = fs.subsection_reps(inv.l);
    let normalized = reps.iter().all(|s| fs.is_fully_normalized(s.representative));
    report.push(
        "f-classes",
        p,
        some,
        classes == expected && normalized,
        format!("{classes} classes, expected {expected}"),
    );

    let sub = subsection_sum_with(&fs, &inv)?;
    report.push("subsections", p, some, sub.pass, format!("k - l = {}, sum = {}", sub.k_minus_l, sub.sum));

    let awc = alperin_weight_count(&fs)?;
    report.push("awc", p, some, awc == inv.l, format!("weights = {awc}, l = {}", inv.l));

    let owc = owc_check_with(&fs)?;
    report.push("owc", p, some, owc.pass, format!("targets {:?}", owc.targets));

    let glue = gluing_check_with(&fs)?;
    report.push(
        "gluing",
        p,
        some,
        glue.pass,
        format!("{} objects, {} morphisms", glue.objects, glue.morphisms),
    );

    if case != FusionCase::Bb {
        let c = cartan_case(p, case)?;
        if !c.degenerate {
            let census = census_check(p, case)?;
            report.push("census", p, some, census.pass, format!("max k = {}", census.max_k));
            let dim = c.dim();
            let mut agree = 0;
            for _ in 0..RANDOM_PAIRS {
                let chi = random_row(rng, p.m, dim);
                let psi = random_row(rng, p.m, dim);
                if contribution(&chi, &psi, &c, p)? == contribution_closed_form(case, p.n, &chi, &psi)? {
                    agree += 1;
                }
            }
            report.push(
                "contributions",
                p,
                some,
                agree == RANDOM_PAIRS,
                format!("{agree}/{RANDOM_PAIRS} random pairs agree"),
            );
        }
    }
    Ok(())
}

/// Runs every check on `ns × ms`. Output order is fixed: by `n`, then `m`,
/// then case.
pub fn run_suite(ns: &[u32], ms: &[u32], seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &n in ns {
        for &m in ms {
            let p = GroupParams::new(n, m)?;
            for case in FusionCase::valid_cases(n) {
                run_case(&mut report, p, case, &mut rng)?;
            }
            // nilpotent case against both character-table constructions
            let bb = theorem_main(p, FusionCase::Bb)?;
            let fam = family_table(p)?;
            let dix = dixon_table(&make_group(p)?)?;
            let same = fam.same_characters(&dix);
            let degrees = fam.degrees();
            let k0 = degrees.iter().filter(|&&d| d == 1).count() as u64;
            let pass = same && fam.num_classes() as u64 == bb.k && k0 == bb.k0;
            report.push("nilpotent-tables", p, Some(FusionCase::Bb), pass, format!("k(D) = {}", fam.num_classes()));
            if n == 3 {
                let w = witness_report(WitnessKind::Semidirect, p)?;
                let inv = theorem_main(p, FusionCase::Aa)?;
                let i = &w.invariants;
                let pass = w.blocks == 1 && (i.k, i.k0, i.k1, i.l) == (inv.k, inv.k0, inv.k1, inv.l);
                report.push("witness", p, Some(FusionCase::Aa), pass, format!("order {}", w.order));
            }
        }
    }
    Ok(report)
}

/// Parses `n=3..5,m=2..3` (single values such as `n=4` are accepted).
pub fn parse_grid(s: &str) -> Result<(Vec<u32>, Vec<u32>)> {
    let bad = || Error::ParamOutOfRange(format!("grid {s:?}; expected n=A..B,m=C..D"));
    let mut ns = None;
    let mut ms = None;
    for part in s.split(',') {
        let (key, range) = part.trim().split_once('=').ok_or_else(bad)?;
        let (lo, hi) = match range.split_once("..") {
            Some((a, b)) => (a.parse::<u32>().map_err(|_| bad())?, b.parse::<u32>().map_err(|_| bad())?),
            None => {
                let v = range.parse::<u32>().map_err(|_| bad())?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(bad());
        }
        let vals: Vec<u32> = (lo..=hi).collect();
        match key.trim() {
            "n" => ns = Some(vals),
            "m" => ms = Some(vals),
            _ => return Err(bad()),
        }
    }
    Ok((ns.ok_or_else(bad)?, ms.ok_or_else(bad)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("n=3..5,m=2..3").unwrap(), (vec![3, 4, 5], vec![2, 3]));
        assert_eq!(parse_grid("n=4,m=2").unwrap(), (vec![4], vec![2]));
        assert!(parse_grid("n=5..3,m=2").is_err());
        assert!(parse_grid("k=3,m=2").is_err());
    }

    #[test]
    fn small_suite_passes() {
        let r = run_suite(&[3, 4], &[2], 7).unwrap();
        let failures: Vec<_> = r.rows.iter().filter(|r| !r.pass).collect();
        assert!(failures.is_empty(), "{failures:?}");
    }
}
