//! Concrete groups whose principal 2-block realizes one of the cases.

use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::blocks::{block_partition, principal_block_invariants};
use crate::chartab::{dixon_table, family_table, CharacterTable};
use crate::error::{Error, Result};
use crate::invariants::BlockInvariants;
use crate::pcgroup::{automorphism_search, make_group, GroupParams, GroupTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    /// `D(n, m)` itself (nilpotent case).
    Family,
    /// `D(3, m) ⋊ C_3` with `C_3` acting by an order-3 automorphism fixing
    /// `Z(D)` pointwise.
    Semidirect,
}

impl FromStr for WitnessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "family" => Ok(WitnessKind::Family),
            "semidirect" => Ok(WitnessKind::Semidirect),
            other => Err(Error::ParamOutOfRange(format!("unknown witness kind {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub order: usize,
    pub blocks: usize,
    pub degrees: Vec<u64>,
    pub invariants: BlockInvariants,
}

impl WitnessReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.invariants.to_json();
        v["blocks"] = self.blocks.into();
        v["order"] = self.order.into();
        v
    }
}

pub fn witness_group(kind: WitnessKind, params: GroupParams) -> Result<GroupTable> {
    match kind {
        WitnessKind::Family => make_group(params),
        WitnessKind::Semidirect => {
            if params.n != 3 {
                return Err(Error::Unsupported(
                    "D(n, m) has no automorphism of order 3 for n >= 4".into(),
                ));
            }
            let d = Arc::new(make_group(params)?);
            let z = d.closure(&[params.z()]);
            let alpha = automorphism_search(&d, Some(3), Some(&z))?
                .into_iter()
                .next()
                .ok_or_else(|| Error::Internal("no order-3 automorphism of D(3, m)".into()))?;
            d.semidirect_product(&alpha)
        }
    }
}

fn table_for(kind: WitnessKind, params: GroupParams, g: &GroupTable) -> Result<CharacterTable> {
    match kind {
        WitnessKind::Family => family_table(params),
        WitnessKind::Semidirect => dixon_table(g),
    }
}

/// Block partition and principal-block invariants of a witness group.
pub fn witness_report(kind: WitnessKind, params: GroupParams) -> Result<WitnessReport> {
    let g = witness_group(kind, params)?;
    let t = table_for(kind, params, &g)?;
    let p = block_partition(&t)?;
    let invariants = principal_block_invariants(&p, &t, &g)?;
    let mut degrees = t.degrees();
    degrees.sort_unstable();
    Ok(WitnessReport { order: g.order(), blocks: p.blocks.len(), degrees, invariants })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semidirect_n3_m2() {
        let r = witness_report(WitnessKind::Semidirect, GroupParams::new(3, 2).unwrap()).unwrap();
        assert_eq!(r.order, 48);
        assert_eq!(r.blocks, 1);
        let i = r.invariants;
        assert_eq!((i.k, i.k0, i.k1, i.l, i.e), (14, 8, 6, 3, 3));
    }

    #[test]
    fn family_is_nilpotent_case() {
        let r = witness_report(WitnessKind::Family, GroupParams::new(4, 2).unwrap()).unwrap();
        let i = r.invariants;
        assert_eq!((i.k, i.k0, i.k1, i.l, i.e), (14, 8, 6, 1, 1));
    }
}
