//! 2-blocks of small groups from central characters reduced modulo a prime
//! over 2.

use num_integer::Integer;
use num_rational::BigRational;

use crate::chartab::CharacterTable;
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::gf::{multiplicative_order, BinaryField};
use crate::invariants::BlockInvariants;
use crate::pcgroup::GroupTable;

/// Reduction `Z[ζ_e] → GF(2^f)` with `ζ_{2^a} ↦ 1` and `ζ_r ↦ ω`, where
/// `e = 2^a r` with `r` odd and `f = ord_r(2)`.
#[derive(Clone, Debug)]
pub struct ModTwoEmbedding {
    pub exponent: u64,
    pub two_part: u64,
    pub r: u64,
    pub field: BinaryField,
    pub omega: u64,
    /// Image of `ζ_e`.
    theta: u64,
}

impl ModTwoEmbedding {
    /// `choice` selects among the elements of order `r` (ascending).
    pub fn new(exponent: u64, choice: usize) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::ParamOutOfRange("exponent must be positive".into()));
        }
        let two_part = 1u64 << exponent.trailing_zeros();
        let r = exponent / two_part;
        let f = multiplicative_order(2, r) as u32;
        let field = BinaryField::new(f)?;
        let candidates = field.elements_of_order(r);
        let omega = *candidates.get(choice % candidates.len()).ok_or_else(|| {
            Error::Internal(format!("no element of order {r} in GF(2^{f})"))
        })?;
        // ζ_e ↦ ω^t with t·2^a ≡ 1 (mod r)
        let t = if r == 1 { 0 } else { mod_inverse(two_part % r, r) };
        let theta = field.pow(omega, t);
        Ok(ModTwoEmbedding { exponent, two_part, r, field, omega, theta })
    }

    /// Number of distinct embeddings selectable through `choice`.
    pub fn choices(&self) -> usize {
        self.field.elements_of_order(self.r).len()
    }

    /// Image of an algebraic integer lying in `Q(ζ_e)`.
    pub fn reduce(&self, c: &Cyclotomic) -> Result<u64> {
        if !c.is_integral() {
            return Err(Error::NonIntegral(format!("{c} is not an algebraic integer")));
        }
        let v = if self.exponent % c.conductor() == 0 {
            c.lift(self.exponent)
        } else {
            let r = c.reduced();
            if self.exponent % r.conductor() != 0 {
                return Err(Error::Internal(format!("{c} is outside Q(ζ_{})", self.exponent)));
            }
            r.lift(self.exponent)
        };
        let mut acc = 0u64;
        for (i, a) in v.coeffs().iter().enumerate() {
            if a.to_integer().is_odd() {
                acc ^= self.field.pow(self.theta, i as u64);
            }
        }
        Ok(acc)
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    (1..m).find(|&t| a * t % m == 1).expect("unit modulo m")
}

/// Partition of `Irr(G)` into 2-blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    pub blocks: Vec<Vec<usize>>,
    pub principal: usize,
    /// `d(B)` per block: the largest character defect in the block.
    pub defects: Vec<u32>,
}

impl BlockPartition {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "blocks": self.blocks, "principal": self.principal })
    }
}

/// Central characters `ω_χ(K) = |K| χ(g_K) / χ(1)`, each checked integral.
pub fn central_characters(t: &CharacterTable) -> Result<Vec<Vec<Cyclotomic>>> {
    let mut out = Vec::with_capacity(t.characters().len());
    for (i, row) in t.characters().iter().enumerate() {
        let deg = t.degree(i) as i64;
        let mut w = Vec::with_capacity(row.len());
        for (c, v) in row.iter().enumerate() {
            let s = BigRational::new((t.classes()[c].size as i64).into(), deg.into());
            let val = v.scale(&s);
            if !val.is_integral() {
                return Err(Error::NonIntegral(format!(
                    "central character of row {i} at class {c} is {val}"
                )));
            }
            w.push(val);
        }
        out.push(w);
    }
    Ok(out)
}

pub fn block_partition(t: &CharacterTable) -> Result<BlockPartition> {
    block_partition_with(t, &ModTwoEmbedding::new(t.conductor(), 0)?)
}

/// Blocks as classes of equal reduced central characters.
pub fn block_partition_with(t: &CharacterTable, emb: &ModTwoEmbedding) -> Result<BlockPartition> {
    let omegas = central_characters(t)?;
    let mut keys: Vec<Vec<u64>> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, w) in omegas.iter().enumerate() {
        let key = w.iter().map(|v| emb.reduce(v)).collect::<Result<Vec<_>>>()?;
        match keys.iter().position(|k| *k == key) {
            Some(b) => blocks[b].push(i),
            None => {
                keys.push(key);
                blocks.push(vec![i]);
            }
        }
    }
    let trivial = t
        .characters()
        .iter()
        .position(|row| row.iter().all(|v| *v == Cyclotomic::one()))
        .ok_or_else(|| Error::Internal("no trivial character".into()))?;
    let principal = blocks.iter().position(|b| b.contains(&trivial)).expect("covered");
    let g2 = (t.group_order() as u64).trailing_zeros();
    let defects = blocks
        .iter()
        .map(|b| b.iter().map(|&i| g2 - t.degree(i).trailing_zeros()).max().unwrap_or(0))
        .collect();
    Ok(BlockPartition { blocks, principal, defects })
}

/// Number of characters of 2-defect zero.
pub fn defect_zero_count(t: &CharacterTable) -> usize {
    let g2 = (t.group_order() as u64).trailing_zeros();
    t.degrees().iter().filter(|d| d.trailing_zeros() == g2).count()
}

/// Height counts of one block: `h(χ) = d(B) - d(χ)`.
pub fn block_height_counts(p: &BlockPartition, t: &CharacterTable, block: usize) -> Vec<u64> {
    let g2 = (t.group_order() as u64).trailing_zeros();
    let mut counts = Vec::new();
    for &i in &p.blocks[block] {
        let h = (p.defects[block] - (g2 - t.degree(i).trailing_zeros())) as usize;
        if counts.len() <= h {
            counts.resize(h + 1, 0);
        }
        counts[h] += 1;
    }
    counts
}

/// Invariants of the principal block for a group with a normal Sylow
/// 2-subgroup and a single 2-block.
///
/// `l` is the number of 2-regular classes, which equals `k(G/O_2(G))` here;
/// `e = |G : P C_G(P)|`. The highest height above 1, if any, is reported as
/// `k_{n-2}`.
pub fn principal_block_invariants(
    p: &BlockPartition,
    t: &CharacterTable,
    g: &GroupTable,
) -> Result<BlockInvariants> {
    let sylow = g
        .normal_sylow2()
        .ok_or_else(|| Error::Unsupported("Sylow 2-subgroup is not normal".into()))?;
    if p.blocks.len() != 1 {
        return Err(Error::Unsupported(format!(
            "{} blocks: l(B) is only computed for a single block",
            p.blocks.len()
        )));
    }
    let counts = block_height_counts(p, t, p.principal);
    let l = t.classes().iter().filter(|c| c.element_order % 2 == 1).count() as u64;
    let pc = g.closure(
        &sylow
            .elements()
            .iter()
            .chain(g.centralizer_of(&sylow).elements())
            .copied()
            .collect::<Vec<_>>(),
    );
    let e = (g.order() / pc.order()) as u64;
    let k: u64 = counts.iter().sum();
    let high: Vec<(usize, u64)> =
        counts.iter().enumerate().skip(2).filter(|(_, &c)| c > 0).map(|(h, &c)| (h, c)).collect();
    if high.len() > 1 {
        return Err(Error::Unsupported("more than one height above 1".into()));
    }
    Ok(BlockInvariants {
        k,
        k0: counts.first().copied().unwrap_or(0),
        k1: counts.get(1).copied().unwrap_or(0),
        k_n2: high.first().map(|&(_, c)| c),
        l,
        e,
    })
}
