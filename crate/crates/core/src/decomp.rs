//! Generalized decomposition numbers at the major subsection `(z, b_z)`:
//! Cartan matrices, contributions, height rules and the row-type census.

use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use crate::cyclo::{Cyclotomic, Valuation};
use crate::error::{Error, Result};
use crate::fusion::FusionCase;
use crate::linalg::{self, q};
use crate::pcgroup::GroupParams;

/// One row `(d^z_{χφ_1}, …, d^z_{χφ_l})`.
pub type DecompRow = Vec<Cyclotomic>;

/// Cartan matrix `scale · base`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    pub scale: i64,
    pub base: Vec<Vec<i64>>,
    /// Set for the `1 × 1` matrix of the nilpotent case.
    pub degenerate: bool,
}

impl CartanMatrix {
    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn full(&self) -> Vec<Vec<i64>> {
        self.base.iter().map(|r| r.iter().map(|v| v * self.scale).collect()).collect()
    }

    pub fn det(&self) -> BigRational {
        linalg::det_q(&linalg::to_q(&self.full()))
    }

    pub fn is_symmetric(&self) -> bool {
        let b = &self.base;
        (0..b.len()).all(|i| (0..b.len()).all(|j| b[i][j] == b[j][i]))
    }

    /// Sylvester's criterion on the leading minors.
    pub fn is_positive_definite(&self) -> bool {
        let f = linalg::to_q(&self.full());
        (1..=f.len()).all(|k| {
            let minor: Vec<Vec<BigRational>> = f[..k].iter().map(|r| r[..k].to_vec()).collect();
            linalg::det_q(&minor) > q(0)
        })
    }
}

/// Cartan matrix of `b_z` for the case, in the basic set fixed here.
pub fn cartan_case(params: GroupParams, case: FusionCase) -> Result<CartanMatrix> {
    case.validate(params.n)?;
    let a = (1i64 << (params.n - 3)) + 1;
    let scale = 1i64 << params.m;
    Ok(match case {
        FusionCase::Ab => {
            CartanMatrix { scale, base: vec![vec![a, 2], vec![2, 4]], degenerate: false }
        }
        FusionCase::Aa => CartanMatrix {
            scale,
            base: vec![vec![a, 1, 1], vec![1, 2, 0], vec![1, 0, 2]],
            degenerate: false,
        },
        FusionCase::Bb => CartanMatrix {
            scale: 1,
            base: vec![vec![1i64 << (params.n + params.m - 1)]],
            degenerate: true,
        },
    })
}

/// `M = 2^{n+m-1} D C^{-1} \bar{D}^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContributionMatrix {
    pub scale: u64,
    pub entries: Vec<Vec<Cyclotomic>>,
}

fn scaled_inverse(c: &CartanMatrix, params: GroupParams) -> Result<Vec<Vec<BigRational>>> {
    let inv = linalg::inverse(&linalg::to_q(&c.full()))
        .ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
    let s = q(1i64 << (params.n + params.m - 1));
    Ok(inv.into_iter().map(|r| r.into_iter().map(|v| v * &s).collect()).collect())
}

fn check_row(row: &DecompRow, dim: usize) -> Result<()> {
    if row.len() != dim {
        return Err(Error::DimensionMismatch(format!("row of length {} for dimension {dim}", row.len())));
    }
    Ok(())
}

fn pair_with(w: &[Vec<BigRational>], chi: &DecompRow, psi: &DecompRow) -> Cyclotomic {
    let mut acc = Cyclotomic::zero();
    for (i, a) in chi.iter().enumerate() {
        for (j, b) in psi.iter().enumerate() {
            if w[i][j] != q(0) && !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * &b.conj()).scale(&w[i][j]);
            }
        }
    }
    acc
}

/// Contribution matrix by the matrix product.
pub fn contributions(
    rows: &[DecompRow],
    c: &CartanMatrix,
    params: GroupParams,
) -> Result<ContributionMatrix> {
    for r in rows {
        check_row(r, c.dim())?;
    }
    let w = scaled_inverse(c, params)?;
    let entries = rows
        .iter()
        .map(|chi| rows.iter().map(|psi| pair_with(&w, chi, psi)).collect())
        .collect();
    Ok(ContributionMatrix { scale: 1 << (params.n + params.m - 1), entries })
}

/// Single entry `m_{χψ}` by the matrix product.
pub fn contribution(
    chi: &DecompRow,
    psi: &DecompRow,
    c: &CartanMatrix,
    params: GroupParams,
) -> Result<Cyclotomic> {
    check_row(chi, c.dim())?;
    check_row(psi, c.dim())?;
    Ok(pair_with(&scaled_inverse(c, params)?, chi, psi))
}

/// `m_{χψ}` from the expanded polynomial in the decomposition numbers.
pub fn contribution_closed_form(
    case: FusionCase,
    n: u32,
    chi: &DecompRow,
    psi: &DecompRow,
) -> Result<Cyclotomic> {
    let p = |i: usize, j: usize| &chi[i] * &psi[j].conj();
    let k = |v: i64| Cyclotomic::from_int(v);
    match case {
        FusionCase::Ab => {
            check_row(chi, 2)?;
            check_row(psi, 2)?;
            Ok(&k(4) * &p(0, 0) - &k(2) * &(&p(0, 1) + &p(1, 0))
                + &k((1 << (n - 3)) + 1) * &p(1, 1))
        }
        FusionCase::Aa => {
            check_row(chi, 3)?;
            check_row(psi, 3)?;
            let cross = &(&p(0, 1) + &p(1, 0)) + &(&p(0, 2) + &p(2, 0));
            Ok(&k(4) * &p(0, 0) - &k(2) * &cross
                + (&p(1, 2) + &p(2, 1))
                + &k((1 << (n - 2)) + 1) * &(&p(1, 1) + &p(2, 2)))
        }
        FusionCase::Bb => Err(Error::Unsupported("no closed form in the nilpotent case".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeightVerdict {
    Height { height: u32, rule: &'static str },
    /// The row cannot occur: a height of at least 1 is forced while
    /// `ν(m_{χχ}) <= 1`.
    Contradiction { diagonal: Cyclotomic, valuation: Valuation },
    Undetermined { diagonal: Cyclotomic, valuation: Valuation },
}

/// Reference height-zero row `(0, …, 0, 1)`.
pub fn unit_row(dim: usize) -> DecompRow {
    let mut r = vec![Cyclotomic::zero(); dim];
    r[dim - 1] = Cyclotomic::one();
    r
}

/// Height of the character owning `row`, by the three rules:
/// unit diagonal gives height 0, diagonal 4 gives height 1, and a cross term
/// of valuation `n - 2` against a height-zero row gives height `n - 2`.
pub fn height_classify(row: &DecompRow, params: GroupParams, case: FusionCase) -> Result<HeightVerdict> {
    let c = cartan_case(params, case)?;
    if c.degenerate {
        return Err(Error::Unsupported("height rules need l(b_z) > 1".into()));
    }
    check_row(row, c.dim())?;
    if row.iter().all(|v| v.is_zero()) {
        return Err(Error::ZeroRow);
    }
    let diag = contribution(row, row, &c, params)?;
    let v = diag.valuation()?;
    if v.is_zero() {
        return Ok(HeightVerdict::Height { height: 0, rule: "unit diagonal" });
    }
    if diag == Cyclotomic::from_int(4) {
        return Ok(HeightVerdict::Height { height: 1, rule: "diagonal 4" });
    }
    let cross = contribution(row, &unit_row(c.dim()), &c, params)?;
    if cross.valuation()? == Valuation::Finite(q(params.n as i64 - 2)) && v > Valuation::Finite(q(1)) {
        return Ok(HeightVerdict::Height { height: params.n - 2, rule: "cross term against height 0" });
    }
    if v <= Valuation::Finite(q(1)) {
        return Ok(HeightVerdict::Contradiction { diagonal: diag, valuation: v });
    }
    Ok(HeightVerdict::Undetermined { diagonal: diag, valuation: v })
}

/// `ε ζ^e` in `Q(ζ_{2^m})`.
pub fn signed_zeta(m: u32, sign: i64, e: i64) -> Cyclotomic {
    Cyclotomic::zeta(1 << m, e).scale(&q(sign))
}

/// Legal row shapes of case `ab` with their heights.
pub fn legal_ab_rows(params: GroupParams, eps: i64, j: i64) -> Vec<(DecompRow, u32)> {
    let m = params.m;
    let u = signed_zeta(m, eps, j);
    let zero = Cyclotomic::zero();
    vec![
        (vec![u.clone(), zero.clone()], 1),
        (vec![u.clone(), u.clone()], 0),
        (vec![zero, u.clone()], 0),
        (vec![u.clone(), &u + &u], params.n - 2),
    ]
}

/// The four excluded shapes `(εζ^j, εζ^j ± εζ^k)` and `(0, εζ^j ± εζ^k)`.
pub fn forbidden_ab_rows(params: GroupParams, eps: i64, j: i64, k: i64) -> Vec<DecompRow> {
    let m = params.m;
    let a = signed_zeta(m, eps, j);
    let b = signed_zeta(m, eps, k);
    let plus = &a + &b;
    let minus = &a - &b;
    vec![
        vec![a.clone(), plus.clone()],
        vec![a, minus.clone()],
        vec![Cyclotomic::zero(), plus],
        vec![Cyclotomic::zero(), minus],
    ]
}

/// Random row with small integer coefficients in `Z[ζ_{2^m}]`.
pub fn random_row<R: Rng>(rng: &mut R, m: u32, dim: usize) -> DecompRow {
    let half = 1usize << (m - 1);
    (0..dim)
        .map(|_| {
            let mult: Vec<i64> = (0..half).map(|_| rng.gen_range(-2..=2)).collect();
            Cyclotomic::from_exponents(1 << m, &mult)
        })
        .collect()
}

/// One maximizing-search configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub alpha: u64,
    pub beta: u64,
    pub gamma: u64,
    pub k: u64,
    pub k0_bound: u64,
    pub height_one: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub max_k: u64,
    pub target_k: u64,
    pub maximizers: Vec<Configuration>,
    /// Height-one row count, constant over the maximizers.
    pub height_one: Option<u64>,
    pub height_one_target: u64,
    /// Per-type row totals agree with the simplified bound everywhere.
    pub routes_agree: bool,
    pub pass: bool,
}

/// Enumerates `α + β + γ = 2^{m-1}` with `8α + 4β <= 2^{m+1}` (`δ = 0`) and
/// maximizes the bound on `k(B)`.
pub fn census_check(params: GroupParams, case: FusionCase) -> Result<CensusReport> {
    case.validate(params.n)?;
    let (n, m) = (params.n, params.m);
    let t = 1u64 << (n - 2);
    let half = 1u64 << (m - 1);
    let budget = 1u64 << (m + 1);
    let (rows, target_k): ([u64; 3], u64) = match case {
        FusionCase::Ab => ([t + 6, t + 4, t + 2], half * (t + 4)),
        FusionCase::Aa => ([t + 6, t + 5, t + 4], half * (t + 5)),
        FusionCase::Bb => {
            return Err(Error::Unsupported("census needs l(b_z) > 1".into()));
        }
    };
    let base = 1u64 << (n + m - 3);
    let mut all = Vec::new();
    let mut routes_agree = true;
    for alpha in 0..=half {
        for beta in 0..=(half - alpha) {
            let gamma = half - alpha - beta;
            let k0_bound = 8 * alpha + 4 * beta;
            if k0_bound > budget {
                continue;
            }
            let by_type = rows[0] * alpha + rows[1] * beta + rows[2] * gamma;
            let simplified = match case {
                FusionCase::Ab => base + (1 << m) + 4 * alpha + 2 * beta,
                _ => base + (1 << (m + 1)) + 2 * alpha + beta,
            };
            routes_agree &= by_type == simplified;
            let height_one = (t - 2) * alpha + (t - 1) * beta + t * gamma;
            all.push(Configuration { alpha, beta, gamma, k: by_type, k0_bound, height_one });
        }
    }
    let max_k = all.iter().map(|c| c.k).max().unwrap_or(0);
    let maximizers: Vec<Configuration> = all.into_iter().filter(|c| c.k == max_k).collect();
    let h1 = maximizers[0].height_one;
    let height_one = maximizers.iter().all(|c| c.height_one == h1).then_some(h1);
    let height_one_target = half * (t - 1);
    let pass = max_k == target_k && routes_agree && height_one == Some(height_one_target);
    Ok(CensusReport { max_k, target_k, maximizers, height_one, height_one_target, routes_agree, pass })
}

/// Row type used at one root-of-unity index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RowType {
    I,
    II,
    III,
}

/// Integer columns `a^i_j` (one entry per row) of one row type.
fn type_columns(case: FusionCase, n: u32, ty: RowType) -> Vec<Vec<i64>> {
    let t = 1usize << (n - 2);
    let mut cols: Vec<Vec<i64>> = Vec::new();
    let mut push_row = |r: &[i64]| {
        if cols.is_empty() {
            cols = vec![Vec::new(); r.len()];
        }
        for (c, &v) in cols.iter_mut().zip(r) {
            c.push(v);
        }
    };
    match (case, ty) {
        (FusionCase::Ab, RowType::I) => {
            (0..t - 2).for_each(|_| push_row(&[1, 0]));
            (0..4).for_each(|_| push_row(&[1, 1]));
            (0..4).for_each(|_| push_row(&[0, 1]));
        }
        (FusionCase::Ab, RowType::II) => {
            (0..t - 1).for_each(|_| push_row(&[1, 0]));
            push_row(&[1, 2]);
            (0..2).for_each(|_| push_row(&[1, 1]));
            (0..2).for_each(|_| push_row(&[0, 1]));
        }
        (FusionCase::Ab, RowType::III) => {
            (0..t).for_each(|_| push_row(&[1, 0]));
            (0..2).for_each(|_| push_row(&[1, 2]));
        }
        (FusionCase::Aa, RowType::I) => {
            (0..t - 2).for_each(|_| push_row(&[1, 0, 0]));
            (0..2).for_each(|_| push_row(&[1, 1, 0]));
            (0..2).for_each(|_| push_row(&[1, 0, 1]));
            (0..2).for_each(|_| push_row(&[0, 1, 0]));
            (0..2).for_each(|_| push_row(&[0, 0, 1]));
        }
        (FusionCase::Aa, RowType::II) => {
            (0..t - 1).for_each(|_| push_row(&[1, 0, 0]));
            push_row(&[1, 1, 0]);
            push_row(&[1, 1, 1]);
            push_row(&[1, 0, 1]);
            push_row(&[0, 1, -1]);
            push_row(&[0, 1, 0]);
            push_row(&[0, 0, 1]);
        }
        (FusionCase::Aa, RowType::III) => {
            (0..t).for_each(|_| push_row(&[1, 0, 0]));
            (0..2).for_each(|_| push_row(&[1, 1, 1]));
            (0..2).for_each(|_| push_row(&[0, 1, -1]));
        }
        (FusionCase::Bb, _) => {}
    }
    cols
}

/// A full decomposition-row system built from one row type per index
/// `j < 2^{m-1}`, with a global sign per index.
pub fn synthetic_rows(
    params: GroupParams,
    case: FusionCase,
    types: &[RowType],
    signs: &[i64],
) -> Result<Vec<DecompRow>> {
    let half = 1usize << (params.m - 1);
    if types.len() != half || signs.len() != half {
        return Err(Error::DimensionMismatch(format!("{} row types for {half} indices", types.len())));
    }
    let mut rows = Vec::new();
    for (j, (&ty, &s)) in types.iter().zip(signs).enumerate() {
        let cols = type_columns(case, params.n, ty);
        if cols.is_empty() {
            return Err(Error::Unsupported("synthetic rows need l(b_z) > 1".into()));
        }
        let u = signed_zeta(params.m, s, j as i64);
        for r in 0..cols[0].len() {
            rows.push(cols.iter().map(|c| u.scale(&q(c[r]))).collect());
        }
    }
    Ok(rows)
}

/// `\bar{D}^T D`-style Gram matrix `Σ_χ d_{χi} \bar{d_{χj}}`.
pub fn gram(rows: &[DecompRow]) -> Vec<Vec<Cyclotomic>> {
    let dim = rows.first().map_or(0, |r| r.len());
    (0..dim)
        .map(|i| {
            (0..dim).map(|j| rows.iter().map(|r| &r[i] * &r[j].conj()).sum()).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(n: u32, m: u32) -> GroupParams {
        GroupParams::new(n, m).unwrap()
    }

    #[test]
    fn cartan_shapes() {
        let c = cartan_case(p(4, 2), FusionCase::Ab).unwrap();
        assert_eq!(c.full(), vec![vec![12, 8], vec![8, 16]]);
        assert_eq!(c.det(), q(16 * 8));
        assert!(c.is_positive_definite() && c.is_symmetric());
        let a = cartan_case(p(3, 2), FusionCase::Aa).unwrap();
        assert_eq!(a.base, vec![vec![2, 1, 1], vec![1, 2, 0], vec![1, 0, 2]]);
        assert!(cartan_case(p(3, 2), FusionCase::Bb).unwrap().degenerate);
    }

    #[test]
    fn closed_form_matches_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, m) in [(4, 2), (5, 3)] {
            for case in [FusionCase::Ab, FusionCase::Aa] {
                let c = cartan_case(p(n, m), case).unwrap();
                for _ in 0..20 {
                    let a = random_row(&mut rng, m, c.dim());
                    let b = random_row(&mut rng, m, c.dim());
                    assert_eq!(
                        contribution(&a, &b, &c, p(n, m)).unwrap(),
                        contribution_closed_form(case, n, &a, &b).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn cross_terms() {
        let pr = p(4, 2);
        let c = cartan_case(pr, FusionCase::Ab).unwrap();
        let chi = vec![Cyclotomic::one(), Cyclotomic::from_int(2)];
        let psi = vec![Cyclotomic::zero(), Cyclotomic::zeta(4, 1)];
        let v = contribution(&chi, &psi, &c, pr).unwrap();
        assert_eq!(v, Cyclotomic::zeta(4, -1).scale(&q(4)));
        let diag = contribution(&vec![Cyclotomic::one(), Cyclotomic::zero()], &vec![Cyclotomic::one(), Cyclotomic::zero()], &c, pr).unwrap();
        assert_eq!(diag, Cyclotomic::from_int(4));
    }

    #[test]
    fn legal_and_forbidden_rows() {
        for (n, m) in [(4, 2), (5, 2), (4, 3)] {
            let pr = p(n, m);
            for (row, h) in legal_ab_rows(pr, -1, 1) {
                match height_classify(&row, pr, FusionCase::Ab).unwrap() {
                    HeightVerdict::Height { height, .. } => assert_eq!(height, h),
                    other => panic!("{other:?}"),
                }
            }
            for row in forbidden_ab_rows(pr, 1, 0, 1) {
                assert!(matches!(
                    height_classify(&row, pr, FusionCase::Ab).unwrap(),
                    HeightVerdict::Contradiction { .. }
                ));
            }
        }
        let zero = vec![Cyclotomic::zero(), Cyclotomic::zero()];
        assert_eq!(height_classify(&zero, p(4, 2), FusionCase::Ab), Err(Error::ZeroRow));
    }

    #[test]
    fn census_targets() {
        let r = census_check(p(4, 2), FusionCase::Ab).unwrap();
        assert_eq!(r.max_k, 16);
        assert!(r.pass);
        let r = census_check(p(4, 2), FusionCase::Aa).unwrap();
        assert_eq!(r.max_k, 18);
        assert!(r.pass);
    }

    #[test]
    fn synthetic_system_reproduces_cartan_and_heights() {
        let pr = p(4, 3);
        for case in [FusionCase::Ab, FusionCase::Aa] {
            let c = cartan_case(pr, case).unwrap();
            let types = [RowType::I, RowType::III, RowType::II, RowType::II];
            let rows = synthetic_rows(pr, case, &types, &[1, -1, 1, -1]).unwrap();
            let g = gram(&rows);
            for (i, row) in c.full().iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    assert_eq!(g[i][j], Cyclotomic::from_int(v));
                }
            }
            let m = contributions(&rows, &c, pr).unwrap();
            let trace: Cyclotomic = (0..rows.len()).map(|i| m.entries[i][i].clone()).sum();
            assert_eq!(trace, Cyclotomic::from_int(m.scale as i64 * c.dim() as i64));
        }
    }
}
