//! Structural invariants across modules.

use std::collections::BTreeMap;

use blocklab::blocks::{block_height_counts, block_partition, block_partition_with, ModTwoEmbedding};
use blocklab::chartab::{dixon_table, family_table};
use blocklab::cyclo::{galois_coeffs, galois_expand, CoeffColumns};
use blocklab::cyclo::Cyclotomic;
use blocklab::decomp::{height_classify, legal_ab_rows, random_row, signed_zeta, DecompRow};
use blocklab::fusion::{build_fusion, build_fusion_with, FusionCase};
use blocklab::gluing::{a_values, ChainCategory};
use blocklab::invariants::{formula, subsection_sum_check};
use blocklab::localweights::owc_check_with;
use blocklab::pcgroup::{make_group, GroupParams, GroupTable, GroupTag};
use blocklab::witness::{witness_group, witness_report, WitnessKind};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn p(n: u32, m: u32) -> GroupParams {
    GroupParams::new(n, m).unwrap()
}

fn desk_grid() -> Vec<(u32, u32)> {
    (3..=5).flat_map(|n| (2..=3).map(move |m| (n, m))).collect()
}

fn big_grid() -> Vec<(u32, u32)> {
    (3..=6).flat_map(|n| (2..=4).map(move |m| (n, m))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    /// Reducing a word left to right, right to left, or through the
    /// group table all give the same normal form.
    #[test]
    fn normal_form_is_confluent(
        n in 3u32..=5,
        m in 2u32..=3,
        word in prop::collection::vec((0usize..3, -9i64..=9), 0..12),
    ) {
        let params = p(n, m);
        let g = make_group(params).unwrap();
        let letters: Vec<usize> = word
            .iter()
            .map(|&(gen, e)| {
                let (i, j, k) = [(e, 0, 0), (0, e, 0), (0, 0, e)][gen];
                params.index(params.reduce(i, j, k))
            })
            .collect();
        let left = letters.iter().fold(0, |acc, &a| g.mul(acc, a));
        let right = letters.iter().rev().fold(0, |acc, &a| g.mul(a, acc));
        let by_elements = letters
            .iter()
            .fold(params.element(0), |acc, &a| params.mul(acc, params.element(a)));
        prop_assert_eq!(left, right);
        prop_assert_eq!(params.index(by_elements), left);
        let e = params.element(left);
        prop_assert_eq!(params.reduce(e.i as i64, e.j as i64, e.k as i64), e);
    }
}

fn random_cyclotomic(k: u32, coeffs: &[i64]) -> Cyclotomic {
    Cyclotomic::from_exponents(1 << k, &coeffs[..1 << (k - 1)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn valuation_is_multiplicative_and_ultrametric(
        k in 2u32..=5,
        a in prop::collection::vec(-4i64..=4, 16),
        b in prop::collection::vec(-4i64..=4, 16),
    ) {
        let (x, y) = (random_cyclotomic(k, &a), random_cyclotomic(k, &b));
        prop_assume!(!x.is_zero() && !y.is_zero());
        let (vx, vy) = (x.valuation().unwrap(), y.valuation().unwrap());
        prop_assert_eq!((&x * &y).valuation().unwrap(), &vx + &vy);
        prop_assert!((&x + &y).valuation().unwrap() >= vx.min(vy));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn galois_coefficients_round_trip(
        k in 1u32..=4,
        rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 8), 1..=20),
    ) {
        let half = 1usize << (k - 1);
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r[..half].to_vec()).collect();
        let cols = CoeffColumns::from_i64(k, &rows).unwrap();
        let n = 1i64 << k;
        let family: BTreeMap<i64, Vec<Cyclotomic>> = (1..n)
            .step_by(2)
            .map(|g| (g, galois_expand(&cols, g).unwrap()))
            .collect();
        prop_assert_eq!(galois_coeffs(&family, k).unwrap(), cols);
    }

    /// Heights depend only on valuations: a root of unity or a sign on the
    /// whole row does not change the verdict.
    #[test]
    fn height_verdict_ignores_units(
        idx in 0usize..3,
        seed in any::<u64>(),
        e in 0i64..16,
        sign in prop::sample::select(vec![1i64, -1]),
        legal in any::<bool>(),
    ) {
        let (n, m) = [(4, 2), (5, 2), (4, 3)][idx];
        let params = p(n, m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let row: DecompRow = if legal {
            let shapes = legal_ab_rows(params, 1, (seed % 4) as i64);
            shapes[(seed as usize / 4) % shapes.len()].0.clone()
        } else {
            random_row(&mut rng, m, 2)
        };
        prop_assume!(row.iter().any(|v| !v.is_zero()));
        let unit = signed_zeta(m, sign, e);
        let twisted: DecompRow = row.iter().map(|v| v * &unit).collect();
        let plain = height_classify(&row, params, FusionCase::Ab).unwrap();
        let turned = height_classify(&twisted, params, FusionCase::Ab).unwrap();
        prop_assert_eq!(
            std::mem::discriminant(&plain),
            std::mem::discriminant(&turned)
        );
        if let (blocklab::decomp::HeightVerdict::Height { height: a, .. },
                blocklab::decomp::HeightVerdict::Height { height: b, .. }) = (&plain, &turned) {
            prop_assert_eq!(a, b);
        }
    }
}

#[test]
fn family_orders_over_grid() {
    for (n, m) in big_grid() {
        let params = p(n, m);
        let g = make_group(params).unwrap();
        assert_eq!(g.order(), 1 << (n + m - 1));
        assert_eq!(g.center().order(), 1 << m);
        assert_eq!(g.order() / g.derived_subgroup().order(), 1 << (m + 1));
        assert_eq!(g.element_order(params.x()), 1 << (n - 1));
    }
}

#[test]
fn class_equation_holds() {
    let mut tables: Vec<GroupTable> = desk_grid().into_iter().map(|(n, m)| make_group(p(n, m)).unwrap()).collect();
    tables.push(witness_group(WitnessKind::Semidirect, p(3, 2)).unwrap());
    tables.push(witness_group(WitnessKind::Semidirect, p(3, 3)).unwrap());
    tables.push(GroupTable::symmetric(4).unwrap());
    for g in &tables {
        let total: usize = g.conjugacy_classes().unwrap().iter().map(|c| c.size()).sum();
        assert_eq!(total, g.order());
    }
}

#[test]
fn character_tables_are_orthogonal() {
    for (n, m) in desk_grid() {
        let fam = family_table(p(n, m)).unwrap();
        fam.verify().unwrap();
        let classes = make_group(p(n, m)).unwrap().conjugacy_classes().unwrap().len();
        assert_eq!(fam.num_classes(), classes, "({n},{m})");
    }
    for m in 2..=3 {
        let g = witness_group(WitnessKind::Semidirect, p(3, m)).unwrap();
        dixon_table(&g).unwrap().verify().unwrap();
    }
}

/// Dihedral-type columns: for odd `γ`, four linear rows with values `±1`
/// and rows `ζ^{jγ} + ζ^{-jγ}`, each repeated `2^{m-1}` times, so that
/// `(d(x^γ), d(x^δ)) = 2^{n-2+m}` if `δ ≡ ±γ` and `0` otherwise.
fn dihedral_columns(n: u32, m: u32) -> BTreeMap<i64, Vec<Cyclotomic>> {
    let k = n - 1;
    let order = 1i64 << k;
    let copies = 1usize << (m - 1);
    (1..order)
        .step_by(2)
        .map(|g| {
            let mut col = Vec::new();
            for _ in 0..copies {
                for s in [1, 1, -1, -1] {
                    col.push(Cyclotomic::from_int(s));
                }
                for j in 1..order / 2 {
                    col.push(&Cyclotomic::zeta(order as u64, j * g) + &Cyclotomic::zeta(order as u64, -j * g));
                }
            }
            (g, col)
        })
        .collect()
}

fn inner(a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
    a.iter().zip(b).map(|(x, y)| x * &y.conj()).sum()
}

#[test]
fn orthogonality_transfers_to_a0() {
    for (n, m) in desk_grid() {
        let cols = dihedral_columns(n, m);
        let order = 1i64 << (n - 1);
        let norm = Cyclotomic::from_int(1 << (n - 2 + m));
        for (&g, dg) in &cols {
            for (&h, dh) in &cols {
                let same = (g - h).rem_euclid(order) == 0 || (g + h).rem_euclid(order) == 0;
                let expected = if same { norm.clone() } else { Cyclotomic::zero() };
                assert_eq!(inner(dg, dh), expected, "precondition at ({n},{m}) {g} {h}");
            }
        }
        let a = galois_coeffs(&cols, n - 1).unwrap();
        let a0: BigInt = a.rows.iter().map(|r| &r[0] * &r[0]).sum();
        assert_eq!(a0, BigInt::from(1u64 << (m + 1)), "({n},{m})");
    }
}

#[test]
fn block_partition_ignores_embedding() {
    for m in 2..=3 {
        let g = witness_group(WitnessKind::Semidirect, p(3, m)).unwrap();
        let t = dixon_table(&g).unwrap();
        let base = block_partition(&t).unwrap();
        let first = ModTwoEmbedding::new(t.conductor(), 0).unwrap();
        for choice in 1..first.choices() {
            let e = ModTwoEmbedding::new(t.conductor(), choice).unwrap();
            assert_eq!(block_partition_with(&t, &e).unwrap().blocks, base.blocks);
        }
    }
    // S_4 has no character of defect zero, so a single block
    let s4 = dixon_table(&GroupTable::symmetric(4).unwrap()).unwrap();
    let base = block_partition(&s4).unwrap();
    assert_eq!(base.blocks.len(), 1);
    let s3 = dixon_table(&GroupTable::symmetric(3).unwrap()).unwrap();
    let parts = block_partition(&s3).unwrap();
    assert_eq!(parts.blocks.len(), 2);
    let first = ModTwoEmbedding::new(s3.conductor(), 0).unwrap();
    for choice in 0..first.choices() {
        let e = ModTwoEmbedding::new(s3.conductor(), choice).unwrap();
        assert_eq!(block_partition_with(&s3, &e).unwrap().blocks, parts.blocks);
    }
}

#[test]
fn principal_block_counts_against_witnesses() {
    let mut cases = vec![(WitnessKind::Semidirect, p(3, 2)), (WitnessKind::Semidirect, p(3, 3))];
    cases.extend(desk_grid().into_iter().map(|(n, m)| (WitnessKind::Family, p(n, m))));
    for (kind, params) in cases {
        let g = witness_group(kind, params).unwrap();
        let t = match kind {
            WitnessKind::Family => family_table(params).unwrap(),
            WitnessKind::Semidirect => dixon_table(&g).unwrap(),
        };
        let parts = block_partition(&t).unwrap();
        let principal: u64 = block_height_counts(&parts, &t, parts.principal).iter().sum();
        let k = t.num_classes() as u64;
        assert!(principal <= k);
        assert_eq!(principal == k, parts.blocks.len() == 1);
        let r = witness_report(kind, params).unwrap();
        assert_eq!(r.invariants.k0, 1 << (params.m + 1));
    }
}

#[test]
fn f_classes_partition_the_group() {
    for (n, m) in desk_grid() {
        for case in FusionCase::valid_cases(n) {
            let fs = build_fusion(p(n, m), case).unwrap();
            let mut seen = vec![false; fs.group.order()];
            for class in fs.f_classes() {
                for a in class {
                    assert!(!seen[a], "element {a} in two classes");
                    seen[a] = true;
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }
}

#[test]
fn subsection_identity_with_m_up_to_four() {
    for n in 3..=5 {
        for m in 2..=4 {
            for case in FusionCase::valid_cases(n) {
                assert!(subsection_sum_check(p(n, m), case).unwrap().pass, "({n},{m},{case})");
            }
        }
    }
}

/// `Q_{2^n} = <a, b | a^{2^{n-1}}, b^2 = a^{2^{n-2}}, b a b^{-1} = a^{-1}>`
/// on pairs `(i, e)` encoded as `i + N e`.
fn quaternion(n: u32) -> GroupTable {
    let big = 1usize << (n - 1);
    let mul = move |x: usize, y: usize| {
        let (i, e) = (x % big, x / big);
        let (j, f) = (y % big, y / big);
        match (e, f) {
            (0, _) => (i + j) % big + big * f,
            (1, 0) => (i + big - j) % big + big,
            _ => (i + big - j + big / 2) % big,
        }
    };
    GroupTable::from_oracle(2 * big, GroupTag::Generic, mul).unwrap()
}

#[test]
fn m_one_reproduces_quaternion_counts() {
    for n in 3..=6 {
        let q = quaternion(n);
        let k = q.conjugacy_classes().unwrap().len() as u64;
        let k0 = (q.order() / q.derived_subgroup().order()) as u64;
        // degrees are 1 or 2 since <a> is abelian of index 2
        let k1 = (q.order() as u64 - k0) / 4;
        let bb = formula(n, 1, FusionCase::Bb).unwrap();
        assert_eq!((bb.k, bb.k0, bb.k1), (k, k0, k1), "n = {n}");
        for case in FusionCase::valid_cases(n) {
            let f = formula(n, 1, case).unwrap();
            assert_eq!(f.k0, 4);
            assert_eq!(f.height_counts(n).iter().sum::<u64>(), f.k);
        }
    }
}

#[test]
fn ordinary_weights_ignore_automorphism_choice() {
    for (n, m) in [(3, 2), (4, 2), (4, 3), (5, 2)] {
        for case in [FusionCase::Aa, FusionCase::Ab] {
            if !case.is_valid_for(n) {
                continue;
            }
            let base = owc_check_with(&build_fusion(p(n, m), case).unwrap()).unwrap();
            for choice in 1..4 {
                let other = owc_check_with(&build_fusion_with(p(n, m), case, choice).unwrap()).unwrap();
                assert_eq!(other, base, "({n},{m},{case}) choice {choice}");
            }
        }
    }
}

#[test]
fn coefficient_functors_are_functorial() {
    for (n, m) in desk_grid() {
        for case in FusionCase::valid_cases(n) {
            let fs = build_fusion(p(n, m), case).unwrap();
            let cat = ChainCategory::new(&fs).unwrap();
            cat.category.verify().unwrap();
            for i in [1, 2] {
                a_values(&fs, &cat, i).unwrap().verify(&cat.category).unwrap();
            }
        }
    }
}
