use super::{class_data, CharacterTable};
use crate::cyclo::Cyclotomic;
use crate::error::Result;
use crate::pcgroup::{make_group, Element, GroupParams};

/// Irreducible characters of `D(n, m)` from those of `D_{2^n} × C_{2^m}`
/// whose kernel contains `x^{2^{n-2}} z^{2^{m-1}}`.
///
/// Linear: `λ_{a,b} ⊗ μ_r` with `r` even. Degree 2: `ψ_h ⊗ μ_r` with
/// `1 <= h < 2^{n-2}` and `h ≡ r (mod 2)`.
pub fn family_table(params: GroupParams) -> Result<CharacterTable> {
    let g = make_group(params)?;
    let (classes, inverse, _) = class_data(&g)?;
    let conductor = 1u64 << (params.n - 1).max(params.m);
    let xs = conductor >> (params.n - 1); // ζ_{2^{n-1}} = ζ_N^{xs}
    let zs = conductor >> params.m; // ζ_{2^m} = ζ_N^{zs}
    let reps: Vec<Element> = classes.iter().map(|c| params.element(c.representative)).collect();
    let nn = conductor as usize;

    let value = |terms: &[(i64, i64)]| -> Cyclotomic {
        let mut mult = vec![0i64; nn];
        for &(c, e) in terms {
            mult[e.rem_euclid(nn as i64) as usize] += c;
        }
        Cyclotomic::from_exponents(conductor, &mult)
    };

    let mut chars = Vec::new();
    for r in (0..(1i64 << params.m)).step_by(2) {
        for a in 0..2i64 {
            for b in 0..2i64 {
                let row = reps
                    .iter()
                    .map(|e| {
                        let sign = if (a * e.i as i64 + b * e.j as i64) % 2 == 0 { 1 } else { -1 };
                        value(&[(sign, r * e.k as i64 * zs as i64)])
                    })
                    .collect();
                chars.push(row);
            }
        }
    }
    for r in 0..(1i64 << params.m) {
        for h in (1..(1i64 << (params.n - 2))).filter(|h| (h - r) % 2 == 0) {
            let row = reps
                .iter()
                .map(|e| {
                    if e.j == 1 {
                        return Cyclotomic::zero();
                    }
                    let zk = r * e.k as i64 * zs as i64;
                    let xi = h * e.i as i64 * xs as i64;
                    value(&[(1, xi + zk), (1, -xi + zk)])
                })
                .collect();
            chars.push(row);
        }
    }
    CharacterTable::new(g.order(), conductor, classes, inverse, chars)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_on_grid() {
        for n in 3..=5 {
            for m in 2..=3 {
                let p = GroupParams::new(n, m).unwrap();
                let t = family_table(p).unwrap();
                let deg = t.degrees();
                assert_eq!(deg.iter().filter(|&&d| d == 1).count(), 1 << (m + 1));
                assert_eq!(
                    deg.iter().filter(|&&d| d == 2).count(),
                    (1 << (m - 1)) * ((1 << (n - 2)) - 1)
                );
                assert_eq!(deg.iter().map(|d| d * d).sum::<u64>(), p.order() as u64);
                t.verify().unwrap();
            }
        }
    }

    #[test]
    fn degree_two_values_on_z_for_d32() {
        let p = GroupParams::new(3, 2).unwrap();
        let t = family_table(p).unwrap();
        let zc = t.classes().iter().position(|c| c.representative == p.z()).unwrap();
        let i4 = Cyclotomic::zeta(4, 1);
        for chi in 8..10 {
            let v = t.value(chi, zc);
            assert!(*v == i4.scale(&crate::linalg::q(2)) || *v == i4.scale(&crate::linalg::q(-2)));
        }
    }
}
