use super::{class_data, CharacterTable};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::pcgroup::GroupTable;

/// Default largest group order handled by [`dixon_table`].
pub const DEFAULT_DIXON_BOUND: usize = 1 << 10;

/// Order bound, overridable through `BLOCKLAB_MAX_ORDER`.
pub fn dixon_order_bound() -> usize {
    std::env::var("BLOCKLAB_MAX_ORDER")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DIXON_BOUND)
}

pub fn dixon_table(g: &GroupTable) -> Result<CharacterTable> {
    dixon_table_with_bound(g, dixon_order_bound())
}

/// Dixon–Schneider: common eigenvectors of the class-sum matrices over
/// `F_q`, then lifting of eigenvalue multiplicities to cyclotomic values.
pub fn dixon_table_with_bound(g: &GroupTable, bound: usize) -> Result<CharacterTable> {
    let order = g.order();
    if order > bound {
        return Err(Error::OrderTooLarge { order, bound });
    }
    let (classes, inverse, class_of) = class_data(g)?;
    let r = classes.len();
    let e = g.exponent() as u64;
    let lower = (2.0 * (order as f64).sqrt()).floor() as u64;
    let f = PrimeField::least_prime_above(e, lower)?;

    // a[j][k][l] = #{x ∈ K_j : x^{-1} g_l ∈ K_k}
    let members: Vec<Vec<usize>> = {
        let mut m = vec![Vec::new(); r];
        for a in 0..order {
            m[class_of[a]].push(a);
        }
        m
    };
    let mut mats = vec![vec![vec![0u64; r]; r]; r];
    for j in 0..r {
        for l in 0..r {
            let gl = classes[l].representative;
            for &x in &members[j] {
                let k = class_of[g.mul(g.inv(x), gl)];
                mats[j][k][l] += 1;
            }
        }
    }

    // split F_q^r into common eigenspaces
    let identity: Vec<Vec<u64>> =
        (0..r).map(|i| (0..r).map(|k| u64::from(i == k)).collect()).collect();
    let mut spaces = vec![identity];
    for a in mats.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let images: Vec<Vec<u64>> = space.iter().map(|w| mat_vec(&f, a, w)).collect();
            let mut found = 0;
            for lambda in 0..f.q {
                // (A - λ) W as an r × d matrix in the coordinates of W
                let m: Vec<Vec<u64>> = (0..r)
                    .map(|row| {
                        (0..space.len())
                            .map(|c| f.sub(images[c][row], f.mul(lambda, space[c][row])))
                            .collect()
                    })
                    .collect();
                let ns = f.nullspace(&m, space.len());
                if ns.is_empty() {
                    continue;
                }
                found += ns.len();
                let sub: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|c| {
                        (0..r)
                            .map(|row| {
                                c.iter()
                                    .zip(&space)
                                    .fold(0, |acc, (&ci, w)| f.add(acc, f.mul(ci, w[row])))
                            })
                            .collect()
                    })
                    .collect();
                next.push(sub);
                if found == space.len() {
                    break;
                }
            }
            if found != space.len() {
                return Err(Error::Internal("class-sum matrix is not diagonalizable".into()));
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::Internal(format!("{} eigenspaces for {r} classes", spaces.len())));
    }

    let theta = f.pow(f.primitive_root(), (f.q - 1) / e);
    let mut chars = Vec::with_capacity(r);
    for space in spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(Error::Internal("central character vanishes at the identity".into()));
        }
        let inv0 = f.inv(v[0]);
        let omega: Vec<u64> = v.iter().map(|&x| f.mul(x, inv0)).collect();
        let mut s = 0;
        for j in 0..r {
            let t = f.mul(omega[j], omega[inverse[j]]);
            s = f.add(s, f.mul(t, f.inv(classes[j].size as u64 % f.q)));
        }
        let d2 = f.mul(order as u64 % f.q, f.inv(s));
        let max_d = (order as f64).sqrt().floor() as u64;
        let degree = (1..=max_d)
            .find(|&d| d * d % f.q == d2)
            .ok_or_else(|| Error::Internal("no character degree matches".into()))?;
        let chi_mod: Vec<u64> = (0..r)
            .map(|j| f.mul(f.mul(degree, omega[j]), f.inv(classes[j].size as u64 % f.q)))
            .collect();
        let mut row = Vec::with_capacity(r);
        for cl in &classes {
            let o = cl.element_order as u64;
            let w = f.pow(theta, e / o);
            let powers: Vec<u64> =
                (0..o).map(|s| chi_mod[class_of[g.pow(cl.representative, s as i64)]]).collect();
            let o_inv = f.inv(o % f.q);
            let mut mult = vec![0i64; e as usize];
            let mut total = 0u64;
            for t in 0..o {
                let mut acc = 0;
                for (s, &val) in powers.iter().enumerate() {
                    let wp = f.pow(w, (o - (t * s as u64) % o) % o);
                    acc = f.add(acc, f.mul(val, wp));
                }
                let mt = f.mul(acc, o_inv);
                if mt > degree {
                    return Err(Error::Internal(format!(
                        "eigenvalue multiplicity {mt} exceeds degree {degree}"
                    )));
                }
                total += mt;
                mult[(t * (e / o)) as usize] += mt as i64;
            }
            if total != degree {
                return Err(Error::Internal("eigenvalue multiplicities do not sum to the degree".into()));
            }
            row.push(Cyclotomic::from_exponents(e, &mult));
        }
        chars.push(row);
    }
    let table = CharacterTable::new(order, e, classes, inverse, chars)?;
    table.verify()?;
    Ok(table)
}

fn mat_vec(f: &PrimeField, a: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x % f.q, y))))
        .collect()
}
