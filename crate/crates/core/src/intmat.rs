//! Integer matrices: Smith normal form with transforms, lattice kernels and
//! quotient invariants. Entries are `i128`; the matrices here are small.

pub type IMatrix = Vec<Vec<i128>>;

/// `u · a · v = diag(d)` with `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IMatrix,
    pub v: IMatrix,
    /// Nonzero diagonal entries, each dividing the next.
    pub d: Vec<i128>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.d.len()
    }
}

fn identity(n: usize) -> IMatrix {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn swap_cols(m: &mut IMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row_a -= q * row_b
fn sub_row(m: &mut IMatrix, a: usize, b: usize, q: i128) {
    if q == 0 {
        return;
    }
    let rb = m[b].clone();
    for (x, y) in m[a].iter_mut().zip(rb) {
        *x -= q * y;
    }
}

/// col_a -= q * col_b
fn sub_col(m: &mut IMatrix, a: usize, b: usize, q: i128) {
    if q == 0 {
        return;
    }
    for row in m.iter_mut() {
        row[a] -= q * row[b];
    }
}

pub fn smith(a: &IMatrix, cols: usize) -> Smith {
    let rows = a.len();
    let mut m = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut d = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            break;
        };
        m.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut m, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(m[t][t]);
                sub_row(&mut m, i, t, q);
                sub_row(&mut u, i, t, q);
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(m[t][t]);
                sub_col(&mut m, j, t, q);
                sub_col(&mut v, j, t, q);
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // divisibility: fold an offending row into row t
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| m[i][j] % m[t][t] != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        sub_row(&mut m, t, i, -1);
                        sub_row(&mut u, t, i, -1);
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let (bi, bj) = (t..rows)
                .map(|i| (i, t))
                .chain((t..cols).map(|j| (t, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs())
                .expect("pivot is nonzero");
            m.swap(t, bi);
            u.swap(t, bi);
            swap_cols(&mut m, t, bj);
            swap_cols(&mut v, t, bj);
        }
        if m[t][t] < 0 {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        d.push(m[t][t]);
        t += 1;
    }
    Smith { u, v, d }
}

/// Generators of `{x ∈ Z^n : a x ≡ 0 (mod moduli[row])}`.
pub fn kernel_mod(a: &IMatrix, moduli: &[i128], n: usize) -> Vec<Vec<i128>> {
    if a.is_empty() {
        return identity(n);
    }
    // [a | diag(moduli)] (x, y) = 0
    let rows = a.len();
    let ext: IMatrix = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..rows).map(|j| if i == j { moduli[i] } else { 0 }));
            row
        })
        .collect();
    let s = smith(&ext, n + rows);
    (s.rank()..n + rows).map(|j| (0..n).map(|i| s.v[i][j]).collect()).collect()
}

/// Invariant factors (all `> 1`; `0` for a free summand) of `L / S` where
/// `L` and `S ⊆ L` are spanned by the given vectors in `Z^n`.
pub fn quotient_invariants(l_gens: &[Vec<i128>], s_gens: &[Vec<i128>], n: usize) -> Vec<i128> {
    // basis of L: columns of u^{-1} diag(d) for the Smith form of the
    // generator matrix; coordinates of w in that basis are (u w)_i / d_i
    let g: IMatrix = (0..n).map(|i| l_gens.iter().map(|v| v[i]).collect()).collect();
    let sg = smith(&g, l_gens.len());
    let r = sg.rank();
    let coords: Vec<Vec<i128>> = s_gens
        .iter()
        .map(|w| {
            (0..r)
                .map(|i| {
                    let x: i128 = (0..n).map(|k| sg.u[i][k] * w[k]).sum();
                    debug_assert_eq!(x % sg.d[i], 0, "sublattice not contained in lattice");
                    x / sg.d[i]
                })
                .collect()
        })
        .collect();
    let c: IMatrix = (0..r).map(|i| coords.iter().map(|t| t[i]).collect()).collect();
    let sc = smith(&c, coords.len());
    let mut inv: Vec<i128> = sc.d.iter().copied().filter(|&x| x != 1).collect();
    inv.extend(std::iter::repeat(0).take(r - sc.rank()));
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &IMatrix, b: &IMatrix) -> IMatrix {
        let k = b.len();
        let c = if k == 0 { 0 } else { b[0].len() };
        a.iter().map(|r| (0..c).map(|j| (0..k).map(|t| r[t] * b[t][j]).sum()).collect()).collect()
    }

    #[test]
    fn smith_of_small_matrix() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&a, 3);
        assert_eq!(s.d, vec![2, 6, 12]);
        let p = mul(&mul(&s.u, &a), &s.v);
        for (i, row) in p.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, if i == j { s.d[i] } else { 0 });
            }
        }
    }

    #[test]
    fn quotient_of_z_by_multiples() {
        assert_eq!(quotient_invariants(&[vec![1]], &[vec![6]], 1), vec![6]);
        assert_eq!(quotient_invariants(&[vec![2]], &[vec![6]], 1), vec![3]);
        assert_eq!(quotient_invariants(&[vec![1, 0], vec![0, 1]], &[vec![2, 0], vec![0, 3]], 2), vec![6]);
        assert_eq!(quotient_invariants(&[vec![1, 0], vec![0, 1]], &[vec![1, 0]], 2), vec![0]);
    }

    #[test]
    fn kernel_modulo() {
        // 2x ≡ 0 mod 6 → x ∈ 3Z
        let k = kernel_mod(&vec![vec![2]], &[6], 1);
        assert_eq!(quotient_invariants(&[vec![1]], &k, 1), vec![3]);
    }
}
