//! Brute-force oracle for integer diagonalization and simplicial homology.
//!
//! Written before the library implementations it audits, and kept
//! independent of them: plain `Vec<Vec<i128>>` matrices, no transform
//! tracking, Euclidean reduction by recursion, and homology via the
//! rank-counting formula (free rank = n_k - rank d_k - rank d_{k+1},
//! torsion = invariant factors > 1 of d_{k+1}) rather than the library's
//! kernel-basis cokernel presentation.

use hoco_core::simpset::TruncatedSSet;

/// Invariant factors (positive, each dividing the next) of an integer matrix.
pub fn snf_invariants(mat: &[Vec<i128>]) -> Vec<i128> {
    let mut m: Vec<Vec<i128>> = mat.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    reduce(&mut m, 0, rows, cols, &mut out);
    out
}

fn reduce(m: &mut Vec<Vec<i128>>, t: usize, rows: usize, cols: usize, out: &mut Vec<i128>) {
    if t >= rows || t >= cols {
        return;
    }
    let mut best: Option<(usize, usize)> = None;
    for r in t..rows {
        for c in t..cols {
            if m[r][c] != 0 {
                let better = match best {
                    None => true,
                    Some((br, bc)) => m[r][c].abs() < m[br][bc].abs(),
                };
                if better {
                    best = Some((r, c));
                }
            }
        }
    }
    let Some((br, bc)) = best else {
        return; // trailing block is zero
    };
    m.swap(t, br);
    for row in m.iter_mut() {
        row.swap(t, bc);
    }
    loop {
        let mut dirty = false;
        for r in t + 1..rows {
            if m[r][t] != 0 {
                let q = div_round(m[r][t], m[t][t]);
                for c in t..cols {
                    let sub = q * m[t][c];
                    m[r][c] -= sub;
                }
                if m[r][t] != 0 {
                    m.swap(t, r); // remainder is the smaller pivot candidate
                    dirty = true;
                }
            }
        }
        for c in t + 1..cols {
            if m[t][c] != 0 {
                let q = div_round(m[t][c], m[t][t]);
                for row in m.iter_mut().take(rows).skip(t) {
                    let sub = q * row[t];
                    row[c] -= sub;
                }
                if m[t][c] != 0 {
                    for row in m.iter_mut() {
                        row.swap(t, c);
                    }
                    dirty = true;
                }
            }
        }
        if !dirty {
            break;
        }
    }
    let p = m[t][t].abs();
    for r in t + 1..rows {
        for c in t + 1..cols {
            if m[r][c] % p != 0 {
                let row_r = m[r].clone();
                for cc in t..cols {
                    m[t][cc] += row_r[cc];
                }
                reduce(m, t, rows, cols, out);
                return;
            }
        }
    }
    out.push(p);
    reduce(m, t + 1, rows, cols, out);
}

fn div_round(a: i128, b: i128) -> i128 {
    // Round-to-nearest division keeps remainders at most |b|/2.
    let q = a / b;
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + if (r < 0) == (b < 0) { 1 } else { -1 }
    } else {
        q
    }
}

/// Free rank and torsion coefficients (in divisibility order) of one
/// homology group of the normalized chain complex of `x`.
///
/// Boundary matrices are rebuilt here from the face tables; degenerate face
/// targets contribute nothing.
pub fn homology(x: &TruncatedSSet, k: usize) -> (usize, Vec<i128>) {
    assert!(
        k + 1 <= x.trunc_level(),
        "oracle homology needs chains one level above degree {k}"
    );
    let n_k = x.cell_count(k);
    let rank_k = snf_invariants(&boundary_matrix(x, k)).len();
    let inv_k1 = snf_invariants(&boundary_matrix(x, k + 1));
    let rank_k1 = inv_k1.len();
    let free = n_k
        .checked_sub(rank_k + rank_k1)
        .expect("rank sum exceeds chain rank: complex is not a complex");
    let torsion: Vec<i128> = inv_k1.into_iter().filter(|d| *d > 1).collect();
    (free, torsion)
}

/// Matrix of the boundary map from k-chains to (k-1)-chains, one column per
/// non-degenerate k-cell. For k = 0 the matrix has zero rows.
pub fn boundary_matrix(x: &TruncatedSSet, k: usize) -> Vec<Vec<i128>> {
    if k == 0 {
        return Vec::new();
    }
    let cols = x.cell_count(k);
    let rows = x.cell_count(k - 1);
    let mut m = vec![vec![0i128; cols]; rows];
    for c in 0..cols {
        for i in 0..=k {
            let f = x.face(k, c, i);
            if f.word.is_empty() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m[f.base][c] += sign;
            }
        }
    }
    m
}
