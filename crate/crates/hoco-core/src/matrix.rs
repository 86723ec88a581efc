//! Exact integer matrices and Smith normal form with tracked transforms.
//!
//! All arithmetic is checked `i64`; overflow is a typed error, never a wrong
//! answer. The factorization maintains `u * a * v = d` together with the
//! inverses of `u` and `v`, which downstream homology code uses to express
//! kernel coordinates and to solve linear systems over the integers.

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::mismatch("ragged rows in matrix literal"));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend_from_slice(row);
        }
        Ok(IntMat { rows: r, cols: c, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &IntMat) -> Result<IntMat> {
        if self.cols != other.rows {
            return Err(Error::mismatch(format!(
                "matrix product {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let term = a.checked_mul(other.at(k, j)).ok_or(Error::Overflow)?;
                    let sum = out.at(i, j).checked_add(term).ok_or(Error::Overflow)?;
                    out.set(i, j, sum);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::mismatch("matrix-vector dimension"));
        }
        let mut out = vec![0i64; self.rows];
        for i in 0..self.rows {
            let mut acc: i64 = 0;
            for j in 0..self.cols {
                let term = self.at(i, j).checked_mul(v[j]).ok_or(Error::Overflow)?;
                acc = acc.checked_add(term).ok_or(Error::Overflow)?;
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.at(i, j) == i64::from(i == j)))
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.at(r, c)).collect()
    }

    /// New matrix made of the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMat {
        let mut out = IntMat::zeros(self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, j, self.at(r, c));
            }
        }
        out
    }

    /// New matrix made of rows `from..` of `self`.
    pub fn rows_from(&self, from: usize) -> IntMat {
        let mut out = IntMat::zeros(self.rows - from, self.cols);
        for r in from..self.rows {
            for c in 0..self.cols {
                out.set(r - from, c, self.at(r, c));
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMat) -> Result<IntMat> {
        if self.rows != other.rows {
            return Err(Error::mismatch("hstack row counts differ"));
        }
        let mut out = IntMat::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.at(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.at(r, c));
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[i] += q * row[j]
    fn row_axpy(&mut self, i: usize, j: usize, q: i64) -> Result<()> {
        for c in 0..self.cols {
            let term = q.checked_mul(self.at(j, c)).ok_or(Error::Overflow)?;
            let v = self.at(i, c).checked_add(term).ok_or(Error::Overflow)?;
            self.set(i, c, v);
        }
        Ok(())
    }

    /// col[i] += q * col[j]
    fn col_axpy(&mut self, i: usize, j: usize, q: i64) -> Result<()> {
        for r in 0..self.rows {
            let term = q.checked_mul(self.at(r, j)).ok_or(Error::Overflow)?;
            let v = self.at(r, i).checked_add(term).ok_or(Error::Overflow)?;
            self.set(r, i, v);
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = self.at(i, c);
            self.set(i, c, -v);
        }
    }
}

/// Smith factorization `u * a * v = d` with unimodular `u`, `v` and their
/// inverses. `d` is diagonal with nonnegative entries in divisibility order;
/// `rank` counts the nonzero diagonal entries.
#[derive(Debug, Clone)]
pub struct Smith {
    pub d: IntMat,
    pub u: IntMat,
    pub v: IntMat,
    pub u_inv: IntMat,
    pub v_inv: IntMat,
    pub rank: usize,
}

impl Smith {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariants(&self) -> Vec<i64> {
        (0..self.rank).map(|i| self.d.at(i, i)).collect()
    }
}

/// Smith normal form by pivoting on the entry of least magnitude.
///
/// Elementary operations are mirrored into `u`/`v` and their inverses, so
/// the factor identity holds by construction; tests multiply it back out.
pub fn smith_normal_form(a: &IntMat) -> Result<Smith> {
    let mut d = a.clone();
    let rows = d.rows;
    let cols = d.cols;
    let mut u = IntMat::identity(rows);
    let mut u_inv = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let mut v_inv = IntMat::identity(cols);

    // Row op on d is a left factor: mirror into u, and into u_inv inversely
    // (u_inv tracks u^-1, so it takes the inverse op on the other side).
    let mut t = 0usize;
    while t < rows && t < cols {
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let x = d.at(r, c);
                if x != 0 {
                    let better = match best {
                        None => true,
                        Some((br, bc)) => x.abs() < d.at(br, bc).abs(),
                    };
                    if better {
                        best = Some((r, c));
                    }
                }
            }
        }
        let Some((br, bc)) = best else {
            break;
        };
        d.swap_rows(t, br);
        u.swap_rows(t, br);
        u_inv.swap_cols(t, br);
        d.swap_cols(t, bc);
        v.swap_cols(t, bc);
        v_inv.swap_rows(t, bc);

        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                let x = d.at(r, t);
                if x != 0 {
                    let q = div_round(x, d.at(t, t));
                    d.row_axpy(r, t, -q)?;
                    u.row_axpy(r, t, -q)?;
                    u_inv.col_axpy(t, r, q)?;
                    if d.at(r, t) != 0 {
                        d.swap_rows(t, r);
                        u.swap_rows(t, r);
                        u_inv.swap_cols(t, r);
                        dirty = true;
                    }
                }
            }
            for c in t + 1..cols {
                let x = d.at(t, c);
                if x != 0 {
                    let q = div_round(x, d.at(t, t));
                    d.col_axpy(c, t, -q)?;
                    v.col_axpy(c, t, -q)?;
                    v_inv.row_axpy(t, c, q)?;
                    if d.at(t, c) != 0 {
                        d.swap_cols(t, c);
                        v.swap_cols(t, c);
                        v_inv.swap_rows(t, c);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }

        // Divisibility fix-up: fold a bad row into the pivot row and redo
        // this pivot. Terminates because the pivot gcd strictly shrinks.
        let p = d.at(t, t);
        let mut redo = false;
        'scan: for r in t + 1..rows {
            for c in t + 1..cols {
                if d.at(r, c) % p != 0 {
                    d.row_axpy(t, r, 1)?;
                    u.row_axpy(t, r, 1)?;
                    u_inv.col_axpy(r, t, -1)?;
                    redo = true;
                    break 'scan;
                }
            }
        }
        if redo {
            continue;
        }
        if d.at(t, t) < 0 {
            // Sign flip is its own inverse: negate row t on the left,
            // column t in the tracked inverse.
            d.negate_row(t);
            u.negate_row(t);
            for r in 0..rows {
                let x = u_inv.at(r, t);
                u_inv.set(r, t, -x);
            }
        }
        t += 1;
    }
    Ok(Smith { d, u, v, u_inv, v_inv, rank: t })
}

fn div_round(a: i64, b: i64) -> i64 {
    let q = a / b;
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + if (r < 0) == (b < 0) { 1 } else { -1 }
    } else {
        q
    }
}

/// Basis of the integer kernel of `a`, one column per basis vector.
pub fn kernel_basis(snf: &Smith) -> IntMat {
    let cols = snf.v.cols();
    let idx: Vec<usize> = (snf.rank..cols).collect();
    snf.v.select_columns(&idx)
}

/// Solves `a x = b` over the integers given the factorization of `a`.
/// Returns `None` when no integral solution exists.
pub fn solve(snf: &Smith, b: &[i64]) -> Result<Option<Vec<i64>>> {
    let y = snf.u.mul_vec(b)?;
    let n = snf.v.rows();
    let mut z = vec![0i64; n];
    for (i, &yi) in y.iter().enumerate() {
        if i < snf.rank {
            let di = snf.d.at(i, i);
            if yi % di != 0 {
                return Ok(None);
            }
            z[i] = yi / di;
        } else if yi != 0 {
            return Ok(None);
        }
    }
    Ok(Some(snf.v.mul_vec(&z)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_factorization(a: &IntMat) -> Smith {
        let s = smith_normal_form(a).unwrap();
        let lhs = s.u.mul(a).unwrap().mul(&s.v).unwrap();
        assert_eq!(lhs, s.d, "u*a*v must equal d");
        assert!(s.u.mul(&s.u_inv).unwrap().is_identity(), "u * u_inv");
        assert!(s.u_inv.mul(&s.u).unwrap().is_identity(), "u_inv * u");
        assert!(s.v.mul(&s.v_inv).unwrap().is_identity(), "v * v_inv");
        assert!(s.v_inv.mul(&s.v).unwrap().is_identity(), "v_inv * v");
        for i in 0..s.rank.saturating_sub(1) {
            assert_eq!(s.d.at(i + 1, i + 1) % s.d.at(i, i), 0, "divisibility chain");
        }
        for r in 0..s.d.rows() {
            for c in 0..s.d.cols() {
                if r != c {
                    assert_eq!(s.d.at(r, c), 0, "off-diagonal zero");
                }
            }
        }
        s
    }

    #[test]
    fn two_by_two_invariants() {
        // gcd of entries is 2 and |det| = 8, so the invariants are 2 and 4.
        let a = IntMat::from_rows(&[vec![2, 4], vec![6, 8]]).unwrap();
        let s = check_factorization(&a);
        assert_eq!(s.invariants(), vec![2, 4]);
    }

    #[test]
    fn identity_and_zero() {
        let s = check_factorization(&IntMat::identity(3));
        assert_eq!(s.invariants(), vec![1, 1, 1]);
        let z = IntMat::zeros(2, 5);
        let s = check_factorization(&z);
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn rectangular_with_torsion() {
        let a = IntMat::from_rows(&[vec![2, 0, 0], vec![0, 0, 12]]).unwrap();
        let s = check_factorization(&a);
        assert_eq!(s.invariants(), vec![2, 12]);
    }

    #[test]
    fn kernel_and_solve() {
        let a = IntMat::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]).unwrap();
        let s = check_factorization(&a);
        assert_eq!(s.rank, 1);
        let k = kernel_basis(&s);
        assert_eq!(k.cols(), 2);
        for j in 0..k.cols() {
            assert_eq!(a.mul_vec(&k.column(j)).unwrap(), vec![0, 0]);
        }
        let sol = solve(&s, &[6, 12]).unwrap().expect("consistent system");
        assert_eq!(a.mul_vec(&sol).unwrap(), vec![6, 12]);
        assert!(solve(&s, &[1, 1]).unwrap().is_none(), "inconsistent rhs");

        // Divisibility failure: the image of this matrix is an index-8
        // sublattice, so odd targets are unreachable.
        let m = IntMat::from_rows(&[vec![2, 4], vec![6, 8]]).unwrap();
        let s2 = smith_normal_form(&m).unwrap();
        assert!(solve(&s2, &[1, 0]).unwrap().is_none());
        let even = solve(&s2, &[2, 2]).unwrap().expect("lattice point");
        assert_eq!(m.mul_vec(&even).unwrap(), vec![2, 2]);
    }

    #[test]
    fn overflow_is_an_error() {
        let a = IntMat::from_rows(&[vec![i64::MAX, 1], vec![1, i64::MAX]]).unwrap();
        assert_eq!(a.mul(&a).unwrap_err(), Error::Overflow);
    }
}
