//! Integral homology of the normalized chain complex.
//!
//! Chains are free on non-degenerate cells; faces landing on degenerate
//! simplices contribute nothing to the boundary. Groups are computed from a
//! cokernel presentation of the cycle lattice, which also yields the data
//! needed to compare homology along a map (kernel coordinates and an
//! image-membership test), not just ranks.

use super::TruncatedSSet;
use crate::error::{Error, Result};
use crate::matrix::{kernel_basis, smith_normal_form, IntMat, Smith};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub free_rank: usize,
    /// Torsion coefficients > 1 in divisibility order.
    pub torsion: Vec<i64>,
}

impl HomologyGroup {
    pub fn trivial() -> Self {
        HomologyGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join("+"))
    }
}

/// Boundary matrix from k-chains to (k-1)-chains. For k = 0 the matrix has
/// zero rows; entries above the truncation are rejected by the caller.
pub fn boundary_matrix(x: &TruncatedSSet, k: usize) -> IntMat {
    let cols = x.cell_count(k);
    if k == 0 {
        return IntMat::zeros(0, cols);
    }
    let rows = x.cell_count(k - 1);
    let mut m = IntMat::zeros(rows, cols);
    for c in 0..cols {
        for i in 0..=k {
            let f = x.face(k, c, i);
            if f.word.is_empty() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.set(f.base, c, m.at(f.base, c) + sign);
            }
        }
    }
    m
}

/// Cycle-and-boundary data for one degree: the Smith form of the boundary
/// out of degree k, and the incoming image expressed in kernel coordinates.
#[derive(Debug, Clone)]
pub(crate) struct DegreeData {
    pub snf_d: Smith,
    pub kernel_rank: usize,
    /// Image of the (k+1)-boundary in kernel coordinates, z x n_{k+1}.
    pub b: IntMat,
    pub snf_b: Smith,
}

pub(crate) fn degree_data(x: &TruncatedSSet, k: usize) -> Result<DegreeData> {
    if k + 1 > x.trunc_level() {
        return Err(Error::InsufficientTruncation { needed: k + 1, have: x.trunc_level() });
    }
    let d_k = boundary_matrix(x, k);
    let snf_d = smith_normal_form(&d_k)?;
    let n_k = d_k.cols();
    let kernel_rank = n_k - snf_d.rank;
    let d_next = boundary_matrix(x, k + 1);
    let in_coords = snf_d.v_inv.mul(&d_next)?;
    for r in 0..snf_d.rank {
        for c in 0..in_coords.cols() {
            if in_coords.at(r, c) != 0 {
                return Err(Error::invalid(format!(
                    "boundary of boundary nonzero at degree {k}: not a chain complex"
                )));
            }
        }
    }
    let b = in_coords.rows_from(snf_d.rank);
    let snf_b = smith_normal_form(&b)?;
    Ok(DegreeData { snf_d, kernel_rank, b, snf_b })
}

impl DegreeData {
    pub fn group(&self) -> HomologyGroup {
        let torsion = self.snf_b.invariants().into_iter().filter(|d| *d > 1).collect();
        HomologyGroup { free_rank: self.kernel_rank - self.snf_b.rank, torsion }
    }

    /// Kernel coordinates of a cycle; errors when the chain is not a cycle.
    pub fn cycle_coords(&self, chain: &[i64]) -> Result<Vec<i64>> {
        let y = self.snf_d.v_inv.mul_vec(chain)?;
        if y[..self.snf_d.rank].iter().any(|&v| v != 0) {
            return Err(Error::invalid("chain is not a cycle"));
        }
        Ok(y[self.snf_d.rank..].to_vec())
    }

    /// Matrix whose columns are the kernel basis in chain coordinates.
    pub fn kernel_matrix(&self) -> IntMat {
        kernel_basis(&self.snf_d)
    }
}

/// Homology groups H_0 .. H_k_max. Needs chains one degree above `k_max`.
pub fn homology(x: &TruncatedSSet, k_max: usize) -> Result<Vec<HomologyGroup>> {
    if k_max + 1 > x.trunc_level() {
        return Err(Error::InsufficientTruncation { needed: k_max + 1, have: x.trunc_level() });
    }
    crate::exec::try_map_range(k_max + 1, |k| degree_data(x, k).map(|d| d.group()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::solve;
    use crate::simpset::{boundary_simplex, quotient, standard_simplex, DegenerateRef, TruncatedSSet};

    fn groups(x: &TruncatedSSet, k: usize) -> Vec<HomologyGroup> {
        homology(x, k).unwrap()
    }

    #[test]
    fn circle_as_simplex_boundary() {
        let b2 = boundary_simplex(2, 2);
        let h = groups(&b2, 1);
        assert_eq!(h[0], HomologyGroup { free_rank: 1, torsion: vec![] });
        assert_eq!(h[1], HomologyGroup { free_rank: 1, torsion: vec![] });
    }

    #[test]
    fn two_sphere_as_simplex_boundary() {
        let b3 = boundary_simplex(3, 3);
        let h = groups(&b3, 2);
        assert_eq!(h[0], HomologyGroup { free_rank: 1, torsion: vec![] });
        assert_eq!(h[1], HomologyGroup::trivial());
        assert_eq!(h[2], HomologyGroup { free_rank: 1, torsion: vec![] });
    }

    #[test]
    fn circle_as_glued_interval() {
        let d1 = standard_simplex(1, 2);
        let q = quotient(&d1, &[(DegenerateRef::nondeg(0, 0), DegenerateRef::nondeg(0, 1))])
            .unwrap();
        let h = groups(&q.sset, 1);
        assert_eq!(h[0], HomologyGroup { free_rank: 1, torsion: vec![] });
        assert_eq!(h[1], HomologyGroup { free_rank: 1, torsion: vec![] });
    }

    #[test]
    fn disk_is_acyclic() {
        let d2 = standard_simplex(2, 2);
        let h = groups(&d2, 1);
        assert_eq!(h[0], HomologyGroup { free_rank: 1, torsion: vec![] });
        assert!(h[1].is_trivial());
    }

    #[test]
    fn empty_complex() {
        let e = TruncatedSSet::empty(2);
        let h = groups(&e, 1);
        assert!(h[0].is_trivial());
        assert!(h[1].is_trivial());
    }

    #[test]
    fn cycle_bounding_detection() {
        // The triangle cycle e01 - e02 + e12 bounds in the filled triangle
        // but not in its boundary.
        let cycle = [1i64, -1, 1];
        let filled = degree_data(&standard_simplex(2, 2), 1).unwrap();
        let coords = filled.cycle_coords(&cycle).unwrap();
        assert!(solve(&filled.snf_b, &coords).unwrap().is_some());
        let hollow = degree_data(&boundary_simplex(2, 2), 1).unwrap();
        let coords = hollow.cycle_coords(&cycle).unwrap();
        assert!(solve(&hollow.snf_b, &coords).unwrap().is_none());
        // A non-cycle is rejected outright.
        assert!(filled.cycle_coords(&[1, 0, 0]).is_err());
    }

    #[test]
    fn truncation_guard() {
        let d1 = standard_simplex(1, 1);
        assert!(matches!(
            homology(&d1, 1),
            Err(Error::InsufficientTruncation { needed: 2, have: 1 })
        ));
    }

    #[test]
    fn display_forms() {
        assert_eq!(HomologyGroup { free_rank: 1, torsion: vec![] }.to_string(), "Z");
        assert_eq!(HomologyGroup { free_rank: 0, torsion: vec![2] }.to_string(), "Z/2");
        assert_eq!(HomologyGroup { free_rank: 2, torsion: vec![2, 4] }.to_string(), "Z^2+Z/2+Z/4");
        assert_eq!(HomologyGroup::trivial().to_string(), "0");
    }
}
