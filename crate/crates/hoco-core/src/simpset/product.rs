//! Binary products of truncated simplicial sets.
//!
//! A k-simplex of X x Y is a pair of k-simplices; it is non-degenerate
//! exactly when the degeneracy words of the two normal forms are disjoint.
//! Cells are therefore pairs of references, and face maps renormalize by
//! extracting the largest shared degeneracy index first.

use std::collections::BTreeMap;

use super::{word_push, DegenerateRef, SimplicialMap, TruncatedSSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Product {
    sset: TruncatedSSet,
    left: TruncatedSSet,
    right: TruncatedSSet,
    proj_left: SimplicialMap,
    proj_right: SimplicialMap,
    pair_index: Vec<BTreeMap<(DegenerateRef, DegenerateRef), usize>>,
    components: Vec<Vec<(DegenerateRef, DegenerateRef)>>,
}

impl Product {
    pub fn sset(&self) -> &TruncatedSSet {
        &self.sset
    }

    pub fn left(&self) -> &TruncatedSSet {
        &self.left
    }

    pub fn right(&self) -> &TruncatedSSet {
        &self.right
    }

    pub fn proj_left(&self) -> &SimplicialMap {
        &self.proj_left
    }

    pub fn proj_right(&self) -> &SimplicialMap {
        &self.proj_right
    }

    /// The two coordinates of a non-degenerate product cell.
    pub fn components(&self, dim: usize, idx: usize) -> &(DegenerateRef, DegenerateRef) {
        &self.components[dim][idx]
    }

    /// Normal form in the product of a coordinate pair of equal dimension.
    pub fn pair_ref(&self, a: &DegenerateRef, b: &DegenerateRef) -> Result<DegenerateRef> {
        if a.dim() != b.dim() {
            return Err(Error::mismatch("pair coordinates of unequal dimension"));
        }
        if a.dim() > self.sset.trunc_level() {
            return Err(Error::InsufficientTruncation {
                needed: a.dim(),
                have: self.sset.trunc_level(),
            });
        }
        Ok(self.normalize(a.clone(), b.clone()))
    }

    fn normalize(&self, a: DegenerateRef, b: DegenerateRef) -> DegenerateRef {
        // Largest degeneracy index shared by both words, if any.
        let common = a
            .word
            .iter()
            .filter(|j| b.word.contains(j))
            .max()
            .copied();
        match common {
            None => {
                let dim = a.dim();
                let idx = *self.pair_index[dim]
                    .get(&(a, b))
                    .expect("disjoint-word pair must be a product cell");
                DegenerateRef::nondeg(dim, idx)
            }
            Some(c) => {
                // (a, b) = s_c (d_c a, d_c b); recurse on the lower pair.
                let a1 = self.left.ref_face(&a, c);
                let b1 = self.right.ref_face(&b, c);
                let inner = self.normalize(a1, b1);
                DegenerateRef {
                    base_dim: inner.base_dim,
                    base: inner.base,
                    word: word_push(&inner.word, c),
                }
            }
        }
    }
}

/// Product of two simplicial sets sharing a truncation level.
pub fn product(x: &TruncatedSSet, y: &TruncatedSSet) -> Result<Product> {
    if x.trunc_level() != y.trunc_level() {
        return Err(Error::mismatch(format!(
            "product factors truncated at {} and {}",
            x.trunc_level(),
            y.trunc_level()
        )));
    }
    let trunc = x.trunc_level();
    let mut sset = TruncatedSSet::empty(trunc);
    let mut pair_index: Vec<BTreeMap<(DegenerateRef, DegenerateRef), usize>> =
        vec![BTreeMap::new(); trunc + 1];
    let mut components: Vec<Vec<(DegenerateRef, DegenerateRef)>> = vec![Vec::new(); trunc + 1];

    for dim in 0..=trunc {
        let refs_x = x.all_refs(dim);
        let refs_y = y.all_refs(dim);
        for ra in &refs_x {
            for rb in &refs_y {
                if ra.word.iter().any(|j| rb.word.contains(j)) {
                    continue;
                }
                let name = format!("({})*({})", x.ref_display(ra), y.ref_display(rb));
                let idx = sset.add_cell(dim, name)?;
                pair_index[dim].insert((ra.clone(), rb.clone()), idx);
                components[dim].push((ra.clone(), rb.clone()));
            }
        }
    }

    let mut prod = Product {
        sset,
        left: x.clone(),
        right: y.clone(),
        // placeholder projections, replaced below once faces exist
        proj_left: SimplicialMap::identity(&TruncatedSSet::empty(trunc)),
        proj_right: SimplicialMap::identity(&TruncatedSSet::empty(trunc)),
        pair_index,
        components,
    };

    for dim in 1..=trunc {
        for idx in 0..prod.components[dim].len() {
            let (ra, rb) = prod.components[dim][idx].clone();
            let mut faces = Vec::with_capacity(dim + 1);
            for i in 0..=dim {
                let fa = x.ref_face(&ra, i);
                let fb = y.ref_face(&rb, i);
                faces.push(prod.normalize(fa, fb));
            }
            prod.sset.set_faces(dim, idx, faces)?;
        }
    }

    let mut left_assign: Vec<Vec<DegenerateRef>> = Vec::with_capacity(trunc + 1);
    let mut right_assign: Vec<Vec<DegenerateRef>> = Vec::with_capacity(trunc + 1);
    for dim in 0..=trunc {
        let mut l = Vec::with_capacity(prod.components[dim].len());
        let mut r = Vec::with_capacity(prod.components[dim].len());
        for (ra, rb) in &prod.components[dim] {
            l.push(ra.clone());
            r.push(rb.clone());
        }
        left_assign.push(l);
        right_assign.push(r);
    }
    prod.proj_left = SimplicialMap::new_unchecked(prod.sset.clone(), x.clone(), left_assign);
    prod.proj_right = SimplicialMap::new_unchecked(prod.sset.clone(), y.clone(), right_assign);
    debug_assert!(prod.proj_left.validate().is_empty());
    debug_assert!(prod.proj_right.validate().is_empty());
    Ok(prod)
}

/// The product of two maps, between prebuilt products of their sources and
/// targets.
pub fn product_map(
    f: &SimplicialMap,
    g: &SimplicialMap,
    src: &Product,
    tgt: &Product,
) -> Result<SimplicialMap> {
    if f.source() != &src.left || g.source() != &src.right {
        return Err(Error::mismatch("product_map: source product factors"));
    }
    if f.target() != &tgt.left || g.target() != &tgt.right {
        return Err(Error::mismatch("product_map: target product factors"));
    }
    let trunc = src.sset.trunc_level();
    let mut assign: Vec<Vec<DegenerateRef>> = Vec::with_capacity(trunc + 1);
    for dim in 0..=trunc {
        let mut row = Vec::with_capacity(src.components[dim].len());
        for (ra, rb) in &src.components[dim] {
            row.push(tgt.pair_ref(&f.apply(ra), &g.apply(rb))?);
        }
        assign.push(row);
    }
    let out = SimplicialMap::new_unchecked(src.sset.clone(), tgt.sset.clone(), assign);
    debug_assert!(out.validate().is_empty());
    Ok(out)
}

/// The map `<f, g>` into a product from a common source.
pub fn pairing(f: &SimplicialMap, g: &SimplicialMap, tgt: &Product) -> Result<SimplicialMap> {
    if f.source() != g.source() {
        return Err(Error::mismatch("pairing: components have different sources"));
    }
    if f.target() != &tgt.left || g.target() != &tgt.right {
        return Err(Error::mismatch("pairing: targets are not the product factors"));
    }
    let z = f.source();
    let mut assign: Vec<Vec<DegenerateRef>> = Vec::with_capacity(z.trunc_level() + 1);
    for dim in 0..=z.trunc_level() {
        let mut row = Vec::with_capacity(z.cell_count(dim));
        for idx in 0..z.cell_count(dim) {
            let c = DegenerateRef::nondeg(dim, idx);
            row.push(tgt.pair_ref(&f.apply(&c), &g.apply(&c))?);
        }
        assign.push(row);
    }
    let out = SimplicialMap::new_unchecked(z.clone(), tgt.sset.clone(), assign);
    debug_assert!(out.validate().is_empty());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::standard_simplex;

    #[test]
    fn square_cell_counts() {
        // The square: 4 vertices, 4 sides plus the diagonal, 2 triangles.
        let d1 = standard_simplex(1, 2);
        let p = product(&d1, &d1).unwrap();
        assert_eq!(p.sset().cell_count(0), 4);
        assert_eq!(p.sset().cell_count(1), 5);
        assert_eq!(p.sset().cell_count(2), 2);
        assert!(p.sset().validate().is_empty());
        assert!(p.proj_left().validate().is_empty());
        assert!(p.proj_right().validate().is_empty());
    }

    #[test]
    fn unit_factor_gives_isomorphic_copy() {
        let d2 = standard_simplex(2, 3);
        let pt = standard_simplex(0, 3);
        let p = product(&d2, &pt).unwrap();
        for dim in 0..=3 {
            assert_eq!(p.sset().cell_count(dim), d2.cell_count(dim));
        }
        assert!(p.proj_left().is_isomorphism());
    }

    #[test]
    fn pairing_of_projections_is_identity_shape() {
        let d1 = standard_simplex(1, 2);
        let p = product(&d1, &d1).unwrap();
        let again = pairing(p.proj_left(), p.proj_right(), &p).unwrap();
        assert!(again.is_isomorphism());
        for dim in 0..=2 {
            for idx in 0..p.sset().cell_count(dim) {
                assert_eq!(again.assignment(dim, idx), &DegenerateRef::nondeg(dim, idx));
            }
        }
    }

    #[test]
    fn diagonal_pairing_lands_on_the_diagonal() {
        let d1 = standard_simplex(1, 2);
        let p = product(&d1, &d1).unwrap();
        let id = SimplicialMap::identity(&d1);
        let diag = pairing(&id, &id, &p).unwrap();
        // the edge goes to the non-degenerate diagonal edge (e, e)
        let img = diag.assignment(1, 0);
        assert!(!img.is_degenerate());
        let (a, b) = p.components(1, img.base).clone();
        assert_eq!(a, DegenerateRef::nondeg(1, 0));
        assert_eq!(b, DegenerateRef::nondeg(1, 0));
    }
}
