//! Coproducts and quotients of truncated simplicial sets.
//!
//! Quotients take a finite list of simplex identifications and close it into
//! a simplicial congruence: the toolkit materializes every simplex (the
//! truncation keeps this finite), runs union-find with a worklist that
//! propagates faces and degeneracies of each asserted pair, and rebuilds the
//! quotient in normal form. A class is degenerate exactly when it contains a
//! degenerate member; such classes disappear into degeneracy words.

use std::collections::{HashMap, VecDeque};

use super::{word_compose, word_push, DegenerateRef, SimplicialMap, TruncatedSSet};
use crate::error::{Error, Result};

/// Labeled disjoint union; cell names are prefixed with `{label}.`.
pub fn coproduct_many(
    parts: &[(&str, &TruncatedSSet)],
) -> Result<(TruncatedSSet, Vec<SimplicialMap>)> {
    let Some(first) = parts.first() else {
        return Err(Error::invalid("coproduct of no parts needs a truncation level"));
    };
    let trunc = first.1.trunc_level();
    if parts.iter().any(|(_, x)| x.trunc_level() != trunc) {
        return Err(Error::mismatch("coproduct parts share one truncation level"));
    }
    let mut sum = TruncatedSSet::empty(trunc);
    // offsets[part][dim] = index shift of that part's cells
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
    for (label, x) in parts {
        let mut per_dim = Vec::with_capacity(trunc + 1);
        for dim in 0..=trunc {
            per_dim.push(sum.cell_count(dim));
            for idx in 0..x.cell_count(dim) {
                sum.add_cell(dim, format!("{label}.{}", x.cell_name(dim, idx)))?;
            }
        }
        offsets.push(per_dim);
    }
    for ((_, x), off) in parts.iter().zip(&offsets) {
        for dim in 1..=trunc {
            for idx in 0..x.cell_count(dim) {
                let faces = x
                    .faces_of(dim, idx)
                    .iter()
                    .map(|f| DegenerateRef {
                        base_dim: f.base_dim,
                        base: f.base + off[f.base_dim],
                        word: f.word.clone(),
                    })
                    .collect();
                sum.set_faces(dim, idx + off[dim], faces)?;
            }
        }
    }
    let inclusions = parts
        .iter()
        .zip(&offsets)
        .map(|((_, x), off)| {
            let assign = (0..=trunc)
                .map(|dim| {
                    (0..x.cell_count(dim))
                        .map(|idx| DegenerateRef::nondeg(dim, idx + off[dim]))
                        .collect()
                })
                .collect();
            SimplicialMap::new_unchecked((*x).clone(), sum.clone(), assign)
        })
        .collect();
    Ok((sum, inclusions))
}

/// Binary coproduct with the conventional `l.` / `r.` relabeling.
pub fn coproduct(
    x: &TruncatedSSet,
    y: &TruncatedSSet,
) -> Result<(TruncatedSSet, SimplicialMap, SimplicialMap)> {
    let (sum, mut incl) = coproduct_many(&[("l", x), ("r", y)])?;
    let right = incl.pop().expect("two inclusions");
    let left = incl.pop().expect("two inclusions");
    Ok((sum, left, right))
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub sset: TruncatedSSet,
    /// Projection of the original onto the quotient.
    pub projection: SimplicialMap,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    /// Merges, keeping the smaller id as root; false if already together.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Quotient of `x` by the simplicial congruence generated by `pairs`.
///
/// Each pair identifies two simplices of equal dimension (either may be
/// degenerate). The result is rebuilt in normal form together with the
/// projection map.
pub fn quotient(
    x: &TruncatedSSet,
    pairs: &[(DegenerateRef, DegenerateRef)],
) -> Result<Quotient> {
    let trunc = x.trunc_level();

    // Materialize every simplex up to the truncation and index it globally.
    let mut refs_by_dim: Vec<Vec<DegenerateRef>> = Vec::with_capacity(trunc + 1);
    let mut id_of: Vec<HashMap<DegenerateRef, usize>> = Vec::with_capacity(trunc + 1);
    let mut offset = vec![0usize; trunc + 2];
    for dim in 0..=trunc {
        let refs = x.all_refs(dim);
        let mut map = HashMap::with_capacity(refs.len());
        for (i, r) in refs.iter().enumerate() {
            map.insert(r.clone(), offset[dim] + i);
        }
        offset[dim + 1] = offset[dim] + refs.len();
        refs_by_dim.push(refs);
        id_of.push(map);
    }
    let total = offset[trunc + 1];
    let mut uf = UnionFind::new(total);

    let lookup = |id_of: &Vec<HashMap<DegenerateRef, usize>>, r: &DegenerateRef| -> Result<usize> {
        id_of
            .get(r.dim())
            .and_then(|m| m.get(r).copied())
            .ok_or_else(|| Error::invalid("relation references a simplex outside the complex"))
    };

    let mut work: VecDeque<(DegenerateRef, DegenerateRef)> = VecDeque::new();
    for (a, b) in pairs {
        if a.dim() != b.dim() {
            return Err(Error::mismatch("relation pair of unequal dimensions"));
        }
        lookup(&id_of, a)?;
        lookup(&id_of, b)?;
        work.push_back((a.clone(), b.clone()));
    }

    // Congruence closure: each union propagates the operators of the pair
    // that caused it; transitivity carries the rest.
    while let Some((a, b)) = work.pop_front() {
        let ia = id_of[a.dim()][&a];
        let ib = id_of[b.dim()][&b];
        if !uf.union(ia, ib) {
            continue;
        }
        let dim = a.dim();
        if dim >= 1 {
            for i in 0..=dim {
                work.push_back((x.ref_face(&a, i), x.ref_face(&b, i)));
            }
        }
        if dim < trunc {
            for j in 0..=dim {
                work.push_back((a.degenerated(j), b.degenerated(j)));
            }
        }
    }

    // A class is degenerate when any member carries a degeneracy word.
    let mut root_degenerate = vec![false; total];
    for (dim, refs) in refs_by_dim.iter().enumerate() {
        for (i, r) in refs.iter().enumerate() {
            if r.is_degenerate() {
                let root = uf.find(offset[dim] + i);
                root_degenerate[root] = true;
            }
        }
    }

    // New cells: one per non-degenerate class, named after its first
    // original cell in index order.
    let mut sset = TruncatedSSet::empty(trunc);
    let mut new_cell_of_root: HashMap<usize, (usize, usize)> = HashMap::new();
    for dim in 0..=trunc {
        for idx in 0..x.cell_count(dim) {
            let root = uf.find(id_of[dim][&DegenerateRef::nondeg(dim, idx)]);
            if root_degenerate[root] || new_cell_of_root.contains_key(&root) {
                continue;
            }
            let new_idx = sset.add_cell(dim, x.cell_name(dim, idx))?;
            new_cell_of_root.insert(root, (dim, new_idx));
        }
    }

    // Normal form of each class, bottom-up through a memo table. The
    // minimal degenerate member determines the recursion; Eilenberg-Zilber
    // uniqueness makes the answer independent of that choice.
    let mut min_degenerate_member: HashMap<usize, DegenerateRef> = HashMap::new();
    for (dim, refs) in refs_by_dim.iter().enumerate() {
        for (i, r) in refs.iter().enumerate() {
            if !r.is_degenerate() {
                continue;
            }
            let root = uf.find(offset[dim] + i);
            match min_degenerate_member.get(&root) {
                Some(prev) if prev <= r => {}
                _ => {
                    min_degenerate_member.insert(root, r.clone());
                }
            }
        }
    }
    let mut nf_memo: HashMap<usize, DegenerateRef> = HashMap::new();
    fn class_nf(
        root: usize,
        uf: &mut UnionFind,
        id_of: &[HashMap<DegenerateRef, usize>],
        new_cell_of_root: &HashMap<usize, (usize, usize)>,
        min_degenerate_member: &HashMap<usize, DegenerateRef>,
        memo: &mut HashMap<usize, DegenerateRef>,
    ) -> DegenerateRef {
        if let Some(r) = memo.get(&root) {
            return r.clone();
        }
        let out = if let Some(&(dim, idx)) = new_cell_of_root.get(&root) {
            DegenerateRef::nondeg(dim, idx)
        } else {
            let m = min_degenerate_member
                .get(&root)
                .expect("degenerate class has a degenerate member")
                .clone();
            let j0 = m.word[0];
            let inner_ref = DegenerateRef {
                base_dim: m.base_dim,
                base: m.base,
                word: m.word[1..].to_vec(),
            };
            let inner_root = uf.find(id_of[inner_ref.dim()][&inner_ref]);
            let inner = class_nf(inner_root, uf, id_of, new_cell_of_root, min_degenerate_member, memo);
            DegenerateRef {
                base_dim: inner.base_dim,
                base: inner.base,
                word: word_push(&inner.word, j0),
            }
        };
        memo.insert(root, out.clone());
        out
    }

    let mut assign: Vec<Vec<DegenerateRef>> = Vec::with_capacity(trunc + 1);
    for dim in 0..=trunc {
        let mut row = Vec::with_capacity(x.cell_count(dim));
        for idx in 0..x.cell_count(dim) {
            let root = uf.find(id_of[dim][&DegenerateRef::nondeg(dim, idx)]);
            row.push(class_nf(
                root,
                &mut uf,
                &id_of,
                &new_cell_of_root,
                &min_degenerate_member,
                &mut nf_memo,
            ));
        }
        assign.push(row);
    }

    // Faces in the quotient: push the representative's faces through the
    // projection assignment.
    let apply = |assign: &Vec<Vec<DegenerateRef>>, r: &DegenerateRef| -> DegenerateRef {
        let img = &assign[r.base_dim][r.base];
        if r.word.is_empty() {
            img.clone()
        } else {
            DegenerateRef {
                base_dim: img.base_dim,
                base: img.base,
                word: word_compose(&r.word, &img.word),
            }
        }
    };
    // Representative original cell for each new cell, in new-cell order.
    let mut repr: Vec<Vec<usize>> = vec![Vec::new(); trunc + 1];
    for dim in 0..=trunc {
        repr[dim] = vec![usize::MAX; sset.cell_count(dim)];
        for idx in (0..x.cell_count(dim)).rev() {
            let img = &assign[dim][idx];
            if !img.is_degenerate() {
                repr[dim][img.base] = idx;
            }
        }
    }
    for dim in 1..=trunc {
        for new_idx in 0..sset.cell_count(dim) {
            let orig = repr[dim][new_idx];
            debug_assert_ne!(orig, usize::MAX, "non-degenerate class without member");
            let faces = (0..=dim)
                .map(|i| apply(&assign, x.face(dim, orig, i)))
                .collect();
            sset.set_faces(dim, new_idx, faces)?;
        }
    }

    let projection = SimplicialMap::new_unchecked(x.clone(), sset.clone(), assign);
    debug_assert!(sset.validate().is_empty());
    debug_assert!(projection.validate().is_empty());
    Ok(Quotient { sset, projection })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::{boundary_simplex, standard_simplex};

    #[test]
    fn coproduct_counts_and_inclusions() {
        let a = standard_simplex(1, 2);
        let b = boundary_simplex(2, 2);
        let (sum, l, r) = coproduct(&a, &b).unwrap();
        assert_eq!(sum.cell_count(0), 2 + 3);
        assert_eq!(sum.cell_count(1), 1 + 3);
        assert!(sum.validate().is_empty());
        assert!(l.validate().is_empty());
        assert!(r.validate().is_empty());
        assert_eq!(sum.cell_name(0, 0), "l.0");
        assert_eq!(sum.cell_name(0, 2), "r.0");
    }

    #[test]
    fn coproduct_with_empty_is_relabeled_copy() {
        let a = standard_simplex(2, 2);
        let e = TruncatedSSet::empty(2);
        let (sum, l, _) = coproduct(&a, &e).unwrap();
        assert!(l.is_isomorphism());
        assert_eq!(sum.cell_count(2), 1);
    }

    #[test]
    fn quotient_by_nothing_is_identity() {
        let a = boundary_simplex(2, 2);
        let q = quotient(&a, &[]).unwrap();
        assert_eq!(q.sset, a);
        assert!(q.projection.is_isomorphism());
    }

    #[test]
    fn circle_from_interval() {
        // Gluing the two endpoints of the interval gives one vertex, one edge.
        let d1 = standard_simplex(1, 2);
        let v0 = DegenerateRef::nondeg(0, 0);
        let v1 = DegenerateRef::nondeg(0, 1);
        let q = quotient(&d1, &[(v0, v1)]).unwrap();
        assert_eq!(q.sset.cell_count(0), 1);
        assert_eq!(q.sset.cell_count(1), 1);
        assert!(q.sset.validate().is_empty());
        assert!(q.projection.validate().is_empty());
        let e = q.sset.faces_of(1, 0);
        assert_eq!(e[0], e[1], "loop has equal endpoints");
    }

    #[test]
    fn collapsing_an_edge_kills_it() {
        // e ~ s_0(v0) forces the edge to become degenerate and its endpoints
        // to merge.
        let d1 = standard_simplex(1, 2);
        let e = DegenerateRef::nondeg(1, 0);
        let s0v0 = DegenerateRef { base_dim: 0, base: 0, word: vec![0] };
        let q = quotient(&d1, &[(e, s0v0)]).unwrap();
        assert_eq!(q.sset.cell_count(0), 1);
        assert_eq!(q.sset.cell_count(1), 0);
        let img = q.projection.assignment(1, 0);
        assert!(img.is_degenerate());
    }

    #[test]
    fn sphere_from_boundary_collapse() {
        // Delta_2 with its whole boundary collapsed to a point: one vertex,
        // one non-degenerate 2-cell, no 1-cells.
        let d2 = standard_simplex(2, 2);
        let mut rels = Vec::new();
        // collapse each boundary edge to a degenerate edge at vertex 0
        let s0v0 = DegenerateRef { base_dim: 0, base: 0, word: vec![0] };
        for e in 0..3 {
            rels.push((DegenerateRef::nondeg(1, e), s0v0.clone()));
        }
        let q = quotient(&d2, &rels).unwrap();
        assert_eq!(q.sset.cell_count(0), 1);
        assert_eq!(q.sset.cell_count(1), 0);
        assert_eq!(q.sset.cell_count(2), 1);
        assert!(q.sset.validate().is_empty());
    }
}
