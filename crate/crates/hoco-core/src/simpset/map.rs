//! Simplicial maps between truncated simplicial sets.
//!
//! A map is stored by its action on non-degenerate cells; the action on all
//! simplices follows by pushing degeneracy words through, so compatibility
//! with degeneracies is automatic and only face compatibility needs data.

use super::{word_compose, DegenerateRef, TruncatedSSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    source: TruncatedSSet,
    target: TruncatedSSet,
    /// assign[dim][cell] is the image of the non-degenerate cell.
    assign: Vec<Vec<DegenerateRef>>,
}

impl SimplicialMap {
    pub fn new(
        source: TruncatedSSet,
        target: TruncatedSSet,
        assign: Vec<Vec<DegenerateRef>>,
    ) -> Result<Self> {
        let m = SimplicialMap { source, target, assign };
        let report = m.validate();
        if report.is_empty() {
            Ok(m)
        } else {
            Err(Error::invalid(format!("not simplicial: {}", report.join("; "))))
        }
    }

    /// Constructs without the face-compatibility check; callers must either
    /// hold a proof by construction or validate afterwards.
    pub fn new_unchecked(
        source: TruncatedSSet,
        target: TruncatedSSet,
        assign: Vec<Vec<DegenerateRef>>,
    ) -> Self {
        SimplicialMap { source, target, assign }
    }

    pub fn identity(x: &TruncatedSSet) -> Self {
        let assign = (0..=x.trunc_level())
            .map(|dim| (0..x.cell_count(dim)).map(|i| DegenerateRef::nondeg(dim, i)).collect())
            .collect();
        SimplicialMap { source: x.clone(), target: x.clone(), assign }
    }

    pub fn source(&self) -> &TruncatedSSet {
        &self.source
    }

    pub fn target(&self) -> &TruncatedSSet {
        &self.target
    }

    pub fn assignment(&self, dim: usize, idx: usize) -> &DegenerateRef {
        &self.assign[dim][idx]
    }

    pub fn assignments(&self) -> &[Vec<DegenerateRef>] {
        &self.assign
    }

    /// Image of an arbitrary simplex: image of the base with the degeneracy
    /// word composed on the outside.
    pub fn apply(&self, r: &DegenerateRef) -> DegenerateRef {
        let img = &self.assign[r.base_dim][r.base];
        if r.word.is_empty() {
            return img.clone();
        }
        DegenerateRef {
            base_dim: img.base_dim,
            base: img.base,
            word: word_compose(&r.word, &img.word),
        }
    }

    /// `self ∘ other`, defined when `other` lands in the source of `self`.
    pub fn compose(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if other.target != self.source {
            return Err(Error::mismatch("composition: inner target differs from outer source"));
        }
        let assign = other
            .assign
            .iter()
            .map(|row| row.iter().map(|r| self.apply(r)).collect())
            .collect();
        Ok(SimplicialMap {
            source: other.source.clone(),
            target: self.target.clone(),
            assign,
        })
    }

    /// Face-compatibility report; empty means the data is a simplicial map.
    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        if self.assign.len() != self.source.trunc_level() + 1 {
            bad.push("assignment table has wrong number of dimensions".to_string());
            return bad;
        }
        if self.source.trunc_level() != self.target.trunc_level() {
            bad.push(format!(
                "truncation mismatch: source {}, target {}",
                self.source.trunc_level(),
                self.target.trunc_level()
            ));
            return bad;
        }
        for dim in 0..=self.source.trunc_level() {
            if self.assign[dim].len() != self.source.cell_count(dim) {
                bad.push(format!("dimension {dim}: assignment count mismatch"));
                return bad;
            }
            for (idx, img) in self.assign[dim].iter().enumerate() {
                if img.dim() != dim
                    || img.base_dim > self.target.trunc_level()
                    || img.base >= self.target.cell_count(img.base_dim)
                {
                    bad.push(format!(
                        "dimension {dim} cell {}: image out of range",
                        self.source.cell_name(dim, idx)
                    ));
                }
            }
        }
        if !bad.is_empty() {
            return bad;
        }
        for dim in 1..=self.source.trunc_level() {
            let checks = crate::exec::map_range(self.source.cell_count(dim), |idx| {
                let mut local = Vec::new();
                let cell = DegenerateRef::nondeg(dim, idx);
                let img = &self.assign[dim][idx];
                for i in 0..=dim {
                    let lhs = self.apply(&self.source.ref_face(&cell, i));
                    let rhs = self.target.ref_face(img, i);
                    if lhs != rhs {
                        local.push(format!(
                            "cell {} (dim {dim}): face {i} not preserved",
                            self.source.cell_name(dim, idx)
                        ));
                    }
                }
                local
            });
            bad.extend(checks.into_iter().flatten());
        }
        bad
    }

    /// True when the map is a strict isomorphism: a dimensionwise bijection
    /// of non-degenerate cells commuting with faces.
    pub fn is_isomorphism(&self) -> bool {
        for dim in 0..=self.source.trunc_level() {
            if self.source.cell_count(dim) != self.target.cell_count(dim) {
                return false;
            }
            let mut seen = vec![false; self.target.cell_count(dim)];
            for img in &self.assign[dim] {
                if img.is_degenerate() || seen[img.base] {
                    return false;
                }
                seen[img.base] = true;
            }
        }
        self.validate().is_empty()
    }
}

/// The map collapsing every simplex of `source` onto the iterated degeneracy
/// of one chosen vertex of `target`. Truncation levels must agree.
pub fn constant_map(
    source: &TruncatedSSet,
    target: &TruncatedSSet,
    vertex: usize,
) -> Result<SimplicialMap> {
    if vertex >= target.cell_count(0) {
        return Err(Error::invalid(format!("constant map: vertex {vertex} out of range")));
    }
    let assign = (0..=source.trunc_level())
        .map(|dim| {
            let word: Vec<usize> = (0..dim).rev().collect();
            (0..source.cell_count(dim))
                .map(|_| DegenerateRef { base_dim: 0, base: vertex, word: word.clone() })
                .collect()
        })
        .collect();
    SimplicialMap::new(source.clone(), target.clone(), assign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::{standard_simplex, simplex_vertex_map};

    #[test]
    fn identity_and_compose() {
        let d2 = standard_simplex(2, 2);
        let id = SimplicialMap::identity(&d2);
        assert!(id.validate().is_empty());
        assert!(id.is_isomorphism());
        let idid = id.compose(&id).unwrap();
        assert_eq!(idid, id);
    }

    #[test]
    fn apply_pushes_words() {
        let d2 = standard_simplex(2, 2);
        let d1 = standard_simplex(1, 2);
        let f = simplex_vertex_map(&d1, &d2, 1, &[0, 2]).unwrap();
        let e = DegenerateRef::nondeg(1, 0);
        let im = f.apply(&e.degenerated(0));
        assert_eq!(im.word, vec![0]);
        assert_eq!(im.base_dim, 1);
        assert_eq!(d2.cell_name(1, im.base), "0.2");
    }

    #[test]
    fn constant_map_collapses_everything() {
        let d2 = standard_simplex(2, 2);
        let pt = standard_simplex(0, 2);
        let f = constant_map(&d2, &pt, 0).unwrap();
        let top = f.assignment(2, 0);
        assert_eq!(top.base_dim, 0);
        assert_eq!(top.word, vec![1, 0]);
        assert!(constant_map(&d2, &pt, 1).is_err());
    }

    #[test]
    fn validation_rejects_face_breakage() {
        let d1 = standard_simplex(1, 1);
        // send the edge somewhere its endpoints do not follow
        let v0 = DegenerateRef::nondeg(0, 0);
        let assign = vec![vec![v0.clone(), v0.clone()], vec![DegenerateRef::nondeg(1, 0)]];
        // endpoints both to vertex 0 but edge to the whole edge: face 0 breaks
        assert!(SimplicialMap::new(d1.clone(), d1, assign).is_err());
    }
}
