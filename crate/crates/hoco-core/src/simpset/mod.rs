//! Finite truncated simplicial sets.
//!
//! A value stores only non-degenerate cells; every simplex is addressed by a
//! [`DegenerateRef`], the normal form `s_{j_1} .. s_{j_r} (base)` with a
//! strictly decreasing degeneracy word. The simplicial operator algebra
//! (pushing faces and degeneracies through words) lives here; products,
//! quotients, homology, and homotopy invariants build on it in submodules.

pub mod colim;
pub mod group;
pub mod homology;
pub mod map;
pub mod pi;
pub mod product;

pub use colim::{coproduct, coproduct_many, quotient, Quotient};
pub use group::GroupPresentation;
pub use homology::{boundary_matrix, homology, HomologyGroup};
pub use map::{constant_map, SimplicialMap};
pub use pi::{pi0, pi1_presentation, Pi0};
pub use product::{pairing, product, product_map, Product};

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Normal form of a possibly degenerate simplex: the degeneracy word (indices
/// strictly decreasing) applied to a non-degenerate cell of `base_dim`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegenerateRef {
    pub base_dim: usize,
    pub base: usize,
    pub word: Vec<usize>,
}

impl DegenerateRef {
    pub fn nondeg(base_dim: usize, base: usize) -> Self {
        DegenerateRef { base_dim, base, word: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.base_dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// `s_j` applied to this simplex, renormalized.
    pub fn degenerated(&self, j: usize) -> Self {
        debug_assert!(j <= self.dim());
        DegenerateRef {
            base_dim: self.base_dim,
            base: self.base,
            word: word_push(&self.word, j),
        }
    }
}

/// `s_c` composed onto the normal word `w`, renormalized by the identity
/// `s_c s_i = s_{i+1} s_c` for `c <= i`.
pub fn word_push(w: &[usize], c: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(w.len() + 1);
    let mut rest = w;
    while let Some(&head) = rest.first() {
        if c <= head {
            out.push(head + 1);
            rest = &rest[1..];
        } else {
            break;
        }
    }
    out.push(c);
    out.extend_from_slice(rest);
    out
}

/// `s_outer ∘ s_inner` as one normal word (outer applied last).
pub fn word_compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    let mut w = inner.to_vec();
    for &c in outer.iter().rev() {
        w = word_push(&w, c);
    }
    w
}

pub fn word_is_normal(w: &[usize]) -> bool {
    w.windows(2).all(|p| p[0] > p[1])
}

/// Simplicial set with cells only up to `trunc` dimensions.
///
/// Cells are indexed per dimension in insertion order; names are unique per
/// dimension and used for display, serialization, and deterministic output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSSet {
    trunc: usize,
    names: Vec<Vec<String>>,
    index: Vec<BTreeMap<String, usize>>,
    /// faces[k][cell] lists the k+1 face refs; empty until set.
    faces: Vec<Vec<Vec<DegenerateRef>>>,
}

impl TruncatedSSet {
    pub fn empty(trunc: usize) -> Self {
        TruncatedSSet {
            trunc,
            names: vec![Vec::new(); trunc + 1],
            index: vec![BTreeMap::new(); trunc + 1],
            faces: vec![Vec::new(); trunc + 1],
        }
    }

    /// One vertex per name, nothing above dimension zero.
    pub fn discrete<S: AsRef<str>>(names: &[S], trunc: usize) -> Result<Self> {
        let mut x = TruncatedSSet::empty(trunc);
        for n in names {
            x.add_cell(0, n.as_ref())?;
        }
        Ok(x)
    }

    pub fn trunc_level(&self) -> usize {
        self.trunc
    }

    pub fn cell_count(&self, dim: usize) -> usize {
        if dim > self.trunc {
            0
        } else {
            self.names[dim].len()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.names.iter().all(|v| v.is_empty())
    }

    pub fn cell_name(&self, dim: usize, idx: usize) -> &str {
        &self.names[dim][idx]
    }

    pub fn cell_index(&self, dim: usize, name: &str) -> Option<usize> {
        if dim > self.trunc {
            return None;
        }
        self.index[dim].get(name).copied()
    }

    pub fn add_cell(&mut self, dim: usize, name: impl Into<String>) -> Result<usize> {
        let name = name.into();
        if dim > self.trunc {
            return Err(Error::invalid(format!(
                "cell {name} has dimension {dim} above truncation {}",
                self.trunc
            )));
        }
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::invalid(format!("cell name {name:?} must be nonempty, no whitespace")));
        }
        if self.index[dim].contains_key(&name) {
            return Err(Error::invalid(format!("duplicate cell name {name} in dimension {dim}")));
        }
        let idx = self.names[dim].len();
        self.index[dim].insert(name.clone(), idx);
        self.names[dim].push(name);
        self.faces[dim].push(Vec::new());
        Ok(idx)
    }

    pub fn set_faces(&mut self, dim: usize, idx: usize, faces: Vec<DegenerateRef>) -> Result<()> {
        if dim == 0 {
            return Err(Error::invalid("vertices have no faces"));
        }
        if dim > self.trunc || idx >= self.cell_count(dim) {
            return Err(Error::invalid("set_faces target out of range"));
        }
        if faces.len() != dim + 1 {
            return Err(Error::invalid(format!(
                "cell of dimension {dim} needs {} faces, got {}",
                dim + 1,
                faces.len()
            )));
        }
        for f in &faces {
            self.check_ref(f, dim - 1)?;
        }
        self.faces[dim][idx] = faces;
        Ok(())
    }

    fn check_ref(&self, r: &DegenerateRef, expect_dim: usize) -> Result<()> {
        if r.dim() != expect_dim {
            return Err(Error::invalid(format!(
                "reference has dimension {}, expected {expect_dim}",
                r.dim()
            )));
        }
        if !word_is_normal(&r.word) {
            return Err(Error::invalid("degeneracy word not strictly decreasing"));
        }
        if let Some(&top) = r.word.first() {
            if top + 1 > expect_dim {
                return Err(Error::invalid("degeneracy index out of range for dimension"));
            }
        }
        if r.base_dim > self.trunc || r.base >= self.cell_count(r.base_dim) {
            return Err(Error::invalid("reference base out of range"));
        }
        Ok(())
    }

    pub fn face(&self, dim: usize, idx: usize, i: usize) -> &DegenerateRef {
        &self.faces[dim][idx][i]
    }

    pub fn faces_of(&self, dim: usize, idx: usize) -> &[DegenerateRef] {
        &self.faces[dim][idx]
    }

    /// `d_i` applied to an arbitrary simplex, via the operator identities
    /// `d_i s_j = s_{j-1} d_i` (i < j), `= id` (i = j, j+1), `= s_j d_{i-1}`
    /// (i > j+1), bottoming out in the face table.
    pub fn ref_face(&self, r: &DegenerateRef, i: usize) -> DegenerateRef {
        debug_assert!(r.dim() >= 1 && i <= r.dim());
        let mut prefix: Vec<usize> = Vec::new();
        let mut i = i;
        let mut rest: &[usize] = &r.word;
        loop {
            match rest.first() {
                Some(&w) => {
                    if i < w {
                        prefix.push(w - 1);
                        rest = &rest[1..];
                    } else if i == w || i == w + 1 {
                        let mut word = rest[1..].to_vec();
                        for &p in prefix.iter().rev() {
                            word = word_push(&word, p);
                        }
                        return DegenerateRef { base_dim: r.base_dim, base: r.base, word };
                    } else {
                        prefix.push(w);
                        i -= 1;
                        rest = &rest[1..];
                    }
                }
                None => {
                    let f = self.face(r.base_dim, r.base, i).clone();
                    let mut word = f.word;
                    for &p in prefix.iter().rev() {
                        word = word_push(&word, p);
                    }
                    return DegenerateRef { base_dim: f.base_dim, base: f.base, word };
                }
            }
        }
    }

    /// Vertex `j` of a simplex, as a vertex cell index.
    pub fn ref_vertex(&self, r: &DegenerateRef, j: usize) -> usize {
        let mut r = r.clone();
        let dim = r.dim();
        debug_assert!(j <= dim);
        for i in ((j + 1)..=dim).rev() {
            r = self.ref_face(&r, i);
        }
        for _ in 0..j {
            r = self.ref_face(&r, 0);
        }
        debug_assert!(r.word.is_empty() && r.base_dim == 0);
        r.base
    }

    /// Every simplex of the given dimension (degenerate ones included), in a
    /// deterministic order: by base dimension, base index, then word.
    pub fn all_refs(&self, dim: usize) -> Vec<DegenerateRef> {
        let mut out = Vec::new();
        for base_dim in 0..=dim.min(self.trunc) {
            let len = dim - base_dim;
            if base_dim + len != dim {
                continue;
            }
            let words = decreasing_words(dim, len);
            for base in 0..self.cell_count(base_dim) {
                for w in &words {
                    out.push(DegenerateRef { base_dim, base, word: w.clone() });
                }
            }
        }
        out
    }

    /// Printable form of a reference: cell name with degeneracy suffixes.
    pub fn ref_display(&self, r: &DegenerateRef) -> String {
        let mut s = self.names[r.base_dim][r.base].clone();
        for j in &r.word {
            s.push('\'');
            s.push_str(&j.to_string());
        }
        s
    }

    /// Structural well-formedness report; empty result means valid.
    ///
    /// Checks: faces present and in range with normal words, and the
    /// simplicial identity d_i d_j = d_{j-1} d_i (i < j) on every cell.
    pub fn validate(&self) -> Vec<String> {
        let mut bad: Vec<String> = Vec::new();
        for dim in 1..=self.trunc {
            for idx in 0..self.cell_count(dim) {
                let fs = &self.faces[dim][idx];
                if fs.len() != dim + 1 {
                    bad.push(format!(
                        "cell {} (dim {dim}) has {} faces, needs {}",
                        self.names[dim][idx],
                        fs.len(),
                        dim + 1
                    ));
                    continue;
                }
                for (i, f) in fs.iter().enumerate() {
                    if let Err(e) = self.check_ref(f, dim - 1) {
                        bad.push(format!(
                            "cell {} (dim {dim}) face {i}: {e}",
                            self.names[dim][idx]
                        ));
                    }
                }
            }
        }
        if !bad.is_empty() {
            return bad; // identities need well-formed faces first
        }
        for dim in 2..=self.trunc {
            let checks = crate::exec::map_range(self.cell_count(dim), |idx| {
                let mut local = Vec::new();
                let cell = DegenerateRef::nondeg(dim, idx);
                for j in 1..=dim {
                    for i in 0..j {
                        let a = self.ref_face(&self.ref_face(&cell, j), i);
                        let b = self.ref_face(&self.ref_face(&cell, i), j - 1);
                        if a != b {
                            local.push(format!(
                                "cell {} (dim {dim}): d_{i} d_{j} != d_{} d_{i}",
                                self.names[dim][idx],
                                j - 1
                            ));
                        }
                    }
                }
                local
            });
            bad.extend(checks.into_iter().flatten());
        }
        bad
    }

    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        if report.is_empty() {
            Ok(self)
        } else {
            Err(Error::invalid(report.join("; ")))
        }
    }
}

/// All strictly decreasing words of length `len` with entries below `dim`.
/// Ordered lexicographically on the decreasing representation.
fn decreasing_words(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, len: usize, max_next: usize) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let remaining = len - cur.len();
        // Highest candidate first keeps the order stable and bounded below.
        let mut c = max_next;
        loop {
            if c + 1 >= remaining {
                cur.push(c);
                rec(out, cur, len, c.wrapping_sub(1));
                cur.pop();
            }
            if c == 0 {
                break;
            }
            c -= 1;
        }
    }
    if len == 0 {
        out.push(Vec::new());
        return out;
    }
    if dim == 0 {
        return out;
    }
    rec(&mut out, &mut cur, len, dim - 1);
    out
}

/// The standard n-simplex, truncated. Cells in dimension k are the
/// increasing (k+1)-subsets of vertices, named by dot-joined vertex labels.
pub fn standard_simplex(n: usize, trunc: usize) -> TruncatedSSet {
    simplex_like(n, trunc, false)
}

/// The boundary of the n-simplex (all proper faces). For n = 0 this is the
/// empty simplicial set.
pub fn boundary_simplex(n: usize, trunc: usize) -> TruncatedSSet {
    if n == 0 {
        return TruncatedSSet::empty(trunc);
    }
    simplex_like(n, trunc, true)
}

fn simplex_like(n: usize, trunc: usize, proper_only: bool) -> TruncatedSSet {
    let mut x = TruncatedSSet::empty(trunc);
    let top = if proper_only { n.saturating_sub(1) } else { n };
    for k in 0..=top.min(trunc) {
        for subset in increasing_subsets(n + 1, k + 1) {
            x.add_cell(k, subset_name(&subset)).expect("fresh simplex cell");
        }
    }
    for k in 1..=top.min(trunc) {
        for idx in 0..x.cell_count(k) {
            let name = x.cell_name(k, idx).to_string();
            let subset = parse_subset(&name);
            let mut faces = Vec::with_capacity(k + 1);
            for i in 0..=k {
                let mut sub = subset.clone();
                sub.remove(i);
                let base = x.cell_index(k - 1, &subset_name(&sub)).expect("face subset present");
                faces.push(DegenerateRef::nondeg(k - 1, base));
            }
            x.set_faces(k, idx, faces).expect("simplex faces well formed");
        }
    }
    x
}

fn subset_name(s: &[usize]) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
}

fn parse_subset(name: &str) -> Vec<usize> {
    name.split('.').map(|p| p.parse().expect("subset label")).collect()
}

/// Increasing k-subsets of 0..n, lexicographic.
fn increasing_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, n: usize, k: usize, from: usize) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in from..n {
            if n - v >= k - cur.len() {
                cur.push(v);
                rec(out, cur, n, k, v + 1);
                cur.pop();
            }
        }
    }
    rec(&mut out, &mut cur, n, k, 0);
    out
}

/// Monotone vertex map between standard simplices, as a simplicial map.
/// `phi[v]` is the image vertex; repeats become degeneracies.
pub fn simplex_vertex_map(
    source: &TruncatedSSet,
    target: &TruncatedSSet,
    src_n: usize,
    phi: &[usize],
) -> Result<SimplicialMap> {
    if phi.len() != src_n + 1 {
        return Err(Error::mismatch("vertex map length"));
    }
    if phi.windows(2).any(|p| p[0] > p[1]) {
        return Err(Error::invalid("vertex map must be monotone"));
    }
    let mut assign: Vec<Vec<DegenerateRef>> = Vec::new();
    for dim in 0..=source.trunc_level() {
        let mut row = Vec::with_capacity(source.cell_count(dim));
        for idx in 0..source.cell_count(dim) {
            let subset = parse_subset(source.cell_name(dim, idx));
            let image: Vec<usize> = subset.iter().map(|&v| phi[v]).collect();
            row.push(monotone_tuple_ref(target, &image)?);
        }
        assign.push(row);
    }
    SimplicialMap::new(source.clone(), target.clone(), assign)
}

/// Normal form of a weakly increasing vertex tuple inside a standard-simplex
/// style complex (cells named by dot-joined vertex subsets). Useful for
/// assembling maps into a standard simplex from vertex data alone, where a
/// cell is determined by its vertices.
pub fn monotone_tuple_ref(target: &TruncatedSSet, tuple: &[usize]) -> Result<DegenerateRef> {
    let mut word: Vec<usize> = Vec::new();
    for j in (0..tuple.len() - 1).rev() {
        if tuple[j] == tuple[j + 1] {
            word.push(j);
        }
    }
    word.sort_unstable_by(|a, b| b.cmp(a));
    let mut dedup: Vec<usize> = tuple.to_vec();
    dedup.dedup();
    let base_dim = dedup.len() - 1;
    let base = target
        .cell_index(base_dim, &subset_name(&dedup))
        .ok_or_else(|| Error::invalid("image subset missing in target simplex"))?;
    Ok(DegenerateRef { base_dim, base, word })
}

/// The same cells with the simplicial structure read backwards: face `i` in
/// degree `q` becomes face `q - i`, and the degeneracy `s_j` out of degree
/// `m` becomes `s_{m-j}`.
///
/// Reversal is an involution that sends the nerve of a category to the nerve
/// of its opposite while keeping every cell and its name. It is not a
/// simplicial map, but it preserves all certified invariants: components are
/// untouched, the normalized boundary in degree `q` conjugates to `(-1)^q`
/// times itself, and the fundamental group reverses words, which is an
/// anti-isomorphism.
pub fn reverse(x: &TruncatedSSet) -> Result<TruncatedSSet> {
    let mut out = TruncatedSSet::empty(x.trunc_level());
    for dim in 0..=x.trunc_level() {
        for idx in 0..x.cell_count(dim) {
            out.add_cell(dim, x.cell_name(dim, idx))?;
        }
    }
    for dim in 1..=x.trunc_level() {
        for idx in 0..x.cell_count(dim) {
            let faces = (0..=dim).map(|i| reverse_ref(x.face(dim, idx, dim - i))).collect();
            out.set_faces(dim, idx, faces)?;
        }
    }
    out.validated()
}

/// Normal form of a reference under reversal: the letter `s_c` applied out
/// of dimension `m` becomes `s_{m-c}`, innermost letters first.
fn reverse_ref(r: &DegenerateRef) -> DegenerateRef {
    let len = r.word.len();
    let mut word: Vec<usize> = Vec::with_capacity(len);
    for (i, &c) in r.word.iter().enumerate().rev() {
        let m = r.base_dim + (len - 1 - i);
        word = word_push(&word, m - c);
    }
    DegenerateRef { base_dim: r.base_dim, base: r.base, word }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_push_normalizes() {
        assert_eq!(word_push(&[0], 0), vec![1, 0]);
        assert_eq!(word_push(&[2, 0], 2), vec![3, 2, 0]);
        assert_eq!(word_push(&[3, 0], 1), vec![4, 1, 0]);
        assert_eq!(word_push(&[], 5), vec![5]);
        assert!(word_is_normal(&word_push(&[4, 2, 1], 2)));
    }

    #[test]
    fn word_compose_matches_sequential_push() {
        let inner = vec![2, 0];
        let outer = vec![1, 0];
        let composed = word_compose(&outer, &inner);
        let mut seq = inner.clone();
        seq = word_push(&seq, 0);
        seq = word_push(&seq, 1);
        assert_eq!(composed, seq);
        assert!(word_is_normal(&composed));
    }

    #[test]
    fn standard_simplex_counts() {
        let d3 = standard_simplex(3, 2);
        assert_eq!(d3.cell_count(0), 4);
        assert_eq!(d3.cell_count(1), 6);
        assert_eq!(d3.cell_count(2), 4);
        assert!(d3.validate().is_empty());

        let d1 = standard_simplex(1, 3);
        assert_eq!(d1.cell_count(0), 2);
        assert_eq!(d1.cell_count(1), 1);
        assert_eq!(d1.cell_count(2), 0);
    }

    #[test]
    fn boundary_simplex_counts() {
        let b2 = boundary_simplex(2, 2);
        assert_eq!(b2.cell_count(0), 3);
        assert_eq!(b2.cell_count(1), 3);
        assert_eq!(b2.cell_count(2), 0);
        assert!(b2.validate().is_empty());

        let b0 = boundary_simplex(0, 2);
        assert!(b0.is_empty());

        let b1 = boundary_simplex(1, 1);
        assert_eq!(b1.cell_count(0), 2);
        assert_eq!(b1.cell_count(1), 0);
    }

    #[test]
    fn ref_face_kills_matching_degeneracy() {
        let d1 = standard_simplex(1, 3);
        let e = DegenerateRef::nondeg(1, 0);
        let s0e = e.degenerated(0); // dim 2
        assert_eq!(d1.ref_face(&s0e, 0), e);
        assert_eq!(d1.ref_face(&s0e, 1), e);
        // d_2 s_0 e = s_0 d_1 e = s_0 (vertex 0)
        let v0 = d1.cell_index(0, "0").unwrap();
        assert_eq!(
            d1.ref_face(&s0e, 2),
            DegenerateRef { base_dim: 0, base: v0, word: vec![0] }
        );
    }

    #[test]
    fn vertices_of_refs() {
        let d2 = standard_simplex(2, 2);
        let t = DegenerateRef::nondeg(2, 0); // cell 0.1.2
        let names: Vec<&str> = (0..=2).map(|j| d2.cell_name(0, d2.ref_vertex(&t, j))).collect();
        assert_eq!(names, vec!["0", "1", "2"]);
        // s_0 of edge 0.1 has vertex sequence 0,0,1
        let e = d2.cell_index(1, "0.1").unwrap();
        let r = DegenerateRef::nondeg(1, e).degenerated(0);
        let seq: Vec<&str> = (0..=2).map(|j| d2.cell_name(0, d2.ref_vertex(&r, j))).collect();
        assert_eq!(seq, vec!["0", "0", "1"]);
    }

    #[test]
    fn all_refs_enumeration() {
        let d1 = standard_simplex(1, 2);
        // dimension 1: the edge plus one degeneracy of each vertex
        assert_eq!(d1.all_refs(1).len(), 3);
        // dimension 2: s_1 s_0 v (2) + s_0 e, s_1 e (2)
        assert_eq!(d1.all_refs(2).len(), 4);
        for r in d1.all_refs(2) {
            assert_eq!(r.dim(), 2);
            assert!(word_is_normal(&r.word));
        }
    }

    #[test]
    fn validate_catches_bad_face() {
        let mut x = TruncatedSSet::empty(1);
        let v = x.add_cell(0, "v").unwrap();
        x.add_cell(1, "e").unwrap();
        // wrong: only one face provided
        assert!(x.set_faces(1, 0, vec![DegenerateRef::nondeg(0, v)]).is_err());
        x.set_faces(1, 0, vec![DegenerateRef::nondeg(0, v), DegenerateRef::nondeg(0, v)])
            .unwrap();
        assert!(x.validate().is_empty());
    }

    #[test]
    fn validate_catches_identity_violation() {
        // A fake 2-cell whose faces do not satisfy d_0 d_2 = d_1 d_0.
        let mut x = TruncatedSSet::empty(2);
        for n in ["a", "b", "c"] {
            x.add_cell(0, n).unwrap();
        }
        let a = 0;
        let b = 1;
        let c = 2;
        x.add_cell(1, "ab").unwrap();
        x.add_cell(1, "bc").unwrap();
        x.add_cell(1, "ac").unwrap();
        x.set_faces(1, 0, vec![DegenerateRef::nondeg(0, b), DegenerateRef::nondeg(0, a)]).unwrap();
        x.set_faces(1, 1, vec![DegenerateRef::nondeg(0, c), DegenerateRef::nondeg(0, b)]).unwrap();
        x.set_faces(1, 2, vec![DegenerateRef::nondeg(0, c), DegenerateRef::nondeg(0, a)]).unwrap();
        x.add_cell(2, "t").unwrap();
        // d0 should be bc, d1 ac, d2 ab; swap two to break the identity
        x.set_faces(
            2,
            0,
            vec![
                DegenerateRef::nondeg(1, 2),
                DegenerateRef::nondeg(1, 1),
                DegenerateRef::nondeg(1, 0),
            ],
        )
        .unwrap();
        assert!(!x.validate().is_empty());
    }

    #[test]
    fn monotone_vertex_maps() {
        let d2 = standard_simplex(2, 2);
        let d1 = standard_simplex(1, 2);
        // collapse 0,1 -> 0; 2 -> 1
        let f = simplex_vertex_map(&d2, &d1, 2, &[0, 0, 1]).unwrap();
        assert!(f.validate().is_empty());
        let top = DegenerateRef::nondeg(2, 0);
        let img = f.apply(&top);
        assert_eq!(img.base_dim, 1);
        assert_eq!(img.word, vec![0]);
        assert!(simplex_vertex_map(&d2, &d1, 2, &[1, 0, 1]).is_err());
    }

    #[test]
    fn reversal_is_a_validating_involution() {
        let b2 = boundary_simplex(2, 3);
        let rev = reverse(&b2).unwrap();
        assert!(rev.validate().is_empty());
        assert_eq!(reverse(&rev).unwrap(), b2);
        // An edge's start and end swap roles under reversal.
        assert_eq!(rev.face(1, 0, 0), b2.face(1, 0, 1));
        assert_eq!(rev.face(1, 0, 1), b2.face(1, 0, 0));

        let d3 = standard_simplex(3, 3);
        assert_eq!(reverse(&reverse(&d3).unwrap()).unwrap(), d3);
    }

    #[test]
    fn reversal_flips_degeneracy_words() {
        // s_0 of an edge becomes s_1 of the reversed edge and back.
        let r = DegenerateRef { base_dim: 1, base: 0, word: vec![0] };
        assert_eq!(reverse_ref(&r).word, vec![1]);
        assert_eq!(reverse_ref(&reverse_ref(&r)), r);
        // The full degeneracy of a vertex is symmetric.
        let v = DegenerateRef { base_dim: 0, base: 2, word: vec![2, 1, 0] };
        assert_eq!(reverse_ref(&v), v);
    }

    #[test]
    fn reversal_preserves_homology_of_an_oriented_circle() {
        // A one-vertex circle: reversal keeps H_0 and H_1.
        let d1 = standard_simplex(1, 2);
        let ends = quotient(
            &d1,
            &[(DegenerateRef::nondeg(0, 0), DegenerateRef::nondeg(0, 1))],
        )
        .unwrap();
        let rev = reverse(&ends.sset).unwrap();
        let fwd = homology(&ends.sset, 1).unwrap();
        let bwd = homology(&rev, 1).unwrap();
        assert_eq!(fwd, bwd);
    }
}
