//! Path components and the edge-path fundamental group.

use std::collections::VecDeque;

use super::{GroupPresentation, TruncatedSSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi0 {
    pub count: usize,
    /// Component id per vertex, numbered by least member vertex.
    pub component: Vec<usize>,
}

impl Pi0 {
    /// Least vertex index in each component, by component id.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.count];
        for (v, &c) in self.component.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = v;
            }
        }
        reps
    }
}

/// Path components: vertices joined by the endpoints of each edge
/// (face 1 is the start, face 0 the end).
pub fn pi0(x: &TruncatedSSet) -> Pi0 {
    let n = x.cell_count(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    if x.trunc_level() >= 1 {
        for e in 0..x.cell_count(1) {
            let a = x.face(1, e, 1).base;
            let b = x.face(1, e, 0).base;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                parent[hi] = lo;
            }
        }
    }
    let mut ids = vec![usize::MAX; n];
    let mut count = 0;
    let mut component = vec![0usize; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if ids[r] == usize::MAX {
            ids[r] = count;
            count += 1;
        }
        component[v] = ids[r];
    }
    Pi0 { count, component }
}

/// Edge-path presentation of the fundamental group at `base_vertex`.
///
/// A breadth-first spanning tree of the base component contributes trivial
/// generators; each remaining edge is a generator, and each 2-cell in the
/// component contributes the relator w(d2) w(d0) w(d1)^-1. Degenerate edges
/// read as empty words.
pub fn pi1_presentation(x: &TruncatedSSet, base_vertex: usize) -> Result<GroupPresentation> {
    if x.trunc_level() < 1 {
        return Err(Error::InsufficientTruncation { needed: 1, have: x.trunc_level() });
    }
    if base_vertex >= x.cell_count(0) {
        return Err(Error::invalid(format!("base vertex {base_vertex} out of range")));
    }
    let nv = x.cell_count(0);
    let ne = x.cell_count(1);

    // adjacency: vertex -> (edge, other endpoint), in edge order
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    let mut ends: Vec<(usize, usize)> = Vec::with_capacity(ne);
    for e in 0..ne {
        let a = x.face(1, e, 1).base;
        let b = x.face(1, e, 0).base;
        ends.push((a, b));
        adj[a].push((e, b));
        if b != a {
            adj[b].push((e, a));
        }
    }

    let mut in_component = vec![false; nv];
    let mut tree_edge = vec![false; ne];
    let mut visited_edge = vec![false; ne];
    in_component[base_vertex] = true;
    let mut queue = VecDeque::from([base_vertex]);
    while let Some(v) = queue.pop_front() {
        for &(e, w) in &adj[v] {
            if visited_edge[e] {
                continue;
            }
            visited_edge[e] = true;
            if !in_component[w] {
                in_component[w] = true;
                tree_edge[e] = true;
                queue.push_back(w);
            }
        }
    }

    let mut generator_of_edge: Vec<Option<usize>> = vec![None; ne];
    let mut generators = Vec::new();
    for e in 0..ne {
        let (a, _) = ends[e];
        if in_component[a] && !tree_edge[e] {
            generator_of_edge[e] = Some(generators.len());
            generators.push(x.cell_name(1, e).to_string());
        }
    }

    let mut relators: Vec<Vec<(usize, i8)>> = Vec::new();
    if x.trunc_level() >= 2 {
        let word = |r: &super::DegenerateRef| -> Vec<(usize, i8)> {
            if r.is_degenerate() {
                return Vec::new();
            }
            match generator_of_edge[r.base] {
                Some(g) => vec![(g, 1)],
                None => Vec::new(),
            }
        };
        for t in 0..x.cell_count(2) {
            let cell = super::DegenerateRef::nondeg(2, t);
            let v0 = x.ref_vertex(&cell, 0);
            if !in_component[v0] {
                continue;
            }
            let mut rel = Vec::new();
            rel.extend(word(x.face(2, t, 2)));
            rel.extend(word(x.face(2, t, 0)));
            for (g, s) in word(x.face(2, t, 1)).into_iter().rev() {
                rel.push((g, -s));
            }
            let rel = GroupPresentation::free_reduce(rel);
            if !rel.is_empty() {
                relators.push(rel);
            }
        }
    }

    Ok(GroupPresentation { generators, relators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::{boundary_simplex, coproduct, quotient, standard_simplex, DegenerateRef};

    #[test]
    fn components_of_disjoint_union() {
        let a = standard_simplex(1, 1);
        let b = standard_simplex(0, 1);
        let (sum, _, _) = coproduct(&a, &b).unwrap();
        let p = pi0(&sum);
        assert_eq!(p.count, 2);
        assert_eq!(p.component, vec![0, 0, 1]);
        assert_eq!(p.representatives(), vec![0, 2]);
    }

    #[test]
    fn circle_has_free_pi1() {
        let b2 = boundary_simplex(2, 2);
        let g = pi1_presentation(&b2, 0).unwrap();
        assert_eq!(g.generators.len(), 1);
        assert!(g.relators.is_empty());
    }

    #[test]
    fn filled_triangle_has_trivial_pi1() {
        let d2 = standard_simplex(2, 2);
        let g = pi1_presentation(&d2, 0).unwrap();
        assert_eq!(g.generators.len(), 1);
        assert_eq!(g.relators.len(), 1);
        assert_eq!(g.relators[0], vec![(0, 1)]);
    }

    #[test]
    fn loop_from_quotient() {
        let d1 = standard_simplex(1, 2);
        let q = quotient(&d1, &[(DegenerateRef::nondeg(0, 0), DegenerateRef::nondeg(0, 1))])
            .unwrap();
        let g = pi1_presentation(&q.sset, 0).unwrap();
        assert_eq!(g.generators.len(), 1);
        assert!(g.relators.is_empty());
    }

    #[test]
    fn pi1_ignores_other_components() {
        let a = boundary_simplex(2, 2);
        let b = standard_simplex(0, 2);
        let (sum, _, _) = coproduct(&a, &b).unwrap();
        // base in the point component: nothing to generate
        let g = pi1_presentation(&sum, 3).unwrap();
        assert!(g.generators.is_empty());
        assert!(g.relators.is_empty());
    }
}
