//! Truncated mapping spaces between finite simplicial sets.
//!
//! The `k`-cells of `mapping_space(X, Y, k_max, _)` are the simplicial maps
//! `product(X, Delta_k) -> Y`, with faces and degeneracies given by
//! precomposition along the coordinate maps of the simplex. Enumeration is a
//! depth-first search over cell assignments in a faces-first order, so
//! partial assignments are pruned as soon as a face image disagrees. The
//! search is exhaustive and blows up combinatorially; the budget bounds the
//! number of candidate trials and turns runaway inputs into a typed
//! resource error instead of a stuck process.

use crate::error::{Error, Result};
use crate::simpset::{
    product, product_map, simplex_vertex_map, standard_simplex, word_push, DegenerateRef, Product,
    SimplicialMap, TruncatedSSet,
};

/// A computed mapping space: the cell complex plus one representing map per
/// non-degenerate cell and the coordinate maps used to take faces.
#[derive(Debug)]
pub struct MappingSpace {
    pub sset: TruncatedSSet,
    reps: Vec<Vec<SimplicialMap>>,
    products: Vec<Product>,
    deltas: Vec<Vec<SimplicialMap>>,
    sigmas: Vec<Vec<SimplicialMap>>,
}

impl MappingSpace {
    /// The largest computed cell dimension.
    pub fn dim(&self) -> usize {
        self.reps.len() - 1
    }

    /// The domain `product(X, Delta_dim)` whose maps form the `dim`-cells.
    pub fn domain(&self, dim: usize) -> &TruncatedSSet {
        self.products[dim].sset()
    }

    /// The representing map of a non-degenerate cell.
    pub fn rep(&self, dim: usize, idx: usize) -> &SimplicialMap {
        &self.reps[dim][idx]
    }

    /// Face `d_i` of a `dim`-cell representative, as a map.
    pub fn face_of(&self, f: &SimplicialMap, dim: usize, i: usize) -> Result<SimplicialMap> {
        f.compose(&self.deltas[dim][i])
    }

    /// Degeneracy `s_j` of a `dim`-cell representative, as a map.
    pub fn degeneracy_of(&self, f: &SimplicialMap, dim: usize, j: usize) -> Result<SimplicialMap> {
        f.compose(&self.sigmas[dim + 1][j])
    }

    /// Finds the cell of the complex a map occupies: its Eilenberg-Zilber
    /// normal form as a degeneracy of a non-degenerate enumerated cell.
    /// `None` when the map is not a `dim`-cell of this space.
    pub fn locate(&self, f: &SimplicialMap, dim: usize) -> Option<DegenerateRef> {
        if dim >= self.products.len() || f.source() != self.products[dim].sset() {
            return None;
        }
        let (base, base_dim, word) =
            strip_map(f.clone(), dim, &self.deltas, &self.sigmas).ok()?;
        let idx = self.reps[base_dim].iter().position(|h| h == &base)?;
        Some(DegenerateRef { base_dim, base: idx, word })
    }
}

/// Enumerates the mapping space from `x` to `y` through cell dimension
/// `k_max`. The factors must share a truncation level; `budget` bounds the
/// total number of assignment candidates tried across all dimensions.
pub fn mapping_space(
    x: &TruncatedSSet,
    y: &TruncatedSSet,
    k_max: usize,
    budget: usize,
) -> Result<MappingSpace> {
    if x.trunc_level() != y.trunc_level() {
        return Err(Error::mismatch(format!(
            "mapping space endpoints truncated at {} and {}",
            x.trunc_level(),
            y.trunc_level()
        )));
    }
    let trunc = x.trunc_level();
    let idx = SimplicialMap::identity(x);
    let mut simplices: Vec<TruncatedSSet> = Vec::with_capacity(k_max + 1);
    let mut products: Vec<Product> = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let s = standard_simplex(k, trunc);
        products.push(product(x, &s)?);
        simplices.push(s);
    }
    let mut deltas: Vec<Vec<SimplicialMap>> = vec![Vec::new()];
    let mut sigmas: Vec<Vec<SimplicialMap>> = vec![Vec::new()];
    for k in 1..=k_max {
        let mut drow = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let phi: Vec<usize> = (0..k).map(|v| if v < i { v } else { v + 1 }).collect();
            let dm = simplex_vertex_map(&simplices[k - 1], &simplices[k], k - 1, &phi)?;
            drow.push(product_map(&idx, &dm, &products[k - 1], &products[k])?);
        }
        deltas.push(drow);
        let mut srow = Vec::with_capacity(k);
        for j in 0..k {
            let phi: Vec<usize> = (0..=k).map(|v| if v <= j { v } else { v - 1 }).collect();
            let sm = simplex_vertex_map(&simplices[k], &simplices[k - 1], k, &phi)?;
            srow.push(product_map(&idx, &sm, &products[k], &products[k - 1])?);
        }
        sigmas.push(srow);
    }

    let mut remaining = budget;
    let mut reps: Vec<Vec<SimplicialMap>> = Vec::with_capacity(k_max + 1);
    let mut sset = TruncatedSSet::empty(k_max);
    for k in 0..=k_max {
        let maps = enumerate_maps(&products[k], y, &mut remaining, budget)?;
        let mut nd: Vec<SimplicialMap> = Vec::new();
        for f in maps {
            if k == 0 || !is_degenerate_map(&f, k, &deltas, &sigmas)? {
                nd.push(f);
            }
        }
        for i in 0..nd.len() {
            sset.add_cell(k, format!("map{i}"))?;
        }
        if k >= 1 {
            for (i, f) in nd.iter().enumerate() {
                let mut faces = Vec::with_capacity(k + 1);
                for fi in 0..=k {
                    let g = f.compose(&deltas[k][fi])?;
                    let (base, base_dim, word) = strip_map(g, k - 1, &deltas, &sigmas)?;
                    let pos = reps[base_dim].iter().position(|h| h == &base).ok_or_else(|| {
                        Error::invalid("face of a mapping-space cell fell outside the enumeration")
                    })?;
                    faces.push(DegenerateRef { base_dim, base: pos, word });
                }
                sset.set_faces(k, i, faces)?;
            }
        }
        reps.push(nd);
    }
    Ok(MappingSpace { sset: sset.validated()?, reps, products, deltas, sigmas })
}

/// All simplicial maps `prod.sset() -> y`, in a deterministic order.
fn enumerate_maps(
    prod: &Product,
    y: &TruncatedSSet,
    remaining: &mut usize,
    budget: usize,
) -> Result<Vec<SimplicialMap>> {
    let src = prod.sset();
    let trunc = src.trunc_level();
    let order = assembly_order(src);
    let candidates: Vec<Vec<DegenerateRef>> = (0..=trunc).map(|d| all_refs(y, d)).collect();
    let mut assigned: Vec<Vec<Option<DegenerateRef>>> =
        (0..=trunc).map(|d| vec![None; src.cell_count(d)]).collect();
    let mut out: Vec<SimplicialMap> = Vec::new();
    dfs(0, &order, &candidates, src, y, &mut assigned, &mut out, remaining, budget)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    step: usize,
    order: &[(usize, usize)],
    candidates: &[Vec<DegenerateRef>],
    src: &TruncatedSSet,
    y: &TruncatedSSet,
    assigned: &mut Vec<Vec<Option<DegenerateRef>>>,
    out: &mut Vec<SimplicialMap>,
    remaining: &mut usize,
    budget: usize,
) -> Result<()> {
    if step == order.len() {
        let assign: Vec<Vec<DegenerateRef>> = assigned
            .iter()
            .map(|row| row.iter().map(|r| r.clone().expect("complete assignment")).collect())
            .collect();
        out.push(SimplicialMap::new(src.clone(), y.clone(), assign)?);
        return Ok(());
    }
    let (d, c) = order[step];
    'cand: for r in &candidates[d] {
        if *remaining == 0 {
            return Err(Error::resource(format!(
                "mapping space enumeration exceeded its budget of {budget} candidate trials"
            )));
        }
        *remaining -= 1;
        for i in 0..=d {
            if d == 0 {
                break;
            }
            let img = apply_assigned(assigned, src.face(d, c, i));
            if img != y.ref_face(r, i) {
                continue 'cand;
            }
        }
        assigned[d][c] = Some(r.clone());
        dfs(step + 1, order, candidates, src, y, assigned, out, remaining, budget)?;
        assigned[d][c] = None;
    }
    Ok(())
}

/// Image of a (possibly degenerate) reference under a partial assignment
/// whose relevant base is already set.
fn apply_assigned(assigned: &[Vec<Option<DegenerateRef>>], r: &DegenerateRef) -> DegenerateRef {
    let mut img = assigned[r.base_dim][r.base].clone().expect("face base assigned before use");
    for &j in r.word.iter().rev() {
        img = img.degenerated(j);
    }
    img
}

/// Cells in an order where every face base precedes its cofaces, preferring
/// the deepest ready cell so the search prunes early.
fn assembly_order(src: &TruncatedSSet) -> Vec<(usize, usize)> {
    let trunc = src.trunc_level();
    let total: usize = (0..=trunc).map(|d| src.cell_count(d)).sum();
    let mut done: Vec<Vec<bool>> = (0..=trunc).map(|d| vec![false; src.cell_count(d)]).collect();
    let mut order = Vec::with_capacity(total);
    while order.len() < total {
        let mut picked: Option<(usize, usize)> = None;
        'scan: for d in (0..=trunc).rev() {
            for c in 0..src.cell_count(d) {
                if done[d][c] {
                    continue;
                }
                let ready = d == 0
                    || (0..=d).all(|i| {
                        let f = src.face(d, c, i);
                        done[f.base_dim][f.base]
                    });
                if ready {
                    picked = Some((d, c));
                    break 'scan;
                }
            }
        }
        let (d, c) = picked.expect("a validated complex always has a ready cell");
        done[d][c] = true;
        order.push((d, c));
    }
    order
}

/// Every `d`-dimensional reference into `y`: non-degenerate bases of each
/// lower dimension under all normal-form degeneracy words.
fn all_refs(y: &TruncatedSSet, d: usize) -> Vec<DegenerateRef> {
    let mut out = Vec::new();
    for b in 0..=d.min(y.trunc_level()) {
        let words = decreasing_words(d, d - b);
        for base in 0..y.cell_count(b) {
            for w in &words {
                out.push(DegenerateRef { base_dim: b, base, word: w.clone() });
            }
        }
    }
    out
}

/// Strictly decreasing words of length `r` over the letters `0..d`.
fn decreasing_words(d: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, avail: usize, remaining: usize) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        let mut t = avail;
        while t > remaining - 1 {
            t -= 1;
            cur.push(t);
            rec(out, cur, t, remaining - 1);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= d {
        rec(&mut out, &mut Vec::new(), d, r);
    }
    out
}

fn is_degenerate_map(
    f: &SimplicialMap,
    k: usize,
    deltas: &[Vec<SimplicialMap>],
    sigmas: &[Vec<SimplicialMap>],
) -> Result<bool> {
    for j in 0..k {
        let d = f.compose(&deltas[k][j])?;
        let s = d.compose(&sigmas[k][j])?;
        if &s == f {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Eilenberg-Zilber data of a map regarded as a cell: the non-degenerate
/// base map, its dimension, and the normalized degeneracy word.
fn strip_map(
    f: SimplicialMap,
    dim: usize,
    deltas: &[Vec<SimplicialMap>],
    sigmas: &[Vec<SimplicialMap>],
) -> Result<(SimplicialMap, usize, Vec<usize>)> {
    let mut g = f;
    let mut m = dim;
    let mut letters: Vec<usize> = Vec::new();
    'outer: while m > 0 {
        for j in 0..m {
            let d = g.compose(&deltas[m][j])?;
            let s = d.compose(&sigmas[m][j])?;
            if s == g {
                letters.push(j);
                g = d;
                m -= 1;
                continue 'outer;
            }
        }
        break;
    }
    let mut word: Vec<usize> = Vec::new();
    for &c in letters.iter().rev() {
        word = word_push(&word, c);
    }
    Ok((g, m, word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::boundary_simplex;

    const BUDGET: usize = 1_000_000;

    #[test]
    fn interval_endomorphism_vertices_are_the_monotone_maps() {
        let d1 = standard_simplex(1, 1);
        let ms = mapping_space(&d1, &d1, 0, BUDGET).unwrap();
        assert_eq!(ms.sset.cell_count(0), 3);
    }

    #[test]
    fn mapping_out_of_a_point_recovers_the_target() {
        let pt = standard_simplex(0, 2);
        let circle = boundary_simplex(2, 2);
        let ms = mapping_space(&pt, &circle, 2, BUDGET).unwrap();
        for dim in 0..=2 {
            assert_eq!(ms.sset.cell_count(dim), circle.cell_count(dim), "dimension {dim}");
        }
    }

    #[test]
    fn mapping_into_a_point_is_a_point() {
        let circle = boundary_simplex(2, 2);
        let pt = standard_simplex(0, 2);
        let ms = mapping_space(&circle, &pt, 2, BUDGET).unwrap();
        assert_eq!(
            (0..=2).map(|d| ms.sset.cell_count(d)).collect::<Vec<_>>(),
            vec![1, 0, 0]
        );
    }

    #[test]
    fn interval_self_mapping_space_counts() {
        // Maps product(interval, Delta_k) -> interval are the monotone maps
        // from a ladder poset to a chain; the multichain counts give 3
        // vertices, 3 non-degenerate edges, and a single honest 2-cell.
        let d1 = standard_simplex(1, 2);
        let ms = mapping_space(&d1, &d1, 2, BUDGET).unwrap();
        assert_eq!(
            (0..=2).map(|d| ms.sset.cell_count(d)).collect::<Vec<_>>(),
            vec![3, 3, 1]
        );
    }

    #[test]
    fn located_degeneracies_carry_their_word() {
        let d1 = standard_simplex(1, 2);
        let ms = mapping_space(&d1, &d1, 2, BUDGET).unwrap();
        let edge = ms.rep(1, 0).clone();
        let lifted = ms.degeneracy_of(&edge, 1, 0).unwrap();
        assert_eq!(
            ms.locate(&lifted, 2),
            Some(DegenerateRef { base_dim: 1, base: 0, word: vec![0] })
        );
        // Faces computed at the map level agree with the stored complex.
        let two_cell = ms.rep(2, 0).clone();
        for i in 0..=2 {
            let g = ms.face_of(&two_cell, 2, i).unwrap();
            assert_eq!(ms.locate(&g, 1).as_ref(), Some(ms.sset.face(2, 0, i)), "face {i}");
        }
    }

    #[test]
    fn a_map_from_elsewhere_does_not_locate() {
        let d1 = standard_simplex(1, 2);
        let ms = mapping_space(&d1, &d1, 1, BUDGET).unwrap();
        let stray = SimplicialMap::identity(&d1);
        assert_eq!(ms.locate(&stray, 1), None);
    }

    #[test]
    fn enumeration_respects_the_budget() {
        let d1 = standard_simplex(1, 2);
        let err = mapping_space(&d1, &d1, 2, 5).unwrap_err();
        assert!(matches!(err, Error::Resource(_)), "got {err:?}");
    }

    #[test]
    fn the_empty_domain_gives_a_point() {
        let empty = TruncatedSSet::empty(1);
        let d1 = standard_simplex(1, 1);
        let ms = mapping_space(&empty, &d1, 1, BUDGET).unwrap();
        assert_eq!(ms.sset.cell_count(0), 1);
        assert_eq!(ms.sset.cell_count(1), 0);
    }

    #[test]
    fn mismatched_truncations_are_rejected() {
        let a = standard_simplex(1, 1);
        let b = standard_simplex(1, 2);
        assert!(mapping_space(&a, &b, 0, BUDGET).is_err());
    }
}
