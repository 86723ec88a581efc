//! Nerves of finite categories.
//!
//! The k-cells of the nerve are composable chains of k morphisms; a chain is
//! degenerate exactly when some component is an identity, and its normal
//! form strips the identities into a degeneracy word. Only non-degenerate
//! chains are materialized; [`Nerve::chain_ref`] renormalizes arbitrary
//! chains, which is what face maps and induced maps of nerves need.

use std::collections::HashMap;

use super::{FinCat, FunctorData};
use crate::error::{Error, Result};
use crate::simpset::{reverse, word_push, DegenerateRef, SimplicialMap, TruncatedSSet};

#[derive(Debug, Clone)]
pub struct Nerve {
    pub cat: FinCat,
    pub sset: TruncatedSSet,
    /// chains[k][cell] lists the k morphism indices of a non-degenerate
    /// chain in diagrammatic order (chains[0] entries are empty).
    chains: Vec<Vec<Vec<usize>>>,
    chain_index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Nerve {
    pub fn chain(&self, dim: usize, cell: usize) -> &[usize] {
        &self.chains[dim][cell]
    }

    /// The object a chain starts at.
    pub fn chain_start(&self, dim: usize, cell: usize) -> usize {
        if dim == 0 {
            cell
        } else {
            self.cat.morphism(self.chains[dim][cell][0]).src
        }
    }

    /// Normal form of an arbitrary composable chain out of `start`
    /// (components may be identities; the empty chain is the vertex).
    pub fn chain_ref(&self, start: usize, arrows: &[usize]) -> Result<DegenerateRef> {
        let mut at = start;
        for &f in arrows {
            let m = self.cat.morphism(f);
            if m.src != at {
                return Err(Error::mismatch(format!("chain breaks at morphism {}", m.name)));
            }
            at = m.tgt;
        }
        let mut stripped: Vec<usize> = Vec::with_capacity(arrows.len());
        let mut id_positions: Vec<usize> = Vec::new();
        for (i, &f) in arrows.iter().enumerate() {
            if self.cat.is_identity_mor(f) {
                id_positions.push(i);
            } else {
                stripped.push(f);
            }
        }
        let base_dim = stripped.len();
        if base_dim > self.sset.trunc_level() {
            return Err(Error::InsufficientTruncation {
                needed: base_dim,
                have: self.sset.trunc_level(),
            });
        }
        let base = if base_dim == 0 {
            start
        } else {
            *self.chain_index[base_dim]
                .get(&stripped)
                .ok_or_else(|| Error::invalid("chain not present in nerve"))?
        };
        // The chain is s_{c_1} .. s_{c_r} of the stripped chain, where the
        // j-th identity (position i_j, ascending) contributes c_j = i_j-(j-1)
        // counted in the partially stripped chain; compose innermost first.
        let mut word: Vec<usize> = Vec::new();
        for (j, &i) in id_positions.iter().enumerate().rev() {
            word = word_push(&word, i - j);
        }
        Ok(DegenerateRef { base_dim, base, word })
    }
}

/// Nerve of a finite category, truncated at `n`.
pub fn nerve(c: &FinCat, n: usize) -> Result<Nerve> {
    let mut sset = TruncatedSSet::empty(n);
    let mut chains: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n + 1];
    let mut chain_index: Vec<HashMap<Vec<usize>, usize>> = vec![HashMap::new(); n + 1];

    for o in 0..c.object_count() {
        sset.add_cell(0, c.object_name(o))?;
        chains[0].push(Vec::new());
    }
    let nonid = c.non_identities();
    for k in 1..=n {
        let prev: Vec<Vec<usize>> = if k == 1 {
            vec![Vec::new()]
        } else {
            chains[k - 1].clone()
        };
        for stem in prev {
            for &f in &nonid {
                if k > 1 {
                    let last = *stem.last().expect("stem of positive length");
                    if c.morphism(last).tgt != c.morphism(f).src {
                        continue;
                    }
                }
                let mut chain = stem.clone();
                chain.push(f);
                let name: Vec<&str> =
                    chain.iter().map(|&i| c.morphism(i).name.as_str()).collect();
                let idx = sset.add_cell(k, name.join(";"))?;
                chain_index[k].insert(chain.clone(), idx);
                chains[k].push(chain);
            }
        }
    }

    let mut out = Nerve { cat: c.clone(), sset, chains, chain_index };
    for k in 1..=n {
        for idx in 0..out.chains[k].len() {
            let chain = out.chains[k][idx].clone();
            let start = out.cat.morphism(chain[0]).src;
            let mut faces = Vec::with_capacity(k + 1);
            for i in 0..=k {
                let (face_chain, face_start) = nerve_face_chain(&out.cat, start, &chain, i)?;
                faces.push(out.chain_ref(face_start, &face_chain)?);
            }
            out.sset.set_faces(k, idx, faces)?;
        }
    }
    debug_assert!(out.sset.validate().is_empty());
    Ok(out)
}

/// The chain of `d_i` applied to a chain: drop the first or last morphism,
/// or fuse two adjacent ones.
fn nerve_face_chain(
    c: &FinCat,
    start: usize,
    chain: &[usize],
    i: usize,
) -> Result<(Vec<usize>, usize)> {
    let k = chain.len();
    if i == 0 {
        Ok((chain[1..].to_vec(), c.morphism(chain[0]).tgt))
    } else if i == k {
        Ok((chain[..k - 1].to_vec(), start))
    } else {
        let fused = c
            .compose(chain[i], chain[i - 1])
            .ok_or_else(|| Error::invalid("chain not composable"))?;
        let mut out = chain[..i - 1].to_vec();
        out.push(fused);
        out.extend_from_slice(&chain[i + 1..]);
        Ok((out, start))
    }
}

/// The isomorphism from the reversed nerve of `c` onto the nerve of the
/// opposite category: a chain read backwards is a chain of the opposite.
///
/// Both sides carry the same cells, so this is a relabeling bijection; it is
/// simplicial because reversal conjugates face `i` in degree `q` to face
/// `q - i`, exactly how composition indices flip under opposition. Together
/// with the invariance of certificates under [`reverse`], it lets a verdict
/// about the nerve of the opposite stand in for one about the nerve itself.
pub fn nerve_reversal_iso(c: &FinCat, n: usize) -> Result<SimplicialMap> {
    let forward = nerve(c, n)?;
    let backward = nerve(&c.opposite(), n)?;
    let source = reverse(&forward.sset)?;
    let mut assign: Vec<Vec<DegenerateRef>> = Vec::with_capacity(n + 1);
    assign.push((0..source.cell_count(0)).map(|o| DegenerateRef::nondeg(0, o)).collect());
    for k in 1..=n {
        let mut row = Vec::with_capacity(source.cell_count(k));
        for cell in 0..source.cell_count(k) {
            let mut chain = forward.chain(k, cell).to_vec();
            let start = c.morphism(chain[k - 1]).tgt;
            chain.reverse();
            row.push(backward.chain_ref(start, &chain)?);
        }
        assign.push(row);
    }
    SimplicialMap::new(source, backward.sset.clone(), assign)
}

/// The simplicial map of nerves induced by a functor. The nerves must be of
/// the functor's source and target at equal truncation.
pub fn nerve_map(f: &FunctorData, src: &Nerve, tgt: &Nerve) -> Result<SimplicialMap> {
    if src.sset.trunc_level() != tgt.sset.trunc_level() {
        return Err(Error::mismatch("nerve truncation levels differ"));
    }
    let n = src.sset.trunc_level();
    let mut assign: Vec<Vec<DegenerateRef>> = Vec::with_capacity(n + 1);
    assign.push((0..src.sset.cell_count(0)).map(|o| DegenerateRef::nondeg(0, f.apply_obj(o))).collect());
    for k in 1..=n {
        let mut row = Vec::with_capacity(src.sset.cell_count(k));
        for cell in 0..src.sset.cell_count(k) {
            let image: Vec<usize> =
                src.chain(k, cell).iter().map(|&m| f.apply_mor(m)).collect();
            let start = f.apply_obj(src.chain_start(k, cell));
            row.push(tgt.chain_ref(start, &image)?);
        }
        assign.push(row);
    }
    SimplicialMap::new(src.sset.clone(), tgt.sset.clone(), assign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::diagonal;
    use crate::simpset::{homology, pi1_presentation};

    fn arrow_cat() -> FinCat {
        FinCat::build(&["0", "1"], &[("a", "0", "1")], &[]).unwrap()
    }

    #[test]
    fn nerve_of_terminal_is_a_point() {
        let one = FinCat::build(&["*"], &[], &[]).unwrap();
        let n = nerve(&one, 3).unwrap();
        assert_eq!(n.sset.cell_count(0), 1);
        for k in 1..=3 {
            assert_eq!(n.sset.cell_count(k), 0);
        }
    }

    #[test]
    fn nerve_of_arrow_is_an_interval() {
        let n = nerve(&arrow_cat(), 3).unwrap();
        assert_eq!(n.sset.cell_count(0), 2);
        assert_eq!(n.sset.cell_count(1), 1);
        assert_eq!(n.sset.cell_count(2), 0);
        // Edge runs 0 -> 1: face 1 is the start, face 0 the end.
        let e = 0;
        assert_eq!(n.sset.face(1, e, 1).base, n.sset.cell_index(0, "0").unwrap());
        assert_eq!(n.sset.face(1, e, 0).base, n.sset.cell_index(0, "1").unwrap());
    }

    #[test]
    fn nerve_of_idempotent_monoid_has_one_cell_per_dimension() {
        let m = FinCat::monoid("*", &["1", "e"], 0, &[vec![0, 1], vec![1, 1]]).unwrap();
        let n = nerve(&m, 3).unwrap();
        for k in 0..=3 {
            assert_eq!(n.sset.cell_count(k), 1, "dimension {k}");
        }
        assert!(n.sset.validate().is_empty());
    }

    #[test]
    fn nerve_face_composes_into_degeneracy() {
        // Z/2: the 2-chain (g,g) has middle face g*g = identity, so d_1 is
        // the degenerate edge of the vertex.
        let z2 = FinCat::monoid("*", &["1", "g"], 0, &[vec![0, 1], vec![1, 0]]).unwrap();
        let n = nerve(&z2, 2).unwrap();
        let gg = n.sset.cell_index(2, "g;g").unwrap();
        let mid = n.sset.face(2, gg, 1);
        assert_eq!(mid.base_dim, 0);
        assert_eq!(mid.word, vec![0]);
        let outer = n.sset.face(2, gg, 0);
        assert_eq!(*outer, DegenerateRef::nondeg(1, n.sset.cell_index(1, "g").unwrap()));
    }

    #[test]
    fn nerve_of_z2_has_torsion_h1() {
        let z2 = FinCat::monoid("*", &["1", "g"], 0, &[vec![0, 1], vec![1, 0]]).unwrap();
        let n = nerve(&z2, 3).unwrap();
        let h = homology(&n.sset, 2).unwrap();
        assert_eq!(h[0].free_rank, 1);
        assert_eq!(h[1].free_rank, 0);
        assert_eq!(h[1].torsion, vec![2]);
        let p = pi1_presentation(&n.sset, 0).unwrap();
        assert_eq!(p.generators.len(), 1);
        assert_eq!(p.abelianization().unwrap(), (0, vec![2]));
    }

    #[test]
    fn chain_ref_normalizes_identity_padding() {
        let c = arrow_cat();
        let n = nerve(&c, 3).unwrap();
        let a = c.morphism_index("a").unwrap();
        let id0 = c.identity_of(0);
        let id1 = c.identity_of(1);
        // (id, a, id) = s_2 s_0 (a)
        let r = n.chain_ref(0, &[id0, a, id1]).unwrap();
        assert_eq!(r.base_dim, 1);
        assert_eq!(r.word, vec![2, 0]);
        // (id, id) over the vertex 1
        let r = n.chain_ref(1, &[id1, id1]).unwrap();
        assert_eq!(r.base_dim, 0);
        assert_eq!(r.base, 1);
        assert_eq!(r.word, vec![1, 0]);
        assert!(n.chain_ref(1, &[a]).is_err(), "chain must start where told");
    }

    #[test]
    fn functor_induces_map_of_nerves() {
        let c = arrow_cat();
        let d = diagonal(&c).unwrap();
        let src = nerve(&c, 2).unwrap();
        let tgt = nerve(&d.target, 2).unwrap();
        let f = nerve_map(&d, &src, &tgt).unwrap();
        assert!(f.validate().is_empty());
        // The edge goes to the diagonal edge (a,a).
        let e = src.sset.cell_index(1, "a").unwrap();
        let img = f.assignment(1, e);
        assert_eq!(tgt.sset.cell_name(1, img.base), "(a,a)");
    }

    #[test]
    fn nerve_map_collapses_to_identity_chains() {
        // Unique functor from the arrow to the terminal category: the edge
        // maps to the degenerate edge of the point.
        let c = arrow_cat();
        let one = FinCat::build(&["*"], &[], &[]).unwrap();
        let f = FunctorData::new(c.clone(), one.clone(), vec![0, 0], vec![0, 0, 0]).unwrap();
        let src = nerve(&c, 2).unwrap();
        let tgt = nerve(&one, 2).unwrap();
        let m = nerve_map(&f, &src, &tgt).unwrap();
        let img = m.assignment(1, 0);
        assert_eq!(img.base_dim, 0);
        assert_eq!(img.word, vec![0]);
    }

    #[test]
    fn reversed_nerve_is_the_opposite_nerve() {
        let shapes = [
            arrow_cat(),
            FinCat::build(
                &["a", "b", "c"],
                &[("p", "a", "b"), ("q", "a", "c")],
                &[],
            )
            .unwrap(),
            crate::corpus::reflexive_pair(),
        ];
        for c in shapes {
            let iso = nerve_reversal_iso(&c, 3).unwrap();
            assert!(iso.is_isomorphism(), "reversal relabeling failed for {:?}", c);
        }
    }
}
