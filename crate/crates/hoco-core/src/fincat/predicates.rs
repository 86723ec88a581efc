//! Exhaustive shape predicates on finite categories: initial and terminal
//! objects, binary coproducts with universal-property witnesses,
//! filteredness, and finality of a functor.

use super::{FinCat, FunctorData};

/// Lowest-indexed initial object: exactly one morphism to every object.
pub fn has_initial(c: &FinCat) -> Option<usize> {
    (0..c.object_count()).find(|&a| (0..c.object_count()).all(|b| c.hom(a, b).len() == 1))
}

/// Lowest-indexed terminal object: exactly one morphism from every object.
pub fn has_terminal(c: &FinCat) -> Option<usize> {
    (0..c.object_count()).find(|&a| (0..c.object_count()).all(|b| c.hom(b, a).len() == 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoproductWitness {
    pub pair: (usize, usize),
    pub apex: usize,
    /// Coprojections into the apex.
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCoproducts {
    pub witnesses: Vec<CoproductWitness>,
    /// First object pair with no coproduct, if any.
    pub failing: Option<(usize, usize)>,
}

impl BinaryCoproducts {
    pub fn complete(&self) -> bool {
        self.failing.is_none()
    }
}

/// Searches every unordered object pair for a coproduct cospan, verifying
/// the universal property exhaustively. Lowest (apex, left, right) wins.
pub fn binary_coproducts(c: &FinCat) -> BinaryCoproducts {
    let n = c.object_count();
    let mut witnesses = Vec::new();
    for a in 0..n {
        for b in a..n {
            let mut found = None;
            'search: for apex in 0..n {
                for &u in &c.hom(a, apex) {
                    for &v in &c.hom(b, apex) {
                        if is_coproduct(c, a, b, apex, u, v) {
                            found = Some(CoproductWitness { pair: (a, b), apex, left: u, right: v });
                            break 'search;
                        }
                    }
                }
            }
            match found {
                Some(w) => witnesses.push(w),
                None => return BinaryCoproducts { witnesses, failing: Some((a, b)) },
            }
        }
    }
    BinaryCoproducts { witnesses, failing: None }
}

fn is_coproduct(c: &FinCat, a: usize, b: usize, apex: usize, u: usize, v: usize) -> bool {
    for x in 0..c.object_count() {
        for &p in &c.hom(a, x) {
            for &q in &c.hom(b, x) {
                let mediating: Vec<usize> = c
                    .hom(apex, x)
                    .into_iter()
                    .filter(|&h| c.compose(h, u) == Some(p) && c.compose(h, v) == Some(q))
                    .collect();
                if mediating.len() != 1 {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterFailure {
    Empty,
    /// No object receives morphisms from both.
    NoCospan { a: usize, b: usize },
    /// Parallel pair with no morphism equalizing it from the right.
    NoEqualizingTarget { f: usize, g: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filteredness {
    pub holds: bool,
    pub failure: Option<FilterFailure>,
}

/// Filteredness of a finite category: nonempty, every object pair admits a
/// cospan, and every parallel pair is equalized by some further morphism.
/// For finite categories this pairwise criterion decides the general
/// finite-subdiagram condition: a cone over any finite diagram is assembled
/// by iterating cospans and coequalizing comparisons, since each step stays
/// inside the (finite) category.
pub fn is_filtered(c: &FinCat) -> Filteredness {
    if c.is_empty() {
        return Filteredness { holds: false, failure: Some(FilterFailure::Empty) };
    }
    let n = c.object_count();
    for a in 0..n {
        for b in a..n {
            let has_cospan =
                (0..n).any(|x| !c.hom(a, x).is_empty() && !c.hom(b, x).is_empty());
            if !has_cospan {
                return Filteredness {
                    holds: false,
                    failure: Some(FilterFailure::NoCospan { a, b }),
                };
            }
        }
    }
    for f in 0..c.morphism_count() {
        for g in 0..c.morphism_count() {
            if f >= g {
                continue;
            }
            let (mf, mg) = (c.morphism(f), c.morphism(g));
            if mf.src != mg.src || mf.tgt != mg.tgt {
                continue;
            }
            let equalized = (0..c.morphism_count())
                .any(|u| c.compose(u, f).is_some() && c.compose(u, f) == c.compose(u, g));
            if !equalized {
                return Filteredness {
                    holds: false,
                    failure: Some(FilterFailure::NoEqualizingTarget { f, g }),
                };
            }
        }
    }
    Filteredness { holds: true, failure: None }
}

/// A functor F is final when every comma category L-over-F is nonempty and
/// connected; colimits restricted along final functors agree.
pub fn is_final_functor(f: &FunctorData) -> bool {
    for l in 0..f.target.object_count() {
        // Comma objects: (a, u: L -> F a).
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for a in 0..f.source.object_count() {
            for u in f.target.hom(l, f.apply_obj(a)) {
                pairs.push((a, u));
            }
        }
        if pairs.is_empty() {
            return false;
        }
        let at = |a: usize, u: usize| pairs.iter().position(|&p| p == (a, u)).expect("pair");
        let mut parent: Vec<usize> = (0..pairs.len()).collect();
        fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for (i, &(a, u)) in pairs.iter().enumerate() {
            for h in 0..f.source.morphism_count() {
                if f.source.morphism(h).src != a {
                    continue;
                }
                let u2 = f
                    .target
                    .compose(f.apply_mor(h), u)
                    .expect("F h starts at F a");
                let j = at(f.source.morphism(h).tgt, u2);
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
        let root = find(&mut parent, 0);
        if (1..pairs.len()).any(|i| find(&mut parent, i) != root) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{arrow_cat, reflexive_pair};
    use crate::fincat::{diagonal, FinCat};

    #[test]
    fn terminal_category_has_initial_and_terminal() {
        let one = FinCat::build(&["*"], &[], &[]).unwrap();
        assert_eq!(has_initial(&one), Some(0));
        assert_eq!(has_terminal(&one), Some(0));
    }

    #[test]
    fn reflexive_pair_initial_and_terminal() {
        // The section relations h m = k m = id:B collapse every morphism out
        // of B, so hom(B,A) = {m} and hom(B,B) = {id:B}: B is initial. No
        // terminal object exists (two morphisms A -> B, three A -> A).
        let c = reflexive_pair();
        assert_eq!(has_initial(&c), c.object_index("B"));
        assert_eq!(has_terminal(&c), None);
    }

    #[test]
    fn join_poset_has_binary_coproducts() {
        let c = FinCat::poset(&["0", "1"], &[(0, 1)]).unwrap();
        let bc = binary_coproducts(&c);
        assert!(bc.complete());
        // The coproduct of 0 and 1 is the join 1.
        let w = bc.witnesses.iter().find(|w| w.pair == (0, 1)).unwrap();
        assert_eq!(w.apex, 1);
    }

    #[test]
    fn reflexive_pair_lacks_coproducts() {
        let bc = binary_coproducts(&reflexive_pair());
        assert!(!bc.complete());
    }

    #[test]
    fn filtered_by_terminal_object() {
        let c = FinCat::poset(&["0", "l", "r", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(is_filtered(&c).holds);
    }

    #[test]
    fn discrete_two_is_not_filtered() {
        let two = FinCat::build(&["a", "b"], &[], &[]).unwrap();
        let f = is_filtered(&two);
        assert!(!f.holds);
        assert_eq!(f.failure, Some(FilterFailure::NoCospan { a: 0, b: 1 }));
    }

    #[test]
    fn reflexive_pair_is_not_filtered() {
        // h and k are parallel but nothing equalizes them: candidates from
        // B are id:B and m, and neither has u h = u k.
        let c = reflexive_pair();
        let f = is_filtered(&c);
        assert!(!f.holds);
        let h = c.morphism_index("h").unwrap();
        let k = c.morphism_index("k").unwrap();
        assert_eq!(f.failure, Some(FilterFailure::NoEqualizingTarget { f: h.min(k), g: h.max(k) }));
    }

    #[test]
    fn identity_functor_is_final() {
        assert!(is_final_functor(&FunctorData::identity(&reflexive_pair())));
    }

    #[test]
    fn diagonal_of_discrete_two_is_not_final() {
        let two = FinCat::build(&["a", "b"], &[], &[]).unwrap();
        assert!(!is_final_functor(&diagonal(&two).unwrap()));
    }

    #[test]
    fn diagonal_of_reflexive_pair_is_final() {
        let c = reflexive_pair();
        assert!(is_final_functor(&diagonal(&c).unwrap()));
    }

    #[test]
    fn diagonal_of_arrow_is_final() {
        // The arrow poset has joins, so its diagonal is final.
        assert!(is_final_functor(&diagonal(&arrow_cat()).unwrap()));
    }
}
