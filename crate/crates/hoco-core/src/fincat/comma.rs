//! Under categories and the comma categories of the diagonal.
//!
//! Both are instances of one construction: objects carry an apex object of
//! the base category, morphisms are pairs (object, g) for non-identity g out
//! of the apex, and composition happens in the base. Object and morphism
//! names stay readable (`f`, `(f1,f2)`, `obj>g`) so verdict evidence can
//! cite them directly.

use std::collections::HashMap;

use super::{FinCat, FunctorData, Mor};
use crate::error::{Error, Result};

/// Objects named by `names`, each sitting over `apex[i]` in the base; the
/// morphisms are exactly the pairs (object, non-identity g out of its apex),
/// with `step` giving the target object. Composition is inherited from the
/// base category.
fn element_category(
    base: &FinCat,
    names: Vec<String>,
    apex: &[usize],
    step: impl Fn(usize, usize) -> usize,
) -> Result<(FinCat, Vec<usize>)> {
    let mut morphisms: Vec<Mor> = names
        .iter()
        .enumerate()
        .map(|(i, n)| Mor { name: format!("id:{n}"), src: i, tgt: i })
        .collect();
    // mor_g[i] = the base morphism a category morphism applies (identities
    // map to base identities of the apex).
    let mut mor_g: Vec<usize> = apex.iter().map(|&a| base.identity_of(a)).collect();
    let mut pair_index: HashMap<(usize, usize), usize> = HashMap::new();
    for (s, name) in names.iter().enumerate() {
        for g in base.non_identities() {
            if base.morphism(g).src != apex[s] {
                continue;
            }
            pair_index.insert((s, g), morphisms.len());
            morphisms.push(Mor {
                name: format!("{name}>{}", base.morphism(g).name),
                src: s,
                tgt: step(s, g),
            });
            mor_g.push(g);
        }
    }
    let identity: Vec<usize> = (0..names.len()).collect();
    let m = morphisms.len();
    let mut compose: Vec<Vec<Option<usize>>> = vec![vec![None; m]; m];
    for s in 0..m {
        for f in 0..m {
            if morphisms[s].src != morphisms[f].tgt {
                continue;
            }
            let obj = morphisms[f].src;
            let composite = base
                .compose(mor_g[s], mor_g[f])
                .ok_or_else(|| Error::invalid("element category step left the apex"))?;
            compose[s][f] = Some(if base.is_identity_mor(composite) {
                identity[obj]
            } else {
                *pair_index.get(&(obj, composite)).ok_or_else(|| {
                    Error::invalid("element category is not closed under composition")
                })?
            });
        }
    }
    let cat = FinCat::validated(names, morphisms, identity, compose)?;
    Ok((cat, mor_g))
}

/// The category of morphisms out of `d`: objects are arrows d -> c, and a
/// morphism f -> f' is a base arrow g with g after f = f'.
#[derive(Debug, Clone)]
pub struct UnderCat {
    pub cat: FinCat,
    /// Base morphism presented by each object.
    pub object_mor: Vec<usize>,
    /// Base morphism applied by each category morphism.
    pub mor_g: Vec<usize>,
    /// Inverse of object_mor on base morphisms (None off the fiber).
    object_of_mor: Vec<Option<usize>>,
}

impl UnderCat {
    pub fn object_of(&self, base_mor: usize) -> Option<usize> {
        self.object_of_mor[base_mor]
    }
}

pub fn under_category(c: &FinCat, d: usize) -> Result<UnderCat> {
    if d >= c.object_count() {
        return Err(Error::invalid("under category base object out of range"));
    }
    let object_mor: Vec<usize> =
        (0..c.morphism_count()).filter(|&f| c.morphism(f).src == d).collect();
    let names: Vec<String> =
        object_mor.iter().map(|&f| c.morphism(f).name.clone()).collect();
    let apex: Vec<usize> = object_mor.iter().map(|&f| c.morphism(f).tgt).collect();
    let mut object_of_mor = vec![None; c.morphism_count()];
    for (i, &f) in object_mor.iter().enumerate() {
        object_of_mor[f] = Some(i);
    }
    let step = |s: usize, g: usize| -> usize {
        let composite = c.compose(g, object_mor[s]).expect("g leaves the apex of s");
        object_of_mor[composite].expect("composite starts at d")
    };
    let (cat, mor_g) = element_category(c, names, &apex, step)?;
    Ok(UnderCat { cat, object_mor, mor_g, object_of_mor })
}

/// Precomposition with f: d -> d' as a functor (d' under C) -> (d under C).
pub fn under_precompose(c: &FinCat, f: usize) -> Result<FunctorData> {
    let m = c.morphism(f);
    let src_cat = under_category(c, m.tgt)?;
    let tgt_cat = under_category(c, m.src)?;
    let obj_map: Vec<usize> = src_cat
        .object_mor
        .iter()
        .map(|&g| {
            let composite = c.compose(g, f).expect("g starts at the target of f");
            tgt_cat.object_of(composite).expect("composite starts at the source of f")
        })
        .collect();
    let mor_map: Vec<usize> = (0..src_cat.cat.morphism_count())
        .map(|i| {
            let s = src_cat.cat.morphism(i).src;
            let g = src_cat.mor_g[i];
            if src_cat.cat.is_identity_mor(i) {
                tgt_cat.cat.identity_of(obj_map[s])
            } else {
                let name = format!(
                    "{}>{}",
                    tgt_cat.cat.object_name(obj_map[s]),
                    c.morphism(g).name
                );
                tgt_cat.cat.morphism_index(&name).expect("same g applies downstairs")
            }
        })
        .collect();
    FunctorData::new(src_cat.cat, tgt_cat.cat, obj_map, mor_map)
}

/// The comma category of a pair of objects over the diagonal: objects are
/// cospans (f1: d1 -> c, f2: d2 -> c), morphisms are base arrows g with
/// g after f_i = f_i'.
#[derive(Debug, Clone)]
pub struct CommaCat {
    pub cat: FinCat,
    /// (apex, f1, f2) per comma object.
    pub cospans: Vec<(usize, usize, usize)>,
    pub mor_g: Vec<usize>,
}

pub fn comma_over_diagonal(c: &FinCat, d1: usize, d2: usize) -> Result<CommaCat> {
    if d1 >= c.object_count() || d2 >= c.object_count() {
        return Err(Error::invalid("comma category object out of range"));
    }
    let mut cospans: Vec<(usize, usize, usize)> = Vec::new();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    for apex in 0..c.object_count() {
        for f1 in c.hom(d1, apex) {
            for f2 in c.hom(d2, apex) {
                index.insert((f1, f2), cospans.len());
                cospans.push((apex, f1, f2));
                names.push(format!("({},{})", c.morphism(f1).name, c.morphism(f2).name));
            }
        }
    }
    let apexes: Vec<usize> = cospans.iter().map(|&(a, _, _)| a).collect();
    let step = |s: usize, g: usize| -> usize {
        let (_, f1, f2) = cospans[s];
        let g1 = c.compose(g, f1).expect("g leaves the apex");
        let g2 = c.compose(g, f2).expect("g leaves the apex");
        *index.get(&(g1, g2)).expect("cospans are closed under postcomposition")
    };
    let (cat, mor_g) = element_category(c, names, &apexes, step)?;
    Ok(CommaCat { cat, cospans, mor_g })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::predicates::has_initial;
    use crate::corpus::{arrow_cat, reflexive_pair};

    #[test]
    fn under_terminal_is_terminal() {
        let one = FinCat::build(&["*"], &[], &[]).unwrap();
        let u = under_category(&one, 0).unwrap();
        assert_eq!(u.cat.object_count(), 1);
        assert_eq!(u.cat.morphism_count(), 1);
    }

    #[test]
    fn under_arrow_source_has_initial_identity() {
        let c = arrow_cat();
        let u = under_category(&c, 0).unwrap();
        assert_eq!(u.cat.object_count(), 2);
        let init = has_initial(&u.cat).unwrap();
        assert_eq!(u.cat.object_name(init), "id:0");
    }

    #[test]
    fn under_reflexive_pair_counts() {
        let c = reflexive_pair();
        let a = c.object_index("A").unwrap();
        let u = under_category(&c, a).unwrap();
        // Morphisms out of A: id:A, h, k, mh, mk.
        assert_eq!(u.cat.object_count(), 5);
        assert!(u.cat.validate_category().is_empty());
    }

    #[test]
    fn precompose_is_a_functor() {
        let c = reflexive_pair();
        let h = c.morphism_index("h").unwrap();
        let f = under_precompose(&c, h).unwrap();
        assert!(f.validate().is_empty());
        // Objects over B ({id:B, m}) land on their composites with h.
        let src_obj = f.source.object_index("m").unwrap();
        assert_eq!(f.target.object_name(f.apply_obj(src_obj)), "mh");
    }

    #[test]
    fn comma_of_discrete_pair_is_empty() {
        let two = FinCat::build(&["a", "b"], &[], &[]).unwrap();
        let comma = comma_over_diagonal(&two, 0, 1).unwrap();
        assert!(comma.cat.is_empty());
    }

    #[test]
    fn comma_of_reflexive_pair_has_thirteen_objects() {
        let c = reflexive_pair();
        let a = c.object_index("A").unwrap();
        let comma = comma_over_diagonal(&c, a, a).unwrap();
        // 9 cospans into A (3 x 3 endomorphisms) and 4 into B (2 x 2).
        assert_eq!(comma.cat.object_count(), 13);
        assert!(comma.cat.validate_category().is_empty());
    }

    #[test]
    fn comma_of_initial_poset_pair_has_initial() {
        let c = FinCat::poset(&["0", "1"], &[(0, 1)]).unwrap();
        let comma = comma_over_diagonal(&c, 0, 0).unwrap();
        assert_eq!(comma.cat.object_count(), 2);
        assert_eq!(comma.cat.non_identities().len(), 1);
        assert!(has_initial(&comma.cat).is_some());
    }
}
