//! Certified decision procedures for siftedness and homotopy siftedness.
//!
//! Siftedness of a finite category is decided exactly: the category must be
//! nonempty and every comma category over the diagonal nonempty and
//! connected, which is finality of the diagonal functor. Homotopy siftedness
//! asks those commas to be aspherical, which truncated data can only certify
//! up to a level: each comma nerve is checked for connectivity, vanishing
//! reduced homology through the level, and Tietze-certified trivial
//! fundamental group. A simply connected complex with vanishing homology
//! through degree n is n-connected by the Hurewicz theorem, so `Certified(n)`
//! is sound; it never claims full asphericality.

use crate::error::Result;
use crate::exec;
use crate::fincat::{comma_over_diagonal, has_initial, has_terminal, nerve, FinCat};
use crate::verdict::{Evidence, Verdict};
use crate::weq::certify_contractible;

/// Default certification level; separates homotopy-sifted shapes from merely
/// sifted ones on the standard examples.
pub const DEFAULT_LEVEL: usize = 2;
/// Default move budget for the fundamental-group reduction.
pub const DEFAULT_TIETZE_BUDGET: usize = 10_000;

/// Why a category fails to be sifted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SiftedFailure {
    Empty,
    EmptyComma { pair: (String, String) },
    DisconnectedComma { pair: (String, String), components: usize },
}

/// Outcome of the exact siftedness decision, with a concrete witness on
/// failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Siftedness {
    pub holds: bool,
    pub failure: Option<SiftedFailure>,
}

/// Decides siftedness: the category is nonempty and every comma category
/// over the diagonal is nonempty and connected. Exact, no budget involved.
pub fn is_sifted(c: &FinCat) -> Result<Siftedness> {
    if c.object_count() == 0 {
        return Ok(Siftedness { holds: false, failure: Some(SiftedFailure::Empty) });
    }
    let nb = c.object_count();
    let checks = exec::try_map_range(nb * nb, |idx| {
        let (d1, d2) = (idx / nb, idx % nb);
        let comma = comma_over_diagonal(c, d1, d2)?;
        let pair = || (c.object_name(d1).to_string(), c.object_name(d2).to_string());
        if comma.cat.object_count() == 0 {
            return Ok(Some(SiftedFailure::EmptyComma { pair: pair() }));
        }
        let components = category_components(&comma.cat);
        if components != 1 {
            return Ok(Some(SiftedFailure::DisconnectedComma { pair: pair(), components }));
        }
        Ok(None)
    })?;
    match checks.into_iter().flatten().next() {
        Some(failure) => Ok(Siftedness { holds: false, failure: Some(failure) }),
        None => Ok(Siftedness { holds: true, failure: None }),
    }
}

/// Bounded certificate that the nerve of `c` is weakly contractible.
///
/// An initial or terminal object certifies immediately at any level, since
/// either one contracts the nerve. Otherwise the nerve truncated at `n + 1`
/// is checked for connectivity, vanishing reduced homology through degree
/// `n`, and a trivializable fundamental-group presentation within `budget`.
pub fn aspherical_certificate(c: &FinCat, n: usize, budget: usize) -> Result<Verdict> {
    if let Some(obj) = has_initial(c) {
        return Ok(Verdict::Certified {
            level: n,
            evidence: vec![Evidence::InitialObject { object: c.object_name(obj).to_string() }],
        });
    }
    if let Some(obj) = has_terminal(c) {
        return Ok(Verdict::Certified {
            level: n,
            evidence: vec![Evidence::TerminalObject { object: c.object_name(obj).to_string() }],
        });
    }
    let nerve = nerve(c, n + 1)?;
    certify_contractible(&nerve.sset, n, budget)
}

/// Bounded certificate for homotopy siftedness: every comma category over
/// the diagonal must certify aspherical at level `n`. Certificates for the
/// object pairs are computed independently (and in parallel when enabled);
/// the verdict is assembled in pair order, so the outcome is deterministic.
pub fn homotopy_sifted(c: &FinCat, n: usize, budget: usize) -> Result<Verdict> {
    if c.object_count() == 0 {
        return Ok(Verdict::Refuted { witness: Evidence::Empty { what: "category".to_string() } });
    }
    let nb = c.object_count();
    let pairs = exec::try_map_range(nb * nb, |idx| {
        let (d1, d2) = (idx / nb, idx % nb);
        let comma = comma_over_diagonal(c, d1, d2)?;
        let verdict = aspherical_certificate(&comma.cat, n, budget)?;
        Ok((c.object_name(d1).to_string(), c.object_name(d2).to_string(), verdict))
    })?;
    let refuted: Vec<_> = pairs.iter().filter(|(_, _, v)| v.is_refuted()).cloned().collect();
    if !refuted.is_empty() {
        return Ok(Verdict::Refuted { witness: Evidence::PerPair { pairs: refuted } });
    }
    if let Some((d1, d2, v)) = pairs.iter().find(|(_, _, v)| v.is_inconclusive()) {
        return Ok(Verdict::Inconclusive { reason: format!("comma ({d1},{d2}): {v}") });
    }
    Ok(Verdict::Certified { level: n, evidence: vec![Evidence::PerPair { pairs }] })
}

/// Connected components of a category, treating every morphism as an edge.
fn category_components(c: &FinCat) -> usize {
    let n = c.object_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for m in 0..c.morphism_count() {
        let (a, b) = (c.morphism(m).src, c.morphism(m).tgt);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{arrow_cat, reflexive_pair};
    use crate::fincat::{diagonal, is_final_functor, FinCat};

    fn join_poset() -> FinCat {
        FinCat::poset(&["0", "1"], &[(0, 1)]).unwrap()
    }

    fn discrete2() -> FinCat {
        FinCat::build(&["a", "b"], &[], &[]).unwrap()
    }

    #[test]
    fn reflexive_pair_is_sifted() {
        let s = is_sifted(&reflexive_pair()).unwrap();
        assert!(s.holds);
        assert_eq!(s.failure, None);
    }

    #[test]
    fn discrete_two_objects_is_not_sifted() {
        let s = is_sifted(&discrete2()).unwrap();
        assert!(!s.holds);
        assert_eq!(
            s.failure,
            Some(SiftedFailure::EmptyComma { pair: ("a".to_string(), "b".to_string()) })
        );
    }

    #[test]
    fn join_poset_is_sifted() {
        assert!(is_sifted(&join_poset()).unwrap().holds);
    }

    #[test]
    fn empty_category_is_not_sifted() {
        let empty = FinCat::build(&[], &[], &[]).unwrap();
        let s = is_sifted(&empty).unwrap();
        assert_eq!(s.failure, Some(SiftedFailure::Empty));
    }

    #[test]
    fn siftedness_agrees_with_diagonal_finality() {
        for c in [reflexive_pair(), arrow_cat(), join_poset(), discrete2()] {
            let direct = is_sifted(&c).unwrap().holds;
            let via_finality = is_final_functor(&diagonal(&c).unwrap());
            assert_eq!(direct, via_finality, "category {:?}", c.object_name(0));
        }
    }

    #[test]
    fn initial_object_shortcut_certifies() {
        let v = aspherical_certificate(&arrow_cat(), 3, 1).unwrap();
        assert_eq!(
            v,
            Verdict::Certified {
                level: 3,
                evidence: vec![Evidence::InitialObject { object: "0".to_string() }],
            }
        );
    }

    #[test]
    fn empty_category_is_refuted_aspherical() {
        let empty = FinCat::build(&[], &[], &[]).unwrap();
        let v = aspherical_certificate(&empty, 2, DEFAULT_TIETZE_BUDGET).unwrap();
        assert!(v.is_refuted());
    }

    #[test]
    fn reflexive_pair_comma_aa_fails_asphericity_by_level_two() {
        // The comma over the diagonal at (A,A) has 13 objects and its nerve
        // is connected with first homology Z^2 (two independent loops from
        // the h/k choices in the two legs), so asphericity dies at degree 1.
        let rp = reflexive_pair();
        let comma = comma_over_diagonal(&rp, 0, 0).unwrap();
        assert_eq!(comma.cat.object_count(), 13);
        let v = aspherical_certificate(&comma.cat, 2, DEFAULT_TIETZE_BUDGET).unwrap();
        assert_eq!(
            v.witness(),
            Some(&Evidence::HomologyNonzero { degree: 1, free_rank: 2, torsion: vec![] })
        );
    }

    #[test]
    fn reflexive_pair_is_not_homotopy_sifted() {
        let v = homotopy_sifted(&reflexive_pair(), 2, DEFAULT_TIETZE_BUDGET).unwrap();
        match v.witness() {
            Some(Evidence::PerPair { pairs }) => {
                assert_eq!(pairs[0].0, "A");
                assert_eq!(pairs[0].1, "A");
                assert!(pairs[0].2.is_refuted());
            }
            other => panic!("expected per-pair witness, got {other:?}"),
        }
    }

    #[test]
    fn join_poset_is_homotopy_sifted() {
        let v = homotopy_sifted(&join_poset(), 3, DEFAULT_TIETZE_BUDGET).unwrap();
        assert_eq!(v.certified_level(), Some(3));
    }

    #[test]
    fn terminal_object_gives_homotopy_siftedness() {
        let v = homotopy_sifted(&arrow_cat(), 3, DEFAULT_TIETZE_BUDGET).unwrap();
        assert_eq!(v.certified_level(), Some(3));
    }

    #[test]
    fn empty_category_is_refuted_homotopy_sifted() {
        let empty = FinCat::build(&[], &[], &[]).unwrap();
        let v = homotopy_sifted(&empty, 2, DEFAULT_TIETZE_BUDGET).unwrap();
        assert_eq!(
            v.witness(),
            Some(&Evidence::Empty { what: "category".to_string() })
        );
    }

    #[test]
    fn certified_levels_are_monotone_on_join_poset() {
        for k in 0..=3 {
            let v = homotopy_sifted(&join_poset(), k, DEFAULT_TIETZE_BUDGET).unwrap();
            assert_eq!(v.certified_level(), Some(k));
        }
    }
}
