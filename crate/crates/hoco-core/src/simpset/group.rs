//! Finite group presentations, abelianization, and budgeted triviality
//! certification by Tietze moves.

use crate::error::Result;
use crate::matrix::{smith_normal_form, IntMat};
use crate::verdict::{Evidence, Verdict};

/// Words are sequences of signed generator letters.
pub type Letter = (usize, i8);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
}

impl GroupPresentation {
    pub fn free_reduce(word: Vec<Letter>) -> Vec<Letter> {
        let mut out: Vec<Letter> = Vec::with_capacity(word.len());
        for l in word {
            match out.last() {
                Some(&(g, s)) if g == l.0 && s == -l.1 => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        out
    }

    fn cyclic_reduce(mut word: Vec<Letter>) -> Vec<Letter> {
        word = Self::free_reduce(word);
        while word.len() >= 2 {
            let first = word[0];
            let last = *word.last().expect("nonempty");
            if first.0 == last.0 && first.1 == -last.1 {
                word.remove(0);
                word.pop();
                word = Self::free_reduce(word);
            } else {
                break;
            }
        }
        word
    }

    fn invert(word: &[Letter]) -> Vec<Letter> {
        word.iter().rev().map(|&(g, s)| (g, -s)).collect()
    }

    /// Free rank and torsion of the abelianized group, from the Smith form
    /// of the exponent-sum matrix.
    pub fn abelianization(&self) -> Result<(usize, Vec<i64>)> {
        let rows = self.generators.len();
        let cols = self.relators.len();
        let mut m = IntMat::zeros(rows, cols);
        for (c, rel) in self.relators.iter().enumerate() {
            for &(g, s) in rel {
                m.set(g, c, m.at(g, c) + i64::from(s));
            }
        }
        let snf = smith_normal_form(&m)?;
        let free_rank = rows - snf.rank;
        let torsion = snf.invariants().into_iter().filter(|d| *d > 1).collect();
        Ok((free_rank, torsion))
    }

    /// Certifies the presented group trivial by eliminating generators that
    /// occur exactly once in some relator. Refutes when the abelianization
    /// is already nonzero; anything else within budget is inconclusive.
    pub fn tietze_trivial(&self, budget: usize) -> Result<Verdict> {
        let (free_rank, torsion) = self.abelianization()?;
        if free_rank > 0 || !torsion.is_empty() {
            return Ok(Verdict::Refuted {
                witness: Evidence::Pi1Nontrivial { free_rank, torsion },
            });
        }

        let mut alive: Vec<bool> = vec![true; self.generators.len()];
        let mut relators: Vec<Vec<Letter>> = self
            .relators
            .iter()
            .map(|r| Self::cyclic_reduce(r.clone()))
            .collect();
        relators.retain(|r| !r.is_empty());
        let mut moves = 0usize;

        loop {
            if relators.is_empty() {
                // Trivial abelianization rules out leftover free generators.
                debug_assert!(alive.iter().all(|a| !a) || self.generators.is_empty());
                return Ok(Verdict::Certified {
                    level: 0,
                    evidence: vec![Evidence::Pi1Trivialized { moves }],
                });
            }
            if moves >= budget {
                return Ok(Verdict::Inconclusive {
                    reason: format!("tietze budget {budget} exhausted"),
                });
            }

            // A generator occurring exactly once across one relator can be
            // solved for and eliminated.
            let mut pick: Option<(usize, usize)> = None; // (relator, position)
            'outer: for (ri, rel) in relators.iter().enumerate() {
                let mut counts: Vec<(usize, usize)> = Vec::new();
                for &(g, _) in rel {
                    match counts.iter_mut().find(|(h, _)| *h == g) {
                        Some((_, n)) => *n += 1,
                        None => counts.push((g, 1)),
                    }
                }
                for (pos, &(g, _)) in rel.iter().enumerate() {
                    let n = counts.iter().find(|(h, _)| *h == g).map_or(0, |(_, n)| *n);
                    if n == 1 {
                        pick = Some((ri, pos));
                        break 'outer;
                    }
                }
            }

            let Some((ri, pos)) = pick else {
                return Ok(Verdict::Inconclusive {
                    reason: "no eliminable generator within move repertoire".to_string(),
                });
            };

            let rel = relators.swap_remove(ri);
            let (g, s) = rel[pos];
            // Rotate so the chosen letter leads: g^s w = 1.
            let mut rot: Vec<Letter> = Vec::with_capacity(rel.len());
            rot.extend_from_slice(&rel[pos..]);
            rot.extend_from_slice(&rel[..pos]);
            let w = rot[1..].to_vec();
            // g^s = w^-1, so g = w^-1 when s = 1, and g = w when s = -1.
            let value: Vec<Letter> = if s == 1 { Self::invert(&w) } else { w };
            alive[g] = false;
            moves += 1;

            let mut next: Vec<Vec<Letter>> = Vec::with_capacity(relators.len());
            let mut length_guard = 0usize;
            for r in relators.drain(..) {
                let mut subst: Vec<Letter> = Vec::with_capacity(r.len());
                let mut touched = false;
                for &(h, t) in &r {
                    if h == g {
                        touched = true;
                        if t == 1 {
                            subst.extend_from_slice(&value);
                        } else {
                            subst.extend(Self::invert(&value));
                        }
                    } else {
                        subst.push((h, t));
                    }
                }
                if touched {
                    moves += 1;
                }
                let subst = Self::cyclic_reduce(subst);
                length_guard += subst.len();
                if !subst.is_empty() {
                    next.push(subst);
                }
            }
            if length_guard > budget.saturating_mul(8) {
                return Ok(Verdict::Inconclusive {
                    reason: format!("relator growth exceeded budget {budget}"),
                });
            }
            relators = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(gens: usize, relators: Vec<Vec<Letter>>) -> GroupPresentation {
        GroupPresentation {
            generators: (0..gens).map(|i| format!("g{i}")).collect(),
            relators,
        }
    }

    #[test]
    fn free_group_is_refuted() {
        let p = pres(1, vec![]);
        let v = p.tietze_trivial(100).unwrap();
        match v {
            Verdict::Refuted { witness: Evidence::Pi1Nontrivial { free_rank, .. } } => {
                assert_eq!(free_rank, 1)
            }
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn single_killed_generator_certifies() {
        let p = pres(1, vec![vec![(0, 1)]]);
        assert!(p.tietze_trivial(100).unwrap().is_certified());
    }

    #[test]
    fn order_two_is_refuted_by_torsion() {
        let p = pres(1, vec![vec![(0, 1), (0, 1)]]);
        match p.tietze_trivial(100).unwrap() {
            Verdict::Refuted { witness: Evidence::Pi1Nontrivial { torsion, .. } } => {
                assert_eq!(torsion, vec![2])
            }
            other => panic!("expected torsion refutation, got {other:?}"),
        }
    }

    #[test]
    fn cascading_elimination() {
        // <a, b | a b, b> is trivial after two eliminations.
        let p = pres(2, vec![vec![(0, 1), (1, 1)], vec![(1, 1)]]);
        let v = p.tietze_trivial(100).unwrap();
        assert!(v.is_certified(), "got {v:?}");
    }

    #[test]
    fn perfect_group_is_inconclusive() {
        // <a, b | (ab)^2 a^-3, a^3 b^-5>: trivial abelianization, no letter
        // occurs exactly once, so the bounded repertoire cannot decide.
        let r1 = vec![(0, 1), (1, 1), (0, 1), (1, 1), (0, -1), (0, -1), (0, -1)];
        let r2 = vec![(0, 1), (0, 1), (0, 1), (1, -1), (1, -1), (1, -1), (1, -1), (1, -1)];
        let p = pres(2, vec![r1, r2]);
        assert!(p.tietze_trivial(1000).unwrap().is_inconclusive());
    }

    #[test]
    fn budget_exhaustion_reports_inconclusive() {
        let p = pres(2, vec![vec![(0, 1), (1, 1)], vec![(1, 1)]]);
        let v = p.tietze_trivial(0).unwrap();
        assert!(v.is_inconclusive());
    }

    #[test]
    fn commutator_relator_refutes_via_free_abelianization() {
        let p = pres(2, vec![vec![(0, 1), (1, 1), (0, -1), (1, -1)]]);
        match p.tietze_trivial(100).unwrap() {
            Verdict::Refuted { witness: Evidence::Pi1Nontrivial { free_rank, torsion } } => {
                assert_eq!(free_rank, 2);
                assert!(torsion.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
