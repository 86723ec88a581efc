//! Bounded certification of contractibility and weak equivalences.
//!
//! Truncated data cannot see invariants above its level, so every positive
//! answer is a leveled certificate: `Certified(n)` accounts for path
//! components, integral homology through degree `n`, and (for n >= 1) a
//! Tietze reduction of the fundamental-group presentation to the empty one.
//! Refutations quote a concrete invariant mismatch that independent code can
//! recompute. Maps between spaces whose fundamental groups resist reduction
//! come back `Inconclusive` rather than optimistically certified.

use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, IntMat};
use crate::simpset::homology::{degree_data, DegreeData};
use crate::simpset::{pi0, pi1_presentation, HomologyGroup, SimplicialMap, TruncatedSSet};
use crate::verdict::{Evidence, Verdict};

/// Certifies that `x` is weakly contractible through level `n`.
///
/// `Certified(n)` requires a nonempty connected complex, vanishing reduced
/// homology in degrees 1 through `n`, and (when `n >= 1`) a fundamental-group
/// presentation that Tietze moves reduce to the empty one within `budget`.
/// Level 0 certifies connectivity alone. Refutations carry the failing
/// invariant; `Inconclusive` arises only from the group-theoretic step.
pub fn certify_contractible(x: &TruncatedSSet, n: usize, budget: usize) -> Result<Verdict> {
    if n + 1 > x.trunc_level() {
        return Err(Error::InsufficientTruncation { needed: n + 1, have: x.trunc_level() });
    }
    if x.is_empty() {
        return Ok(Verdict::Refuted { witness: Evidence::Empty { what: "cell set".to_string() } });
    }
    let parts = pi0(x);
    if parts.count != 1 {
        return Ok(Verdict::Refuted {
            witness: Evidence::NotConnected { components: parts.count },
        });
    }
    // Ascending degrees, stopping at the first failure: low degrees are far
    // cheaper than high ones, and a refutation should never pay for boundary
    // matrices above the degree that witnesses it.
    for k in 1..=n {
        let g = degree_data(x, k)?.group();
        if !g.is_trivial() {
            return Ok(Verdict::Refuted {
                witness: Evidence::HomologyNonzero {
                    degree: k,
                    free_rank: g.free_rank,
                    torsion: g.torsion,
                },
            });
        }
    }
    let mut evidence = vec![Evidence::HomologyVanishes { through_degree: n }];
    if n >= 1 {
        match pi1_presentation(x, 0)?.tietze_trivial(budget)? {
            Verdict::Certified { evidence: pi1_evidence, .. } => evidence.extend(pi1_evidence),
            Verdict::Refuted { witness } => return Ok(Verdict::Refuted { witness }),
            Verdict::Inconclusive { reason } => return Ok(Verdict::Inconclusive { reason }),
        }
    }
    Ok(Verdict::Certified { level: n, evidence })
}

/// Certifies that `f` is a weak equivalence through level `n`.
///
/// Strict isomorphisms certify immediately. Otherwise the procedure checks
/// that `f` induces a bijection on path components and an isomorphism on
/// integral homology in each degree up to `n`, and (when `n >= 1`) that the
/// fundamental group of every matched component certifies trivial on both
/// sides. Maps between spaces with nontrivial fundamental groups are
/// `Inconclusive` when everything else matches: equality of homology does not
/// decide a fundamental-group isomorphism, and the procedure never guesses.
pub fn certify_weq(f: &SimplicialMap, n: usize, budget: usize) -> Result<Verdict> {
    let have = f.source().trunc_level().min(f.target().trunc_level());
    if n + 1 > have {
        return Err(Error::InsufficientTruncation { needed: n + 1, have });
    }
    if f.is_isomorphism() {
        return Ok(Verdict::Certified {
            level: n,
            evidence: vec![Evidence::Note { text: "isomorphism of simplicial sets".to_string() }],
        });
    }
    let px = pi0(f.source());
    let py = pi0(f.target());
    if px.count != py.count {
        return Ok(Verdict::Refuted {
            witness: Evidence::Pi0Mismatch { source: px.count, target: py.count },
        });
    }
    // With equal finite counts the induced component map is a bijection
    // exactly when it is injective.
    let reps = px.representatives();
    let mut preimage = vec![usize::MAX; py.count];
    for (c, &rep) in reps.iter().enumerate() {
        let target_c = py.component[f.assignment(0, rep).base];
        if preimage[target_c] != usize::MAX {
            return Ok(Verdict::Refuted {
                witness: Evidence::HomologyMapNotIso {
                    degree: 0,
                    reason: format!(
                        "component map not injective: source components {} and {c} share target component {target_c}",
                        preimage[target_c]
                    ),
                },
            });
        }
        preimage[target_c] = c;
    }
    for k in 1..=n {
        if let Some(witness) = homology_map_witness(f, k)? {
            return Ok(Verdict::Refuted { witness });
        }
    }
    let mut evidence = vec![Evidence::HomologyMapIso { through_degree: n }];
    if n >= 1 {
        let mut moves = 0usize;
        for (c, &rep) in reps.iter().enumerate() {
            let source_side = pi1_presentation(f.source(), rep)?.tietze_trivial(budget)?;
            let target_side =
                pi1_presentation(f.target(), f.assignment(0, rep).base)?.tietze_trivial(budget)?;
            for (side, verdict) in [("source", source_side), ("target", target_side)] {
                match verdict {
                    Verdict::Certified { evidence: ev, .. } => {
                        for e in ev {
                            if let Evidence::Pi1Trivialized { moves: m } = e {
                                moves += m;
                            }
                        }
                    }
                    other => {
                        return Ok(Verdict::Inconclusive {
                            reason: format!(
                                "fundamental group of {side} component {c} not certified trivial: {other}"
                            ),
                        });
                    }
                }
            }
        }
        evidence.push(Evidence::Pi1Trivialized { moves });
    }
    Ok(Verdict::Certified { level: n, evidence })
}

/// Matrix of `f` in degree `k` on normalized chain complexes: a cell
/// contributes its image's base when the image is non-degenerate and nothing
/// otherwise.
fn chain_matrix(f: &SimplicialMap, k: usize) -> IntMat {
    let rows = f.target().cell_count(k);
    let cols = f.source().cell_count(k);
    let mut m = IntMat::zeros(rows, cols);
    for c in 0..cols {
        let img = f.assignment(k, c);
        if img.word.is_empty() {
            m.set(img.base, c, 1);
        }
    }
    m
}

/// Witness that the induced map on H_k is not an isomorphism, or `None` when
/// it is one. The check is global rather than per component; the map respects
/// the component matching, so the induced matrix is block-diagonal and the
/// global cokernel vanishes exactly when each componentwise one does.
fn homology_map_witness(f: &SimplicialMap, k: usize) -> Result<Option<Evidence>> {
    let dx = degree_data(f.source(), k)?;
    let dy = degree_data(f.target(), k)?;
    let gx = dx.group();
    let gy = dy.group();
    if gx != gy {
        return Ok(Some(Evidence::HomologyMapNotIso {
            degree: k,
            reason: format!("groups differ: {gx} vs {gy}"),
        }));
    }
    if gx.is_trivial() {
        return Ok(None);
    }
    if let Some(coker) = induced_map_cokernel(f, k, &dx, &dy)? {
        return Ok(Some(Evidence::HomologyMapNotIso {
            degree: k,
            reason: format!("cokernel of the induced map is {coker}"),
        }));
    }
    // Equal invariant factors plus surjectivity force injectivity, because
    // finitely generated abelian groups are Hopfian.
    Ok(None)
}

/// Cokernel of the induced map on H_k, or `None` when the map is onto.
///
/// The induced map is expressed on cycle lattices in kernel coordinates; it
/// is onto exactly when its image together with the target boundaries spans
/// the whole target cycle lattice, which the Smith form of the stacked
/// matrix decides.
fn induced_map_cokernel(
    f: &SimplicialMap,
    k: usize,
    dx: &DegreeData,
    dy: &DegreeData,
) -> Result<Option<HomologyGroup>> {
    let cycles = chain_matrix(f, k).mul(&dx.kernel_matrix())?;
    let mut induced = IntMat::zeros(dy.kernel_rank, dx.kernel_rank);
    for j in 0..dx.kernel_rank {
        let coords = dy.cycle_coords(&cycles.column(j))?;
        for (i, v) in coords.into_iter().enumerate() {
            induced.set(i, j, v);
        }
    }
    let spanned = smith_normal_form(&induced.hstack(&dy.b)?)?;
    if spanned.rank == dy.kernel_rank && spanned.invariants().iter().all(|&d| d == 1) {
        return Ok(None);
    }
    let torsion = spanned.invariants().into_iter().filter(|d| *d > 1).collect();
    Ok(Some(HomologyGroup { free_rank: dy.kernel_rank - spanned.rank, torsion }))
}
