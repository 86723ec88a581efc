//! A fixed menagerie of small categories for audits and benchmarks.
//!
//! The named constructors build the standard shapes by hand; the seeded
//! constructors derive posets and transformation monoids from a recorded
//! splitmix64 stream so the randomized part of the corpus is reproducible
//! byte for byte, independent of any external random crate's evolution.
//! `standard` assembles both kinds into one deterministically ordered list.
//!
//! `labeled_posets` enumerates every partial order on a small labeled set,
//! which the audit suite filters down to join semilattices.

use crate::fincat::FinCat;

/// The category with no objects.
pub fn empty_cat() -> FinCat {
    FinCat::poset(&[], &[]).expect("empty poset")
}

/// The terminal category: one object, one identity.
pub fn point_cat() -> FinCat {
    FinCat::poset(&["*"], &[]).expect("point poset")
}

/// A discrete category on `n` objects named p0, p1, ...
pub fn discrete_cat(n: usize) -> FinCat {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    FinCat::poset(&refs, &[]).expect("discrete poset")
}

/// The walking arrow: a single morphism `a` from 0 to 1.
pub fn arrow_cat() -> FinCat {
    FinCat::build(&["0", "1"], &[("a", "0", "1")], &[]).expect("arrow category")
}

/// The span shape: b <- a -> c, as the poset a below b and c.
pub fn span_cat() -> FinCat {
    FinCat::poset(&["a", "b", "c"], &[(0, 1), (0, 2)]).expect("span poset")
}

/// The cospan shape: a -> c <- b, as the poset with top c.
pub fn cospan_cat() -> FinCat {
    FinCat::poset(&["a", "b", "c"], &[(0, 2), (1, 2)]).expect("cospan poset")
}

/// Two parallel arrows f, g from 0 to 1, no relations.
pub fn parallel_pair() -> FinCat {
    FinCat::build(&["0", "1"], &[("f", "0", "1"), ("g", "0", "1")], &[]).expect("parallel pair")
}

/// The reflexive pair: h, k from A to B with a common section m, so
/// h m = k m = id. The closure adds the idempotents mh and mk on A.
pub fn reflexive_pair() -> FinCat {
    FinCat::build(
        &["A", "B"],
        &[
            ("h", "A", "B"),
            ("k", "A", "B"),
            ("m", "B", "A"),
            ("mh", "A", "A"),
            ("mk", "A", "A"),
        ],
        &[
            ("h", "m", "id:B"),
            ("k", "m", "id:B"),
            ("m", "h", "mh"),
            ("m", "k", "mk"),
            ("h", "mh", "h"),
            ("h", "mk", "k"),
            ("k", "mh", "h"),
            ("k", "mk", "k"),
            ("mh", "mh", "mh"),
            ("mh", "mk", "mk"),
            ("mk", "mh", "mh"),
            ("mk", "mk", "mk"),
            ("m", "id:B", "m"),
            ("mh", "m", "m"),
            ("mk", "m", "m"),
        ],
    )
    .expect("reflexive pair")
}

/// The linear order with `n` elements c0 < c1 < ... as a category.
pub fn chain_poset(n: usize) -> FinCat {
    let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    FinCat::poset(&refs, &rel).expect("chain poset")
}

/// The four-element Boolean lattice: bot below l and r, both below top.
pub fn diamond_poset() -> FinCat {
    FinCat::poset(&["bot", "l", "r", "top"], &[(0, 1), (0, 2), (1, 3), (2, 3)])
        .expect("diamond poset")
}

/// The pentagon lattice N5: bot < a < top and bot < b < c < top with the
/// two branches incomparable.
pub fn pentagon_poset() -> FinCat {
    FinCat::poset(&["bot", "a", "b", "c", "top"], &[(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)])
        .expect("pentagon poset")
}

/// The three-element fence a <= b >= c, a poset with no bottom and no joins.
pub fn fence_poset() -> FinCat {
    FinCat::poset(&["a", "b", "c"], &[(0, 1), (2, 1)]).expect("fence poset")
}

/// The product of a two-chain and a three-chain: a 2 x 3 grid poset.
pub fn grid_poset() -> FinCat {
    let names = ["00", "01", "02", "10", "11", "12"];
    let mut rel = Vec::new();
    for r in 0..2usize {
        for c in 0..3usize {
            if c + 1 < 3 {
                rel.push((r * 3 + c, r * 3 + c + 1));
            }
            if r == 0 {
                rel.push((c, 3 + c));
            }
        }
    }
    FinCat::poset(&names, &rel).expect("grid poset")
}

/// Three incomparable elements under one common top.
pub fn antichain_with_top() -> FinCat {
    FinCat::poset(&["a", "b", "c", "top"], &[(0, 3), (1, 3), (2, 3)]).expect("antichain with top")
}

/// Three incomparable elements over one common bottom.
pub fn antichain_with_bottom() -> FinCat {
    FinCat::poset(&["bot", "a", "b", "c"], &[(0, 1), (0, 2), (0, 3)])
        .expect("antichain with bottom")
}

/// The cyclic group of order `n` as a one-object category.
pub fn cyclic_group(n: usize) -> FinCat {
    assert!(n >= 1, "a group has at least the unit");
    let names: Vec<String> = (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") }).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FinCat::monoid("x", &refs, 0, &table).expect("cyclic group")
}

/// The walking idempotent: a monoid {e, p} with p p = p.
pub fn idempotent_monoid() -> FinCat {
    FinCat::monoid("x", &["e", "p"], 0, &[vec![0, 1], vec![1, 1]]).expect("idempotent monoid")
}

/// Addition on {0, 1, 2} truncated at 2. Commutative, and absorbing at 2,
/// which makes the one-object category filtered.
pub fn truncated_addition_monoid() -> FinCat {
    let table: Vec<Vec<usize>> =
        (0..3).map(|a| (0..3).map(|b| (a + b).min(2)).collect()).collect();
    FinCat::monoid("x", &["t0", "t1", "t2"], 0, &table).expect("truncated addition")
}

/// The left-zero semigroup on {a, b} with an adjoined unit: x y = x
/// whenever x is not the unit.
pub fn left_zero_monoid() -> FinCat {
    let table = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]];
    FinCat::monoid("x", &["e", "a", "b"], 0, &table).expect("left zero monoid")
}

/// One step of the splitmix64 stream. The constants are the published
/// ones; keeping the generator inline pins the corpus to these exact
/// bytes rather than to a random crate's version history.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A random poset on `n` labeled elements: each pair (i, j) with i < j is
/// related with probability 1/4, then closed transitively. Orienting all
/// candidate edges upward keeps the relation antisymmetric by construction.
pub fn seeded_poset(seed: u64, n: usize) -> FinCat {
    let mut state = seed;
    let names: Vec<String> = (0..n).map(|i| format!("r{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut rel = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if splitmix64(&mut state) & 3 == 0 {
                rel.push((i, j));
            }
        }
    }
    FinCat::poset(&refs, &rel).expect("seeded poset")
}

/// A random transformation monoid: two random self-maps of {0, 1, 2}
/// closed under composition together with the identity. Elements are
/// named by their value tables, so m120 sends 0, 1, 2 to 1, 2, 0.
pub fn seeded_monoid(seed: u64) -> FinCat {
    let mut state = seed;
    let mut draw = || {
        let f: Vec<usize> = (0..3).map(|_| (splitmix64(&mut state) % 3) as usize).collect();
        f
    };
    let mut elements: Vec<Vec<usize>> = vec![vec![0, 1, 2]];
    for f in [draw(), draw()] {
        if !elements.contains(&f) {
            elements.push(f);
        }
    }
    // Close under composition; the order of discovery is deterministic.
    let mut i = 0;
    while i < elements.len() {
        let mut j = 0;
        while j < elements.len() {
            let composed: Vec<usize> = (0..3).map(|v| elements[i][elements[j][v]]).collect();
            if !elements.contains(&composed) {
                elements.push(composed);
            }
            j += 1;
        }
        i += 1;
    }
    let names: Vec<String> =
        elements.iter().map(|f| format!("m{}{}{}", f[0], f[1], f[2])).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    let ab: Vec<usize> = (0..3).map(|v| a[b[v]]).collect();
                    elements.iter().position(|e| e == &ab).expect("closure")
                })
                .collect()
        })
        .collect();
    FinCat::monoid("x", &refs, 0, &table).expect("seeded monoid")
}

/// Seeds for the randomized corpus members. Frozen: audits and reports
/// refer to these categories by name, so the stream must not move.
pub const POSET_SEEDS: [u64; 4] = [11, 12, 13, 14];
/// Seeds for the randomized transformation monoids, chosen so the closures
/// have three, four, and five elements. Closures much past that size make
/// the comma-category nerves in the audits disproportionately expensive.
pub const MONOID_SEEDS: [u64; 3] = [21, 4, 32];

/// The full corpus in a fixed order: named shapes, posets, monoids, then
/// the seeded members. Thirty-five categories in total.
pub fn standard() -> Vec<(String, FinCat)> {
    let mut list: Vec<(String, FinCat)> = vec![
        ("empty".to_string(), empty_cat()),
        ("point".to_string(), point_cat()),
        ("discrete2".to_string(), discrete_cat(2)),
        ("discrete3".to_string(), discrete_cat(3)),
        ("arrow".to_string(), arrow_cat()),
        ("span".to_string(), span_cat()),
        ("cospan".to_string(), cospan_cat()),
        ("parallel_pair".to_string(), parallel_pair()),
        ("reflexive_pair".to_string(), reflexive_pair()),
        ("chain3".to_string(), chain_poset(3)),
        ("chain4".to_string(), chain_poset(4)),
        ("chain5".to_string(), chain_poset(5)),
        ("diamond".to_string(), diamond_poset()),
        ("pentagon".to_string(), pentagon_poset()),
        ("fence".to_string(), fence_poset()),
        ("grid2x3".to_string(), grid_poset()),
        ("antichain_top".to_string(), antichain_with_top()),
        ("antichain_bottom".to_string(), antichain_with_bottom()),
        ("z2".to_string(), cyclic_group(2)),
        ("z3".to_string(), cyclic_group(3)),
        ("z4".to_string(), cyclic_group(4)),
        ("idempotent".to_string(), idempotent_monoid()),
        ("trunc_add".to_string(), truncated_addition_monoid()),
        ("left_zero".to_string(), left_zero_monoid()),
        ("square".to_string(), {
            FinCat::poset(&["00", "01", "10", "11"], &[(0, 1), (0, 2), (1, 3), (2, 3)])
                .expect("square poset")
        }),
        ("wide_span".to_string(), {
            FinCat::poset(&["hub", "a", "b", "c"], &[(0, 1), (0, 2), (0, 3)])
                .expect("wide span")
        }),
        ("two_fences".to_string(), {
            FinCat::poset(&["a", "b", "c", "d"], &[(0, 1), (2, 1), (2, 3)]).expect("zigzag")
        }),
        ("chain2_plus_point".to_string(), {
            FinCat::poset(&["c0", "c1", "p"], &[(0, 1)]).expect("chain plus point")
        }),
    ];
    for seed in POSET_SEEDS {
        list.push((format!("poset_seed{seed}"), seeded_poset(seed, 5)));
    }
    for seed in MONOID_SEEDS {
        list.push((format!("monoid_seed{seed}"), seeded_monoid(seed)));
    }
    list
}

/// Every partial order on `n` labeled elements, as `leq` matrices with
/// `leq[i][j]` meaning i below j. Enumeration assigns each unordered pair
/// one of three states (incomparable, up, down) and keeps the transitive
/// assignments, so antisymmetry holds by construction.
pub fn labeled_posets(n: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut states = vec![0u8; pairs.len()];
    loop {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (p, &(i, j)) in pairs.iter().enumerate() {
            match states[p] {
                1 => leq[i][j] = true,
                2 => leq[j][i] = true,
                _ => {}
            }
        }
        if is_transitive(&leq) {
            out.push(leq);
        }
        // Odometer step over the three states per pair.
        let mut p = 0;
        loop {
            if p == pairs.len() {
                return out;
            }
            states[p] += 1;
            if states[p] < 3 {
                break;
            }
            states[p] = 0;
            p += 1;
        }
    }
}

fn is_transitive(leq: &[Vec<bool>]) -> bool {
    let n = leq.len();
    for i in 0..n {
        for j in 0..n {
            if !leq[i][j] {
                continue;
            }
            for k in 0..n {
                if leq[j][k] && !leq[i][k] {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether every pair of elements has a least upper bound.
pub fn is_join_semilattice(leq: &[Vec<bool>]) -> bool {
    let n = leq.len();
    for a in 0..n {
        for b in 0..n {
            let uppers: Vec<usize> =
                (0..n).filter(|&u| leq[a][u] && leq[b][u]).collect();
            if !uppers.iter().any(|&u| uppers.iter().all(|&v| leq[u][v])) {
                return false;
            }
        }
    }
    true
}

/// Builds the poset category of a `leq` matrix with elements named j0, j1, ...
pub fn poset_from_matrix(leq: &[Vec<bool>]) -> FinCat {
    let n = leq.len();
    let names: Vec<String> = (0..n).map(|i| format!("j{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut rel = Vec::new();
    for (i, row) in leq.iter().enumerate() {
        for (j, &below) in row.iter().enumerate() {
            if i != j && below {
                rel.push((i, j));
            }
        }
    }
    FinCat::poset(&refs, &rel).expect("matrix poset")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_corpus_member_validates() {
        let all = standard();
        assert!(all.len() >= 30, "corpus has {} members", all.len());
        for (name, cat) in &all {
            let report = cat.validate_category();
            assert!(report.is_empty(), "{name}: {report:?}");
        }
        let mut names: Vec<&String> = all.iter().map(|(n, _)| n).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), all.len(), "corpus names repeat");
    }

    #[test]
    fn seeded_members_are_reproducible_and_small() {
        for seed in POSET_SEEDS {
            let a = seeded_poset(seed, 5);
            let b = seeded_poset(seed, 5);
            assert_eq!(a.morphism_count(), b.morphism_count(), "seed {seed} drifted");
        }
        let sizes: Vec<usize> =
            MONOID_SEEDS.iter().map(|&s| seeded_monoid(s).morphism_count()).collect();
        assert_eq!(sizes, vec![3, 4, 5], "monoid closure sizes drifted");
    }

    #[test]
    fn labeled_poset_counts_match_the_literature() {
        // Partial orders on 0 through 4 labeled points: 1, 1, 3, 19, 219.
        assert_eq!(labeled_posets(0).len(), 1);
        assert_eq!(labeled_posets(1).len(), 1);
        assert_eq!(labeled_posets(2).len(), 3);
        assert_eq!(labeled_posets(3).len(), 19);
        assert_eq!(labeled_posets(4).len(), 219);
    }

    #[test]
    fn join_semilattices_have_tops_and_unique_joins() {
        for leq in labeled_posets(4) {
            if !is_join_semilattice(&leq) {
                continue;
            }
            let n = leq.len();
            let tops: Vec<usize> =
                (0..n).filter(|&t| (0..n).all(|a| leq[a][t])).collect();
            assert_eq!(tops.len(), 1, "a finite join semilattice has one top");
            let cat = poset_from_matrix(&leq);
            assert!(cat.validate_category().is_empty());
        }
    }

    #[test]
    fn the_two_element_semilattices_are_the_two_chains() {
        let found = labeled_posets(2)
            .into_iter()
            .filter(|leq| is_join_semilattice(leq))
            .count();
        assert_eq!(found, 2);
    }
}
