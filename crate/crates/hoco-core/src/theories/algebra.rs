//! Algebras over presented theories and the homotopy-algebra condition.
//!
//! An algebra assigns a carrier to every power object and simplicial maps
//! to the generators: projection actions per object, one map per operation
//! generator, and one homotopy per homotopy generator. Functoriality on the
//! generators is verified at construction: the identity projection acts as
//! the identity, and the two ends of each homotopy action agree with the
//! evaluated boundary composites.
//!
//! Evaluation of composite terms needs honest tupling, so it is defined
//! when the carriers at power objects are literally iterated products of
//! the base carrier with the canonical projections. Carriers that are not
//! strict in this sense are exactly what `check_homotopy_algebra` is for:
//! the comparison map from the carrier into the freshly built power is
//! certified as a weak equivalence instead of being assumed an identity.

use crate::error::{Error, Result};
use crate::exec;
use crate::simpset::{
    constant_map, monotone_tuple_ref, pairing, product, standard_simplex, DegenerateRef, Product,
    SimplicialMap, TruncatedSSet,
};
use crate::theories::theory::{validate_theory, EnrichedTheory, Term};
use crate::verdict::{Evidence, Verdict};
use crate::weq::certify_weq;

/// A validated algebra over a presented theory.
///
/// Construction checks carrier truncations, every generator action's
/// endpoints, that the designated identity projection acts as the identity,
/// and that each homotopy action restricts on the interval ends to the
/// evaluated boundary composites of its generator.
#[derive(Debug)]
pub struct AlgebraData {
    pub theory: EnrichedTheory,
    pub carriers: Vec<TruncatedSSet>,
    pub projection_actions: Vec<Vec<SimplicialMap>>,
    pub op_actions: Vec<SimplicialMap>,
    pub cell_actions: Vec<SimplicialMap>,
    var_actions: Vec<Vec<SimplicialMap>>,
    strict_point: bool,
    strict_products: Vec<Option<Product>>,
}

impl AlgebraData {
    pub fn new(
        theory: EnrichedTheory,
        carriers: Vec<TruncatedSSet>,
        projection_actions: Vec<Vec<SimplicialMap>>,
        op_actions: Vec<SimplicialMap>,
        cell_actions: Vec<SimplicialMap>,
    ) -> Result<AlgebraData> {
        let report = validate_theory(&theory);
        if !report.is_empty() {
            return Err(Error::invalid(format!("theory does not validate: {}", report.join("; "))));
        }
        let cap = theory.arity_cap;
        let trunc = theory.trunc;
        if carriers.len() != cap + 1 {
            return Err(Error::mismatch(format!(
                "{} carriers for {} objects",
                carriers.len(),
                cap + 1
            )));
        }
        for (n, c) in carriers.iter().enumerate() {
            if c.trunc_level() != trunc {
                return Err(Error::mismatch(format!(
                    "carrier at X{n} truncated at {}, theory at {trunc}",
                    c.trunc_level()
                )));
            }
        }
        if projection_actions.len() != cap + 1 {
            return Err(Error::mismatch("projection table length".to_string()));
        }
        for (n, row) in projection_actions.iter().enumerate() {
            if row.len() != n {
                return Err(Error::mismatch(format!(
                    "X{n} carries {} projection actions, expected {n}",
                    row.len()
                )));
            }
            for (i, p) in row.iter().enumerate() {
                if p.source() != &carriers[n] || p.target() != &carriers[1] {
                    return Err(Error::mismatch(format!(
                        "projection action {i} of X{n} has the wrong endpoints"
                    )));
                }
            }
        }
        if cap >= 1 && projection_actions[1][0] != SimplicialMap::identity(&carriers[1]) {
            return Err(Error::invalid(
                "the projection of X1 is the identity morphism, so its action must be the identity map",
            ));
        }
        if op_actions.len() != theory.ops.len() {
            return Err(Error::mismatch("one action per operation generator".to_string()));
        }
        for (g, act) in op_actions.iter().enumerate() {
            let arity = theory.ops[g].arity;
            if act.source() != &carriers[arity] || act.target() != &carriers[1] {
                return Err(Error::mismatch(format!(
                    "action of operation {} must map the carrier at X{arity} to the base carrier",
                    theory.ops[g].name
                )));
            }
        }
        if cell_actions.len() != theory.cells.len() {
            return Err(Error::mismatch("one action per homotopy generator".to_string()));
        }
        for (c, act) in cell_actions.iter().enumerate() {
            let cell = &theory.cells[c];
            let interval = standard_simplex(1, trunc);
            let pr = product(&carriers[cell.arity], &interval)?;
            if act.source() != pr.sset() || act.target() != &carriers[1] {
                return Err(Error::mismatch(format!(
                    "action of homotopy generator {} must map carrier(X{}) x interval to the base carrier",
                    cell.name, cell.arity
                )));
            }
        }

        // The action of a variable is the action of whichever designated
        // projection names it; a valid theory makes this a bijection.
        let mut var_actions: Vec<Vec<SimplicialMap>> = Vec::with_capacity(cap + 1);
        for n in 0..=cap {
            let mut row: Vec<Option<SimplicialMap>> = vec![None; n];
            for (i, p) in theory.projections[n].iter().enumerate() {
                if let Term::Var(v) = p {
                    row[*v] = Some(projection_actions[n][i].clone());
                }
            }
            var_actions.push(row.into_iter().map(|m| m.expect("validated projections")).collect());
        }

        let strict_point = carriers[0] == standard_simplex(0, trunc);
        let mut strict_products: Vec<Option<Product>> = (0..=cap).map(|_| None).collect();
        if cap >= 1 {
            let base = carriers[1].clone();
            let mut prev = vec![SimplicialMap::identity(&base)];
            for n in 2..=cap {
                let p = product(&base, &carriers[n - 1])?;
                if carriers[n] != *p.sset() {
                    break;
                }
                let mut projs = vec![p.proj_left().clone()];
                for q in &prev {
                    projs.push(q.compose(p.proj_right())?);
                }
                if projection_actions[n] != projs {
                    break;
                }
                strict_products[n] = Some(p);
                prev = projs;
            }
        }

        let algebra = AlgebraData {
            theory,
            carriers,
            projection_actions,
            op_actions,
            cell_actions,
            var_actions,
            strict_point,
            strict_products,
        };
        for c in 0..algebra.theory.cells.len() {
            let name = algebra.theory.cells[c].name.clone();
            let (end0, end1) = algebra.cell_ends(c)?;
            let (src, tgt) = algebra.cell_boundary_composites(c).map_err(|e| {
                Error::invalid(format!(
                    "cannot verify the boundary of homotopy generator {name}: {e}"
                ))
            })?;
            if end0 != src {
                return Err(Error::mismatch(format!(
                    "the source end of homotopy generator {name} does not interpret its boundary term"
                )));
            }
            if end1 != tgt {
                return Err(Error::mismatch(format!(
                    "the target end of homotopy generator {name} does not interpret its boundary term"
                )));
            }
        }
        Ok(algebra)
    }

    /// Evaluates a vertex term over `n` variables as a map from the carrier
    /// at `X_n` to the base carrier. Composite terms tuple their arguments,
    /// which is only defined over carriers detected as strict products.
    pub fn eval_vertex_term(&self, n: usize, t: &Term) -> Result<SimplicialMap> {
        self.theory.term_ok(t, n, 0).map_err(Error::invalid)?;
        self.eval_rec(n, t)
    }

    fn eval_rec(&self, n: usize, t: &Term) -> Result<SimplicialMap> {
        match t {
            Term::Var(v) => Ok(self.var_actions[n][*v].clone()),
            Term::Op(g, args) => {
                let legs: Vec<SimplicialMap> =
                    args.iter().map(|a| self.eval_rec(n, a)).collect::<Result<_>>()?;
                let tup = self.tuple_map(n, &legs)?;
                self.op_actions[*g].compose(&tup)
            }
            Term::Cell { .. } => {
                Err(Error::invalid("a homotopy node is not a vertex term".to_string()))
            }
        }
    }

    /// Pairs maps `carrier(X_n) -> base` into the strict carrier at the
    /// tuple's length.
    fn tuple_map(&self, n: usize, legs: &[SimplicialMap]) -> Result<SimplicialMap> {
        match legs.len() {
            0 => {
                if !self.strict_point {
                    return Err(Error::invalid(
                        "carrier at X0 is not the point, so constants cannot be tupled",
                    ));
                }
                constant_map(&self.carriers[n], &self.carriers[0], 0)
            }
            1 => Ok(legs[0].clone()),
            r => {
                let p = self.strict_products[r].as_ref().ok_or_else(|| {
                    Error::invalid(format!(
                        "carrier at X{r} is not the strict product of the base carrier, so composites cannot be evaluated"
                    ))
                })?;
                let rest = self.tuple_map(n, &legs[1..])?;
                pairing(&legs[0], &rest, p)
            }
        }
    }

    /// The two restrictions of a homotopy action to the interval ends:
    /// vertex 0 is the source end and vertex 1 the target end.
    pub fn cell_ends(&self, c: usize) -> Result<(SimplicialMap, SimplicialMap)> {
        let arity = self.theory.cells[c].arity;
        let interval = standard_simplex(1, self.theory.trunc);
        let pr = product(&self.carriers[arity], &interval)?;
        let id = SimplicialMap::identity(&self.carriers[arity]);
        let mut ends = Vec::with_capacity(2);
        for v in 0..=1 {
            let at = pairing(&id, &constant_map(&self.carriers[arity], &interval, v)?, &pr)?;
            ends.push(self.cell_actions[c].compose(&at)?);
        }
        let end1 = ends.pop().expect("two ends");
        let end0 = ends.pop().expect("two ends");
        Ok((end0, end1))
    }

    /// The evaluated boundary composites of a homotopy generator, in the
    /// order (source, target).
    pub fn cell_boundary_composites(&self, c: usize) -> Result<(SimplicialMap, SimplicialMap)> {
        let cell = &self.theory.cells[c];
        let src = self.eval_vertex_term(cell.arity, &cell.source)?;
        let tgt = self.eval_vertex_term(cell.arity, &cell.target)?;
        Ok((src, tgt))
    }

    /// Whether the homotopy action is the degenerate edge on a vertex of
    /// the mapping space, i.e. constant along the interval.
    pub fn cell_witness_is_degenerate(&self, c: usize) -> Result<bool> {
        let arity = self.theory.cells[c].arity;
        let interval = standard_simplex(1, self.theory.trunc);
        let pr = product(&self.carriers[arity], &interval)?;
        let (end0, end1) = self.cell_ends(c)?;
        if end0 != end1 {
            return Ok(false);
        }
        Ok(self.cell_actions[c] == end0.compose(pr.proj_left())?)
    }

    /// The canonical comparison from the carrier at `X_n` into the freshly
    /// built `n`-th power of the base carrier, paired from the projection
    /// actions. At `X0` it is the map to the point, at `X1` the identity.
    pub fn product_comparison(&self, n: usize) -> Result<SimplicialMap> {
        if n == 1 {
            return Ok(SimplicialMap::identity(&self.carriers[1]));
        }
        if n == 0 {
            let pt = standard_simplex(0, self.theory.trunc);
            return constant_map(&self.carriers[0], &pt, 0);
        }
        self.pair_fresh(&self.projection_actions[n])
    }

    fn pair_fresh(&self, legs: &[SimplicialMap]) -> Result<SimplicialMap> {
        if legs.len() == 1 {
            return Ok(legs[0].clone());
        }
        let rest = self.pair_fresh(&legs[1..])?;
        let p = product(&self.carriers[1], rest.target())?;
        pairing(&legs[0], &rest, &p)
    }
}

/// Builds the algebra whose carriers are the honest iterated products of
/// `base` with the canonical projection actions, given actions for the
/// operation and homotopy generators. Assumes the standard projection
/// tables of `EnrichedTheory::new`.
pub fn strict_algebra(
    theory: &EnrichedTheory,
    base: &TruncatedSSet,
    op_actions: Vec<SimplicialMap>,
    cell_actions: Vec<SimplicialMap>,
) -> Result<AlgebraData> {
    let trunc = theory.trunc;
    if base.trunc_level() != trunc {
        return Err(Error::mismatch(format!(
            "base carrier truncated at {}, theory at {trunc}",
            base.trunc_level()
        )));
    }
    let mut carriers: Vec<TruncatedSSet> = vec![standard_simplex(0, trunc)];
    let mut projections: Vec<Vec<SimplicialMap>> = vec![Vec::new()];
    if theory.arity_cap >= 1 {
        carriers.push(base.clone());
        projections.push(vec![SimplicialMap::identity(base)]);
    }
    for n in 2..=theory.arity_cap {
        let p = product(base, &carriers[n - 1])?;
        carriers.push(p.sset().clone());
        let mut row = vec![p.proj_left().clone()];
        for q in &projections[n - 1] {
            row.push(q.compose(p.proj_right())?);
        }
        projections.push(row);
    }
    AlgebraData::new(theory.clone(), carriers, projections, op_actions, cell_actions)
}

/// Runs the homotopy-algebra condition: for every power object the
/// comparison map into the fresh power of the base carrier must be a weak
/// equivalence. Comparisons that are isomorphisms certify at the requested
/// level outright; the rest are certified homologically, which the carrier
/// truncation bounds at `trunc - 1`. Refutations dominate, then the first
/// inconclusive comparison; a certificate carries the per-object verdicts.
pub fn check_homotopy_algebra(a: &AlgebraData, level: usize, budget: usize) -> Result<Verdict> {
    let hom_level = level.min(a.theory.trunc.saturating_sub(1));
    let objects: Vec<usize> = (0..=a.theory.arity_cap).filter(|&n| n != 1).collect();
    let entries: Vec<(String, Verdict)> = exec::try_map_range(objects.len(), |i| {
        let n = objects[i];
        let cmp = a.product_comparison(n)?;
        let v = if cmp.is_isomorphism() {
            Verdict::Certified {
                level,
                evidence: vec![Evidence::Note {
                    text: "comparison map is an isomorphism".to_string(),
                }],
            }
        } else {
            certify_weq(&cmp, hom_level, budget)?
        };
        Ok::<_, Error>((a.theory.object_name(n), v))
    })?;
    let refuted: Vec<(String, Verdict)> =
        entries.iter().filter(|(_, v)| v.is_refuted()).cloned().collect();
    if !refuted.is_empty() {
        return Ok(Verdict::Refuted { witness: Evidence::PerObject { objects: refuted } });
    }
    if let Some((name, Verdict::Inconclusive { reason })) =
        entries.iter().find(|(_, v)| v.is_inconclusive())
    {
        return Ok(Verdict::Inconclusive { reason: format!("comparison at {name}: {reason}") });
    }
    let certified = entries.iter().filter_map(|(_, v)| v.certified_level()).min().unwrap_or(level);
    Ok(Verdict::Certified {
        level: certified,
        evidence: vec![Evidence::PerObject { objects: entries }],
    })
}

/// A simplicial map defined by vertex data alone, into a standard-simplex
/// style target whose cells are determined by their vertices. `decode`
/// turns a source vertex into a coordinate tuple and `f` must be monotone
/// along every cell, or the construction reports the offending cell.
pub fn pointwise_map(
    source: &TruncatedSSet,
    target: &TruncatedSSet,
    decode: impl Fn(usize) -> Vec<usize>,
    f: impl Fn(&[usize]) -> usize,
) -> Result<SimplicialMap> {
    let mut assign: Vec<Vec<DegenerateRef>> = Vec::with_capacity(source.trunc_level() + 1);
    for dim in 0..=source.trunc_level() {
        let mut row = Vec::with_capacity(source.cell_count(dim));
        for idx in 0..source.cell_count(dim) {
            let cell = DegenerateRef::nondeg(dim, idx);
            let tuple: Vec<usize> =
                (0..=dim).map(|j| f(&decode(source.ref_vertex(&cell, j)))).collect();
            if tuple.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::invalid(format!(
                    "pointwise data is not monotone on cell {} in dimension {dim}",
                    source.cell_name(dim, idx)
                )));
            }
            row.push(monotone_tuple_ref(target, &tuple)?);
        }
        assign.push(row);
    }
    SimplicialMap::new(source.clone(), target.clone(), assign)
}

/// A worked homotopy algebra over the associativity-witness theory: the
/// base carrier is the 2-simplex, the operation is `max(x - 1, y)` with
/// saturating subtraction, and the homotopy interpolates between the two
/// association orders, which genuinely differ here.
pub fn saturating_max_algebra() -> Result<AlgebraData> {
    let theory = super::theory::build_t1();
    let q = standard_simplex(2, theory.trunc);
    shift_algebra(theory, q)
}

/// The same shape of algebra on the interval carrier with `min` for the
/// operation: strictly associative, so the homotopy action is the
/// degenerate edge on the common composite.
pub fn min_algebra() -> Result<AlgebraData> {
    let theory = super::theory::build_t1();
    let q = standard_simplex(1, theory.trunc);
    let p2 = product(&q, &q)?;
    let p3 = product(&q, p2.sset())?;
    let interval = standard_simplex(1, theory.trunc);
    let pi = product(p3.sset(), &interval)?;
    let am = pointwise_map(
        p2.sset(),
        &q,
        |v| {
            let (a, b) = p2.components(0, v);
            vec![a.base, b.base]
        },
        |xs| xs[0].min(xs[1]),
    )?;
    let ah = pointwise_map(
        pi.sset(),
        &q,
        |v| {
            let (xyz, t) = pi.components(0, v);
            let (x, yz) = p3.components(0, xyz.base);
            let (y, z) = p2.components(0, yz.base);
            vec![x.base, y.base, z.base, t.base]
        },
        |xs| xs[0].min(xs[1]).min(xs[2]),
    )?;
    strict_algebra(&theory, &q, vec![am], vec![ah])
}

fn shift_algebra(theory: EnrichedTheory, q: TruncatedSSet) -> Result<AlgebraData> {
    let p2 = product(&q, &q)?;
    let p3 = product(&q, p2.sset())?;
    let interval = standard_simplex(1, theory.trunc);
    let pi = product(p3.sset(), &interval)?;
    let am = pointwise_map(
        p2.sset(),
        &q,
        |v| {
            let (a, b) = p2.components(0, v);
            vec![a.base, b.base]
        },
        |xs| xs[0].saturating_sub(1).max(xs[1]),
    )?;
    let ah = pointwise_map(
        pi.sset(),
        &q,
        |v| {
            let (xyz, t) = pi.components(0, v);
            let (x, yz) = p3.components(0, xyz.base);
            let (y, z) = p2.components(0, yz.base);
            vec![x.base, y.base, z.base, t.base]
        },
        |xs| {
            let left = xs[0].saturating_sub(2).max(xs[1].saturating_sub(1)).max(xs[2]);
            let right = xs[0].saturating_sub(1).max(xs[1].saturating_sub(1)).max(xs[2]);
            if xs[3] == 0 {
                left
            } else {
                right
            }
        },
    )?;
    strict_algebra(&theory, &q, vec![am], vec![ah])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theories::mapping::mapping_space;
    use crate::theories::theory::{build_t0, build_t1};

    const BUDGET: usize = 10_000;

    #[test]
    fn a_strict_point_algebra_certifies_at_every_requested_level() {
        let theory = build_t0();
        let pt = standard_simplex(0, theory.trunc);
        let square = product(&pt, &pt).unwrap();
        let am = constant_map(square.sset(), &pt, 0).unwrap();
        let a = strict_algebra(&theory, &pt, vec![am], Vec::new()).unwrap();
        for level in [0, 2, 5] {
            let v = check_homotopy_algebra(&a, level, BUDGET).unwrap();
            assert_eq!(v.certified_level(), Some(level));
        }
    }

    #[test]
    fn the_saturating_algebra_is_a_homotopy_algebra_with_a_genuine_witness() {
        let a = saturating_max_algebra().unwrap();
        let v = check_homotopy_algebra(&a, 2, BUDGET).unwrap();
        assert_eq!(v.certified_level(), Some(2), "got {v:?}");
        let (end0, end1) = a.cell_ends(0).unwrap();
        assert_ne!(end0, end1, "the two association orders differ on this carrier");
        assert_eq!((end0, end1), a.cell_boundary_composites(0).unwrap());
        assert!(!a.cell_witness_is_degenerate(0).unwrap());
    }

    #[test]
    fn the_min_algebra_witness_is_degenerate_and_locates_in_the_mapping_space() {
        let a = min_algebra().unwrap();
        let v = check_homotopy_algebra(&a, 2, BUDGET).unwrap();
        assert_eq!(v.certified_level(), Some(2));
        assert!(a.cell_witness_is_degenerate(0).unwrap());

        // Maps out of the cube of the interval into the interval are
        // monotone functions on boolean tuples: 20 on three variables, 168
        // on four, of which 20 one-cells are degenerate.
        let ms = mapping_space(&a.carriers[3], &a.carriers[1], 1, 4_000_000).unwrap();
        assert_eq!(ms.sset.cell_count(0), 20);
        assert_eq!(ms.sset.cell_count(1), 148);
        let located = ms.locate(&a.cell_actions[0], 1).expect("witness is a 1-cell");
        assert_eq!(located.word, vec![0], "constant homotopies locate as degenerate edges");
        // The vertex the witness degenerates onto is the shared composite,
        // read as a map out of carrier(X3) x point.
        let (end0, _) = a.cell_ends(0).unwrap();
        let p0 = product(&a.carriers[3], &standard_simplex(0, a.theory.trunc)).unwrap();
        let shared = end0.compose(p0.proj_left()).unwrap();
        assert_eq!(ms.rep(0, located.base), &shared);
    }

    #[test]
    fn mismatched_product_carriers_are_refuted_at_pi0() {
        let theory = build_t0();
        let trunc = theory.trunc;
        let pt = standard_simplex(0, trunc);
        let two = TruncatedSSet::discrete(&["a", "b"], trunc).unwrap();
        let c0 = constant_map(&pt, &two, 0).unwrap();
        let carriers = vec![pt.clone(), two.clone(), pt.clone(), pt.clone(), pt.clone()];
        let projections = vec![
            Vec::new(),
            vec![SimplicialMap::identity(&two)],
            vec![c0.clone(), c0.clone()],
            vec![c0.clone(), c0.clone(), c0.clone()],
            vec![c0.clone(), c0.clone(), c0.clone(), c0.clone()],
        ];
        let am = constant_map(&pt, &two, 0).unwrap();
        let a = AlgebraData::new(theory, carriers, projections, vec![am], Vec::new()).unwrap();
        let v = check_homotopy_algebra(&a, 2, BUDGET).unwrap();
        assert!(v.is_refuted());
        match v.witness() {
            Some(Evidence::PerObject { objects }) => {
                let (_, at_x2) = objects.iter().find(|(name, _)| name == "X2").unwrap();
                assert_eq!(
                    at_x2.witness(),
                    Some(&Evidence::Pi0Mismatch { source: 1, target: 4 })
                );
            }
            other => panic!("expected per-object evidence, got {other:?}"),
        }
    }

    #[test]
    fn composite_evaluation_requires_strict_carriers() {
        let theory = build_t1();
        let trunc = theory.trunc;
        let pt = standard_simplex(0, trunc);
        let q = standard_simplex(1, trunc);
        let cq = constant_map(&pt, &q, 0).unwrap();
        let carriers = vec![pt.clone(), q.clone(), pt.clone(), pt.clone(), pt.clone()];
        let projections = vec![
            Vec::new(),
            vec![SimplicialMap::identity(&q)],
            vec![cq.clone(), cq.clone()],
            vec![cq.clone(), cq.clone(), cq.clone()],
            vec![cq.clone(), cq.clone(), cq.clone(), cq.clone()],
        ];
        let am = constant_map(&pt, &q, 0).unwrap();
        let interval = standard_simplex(1, trunc);
        let hsrc = product(&pt, &interval).unwrap();
        let ah = constant_map(hsrc.sset(), &q, 0).unwrap();
        let err =
            AlgebraData::new(theory, carriers, projections, vec![am], vec![ah]).unwrap_err();
        assert!(err.to_string().contains("strict product"), "got {err}");
    }

    #[test]
    fn the_identity_projection_must_act_as_the_identity() {
        let theory = build_t0();
        let trunc = theory.trunc;
        let pt = standard_simplex(0, trunc);
        let q = standard_simplex(1, trunc);
        let collapse = constant_map(&q, &q, 0).unwrap();
        let mut carriers = vec![pt.clone(), q.clone()];
        let mut projections = vec![Vec::new(), vec![collapse]];
        for n in 2..=4 {
            let p = product(&q, &carriers[n - 1]).unwrap();
            carriers.push(p.sset().clone());
            let mut row = vec![p.proj_left().clone()];
            for prev in &projections[n - 1] {
                row.push(prev.compose(p.proj_right()).unwrap());
            }
            projections.push(row);
        }
        // The operation action is beside the point here; construction must
        // already reject the broken identity row.
        let am = constant_map(&carriers[2], &q, 0).unwrap();
        let err = AlgebraData::new(theory, carriers, projections, vec![am], Vec::new())
            .unwrap_err();
        assert!(err.to_string().contains("identity"), "got {err}");
    }

    #[test]
    fn homotopy_actions_must_restrict_to_their_boundaries() {
        let theory = build_t1();
        let q = standard_simplex(2, theory.trunc);
        let p2 = product(&q, &q).unwrap();
        let p3 = product(&q, p2.sset()).unwrap();
        let interval = standard_simplex(1, theory.trunc);
        let pi = product(p3.sset(), &interval).unwrap();
        let am = pointwise_map(
            p2.sset(),
            &q,
            |v| {
                let (a, b) = p2.components(0, v);
                vec![a.base, b.base]
            },
            |xs| xs[0].saturating_sub(1).max(xs[1]),
        )
        .unwrap();
        // Ignoring the interval coordinate parks both ends on the right
        // composite, so the source end disagrees with its boundary term.
        let ah = pointwise_map(
            pi.sset(),
            &q,
            |v| {
                let (xyz, t) = pi.components(0, v);
                let (x, yz) = p3.components(0, xyz.base);
                let (y, z) = p2.components(0, yz.base);
                vec![x.base, y.base, z.base, t.base]
            },
            |xs| xs[0].saturating_sub(1).max(xs[1].saturating_sub(1)).max(xs[2]),
        )
        .unwrap();
        let err = strict_algebra(&theory, &q, vec![am], vec![ah]).unwrap_err();
        assert!(err.to_string().contains("homotopy generator h"), "got {err}");
        assert!(err.to_string().contains("source end"), "got {err}");
    }

    #[test]
    fn theory_endomorphisms_preserve_verdicts() {
        // Precomposing the binary operation with the coordinate swap is an
        // endomorphism fixing products; both algebras must verify alike
        // even though the operation itself is not commutative.
        let theory = build_t0();
        let q = standard_simplex(2, theory.trunc);
        let p2 = product(&q, &q).unwrap();
        let decode = |v: usize| {
            let (a, b) = p2.components(0, v);
            vec![a.base, b.base]
        };
        let am = pointwise_map(p2.sset(), &q, decode, |xs| xs[0].saturating_sub(1).max(xs[1]))
            .unwrap();
        let swap = pairing(p2.proj_right(), p2.proj_left(), &p2).unwrap();
        let am_swapped = am.compose(&swap).unwrap();
        let a = strict_algebra(&theory, &q, vec![am], Vec::new()).unwrap();
        let b = strict_algebra(&theory, &q, vec![am_swapped], Vec::new()).unwrap();
        assert_eq!(
            check_homotopy_algebra(&a, 2, BUDGET).unwrap(),
            check_homotopy_algebra(&b, 2, BUDGET).unwrap()
        );
    }
}
