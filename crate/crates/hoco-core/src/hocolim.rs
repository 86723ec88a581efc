//! Weighted homotopy colimits of diagrams of simplicial sets.
//!
//! A diagram assigns a truncated simplicial set to each object of a finite
//! shape category and a simplicial map to each morphism, functorially; a
//! weight is the contravariant analogue. The weighted colimit glues the
//! disjoint union of the objectwise products weight x value along one
//! relation per morphism and simplex pair, computed as a single simplicial
//! quotient. The homotopy colimit is the colimit weighted by the nerves of
//! the opposite under categories, so the constant point diagram produces the
//! nerve of the opposite shape and a representable diagram produces a
//! contractible complex.
//!
//! Everything here happens at one truncation level N. Quotients never create
//! cells, but invariants above N - 1 are invisible, so certification of any
//! comparison map is capped at N - 1.

use crate::error::{Error, Result};
use crate::exec;
use crate::fincat::{
    nerve, nerve_map, under_category, under_precompose, FinCat, FunctorData, UnderCat,
};
use crate::simpset::{
    coproduct_many, pairing, product, product_map, quotient, standard_simplex, DegenerateRef,
    Product, SimplicialMap, TruncatedSSet,
};
use crate::verdict::Verdict;
use crate::weq::certify_weq;

/// A functor from a finite shape into truncated simplicial sets: one value
/// per object and one map per morphism, all at truncation level `trunc`.
#[derive(Debug, Clone)]
pub struct DiagramData {
    pub shape: FinCat,
    pub trunc: usize,
    pub values: Vec<TruncatedSSet>,
    /// `actions[f]` maps the value at the source of `f` to the value at its
    /// target.
    pub actions: Vec<SimplicialMap>,
}

impl DiagramData {
    pub fn new(
        shape: FinCat,
        trunc: usize,
        values: Vec<TruncatedSSet>,
        actions: Vec<SimplicialMap>,
    ) -> Result<Self> {
        let d = DiagramData { shape, trunc, values, actions };
        let report = d.validate();
        if report.is_empty() {
            Ok(d)
        } else {
            Err(Error::invalid(format!("not a diagram: {}", report.join("; "))))
        }
    }

    pub fn validate(&self) -> Vec<String> {
        check_functorial(&self.shape, self.trunc, &self.values, &self.actions, false)
    }
}

/// A contravariant diagram: for `f: a -> b`, the action maps the value at
/// `b` to the value at `a`.
#[derive(Debug, Clone)]
pub struct WeightData {
    pub shape: FinCat,
    pub trunc: usize,
    pub values: Vec<TruncatedSSet>,
    /// `actions[f]` maps the value at the target of `f` to the value at its
    /// source.
    pub actions: Vec<SimplicialMap>,
}

impl WeightData {
    pub fn new(
        shape: FinCat,
        trunc: usize,
        values: Vec<TruncatedSSet>,
        actions: Vec<SimplicialMap>,
    ) -> Result<Self> {
        let w = WeightData { shape, trunc, values, actions };
        let report = w.validate();
        if report.is_empty() {
            Ok(w)
        } else {
            Err(Error::invalid(format!("not a weight: {}", report.join("; "))))
        }
    }

    pub fn validate(&self) -> Vec<String> {
        check_functorial(&self.shape, self.trunc, &self.values, &self.actions, true)
    }
}

fn check_functorial(
    shape: &FinCat,
    trunc: usize,
    values: &[TruncatedSSet],
    actions: &[SimplicialMap],
    contravariant: bool,
) -> Vec<String> {
    let mut bad = Vec::new();
    if values.len() != shape.object_count() {
        bad.push(format!(
            "{} values for {} objects",
            values.len(),
            shape.object_count()
        ));
    }
    if actions.len() != shape.morphism_count() {
        bad.push(format!(
            "{} actions for {} morphisms",
            actions.len(),
            shape.morphism_count()
        ));
    }
    if !bad.is_empty() {
        return bad;
    }
    for (o, v) in values.iter().enumerate() {
        if v.trunc_level() != trunc {
            bad.push(format!(
                "value at {} truncated at {} instead of {}",
                shape.object_name(o),
                v.trunc_level(),
                trunc
            ));
        }
    }
    for (f, act) in actions.iter().enumerate() {
        let m = shape.morphism(f);
        let (from, to) = if contravariant { (m.tgt, m.src) } else { (m.src, m.tgt) };
        if act.source() != &values[from] || act.target() != &values[to] {
            bad.push(format!("action of {} does not connect its values", m.name));
        } else if !act.validate().is_empty() {
            bad.push(format!("action of {} is not simplicial", m.name));
        }
    }
    if !bad.is_empty() {
        return bad;
    }
    for o in 0..shape.object_count() {
        if actions[shape.identity_of(o)] != SimplicialMap::identity(&values[o]) {
            bad.push(format!(
                "identity of {} does not act as the identity",
                shape.object_name(o)
            ));
        }
    }
    for g in 0..shape.morphism_count() {
        for f in 0..shape.morphism_count() {
            let Some(gf) = shape.compose(g, f) else { continue };
            let expected = if contravariant {
                actions[f].compose(&actions[g])
            } else {
                actions[g].compose(&actions[f])
            };
            match expected {
                Ok(comp) if comp == actions[gf] => {}
                _ => bad.push(format!(
                    "action of {} is not the composite of {} and {}",
                    shape.morphism(gf).name,
                    shape.morphism(g).name,
                    shape.morphism(f).name
                )),
            }
        }
    }
    bad
}

/// A natural transformation between two diagrams over one shape.
#[derive(Debug, Clone)]
pub struct NatTransData {
    pub source: DiagramData,
    pub target: DiagramData,
    /// `components[o]` maps the source value at `o` to the target value.
    pub components: Vec<SimplicialMap>,
}

impl NatTransData {
    pub fn new(
        source: DiagramData,
        target: DiagramData,
        components: Vec<SimplicialMap>,
    ) -> Result<Self> {
        let t = NatTransData { source, target, components };
        let report = t.validate();
        if report.is_empty() {
            Ok(t)
        } else {
            Err(Error::invalid(format!(
                "not a natural transformation: {}",
                report.join("; ")
            )))
        }
    }

    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        if self.source.shape != self.target.shape {
            bad.push("source and target diagrams have different shapes".to_string());
            return bad;
        }
        let shape = &self.source.shape;
        if self.components.len() != shape.object_count() {
            bad.push(format!(
                "{} components for {} objects",
                self.components.len(),
                shape.object_count()
            ));
            return bad;
        }
        for (o, comp) in self.components.iter().enumerate() {
            if comp.source() != &self.source.values[o] || comp.target() != &self.target.values[o] {
                bad.push(format!(
                    "component at {} does not connect the diagram values",
                    shape.object_name(o)
                ));
            }
        }
        if !bad.is_empty() {
            return bad;
        }
        for f in shape.non_identities() {
            let m = shape.morphism(f);
            let lhs = self.components[m.tgt].compose(&self.source.actions[f]);
            let rhs = self.target.actions[f].compose(&self.components[m.src]);
            match (lhs, rhs) {
                (Ok(l), Ok(r)) if l == r => {}
                _ => bad.push(format!("naturality fails at {}", m.name)),
            }
        }
        bad
    }
}

/// A weighted colimit: the glued simplicial set and, per shape object, the
/// inclusion of the summand weight x value, plus the bookkeeping needed to
/// factor cocones through the gluing.
#[derive(Debug, Clone)]
pub struct Colimit {
    pub sset: TruncatedSSet,
    /// `inclusions[o]` maps the product of the weight and diagram values at
    /// `o` into the colimit.
    pub inclusions: Vec<SimplicialMap>,
    products: Vec<Product>,
    /// Projection of the disjoint union of the summands onto the quotient.
    projection: SimplicialMap,
    /// `origin[dim][t]` locates total cell `t` as (object, summand cell).
    origin: Vec<Vec<(usize, usize)>>,
}

impl Colimit {
    /// The glued product at one shape object.
    pub fn summand(&self, o: usize) -> &Product {
        &self.products[o]
    }

    /// The unique map out of the colimit restricting to `cocone[o]` on each
    /// summand.
    ///
    /// Every cell of the colimit is the class of some summand cell, so the
    /// candidate is read off there; validating it and comparing against
    /// every leg checks exhaustively that the cocone respects the gluing
    /// relations, and surjectivity of the projection makes the factorization
    /// unique.
    pub fn factor(&self, cocone: &[SimplicialMap]) -> Result<SimplicialMap> {
        if cocone.len() != self.products.len() {
            return Err(Error::mismatch("one cocone leg per shape object"));
        }
        let Some(first) = cocone.first() else {
            return Err(Error::invalid("cannot factor a cocone over the empty shape"));
        };
        let target = first.target().clone();
        for (o, leg) in cocone.iter().enumerate() {
            if leg.source() != self.products[o].sset() {
                return Err(Error::mismatch(format!(
                    "cocone leg {o} is not defined on its summand"
                )));
            }
            if leg.target() != &target {
                return Err(Error::mismatch("cocone legs land in different targets"));
            }
        }
        let trunc = self.sset.trunc_level();
        let mut assign: Vec<Vec<DegenerateRef>> = Vec::with_capacity(trunc + 1);
        for dim in 0..=trunc {
            let mut row: Vec<Option<DegenerateRef>> = vec![None; self.sset.cell_count(dim)];
            for t in 0..self.projection.source().cell_count(dim) {
                let r = self.projection.assignment(dim, t);
                if r.word.is_empty() && row[r.base].is_none() {
                    let (o, idx) = self.origin[dim][t];
                    row[r.base] = Some(cocone[o].assignment(dim, idx).clone());
                }
            }
            let row: Option<Vec<DegenerateRef>> = row.into_iter().collect();
            assign.push(row.ok_or_else(|| Error::invalid("colimit cell without a representative"))?);
        }
        let out = SimplicialMap::new(self.sset.clone(), target, assign)?;
        for (o, leg) in cocone.iter().enumerate() {
            if out.compose(&self.inclusions[o])? != *leg {
                return Err(Error::invalid(format!(
                    "cocone does not respect the gluing relations on summand {o}"
                )));
            }
        }
        Ok(out)
    }
}

/// The colimit of `d` weighted by `w`: the disjoint union of the objectwise
/// products, glued along `(W(f)u, x) ~ (u, D(f)x)` for every morphism `f`
/// and every simplex pair over it.
pub fn weighted_colimit(w: &WeightData, d: &DiagramData) -> Result<Colimit> {
    if w.shape != d.shape {
        return Err(Error::mismatch("weight and diagram shapes differ"));
    }
    if w.trunc != d.trunc {
        return Err(Error::mismatch(format!(
            "weight truncated at {} but diagram at {}",
            w.trunc, d.trunc
        )));
    }
    let shape = &d.shape;
    if shape.is_empty() {
        let empty = TruncatedSSet::empty(d.trunc);
        return Ok(Colimit {
            sset: empty.clone(),
            inclusions: Vec::new(),
            products: Vec::new(),
            projection: SimplicialMap::identity(&empty),
            origin: vec![Vec::new(); d.trunc + 1],
        });
    }
    let products =
        exec::try_map_range(shape.object_count(), |o| product(&w.values[o], &d.values[o]))?;
    let parts: Vec<(&str, &TruncatedSSet)> = (0..shape.object_count())
        .map(|o| (shape.object_name(o), products[o].sset()))
        .collect();
    let (total, injections) = coproduct_many(&parts)?;

    let nonid = shape.non_identities();
    let batches = exec::try_map_range(nonid.len(), |i| {
        let f = nonid[i];
        let m = shape.morphism(f);
        let (a, b) = (m.src, m.tgt);
        // Simplex pairs over f live in W(b) x D(a) and attach two ways.
        let span = product(&w.values[b], &d.values[a])?;
        let mut rel = Vec::new();
        for dim in 0..=d.trunc {
            for idx in 0..span.sset().cell_count(dim) {
                let (u, x) = span.components(dim, idx);
                let left = products[a].pair_ref(&w.actions[f].apply(u), x)?;
                let right = products[b].pair_ref(u, &d.actions[f].apply(x))?;
                rel.push((injections[a].apply(&left), injections[b].apply(&right)));
            }
        }
        Ok::<_, Error>(rel)
    })?;
    let relations: Vec<(DegenerateRef, DegenerateRef)> =
        batches.into_iter().flatten().collect();
    let q = quotient(&total, &relations)?;
    let inclusions = injections
        .iter()
        .map(|inj| q.projection.compose(inj))
        .collect::<Result<Vec<SimplicialMap>>>()?;
    let mut origin: Vec<Vec<(usize, usize)>> = (0..=d.trunc)
        .map(|dim| vec![(usize::MAX, usize::MAX); total.cell_count(dim)])
        .collect();
    for (o, inj) in injections.iter().enumerate() {
        for dim in 0..=d.trunc {
            for idx in 0..products[o].sset().cell_count(dim) {
                origin[dim][inj.assignment(dim, idx).base] = (o, idx);
            }
        }
    }
    Ok(Colimit { sset: q.sset, inclusions, products, projection: q.projection, origin })
}

/// The canonical weight of the homotopy colimit over `c`: at each object,
/// the nerve of the opposite of its under category, with morphisms acting by
/// precomposition.
pub fn hocolim_weight(c: &FinCat, n: usize) -> Result<WeightData> {
    let nerves = exec::try_map_range(c.object_count(), |o| {
        let under = under_category(c, o)?;
        nerve(&under.cat.opposite(), n)
    })?;
    let values: Vec<TruncatedSSet> = nerves.iter().map(|nv| nv.sset.clone()).collect();
    let actions = exec::try_map_range(c.morphism_count(), |f| {
        if c.is_identity_mor(f) {
            return Ok(SimplicialMap::identity(&values[c.morphism(f).src]));
        }
        let m = c.morphism(f);
        let fun = under_precompose(c, f)?.opposite();
        nerve_map(&fun, &nerves[m.tgt], &nerves[m.src])
    })?;
    WeightData::new(c.clone(), n, values, actions)
}

/// The homotopy colimit of a diagram truncated at `n`: its colimit weighted
/// by [`hocolim_weight`].
pub fn hocolim_s(d: &DiagramData, n: usize) -> Result<Colimit> {
    if d.trunc != n {
        return Err(Error::mismatch(format!(
            "diagram truncated at {} but the weight was requested at {n}",
            d.trunc
        )));
    }
    let w = hocolim_weight(&d.shape, n)?;
    weighted_colimit(&w, d)
}

/// The diagram constant at `x`: every object takes the value `x` and every
/// morphism acts as its identity.
pub fn constant_diagram(c: &FinCat, x: &TruncatedSSet) -> Result<DiagramData> {
    let values = vec![x.clone(); c.object_count()];
    let actions = (0..c.morphism_count()).map(|_| SimplicialMap::identity(x)).collect();
    DiagramData::new(c.clone(), x.trunc_level(), values, actions)
}

/// The weight constant at `x`; with `x` a point this weights the ordinary
/// colimit.
pub fn constant_weight(c: &FinCat, x: &TruncatedSSet) -> Result<WeightData> {
    let values = vec![x.clone(); c.object_count()];
    let actions = (0..c.morphism_count()).map(|_| SimplicialMap::identity(x)).collect();
    WeightData::new(c.clone(), x.trunc_level(), values, actions)
}

/// A map between discrete simplicial sets given by its vertex images.
fn vertex_map(src: &TruncatedSSet, tgt: &TruncatedSSet, image: &[usize]) -> Result<SimplicialMap> {
    let mut assign: Vec<Vec<DegenerateRef>> =
        vec![image.iter().map(|&v| DegenerateRef::nondeg(0, v)).collect()];
    for _ in 1..=src.trunc_level() {
        assign.push(Vec::new());
    }
    SimplicialMap::new(src.clone(), tgt.clone(), assign)
}

/// The diagram of discrete hom-sets out of `d0`, truncated at `n`. Its
/// homotopy colimit is contractible: the category of elements of a
/// representable functor has an initial object.
pub fn representable_diagram(c: &FinCat, d0: usize, n: usize) -> Result<DiagramData> {
    if d0 >= c.object_count() {
        return Err(Error::invalid("representable diagram object out of range"));
    }
    let homs: Vec<Vec<usize>> = (0..c.object_count()).map(|o| c.hom(d0, o)).collect();
    let values = homs
        .iter()
        .map(|hom| {
            let names: Vec<&str> = hom.iter().map(|&g| c.morphism(g).name.as_str()).collect();
            TruncatedSSet::discrete(&names, n)
        })
        .collect::<Result<Vec<TruncatedSSet>>>()?;
    let actions = (0..c.morphism_count())
        .map(|f| {
            let m = c.morphism(f);
            let image = homs[m.src]
                .iter()
                .map(|&g| {
                    let composite = c.compose(f, g).expect("hom-set arrows compose");
                    values[m.tgt]
                        .cell_index(0, &c.morphism(composite).name)
                        .expect("composite lies in the target hom-set")
                })
                .collect::<Vec<usize>>();
            vertex_map(&values[m.src], &values[m.tgt], &image)
        })
        .collect::<Result<Vec<SimplicialMap>>>()?;
    DiagramData::new(c.clone(), n, values, actions)
}

/// The weight of discrete hom-sets into `d0`, truncated at `n`. Weighting a
/// colimit by it collapses the colimit onto the value at `d0`.
pub fn representable_weight(c: &FinCat, d0: usize, n: usize) -> Result<WeightData> {
    if d0 >= c.object_count() {
        return Err(Error::invalid("representable weight object out of range"));
    }
    let homs: Vec<Vec<usize>> = (0..c.object_count()).map(|o| c.hom(o, d0)).collect();
    let values = homs
        .iter()
        .map(|hom| {
            let names: Vec<&str> = hom.iter().map(|&g| c.morphism(g).name.as_str()).collect();
            TruncatedSSet::discrete(&names, n)
        })
        .collect::<Result<Vec<TruncatedSSet>>>()?;
    let actions = (0..c.morphism_count())
        .map(|f| {
            let m = c.morphism(f);
            let image = homs[m.tgt]
                .iter()
                .map(|&g| {
                    let composite = c.compose(g, f).expect("hom-set arrows compose");
                    values[m.src]
                        .cell_index(0, &c.morphism(composite).name)
                        .expect("composite lies in the source hom-set")
                })
                .collect::<Vec<usize>>();
            vertex_map(&values[m.tgt], &values[m.src], &image)
        })
        .collect::<Result<Vec<SimplicialMap>>>()?;
    WeightData::new(c.clone(), n, values, actions)
}

fn tensor_with_products(
    d1: &DiagramData,
    d2: &DiagramData,
) -> Result<(DiagramData, Vec<Product>)> {
    if d1.shape != d2.shape {
        return Err(Error::mismatch("tensor factors live over different shapes"));
    }
    if d1.trunc != d2.trunc {
        return Err(Error::mismatch("tensor factors have different truncation levels"));
    }
    let prods = exec::try_map_range(d1.shape.object_count(), |o| {
        product(&d1.values[o], &d2.values[o])
    })?;
    let actions = exec::try_map_range(d1.shape.morphism_count(), |f| {
        let m = d1.shape.morphism(f);
        product_map(&d1.actions[f], &d2.actions[f], &prods[m.src], &prods[m.tgt])
    })?;
    let values = prods.iter().map(|p| p.sset().clone()).collect();
    let tensor = DiagramData::new(d1.shape.clone(), d1.trunc, values, actions)?;
    Ok((tensor, prods))
}

/// The objectwise product of two diagrams over one shape.
pub fn tensor_diagrams(d1: &DiagramData, d2: &DiagramData) -> Result<DiagramData> {
    Ok(tensor_with_products(d1, d2)?.0)
}

/// The unique map between weighted colimits commuting with the inclusions of
/// a natural transformation's components. The transformation is revalidated,
/// so a naturality violation is an error; both colimits must be taken with
/// the same weight.
pub fn induced_map(t: &NatTransData, src: &Colimit, tgt: &Colimit) -> Result<SimplicialMap> {
    let report = t.validate();
    if !report.is_empty() {
        return Err(Error::invalid(format!(
            "not a natural transformation: {}",
            report.join("; ")
        )));
    }
    let legs = (0..t.source.shape.object_count())
        .map(|o| {
            let id_w = SimplicialMap::identity(src.summand(o).left());
            let step = product_map(&id_w, &t.components[o], src.summand(o), tgt.summand(o))?;
            tgt.inclusions[o].compose(&step)
        })
        .collect::<Result<Vec<SimplicialMap>>>()?;
    src.factor(&legs)
}

/// Compares the homotopy colimit of the objectwise product with the product
/// of the homotopy colimits, certifying the canonical map as a weak
/// equivalence at level `min(trunc - 1, level)`.
///
/// Over a homotopy sifted shape this map is a weak equivalence for every
/// diagram pair; a refutation exhibits concrete diagrams on which products
/// fail to commute with the homotopy colimit.
pub fn comparison_to_product(
    d1: &DiagramData,
    d2: &DiagramData,
    level: usize,
    budget: usize,
) -> Result<(SimplicialMap, Verdict)> {
    let (tensor, prods) = tensor_with_products(d1, d2)?;
    let n = tensor.trunc;
    let h = hocolim_s(&tensor, n)?;
    let h1 = hocolim_s(d1, n)?;
    let h2 = hocolim_s(d2, n)?;
    let left = NatTransData::new(
        tensor.clone(),
        d1.clone(),
        prods.iter().map(|p| p.proj_left().clone()).collect(),
    )?;
    let right = NatTransData::new(
        tensor,
        d2.clone(),
        prods.iter().map(|p| p.proj_right().clone()).collect(),
    )?;
    let u1 = induced_map(&left, &h, &h1)?;
    let u2 = induced_map(&right, &h, &h2)?;
    let pp = product(&h1.sset, &h2.sset)?;
    let cmp = pairing(&u1, &u2, &pp)?;
    let cap = level.min(n.saturating_sub(1));
    let verdict = certify_weq(&cmp, cap, budget)?;
    Ok((cmp, verdict))
}

/// The homotopy colimit of the constant point diagram together with the
/// canonical collapse onto the nerve of the opposite shape.
///
/// The collapse forgets the under-category structure of each weight cell;
/// its target is the nerve of the opposite because gluing under categories
/// leaves chains read backwards. The shape's own nerve carries the same
/// cells with faces conjugated by reversal, an identification
/// [`crate::fincat::nerve_reversal_iso`] realizes as a simplicial
/// isomorphism, and reversal preserves components, homology, and
/// fundamental-group triviality; a certificate for the collapse therefore
/// certifies the homotopy colimit against the shape's nerve.
pub fn point_collapse(c: &FinCat, n: usize) -> Result<(Colimit, SimplicialMap)> {
    if c.is_empty() {
        return Err(Error::invalid("point collapse needs a nonempty shape"));
    }
    let point = standard_simplex(0, n);
    let d = constant_diagram(c, &point)?;
    let colim = hocolim_s(&d, n)?;
    let cop = c.opposite();
    let target = nerve(&cop, n)?;
    let legs = (0..c.object_count())
        .map(|o| {
            let under = under_category(c, o)?;
            let ucat = under.cat.opposite();
            let unv = nerve(&ucat, n)?;
            let obj_map: Vec<usize> =
                under.object_mor.iter().map(|&g| c.morphism(g).tgt).collect();
            let forget = FunctorData::new(ucat, cop.clone(), obj_map, under.mor_g.clone())?;
            let fold = nerve_map(&forget, &unv, &target)?;
            fold.compose(colim.summand(o).proj_left())
        })
        .collect::<Result<Vec<SimplicialMap>>>()?;
    let map = colim.factor(&legs)?;
    Ok((colim, map))
}

/// The inclusion of the diagram value at `obj` into a weighted colimit along
/// the weight vertex `vertex`: a value cell goes to the class of the pair
/// (iterated degeneracy of the vertex, cell).
///
/// With a representable weight and `vertex` the identity of the represented
/// object, this is the co-Yoneda collapse and is an isomorphism.
pub fn value_inclusion(colim: &Colimit, obj: usize, vertex: usize) -> Result<SimplicialMap> {
    if obj >= colim.products.len() {
        return Err(Error::invalid("value inclusion object out of range"));
    }
    let p = colim.summand(obj);
    if vertex >= p.left().cell_count(0) {
        return Err(Error::invalid("value inclusion vertex out of range"));
    }
    let value = p.right().clone();
    let mut assign: Vec<Vec<DegenerateRef>> = Vec::with_capacity(value.trunc_level() + 1);
    for dim in 0..=value.trunc_level() {
        let word: Vec<usize> = (0..dim).rev().collect();
        let w = DegenerateRef { base_dim: 0, base: vertex, word };
        let mut row = Vec::with_capacity(value.cell_count(dim));
        for idx in 0..value.cell_count(dim) {
            let pr = p.pair_ref(&w, &DegenerateRef::nondeg(dim, idx))?;
            row.push(colim.inclusions[obj].apply(&pr));
        }
        assign.push(row);
    }
    SimplicialMap::new(value, colim.sset.clone(), assign)
}

/// The outer product of diagrams over two shapes: the diagram over the
/// product category with value `D1(x) x D2(y)` at `(x, y)`.
pub fn outer_product(d1: &DiagramData, d2: &DiagramData) -> Result<DiagramData> {
    Ok(outer_product_with_products(d1, d2)?.0)
}

fn outer_product_with_products(
    d1: &DiagramData,
    d2: &DiagramData,
) -> Result<(DiagramData, Vec<Product>)> {
    if d1.trunc != d2.trunc {
        return Err(Error::mismatch("outer product factors have different truncation levels"));
    }
    let cp = crate::fincat::product_cat(&d1.shape, &d2.shape)?;
    let nb = d2.shape.object_count();
    let mb = d2.shape.morphism_count();
    let prods = exec::try_map_range(cp.object_count(), |o| {
        product(&d1.values[o / nb], &d2.values[o % nb])
    })?;
    let actions = exec::try_map_range(cp.morphism_count(), |pm| {
        let (f, g) = (pm / mb, pm % mb);
        let src = d1.shape.morphism(f).src * nb + d2.shape.morphism(g).src;
        let tgt = d1.shape.morphism(f).tgt * nb + d2.shape.morphism(g).tgt;
        product_map(&d1.actions[f], &d2.actions[g], &prods[src], &prods[tgt])
    })?;
    let values = prods.iter().map(|p| p.sset().clone()).collect();
    let outer = DiagramData::new(cp, d1.trunc, values, actions)?;
    Ok((outer, prods))
}

/// The functor from the under category of a product shape at `(x, y)` to the
/// under category of one factor, read on opposite categories so it induces a
/// map of hocolim weights.
fn under_projection(
    under_cp: &UnderCat,
    base: &FinCat,
    under_base: &UnderCat,
    decode: impl Fn(usize) -> usize,
) -> Result<FunctorData> {
    let obj_map: Vec<usize> = under_cp
        .object_mor
        .iter()
        .map(|&m| under_base.object_of(decode(m)).expect("component starts at the base object"))
        .collect();
    let mor_map: Vec<usize> = (0..under_cp.cat.morphism_count())
        .map(|j| {
            let s = under_cp.cat.morphism(j).src;
            let u = decode(under_cp.mor_g[j]);
            if base.is_identity_mor(u) {
                under_base.cat.identity_of(obj_map[s])
            } else {
                let name = format!(
                    "{}>{}",
                    under_base.cat.object_name(obj_map[s]),
                    base.morphism(u).name
                );
                under_base.cat.morphism_index(&name).expect("component acts downstairs")
            }
        })
        .collect();
    FunctorData::new(under_cp.cat.opposite(), under_base.cat.opposite(), obj_map, mor_map)
}

/// Compares the homotopy colimit of an outer product over the product shape
/// with the product of the two homotopy colimits, certifying the canonical
/// map at level `min(trunc - 1, level)`. Homotopy colimits distribute over
/// finite products of shapes, so the verdict is expected to certify.
pub fn outer_product_comparison(
    d1: &DiagramData,
    d2: &DiagramData,
    level: usize,
    budget: usize,
) -> Result<(SimplicialMap, Verdict)> {
    let (outer, vps) = outer_product_with_products(d1, d2)?;
    let n = outer.trunc;
    let h = hocolim_s(&outer, n)?;
    let h1 = hocolim_s(d1, n)?;
    let h2 = hocolim_s(d2, n)?;
    let pp = product(&h1.sset, &h2.sset)?;
    let nb = d2.shape.object_count();
    let mb = d2.shape.morphism_count();
    let legs = (0..outer.shape.object_count())
        .map(|o| {
            let (x, y) = (o / nb, o % nb);
            let under_cp = under_category(&outer.shape, o)?;
            let w_cp = nerve(&under_cp.cat.opposite(), n)?;
            let u1 = under_category(&d1.shape, x)?;
            let u2 = under_category(&d2.shape, y)?;
            let w1 = nerve(&u1.cat.opposite(), n)?;
            let w2 = nerve(&u2.cat.opposite(), n)?;
            let wproj1 = nerve_map(&under_projection(&under_cp, &d1.shape, &u1, |m| m / mb)?, &w_cp, &w1)?;
            let wproj2 = nerve_map(&under_projection(&under_cp, &d2.shape, &u2, |m| m % mb)?, &w_cp, &w2)?;
            let leg1 = h1.inclusions[x].compose(&product_map(
                &wproj1,
                vps[o].proj_left(),
                h.summand(o),
                h1.summand(x),
            )?)?;
            let leg2 = h2.inclusions[y].compose(&product_map(
                &wproj2,
                vps[o].proj_right(),
                h.summand(o),
                h2.summand(y),
            )?)?;
            pairing(&leg1, &leg2, &pp)
        })
        .collect::<Result<Vec<SimplicialMap>>>()?;
    let cmp = h.factor(&legs)?;
    let cap = level.min(n.saturating_sub(1));
    let verdict = certify_weq(&cmp, cap, budget)?;
    Ok((cmp, verdict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{arrow_cat, reflexive_pair};
    use crate::simpset::{boundary_simplex, pi0};
    use crate::verdict::Evidence;
    use crate::weq::certify_contractible;

    fn span_cat() -> FinCat {
        FinCat::build(&["a", "b", "c"], &[("p", "a", "b"), ("q", "a", "c")], &[]).unwrap()
    }

    fn join_poset() -> FinCat {
        FinCat::poset(&["0", "1"], &[(0, 1)]).unwrap()
    }

    #[test]
    fn weight_over_the_arrow_is_interval_and_point() {
        let w = hocolim_weight(&arrow_cat(), 2).unwrap();
        assert_eq!(
            (0..=2).map(|k| w.values[0].cell_count(k)).collect::<Vec<_>>(),
            vec![2, 1, 0]
        );
        assert_eq!(
            (0..=2).map(|k| w.values[1].cell_count(k)).collect::<Vec<_>>(),
            vec![1, 0, 0]
        );
    }

    #[test]
    fn point_hocolim_over_the_arrow_is_an_interval() {
        let (colim, collapse) = point_collapse(&arrow_cat(), 2).unwrap();
        assert_eq!(
            (0..=2).map(|k| colim.sset.cell_count(k)).collect::<Vec<_>>(),
            vec![2, 1, 0]
        );
        assert!(collapse.is_isomorphism());
    }

    #[test]
    fn point_hocolim_over_the_span_certifies_against_the_nerve() {
        let (_, collapse) = point_collapse(&span_cat(), 3).unwrap();
        let verdict = certify_weq(&collapse, 2, 10_000).unwrap();
        assert!(verdict.is_certified(), "{verdict}");
    }

    #[test]
    fn point_hocolim_over_the_reflexive_pair_certifies_against_the_nerve() {
        let (_, collapse) = point_collapse(&reflexive_pair(), 2).unwrap();
        let verdict = certify_weq(&collapse, 1, 10_000).unwrap();
        assert!(verdict.is_certified(), "{verdict}");
    }

    #[test]
    fn constant_point_weight_computes_the_ordinary_colimit() {
        // The ordinary colimit of the representable diagram on the arrow
        // glues both hom points onto one.
        let c = arrow_cat();
        let d = representable_diagram(&c, 0, 2).unwrap();
        let w = constant_weight(&c, &standard_simplex(0, 2)).unwrap();
        let colim = weighted_colimit(&w, &d).unwrap();
        assert_eq!(colim.sset.cell_count(0), 1);
        assert_eq!(colim.sset.cell_count(1), 0);
    }

    #[test]
    fn hocolim_over_a_discrete_shape_is_a_disjoint_union() {
        let c = FinCat::build(&["a", "b"], &[], &[]).unwrap();
        let d = constant_diagram(&c, &standard_simplex(0, 2)).unwrap();
        let colim = hocolim_s(&d, 2).unwrap();
        assert_eq!(pi0(&colim.sset).count, 2);
    }

    #[test]
    fn hocolim_over_the_empty_shape_is_empty() {
        let c = FinCat::build(&[], &[], &[]).unwrap();
        let d = constant_diagram(&c, &standard_simplex(0, 2)).unwrap();
        let colim = hocolim_s(&d, 2).unwrap();
        assert!(colim.sset.is_empty());
    }

    #[test]
    fn co_yoneda_collapse_is_an_isomorphism() {
        let c = reflexive_pair();
        let value = boundary_simplex(2, 2);
        let d = constant_diagram(&c, &value).unwrap();
        for d0 in 0..c.object_count() {
            let w = representable_weight(&c, d0, 2).unwrap();
            let colim = weighted_colimit(&w, &d).unwrap();
            let id_name = &c.morphism(c.identity_of(d0)).name;
            let vertex = w.values[d0].cell_index(0, id_name).unwrap();
            let into = value_inclusion(&colim, d0, vertex).unwrap();
            assert!(into.is_isomorphism(), "collapse failed at object {d0}");
        }
    }

    #[test]
    fn representable_hocolim_is_contractible() {
        let c = reflexive_pair();
        let d = representable_diagram(&c, 0, 2).unwrap();
        let colim = hocolim_s(&d, 2).unwrap();
        let verdict = certify_contractible(&colim.sset, 1, 10_000).unwrap();
        assert!(verdict.is_certified(), "{verdict}");
    }

    #[test]
    fn tensor_of_representable_diagrams_has_hand_counted_values() {
        let c = reflexive_pair();
        let d = representable_diagram(&c, 0, 2).unwrap();
        let t = tensor_diagrams(&d, &d).unwrap();
        let a = c.object_index("A").unwrap();
        let b = c.object_index("B").unwrap();
        assert_eq!(t.values[a].cell_count(0), 9);
        assert_eq!(t.values[b].cell_count(0), 4);
    }

    #[test]
    fn product_comparison_certifies_over_a_join_poset() {
        let c = join_poset();
        let d = constant_diagram(&c, &standard_simplex(0, 2)).unwrap();
        let (_, verdict) = comparison_to_product(&d, &d, 2, 10_000).unwrap();
        assert_eq!(verdict.certified_level(), Some(1));
    }

    #[test]
    fn product_comparison_refuted_over_the_reflexive_pair() {
        // Representable diagrams detect that the reflexive pair is not
        // homotopy sifted: the tensor side has two independent loops while
        // the product of contractible hocolims has none.
        let c = reflexive_pair();
        let d = representable_diagram(&c, 0, 2).unwrap();
        let (_, verdict) = comparison_to_product(&d, &d, 2, 10_000).unwrap();
        match verdict.witness() {
            Some(Evidence::HomologyMapNotIso { degree, .. }) => assert_eq!(*degree, 1),
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn induced_map_of_a_collapse_certifies() {
        let c = arrow_cat();
        let pt = standard_simplex(0, 2);
        let edge = standard_simplex(1, 2);
        let d1 = constant_diagram(&c, &edge).unwrap();
        let d2 = constant_diagram(&c, &pt).unwrap();
        let comp = crate::simpset::constant_map(&edge, &pt, 0).unwrap();
        let t = NatTransData::new(d1.clone(), d2.clone(), vec![comp.clone(), comp]).unwrap();
        let src = hocolim_s(&d1, 2).unwrap();
        let tgt = hocolim_s(&d2, 2).unwrap();
        let u = induced_map(&t, &src, &tgt).unwrap();
        let verdict = certify_weq(&u, 1, 10_000).unwrap();
        assert!(verdict.is_certified(), "{verdict}");
    }

    #[test]
    fn naturality_violations_are_rejected() {
        let c = arrow_cat();
        let two = TruncatedSSet::discrete(&["u", "v"], 2).unwrap();
        let d = constant_diagram(&c, &two).unwrap();
        let id = SimplicialMap::identity(&two);
        let swap = vertex_map(&two, &two, &[1, 0]).unwrap();
        assert!(NatTransData::new(d.clone(), d.clone(), vec![id.clone(), swap]).is_err());
        assert!(NatTransData::new(d.clone(), d, vec![id.clone(), id]).is_ok());
    }

    #[test]
    fn diagrams_must_be_functorial() {
        let c = arrow_cat();
        let two = TruncatedSSet::discrete(&["u", "v"], 1).unwrap();
        let values = vec![two.clone(), two.clone()];
        let swap = vertex_map(&two, &two, &[1, 0]).unwrap();
        // The identity of object 0 must act as the identity.
        let actions = vec![swap.clone(), SimplicialMap::identity(&two), swap];
        assert!(DiagramData::new(c, 1, values, actions).is_err());
    }

    #[test]
    fn outer_products_distribute_over_hocolim() {
        let d1 = representable_diagram(&arrow_cat(), 0, 2).unwrap();
        let two = TruncatedSSet::discrete(&["u", "v"], 2).unwrap();
        let d2 = constant_diagram(&span_cat(), &two).unwrap();
        let (cmp, verdict) = outer_product_comparison(&d1, &d2, 2, 10_000).unwrap();
        assert_eq!(pi0(cmp.source()).count, 2);
        assert_eq!(verdict.certified_level(), Some(1), "{verdict}");
    }
}
