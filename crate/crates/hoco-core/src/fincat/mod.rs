//! Finite categories with explicit composition tables, functors between
//! them, nerves, comma categories, and elementary shape predicates.
//!
//! Objects and morphisms are indexed; the composition table is total on
//! composable pairs and absent elsewhere. Construction checks structure
//! (index ranges, table shape); [`FinCat::validate_category`] checks the
//! semantics (units, associativity, endpoint bookkeeping) and reports every
//! violation, so deliberately broken fixtures are representable.

pub mod comma;
pub mod nerve;
pub mod predicates;

pub use comma::{comma_over_diagonal, under_category, under_precompose, CommaCat, UnderCat};
pub use nerve::{nerve, nerve_map, nerve_reversal_iso, Nerve};
pub use predicates::{
    binary_coproducts, has_initial, has_terminal, is_filtered, is_final_functor,
    BinaryCoproducts, CoproductWitness, FilterFailure, Filteredness,
};

use std::collections::BTreeMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mor {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Mor>,
    /// identity[o] is the identity morphism of object o.
    identity: Vec<usize>,
    /// compose[g][f] = g after f; Some exactly when src(g) = tgt(f).
    compose: Vec<Vec<Option<usize>>>,
    obj_index: BTreeMap<String, usize>,
    mor_index: BTreeMap<String, usize>,
}

fn check_name(kind: &str, name: &str) -> Result<()> {
    if name.is_empty()
        || name.contains(';')
        || name.chars().any(char::is_whitespace)
    {
        return Err(Error::invalid(format!(
            "{kind} name {name:?} must be nonempty without whitespace or ';'"
        )));
    }
    Ok(())
}

impl FinCat {
    /// Structural construction: names legal and unique, indices in range,
    /// composition entries present exactly on composable pairs. Semantic
    /// laws are NOT enforced here; see [`FinCat::validate_category`].
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Mor>,
        identity: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let mut obj_index = BTreeMap::new();
        for (i, o) in objects.iter().enumerate() {
            check_name("object", o)?;
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate object name {o}")));
            }
        }
        let mut mor_index = BTreeMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            check_name("morphism", &m.name)?;
            if m.src >= objects.len() || m.tgt >= objects.len() {
                return Err(Error::invalid(format!("morphism {} endpoint out of range", m.name)));
            }
            if mor_index.insert(m.name.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate morphism name {}", m.name)));
            }
        }
        if identity.len() != objects.len() {
            return Err(Error::invalid("one identity per object required"));
        }
        for (o, &i) in identity.iter().enumerate() {
            let m = morphisms
                .get(i)
                .ok_or_else(|| Error::invalid("identity index out of range"))?;
            if m.src != o || m.tgt != o {
                return Err(Error::invalid(format!(
                    "identity of object {} must be an endomorphism of it",
                    objects[o]
                )));
            }
        }
        if compose.len() != morphisms.len()
            || compose.iter().any(|row| row.len() != morphisms.len())
        {
            return Err(Error::invalid("composition table must be square on morphisms"));
        }
        for (g, row) in compose.iter().enumerate() {
            for (f, entry) in row.iter().enumerate() {
                let composable = morphisms[g].src == morphisms[f].tgt;
                match entry {
                    Some(c) if !composable => {
                        return Err(Error::invalid(format!(
                            "table defines {} after {} (= {}) on a non-composable pair",
                            morphisms[g].name,
                            morphisms[f].name,
                            morphisms.get(*c).map_or("?", |m| m.name.as_str())
                        )));
                    }
                    Some(c) if *c >= morphisms.len() => {
                        return Err(Error::invalid("composite index out of range"));
                    }
                    None if composable => {
                        return Err(Error::invalid(format!(
                            "missing composite {} after {}",
                            morphisms[g].name, morphisms[f].name
                        )));
                    }
                    _ => {}
                }
            }
        }
        Ok(FinCat { objects, morphisms, identity, compose, obj_index, mor_index })
    }

    /// Construction that also demands the category laws.
    pub fn validated(
        objects: Vec<String>,
        morphisms: Vec<Mor>,
        identity: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let c = FinCat::new(objects, morphisms, identity, compose)?;
        let report = c.validate_category();
        if report.is_empty() {
            Ok(c)
        } else {
            Err(Error::invalid(format!("not a category: {}", report.join("; "))))
        }
    }

    /// Category from identities (auto-named `id:{object}`), explicit arrows,
    /// and the composites of all composable arrow pairs, given by name.
    /// `comps` entries read (g, f, g_after_f).
    pub fn build(
        objects: &[&str],
        arrows: &[(&str, &str, &str)],
        comps: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let objects: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
        let obj_at = |name: &str| -> Result<usize> {
            objects
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| Error::invalid(format!("unknown object {name}")))
        };
        let mut morphisms: Vec<Mor> = objects
            .iter()
            .enumerate()
            .map(|(o, name)| Mor { name: format!("id:{name}"), src: o, tgt: o })
            .collect();
        for (name, s, t) in arrows {
            morphisms.push(Mor { name: name.to_string(), src: obj_at(s)?, tgt: obj_at(t)? });
        }
        let identity: Vec<usize> = (0..objects.len()).collect();
        let mor_at = |name: &str| -> Result<usize> {
            morphisms
                .iter()
                .position(|m| m.name == name)
                .ok_or_else(|| Error::invalid(format!("unknown morphism {name}")))
        };
        let n = morphisms.len();
        let mut compose: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
        for (g, f, gf) in comps {
            let g = mor_at(g)?;
            let f = mor_at(f)?;
            let gf = mor_at(gf)?;
            compose[g][f] = Some(gf);
        }
        // Composites with identities are forced.
        for f in 0..n {
            compose[identity[morphisms[f].tgt]][f] = Some(f);
            compose[f][identity[morphisms[f].src]] = Some(f);
        }
        FinCat::validated(objects, morphisms, identity, compose)
    }

    /// Poset as a category: at most one morphism a -> b, present when
    /// `a <= b` in the reflexive-transitive closure of `rel`.
    pub fn poset(names: &[&str], rel: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
        }
        for &(a, b) in rel {
            if a >= n || b >= n {
                return Err(Error::invalid("poset relation index out of range"));
            }
            leq[a][b] = true;
        }
        // Floyd-Warshall style transitive closure.
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::invalid(format!(
                        "not a poset: {} and {} are mutually below each other",
                        names[i], names[j]
                    )));
                }
            }
        }
        let objects: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let mut morphisms: Vec<Mor> = objects
            .iter()
            .enumerate()
            .map(|(o, name)| Mor { name: format!("id:{name}"), src: o, tgt: o })
            .collect();
        let mut arrow_at: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a][b] {
                    arrow_at[a][b] = Some(morphisms.len());
                    morphisms.push(Mor {
                        name: format!("{}<{}", names[a], names[b]),
                        src: a,
                        tgt: b,
                    });
                }
            }
        }
        let identity: Vec<usize> = (0..n).collect();
        let m = morphisms.len();
        let mut compose: Vec<Vec<Option<usize>>> = vec![vec![None; m]; m];
        for g in 0..m {
            for f in 0..m {
                if morphisms[g].src == morphisms[f].tgt {
                    let (a, c) = (morphisms[f].src, morphisms[g].tgt);
                    let gf = if a == c { identity[a] } else { arrow_at[a][c].expect("closure") };
                    compose[g][f] = Some(gf);
                }
            }
        }
        FinCat::validated(objects, morphisms, identity, compose)
    }

    /// One-object category from a monoid multiplication table;
    /// `table[a][b]` is a after b.
    pub fn monoid(object: &str, elements: &[&str], unit: usize, table: &[Vec<usize>]) -> Result<Self> {
        let n = elements.len();
        if unit >= n || table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("monoid table must be square with a valid unit"));
        }
        let morphisms: Vec<Mor> = elements
            .iter()
            .map(|e| Mor { name: e.to_string(), src: 0, tgt: 0 })
            .collect();
        let compose: Vec<Vec<Option<usize>>> = table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| if v < n { Ok(Some(v)) } else { Err(Error::invalid("monoid table entry out of range")) })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        FinCat::validated(vec![object.to_string()], morphisms, vec![unit], compose)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.obj_index.get(name).copied()
    }

    pub fn morphism(&self, i: usize) -> &Mor {
        &self.morphisms[i]
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.mor_index.get(name).copied()
    }

    pub fn identity_of(&self, o: usize) -> usize {
        self.identity[o]
    }

    pub fn is_identity_mor(&self, i: usize) -> bool {
        self.identity[self.morphisms[i].src] == i && self.morphisms[i].src == self.morphisms[i].tgt
    }

    /// g after f; None when not composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    /// Morphisms a -> b in index order.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&i| self.morphisms[i].src == a && self.morphisms[i].tgt == b)
            .collect()
    }

    /// Non-identity morphisms in index order.
    pub fn non_identities(&self) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&i| !self.is_identity_mor(i)).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Every violated category law, one line each; empty iff this is a
    /// category.
    pub fn validate_category(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let m = self.morphisms.len();
        for (g, row) in self.compose.iter().enumerate() {
            for (f, entry) in row.iter().enumerate() {
                if let Some(c) = entry {
                    let (mf, mg, mc) = (&self.morphisms[f], &self.morphisms[g], &self.morphisms[*c]);
                    if mc.src != mf.src || mc.tgt != mg.tgt {
                        bad.push(format!(
                            "{} after {} = {} has wrong endpoints",
                            mg.name, mf.name, mc.name
                        ));
                    }
                }
            }
        }
        for f in 0..m {
            let (s, t) = (self.morphisms[f].src, self.morphisms[f].tgt);
            if self.compose[self.identity[t]][f] != Some(f) {
                bad.push(format!("left unit fails on {}", self.morphisms[f].name));
            }
            if self.compose[f][self.identity[s]] != Some(f) {
                bad.push(format!("right unit fails on {}", self.morphisms[f].name));
            }
        }
        for h in 0..m {
            for g in 0..m {
                let Some(hg) = self.compose[h][g] else { continue };
                for f in 0..m {
                    let Some(gf) = self.compose[g][f] else { continue };
                    let left = self.compose[hg][f];
                    let right = self.compose[h][gf];
                    if left != right || left.is_none() {
                        bad.push(format!(
                            "associativity fails on {} after {} after {}",
                            self.morphisms[h].name, self.morphisms[g].name, self.morphisms[f].name
                        ));
                    }
                }
            }
        }
        bad
    }

    /// Same objects and morphism names with all arrows reversed.
    pub fn opposite(&self) -> FinCat {
        let morphisms: Vec<Mor> = self
            .morphisms
            .iter()
            .map(|m| Mor { name: m.name.clone(), src: m.tgt, tgt: m.src })
            .collect();
        let m = morphisms.len();
        let mut compose = vec![vec![None; m]; m];
        for g in 0..m {
            for f in 0..m {
                // In the opposite, g after f is the original f after g.
                compose[g][f] = self.compose[f][g];
            }
        }
        FinCat {
            objects: self.objects.clone(),
            morphisms,
            identity: self.identity.clone(),
            compose,
            obj_index: self.obj_index.clone(),
            mor_index: self.mor_index.clone(),
        }
    }
}

/// Product category: pairs of objects and morphisms, componentwise
/// composition. Names are `({left},{right})`.
pub fn product_cat(a: &FinCat, b: &FinCat) -> Result<FinCat> {
    let mut objects = Vec::with_capacity(a.object_count() * b.object_count());
    for x in 0..a.object_count() {
        for y in 0..b.object_count() {
            objects.push(format!("({},{})", a.object_name(x), b.object_name(y)));
        }
    }
    let nb = b.object_count();
    let mb = b.morphism_count();
    let mut morphisms = Vec::with_capacity(a.morphism_count() * mb);
    for f in 0..a.morphism_count() {
        for g in 0..mb {
            let (mf, mg) = (a.morphism(f), b.morphism(g));
            morphisms.push(Mor {
                name: format!("({},{})", mf.name, mg.name),
                src: mf.src * nb + mg.src,
                tgt: mf.tgt * nb + mg.tgt,
            });
        }
    }
    let identity: Vec<usize> = (0..a.object_count() * nb)
        .map(|o| a.identity_of(o / nb) * mb + b.identity_of(o % nb))
        .collect();
    let m = morphisms.len();
    let mut compose = vec![vec![None; m]; m];
    for g in 0..m {
        for f in 0..m {
            let (g1, g2) = (g / mb, g % mb);
            let (f1, f2) = (f / mb, f % mb);
            if let (Some(c1), Some(c2)) = (a.compose(g1, f1), b.compose(g2, f2)) {
                compose[g][f] = Some(c1 * mb + c2);
            }
        }
    }
    FinCat::validated(objects, morphisms, identity, compose)
}

/// Functor between finite categories as explicit object and morphism maps.
#[derive(Debug, Clone)]
pub struct FunctorData {
    pub source: FinCat,
    pub target: FinCat,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl FunctorData {
    pub fn new(
        source: FinCat,
        target: FinCat,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Result<Self> {
        let f = FunctorData { source, target, obj_map, mor_map };
        let report = f.validate();
        if report.is_empty() {
            Ok(f)
        } else {
            Err(Error::invalid(format!("not a functor: {}", report.join("; "))))
        }
    }

    pub fn identity(c: &FinCat) -> Self {
        FunctorData {
            source: c.clone(),
            target: c.clone(),
            obj_map: (0..c.object_count()).collect(),
            mor_map: (0..c.morphism_count()).collect(),
        }
    }

    /// Functoriality violations, one line each.
    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        if self.obj_map.len() != self.source.object_count()
            || self.mor_map.len() != self.source.morphism_count()
        {
            return vec!["object/morphism map lengths do not match the source".to_string()];
        }
        if self.obj_map.iter().any(|&o| o >= self.target.object_count())
            || self.mor_map.iter().any(|&m| m >= self.target.morphism_count())
        {
            return vec!["map image out of range in the target".to_string()];
        }
        for (i, &fi) in self.mor_map.iter().enumerate() {
            let m = self.source.morphism(i);
            let fm = self.target.morphism(fi);
            if fm.src != self.obj_map[m.src] || fm.tgt != self.obj_map[m.tgt] {
                bad.push(format!("endpoints of {} not preserved", m.name));
            }
        }
        for o in 0..self.source.object_count() {
            if self.mor_map[self.source.identity_of(o)]
                != self.target.identity_of(self.obj_map[o])
            {
                bad.push(format!("identity of {} not preserved", self.source.object_name(o)));
            }
        }
        for g in 0..self.source.morphism_count() {
            for f in 0..self.source.morphism_count() {
                if let Some(gf) = self.source.compose(g, f) {
                    let image = self.target.compose(self.mor_map[g], self.mor_map[f]);
                    if image != Some(self.mor_map[gf]) {
                        bad.push(format!(
                            "composition {} after {} not preserved",
                            self.source.morphism(g).name,
                            self.source.morphism(f).name
                        ));
                    }
                }
            }
        }
        bad
    }

    pub fn apply_obj(&self, o: usize) -> usize {
        self.obj_map[o]
    }

    pub fn apply_mor(&self, m: usize) -> usize {
        self.mor_map[m]
    }

    /// self after other.
    pub fn compose(&self, other: &FunctorData) -> Result<FunctorData> {
        if other.target.objects != self.source.objects
            || other.target.morphisms != self.source.morphisms
        {
            return Err(Error::mismatch("functor composition endpoints"));
        }
        FunctorData::new(
            other.source.clone(),
            self.target.clone(),
            other.obj_map.iter().map(|&o| self.obj_map[o]).collect(),
            other.mor_map.iter().map(|&m| self.mor_map[m]).collect(),
        )
    }

    /// The same data read as a functor between the opposite categories.
    pub fn opposite(&self) -> FunctorData {
        FunctorData {
            source: self.source.opposite(),
            target: self.target.opposite(),
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }
}

/// The diagonal functor into the product of `c` with itself.
pub fn diagonal(c: &FinCat) -> Result<FunctorData> {
    let cc = product_cat(c, c)?;
    let n = c.object_count();
    let m = c.morphism_count();
    FunctorData::new(
        c.clone(),
        cc,
        (0..n).map(|o| o * n + o).collect(),
        (0..m).map(|f| f * m + f).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{arrow_cat, reflexive_pair};

    #[test]
    fn builder_closes_reflexive_pair() {
        let c = reflexive_pair();
        assert_eq!(c.object_count(), 2);
        assert_eq!(c.morphism_count(), 7);
        assert!(c.validate_category().is_empty());
    }

    #[test]
    fn missing_composite_is_rejected() {
        let err = FinCat::build(
            &["0", "1", "2"],
            &[("a", "0", "1"), ("b", "1", "2")],
            &[],
        )
        .unwrap_err();
        assert!(err.to_string().contains("missing composite"));
    }

    #[test]
    fn broken_unit_is_reported() {
        let make = |compose: Vec<Vec<Option<usize>>>| {
            FinCat::new(
                vec!["x".to_string()],
                vec![
                    Mor { name: "e".into(), src: 0, tgt: 0 },
                    Mor { name: "z".into(), src: 0, tgt: 0 },
                ],
                vec![0],
                compose,
            )
            .unwrap()
        };
        // z an absorbing element: a lawful one-object category.
        let lawful = make(vec![vec![Some(0), Some(1)], vec![Some(1), Some(1)]]);
        assert!(lawful.validate_category().is_empty());
        // e after z claimed to be e: breaks the left unit law on z.
        let broken = make(vec![vec![Some(0), Some(0)], vec![Some(1), Some(1)]]);
        let report = broken.validate_category();
        assert!(report.iter().any(|l| l.contains("unit")), "{report:?}");
    }

    #[test]
    fn poset_builder_makes_join_square() {
        // 0 < l, r < 1: the diamond with a join.
        let c = FinCat::poset(&["0", "l", "r", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(c.object_count(), 4);
        // identities + 0<l, 0<r, 0<1, l<1, r<1
        assert_eq!(c.morphism_count(), 9);
        assert!(c.validate_category().is_empty());
        let g = c.morphism_index("l<1").unwrap();
        let f = c.morphism_index("0<l").unwrap();
        assert_eq!(c.compose(g, f), c.morphism_index("0<1"));
    }

    #[test]
    fn poset_rejects_cycles() {
        assert!(FinCat::poset(&["a", "b"], &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn monoid_builder_z2() {
        let z2 = FinCat::monoid("*", &["1", "g"], 0, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.morphism_count(), 2);
        let g = z2.morphism_index("g").unwrap();
        assert_eq!(z2.compose(g, g), Some(z2.identity_of(0)));
    }

    #[test]
    fn opposite_is_involutive_and_reverses() {
        let c = arrow_cat();
        let op = c.opposite();
        let a = op.morphism_index("a").unwrap();
        assert_eq!(op.morphism(a).src, 1);
        assert_eq!(op.morphism(a).tgt, 0);
        assert!(op.validate_category().is_empty());
        assert_eq!(op.opposite(), c);
    }

    #[test]
    fn product_counts_multiply() {
        let c = arrow_cat();
        let p = product_cat(&c, &c).unwrap();
        assert_eq!(p.object_count(), 4);
        assert_eq!(p.morphism_count(), 9);
        assert!(p.validate_category().is_empty());
    }

    #[test]
    fn diagonal_composes_with_projection_to_identity() {
        let c = reflexive_pair();
        let d = diagonal(&c).unwrap();
        assert!(d.validate().is_empty());
        // First projection out of the product.
        let m = c.morphism_count();
        let proj = FunctorData::new(
            d.target.clone(),
            c.clone(),
            (0..d.target.object_count()).map(|o| o / c.object_count()).collect(),
            (0..d.target.morphism_count()).map(|f| f / m).collect(),
        )
        .unwrap();
        let comp = proj.compose(&d).unwrap();
        assert_eq!(comp.obj_map, (0..c.object_count()).collect::<Vec<_>>());
        assert_eq!(comp.mor_map, (0..m).collect::<Vec<_>>());
    }

    #[test]
    fn functor_validation_catches_bad_composition() {
        let c = arrow_cat();
        // Swap the identities: endpoints break.
        let bad = FunctorData {
            source: c.clone(),
            target: c.clone(),
            obj_map: vec![1, 0],
            mor_map: vec![0, 1, 2],
        };
        assert!(!bad.validate().is_empty());
    }
}
