//! Presentations of simplicially enriched algebraic theories.
//!
//! A theory here is single-sorted with objects `X0, ..., Xn` standing for
//! finite powers of the base sort. Its enriched hom from `Xa` to `X1` is not
//! stored as data: it is the free closure of the presentation under
//! substitution, and this module enumerates it on demand. A presentation
//! lists operation generators (vertices) and homotopy generators (cells
//! between vertex terms), and three caps keep every enumeration finite:
//!
//! * `trunc`: the simplicial truncation level of every hom,
//! * `arity_cap`: the largest power object `X_arity_cap`,
//! * `op_cap`: the largest weight of a single term, where weight counts
//!   generator nodes (a homotopy node costs one more than its heavier
//!   boundary, with argument weights multiplied by how often the boundary
//!   uses them).
//!
//! The literal free simplicial enrichment over a homotopy generator is
//! infinite even at a fixed truncation, because diagonals allow terms to
//! grow without bound. The weight cap is the choice that makes homs finite;
//! composition is therefore partial, failing with a resource error when a
//! composite would leave the capped fragment.
//!
//! A `k`-cell of `hom(Xa, X1)` is a term over `a` variables whose homotopy
//! nodes carry a flip index `p` in `1..=k`, encoding the monotone surjection
//! `[k] -> [1]` with value `[x >= p]`. Faces reindex flips and expand a node
//! whose surjection becomes constant into the matching boundary term;
//! degeneracies shift flips upward. A term is non-degenerate exactly when
//! its flips cover `1..=k`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::simpset::{word_push, DegenerateRef, TruncatedSSet};

/// A term in the free capped closure of a theory presentation.
///
/// `Var(i)` is the `i`-th projection variable. `Op(g, args)` applies
/// operation generator `g`. `Cell { gen, flip, args }` applies homotopy
/// generator `gen` at flip index `flip`; at simplicial level `k` the flip
/// ranges over `1..=k`, so level-0 terms contain no `Cell` nodes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    Op(usize, Vec<Term>),
    Cell { gen: usize, flip: usize, args: Vec<Term> },
}

/// An operation generator: a vertex of `hom(X_arity, X1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpGen {
    pub name: String,
    pub arity: usize,
}

/// A homotopy generator: a 1-cell of `hom(X_arity, X1)` between two vertex
/// terms. Face 1 of the generator is `source` and face 0 is `target`,
/// matching the orientation of the standard 1-simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellGen {
    pub name: String,
    pub arity: usize,
    pub source: Term,
    pub target: Term,
}

/// A finitely presented simplicially enriched theory with objects
/// `X0, ..., X_arity_cap` regarded as powers of the base sort `X1`.
///
/// Homs are presented, not stored: `hom(Xa, Xb)` consists of `b`-tuples of
/// capped terms over `a` variables, composition is substitution, and the
/// identity of `Xa` is the tuple of variables. `projections[n]` designates
/// the projection vertices of `X_n`; for the tupling property to hold among
/// vertices they must be distinct variables, which `validate` enforces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnrichedTheory {
    pub trunc: usize,
    pub arity_cap: usize,
    pub op_cap: usize,
    pub ops: Vec<OpGen>,
    pub cells: Vec<CellGen>,
    pub projections: Vec<Vec<Term>>,
}

/// The projection tables every power object carries by default:
/// `projections[n] = [v0, ..., v_{n-1}]`.
pub fn standard_projections(arity_cap: usize) -> Vec<Vec<Term>> {
    (0..=arity_cap).map(|n| (0..n).map(Term::Var).collect()).collect()
}

/// Substitutes `args` for the variables of `t`, levelwise: flips are left
/// untouched, so substituting level-`k` arguments into a level-`k` term
/// yields a level-`k` term.
pub fn subst(t: &Term, args: &[Term]) -> Term {
    match t {
        Term::Var(i) => args[*i].clone(),
        Term::Op(g, xs) => Term::Op(*g, xs.iter().map(|x| subst(x, args)).collect()),
        Term::Cell { gen, flip, args: xs } => Term::Cell {
            gen: *gen,
            flip: *flip,
            args: xs.iter().map(|x| subst(x, args)).collect(),
        },
    }
}

fn count_var_uses(t: &Term, n_vars: usize) -> Vec<usize> {
    fn rec(t: &Term, out: &mut Vec<usize>) {
        match t {
            Term::Var(i) => out[*i] += 1,
            Term::Op(_, args) | Term::Cell { args, .. } => {
                for a in args {
                    rec(a, out);
                }
            }
        }
    }
    let mut out = vec![0; n_vars];
    rec(t, &mut out);
    out
}

/// Per-generator data the weight function and the enumerator share.
struct CellWeightData {
    src_weight: usize,
    tgt_weight: usize,
    src_uses: Vec<usize>,
    tgt_uses: Vec<usize>,
}

impl EnrichedTheory {
    /// A presentation with the standard projection tables.
    pub fn new(
        trunc: usize,
        arity_cap: usize,
        op_cap: usize,
        ops: Vec<OpGen>,
        cells: Vec<CellGen>,
    ) -> Self {
        let projections = standard_projections(arity_cap);
        EnrichedTheory { trunc, arity_cap, op_cap, ops, cells, projections }
    }

    pub fn object_count(&self) -> usize {
        self.arity_cap + 1
    }

    pub fn object_name(&self, n: usize) -> String {
        format!("X{n}")
    }

    /// The identity of `X_n` as a tuple of terms.
    pub fn identity_tuple(&self, n: usize) -> Vec<Term> {
        (0..n).map(Term::Var).collect()
    }

    fn cell_weight_data(&self, c: &CellGen) -> CellWeightData {
        CellWeightData {
            src_weight: self.term_weight(&c.source),
            tgt_weight: self.term_weight(&c.target),
            src_uses: count_var_uses(&c.source, c.arity),
            tgt_uses: count_var_uses(&c.target, c.arity),
        }
    }

    fn cell_node_weight(&self, data: &CellWeightData, arg_weights: &[usize]) -> usize {
        let side = |base: usize, uses: &[usize]| {
            base + uses.iter().zip(arg_weights).map(|(u, w)| u * w).sum::<usize>()
        };
        1 + side(data.src_weight, &data.src_uses).max(side(data.tgt_weight, &data.tgt_uses))
    }

    /// The weight of a term: operation nodes count one each, and a homotopy
    /// node counts one more than its heavier boundary expansion. Faces and
    /// degeneracies never increase weight, so the capped fragment is closed
    /// under the simplicial operators.
    pub fn term_weight(&self, t: &Term) -> usize {
        match t {
            Term::Var(_) => 0,
            Term::Op(_, args) => 1 + args.iter().map(|a| self.term_weight(a)).sum::<usize>(),
            Term::Cell { gen, args, .. } => {
                let data = self.cell_weight_data(&self.cells[*gen]);
                let ws: Vec<usize> = args.iter().map(|a| self.term_weight(a)).collect();
                self.cell_node_weight(&data, &ws)
            }
        }
    }

    /// Structural check for a term over `n_vars` variables at the given
    /// simplicial level. Returns a human-readable complaint on failure.
    pub fn term_ok(&self, t: &Term, n_vars: usize, level: usize) -> std::result::Result<(), String> {
        match t {
            Term::Var(i) => {
                if *i >= n_vars {
                    return Err(format!("variable v{i} exceeds the arity {n_vars}"));
                }
            }
            Term::Op(g, args) => {
                let op = self.ops.get(*g).ok_or_else(|| format!("unknown operation index {g}"))?;
                if args.len() != op.arity {
                    return Err(format!(
                        "operation {} expects {} arguments, found {}",
                        op.name,
                        op.arity,
                        args.len()
                    ));
                }
                for a in args {
                    self.term_ok(a, n_vars, level)?;
                }
            }
            Term::Cell { gen, flip, args } => {
                let cell =
                    self.cells.get(*gen).ok_or_else(|| format!("unknown homotopy index {gen}"))?;
                if args.len() != cell.arity {
                    return Err(format!(
                        "homotopy generator {} expects {} arguments, found {}",
                        cell.name,
                        cell.arity,
                        args.len()
                    ));
                }
                if *flip == 0 || *flip > level {
                    return Err(format!(
                        "flip {} of {} is outside 1..={} at level {}",
                        flip, cell.name, level, level
                    ));
                }
                for a in args {
                    self.term_ok(a, n_vars, level)?;
                }
            }
        }
        Ok(())
    }

    /// Substitution with the weight cap enforced on the result. `f` is a
    /// term over `args.len()` variables; `args` all live at the same level
    /// as `f` over some common variable count.
    pub fn compose_terms(&self, f: &Term, args: &[Term]) -> Result<Term> {
        let out = subst(f, args);
        let w = self.term_weight(&out);
        if w > self.op_cap {
            return Err(Error::resource(format!(
                "composite term has weight {w}, over the operation budget {}",
                self.op_cap
            )));
        }
        Ok(out)
    }

    /// Composition of hom tuples: `f` followed after `g`, i.e. each
    /// component of `f` with `g` substituted for its variables.
    pub fn compose_tuples(&self, f: &[Term], g: &[Term]) -> Result<Vec<Term>> {
        f.iter().map(|c| self.compose_terms(c, g)).collect()
    }

    /// Face `d_i` on a level-`level` term. Flips at most `i` survive, larger
    /// flips drop by one; a flip driven to `0` expands the node into its
    /// target boundary and a flip driven to `level` expands it into its
    /// source boundary, with the faced arguments substituted in.
    pub fn term_face(&self, t: &Term, level: usize, i: usize) -> Term {
        match t {
            Term::Var(v) => Term::Var(*v),
            Term::Op(g, args) => {
                Term::Op(*g, args.iter().map(|a| self.term_face(a, level, i)).collect())
            }
            Term::Cell { gen, flip, args } => {
                let fargs: Vec<Term> = args.iter().map(|a| self.term_face(a, level, i)).collect();
                let p = if *flip <= i { *flip } else { *flip - 1 };
                if p == 0 {
                    subst(&self.cells[*gen].target, &fargs)
                } else if p == level {
                    subst(&self.cells[*gen].source, &fargs)
                } else {
                    Term::Cell { gen: *gen, flip: p, args: fargs }
                }
            }
        }
    }

    /// Degeneracy `s_j` on a level-`level` term: flips above `j` shift up.
    pub fn term_degeneracy(&self, t: &Term, j: usize) -> Term {
        match t {
            Term::Var(v) => Term::Var(*v),
            Term::Op(g, args) => {
                Term::Op(*g, args.iter().map(|a| self.term_degeneracy(a, j)).collect())
            }
            Term::Cell { gen, flip, args } => Term::Cell {
                gen: *gen,
                flip: if *flip <= j { *flip } else { *flip + 1 },
                args: args.iter().map(|a| self.term_degeneracy(a, j)).collect(),
            },
        }
    }

    fn collect_flips(t: &Term, out: &mut BTreeSet<usize>) {
        match t {
            Term::Var(_) => {}
            Term::Op(_, args) => {
                for a in args {
                    Self::collect_flips(a, out);
                }
            }
            Term::Cell { flip, args, .. } => {
                out.insert(*flip);
                for a in args {
                    Self::collect_flips(a, out);
                }
            }
        }
    }

    /// A level-`level` term is non-degenerate exactly when its flip indices
    /// cover all of `1..=level`: a missing value `v` means the term is
    /// `s_{v-1}` of a lower term.
    pub fn is_nondegenerate(&self, t: &Term, level: usize) -> bool {
        let mut flips = BTreeSet::new();
        Self::collect_flips(t, &mut flips);
        (1..=level).all(|v| flips.contains(&v))
    }

    fn unshift_flips(t: &Term, v: usize) -> Term {
        match t {
            Term::Var(i) => Term::Var(*i),
            Term::Op(g, args) => {
                Term::Op(*g, args.iter().map(|a| Self::unshift_flips(a, v)).collect())
            }
            Term::Cell { gen, flip, args } => Term::Cell {
                gen: *gen,
                flip: if *flip < v { *flip } else { *flip - 1 },
                args: args.iter().map(|a| Self::unshift_flips(a, v)).collect(),
            },
        }
    }

    /// Eilenberg-Zilber data of a term: the non-degenerate base, its level,
    /// and the degeneracy word (outermost letter first, already normalized).
    pub fn strip_term(&self, t: &Term, level: usize) -> (Term, usize, Vec<usize>) {
        let mut t = t.clone();
        let mut level = level;
        let mut letters: Vec<usize> = Vec::new();
        loop {
            let mut flips = BTreeSet::new();
            Self::collect_flips(&t, &mut flips);
            match (1..=level).find(|v| !flips.contains(v)) {
                None => break,
                Some(v) => {
                    t = Self::unshift_flips(&t, v);
                    letters.push(v - 1);
                    level -= 1;
                }
            }
        }
        let mut word: Vec<usize> = Vec::new();
        for &c in letters.iter().rev() {
            word = word_push(&word, c);
        }
        (t, level, word)
    }

    /// Every capped term over `n_vars` variables at the given level, weight
    /// ascending, deterministic within each weight class.
    pub fn hom_terms(&self, n_vars: usize, level: usize) -> Vec<Term> {
        let cap = self.op_cap;
        let cell_data: Vec<CellWeightData> =
            self.cells.iter().map(|c| self.cell_weight_data(c)).collect();
        let mut by_weight: Vec<Vec<Term>> = Vec::with_capacity(cap + 1);
        by_weight.push((0..n_vars).map(Term::Var).collect());
        for w in 1..=cap {
            let mut bucket: Vec<Term> = Vec::new();
            for (g, op) in self.ops.iter().enumerate() {
                for vecw in weight_vectors(op.arity, w - 1) {
                    if vecw.iter().sum::<usize>() != w - 1 {
                        continue;
                    }
                    push_arg_products(&mut bucket, &by_weight, &vecw, &mut |args| {
                        Term::Op(g, args)
                    });
                }
            }
            for (c, cell) in self.cells.iter().enumerate() {
                for flip in 1..=level {
                    for vecw in weight_vectors(cell.arity, w - 1) {
                        if self.cell_node_weight(&cell_data[c], &vecw) != w {
                            continue;
                        }
                        push_arg_products(&mut bucket, &by_weight, &vecw, &mut |args| {
                            Term::Cell { gen: c, flip, args }
                        });
                    }
                }
            }
            by_weight.push(bucket);
        }
        by_weight.concat()
    }

    /// The vertices of `hom(X_{n_vars}, X1)`: capped terms with no homotopy
    /// nodes.
    pub fn hom_vertex_terms(&self, n_vars: usize) -> Vec<Term> {
        self.hom_terms(n_vars, 0)
    }

    /// Materializes `hom(X_{n_vars}, X1)` as a truncated simplicial set:
    /// cells are the non-degenerate capped terms, named by their printed
    /// form, with faces computed by the flip calculus.
    pub fn hom_component_sset(&self, n_vars: usize) -> Result<TruncatedSSet> {
        let mut sset = TruncatedSSet::empty(self.trunc);
        let mut tables: Vec<BTreeMap<Term, usize>> = Vec::new();
        for level in 0..=self.trunc {
            let nd: Vec<Term> = self
                .hom_terms(n_vars, level)
                .into_iter()
                .filter(|t| self.is_nondegenerate(t, level))
                .collect();
            let mut table = BTreeMap::new();
            for t in &nd {
                sset.add_cell(level, self.term_string(t))?;
                table.insert(t.clone(), table.len());
            }
            if level >= 1 {
                for (idx, t) in nd.iter().enumerate() {
                    let faces: Result<Vec<DegenerateRef>> = (0..=level)
                        .map(|i| {
                            let f = self.term_face(t, level, i);
                            self.term_ref(&f, level - 1, &tables)
                        })
                        .collect();
                    sset.set_faces(level, idx, faces?)?;
                }
            }
            tables.push(table);
        }
        sset.validated()
    }

    fn term_ref(
        &self,
        t: &Term,
        level: usize,
        tables: &[BTreeMap<Term, usize>],
    ) -> Result<DegenerateRef> {
        let (base, base_level, word) = self.strip_term(t, level);
        let idx = tables[base_level].get(&base).copied().ok_or_else(|| {
            Error::invalid(format!(
                "term {} fell outside the enumerated hom",
                self.term_string(&base)
            ))
        })?;
        Ok(DegenerateRef { base_dim: base_level, base: idx, word })
    }

    /// Printed form of a term: `v0`, `m(v0,v1)`, `h(v0,v1,v2)` for flip 1,
    /// `h@2(...)` for higher flips. Injective on valid terms, and parsed
    /// back by `parse_term`.
    pub fn term_string(&self, t: &Term) -> String {
        let mut s = String::new();
        self.write_term(&mut s, t);
        s
    }

    fn write_term(&self, s: &mut String, t: &Term) {
        match t {
            Term::Var(i) => {
                let _ = write!(s, "v{i}");
            }
            Term::Op(g, args) => {
                s.push_str(&self.ops[*g].name);
                self.write_args(s, args);
            }
            Term::Cell { gen, flip, args } => {
                s.push_str(&self.cells[*gen].name);
                if *flip > 1 {
                    let _ = write!(s, "@{flip}");
                }
                self.write_args(s, args);
            }
        }
    }

    fn write_args(&self, s: &mut String, args: &[Term]) {
        if args.is_empty() {
            return;
        }
        s.push('(');
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            self.write_term(s, a);
        }
        s.push(')');
    }

    /// Parses the printed form back into a term over `n_vars` variables at
    /// the given level, enforcing arities, variable bounds, flip bounds, and
    /// the weight cap.
    pub fn parse_term(&self, input: &str, n_vars: usize, level: usize) -> Result<Term> {
        let bytes = input.as_bytes();
        let mut pos = 0usize;
        let t = self.parse_at(bytes, &mut pos, n_vars, level)?;
        skip_ws(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(Error::invalid(format!("trailing input after term at byte {pos}")));
        }
        let w = self.term_weight(&t);
        if w > self.op_cap {
            return Err(Error::resource(format!(
                "term has weight {w}, over the operation budget {}",
                self.op_cap
            )));
        }
        Ok(t)
    }

    fn parse_at(
        &self,
        bytes: &[u8],
        pos: &mut usize,
        n_vars: usize,
        level: usize,
    ) -> Result<Term> {
        skip_ws(bytes, pos);
        let ident = read_ident(bytes, pos)
            .ok_or_else(|| Error::invalid(format!("expected a term at byte {pos}")))?;
        if let Some(v) = variable_index(&ident) {
            if v >= n_vars {
                return Err(Error::invalid(format!("variable v{v} exceeds the arity {n_vars}")));
            }
            return Ok(Term::Var(v));
        }
        let flip = if bytes.get(*pos) == Some(&b'@') {
            *pos += 1;
            Some(read_number(bytes, pos).ok_or_else(|| {
                Error::invalid(format!("expected a flip index after @ at byte {pos}"))
            })?)
        } else {
            None
        };
        let args = if bytes.get(*pos) == Some(&b'(') {
            *pos += 1;
            let mut args = Vec::new();
            skip_ws(bytes, pos);
            if bytes.get(*pos) != Some(&b')') {
                loop {
                    args.push(self.parse_at(bytes, pos, n_vars, level)?);
                    skip_ws(bytes, pos);
                    match bytes.get(*pos) {
                        Some(&b',') => *pos += 1,
                        Some(&b')') => break,
                        _ => {
                            return Err(Error::invalid(format!(
                                "expected , or ) at byte {pos} in term"
                            )))
                        }
                    }
                }
            }
            *pos += 1;
            args
        } else {
            Vec::new()
        };
        if let Some(g) = self.ops.iter().position(|o| o.name == ident) {
            if flip.is_some() {
                return Err(Error::invalid(format!("operation {ident} takes no flip index")));
            }
            let t = Term::Op(g, args);
            self.term_ok(&t, n_vars, level).map_err(Error::invalid)?;
            return Ok(t);
        }
        if let Some(c) = self.cells.iter().position(|h| h.name == ident) {
            let t = Term::Cell { gen: c, flip: flip.unwrap_or(1), args };
            self.term_ok(&t, n_vars, level).map_err(Error::invalid)?;
            return Ok(t);
        }
        Err(Error::invalid(format!("unknown generator {ident}")))
    }

    /// All invariant violations of the presentation; empty means valid.
    pub fn validate(&self) -> Vec<String> {
        let mut report: Vec<String> = Vec::new();
        if self.arity_cap == 0 && (!self.ops.is_empty() || !self.cells.is_empty()) {
            report.push("arity cap 0 leaves no hom to receive the generators".to_string());
        }
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        for name in
            self.ops.iter().map(|o| o.name.as_str()).chain(self.cells.iter().map(|c| c.name.as_str()))
        {
            if !name_ok(name) {
                report.push(format!("generator name {name:?} is not a valid identifier"));
            }
            if !seen.insert(name) {
                report.push(format!("generator name {name} is declared twice"));
            }
        }
        for op in &self.ops {
            if op.arity > self.arity_cap {
                report.push(format!(
                    "operation {} has arity {}, over the arity cap {}",
                    op.name, op.arity, self.arity_cap
                ));
            }
            if self.op_cap < 1 {
                report.push(format!(
                    "operation {} cannot fit the operation budget 0",
                    op.name
                ));
            }
        }
        if !self.cells.is_empty() && self.trunc == 0 {
            report.push("homotopy generators need truncation level at least 1".to_string());
        }
        for cell in &self.cells {
            if cell.arity > self.arity_cap {
                report.push(format!(
                    "homotopy generator {} has arity {}, over the arity cap {}",
                    cell.name, cell.arity, self.arity_cap
                ));
            }
            let mut boundaries_ok = true;
            for (side, term) in [("source", &cell.source), ("target", &cell.target)] {
                if let Err(e) = self.boundary_term_ok(term, cell.arity) {
                    report.push(format!("{side} face of homotopy generator {}: {e}", cell.name));
                    boundaries_ok = false;
                    continue;
                }
                let uses = count_var_uses(term, cell.arity);
                for (i, u) in uses.iter().enumerate() {
                    if *u == 0 {
                        report.push(format!(
                            "homotopy generator {} ignores argument v{i} on its {side} face; boundaries must use every argument to keep the closure finite",
                            cell.name
                        ));
                    }
                }
            }
            // Weighing the generator walks its boundary terms, which is
            // only well founded once both are honest vertex terms.
            if boundaries_ok {
                let data = self.cell_weight_data(cell);
                let own = self.cell_node_weight(&data, &vec![0; cell.arity]);
                if own > self.op_cap {
                    report.push(format!(
                        "homotopy generator {} has weight {own}, over the operation budget {}",
                        cell.name, self.op_cap
                    ));
                }
            }
        }
        if self.projections.len() != self.arity_cap + 1 {
            report.push(format!(
                "projection table covers {} objects, expected {}",
                self.projections.len(),
                self.arity_cap + 1
            ));
        }
        for (n, projs) in self.projections.iter().enumerate() {
            if projs.len() != n {
                report.push(format!(
                    "X{n} designates {} projection vertices, expected {n}",
                    projs.len()
                ));
                continue;
            }
            let mut vars: BTreeSet<usize> = BTreeSet::new();
            for (i, p) in projs.iter().enumerate() {
                match p {
                    Term::Var(v) if *v < n => {
                        if !vars.insert(*v) {
                            report.push(format!(
                                "projections of X{n} repeat v{v}, so tupling is not unique among vertices"
                            ));
                        }
                    }
                    _ => report.push(format!(
                        "projection {i} of X{n} is not a variable vertex, so the tupling property fails"
                    )),
                }
            }
        }
        report
    }

    /// A boundary term of a homotopy generator must be a vertex term: no
    /// homotopy nodes, variables within the arity, operations well-formed.
    fn boundary_term_ok(&self, t: &Term, arity: usize) -> std::result::Result<(), String> {
        match t {
            Term::Cell { gen, .. } => {
                let name =
                    self.cells.get(*gen).map_or("<unknown>", |c| c.name.as_str()).to_string();
                Err(format!("contains the homotopy node {name}; boundaries must be vertex terms"))
            }
            _ => self.term_ok(t, arity, 0),
        }
    }
}

/// Checks every invariant of the presentation; the report is empty exactly
/// when the theory is valid.
pub fn validate_theory(t: &EnrichedTheory) -> Vec<String> {
    t.validate()
}

/// The discrete theory of one binary operation `m`.
pub fn build_t0() -> EnrichedTheory {
    EnrichedTheory::new(
        super::DEFAULT_TRUNC,
        super::DEFAULT_ARITY_CAP,
        super::DEFAULT_OP_CAP,
        vec![OpGen { name: "m".to_string(), arity: 2 }],
        Vec::new(),
    )
}

/// The theory of one binary operation together with a 1-cell `h` in
/// `hom(X3, X1)` from `m(m(v0,v1),v2)` to `m(v0,m(v1,v2))`: a bounded
/// fragment of the free enrichment generated by an associativity homotopy.
pub fn build_t1() -> EnrichedTheory {
    let mut t = build_t0();
    let m = |a: Term, b: Term| Term::Op(0, vec![a, b]);
    t.cells.push(CellGen {
        name: "h".to_string(),
        arity: 3,
        source: m(m(Term::Var(0), Term::Var(1)), Term::Var(2)),
        target: m(Term::Var(0), m(Term::Var(1), Term::Var(2))),
    });
    t
}

/// The theory with no generators and only the empty power `X0`.
pub fn trivial_theory() -> EnrichedTheory {
    EnrichedTheory::new(super::DEFAULT_TRUNC, 0, super::DEFAULT_OP_CAP, Vec::new(), Vec::new())
}

fn name_ok(name: &str) -> bool {
    let mut chars = name.chars();
    let Some(first) = chars.next() else { return false };
    if !(first.is_ascii_alphabetic() || first == '_') {
        return false;
    }
    if !chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
        return false;
    }
    // Reject anything the printer would confuse with a variable.
    variable_index(name).is_none()
}

fn variable_index(ident: &str) -> Option<usize> {
    let digits = ident.strip_prefix('v')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while bytes.get(*pos).is_some_and(|b| b.is_ascii_whitespace()) {
        *pos += 1;
    }
}

fn read_ident(bytes: &[u8], pos: &mut usize) -> Option<String> {
    let start = *pos;
    let first = *bytes.get(*pos)?;
    if !(first.is_ascii_alphabetic() || first == b'_') {
        return None;
    }
    *pos += 1;
    while bytes
        .get(*pos)
        .is_some_and(|&b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
    {
        *pos += 1;
    }
    Some(String::from_utf8_lossy(&bytes[start..*pos]).into_owned())
}

fn read_number(bytes: &[u8], pos: &mut usize) -> Option<usize> {
    let start = *pos;
    while bytes.get(*pos).is_some_and(|b| b.is_ascii_digit()) {
        *pos += 1;
    }
    if start == *pos {
        return None;
    }
    std::str::from_utf8(&bytes[start..*pos]).ok()?.parse().ok()
}

/// All vectors of the given length with entries in `0..=max_each`, in
/// lexicographic order.
fn weight_vectors(len: usize, max_each: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; len];
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, i: usize, max_each: usize) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=max_each {
            cur[i] = v;
            rec(out, cur, i + 1, max_each);
        }
    }
    rec(&mut out, &mut cur, 0, max_each);
    out
}

/// Appends `make(args)` for every choice of arguments with the prescribed
/// weights, in the enumeration order of the weight buckets.
fn push_arg_products(
    bucket: &mut Vec<Term>,
    by_weight: &[Vec<Term>],
    vecw: &[usize],
    make: &mut dyn FnMut(Vec<Term>) -> Term,
) {
    let mut args: Vec<Term> = Vec::with_capacity(vecw.len());
    fn rec(
        bucket: &mut Vec<Term>,
        by_weight: &[Vec<Term>],
        vecw: &[usize],
        args: &mut Vec<Term>,
        make: &mut dyn FnMut(Vec<Term>) -> Term,
    ) {
        if args.len() == vecw.len() {
            bucket.push(make(args.clone()));
            return;
        }
        let w = vecw[args.len()];
        for t in &by_weight[w] {
            args.push(t.clone());
            rec(bucket, by_weight, vecw, args, make);
            args.pop();
        }
    }
    rec(bucket, by_weight, vecw, &mut args, make);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: Term, b: Term) -> Term {
        Term::Op(0, vec![a, b])
    }

    fn v(i: usize) -> Term {
        Term::Var(i)
    }

    /// One unary homotopy generator looping on the identity: the smallest
    /// presentation whose hom has cells in every truncated dimension.
    fn loop_theory() -> EnrichedTheory {
        EnrichedTheory::new(
            2,
            1,
            2,
            Vec::new(),
            vec![CellGen { name: "c".to_string(), arity: 1, source: v(0), target: v(0) }],
        )
    }

    #[test]
    fn bundled_theories_validate_cleanly() {
        assert!(validate_theory(&build_t0()).is_empty());
        assert!(validate_theory(&build_t1()).is_empty());
        assert!(validate_theory(&trivial_theory()).is_empty());
        assert!(validate_theory(&loop_theory()).is_empty());
    }

    #[test]
    fn broken_projection_tables_are_reported() {
        let mut missing = build_t1();
        missing.projections[2] = vec![v(0)];
        let report = missing.validate();
        assert!(report.iter().any(|r| r.contains("expected 2")), "{report:?}");

        let mut repeated = build_t1();
        repeated.projections[2] = vec![v(0), v(0)];
        assert!(repeated.validate().iter().any(|r| r.contains("repeat")));

        let mut opaque = build_t1();
        opaque.projections[3][1] = m(v(0), v(1));
        assert!(opaque.validate().iter().any(|r| r.contains("not a variable")));
    }

    #[test]
    fn boundaries_must_be_total_vertex_terms() {
        let mut t = build_t1();
        t.cells[0].source = m(v(0), v(0));
        let report = t.validate();
        assert!(report.iter().any(|r| r.contains("ignores argument")), "{report:?}");

        let mut nested = build_t1();
        nested.cells[0].target =
            Term::Cell { gen: 0, flip: 1, args: vec![v(0), v(1), v(2)] };
        assert!(nested.validate().iter().any(|r| r.contains("vertex terms")));
    }

    #[test]
    fn the_associativity_witness_has_the_stated_faces() {
        let t = build_t1();
        let hom = t.hom_component_sset(3).unwrap();
        let left = hom.cell_index(0, "m(m(v0,v1),v2)").unwrap();
        let right = hom.cell_index(0, "m(v0,m(v1,v2))").unwrap();
        let h = hom.cell_index(1, "h(v0,v1,v2)").unwrap();
        assert_eq!(hom.face(1, h, 1), &DegenerateRef::nondeg(0, left));
        assert_eq!(hom.face(1, h, 0), &DegenerateRef::nondeg(0, right));
    }

    #[test]
    fn hom_sizes_over_three_variables_match_the_hand_count() {
        // Vertices: operation trees over three leaves with at most four
        // nodes, counted weight by weight as 3, 9, 54, 405, 3402. Edges: a
        // single h node fits the budget either bare (270 ways counting
        // argument weights zero or one) or under one m node (162 ways), and
        // two h nodes already weigh six, so no honest 2-cells survive.
        let t = build_t1();
        let hom = t.hom_component_sset(3).unwrap();
        assert_eq!(hom.cell_count(0), 3873);
        assert_eq!(hom.cell_count(1), 432);
        assert_eq!(hom.cell_count(2), 0);
    }

    #[test]
    fn identity_vertex_sits_in_the_endomorphism_hom() {
        let t = build_t1();
        assert!(t.hom_vertex_terms(1).contains(&v(0)));
        let hom = t.hom_component_sset(1).unwrap();
        assert!(hom.cell_index(0, "v0").is_some());
        // Unary operation trees with at most four m nodes: the Catalan
        // numbers 1, 1, 2, 5, 14 sum to 23.
        assert_eq!(hom.cell_count(0), 23);
        assert_eq!(t.identity_tuple(1), vec![v(0)]);
    }

    #[test]
    fn homotopy_composites_land_in_the_larger_hom() {
        let t = build_t1();
        let h = Term::Cell { gen: 0, flip: 1, args: vec![v(0), v(1), v(2)] };
        let tuple = vec![v(0), v(2), v(3)];
        let composed = t.compose_terms(&h, &tuple).unwrap();
        assert_eq!(composed, Term::Cell { gen: 0, flip: 1, args: tuple });
        assert_eq!(t.term_weight(&composed), 3);
        assert!(t.hom_terms(4, 1).contains(&composed));
        assert_eq!(t.term_face(&composed, 1, 1), m(m(v(0), v(2)), v(3)));

        let heavy = t.compose_terms(&h, &[m(v(0), v(1)), m(v(2), v(3)), v(0)]);
        assert!(matches!(heavy, Err(Error::Resource(_))));
    }

    #[test]
    fn degeneracies_strip_back_to_normal_form() {
        let t = build_t1();
        let h = Term::Cell { gen: 0, flip: 1, args: vec![v(0), v(1), v(2)] };
        let s0h = t.term_degeneracy(&h, 0);
        assert_eq!(s0h, Term::Cell { gen: 0, flip: 2, args: vec![v(0), v(1), v(2)] });
        assert!(!t.is_nondegenerate(&s0h, 2));
        let (base, level, word) = t.strip_term(&s0h, 2);
        assert_eq!((base, level, word), (h.clone(), 1, vec![0]));

        let lt = loop_theory();
        let c = |flip: usize, arg: Term| Term::Cell { gen: 0, flip, args: vec![arg] };
        let mixed = c(1, c(2, v(0)));
        let lifted = lt.term_degeneracy(&mixed, 1);
        assert_eq!(lifted, c(1, c(3, v(0))));
        let (base, level, word) = lt.strip_term(&lifted, 3);
        assert_eq!((base, level, word), (mixed, 2, vec![1]));
    }

    #[test]
    fn nested_homotopy_cells_make_higher_cells() {
        let lt = loop_theory();
        let hom = lt.hom_component_sset(1).unwrap();
        assert_eq!(hom.cell_count(0), 1);
        assert_eq!(hom.cell_count(1), 2);
        assert_eq!(hom.cell_count(2), 2);
        assert!(hom.cell_index(2, "c(c@2(v0))").is_some());
        assert!(hom.cell_index(2, "c@2(c(v0))").is_some());
    }

    #[test]
    fn term_strings_parse_back() {
        let t = build_t1();
        for (text, n_vars, level) in [
            ("m(m(v0,v1),v2)", 3, 0),
            ("h(v0, v2, v3)", 4, 1),
            ("h@1(v0,v1,v2)", 3, 1),
            ("m(v0, h(v0,v1,v2))", 3, 1),
            ("v1", 2, 0),
        ] {
            let parsed = t.parse_term(text, n_vars, level).unwrap();
            let reprinted = t.term_string(&parsed);
            assert_eq!(t.parse_term(&reprinted, n_vars, level).unwrap(), parsed);
        }
        assert!(t.parse_term("k(v0)", 1, 0).is_err());
        assert!(t.parse_term("m(v0)", 1, 0).is_err());
        assert!(t.parse_term("v9", 3, 0).is_err());
        assert!(t.parse_term("h(v0,v1,v2)", 3, 0).is_err());
        assert!(t.parse_term("h@2(v0,v1,v2)", 3, 1).is_err());
        assert!(t.parse_term("m(v0,v1) junk", 2, 0).is_err());
        assert!(t.parse_term("m(m(v0,m(v0,m(v0,m(v0,v0)))),v0)", 1, 0).is_err());
    }

    #[test]
    fn collapsing_the_witness_recovers_associated_normal_forms() {
        // Rewriting every vertex term to its right-associated normal form
        // identifies exactly the terms with the same leaf sequence, so the
        // quotient counts words of length 1 through 5 over three letters:
        // 3 + 9 + 27 + 81 + 243.
        fn leaves(t: &Term, out: &mut Vec<usize>) {
            match t {
                Term::Var(i) => out.push(*i),
                Term::Op(_, args) => {
                    for a in args {
                        leaves(a, out);
                    }
                }
                Term::Cell { .. } => unreachable!("vertex terms have no homotopy nodes"),
            }
        }
        let t = build_t1();
        let mut classes: BTreeSet<Vec<usize>> = BTreeSet::new();
        for term in t.hom_vertex_terms(3) {
            let mut word = Vec::new();
            leaves(&term, &mut word);
            classes.insert(word);
        }
        assert_eq!(classes.len(), 363);
    }

    #[test]
    fn face_and_degeneracy_identities_hold_on_sampled_terms() {
        let lt = loop_theory();
        let c = |flip: usize, arg: Term| Term::Cell { gen: 0, flip, args: vec![arg] };
        let samples = [c(1, c(2, v(0))), c(2, c(1, v(0))), c(1, c(1, v(0)))];
        for t in &samples {
            for j in 0..2 {
                for i in 0..j {
                    // d_i d_j = d_{j-1} d_i for i < j at level 2.
                    let left = lt.term_face(&lt.term_face(t, 2, j), 1, i);
                    let right = lt.term_face(&lt.term_face(t, 2, i), 1, j - 1);
                    assert_eq!(left, right, "term {t:?}, i {i}, j {j}");
                }
            }
            for j in 0..=1 {
                // d_j s_j = id and d_{j+1} s_j = id at level 2.
                let up = lt.term_degeneracy(t, j);
                assert_eq!(&lt.term_face(&up, 3, j), t);
                assert_eq!(&lt.term_face(&up, 3, j + 1), t);
            }
        }
    }
}
