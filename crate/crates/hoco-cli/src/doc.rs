//! Line-delimited document model for the `hoco` binary.
//!
//! A document is a plain text file holding one keyed entry per line. Blank
//! lines and lines whose first non-space character is `#` are skipped. The
//! first three payload-bearing lines form a fixed prolog:
//!
//! ```text
//! format 1
//! kind category
//! id walking-arrow
//! ```
//!
//! and the id must equal the file stem. The remaining lines depend on the
//! kind; unknown keys are rejected rather than ignored. Documents refer to
//! each other by id, and a reference `x` resolves to `x.hoco` in the same
//! directory as the referring file. The reference graph is a dag by
//! construction because every kind only refers to kinds below it:
//!
//! - `category`, `sset`, `theory` stand alone,
//! - `map` refers to two `sset` documents,
//! - `diagram` and `weight` refer to a `category`, `sset`s, and `map`s,
//! - `algebra` refers to a `theory` and, in its general form, to `sset`s
//!   and `map`s.
//!
//! Errors carry one of four classes that the binary turns into exit codes:
//! `parse` for malformed lines or missing required keys judged from the
//! file alone, `reference` for ids that do not resolve or resolve to the
//! wrong kind, `invariant` for payloads the core library rejects, and
//! `resource` for exhausted budgets. Identifiers may not contain
//! whitespace, `=`, `|`, or `#`, which keeps every generated name
//! round-trippable through the format.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::rc::Rc;

use hoco_core::fincat::FinCat;
use hoco_core::hocolim::{DiagramData, WeightData};
use hoco_core::simpset::{
    product, standard_simplex, word_is_normal, DegenerateRef, Product, SimplicialMap,
    TruncatedSSet,
};
use hoco_core::theories::{
    pointwise_map, strict_algebra, validate_theory, AlgebraData, CellGen, EnrichedTheory, OpGen,
};

/// Failure modes of the command line layer, one per exit code.
#[derive(Debug)]
pub enum CliError {
    /// The document text does not conform to the format. Exit code 2.
    Parse(String),
    /// An id fails to resolve, or resolves to the wrong kind. Exit code 3.
    Reference(String),
    /// The payload parses but the core library rejects it, or an input
    /// breaks a command precondition. Exit code 4.
    Invariant(String),
    /// A search or arithmetic budget ran out. Exit code 5.
    Resource(String),
}

impl CliError {
    pub fn class(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Reference(_) => "reference",
            CliError::Invariant(_) => "invariant",
            CliError::Resource(_) => "resource",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Reference(_) => 3,
            CliError::Invariant(_) => 4,
            CliError::Resource(_) => 5,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Parse(m)
            | CliError::Reference(m)
            | CliError::Invariant(m)
            | CliError::Resource(m) => m,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message())
    }
}

impl From<hoco_core::Error> for CliError {
    fn from(e: hoco_core::Error) -> Self {
        match e {
            hoco_core::Error::Overflow | hoco_core::Error::Resource(_) => {
                CliError::Resource(e.to_string())
            }
            hoco_core::Error::Invalid(_)
            | hoco_core::Error::Mismatch(_)
            | hoco_core::Error::InsufficientTruncation { .. } => CliError::Invariant(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// A fully built document: the declared id plus the core value it denotes.
#[derive(Debug)]
pub struct Document {
    pub id: String,
    pub body: DocBody,
}

#[derive(Debug)]
pub enum DocBody {
    Category(FinCat),
    SSet(TruncatedSSet),
    Map { map: SimplicialMap, source_id: String, target_id: String },
    Diagram { data: DiagramData, shape_id: String },
    Weight { data: WeightData, shape_id: String },
    Theory(EnrichedTheory),
    Algebra { data: Box<AlgebraData>, theory_id: String },
}

impl DocBody {
    pub fn kind(&self) -> &'static str {
        match self {
            DocBody::Category(_) => "category",
            DocBody::SSet(_) => "sset",
            DocBody::Map { .. } => "map",
            DocBody::Diagram { .. } => "diagram",
            DocBody::Weight { .. } => "weight",
            DocBody::Theory(_) => "theory",
            DocBody::Algebra { .. } => "algebra",
        }
    }
}

const KINDS: [&str; 7] = ["category", "sset", "map", "diagram", "weight", "theory", "algebra"];

/// One payload line with its 1-based position in the file, for error text.
#[derive(Debug, Clone)]
struct Line {
    no: usize,
    text: String,
}

/// The prolog plus raw payload lines, before any kind-specific parsing.
#[derive(Debug)]
pub struct RawDoc {
    pub kind: String,
    pub id: String,
    lines: Vec<Line>,
}

fn reserved(tok: &str) -> bool {
    tok.contains('=') || tok.contains('|') || tok.contains('#')
}

fn check_name(tok: &str, what: &str, no: usize) -> CliResult<()> {
    if reserved(tok) {
        return Err(CliError::Parse(format!(
            "line {no}: {what} '{tok}' contains a reserved character"
        )));
    }
    Ok(())
}

/// Reads the file named by a top level command argument. Unreadable main
/// inputs are parse errors; unreadable referenced siblings are reference
/// errors and are handled by the resolver instead.
pub fn read_main(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

pub fn parse_raw(text: &str) -> CliResult<RawDoc> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        lines.push(Line { no: i + 1, text: raw.to_string() });
    }
    if lines.len() < 3 {
        return Err(CliError::Parse("missing prolog: expected format, kind, and id lines".into()));
    }
    let ftoks: Vec<&str> = lines[0].text.split_whitespace().collect();
    if ftoks.first() != Some(&"format") || ftoks.len() != 2 {
        return Err(CliError::Parse(format!(
            "line {}: the first line must be 'format 1'",
            lines[0].no
        )));
    }
    if ftoks[1] != "1" {
        return Err(CliError::Parse(format!(
            "line {}: unsupported format version '{}'",
            lines[0].no, ftoks[1]
        )));
    }
    let ktoks: Vec<&str> = lines[1].text.split_whitespace().collect();
    if ktoks.first() != Some(&"kind") || ktoks.len() != 2 {
        return Err(CliError::Parse(format!(
            "line {}: the second line must be 'kind <kind>'",
            lines[1].no
        )));
    }
    if !KINDS.contains(&ktoks[1]) {
        return Err(CliError::Parse(format!("line {}: unknown kind '{}'", lines[1].no, ktoks[1])));
    }
    let itoks: Vec<&str> = lines[2].text.split_whitespace().collect();
    if itoks.first() != Some(&"id") || itoks.len() != 2 {
        return Err(CliError::Parse(format!(
            "line {}: the third line must be 'id <id>'",
            lines[2].no
        )));
    }
    check_name(itoks[1], "id", lines[2].no)?;
    Ok(RawDoc { kind: ktoks[1].to_string(), id: itoks[1].to_string(), lines: lines.split_off(3) })
}

/// The id declared inside a file must match the file stem, so that the id
/// by which a document is referenced is also the id it believes it has.
pub fn check_stem(path: &Path, raw: &RawDoc) -> CliResult<()> {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
    if stem != raw.id {
        return Err(CliError::Invariant(format!(
            "document {} declares id '{}' but is stored under stem '{stem}'",
            path.display(),
            raw.id
        )));
    }
    Ok(())
}

/// Loads and caches sibling documents referenced by id.
pub struct Resolver {
    dir: PathBuf,
    cache: BTreeMap<String, Rc<Document>>,
}

impl Resolver {
    pub fn new(dir: PathBuf) -> Self {
        Resolver { dir, cache: BTreeMap::new() }
    }

    pub fn for_path(path: &Path) -> Self {
        Resolver::new(path.parent().unwrap_or_else(|| Path::new(".")).to_path_buf())
    }

    fn resolve(&mut self, id: &str, expect: &str, no: usize) -> CliResult<Rc<Document>> {
        if let Some(d) = self.cache.get(id) {
            let d = d.clone();
            if d.body.kind() != expect {
                return Err(CliError::Reference(format!(
                    "line {no}: document '{id}' has kind {}, expected {expect}",
                    d.body.kind()
                )));
            }
            return Ok(d);
        }
        let path = self.dir.join(format!("{id}.hoco"));
        let text = fs::read_to_string(&path).map_err(|e| {
            CliError::Reference(format!(
                "line {no}: cannot read referenced document {}: {e}",
                path.display()
            ))
        })?;
        let raw = parse_raw(&text)
            .map_err(|e| CliError::Parse(format!("in {}: {}", path.display(), e.message())))?;
        if raw.id != id {
            return Err(CliError::Invariant(format!(
                "document {} declares id '{}' but was referenced as '{id}'",
                path.display(),
                raw.id
            )));
        }
        if raw.kind != expect {
            return Err(CliError::Reference(format!(
                "line {no}: document '{id}' has kind {}, expected {expect}",
                raw.kind
            )));
        }
        let doc = Rc::new(build_document(raw, self)?);
        self.cache.insert(id.to_string(), doc.clone());
        Ok(doc)
    }

    fn sset(&mut self, id: &str, no: usize) -> CliResult<Rc<Document>> {
        self.resolve(id, "sset", no)
    }
}

fn as_sset(d: &Document) -> &TruncatedSSet {
    match &d.body {
        DocBody::SSet(x) => x,
        _ => unreachable!("resolver checked the kind"),
    }
}

fn as_map(d: &Document) -> &SimplicialMap {
    match &d.body {
        DocBody::Map { map, .. } => map,
        _ => unreachable!("resolver checked the kind"),
    }
}

fn as_category(d: &Document) -> &FinCat {
    match &d.body {
        DocBody::Category(c) => c,
        _ => unreachable!("resolver checked the kind"),
    }
}

fn as_theory(d: &Document) -> &EnrichedTheory {
    match &d.body {
        DocBody::Theory(t) => t,
        _ => unreachable!("resolver checked the kind"),
    }
}

/// Loads the document at `path` together with everything it references.
pub fn load_main(path: &Path) -> CliResult<Document> {
    let text = read_main(path)?;
    let raw = parse_raw(&text)?;
    check_stem(path, &raw)?;
    let mut resolver = Resolver::for_path(path);
    build_document(raw, &mut resolver)
}

/// Loads `path` and insists on a particular kind, for commands whose input
/// only makes sense for one kind of document.
pub fn load_expect(path: &Path, expect: &str) -> CliResult<Document> {
    let doc = load_main(path)?;
    if doc.body.kind() != expect {
        return Err(CliError::Invariant(format!(
            "{} is a {} document, but this command needs a {expect}",
            path.display(),
            doc.body.kind()
        )));
    }
    Ok(doc)
}

pub fn build_document(raw: RawDoc, resolver: &mut Resolver) -> CliResult<Document> {
    let body = match raw.kind.as_str() {
        "category" => DocBody::Category(build_category(&raw.lines)?),
        "sset" => DocBody::SSet(build_sset(&raw.lines)?),
        "map" => {
            let (map, source_id, target_id) = build_map(&raw.lines, resolver)?;
            DocBody::Map { map, source_id, target_id }
        }
        "diagram" => {
            let (values, actions, shape, trunc, shape_id) =
                build_functor_parts(&raw.lines, resolver, false)?;
            let data = DiagramData::new(shape, trunc, values, actions)?;
            DocBody::Diagram { data, shape_id }
        }
        "weight" => {
            let (values, actions, shape, trunc, shape_id) =
                build_functor_parts(&raw.lines, resolver, true)?;
            let data = WeightData::new(shape, trunc, values, actions)?;
            DocBody::Weight { data, shape_id }
        }
        "theory" => DocBody::Theory(build_theory(&raw.lines)?),
        "algebra" => {
            let (data, theory_id) = build_algebra(&raw.lines, resolver)?;
            DocBody::Algebra { data: Box::new(data), theory_id }
        }
        _ => unreachable!("parse_raw checked the kind"),
    };
    Ok(Document { id: raw.id, body })
}

fn unknown_key(kind: &str, line: &Line) -> CliError {
    let key = line.text.split_whitespace().next().unwrap_or("");
    CliError::Parse(format!("line {}: unknown key '{key}' in a {kind} document", line.no))
}

fn arity_err(line: &Line, want: &str) -> CliError {
    CliError::Parse(format!("line {}: expected '{want}'", line.no))
}

/// Splits a payload line on its first `=` and returns the left tokens and
/// the trimmed right side.
fn eq_split(line: &Line) -> CliResult<(Vec<&str>, &str)> {
    let Some(pos) = line.text.find('=') else {
        return Err(CliError::Parse(format!("line {}: expected '=' in this line", line.no)));
    };
    let lhs = line.text[..pos].split_whitespace().collect();
    Ok((lhs, line.text[pos + 1..].trim()))
}

fn parse_usize(tok: &str, what: &str, no: usize) -> CliResult<usize> {
    tok.parse()
        .map_err(|_| CliError::Parse(format!("line {no}: {what} '{tok}' is not a number")))
}

fn build_category(lines: &[Line]) -> CliResult<FinCat> {
    let mut objects: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut comps: Vec<(String, String, String)> = Vec::new();
    for line in lines {
        let toks: Vec<&str> = line.text.split_whitespace().collect();
        match toks[0] {
            "object" => {
                if toks.len() != 2 {
                    return Err(arity_err(line, "object <name>"));
                }
                check_name(toks[1], "object name", line.no)?;
                objects.push(toks[1].to_string());
            }
            "mor" => {
                if toks.len() != 4 {
                    return Err(arity_err(line, "mor <name> <source> <target>"));
                }
                for t in &toks[1..] {
                    check_name(t, "name", line.no)?;
                }
                arrows.push((toks[1].to_string(), toks[2].to_string(), toks[3].to_string()));
            }
            "compose" => {
                if toks.len() != 5 || toks[3] != "=" {
                    return Err(arity_err(line, "compose <g> <f> = <gf>"));
                }
                check_name(toks[4], "name", line.no)?;
                comps.push((toks[1].to_string(), toks[2].to_string(), toks[4].to_string()));
            }
            _ => return Err(unknown_key("category", line)),
        }
    }
    let object_refs: Vec<&str> = objects.iter().map(String::as_str).collect();
    let arrow_refs: Vec<(&str, &str, &str)> =
        arrows.iter().map(|(n, s, t)| (n.as_str(), s.as_str(), t.as_str())).collect();
    let comp_refs: Vec<(&str, &str, &str)> =
        comps.iter().map(|(g, f, gf)| (g.as_str(), f.as_str(), gf.as_str())).collect();
    Ok(FinCat::build(&object_refs, &arrow_refs, &comp_refs)?)
}

/// Parses one cell reference: zero or more degeneracy letters written
/// outermost first, then the name of the base cell in `target`. The base
/// dimension is whatever is left of `ref_dim` after the letters.
fn parse_ref(
    toks: &[&str],
    ref_dim: usize,
    target: &TruncatedSSet,
    no: usize,
) -> CliResult<DegenerateRef> {
    let Some((base_name, letters)) = toks.split_last() else {
        return Err(CliError::Parse(format!("line {no}: empty cell reference")));
    };
    let mut word = Vec::with_capacity(letters.len());
    for l in letters {
        let Some(j) = l.strip_prefix('s').and_then(|d| d.parse::<usize>().ok()) else {
            return Err(CliError::Parse(format!(
                "line {no}: expected a degeneracy letter 's<j>', found '{l}'"
            )));
        };
        word.push(j);
    }
    if word.len() > ref_dim {
        return Err(CliError::Invariant(format!(
            "line {no}: {} degeneracy letters will not fit in dimension {ref_dim}",
            word.len()
        )));
    }
    let base_dim = ref_dim - word.len();
    if !word_is_normal(&word) {
        return Err(CliError::Invariant(format!(
            "line {no}: degeneracy word must be strictly decreasing"
        )));
    }
    let mut dim_so_far = base_dim;
    for &j in word.iter().rev() {
        if j > dim_so_far {
            return Err(CliError::Invariant(format!(
                "line {no}: degeneracy letter s{j} does not apply in dimension {dim_so_far}"
            )));
        }
        dim_so_far += 1;
    }
    let Some(base) = target.cell_index(base_dim, base_name) else {
        return Err(CliError::Invariant(format!(
            "line {no}: no cell named '{base_name}' in dimension {base_dim}"
        )));
    };
    Ok(DegenerateRef { base_dim, base, word })
}

fn build_sset(lines: &[Line]) -> CliResult<TruncatedSSet> {
    let mut trunc: Option<usize> = None;
    for line in lines {
        let toks: Vec<&str> = line.text.split_whitespace().collect();
        if toks[0] == "trunc" {
            if trunc.is_some() {
                return Err(CliError::Parse(format!("line {}: trunc given twice", line.no)));
            }
            if toks.len() != 2 {
                return Err(arity_err(line, "trunc <n>"));
            }
            trunc = Some(parse_usize(toks[1], "truncation", line.no)?);
        }
    }
    let Some(trunc) = trunc else {
        return Err(CliError::Parse("sset document is missing its trunc line".into()));
    };
    let mut x = TruncatedSSet::empty(trunc);
    for line in lines {
        let toks: Vec<&str> = line.text.split_whitespace().collect();
        match toks[0] {
            "trunc" => {}
            "cell" => {
                if toks.len() != 3 {
                    return Err(arity_err(line, "cell <dim> <name>"));
                }
                let dim = parse_usize(toks[1], "dimension", line.no)?;
                check_name(toks[2], "cell name", line.no)?;
                x.add_cell(dim, toks[2])?;
            }
            "faces" => {}
            _ => return Err(unknown_key("sset", line)),
        }
    }
    for line in lines {
        if !line.text.split_whitespace().next().is_some_and(|k| k == "faces") {
            continue;
        }
        let (lhs, rhs) = eq_split(line)?;
        if lhs.len() != 3 {
            return Err(arity_err(line, "faces <dim> <name> = <ref> | <ref> | ..."));
        }
        let dim = parse_usize(lhs[1], "dimension", line.no)?;
        if dim == 0 {
            return Err(CliError::Parse(format!("line {}: vertices have no faces", line.no)));
        }
        let Some(idx) = x.cell_index(dim, lhs[2]) else {
            return Err(CliError::Invariant(format!(
                "line {}: faces for unknown cell '{}' in dimension {dim}",
                line.no, lhs[2]
            )));
        };
        let mut faces = Vec::with_capacity(dim + 1);
        for piece in rhs.split('|') {
            let toks: Vec<&str> = piece.split_whitespace().collect();
            faces.push(parse_ref(&toks, dim - 1, &x, line.no)?);
        }
        if faces.len() != dim + 1 {
            return Err(CliError::Invariant(format!(
                "line {}: a {dim}-cell has {} faces, found {}",
                line.no,
                dim + 1,
                faces.len()
            )));
        }
        x.set_faces(dim, idx, faces)?;
    }
    Ok(x.validated()?)
}

fn build_map(
    lines: &[Line],
    resolver: &mut Resolver,
) -> CliResult<(SimplicialMap, String, String)> {
    let mut source: Option<(String, usize)> = None;
    let mut target: Option<(String, usize)> = None;
    for line in lines {
        let toks: Vec<&str> = line.text.split_whitespace().collect();
        match toks[0] {
            "source" | "target" => {
                if toks.len() != 2 {
                    return Err(arity_err(line, "source <sset-id>"));
                }
                let slot = if toks[0] == "source" { &mut source } else { &mut target };
                if slot.is_some() {
                    return Err(CliError::Parse(format!(
                        "line {}: {} given twice",
                        line.no, toks[0]
                    )));
                }
                *slot = Some((toks[1].to_string(), line.no));
            }
            "assign" => {}
            _ => return Err(unknown_key("map", line)),
        }
    }
    let Some((source_id, sno)) = source else {
        return Err(CliError::Parse("map document is missing its source line".into()));
    };
    let Some((target_id, tno)) = target else {
        return Err(CliError::Parse("map document is missing its target line".into()));
    };
    let src_doc = resolver.sset(&source_id, sno)?;
    let tgt_doc = resolver.sset(&target_id, tno)?;
    let src = as_sset(&src_doc);
    let tgt = as_sset(&tgt_doc);
    let mut assign: Vec<Vec<Option<DegenerateRef>>> =
        (0..=src.trunc_level()).map(|d| vec![None; src.cell_count(d)]).collect();
    for line in lines {
        if !line.text.split_whitespace().next().is_some_and(|k| k == "assign") {
            continue;
        }
        let (lhs, rhs) = eq_split(line)?;
        if lhs.len() != 3 {
            return Err(arity_err(line, "assign <dim> <cell> = <ref>"));
        }
        let dim = parse_usize(lhs[1], "dimension", line.no)?;
        if dim > src.trunc_level() {
            return Err(CliError::Invariant(format!(
                "line {}: dimension {dim} is above the source truncation {}",
                line.no,
                src.trunc_level()
            )));
        }
        let Some(idx) = src.cell_index(dim, lhs[2]) else {
            return Err(CliError::Invariant(format!(
                "line {}: the source has no cell named '{}' in dimension {dim}",
                line.no, lhs[2]
            )));
        };
        if assign[dim][idx].is_some() {
            return Err(CliError::Parse(format!(
                "line {}: cell '{}' assigned twice",
                line.no, lhs[2]
            )));
        }
        let toks: Vec<&str> = rhs.split_whitespace().collect();
        assign[dim][idx] = Some(parse_ref(&toks, dim, tgt, line.no)?);
    }
    let mut rows = Vec::with_capacity(assign.len());
    for (dim, row) in assign.into_iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (idx, slot) in row.into_iter().enumerate() {
            let Some(r) = slot else {
                return Err(CliError::Invariant(format!(
                    "no assignment for cell '{}' in dimension {dim}",
                    src.cell_name(dim, idx)
                )));
            };
            out.push(r);
        }
        rows.push(out);
    }
    let map = SimplicialMap::new(src.clone(), tgt.clone(), rows)?;
    Ok((map, source_id, target_id))
}

enum ArrowSpec {
    Identity,
    Map(String),
}

/// Shared payload of `diagram` and `weight` documents. The kind decides the
/// variance: a diagram arrow acts from the value at its source to the value
/// at its target, a weight arrow the other way around.
#[allow(clippy::type_complexity)]
fn build_functor_parts(
    lines: &[Line],
    resolver: &mut Resolver,
    weight: bool,
) -> CliResult<(Vec<TruncatedSSet>, Vec<SimplicialMap>, FinCat, usize, String)> {
    let kind = if weight { "weight" } else { "diagram" };
    let mut shape: Option<(String, usize)> = None;
    let mut trunc: Option<usize> = None;
    let mut value_lines: Vec<(usize, String, String)> = Vec::new();
    let mut arrow_lines: Vec<(usize, String, ArrowSpec)> = Vec::new();
    for line in lines {
        let toks: Vec<&str> = line.text.split_whitespace().collect();
        match toks[0] {
            "shape" => {
                if toks.len() != 2 {
                    return Err(arity_err(line, "shape <category-id>"));
                }
                if shape.is_some() {
                    return Err(CliError::Parse(format!("line {}: shape given twice", line.no)));
                }
                shape = Some((toks[1].to_string(), line.no));
            }
            "trunc" => {
                if toks.len() != 2 {
                    return Err(arity_err(line, "trunc <n>"));
                }
                if trunc.is_some() {
                    return Err(CliError::Parse(format!("line {}: trunc given twice", line.no)));
                }
                trunc = Some(parse_usize(toks[1], "truncation", line.no)?);
            }
            "value" => {
                let (lhs, rhs) = eq_split(line)?;
                let rtoks: Vec<&str> = rhs.split_whitespace().collect();
                if lhs.len() != 2 || rtoks.len() != 1 {
                    return Err(arity_err(line, "value <object> = <sset-id>"));
                }
                value_lines.push((line.no, lhs[1].to_string(), rtoks[0].to_string()));
            }
            "arrow" => {
                let (lhs, rhs) = eq_split(line)?;
                let rtoks: Vec<&str> = rhs.split_whitespace().collect();
                if lhs.len() != 2 || rtoks.len() != 1 {
                    return Err(arity_err(line, "arrow <morphism> = identity | <map-id>"));
                }
                let spec = if rtoks[0] == "identity" {
                    ArrowSpec::Identity
                } else {
                    ArrowSpec::Map(rtoks[0].to_string())
                };
                arrow_lines.push((line.no, lhs[1].to_string(), spec));
            }
            _ => return Err(unknown_key(kind, line)),
        }
    }
    let Some((shape_id, shape_no)) = shape else {
        return Err(CliError::Parse(format!("{kind} document is missing its shape line")));
    };
    let Some(trunc) = trunc else {
        return Err(CliError::Parse(format!("{kind} document is missing its trunc line")));
    };
    let shape_doc = resolver.resolve(&shape_id, "category", shape_no)?;
    let c = as_category(&shape_doc).clone();

    let mut value_ids: BTreeMap<usize, (usize, String)> = BTreeMap::new();
    for (no, obj, id) in value_lines {
        let Some(o) = c.object_index(&obj) else {
            return Err(CliError::Invariant(format!(
                "line {no}: the shape has no object named '{obj}'"
            )));
        };
        if value_ids.insert(o, (no, id)).is_some() {
            return Err(CliError::Parse(format!("line {no}: object '{obj}' valued twice")));
        }
    }
    let mut values = Vec::with_capacity(c.object_count());
    for o in 0..c.object_count() {
        let Some((no, id)) = value_ids.get(&o) else {
            return Err(CliError::Invariant(format!(
                "no value for object '{}'",
                c.object_name(o)
            )));
        };
        let doc = resolver.sset(id, *no)?;
        values.push(as_sset(&doc).clone());
    }

    let mut arrow_specs: BTreeMap<usize, (usize, ArrowSpec)> = BTreeMap::new();
    for (no, name, spec) in arrow_lines {
        let Some(f) = c.morphism_index(&name) else {
            return Err(CliError::Invariant(format!(
                "line {no}: the shape has no morphism named '{name}'"
            )));
        };
        if c.is_identity_mor(f) {
            return Err(CliError::Parse(format!(
                "line {no}: identity morphisms act as identities and take no arrow line"
            )));
        }
        if arrow_specs.insert(f, (no, spec)).is_some() {
            return Err(CliError::Parse(format!("line {no}: morphism '{name}' given twice")));
        }
    }
    let mut actions = Vec::with_capacity(c.morphism_count());
    for f in 0..c.morphism_count() {
        let m = c.morphism(f);
        let domain = if weight { m.tgt } else { m.src };
        if c.is_identity_mor(f) {
            actions.push(SimplicialMap::identity(&values[domain]));
            continue;
        }
        let Some((no, spec)) = arrow_specs.get(&f) else {
            return Err(CliError::Invariant(format!("no arrow line for morphism '{}'", m.name)));
        };
        let action = match spec {
            ArrowSpec::Identity => SimplicialMap::identity(&values[domain]),
            ArrowSpec::Map(id) => {
                let doc = resolver.resolve(id, "map", *no)?;
                as_map(&doc).clone()
            }
        };
        actions.push(action);
    }
    Ok((values, actions, c, trunc, shape_id))
}

fn build_theory(lines: &[Line]) -> CliResult<EnrichedTheory> {
    let mut trunc: Option<usize> = None;
    let mut arity_cap: Option<usize> = None;
    let mut op_cap: Option<usize> = None;
    let mut ops: Vec<OpGen> = Vec::new();
    let mut cell_lines: Vec<(usize, String, usize, String)> = Vec::new();
    for line in lines {
        let toks: Vec<&str> = line.text.split_whitespace().collect();
        match toks[0] {
            "trunc" | "arity-cap" | "op-cap" => {
                if toks.len() != 2 {
                    return Err(arity_err(line, "trunc <n>"));
                }
                let slot = match toks[0] {
                    "trunc" => &mut trunc,
                    "arity-cap" => &mut arity_cap,
                    _ => &mut op_cap,
                };
                if slot.is_some() {
                    return Err(CliError::Parse(format!(
                        "line {}: {} given twice",
                        line.no, toks[0]
                    )));
                }
                *slot = Some(parse_usize(toks[1], toks[0], line.no)?);
            }
            "op" => {
                if toks.len() != 3 {
                    return Err(arity_err(line, "op <name> <arity>"));
                }
                ops.push(OpGen {
                    name: toks[1].to_string(),
                    arity: parse_usize(toks[2], "arity", line.no)?,
                });
            }
            "cell" => {
                let (lhs, rhs) = eq_split(line)?;
                if lhs.len() != 3 {
                    return Err(arity_err(line, "cell <name> <arity> = <source> -> <target>"));
                }
                let arity = parse_usize(lhs[2], "arity", line.no)?;
                cell_lines.push((line.no, lhs[1].to_string(), arity, rhs.to_string()));
            }
            _ => return Err(unknown_key("theory", line)),
        }
    }
    let (Some(trunc), Some(arity_cap), Some(op_cap)) = (trunc, arity_cap, op_cap) else {
        return Err(CliError::Parse(
            "theory document needs trunc, arity-cap, and op-cap lines".into(),
        ));
    };
    let base = EnrichedTheory::new(trunc, arity_cap, op_cap, ops.clone(), Vec::new());
    let mut cells = Vec::with_capacity(cell_lines.len());
    for (no, name, arity, rhs) in cell_lines {
        let Some(pos) = rhs.find("->") else {
            return Err(CliError::Parse(format!(
                "line {no}: expected '<source> -> <target>' after '='"
            )));
        };
        let source = base.parse_term(&rhs[..pos], arity, 0)?;
        let target = base.parse_term(&rhs[pos + 2..], arity, 0)?;
        cells.push(CellGen { name, arity, source, target });
    }
    let t = EnrichedTheory::new(trunc, arity_cap, op_cap, ops, cells);
    let report = validate_theory(&t);
    if !report.is_empty() {
        return Err(CliError::Invariant(format!(
            "theory does not validate: {}",
            report.join("; ")
        )));
    }
    Ok(t)
}

/// Right-nested strict power carriers over a base, with the product data
/// needed to decode their vertices back into argument tuples.
struct StrictPowers {
    base: TruncatedSSet,
    carriers: Vec<TruncatedSSet>,
    products: Vec<Option<Product>>,
}

impl StrictPowers {
    fn new(base: TruncatedSSet, cap: usize) -> CliResult<Self> {
        let trunc = base.trunc_level();
        let mut carriers = vec![standard_simplex(0, trunc), base.clone()];
        let mut products = vec![None, None];
        for n in 2..=cap {
            let p = product(&base, &carriers[n - 1])?;
            carriers.push(p.sset().clone());
            products.push(Some(p));
        }
        carriers.truncate(cap + 1);
        Ok(StrictPowers { base, carriers, products })
    }

    fn decode(&self, arity: usize, v: usize) -> Vec<usize> {
        match arity {
            0 => Vec::new(),
            1 => vec![v],
            _ => {
                let p = self.products[arity].as_ref().expect("powers built through the cap");
                let (a, rest) = p.components(0, v);
                let mut out = vec![a.base];
                out.extend(self.decode(arity - 1, rest.base));
                out
            }
        }
    }
}

fn lex_index(args: &[usize], base: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * base + a)
}

fn build_algebra(
    lines: &[Line],
    resolver: &mut Resolver,
) -> CliResult<(AlgebraData, String)> {
    let mut theory_ref: Option<(String, usize)> = None;
    let mut strict_lines = 0usize;
    let mut general_lines = 0usize;
    for line in lines {
        let toks: Vec<&str> = line.text.split_whitespace().collect();
        match toks[0] {
            "theory" => {
                if toks.len() != 2 {
                    return Err(arity_err(line, "theory <theory-id>"));
                }
                if theory_ref.is_some() {
                    return Err(CliError::Parse(format!("line {}: theory given twice", line.no)));
                }
                theory_ref = Some((toks[1].to_string(), line.no));
            }
            "base" => strict_lines += 1,
            "carrier" | "projection" => general_lines += 1,
            "op" | "cell" => {}
            _ => return Err(unknown_key("algebra", line)),
        }
    }
    let Some((theory_id, tno)) = theory_ref else {
        return Err(CliError::Parse("algebra document is missing its theory line".into()));
    };
    if strict_lines > 0 && general_lines > 0 {
        return Err(CliError::Parse(
            "algebra document mixes the strict simplex form with the general form".into(),
        ));
    }
    if strict_lines == 0 && general_lines == 0 {
        return Err(CliError::Parse(
            "algebra document needs either a base line or carrier lines".into(),
        ));
    }
    let theory_doc = resolver.resolve(&theory_id, "theory", tno)?;
    let theory = as_theory(&theory_doc).clone();
    let data = if strict_lines > 0 {
        build_strict_algebra(lines, theory)?
    } else {
        build_general_algebra(lines, theory, resolver)?
    };
    Ok((data, theory_id))
}

/// Strict simplex form: the base carrier is a standard simplex, the powers
/// are the literal iterated products, and every action is given by a value
/// table on vertices, extended to all cells by monotone interpolation.
///
/// An operation of arity `r` over the `k`-simplex takes `(k+1)^r` values,
/// one per argument tuple in lexicographic order with the leftmost argument
/// most significant. A homotopy generator additionally varies over the
/// interval coordinate, which is least significant: its table holds
/// `(k+1)^r * 2` values, the `t = 0` end before the `t = 1` end for each
/// tuple.
fn build_strict_algebra(lines: &[Line], theory: EnrichedTheory) -> CliResult<AlgebraData> {
    let mut base_dim: Option<usize> = None;
    let mut op_tables: BTreeMap<String, (usize, Vec<usize>)> = BTreeMap::new();
    let mut cell_tables: BTreeMap<String, (usize, Vec<usize>)> = BTreeMap::new();
    for line in lines {
        let toks: Vec<&str> = line.text.split_whitespace().collect();
        match toks[0] {
            "theory" => {}
            "base" => {
                if toks.len() != 3 || toks[1] != "simplex" {
                    return Err(arity_err(line, "base simplex <k>"));
                }
                if base_dim.is_some() {
                    return Err(CliError::Parse(format!("line {}: base given twice", line.no)));
                }
                base_dim = Some(parse_usize(toks[2], "simplex dimension", line.no)?);
            }
            "op" | "cell" => {
                let (lhs, rhs) = eq_split(line)?;
                if lhs.len() != 2 {
                    return Err(arity_err(line, "op <name> = <v> <v> ..."));
                }
                let mut table = Vec::new();
                for t in rhs.split_whitespace() {
                    table.push(parse_usize(t, "table entry", line.no)?);
                }
                let slot = if lhs[0] == "op" { &mut op_tables } else { &mut cell_tables };
                if slot.insert(lhs[1].to_string(), (line.no, table)).is_some() {
                    return Err(CliError::Parse(format!(
                        "line {}: {} '{}' given twice",
                        line.no, lhs[0], lhs[1]
                    )));
                }
            }
            _ => unreachable!("build_algebra screened the keys"),
        }
    }
    let k = base_dim.expect("strict form implies a base line");
    let trunc = theory.trunc;
    let powers = StrictPowers::new(standard_simplex(k, trunc), theory.arity_cap)?;
    let interval = standard_simplex(1, trunc);

    let mut op_actions = Vec::with_capacity(theory.ops.len());
    for op in &theory.ops {
        let Some((_, table)) = op_tables.remove(&op.name) else {
            return Err(CliError::Invariant(format!("no table for operation '{}'", op.name)));
        };
        let want = (k + 1).pow(op.arity as u32);
        check_table(&table, want, k, "operation", &op.name)?;
        let action = pointwise_map(
            &powers.carriers[op.arity],
            &powers.base,
            |v| powers.decode(op.arity, v),
            |xs| table[lex_index(xs, k + 1)],
        )?;
        op_actions.push(action);
    }
    if let Some(name) = op_tables.keys().next() {
        return Err(CliError::Invariant(format!(
            "table for '{name}', which is not an operation of the theory"
        )));
    }

    let mut cell_actions = Vec::with_capacity(theory.cells.len());
    for cell in &theory.cells {
        let Some((_, table)) = cell_tables.remove(&cell.name) else {
            return Err(CliError::Invariant(format!(
                "no table for homotopy generator '{}'",
                cell.name
            )));
        };
        let want = (k + 1).pow(cell.arity as u32) * 2;
        check_table(&table, want, k, "homotopy generator", &cell.name)?;
        let pi = product(&powers.carriers[cell.arity], &interval)?;
        let arity = cell.arity;
        let action = pointwise_map(
            pi.sset(),
            &powers.base,
            |v| {
                let (xs, t) = pi.components(0, v);
                let mut out = powers.decode(arity, xs.base);
                out.push(t.base);
                out
            },
            |xs| {
                let (args, t) = xs.split_at(arity);
                table[lex_index(args, k + 1) * 2 + t[0]]
            },
        )?;
        cell_actions.push(action);
    }
    if let Some(name) = cell_tables.keys().next() {
        return Err(CliError::Invariant(format!(
            "table for '{name}', which is not a homotopy generator of the theory"
        )));
    }

    Ok(strict_algebra(&theory, &powers.base, op_actions, cell_actions)?)
}

fn check_table(table: &[usize], want: usize, k: usize, what: &str, name: &str) -> CliResult<()> {
    if table.len() != want {
        return Err(CliError::Invariant(format!(
            "table for {what} '{name}' has {} entries, expected {want}",
            table.len()
        )));
    }
    if let Some(v) = table.iter().find(|&&v| v > k) {
        return Err(CliError::Invariant(format!(
            "table for {what} '{name}' names vertex {v}, but the base simplex has {}",
            k + 1
        )));
    }
    Ok(())
}

/// General form: every carrier, projection, and action is spelled out as a
/// referenced document. Projection rows below arity two are forced and are
/// filled in automatically.
fn build_general_algebra(
    lines: &[Line],
    theory: EnrichedTheory,
    resolver: &mut Resolver,
) -> CliResult<AlgebraData> {
    let cap = theory.arity_cap;
    let mut carrier_ids: BTreeMap<usize, (usize, String)> = BTreeMap::new();
    let mut projection_ids: BTreeMap<(usize, usize), (usize, String)> = BTreeMap::new();
    let mut op_ids: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut cell_ids: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for line in lines {
        let toks: Vec<&str> = line.text.split_whitespace().collect();
        match toks[0] {
            "theory" => {}
            "carrier" => {
                let (lhs, rhs) = eq_split(line)?;
                let rtoks: Vec<&str> = rhs.split_whitespace().collect();
                if lhs.len() != 2 || rtoks.len() != 1 {
                    return Err(arity_err(line, "carrier <n> = <sset-id>"));
                }
                let n = parse_usize(lhs[1], "carrier index", line.no)?;
                if carrier_ids.insert(n, (line.no, rtoks[0].to_string())).is_some() {
                    return Err(CliError::Parse(format!(
                        "line {}: carrier {n} given twice",
                        line.no
                    )));
                }
            }
            "projection" => {
                let (lhs, rhs) = eq_split(line)?;
                let rtoks: Vec<&str> = rhs.split_whitespace().collect();
                if lhs.len() != 3 || rtoks.len() != 1 {
                    return Err(arity_err(line, "projection <n> <i> = <map-id>"));
                }
                let n = parse_usize(lhs[1], "power", line.no)?;
                let i = parse_usize(lhs[2], "coordinate", line.no)?;
                if projection_ids.insert((n, i), (line.no, rtoks[0].to_string())).is_some() {
                    return Err(CliError::Parse(format!(
                        "line {}: projection {n} {i} given twice",
                        line.no
                    )));
                }
            }
            "op" | "cell" => {
                let (lhs, rhs) = eq_split(line)?;
                let rtoks: Vec<&str> = rhs.split_whitespace().collect();
                if lhs.len() != 2 || rtoks.len() != 2 || rtoks[0] != "map" {
                    return Err(arity_err(line, "op <name> = map <map-id>"));
                }
                let slot = if lhs[0] == "op" { &mut op_ids } else { &mut cell_ids };
                if slot.insert(lhs[1].to_string(), (line.no, rtoks[1].to_string())).is_some() {
                    return Err(CliError::Parse(format!(
                        "line {}: {} '{}' given twice",
                        line.no, lhs[0], lhs[1]
                    )));
                }
            }
            _ => unreachable!("build_algebra screened the keys"),
        }
    }

    let mut carriers = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        let Some((no, id)) = carrier_ids.get(&n) else {
            return Err(CliError::Invariant(format!("no carrier for X{n}")));
        };
        let doc = resolver.sset(id, *no)?;
        carriers.push(as_sset(&doc).clone());
    }
    if let Some((&n, _)) = carrier_ids.iter().find(|(&n, _)| n > cap) {
        return Err(CliError::Invariant(format!(
            "carrier {n} is above the arity cap {cap}"
        )));
    }

    let mut projection_actions: Vec<Vec<SimplicialMap>> = Vec::with_capacity(cap + 1);
    projection_actions.push(Vec::new());
    if cap >= 1 {
        projection_actions.push(vec![SimplicialMap::identity(&carriers[1])]);
    }
    for n in 2..=cap {
        let mut row = Vec::with_capacity(n);
        for i in 0..n {
            let Some((no, id)) = projection_ids.get(&(n, i)) else {
                return Err(CliError::Invariant(format!("no projection {n} {i}")));
            };
            let doc = resolver.resolve(id, "map", *no)?;
            row.push(as_map(&doc).clone());
        }
        projection_actions.push(row);
    }
    if let Some((&(n, i), _)) = projection_ids.iter().find(|(&(n, _), _)| !(2..=cap).contains(&n))
    {
        return Err(CliError::Invariant(format!(
            "projection {n} {i} is outside the arities that take projection lines"
        )));
    }

    let mut op_actions = Vec::with_capacity(theory.ops.len());
    for op in &theory.ops {
        let Some((no, id)) = op_ids.remove(&op.name) else {
            return Err(CliError::Invariant(format!("no action for operation '{}'", op.name)));
        };
        let doc = resolver.resolve(&id, "map", no)?;
        op_actions.push(as_map(&doc).clone());
    }
    if let Some(name) = op_ids.keys().next() {
        return Err(CliError::Invariant(format!(
            "action for '{name}', which is not an operation of the theory"
        )));
    }
    let mut cell_actions = Vec::with_capacity(theory.cells.len());
    for cell in &theory.cells {
        let Some((no, id)) = cell_ids.remove(&cell.name) else {
            return Err(CliError::Invariant(format!(
                "no action for homotopy generator '{}'",
                cell.name
            )));
        };
        let doc = resolver.resolve(&id, "map", no)?;
        cell_actions.push(as_map(&doc).clone());
    }
    if let Some(name) = cell_ids.keys().next() {
        return Err(CliError::Invariant(format!(
            "action for '{name}', which is not a homotopy generator of the theory"
        )));
    }

    Ok(AlgebraData::new(theory, carriers, projection_actions, op_actions, cell_actions)?)
}
