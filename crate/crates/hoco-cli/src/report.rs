//! Plain text reports.
//!
//! Every command emits one report on stdout. The layout is fixed:
//!
//! ```text
//! hoco-report 1
//! toolkit hoco 0.1.0
//! command check-hsifted
//! option level 2
//! option budget 10000
//! option format machine
//! input category walking-arrow
//! certified level 2
//!   per-pair
//!     pair a a
//!       certified level 2
//!         (initial-object id:a)
//! timing -
//! ```
//!
//! The only difference between the two formats is the timing line: machine
//! reports print `timing -` so that identical inputs and options produce
//! byte-identical output, human reports print the elapsed wall clock time.
//! Commands that produce a document either write it to the path given by
//! `--out` and report that path on an `output` line, or, with no `--out`,
//! append the raw document after a `document` marker line.

use hoco_core::simpset::{DegenerateRef, TruncatedSSet};
use hoco_core::verdict::{Evidence, Verdict};

use crate::doc::{CliError, CliResult};

pub struct Report {
    command: &'static str,
    machine: bool,
    options: Vec<(String, String)>,
    inputs: Vec<(String, String)>,
    results: Vec<String>,
    output: Option<String>,
    document: Option<Vec<String>>,
}

impl Report {
    pub fn new(command: &'static str, machine: bool) -> Self {
        Report {
            command,
            machine,
            options: Vec::new(),
            inputs: Vec::new(),
            results: Vec::new(),
            output: None,
            document: None,
        }
    }

    pub fn option(&mut self, name: &str, value: impl std::fmt::Display) {
        self.options.push((name.to_string(), value.to_string()));
    }

    pub fn input(&mut self, kind: &str, id: &str) {
        self.inputs.push((kind.to_string(), id.to_string()));
    }

    /// Appends one result line at the given indentation depth.
    pub fn line(&mut self, depth: usize, text: impl AsRef<str>) {
        self.results.push(format!("{}{}", "  ".repeat(depth), text.as_ref()));
    }

    pub fn lines(&mut self, lines: Vec<String>) {
        self.results.extend(lines);
    }

    pub fn output(&mut self, path: &str) {
        self.output = Some(path.to_string());
    }

    pub fn document(&mut self, lines: Vec<String>) {
        self.document = Some(lines);
    }

    pub fn render(&self, elapsed_ms: u128) -> String {
        let mut out = String::new();
        out.push_str("hoco-report 1\n");
        out.push_str(concat!("toolkit hoco ", env!("CARGO_PKG_VERSION"), "\n"));
        out.push_str(&format!("command {}\n", self.command));
        for (k, v) in &self.options {
            out.push_str(&format!("option {k} {v}\n"));
        }
        for (kind, id) in &self.inputs {
            out.push_str(&format!("input {kind} {id}\n"));
        }
        for line in &self.results {
            out.push_str(line);
            out.push('\n');
        }
        if let Some(path) = &self.output {
            out.push_str(&format!("output {path}\n"));
        }
        if self.machine {
            out.push_str("timing -\n");
        } else {
            out.push_str(&format!("timing {elapsed_ms}ms\n"));
        }
        if let Some(doc) = &self.document {
            out.push_str("document\n");
            for line in doc {
                out.push_str(line);
                out.push('\n');
            }
        }
        out
    }
}

/// Renders a verdict as an indented tree. Leaf evidence keeps its compact
/// one-line form; the aggregate per-pair and per-object variants open a
/// subtree with one entry per part.
pub fn verdict_lines(v: &Verdict, depth: usize, out: &mut Vec<String>) {
    let pad = "  ".repeat(depth);
    match v {
        Verdict::Certified { level, evidence } => {
            out.push(format!("{pad}certified level {level}"));
            for e in evidence {
                evidence_lines(e, depth + 1, out);
            }
        }
        Verdict::Refuted { witness } => {
            out.push(format!("{pad}refuted"));
            evidence_lines(witness, depth + 1, out);
        }
        Verdict::Inconclusive { reason } => {
            out.push(format!("{pad}inconclusive {reason}"));
        }
    }
}

pub fn evidence_lines(e: &Evidence, depth: usize, out: &mut Vec<String>) {
    let pad = "  ".repeat(depth);
    match e {
        Evidence::PerPair { pairs } => {
            out.push(format!("{pad}per-pair"));
            for (a, b, v) in pairs {
                out.push(format!("{pad}  pair {a} {b}"));
                verdict_lines(v, depth + 2, out);
            }
        }
        Evidence::PerObject { objects } => {
            out.push(format!("{pad}per-object"));
            for (name, v) in objects {
                out.push(format!("{pad}  object {name}"));
                verdict_lines(v, depth + 2, out);
            }
        }
        other => out.push(format!("{pad}{other}")),
    }
}

fn ref_token(x: &TruncatedSSet, r: &DegenerateRef) -> String {
    let mut out = String::new();
    for &j in &r.word {
        out.push_str(&format!("s{j} "));
    }
    out.push_str(x.cell_name(r.base_dim, r.base));
    out
}

/// Serializes a simplicial set as an `sset` document. Fails if any cell
/// name cannot survive the trip through whitespace tokenization, which no
/// name generated by the library does.
pub fn sset_doc_lines(id: &str, x: &TruncatedSSet) -> CliResult<Vec<String>> {
    for dim in 0..=x.trunc_level() {
        for idx in 0..x.cell_count(dim) {
            let name = x.cell_name(dim, idx);
            if name.chars().any(char::is_whitespace) || name.contains('|') || name.contains('#')
            {
                return Err(CliError::Invariant(format!(
                    "cell name '{name}' cannot be written to a document"
                )));
            }
        }
    }
    let mut out = vec![
        "format 1".to_string(),
        "kind sset".to_string(),
        format!("id {id}"),
        format!("trunc {}", x.trunc_level()),
    ];
    for dim in 0..=x.trunc_level() {
        for idx in 0..x.cell_count(dim) {
            out.push(format!("cell {dim} {}", x.cell_name(dim, idx)));
        }
    }
    for dim in 1..=x.trunc_level() {
        for idx in 0..x.cell_count(dim) {
            let faces: Vec<String> =
                x.faces_of(dim, idx).iter().map(|r| ref_token(x, r)).collect();
            out.push(format!("faces {dim} {} = {}", x.cell_name(dim, idx), faces.join(" | ")));
        }
    }
    Ok(out)
}
