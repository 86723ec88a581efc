//! `hoco`: certified checks on finite categories, truncated simplicial
//! sets, and weighted homotopy colimits, driven by line-delimited document
//! files.
//!
//! Exit codes: 0 when the command ran to completion (including refuted and
//! inconclusive verdicts, which are results, not failures), 2 for malformed
//! documents, 3 for references that do not resolve, 4 for payloads that
//! break a library invariant, and 5 for exhausted budgets.
//!
//! The Tietze search budget defaults to the `HOCO_BUDGET` environment
//! variable when set, and `--budget` overrides both.

mod doc;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use hoco_core::fincat::nerve;
use hoco_core::hocolim::{comparison_to_product, hocolim_s, point_collapse, DiagramData};
use hoco_core::shape::{
    homotopy_sifted, is_sifted, SiftedFailure, DEFAULT_LEVEL, DEFAULT_TIETZE_BUDGET,
};
use hoco_core::simpset::homology;
use hoco_core::theories::check_homotopy_algebra;
use hoco_core::weq::certify_weq;

use doc::{CliError, CliResult, DocBody, Document};
use report::{sset_doc_lines, verdict_lines, Report};

#[derive(Parser)]
#[command(
    name = "hoco",
    version,
    about = "Certified checks on finite categories, simplicial sets, and homotopy colimits"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

impl Format {
    fn is_machine(self) -> bool {
        self == Format::Machine
    }

    fn name(self) -> &'static str {
        match self {
            Format::Human => "human",
            Format::Machine => "machine",
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a document, resolve its references, and check every invariant.
    Validate {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Compute the nerve of a category and emit it as an sset document.
    Nerve {
        path: PathBuf,
        /// Truncation level of the nerve.
        #[arg(long, default_value_t = 3)]
        truncate: usize,
        /// Write the produced document here instead of inlining it.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Integral homology of an sset document.
    Homology {
        path: PathBuf,
        /// Highest degree to report; defaults to one below the truncation.
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Decide siftedness of a category exactly.
    CheckSifted {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Certify or refute homotopy siftedness of a category.
    CheckHsifted {
        path: PathBuf,
        /// Connectivity level the comma nerves are checked through.
        #[arg(long, default_value_t = DEFAULT_LEVEL)]
        level: usize,
        /// Tietze search budget; defaults to HOCO_BUDGET, then 10000.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Compute the homotopy colimit of a diagram document.
    Hocolim {
        path: PathBuf,
        /// Weight truncation; must equal the diagram truncation and
        /// defaults to it.
        #[arg(long)]
        truncate: Option<usize>,
        /// Level for the collapse certification run on constant point
        /// diagrams.
        #[arg(long, default_value_t = DEFAULT_LEVEL)]
        level: usize,
        /// Tietze search budget; defaults to HOCO_BUDGET, then 10000.
        #[arg(long)]
        budget: Option<usize>,
        /// Write the produced document here instead of inlining it.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Compare the homotopy colimit of a tensor of two diagrams with the
    /// product of their homotopy colimits.
    CompareProducts {
        first: PathBuf,
        second: PathBuf,
        /// Level the comparison map is certified through.
        #[arg(long, default_value_t = DEFAULT_LEVEL)]
        level: usize,
        /// Tietze search budget; defaults to HOCO_BUDGET, then 10000.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Check that an algebra document is a homotopy algebra over a theory.
    CheckHalg {
        theory: PathBuf,
        algebra: PathBuf,
        /// Level the product comparisons are certified through.
        #[arg(long, default_value_t = DEFAULT_LEVEL)]
        level: usize,
        /// Tietze search budget; defaults to HOCO_BUDGET, then 10000.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok((text, code)) => {
            print!("{text}");
            std::process::exit(code);
        }
        Err(e) => {
            eprintln!("error[{}]: {}", e.class(), e.message());
            std::process::exit(e.exit_code());
        }
    }
}

fn run(cmd: Cmd) -> CliResult<(String, i32)> {
    match cmd {
        Cmd::Validate { path, format } => cmd_validate(&path, format),
        Cmd::Nerve { path, truncate, out, format } => cmd_nerve(&path, truncate, out, format),
        Cmd::Homology { path, max_dim, format } => cmd_homology(&path, max_dim, format),
        Cmd::CheckSifted { path, format } => cmd_check_sifted(&path, format),
        Cmd::CheckHsifted { path, level, budget, format } => {
            cmd_check_hsifted(&path, level, budget, format)
        }
        Cmd::Hocolim { path, truncate, level, budget, out, format } => {
            cmd_hocolim(&path, truncate, level, budget, out, format)
        }
        Cmd::CompareProducts { first, second, level, budget, format } => {
            cmd_compare_products(&first, &second, level, budget, format)
        }
        Cmd::CheckHalg { theory, algebra, level, budget, format } => {
            cmd_check_halg(&theory, &algebra, level, budget, format)
        }
    }
}

fn resolve_budget(flag: Option<usize>) -> CliResult<usize> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("HOCO_BUDGET") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("HOCO_BUDGET is not a number: '{s}'"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_TIETZE_BUDGET),
        Err(e) => Err(CliError::Parse(format!("HOCO_BUDGET: {e}"))),
    }
}

fn ms(start: Instant) -> u128 {
    start.elapsed().as_millis()
}

/// The id for a produced document: the stem of `--out` when given, so the
/// id-matches-stem rule holds for the written file, and a suffixed form of
/// the input id otherwise.
fn output_id(out: Option<&Path>, input_id: &str, suffix: &str) -> CliResult<String> {
    match out {
        None => Ok(format!("{input_id}-{suffix}")),
        Some(p) => {
            let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or("");
            if stem.is_empty() || stem.contains('=') || stem.contains('|') || stem.contains('#') {
                return Err(CliError::Parse(format!(
                    "output path {} has no usable document id as its stem",
                    p.display()
                )));
            }
            Ok(stem.to_string())
        }
    }
}

fn emit_document(
    rep: &mut Report,
    out: Option<&Path>,
    lines: Vec<String>,
) -> CliResult<()> {
    match out {
        Some(p) => {
            let mut text = lines.join("\n");
            text.push('\n');
            fs::write(p, text).map_err(|e| {
                CliError::Reference(format!("cannot write {}: {e}", p.display()))
            })?;
            rep.output(&p.display().to_string());
        }
        None => rep.document(lines),
    }
    Ok(())
}

fn cmd_validate(path: &Path, format: Format) -> CliResult<(String, i32)> {
    let start = Instant::now();
    let mut rep = Report::new("validate", format.is_machine());
    rep.option("format", format.name());
    let text = doc::read_main(path)?;
    let raw = doc::parse_raw(&text)?;
    let kind = raw.kind.clone();
    let id = raw.id.clone();
    rep.input(&kind, &id);
    let built = doc::check_stem(path, &raw).and_then(|()| {
        let mut resolver = doc::Resolver::for_path(path);
        doc::build_document(raw, &mut resolver)
    });
    match built {
        Ok(document) => {
            rep.line(0, format!("valid {kind} {id}"));
            summarize(&mut rep, &document);
            Ok((rep.render(ms(start)), 0))
        }
        Err(e) => {
            rep.line(0, format!("invalid {kind} {id}"));
            rep.line(1, format!("reason {}", e.message()));
            Ok((rep.render(ms(start)), e.exit_code()))
        }
    }
}

fn summarize(rep: &mut Report, document: &Document) {
    match &document.body {
        DocBody::Category(c) => {
            rep.line(1, format!("objects {}", c.object_count()));
            rep.line(1, format!("morphisms {}", c.morphism_count()));
        }
        DocBody::SSet(x) => {
            rep.line(1, format!("trunc {}", x.trunc_level()));
            for dim in 0..=x.trunc_level() {
                rep.line(1, format!("cells {dim} {}", x.cell_count(dim)));
            }
        }
        DocBody::Map { map, source_id, target_id } => {
            rep.line(1, format!("source {source_id}"));
            rep.line(1, format!("target {target_id}"));
            let total: usize =
                (0..=map.source().trunc_level()).map(|d| map.source().cell_count(d)).sum();
            rep.line(1, format!("assignments {total}"));
        }
        DocBody::Diagram { data, shape_id } => {
            rep.line(1, format!("shape {shape_id}"));
            rep.line(1, format!("trunc {}", data.trunc));
            rep.line(1, format!("values {}", data.values.len()));
        }
        DocBody::Weight { data, shape_id } => {
            rep.line(1, format!("shape {shape_id}"));
            rep.line(1, format!("trunc {}", data.trunc));
            rep.line(1, format!("values {}", data.values.len()));
        }
        DocBody::Theory(t) => {
            rep.line(1, format!("trunc {}", t.trunc));
            rep.line(1, format!("arity-cap {}", t.arity_cap));
            rep.line(1, format!("op-cap {}", t.op_cap));
            rep.line(1, format!("operations {}", t.ops.len()));
            rep.line(1, format!("homotopy-cells {}", t.cells.len()));
        }
        DocBody::Algebra { data, theory_id } => {
            rep.line(1, format!("theory {theory_id}"));
            rep.line(1, format!("carriers {}", data.carriers.len()));
            rep.line(1, format!("operations {}", data.op_actions.len()));
            rep.line(1, format!("homotopy-cells {}", data.cell_actions.len()));
        }
    }
}

fn cmd_nerve(
    path: &Path,
    truncate: usize,
    out: Option<PathBuf>,
    format: Format,
) -> CliResult<(String, i32)> {
    let start = Instant::now();
    let mut rep = Report::new("nerve", format.is_machine());
    rep.option("truncate", truncate);
    rep.option("format", format.name());
    let d = doc::load_expect(path, "category")?;
    rep.input("category", &d.id);
    let DocBody::Category(c) = &d.body else { unreachable!() };
    let nv = nerve(c, truncate)?;
    for dim in 0..=truncate {
        rep.line(0, format!("cells {dim} {}", nv.sset.cell_count(dim)));
    }
    let id = output_id(out.as_deref(), &d.id, "nerve")?;
    let lines = sset_doc_lines(&id, &nv.sset)?;
    emit_document(&mut rep, out.as_deref(), lines)?;
    Ok((rep.render(ms(start)), 0))
}

fn cmd_homology(
    path: &Path,
    max_dim: Option<usize>,
    format: Format,
) -> CliResult<(String, i32)> {
    let start = Instant::now();
    let mut rep = Report::new("homology", format.is_machine());
    let d = doc::load_expect(path, "sset")?;
    let DocBody::SSet(x) = &d.body else { unreachable!() };
    let k = max_dim.unwrap_or_else(|| x.trunc_level().saturating_sub(1));
    rep.option("max-dim", k);
    rep.option("format", format.name());
    rep.input("sset", &d.id);
    let groups = homology(x, k)?;
    for (i, g) in groups.iter().enumerate() {
        rep.line(0, format!("h {i} {g}"));
    }
    Ok((rep.render(ms(start)), 0))
}

fn cmd_check_sifted(path: &Path, format: Format) -> CliResult<(String, i32)> {
    let start = Instant::now();
    let mut rep = Report::new("check-sifted", format.is_machine());
    rep.option("format", format.name());
    let d = doc::load_expect(path, "category")?;
    rep.input("category", &d.id);
    let DocBody::Category(c) = &d.body else { unreachable!() };
    let s = is_sifted(c)?;
    rep.line(0, format!("sifted {}", s.holds));
    if let Some(f) = &s.failure {
        let text = match f {
            SiftedFailure::Empty => "failure empty-category".to_string(),
            SiftedFailure::EmptyComma { pair } => {
                format!("failure empty-comma {} {}", pair.0, pair.1)
            }
            SiftedFailure::DisconnectedComma { pair, components } => {
                format!("failure disconnected-comma {} {} components {components}", pair.0, pair.1)
            }
        };
        rep.line(1, text);
    }
    Ok((rep.render(ms(start)), 0))
}

fn cmd_check_hsifted(
    path: &Path,
    level: usize,
    budget: Option<usize>,
    format: Format,
) -> CliResult<(String, i32)> {
    let start = Instant::now();
    let budget = resolve_budget(budget)?;
    let mut rep = Report::new("check-hsifted", format.is_machine());
    rep.option("level", level);
    rep.option("budget", budget);
    rep.option("format", format.name());
    let d = doc::load_expect(path, "category")?;
    rep.input("category", &d.id);
    let DocBody::Category(c) = &d.body else { unreachable!() };
    let v = homotopy_sifted(c, level, budget)?;
    let mut lines = Vec::new();
    verdict_lines(&v, 0, &mut lines);
    rep.lines(lines);
    Ok((rep.render(ms(start)), 0))
}

fn is_constant_point(d: &DiagramData) -> bool {
    d.values
        .iter()
        .all(|x| x.cell_count(0) == 1 && (1..=x.trunc_level()).all(|k| x.cell_count(k) == 0))
}

fn cmd_hocolim(
    path: &Path,
    truncate: Option<usize>,
    level: usize,
    budget: Option<usize>,
    out: Option<PathBuf>,
    format: Format,
) -> CliResult<(String, i32)> {
    let start = Instant::now();
    let budget = resolve_budget(budget)?;
    let mut rep = Report::new("hocolim", format.is_machine());
    let d = doc::load_expect(path, "diagram")?;
    let DocBody::Diagram { data, .. } = &d.body else { unreachable!() };
    let n = truncate.unwrap_or(data.trunc);
    rep.option("truncate", n);
    rep.option("level", level);
    rep.option("budget", budget);
    rep.option("format", format.name());
    rep.input("diagram", &d.id);
    let colim = hocolim_s(data, n)?;
    for dim in 0..=colim.sset.trunc_level() {
        rep.line(0, format!("cells {dim} {}", colim.sset.cell_count(dim)));
    }
    if is_constant_point(data) {
        let (_, collapse) = point_collapse(&data.shape, n)?;
        let v = certify_weq(&collapse, level.min(n.saturating_sub(1)), budget)?;
        rep.line(0, "collapse");
        let mut lines = Vec::new();
        verdict_lines(&v, 1, &mut lines);
        rep.lines(lines);
    }
    let id = output_id(out.as_deref(), &d.id, "hocolim")?;
    let lines = sset_doc_lines(&id, &colim.sset)?;
    emit_document(&mut rep, out.as_deref(), lines)?;
    Ok((rep.render(ms(start)), 0))
}

fn cmd_compare_products(
    first: &Path,
    second: &Path,
    level: usize,
    budget: Option<usize>,
    format: Format,
) -> CliResult<(String, i32)> {
    let start = Instant::now();
    let budget = resolve_budget(budget)?;
    let mut rep = Report::new("compare-products", format.is_machine());
    rep.option("level", level);
    rep.option("budget", budget);
    rep.option("format", format.name());
    let d1 = doc::load_expect(first, "diagram")?;
    let d2 = doc::load_expect(second, "diagram")?;
    rep.input("diagram", &d1.id);
    rep.input("diagram", &d2.id);
    let DocBody::Diagram { data: data1, .. } = &d1.body else { unreachable!() };
    let DocBody::Diagram { data: data2, .. } = &d2.body else { unreachable!() };
    let (_, v) = comparison_to_product(data1, data2, level, budget)?;
    let mut lines = Vec::new();
    verdict_lines(&v, 0, &mut lines);
    rep.lines(lines);
    Ok((rep.render(ms(start)), 0))
}

fn cmd_check_halg(
    theory: &Path,
    algebra: &Path,
    level: usize,
    budget: Option<usize>,
    format: Format,
) -> CliResult<(String, i32)> {
    let start = Instant::now();
    let budget = resolve_budget(budget)?;
    let mut rep = Report::new("check-halg", format.is_machine());
    rep.option("level", level);
    rep.option("budget", budget);
    rep.option("format", format.name());
    let td = doc::load_expect(theory, "theory")?;
    let ad = doc::load_expect(algebra, "algebra")?;
    rep.input("theory", &td.id);
    rep.input("algebra", &ad.id);
    let DocBody::Algebra { data, theory_id } = &ad.body else { unreachable!() };
    if *theory_id != td.id {
        return Err(CliError::Reference(format!(
            "algebra '{}' is over theory '{theory_id}', not '{}'",
            ad.id, td.id
        )));
    }
    let v = check_homotopy_algebra(data, level, budget)?;
    let mut lines = Vec::new();
    verdict_lines(&v, 0, &mut lines);
    rep.lines(lines);
    Ok((rep.render(ms(start)), 0))
}
