//! Three-valued certification results.
//!
//! Decision procedures in this crate never answer a bare boolean: they
//! return a [`Verdict`] whose evidence is concrete enough to re-verify with
//! independent code (witness objects, homology ranks and torsion, move
//! counts). `Inconclusive` is reserved for honest resource exhaustion, never
//! used to paper over a disproof.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The property holds up to the stated level, with supporting evidence.
    Certified { level: usize, evidence: Vec<Evidence> },
    /// The property fails; the witness pins down where.
    Refuted { witness: Evidence },
    /// Neither certified nor refuted within the allotted budget.
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Verdict::Inconclusive { .. })
    }

    pub fn certified_level(&self) -> Option<usize> {
        match self {
            Verdict::Certified { level, .. } => Some(*level),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Evidence> {
        match self {
            Verdict::Refuted { witness } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// The category has an initial object, so its nerve is contractible.
    InitialObject { object: String },
    /// The category has a terminal object, so its nerve is contractible.
    TerminalObject { object: String },
    /// Something required to be nonempty is empty.
    Empty { what: String },
    NotConnected { components: usize },
    /// Reduced homology vanishes in degrees 1..=through_degree.
    HomologyVanishes { through_degree: usize },
    /// H_degree is nonzero with this shape.
    HomologyNonzero { degree: usize, free_rank: usize, torsion: Vec<i64> },
    /// The fundamental-group presentation reduced to the empty one.
    Pi1Trivialized { moves: usize },
    /// Abelianized fundamental group is nonzero.
    Pi1Nontrivial { free_rank: usize, torsion: Vec<i64> },
    BudgetExhausted { budget: usize },
    /// Component counts of source and target of a map.
    Pi0Mismatch { source: usize, target: usize },
    /// Induced map on H_degree fails to be an isomorphism.
    HomologyMapNotIso { degree: usize, reason: String },
    /// Induced maps on H_1..H_through_degree are isomorphisms.
    HomologyMapIso { through_degree: usize },
    /// Per-pair comma-category verdicts for siftedness style checks.
    PerPair { pairs: Vec<(String, String, Verdict)> },
    /// Per-product-object verdicts for algebra checks.
    PerObject { objects: Vec<(String, Verdict)> },
    Note { text: String },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Certified { level, evidence } => {
                write!(f, "certified level={level}")?;
                for e in evidence {
                    write!(f, " {e}")?;
                }
                Ok(())
            }
            Verdict::Refuted { witness } => write!(f, "refuted {witness}"),
            Verdict::Inconclusive { reason } => write!(f, "inconclusive reason={reason}"),
        }
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::InitialObject { object } => write!(f, "(initial-object {object})"),
            Evidence::TerminalObject { object } => write!(f, "(terminal-object {object})"),
            Evidence::Empty { what } => write!(f, "(empty {what})"),
            Evidence::NotConnected { components } => {
                write!(f, "(not-connected components={components})")
            }
            Evidence::HomologyVanishes { through_degree } => {
                write!(f, "(homology-vanishes through={through_degree})")
            }
            Evidence::HomologyNonzero { degree, free_rank, torsion } => {
                write!(f, "(homology-nonzero degree={degree} free={free_rank} torsion=")?;
                write_torsion(f, torsion)?;
                write!(f, ")")
            }
            Evidence::Pi1Trivialized { moves } => write!(f, "(pi1-trivial moves={moves})"),
            Evidence::Pi1Nontrivial { free_rank, torsion } => {
                write!(f, "(pi1-nontrivial free={free_rank} torsion=")?;
                write_torsion(f, torsion)?;
                write!(f, ")")
            }
            Evidence::BudgetExhausted { budget } => {
                write!(f, "(budget-exhausted budget={budget})")
            }
            Evidence::Pi0Mismatch { source, target } => {
                write!(f, "(pi0-mismatch source={source} target={target})")
            }
            Evidence::HomologyMapNotIso { degree, reason } => {
                write!(f, "(homology-map-not-iso degree={degree} reason={reason})")
            }
            Evidence::HomologyMapIso { through_degree } => {
                write!(f, "(homology-map-iso through={through_degree})")
            }
            Evidence::PerPair { pairs } => {
                write!(f, "(per-pair")?;
                for (a, b, v) in pairs {
                    write!(f, " [{a},{b}: {v}]")?;
                }
                write!(f, ")")
            }
            Evidence::PerObject { objects } => {
                write!(f, "(per-object")?;
                for (o, v) in objects {
                    write!(f, " [{o}: {v}]")?;
                }
                write!(f, ")")
            }
            Evidence::Note { text } => write!(f, "(note {text})"),
        }
    }
}

fn write_torsion(f: &mut fmt::Formatter<'_>, torsion: &[i64]) -> fmt::Result {
    write!(f, "[")?;
    for (i, t) in torsion.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{t}")?;
    }
    write!(f, "]")
}
