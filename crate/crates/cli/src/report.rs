//! JSON report schema. Field order is declaration order, so reports are
//! byte-stable.

use asai_core::asai::{perm_order, CentralizerWitness, LevelAnalysis};
use asai_core::easiness::{ConsistencyReport, FamilyLabel, LabelStatus, LevelCheck, Verdict};
use asai_core::group_laws::ValidationReport;
use asai_core::points::{ClassTable, FiniteGroupView};
use asai_core::Limits;
use serde::Serialize;

use crate::cache::{CacheStats, SCHEMA_VERSION};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct Caps {
    pub max_order: u64,
    /// Largest extension multiplier `N` allowed for Lang witnesses.
    pub max_ext: u32,
}

impl Caps {
    pub fn new(limits: &Limits, p: u32, dim: usize) -> Self {
        Self {
            max_order: limits.max_group_order,
            max_ext: limits.extension_cap(p, dim),
        }
    }
}

/// Opt-in, since wall-clock values differ between runs.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub total_ms: f64,
    pub classes_ms: f64,
    pub analysis_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Header {
    pub schema: u32,
    pub version: &'static str,
    pub command: &'static str,
    pub group: String,
    pub law: String,
    pub p: u32,
    pub q: u64,
}

impl Header {
    pub fn new(command: &'static str, group: String, law: String, p: u32, q: u64) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            version: VERSION,
            command,
            group,
            law,
            p,
            q,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub rep: String,
    pub size: usize,
}

pub fn class_entries(view: &FiniteGroupView<'_>, table: &ClassTable) -> Vec<ClassEntry> {
    (0..table.len())
        .map(|c| ClassEntry {
            rep: view.element(table.rep(c)).to_string(),
            size: table.size(c),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassesReport {
    #[serde(flatten)]
    pub header: Header,
    pub m: u32,
    pub order: usize,
    pub classes: Vec<ClassEntry>,
    pub caps: Caps,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cache: Option<CacheStats>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerEntry {
    pub class: usize,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<String>,
    /// Field of definition of `z`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

fn centralizer_entry(class: usize, w: Option<&CentralizerWitness>) -> CentralizerEntry {
    CentralizerEntry {
        class,
        found: w.is_some(),
        y: w.map(|w| w.y.to_string()),
        z: w.map(|w| w.z.to_string()),
        field: w.map(|w| w.z.field().to_string()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AsaiReport {
    #[serde(flatten)]
    pub header: Header,
    pub m: u32,
    pub order: usize,
    pub classes: Vec<ClassEntry>,
    pub n1_perm: Vec<usize>,
    /// `N_1(rep)` for each class.
    pub images: Vec<String>,
    pub fixed: Vec<bool>,
    pub centralizer: Vec<CentralizerEntry>,
    /// Classes where `fixed` and `centralizer[..].found` differ. Always empty
    /// unless something is broken.
    pub disagreements: Vec<usize>,
    pub moved: usize,
    pub trivial: bool,
    pub verdict: &'static str,
    pub perm_order: u64,
    /// Whether `<Θδ, Θδ> = <δ, δ>` for every class indicator `δ`.
    pub isometry_on_indicators: bool,
    pub caps: Caps,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cache: Option<CacheStats>,
}

impl AsaiReport {
    pub fn build(header: Header, view: &FiniteGroupView<'_>, a: &LevelAnalysis, caps: Caps) -> Self {
        let r = &a.norm;
        let t = &r.table;
        let fixed: Vec<bool> = (0..t.len()).map(|c| r.fixed(c)).collect();
        let moved = fixed.iter().filter(|f| !**f).count();
        Self {
            header,
            m: view.m(),
            order: view.order(),
            classes: class_entries(view, t),
            n1_perm: r.perm.clone(),
            images: r.images.iter().map(|p| p.to_string()).collect(),
            fixed,
            centralizer: (0..t.len()).map(|c| centralizer_entry(c, a.centralizer[c].as_ref())).collect(),
            disagreements: a.disagreements(),
            moved,
            trivial: moved == 0,
            verdict: if moved == 0 { "trivial" } else { "nontrivial" },
            perm_order: perm_order(&r.perm),
            isometry_on_indicators: (0..t.len()).all(|c| t.size(c) == t.size(r.perm[c])),
            caps,
            timings: None,
            cache: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerdictEntry {
    NotEasy { witness: String, image: String, m: u32 },
    EasyUpTo { m: u32 },
    Inconclusive { reached_m: u32, reason: String },
}

impl From<&Verdict> for VerdictEntry {
    fn from(v: &Verdict) -> Self {
        match v {
            Verdict::NotEasy { witness, image, m } => VerdictEntry::NotEasy {
                witness: witness.to_string(),
                image: image.to_string(),
                m: *m,
            },
            Verdict::EasyUpTo(m) => VerdictEntry::EasyUpTo { m: *m },
            Verdict::Inconclusive { reached_m, reason } => VerdictEntry::Inconclusive {
                reached_m: *reached_m,
                reason: reason.clone(),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Evidence {
    pub m: u32,
    pub trivial: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EasyReport {
    #[serde(flatten)]
    pub header: Header,
    pub max_m: u32,
    pub label: FamilyLabel,
    pub label_status: LabelStatus,
    pub levels: Vec<LevelCheck>,
    pub evidence: Vec<Evidence>,
    pub verdict: VerdictEntry,
    pub inconsistencies: usize,
    pub caps: Caps,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cache: Option<CacheStats>,
}

impl EasyReport {
    pub fn build(header: Header, max_m: u32, r: &ConsistencyReport, caps: Caps) -> Self {
        Self {
            header,
            max_m,
            label: r.label.clone(),
            label_status: r.label_status,
            levels: r.levels.clone(),
            evidence: r
                .verdict
                .evidence
                .iter()
                .map(|&(m, trivial)| Evidence { m, trivial })
                .collect(),
            verdict: (&r.verdict.verdict).into(),
            inconsistencies: r.inconsistencies,
            caps,
            timings: None,
            cache: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidateReport {
    #[serde(flatten)]
    pub header: Header,
    pub passed: bool,
    pub checks: Vec<asai_core::group_laws::CheckOutcome>,
}

impl ValidateReport {
    pub fn build(header: Header, r: ValidationReport) -> Self {
        Self {
            header,
            passed: r.passed(),
            checks: r.checks,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorEntry {
    pub kind: &'static str,
    pub message: String,
}

/// Written instead of a result when a command stops on a cap or an
/// internal error.
#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    #[serde(flatten)]
    pub header: Header,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub error: ErrorEntry,
    pub caps: Caps,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
