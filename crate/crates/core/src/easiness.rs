//! Easiness labels for the built-in families, the per-m norm-map scan, and
//! the classwise cross-check between `N_1`-fixed classes and centralizer
//! witnesses.

use serde::Serialize;

use crate::asai::{analyze_with_table, is_asai_trivial, LevelAnalysis};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::finite_fields::FieldTower;
use crate::group_laws::{Family, GroupLaw};
use crate::limits::Limits;
use crate::points::{conjugacy_classes, enumerate, ClassTable, FiniteGroupView, Point};

pub const DEFAULT_MAX_M: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Label {
    Easy,
    NotEasy { p_condition: String },
    Unknown,
}

/// What is known about a law before any computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyLabel {
    pub family: String,
    pub label: Label,
    pub provenance: String,
}

pub fn family_oracle(law: &GroupLaw) -> FamilyLabel {
    let p = law.p();
    let (family, label, provenance) = match law.family() {
        Some(f @ Family::Ul(_)) => (
            f.to_string(),
            Label::Easy,
            "unipotent upper triangular matrices are the basic example of an easy group",
        ),
        Some(f @ Family::GaPower(_)) => (
            f.to_string(),
            Label::Easy,
            "commutative and connected: every centralizer is the whole group",
        ),
        Some(f @ Family::N2) if p > 2 => (
            f.to_string(),
            Label::NotEasy {
                p_condition: "p > 2".into(),
            },
            "the standard non-example, not easy in characteristic greater than 2",
        ),
        Some(f @ Family::N2) => (
            f.to_string(),
            Label::Unknown,
            "no claim in characteristic 2; results are exploratory",
        ),
        None => (
            law.name().to_string(),
            Label::Unknown,
            "user-defined law; no label attaches",
        ),
    };
    FamilyLabel {
        family,
        label,
        provenance: provenance.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Class of `witness` is moved by `N_1` at level `m`.
    NotEasy { witness: Point, image: Point, m: u32 },
    /// `N_1` was trivial for every `m <= M`. Evidence only.
    EasyUpTo(u32),
    /// A cap was hit; levels `1..=reached_m` were all trivial.
    Inconclusive { reached_m: u32, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EasinessVerdict {
    pub verdict: Verdict,
    /// `(m, N_1 trivial)` for every level that was computed.
    pub evidence: Vec<(u32, bool)>,
}

/// Whether an error is a cap breach (reported as inconclusive) rather than a
/// failure.
fn is_cap(e: &Error) -> bool {
    matches!(e, Error::ResourceLimit { .. })
}

/// Runs the norm map for `m = 1..=max_m`, stopping at the first moved class.
pub fn easiness_scan(
    law: &GroupLaw,
    tower: &FieldTower,
    q: u64,
    max_m: u32,
    limits: &Limits,
    exec: Execution,
) -> Result<EasinessVerdict> {
    let mut evidence = Vec::new();
    for m in 1..=max_m {
        let view = match enumerate(law, tower, q, m, limits.max_group_order) {
            Ok(v) => v,
            Err(e) if is_cap(&e) => return Ok(inconclusive(evidence, m, &e)),
            Err(e) => return Err(e),
        };
        let table = conjugacy_classes(&view, exec);
        let r = match crate::asai::norm_map(&view, &table, limits, exec) {
            Ok(r) => r,
            Err(e) if is_cap(&e) => return Ok(inconclusive(evidence, m, &e)),
            Err(e) => return Err(e),
        };
        let trivial = is_asai_trivial(&r);
        evidence.push((m, trivial));
        if let Some(&c) = r.moved_classes().first() {
            return Ok(EasinessVerdict {
                verdict: Verdict::NotEasy {
                    witness: view.element(table.rep(c)),
                    image: r.images[c].clone(),
                    m,
                },
                evidence,
            });
        }
    }
    Ok(EasinessVerdict {
        verdict: Verdict::EasyUpTo(max_m),
        evidence,
    })
}

fn inconclusive(evidence: Vec<(u32, bool)>, m: u32, e: &Error) -> EasinessVerdict {
    EasinessVerdict {
        verdict: Verdict::Inconclusive {
            reached_m: m - 1,
            reason: e.to_string(),
        },
        evidence,
    }
}

/// One cell of the cross-check matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCheck {
    pub class: usize,
    pub rep: String,
    pub size: usize,
    pub fixed: bool,
    pub witness: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelCheck {
    pub m: u32,
    pub order: usize,
    pub trivial: bool,
    pub classes: Vec<ClassCheck>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelStatus {
    /// Computation agrees with the label (for `Easy`, up to the levels run).
    Confirmed,
    /// `NotEasy` label but no moved class within the levels run.
    Unresolved,
    /// No label to compare against.
    Exploratory,
    /// `Easy` label with a moved class. Always a bug.
    Contradiction,
}

pub struct ConsistencyReport {
    pub label: FamilyLabel,
    pub levels: Vec<LevelCheck>,
    pub analyses: Vec<LevelAnalysis>,
    pub verdict: EasinessVerdict,
    pub label_status: LabelStatus,
    /// Classes where fixedness and witness existence disagree.
    pub inconsistencies: usize,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.inconsistencies == 0 && self.label_status != LabelStatus::Contradiction
    }
}

/// Runs every level `m <= max_m` (no early stop) and tabulates, per class,
/// whether `N_1` fixes it and whether a centralizer witness exists.
pub fn easiness_crosscheck(
    law: &GroupLaw,
    tower: &FieldTower,
    q: u64,
    max_m: u32,
    limits: &Limits,
    exec: Execution,
) -> Result<ConsistencyReport> {
    easiness_crosscheck_with(law, tower, q, max_m, limits, exec, &mut |view| {
        Ok(conjugacy_classes(view, exec))
    })
}

/// [`easiness_crosscheck`] with class tables supplied by the caller, e.g.
/// from a cache.
#[allow(clippy::too_many_arguments)]
pub fn easiness_crosscheck_with(
    law: &GroupLaw,
    tower: &FieldTower,
    q: u64,
    max_m: u32,
    limits: &Limits,
    exec: Execution,
    tables: &mut dyn FnMut(&FiniteGroupView<'_>) -> Result<ClassTable>,
) -> Result<ConsistencyReport> {
    let label = family_oracle(law);
    let mut levels = Vec::new();
    let mut analyses = Vec::new();
    let mut reps = Vec::new();
    let mut stop: Option<(u32, Error)> = None;
    for m in 1..=max_m {
        let step = enumerate(law, tower, q, m, limits.max_group_order).and_then(|view| {
            let table = tables(&view)?;
            let a = analyze_with_table(&view, table, limits, exec)?;
            let reps: Vec<Point> = (0..a.norm.table.len())
                .map(|c| view.element(a.norm.table.rep(c)))
                .collect();
            Ok((view.order(), a, reps))
        });
        let (order, a, level_reps) = match step {
            Ok(x) => x,
            Err(e) if is_cap(&e) => {
                stop = Some((m, e));
                break;
            }
            Err(e) => return Err(e),
        };
        let classes = (0..a.norm.table.len())
            .map(|c| {
                let fixed = a.norm.fixed(c);
                let witness = a.centralizer[c].is_some();
                ClassCheck {
                    class: c,
                    rep: level_reps[c].to_string(),
                    size: a.norm.table.size(c),
                    fixed,
                    witness,
                    agree: fixed == witness,
                }
            })
            .collect();
        levels.push(LevelCheck {
            m,
            order,
            trivial: is_asai_trivial(&a.norm),
            classes,
        });
        analyses.push(a);
        reps.push(level_reps);
    }
    let inconsistencies = levels
        .iter()
        .flat_map(|l| &l.classes)
        .filter(|c| !c.agree)
        .count();
    let evidence: Vec<(u32, bool)> = levels.iter().map(|l| (l.m, l.trivial)).collect();
    let first_moved = levels.iter().zip(&analyses).zip(&reps).find_map(|((l, a), r)| {
        a.norm.moved_classes().first().map(|&c| (l.m, r[c].clone(), a.norm.images[c].clone()))
    });
    let verdict = match (first_moved, stop) {
        (Some((m, witness, image)), _) => Verdict::NotEasy { witness, image, m },
        (None, Some((m, e))) => Verdict::Inconclusive {
            reached_m: m - 1,
            reason: e.to_string(),
        },
        (None, None) => Verdict::EasyUpTo(max_m),
    };
    let any_moved = matches!(verdict, Verdict::NotEasy { .. });
    let label_status = match label.label {
        Label::Unknown => LabelStatus::Exploratory,
        Label::Easy if any_moved => LabelStatus::Contradiction,
        Label::Easy => LabelStatus::Confirmed,
        Label::NotEasy { .. } if any_moved => LabelStatus::Confirmed,
        Label::NotEasy { .. } => LabelStatus::Unresolved,
    };
    Ok(ConsistencyReport {
        label,
        levels,
        analyses,
        verdict: EasinessVerdict { verdict, evidence },
        label_status,
        inconsistencies,
    })
}
