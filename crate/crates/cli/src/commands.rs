use std::path::Path;
use std::time::Instant;

use asai_core::asai::analyze_with_table;
use asai_core::easiness::{easiness_crosscheck_with, LabelStatus, Verdict};
use asai_core::finite_fields::FieldTower;
use asai_core::group_laws::{validate_law, GroupLaw};
use asai_core::Execution;
use asai_core::points::{conjugacy_classes, enumerate, ClassTable, FiniteGroupView, TableKey};

use crate::cache::ClassCache;
use crate::config::{group_spec, Batch, Command, RunConfig};
use crate::error::{CliError, CliResult, Exit};
use crate::report::*;

/// Result of one command: exit status, the report (if any) and messages
/// for stderr.
#[derive(Debug)]
pub struct Outcome {
    pub exit: Exit,
    pub report: Option<String>,
    pub messages: Vec<String>,
}

impl Outcome {
    fn failed(e: CliError) -> Self {
        Self {
            exit: e.exit(),
            report: None,
            messages: vec![format!("error: {e}")],
        }
    }
}

const VALIDATION_SAMPLES: usize = 1000;

/// Class table from the cache if present and valid, otherwise computed and
/// stored.
fn class_table(cache: &mut Option<ClassCache>, view: &FiniteGroupView<'_>, exec: Execution) -> ClassTable {
    let key = TableKey::of(view);
    if let Some(t) = cache.as_mut().and_then(|c| c.load(&key, view.order())) {
        return t;
    }
    let t = conjugacy_classes(view, exec);
    if let Some(c) = cache.as_mut() {
        if let Err(e) = c.store(&t) {
            eprintln!("warning: could not write cache in {}: {e}", c.dir().display());
        }
    }
    t
}

/// Shared per-command state: the law, its tower, the cache.
struct Session<'c> {
    cfg: &'c RunConfig,
    law: GroupLaw,
    tower: FieldTower,
    cache: Option<ClassCache>,
    started: Instant,
}

impl<'c> Session<'c> {
    fn open(cfg: &'c RunConfig) -> CliResult<Self> {
        let law = cfg.load_law()?;
        let tower = FieldTower::new(law.p())?;
        Ok(Self {
            cfg,
            tower,
            cache: cfg.cache.as_ref().map(ClassCache::new),
            law,
            started: Instant::now(),
        })
    }

    fn header(&self, command: &'static str) -> Header {
        Header::new(
            command,
            self.cfg.group_label(&self.law),
            self.law.to_dsl(),
            self.law.p(),
            self.cfg.q,
        )
    }

    fn caps(&self) -> Caps {
        Caps::new(&self.cfg.limits, self.law.p(), self.law.dim())
    }

    fn messages(&self) -> Vec<String> {
        self.cache
            .as_ref()
            .map(|c| c.warnings().iter().map(|w| format!("warning: {w}")).collect())
            .unwrap_or_default()
    }

    fn elapsed_ms(&self) -> f64 {
        self.started.elapsed().as_secs_f64() * 1000.0
    }

    /// Error report for caps and internal failures; other errors have no
    /// report.
    fn fail(&self, command: &'static str, m: Option<u32>, e: CliError) -> Outcome {
        let mut out = Outcome::failed(e);
        if matches!(out.exit, Exit::Cap | Exit::Inconsistent) {
            let report = ErrorReport {
                header: self.header(command),
                m,
                error: ErrorEntry {
                    kind: match out.exit {
                        Exit::Cap => "cap_exceeded",
                        _ => "internal_inconsistency",
                    },
                    message: out.messages[0].trim_start_matches("error: ").to_string(),
                },
                caps: self.caps(),
            };
            out.report = Some(to_json(&report));
        }
        out.messages.extend(self.messages());
        out
    }
}

pub fn cmd_validate(cfg: &RunConfig) -> Outcome {
    let s = match Session::open(cfg) {
        Ok(s) => s,
        Err(e) => return Outcome::failed(e),
    };
    match validate_law(&s.law, &s.tower, cfg.q, VALIDATION_SAMPLES) {
        Ok(r) => {
            let report = ValidateReport::build(s.header("validate"), r);
            let mut messages = Vec::new();
            for c in report.checks.iter().filter(|c| !c.passed) {
                messages.push(format!(
                    "check failed: {} over F_{}{}",
                    c.name,
                    c.level,
                    c.counterexample.as_deref().map(|x| format!(" at {x}")).unwrap_or_default()
                ));
            }
            Outcome {
                exit: if report.passed { Exit::Ok } else { Exit::Validation },
                report: Some(to_json(&report)),
                messages,
            }
        }
        Err(e) => s.fail("validate", None, e.into()),
    }
}

pub fn cmd_classes(cfg: &RunConfig) -> Outcome {
    let mut s = match Session::open(cfg) {
        Ok(s) => s,
        Err(e) => return Outcome::failed(e),
    };
    let view = match enumerate(&s.law, &s.tower, cfg.q, cfg.m, cfg.limits.max_group_order) {
        Ok(v) => v,
        Err(e) => return s.fail("classes", Some(cfg.m), e.into()),
    };
    let table = class_table(&mut s.cache, &view, cfg.exec);
    let mut report = ClassesReport {
        header: s.header("classes"),
        m: cfg.m,
        order: view.order(),
        classes: class_entries(&view, &table),
        caps: s.caps(),
        timings: None,
        cache: None,
    };
    if cfg.timings {
        let ms = s.elapsed_ms();
        report.timings = Some(Timings {
            total_ms: ms,
            classes_ms: ms,
            analysis_ms: 0.0,
        });
        report.cache = s.cache.as_ref().map(|c| c.stats());
    }
    Outcome {
        exit: Exit::Ok,
        report: Some(to_json(&report)),
        messages: s.messages(),
    }
}

pub fn cmd_asai(cfg: &RunConfig) -> Outcome {
    let mut s = match Session::open(cfg) {
        Ok(s) => s,
        Err(e) => return Outcome::failed(e),
    };
    let view = match enumerate(&s.law, &s.tower, cfg.q, cfg.m, cfg.limits.max_group_order) {
        Ok(v) => v,
        Err(e) => return s.fail("asai", Some(cfg.m), e.into()),
    };
    let t0 = Instant::now();
    let table = class_table(&mut s.cache, &view, cfg.exec);
    let classes_ms = t0.elapsed().as_secs_f64() * 1000.0;
    let t1 = Instant::now();
    let analysis = match analyze_with_table(&view, table, &cfg.limits, cfg.exec) {
        Ok(a) => a,
        Err(e) => return s.fail("asai", Some(cfg.m), e.into()),
    };
    let analysis_ms = t1.elapsed().as_secs_f64() * 1000.0;
    let mut report = AsaiReport::build(s.header("asai"), &view, &analysis, s.caps());
    if cfg.timings {
        report.timings = Some(Timings {
            total_ms: s.elapsed_ms(),
            classes_ms,
            analysis_ms,
        });
        report.cache = s.cache.as_ref().map(|c| c.stats());
    }
    let mut messages = s.messages();
    let exit = if report.disagreements.is_empty() {
        Exit::Ok
    } else {
        messages.push(format!(
            "error: internal inconsistency: fixed classes and centralizer witnesses disagree on classes {:?}",
            report.disagreements
        ));
        Exit::Inconsistent
    };
    Outcome {
        exit,
        report: Some(to_json(&report)),
        messages,
    }
}

pub fn cmd_easy_check(cfg: &RunConfig) -> Outcome {
    let mut s = match Session::open(cfg) {
        Ok(s) => s,
        Err(e) => return Outcome::failed(e),
    };
    let exec = cfg.exec;
    let mut cache = s.cache.take();
    let result = easiness_crosscheck_with(&s.law, &s.tower, cfg.q, cfg.max_m, &cfg.limits, exec, &mut |view| {
        Ok(class_table(&mut cache, view, exec))
    });
    s.cache = cache;
    let r = match result {
        Ok(r) => r,
        Err(e) => return s.fail("easy-check", None, e.into()),
    };
    let mut report = EasyReport::build(s.header("easy-check"), cfg.max_m, &r, s.caps());
    if cfg.timings {
        let ms = s.elapsed_ms();
        report.timings = Some(Timings {
            total_ms: ms,
            classes_ms: 0.0,
            analysis_ms: ms,
        });
        report.cache = s.cache.as_ref().map(|c| c.stats());
    }
    let mut messages = s.messages();
    let exit = if r.inconsistencies > 0 {
        messages.push(format!(
            "error: internal inconsistency: {} classes where fixedness and witness existence disagree",
            r.inconsistencies
        ));
        Exit::Inconsistent
    } else if r.label_status == LabelStatus::Contradiction {
        messages.push("error: internal inconsistency: a family labelled easy has a moved class".into());
        Exit::Inconsistent
    } else if let Verdict::Inconclusive { reason, .. } = &r.verdict.verdict {
        messages.push(format!("error: {reason}"));
        Exit::Cap
    } else {
        Exit::Ok
    };
    Outcome {
        exit,
        report: Some(to_json(&report)),
        messages,
    }
}

pub fn execute(command: Command, cfg: &RunConfig) -> Outcome {
    match command {
        Command::Validate => cmd_validate(cfg),
        Command::Classes => cmd_classes(cfg),
        Command::Asai => cmd_asai(cfg),
        Command::EasyCheck => cmd_easy_check(cfg),
    }
}

/// Writes the report to `cfg.out`, or returns it for stdout.
pub fn deliver(outcome: &Outcome, out: Option<&Path>) -> CliResult<Option<String>> {
    match (&outcome.report, out) {
        (Some(report), Some(path)) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
                    path: dir.to_path_buf(),
                    source,
                })?;
            }
            std::fs::write(path, report).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            Ok(None)
        }
        (Some(report), None) => Ok(Some(report.clone())),
        (None, _) => Ok(None),
    }
}

/// Runs every job of a batch file. Relative paths are resolved against the
/// file's directory. The exit status is the worst of all jobs.
pub fn cmd_run(path: &Path, base: &RunConfig) -> Vec<(String, Outcome)> {
    let batch = match Batch::load(path) {
        Ok(b) => b,
        Err(e) => return vec![(path.display().to_string(), Outcome::failed(e))],
    };
    let root = path.parent().unwrap_or(Path::new("."));
    let resolve = |p: &Path| if p.is_absolute() { p.to_path_buf() } else { root.join(p) };
    let mut results = Vec::new();
    for (i, job) in batch.jobs.iter().enumerate() {
        let name = format!("job {} ({:?})", i + 1, job.command);
        let dsl = job.dsl.as_deref().map(resolve);
        let group = match group_spec(job.group.as_deref(), dsl.as_deref()) {
            Ok(g) => g,
            Err(e) => {
                results.push((name, Outcome::failed(e)));
                continue;
            }
        };
        let mut cfg = base.clone();
        cfg.group = group;
        cfg.q = job.q;
        cfg.m = job.m.unwrap_or(1);
        cfg.max_m = job.max_m.unwrap_or(cfg.max_m);
        cfg.timings |= batch.timings;
        if let Some(o) = job.max_order.or(batch.max_order) {
            cfg.limits.max_group_order = o;
        }
        if let Some(x) = job.max_ext.or(batch.max_ext) {
            cfg.limits.max_extension = Some(x);
        }
        cfg.cache = batch.cache.as_deref().map(resolve).or(cfg.cache);
        cfg.out = job.out.as_deref().map(resolve);
        let mut outcome = execute(job.command, &cfg);
        match deliver(&outcome, cfg.out.as_deref()) {
            Ok(Some(stdout)) => print!("{stdout}"),
            Ok(None) => {}
            Err(e) => {
                outcome.messages.push(format!("error: {e}"));
                outcome.exit = outcome.exit.max(e.exit());
            }
        }
        results.push((name, outcome));
    }
    results
}
