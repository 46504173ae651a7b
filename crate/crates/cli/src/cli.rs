use std::ffi::OsString;
use std::path::PathBuf;

use asai_core::{Execution, Limits};
use clap::{Args, Parser, Subcommand};

use crate::commands::{cmd_run, deliver, execute};
use crate::config::{group_spec, Command, RunConfig};
use crate::error::Exit;

#[derive(Parser, Debug)]
#[command(name = "asai", version, about = "Norm maps and easiness checks for unipotent group laws")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Check the group axioms pointwise.
    Validate(Opts),
    /// Conjugacy classes of G(F_{q^m}).
    Classes(Opts),
    /// Norm map on classes, fixed classes and centralizer witnesses.
    Asai(Opts),
    /// Scan m = 1..max-m and compare with the family label.
    EasyCheck(Opts),
    /// Run the jobs listed in a TOML file.
    Run {
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Opts {
    /// Built-in family: ul(n), ga_power(d) or n2.
    #[arg(long)]
    group: Option<String>,
    /// Group law file.
    #[arg(long)]
    dsl: Option<PathBuf>,
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long, default_value_t = asai_core::easiness::DEFAULT_MAX_M)]
    max_m: u32,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Class-table cache directory.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    max_order: Option<u64>,
    /// Cap on the extension multiplier of Lang witnesses (default p^dim).
    #[arg(long)]
    max_ext: Option<u32>,
    /// Add wall-clock timings and cache statistics to reports.
    #[arg(long)]
    timings: bool,
    /// Run single-threaded.
    #[arg(long)]
    sequential: bool,
}

impl Common {
    fn apply(&self, cfg: &mut RunConfig) {
        cfg.cache = self.cache.clone();
        let mut limits = Limits::default();
        if let Some(o) = self.max_order {
            limits.max_group_order = o;
        }
        limits.max_extension = self.max_ext;
        cfg.limits = limits;
        cfg.timings = self.timings;
        cfg.exec = if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        };
    }
}

fn emit(messages: &[String]) {
    for m in messages {
        eprintln!("{m}");
    }
}

/// Parses arguments, runs the command, prints the report and messages,
/// and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Exit::Parse.code() } else { Exit::Ok.code() };
        }
    };
    let (command, opts) = match cli.command {
        Sub::Validate(o) => (Command::Validate, o),
        Sub::Classes(o) => (Command::Classes, o),
        Sub::Asai(o) => (Command::Asai, o),
        Sub::EasyCheck(o) => (Command::EasyCheck, o),
        Sub::Run { config, common } => {
            let mut base = RunConfig::new(crate::config::GroupSpec::Builtin(asai_core::group_laws::Family::N2), 2);
            common.apply(&mut base);
            let results = cmd_run(&config, &base);
            let mut worst = Exit::Ok;
            for (name, outcome) in &results {
                for m in &outcome.messages {
                    eprintln!("{name}: {m}");
                }
                worst = worst.max(outcome.exit);
            }
            return worst.code();
        }
    };
    let group = match group_spec(opts.group.as_deref(), opts.dsl.as_deref()) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit().code();
        }
    };
    let mut cfg = RunConfig::new(group, opts.q);
    cfg.m = opts.m;
    cfg.max_m = opts.max_m;
    cfg.out = opts.out;
    opts.common.apply(&mut cfg);
    let outcome = execute(command, &cfg);
    emit(&outcome.messages);
    match deliver(&outcome, cfg.out.as_deref()) {
        Ok(Some(report)) => print!("{report}"),
        Ok(None) => {}
        Err(e) => {
            eprintln!("error: {e}");
            return outcome.exit.max(e.exit()).code();
        }
    }
    outcome.exit.code()
}
