use std::path::{Path, PathBuf};

use asai_core::finite_fields::prime_power;
use asai_core::group_laws::{builtin, parse_group_dsl, Family, GroupLaw};
use asai_core::{Execution, Limits};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// Where the group law comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Builtin(Family),
    Dsl(PathBuf),
}

/// Everything a command needs. Runs are deterministic: there is no seed to
/// set, and nothing in a report depends on wall-clock time unless
/// `timings` is on.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub group: GroupSpec,
    pub q: u64,
    pub m: u32,
    pub max_m: u32,
    pub limits: Limits,
    pub cache: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub timings: bool,
    pub exec: Execution,
}

impl RunConfig {
    pub fn new(group: GroupSpec, q: u64) -> Self {
        Self {
            group,
            q,
            m: 1,
            max_m: asai_core::easiness::DEFAULT_MAX_M,
            limits: Limits::default(),
            cache: None,
            out: None,
            timings: false,
            exec: Execution::Parallel,
        }
    }

    pub fn check(&self) -> CliResult<()> {
        if self.m == 0 || self.max_m == 0 {
            return Err(CliError::Usage("m and max-m must be positive".into()));
        }
        if self.limits.max_group_order == 0 || self.limits.max_extension == Some(0) {
            return Err(CliError::Usage("caps must be positive".into()));
        }
        if prime_power(self.q).is_none() {
            return Err(CliError::Usage(format!("q = {} is not a prime power", self.q)));
        }
        Ok(())
    }

    /// Builds the law and checks that `q` is a power of its characteristic.
    pub fn load_law(&self) -> CliResult<GroupLaw> {
        self.check()?;
        let (p, _) = prime_power(self.q).expect("checked");
        let law = match &self.group {
            GroupSpec::Builtin(f) => builtin(*f, p)?,
            GroupSpec::Dsl(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                parse_group_dsl(&text)?
            }
        };
        if law.p() != p {
            return Err(asai_core::Error::NotPowerOfP { q: self.q, p: law.p() }.into());
        }
        Ok(law)
    }

    /// Name shown in reports.
    pub fn group_label(&self, law: &GroupLaw) -> String {
        match &self.group {
            GroupSpec::Builtin(f) => f.to_string(),
            GroupSpec::Dsl(_) => law.name().to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Validate,
    Classes,
    Asai,
    EasyCheck,
}

/// One job of a batch file.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub command: Command,
    pub group: Option<String>,
    pub dsl: Option<PathBuf>,
    pub q: u64,
    pub m: Option<u32>,
    pub max_m: Option<u32>,
    pub max_order: Option<u64>,
    pub max_ext: Option<u32>,
    pub out: Option<PathBuf>,
}

/// A batch file:
///
/// ```toml
/// cache = "cache"
///
/// [[job]]
/// command = "asai"
/// group = "n2"
/// q = 3
/// m = 1
/// out = "n2.json"
/// ```
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Batch {
    pub cache: Option<PathBuf>,
    pub max_order: Option<u64>,
    pub max_ext: Option<u32>,
    #[serde(default)]
    pub timings: bool,
    #[serde(default, rename = "job")]
    pub jobs: Vec<Job>,
}

impl Batch {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

pub fn group_spec(group: Option<&str>, dsl: Option<&Path>) -> CliResult<GroupSpec> {
    match (group, dsl) {
        (Some(_), Some(_)) => Err(CliError::Usage("give either --group or --dsl, not both".into())),
        (None, None) => Err(CliError::Usage("one of --group or --dsl is required".into())),
        (Some(g), None) => Ok(GroupSpec::Builtin(g.parse()?)),
        (None, Some(path)) => Ok(GroupSpec::Dsl(path.to_path_buf())),
    }
}
