//! Batch jobs: JSON config in, JSON (or text) report out, exit status as
//! the machine contract.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::algebra::{
    AlgebraDescription, AlgebraError, FDAlgebra, GradedAlgebra, ModuleDescription, MultSystem, RatLiteral,
};
use crate::budget::{checked_pow, Budget};
use crate::exactlin::Rat;
use crate::hochschild::{cohomology, graded_homology, homology, HochschildError, HomologyTable, Options};
use crate::homalg::{ext, HomalgError};
use crate::simplicial::SpaceExpr;
use crate::verify::{run_suite, suite_localization, LocalizationCase, SuiteReport, VerifyError, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SUITE_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug)]
pub enum Job {
    Homology {
        algebra: FDAlgebra,
        space: SpaceExpr,
        n: usize,
        normalized: bool,
        representatives: bool,
    },
    Cohomology {
        algebra: FDAlgebra,
        space: SpaceExpr,
        n: usize,
        module: ModuleDescription,
    },
    GradedHomology {
        algebra: GradedAlgebra,
        space: SpaceExpr,
        n: usize,
        weight: usize,
        normalized: bool,
    },
    Ext {
        algebra: FDAlgebra,
        module: ModuleDescription,
        target: ModuleDescription,
        n: usize,
    },
    Verify {
        suite: String,
        corpus: String,
        /// Replaces the localization corpus with one caller-chosen case.
        localization: Option<LocalizationCase>,
    },
}

impl Job {
    pub fn command(&self) -> &'static str {
        match self {
            Job::Homology { .. } => "homology",
            Job::Cohomology { .. } => "cohomology",
            Job::GradedHomology { .. } => "graded-homology",
            Job::Ext { .. } => "ext",
            Job::Verify { .. } => "verify",
        }
    }
}

#[derive(Clone, Debug)]
pub struct JobConfig {
    pub job: Job,
    pub budget: Budget,
    pub output: Option<PathBuf>,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("malformed JSON: {0}")]
    Malformed(String),
    #[error("invalid config:\n{}", .0.iter().map(|e| format!("  {e}")).collect::<Vec<_>>().join("\n"))]
    Fields(Vec<FieldError>),
    #[error("{0}")]
    Budget(String),
}

impl ConfigError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ConfigError::Budget(_) => EXIT_BUDGET,
            _ => EXIT_INPUT,
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
    #[error(transparent)]
    Homalg(#[from] HomalgError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("cannot write report to {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        let budget = match self {
            RunError::Hochschild(e) => matches!(e, HochschildError::BudgetExceeded { .. }),
            RunError::Homalg(HomalgError::Hochschild(e)) => matches!(e, HochschildError::BudgetExceeded { .. }),
            RunError::Verify(e) => e.is_budget(),
            _ => false,
        };
        if budget {
            EXIT_BUDGET
        } else {
            EXIT_INPUT
        }
    }
}

struct Fields<'a> {
    obj: &'a Map<String, Value>,
    errors: Vec<FieldError>,
}

impl<'a> Fields<'a> {
    fn err(&mut self, path: &str, message: impl Into<String>) {
        self.errors.push(FieldError {
            path: path.to_string(),
            message: message.into(),
        });
    }

    fn required(&mut self, key: &str) -> Option<&'a Value> {
        let v = self.obj.get(key);
        if v.is_none() {
            self.err(&format!(".{key}"), "required field is missing");
        }
        v
    }

    fn count(&mut self, key: &str, required: bool, min: u64) -> Option<usize> {
        let v = if required { self.required(key)? } else { self.obj.get(key)? };
        match v.as_u64() {
            Some(x) if x >= min => Some(x as usize),
            _ => {
                self.err(&format!(".{key}"), format!("expected an integer ≥ {min}"));
                None
            }
        }
    }

    fn string(&mut self, key: &str, required: bool) -> Option<&'a str> {
        let v = if required { self.required(key)? } else { self.obj.get(key)? };
        let s = v.as_str();
        if s.is_none() {
            self.err(&format!(".{key}"), "expected a string");
        }
        s
    }

    fn flag(&mut self, key: &str, default: bool) -> bool {
        match self.obj.get(key) {
            None => default,
            Some(Value::Bool(b)) => *b,
            Some(_) => {
                self.err(&format!(".{key}"), "expected true or false");
                default
            }
        }
    }

    fn space(&mut self) -> Option<SpaceExpr> {
        let s = self.string("space", true)?;
        match s.parse() {
            Ok(e) => Some(e),
            Err(e) => {
                self.err(".space", e.to_string());
                None
            }
        }
    }

    fn algebra(&mut self) -> Option<AlgebraDescription> {
        let v = self.required("algebra")?;
        match AlgebraDescription::from_json(v) {
            Ok(a) => Some(a),
            Err(e) => {
                self.algebra_error(".algebra", e);
                None
            }
        }
    }

    fn algebra_error(&mut self, base: &str, e: AlgebraError) {
        match e {
            AlgebraError::Invalid(msg) => match msg.split_once(": ") {
                Some((sub, rest)) => self.err(&format!("{base}{sub}"), rest),
                None => self.err(base, msg),
            },
            other => self.err(base, other.to_string()),
        }
    }

    fn finite(&mut self) -> Option<FDAlgebra> {
        let a = self.algebra()?;
        if a.finite.is_none() {
            self.err(".algebra", format!("{} is infinite-dimensional; use graded-homology", a.label));
        }
        a.finite
    }

    /// `space` plus optional `algebra` (default `split_pair`), `s` (default
    /// the second basis element) and `N` (default 4).
    fn localization_case(&mut self) -> Option<LocalizationCase> {
        let space = self.space()?;
        let algebra = if self.obj.contains_key("algebra") {
            self.finite()?
        } else {
            FDAlgebra::split_pair()
        };
        let n = self.count("N", false, 1).unwrap_or(4);
        let generator = match self.obj.get("s") {
            None if algebra.dim() >= 2 => vec![(1, Rat::one())],
            None => {
                self.err(".s", "required when the algebra has dimension below 2");
                return None;
            }
            Some(Value::Array(xs)) if xs.len() == algebra.dim() => {
                let mut v = Vec::new();
                for (i, x) in xs.iter().enumerate() {
                    match RatLiteral::from_json(x) {
                        Ok(RatLiteral(r)) if !r.is_zero() => v.push((i, r)),
                        Ok(_) => {}
                        Err(e) => {
                            self.err(&format!(".s[{i}]"), e);
                            return None;
                        }
                    }
                }
                v
            }
            Some(_) => {
                self.err(".s", format!("expected {} rational coordinates", algebra.dim()));
                return None;
            }
        };
        Some(LocalizationCase {
            space,
            algebra,
            s: MultSystem::new(generator),
            n,
        })
    }

    fn module(&mut self, key: &str, default: Option<ModuleDescription>) -> Option<ModuleDescription> {
        let v = match (self.obj.get(key), default) {
            (Some(v), _) => v,
            (None, Some(d)) => return Some(d),
            (None, None) => {
                self.required(key);
                return None;
            }
        };
        match ModuleDescription::from_json(v) {
            Ok(m) => Some(m),
            Err(e) => {
                self.algebra_error(&format!(".{key}"), e);
                None
            }
        }
    }
}

const KNOWN_FIELDS: [&str; 16] = [
    "command",
    "algebra",
    "space",
    "N",
    "weight",
    "module",
    "target",
    "suite",
    "corpus",
    "budget",
    "output",
    "format",
    "normalized",
    "representatives",
    "s",
    "comment",
];

/// Parses and validates a job. All field problems are reported at once.
/// `HOCHHOM_BUDGET`, when set, overrides the `budget` field.
pub fn parse_config(document: &str) -> Result<JobConfig, ConfigError> {
    let value: Value = serde_json::from_str(document).map_err(|e| ConfigError::Malformed(e.to_string()))?;
    let obj = value.as_object().ok_or_else(|| {
        ConfigError::Fields(vec![FieldError {
            path: ".".into(),
            message: "a config must be a JSON object".into(),
        }])
    })?;
    let mut f = Fields {
        obj,
        errors: Vec::new(),
    };
    for key in obj.keys() {
        if !KNOWN_FIELDS.contains(&key.as_str()) {
            f.err(&format!(".{key}"), "unknown field");
        }
    }

    let budget = f.count("budget", false, 1).map(Budget);
    let format = match f.string("format", false) {
        None | Some("json") => Format::Json,
        Some("text") => Format::Text,
        Some(other) => {
            f.err(".format", format!("expected \"json\" or \"text\", got {other:?}"));
            Format::Json
        }
    };
    let output = f.string("output", false).map(PathBuf::from);

    let job = match f.string("command", true) {
        None => None,
        Some("homology") => {
            let (algebra, space, n) = (f.finite(), f.space(), f.count("N", true, 1));
            let normalized = f.flag("normalized", true);
            let representatives = f.flag("representatives", false);
            match (algebra, space, n) {
                (Some(algebra), Some(space), Some(n)) => Some(Job::Homology {
                    algebra,
                    space,
                    n,
                    normalized,
                    representatives,
                }),
                _ => None,
            }
        }
        Some("cohomology") => {
            let (algebra, space, n) = (f.finite(), f.space(), f.count("N", true, 1));
            let module = f.module("module", Some(ModuleDescription::Regular));
            match (algebra, space, n, module) {
                (Some(algebra), Some(space), Some(n), Some(module)) => Some(Job::Cohomology {
                    algebra,
                    space,
                    n,
                    module,
                }),
                _ => None,
            }
        }
        Some("graded-homology") => {
            let algebra = f.algebra();
            let (space, n, weight) = (f.space(), f.count("N", true, 1), f.count("weight", true, 0));
            let normalized = f.flag("normalized", true);
            let graded = algebra.and_then(|a| {
                if a.graded.is_none() {
                    f.err(".algebra", format!("{} carries no grading", a.label));
                }
                a.graded
            });
            match (graded, space, n, weight) {
                (Some(algebra), Some(space), Some(n), Some(weight)) => Some(Job::GradedHomology {
                    algebra,
                    space,
                    n,
                    weight,
                    normalized,
                }),
                _ => None,
            }
        }
        Some("ext") => {
            let (algebra, n) = (f.finite(), f.count("N", true, 1));
            let module = f.module("module", None);
            let target = f.module("target", Some(ModuleDescription::Augmentation));
            match (algebra, module, target, n) {
                (Some(algebra), Some(module), Some(target), Some(n)) => Some(Job::Ext {
                    algebra,
                    module,
                    target,
                    n,
                }),
                _ => None,
            }
        }
        Some("verify") => {
            let suite = f.string("suite", true).map(str::to_string);
            let corpus = f.string("corpus", false).unwrap_or("default").to_string();
            if let Some(s) = &suite {
                if !SUITES.contains(&s.as_str()) {
                    f.err(".suite", format!("unknown suite {s:?}; expected one of {}", SUITES.join(", ")));
                }
            }
            if corpus != "default" {
                f.err(".corpus", "only the \"default\" corpus is built in");
            }
            let localization = if obj.contains_key("space") && suite.as_deref() == Some("localization") {
                f.localization_case()
            } else {
                None
            };
            suite.map(|suite| Job::Verify {
                suite,
                corpus,
                localization,
            })
        }
        Some(other) => {
            f.err(
                ".command",
                format!("unknown command {other:?}; expected homology, cohomology, graded-homology, ext or verify"),
            );
            None
        }
    };
    if !f.errors.is_empty() {
        return Err(ConfigError::Fields(f.errors));
    }
    let job = job.expect("no field errors means the job was built");
    let budget = Budget::env_override().or(budget).unwrap_or_default();
    let config = JobConfig {
        job,
        budget,
        output,
        format,
    };
    static_budget_check(&config)?;
    Ok(config)
}

/// Raw complexes have `dim A^{|K_n|}` basis elements in degree `n`, which
/// is known before anything is built.
fn static_budget_check(c: &JobConfig) -> Result<(), ConfigError> {
    if let Job::Homology {
        algebra,
        space,
        n,
        normalized: false,
        ..
    } = &c.job
    {
        let Ok(k) = space.build(*n + 1) else {
            return Ok(());
        };
        let size = checked_pow(algebra.dim(), k.level_size(*n));
        if size.is_none_or(|s| s > c.budget.get()) {
            return Err(ConfigError::Budget(format!(
                "the raw complex of {} on {space} needs {}^{} basis elements in degree {n}, over the budget of {}",
                algebra.name(),
                algebra.dim(),
                k.level_size(*n),
                c.budget.get()
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtReport {
    pub algebra: String,
    pub module: String,
    pub target: String,
    pub dims: Vec<usize>,
    pub resolution_ranks: Vec<usize>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum ReportBody {
    Table(HomologyTable),
    Ext(ExtReport),
    Suite(SuiteReport),
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub status: &'static str,
    pub result: ReportBody,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match &self.result {
            ReportBody::Suite(s) if !s.passed() => EXIT_SUITE_FAILED,
            _ => EXIT_OK,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// JSON with every `elapsed_ms` removed, for golden comparisons.
    pub fn to_json_without_timing(&self) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        strip_timing(&mut v);
        serde_json::to_string_pretty(&v).expect("values serialize")
    }

    pub fn to_text(&self) -> String {
        match &self.result {
            ReportBody::Table(t) => {
                let mut out = format!(
                    "{} of {} on {} ({}, truncation {})\n",
                    self.command,
                    t.algebra,
                    t.space,
                    serde_json::to_value(t.complex).expect("kinds serialize").as_str().unwrap_or("?"),
                    t.truncation
                );
                if let Some(c) = &t.coefficients {
                    out.push_str(&format!("coefficients: {c}\n"));
                }
                if let Some(w) = t.weight {
                    out.push_str(&format!("weight: {w}\n"));
                }
                for (n, d) in t.dims.iter().enumerate() {
                    let mark = if t.certified[n] { "" } else { "  (uncertified: upper bound)" };
                    out.push_str(&format!("  degree {n}: dim {d}{mark}\n"));
                }
                out
            }
            ReportBody::Ext(e) => {
                let mut out = format!("Ext_{}({}, {})\n", e.algebra, e.module, e.target);
                for (p, d) in e.dims.iter().enumerate() {
                    out.push_str(&format!("  p = {p}: dim {d}\n"));
                }
                out
            }
            ReportBody::Suite(s) => s.to_text(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(o) => {
            o.remove("elapsed_ms");
            o.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

/// Executes a validated job.
pub fn run(config: &JobConfig) -> Result<Report, RunError> {
    let opts = |normalized: bool, representatives: bool| Options {
        budget: config.budget,
        normalized,
        representatives,
    };
    let result = match &config.job {
        Job::Homology {
            algebra,
            space,
            n,
            normalized,
            representatives,
        } => {
            let k = space.build(n + 1).map_err(VerifyError::from)?;
            ReportBody::Table(homology(&k, algebra, *n, &opts(*normalized, *representatives))?)
        }
        Job::Cohomology {
            algebra,
            space,
            n,
            module,
        } => {
            let k = space.build(n + 1).map_err(VerifyError::from)?;
            let m = module.build(algebra)?;
            ReportBody::Table(cohomology(&k, algebra, &m, &module.label(), *n, &opts(true, false))?)
        }
        Job::GradedHomology {
            algebra,
            space,
            n,
            weight,
            normalized,
        } => {
            let k = space.build(n + 1).map_err(VerifyError::from)?;
            ReportBody::Table(graded_homology(&k, algebra, *weight, *n, &opts(*normalized, false))?)
        }
        Job::Ext {
            algebra,
            module,
            target,
            n,
        } => {
            let started = Instant::now();
            let m = module.build(algebra)?;
            let t = target.build(algebra)?;
            let table = ext(algebra, &m, &t, *n)?;
            ReportBody::Ext(ExtReport {
                algebra: algebra.name().to_string(),
                module: module.label(),
                target: target.label(),
                dims: table.dims,
                resolution_ranks: table.resolution_ranks,
                elapsed_ms: started.elapsed().as_millis() as u64,
            })
        }
        Job::Verify {
            localization: Some(case),
            ..
        } => ReportBody::Suite(suite_localization(std::slice::from_ref(case), config.budget)?),
        Job::Verify { suite, corpus, .. } => ReportBody::Suite(run_suite(suite, corpus, config.budget)?),
    };
    let status = match &result {
        ReportBody::Suite(s) if !s.passed() => "fail",
        ReportBody::Suite(_) => "pass",
        _ => "ok",
    };
    Ok(Report {
        schema_version: REPORT_SCHEMA_VERSION,
        command: config.job.command().to_string(),
        status,
        result,
    })
}

/// Runs the job, writes the report (to `output` or stdout) and returns the
/// exit status. Diagnostics go to stderr.
pub fn execute(config: &JobConfig) -> i32 {
    match run(config) {
        Ok(report) => {
            let text = report.render(config.format);
            match &config.output {
                Some(path) => {
                    if let Err(source) = std::fs::write(path, &text) {
                        let e = RunError::Io {
                            path: path.display().to_string(),
                            source,
                        };
                        eprintln!("error: {e}");
                        return EXIT_INPUT;
                    }
                }
                None => {
                    // a closed pipe is the reader's choice, not an error here
                    let _ = writeln!(std::io::stdout(), "{text}");
                }
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
