//! The `racah verify` driver: suite selection, parameter specialisation,
//! worker pool, JSON and DOT output.

mod args;

use std::fmt;
use std::fs;
use std::io;
use std::path::PathBuf;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use args::{main_with_args, Cli, Command, VerifyArgs};

use crate::coalgebra::{verify_casimir_values, verify_closure, verify_hamiltonian_symmetry, verify_involution, HamiltonianSpec};
use crate::error::{AlgebraError, Result as AlgebraResult};
use crate::observable::{Algebra, AlgebraMode};
use crate::racah::{
    emit_chain_graph, verify_casimir_centrality, verify_classical_limit, verify_cross_chain, verify_identifications,
    verify_racah_relations, verify_substructure, RacahBasis,
};
use crate::report::{sort_reports, CheckStatus, RelationReport};
use crate::scalar::{Bindings, GaussianRational, Param};

/// Seed for the Hamiltonian specs of the involution suite.
const HAMILTONIAN_SEED: u64 = 0x005e_ed0f_4a11;
const HAMILTONIAN_COUNT: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModeSelection {
    Classical,
    Quantum,
    Both,
}

impl ModeSelection {
    pub fn modes(self) -> &'static [AlgebraMode] {
        match self {
            ModeSelection::Classical => &[AlgebraMode::Classical],
            ModeSelection::Quantum => &[AlgebraMode::Quantum],
            ModeSelection::Both => &[AlgebraMode::Classical, AlgebraMode::Quantum],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModeSelection::Classical => "classical",
            ModeSelection::Quantum => "quantum",
            ModeSelection::Both => "both",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Racah,
    Substructures,
    Casimirs,
    Involution,
    Limit,
    All,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Racah => "racah",
            Suite::Substructures => "substructures",
            Suite::Casimirs => "casimirs",
            Suite::Involution => "involution",
            Suite::Limit => "limit",
            Suite::All => "all",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ParamMode {
    Exact,
    Random,
}

impl ParamMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ParamMode::Exact => "exact",
            ParamMode::Random => "random",
        }
    }
}

macro_rules! from_str_via_value_enum {
    ($($t:ty),*) => {$(
        impl FromStr for $t {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                <$t as clap::ValueEnum>::from_str(s, false)
            }
        }
    )*};
}
from_str_via_value_enum!(ModeSelection, Suite, ParamMode);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub n: usize,
    pub mode: ModeSelection,
    pub suite: Suite,
    pub params: ParamMode,
    /// Used in random mode; 0 when absent.
    pub seed: Option<u64>,
    pub json_path: Option<PathBuf>,
    pub dot_path: Option<PathBuf>,
    /// Worker threads; `None` means available parallelism.
    pub threads: Option<usize>,
    /// Record wall-clock milliseconds per check. Off by default so that
    /// reports are reproducible byte for byte.
    pub timings: bool,
}

impl RunConfig {
    pub fn new(n: usize, mode: ModeSelection, suite: Suite, params: ParamMode) -> Self {
        Self {
            n,
            mode,
            suite,
            params,
            seed: None,
            json_path: None,
            dot_path: None,
            threads: None,
            timings: false,
        }
    }

    fn effective_seed(&self) -> Option<u64> {
        match self.params {
            ParamMode::Exact => None,
            ParamMode::Random => Some(self.seed.unwrap_or(0)),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("cannot start worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub indices: Vec<usize>,
    pub status: CheckStatus,
    pub residual_terms: usize,
    pub residual_preview: Vec<String>,
    pub millis: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub n: usize,
    pub mode: String,
    pub suite: String,
    pub params: String,
    pub seed: Option<u64>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    /// 0 if every check passed, 3 if any check errored, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == CheckStatus::Error) {
            3
        } else if self.summary.failed > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.checks.iter().filter(|c| c.status != CheckStatus::Pass) {
            writeln!(f, "{:<5} {} {:?} ({} terms)", format!("{:?}", c.status).to_uppercase(), c.name, c.indices, c.residual_terms)?;
            for line in &c.residual_preview {
                writeln!(f, "        {line}")?;
            }
        }
        let seed = self.seed.map(|s| format!(" seed={s}")).unwrap_or_default();
        writeln!(
            f,
            "n={} mode={} suite={} params={}{seed}: {} checks, {} passed, {} failed",
            self.n, self.mode, self.suite, self.params, self.summary.total, self.summary.passed, self.summary.failed
        )
    }
}

pub struct RunOutcome {
    pub exit_code: i32,
    pub report: Report,
}

fn nonzero_rational<R: Rng>(rng: &mut R) -> GaussianRational {
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-9i64..=9);
    }
    GaussianRational::ratio(num, rng.gen_range(1i64..=9))
}

/// `a_1..a_n`, then `hb`, drawn in that order from the seeded generator.
fn random_bindings(n: usize, seed: u64) -> Bindings {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Bindings::new();
    for i in 1..=n {
        b.insert(Param::A(i as u16), nonzero_rational(&mut rng));
    }
    b.insert(Param::Hbar, nonzero_rational(&mut rng));
    b
}

fn hamiltonian_specs() -> Vec<HamiltonianSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(HAMILTONIAN_SEED);
    (0..HAMILTONIAN_COUNT).map(|_| HamiltonianSpec::random(&mut rng, 2)).collect()
}

fn prefixed(prefix: &str, reports: AlgebraResult<Vec<RelationReport>>, what: &str) -> Vec<RelationReport> {
    match reports {
        Ok(rs) => rs
            .into_iter()
            .map(|mut r| {
                r.check_name = format!("{prefix}.{}", r.check_name);
                r
            })
            .collect(),
        Err(e) => vec![RelationReport::from_residual(format!("{prefix}.{what}.build"), vec![], Err(e), 0)],
    }
}

fn run_mode(config: &RunConfig, mode: AlgebraMode, bindings: &Bindings) -> Vec<RelationReport> {
    let n = config.n;
    let alg = Algebra::with_bindings(mode, n, bindings.clone());
    let prefix = mode.as_str();
    let mut out = Vec::new();
    let basis = match RacahBasis::new(&alg) {
        Ok(b) => b,
        Err(e) => return prefixed(prefix, Err(e), "basis"),
    };
    let suite = config.suite;
    if suite.includes(Suite::Racah) {
        out.extend(prefixed(prefix, Ok(verify_identifications(&basis)), "ident"));
        out.extend(prefixed(prefix, verify_racah_relations(&basis), "racah"));
    }
    if suite.includes(Suite::Substructures) {
        for k in 2..n {
            out.extend(prefixed(prefix, basis.substructure(k).map(|h| verify_substructure(&h)), "substructure"));
        }
        out.extend(prefixed(prefix, verify_cross_chain(&basis), "cross_chain"));
    }
    if suite.includes(Suite::Casimirs) {
        out.extend(prefixed(prefix, Ok(verify_closure(&alg)), "closure"));
        out.extend(prefixed(prefix, Ok(verify_casimir_values(&alg)), "casimir"));
        for k in 2..n {
            out.extend(prefixed(prefix, basis.substructure(k).map(|h| verify_casimir_centrality(&h)), "casimir"));
        }
    }
    if suite.includes(Suite::Involution) {
        out.extend(prefixed(prefix, verify_involution(&alg), "involution"));
        out.extend(prefixed(prefix, verify_hamiltonian_symmetry(&alg, &hamiltonian_specs()), "symmetry"));
    }
    out
}

fn collect_reports(config: &RunConfig) -> Vec<RelationReport> {
    let bindings = match config.effective_seed() {
        Some(seed) => random_bindings(config.n, seed),
        None => Bindings::new(),
    };
    let mut reports = Vec::new();
    for &mode in config.mode.modes() {
        reports.extend(run_mode(config, mode, &bindings));
    }
    if config.suite.includes(Suite::Limit) {
        reports.extend(prefixed("quantum", verify_classical_limit(config.n, &bindings), "limit"));
    }
    sort_reports(&mut reports);
    reports
}

fn resolve_threads(config: &RunConfig) -> Result<usize, CliError> {
    match config.threads {
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        Some(t) => Ok(t),
        None => Ok(std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1)),
    }
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}

/// Runs the configured suites and writes any requested files.
pub fn run(config: &RunConfig) -> Result<RunOutcome, CliError> {
    if config.n < 3 {
        return Err(CliError::Usage(format!("--n must be at least 3, got {}", config.n)));
    }
    if config.n > u16::MAX as usize {
        return Err(CliError::Usage(format!("--n is too large: {}", config.n)));
    }
    let threads = resolve_threads(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Pool(e.to_string()))?;
    let reports = pool.install(|| collect_reports(config));

    let checks: Vec<CheckRecord> = reports
        .into_iter()
        .map(|r| CheckRecord {
            name: r.check_name,
            indices: r.index_tuple,
            status: r.status,
            residual_terms: r.residual_term_count,
            residual_preview: r.residual_preview,
            millis: if config.timings { r.elapsed_millis } else { 0 },
        })
        .collect();
    let passed = checks.iter().filter(|c| c.status == CheckStatus::Pass).count();
    let report = Report {
        n: config.n,
        mode: config.mode.as_str().to_string(),
        suite: config.suite.as_str().to_string(),
        params: config.params.as_str().to_string(),
        seed: config.effective_seed(),
        summary: Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
        },
        checks,
    };
    if let Some(path) = &config.json_path {
        write_file(path, &report.to_json())?;
    }
    if let Some(path) = &config.dot_path {
        write_file(path, &emit_chain_graph(config.n)?)?;
    }
    Ok(RunOutcome {
        exit_code: report.exit_code(),
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_n_is_usage_error() {
        let cfg = RunConfig::new(2, ModeSelection::Both, Suite::All, ParamMode::Exact);
        let err = run(&cfg).err().unwrap();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn random_bindings_are_nonzero_and_seeded() {
        let a = random_bindings(4, 7);
        assert_eq!(a, random_bindings(4, 7));
        assert_ne!(a, random_bindings(4, 8));
        assert_eq!(a.len(), 5);
        assert!(a.values().all(|v| !v.is_zero() && v.is_real()));
    }

    #[test]
    fn exact_mode_has_null_seed() {
        let mut cfg = RunConfig::new(3, ModeSelection::Classical, Suite::Racah, ParamMode::Exact);
        cfg.seed = Some(9);
        assert_eq!(cfg.effective_seed(), None);
        cfg.params = ParamMode::Random;
        assert_eq!(cfg.effective_seed(), Some(9));
    }

    #[test]
    fn exit_code_follows_report() {
        let cfg = RunConfig::new(3, ModeSelection::Classical, Suite::Racah, ParamMode::Exact);
        let out = run(&cfg).unwrap();
        assert_eq!(out.exit_code, 0);
        let mut report = out.report;
        report.checks[0].status = CheckStatus::Fail;
        report.summary.failed = 1;
        assert_eq!(report.exit_code(), 1);
        report.checks[1].status = CheckStatus::Error;
        assert_eq!(report.exit_code(), 3);
    }

    #[test]
    fn names_carry_mode_prefix() {
        let cfg = RunConfig::new(3, ModeSelection::Quantum, Suite::Substructures, ParamMode::Exact);
        let out = run(&cfg).unwrap();
        assert!(out.report.checks.iter().all(|c| c.name.starts_with("quantum.")));
    }
}
