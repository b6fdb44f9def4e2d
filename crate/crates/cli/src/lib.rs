//! Batch front end for segzeta-core: problem files, commands and the
//! bundled self-test corpus.

pub mod problem;
pub mod selftest;

use serde_json::{json, Value};
use thiserror::Error;

use segzeta_core::chowring::AmbientSpec;
use segzeta_core::exactalg::PrimeField;
use segzeta_core::exec::EngineConfig;
use segzeta_core::segre::{segre_class, SegreError};
use segzeta_core::zeta::{check_properties, restrict_hyperplane, verify_cone, zeta_from_ideal, Verdict, ZetaError, ZetaProblem};

pub use problem::{load_problem, read_problem, ProblemFile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Genericity(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Genericity(_) => 3,
        }
    }
}

impl From<SegreError> for CliError {
    fn from(e: SegreError) -> Self {
        match e {
            SegreError::GenericityExhausted { .. } => CliError::Genericity(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ZetaError> for CliError {
    fn from(e: ZetaError) -> Self {
        match e {
            ZetaError::Segre(s) => s.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    pub seed: u64,
    pub prime: u64,
    pub retries: u32,
    pub json: bool,
    pub quick: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Self { seed: 0, prime: PrimeField::DEFAULT_PRIME, retries: 5, json: false, quick: false }
    }
}

impl Flags {
    pub fn config(&self) -> Result<EngineConfig, CliError> {
        PrimeField::new(self.prime).map_err(|e| CliError::Input(e.to_string()))?;
        if self.prime < 5 {
            return Err(CliError::Input(format!("--prime {} leaves no smaller odd prime to confirm with", self.prime)));
        }
        Ok(EngineConfig { seed: self.seed, prime: self.prime, retries: self.retries, ..EngineConfig::default() })
    }
}

/// What a command printed and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout }
    }
}

fn render_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

pub fn parse_target(src: &str, base: &AmbientSpec) -> Result<AmbientSpec, CliError> {
    let dims: Vec<u32> = src
        .split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|e| CliError::Input(format!("--target `{src}`: {e}"))))
        .collect::<Result<_, _>>()?;
    if dims.len() != base.num_factors() {
        return Err(CliError::Input(format!("--target `{src}` has {} entries, the problem has {} factors", dims.len(), base.num_factors())));
    }
    Ok(AmbientSpec::new(dims))
}

pub fn cmd_segre(p: &ZetaProblem, flags: &Flags) -> Result<Outcome, CliError> {
    let s = segre_class(p.generators(), p.base(), &flags.config()?)?;
    Ok(Outcome::ok(if flags.json { render_json(&s.to_json()) } else { s.to_string() }))
}

pub fn cmd_zeta(p: &ZetaProblem, flags: &Flags) -> Result<Outcome, CliError> {
    let cfg = flags.config()?;
    let z = zeta_from_ideal(p, &cfg)?;
    if flags.json {
        return Ok(Outcome::ok(render_json(&z.to_json())));
    }
    let props = check_properties(&z, p, &cfg)?;
    Ok(Outcome { code: if props.all_passed() { 0 } else { 1 }, stdout: format!("{z}\n{props}") })
}

pub fn cmd_verify_cone(p: &ZetaProblem, target: &str, flags: &Flags) -> Result<Outcome, CliError> {
    let target = parse_target(target, p.base())?;
    let rep = verify_cone(p, &target, &flags.config()?)?;
    let code = if rep.verdict == Verdict::Match { 0 } else { 1 };
    Ok(Outcome { code, stdout: if flags.json { render_json(&rep.to_json()) } else { rep.to_string() } })
}

pub fn cmd_properties(p: &ZetaProblem, flags: &Flags) -> Result<Outcome, CliError> {
    let cfg = flags.config()?;
    let z = zeta_from_ideal(p, &cfg)?;
    let props = check_properties(&z, p, &cfg)?;
    let code = if props.all_passed() { 0 } else { 1 };
    let stdout = if flags.json { render_json(&json!({"zeta": z.to_json(), "checks": props.to_json()})) } else { format!("{z}\n{props}") };
    Ok(Outcome { code, stdout })
}

/// Restricts to a generic hyperplane of `factor` and compares zeta functions.
/// Exit code 1 when they differ.
pub fn cmd_restrict(p: &ZetaProblem, factor: usize, flags: &Flags) -> Result<Outcome, CliError> {
    let cfg = flags.config()?;
    let mut rng = cfg.rng(&[0x7265_7374, factor as u64, 0]);
    let q = restrict_hyperplane(p, factor, &mut rng)?;
    let before = zeta_from_ideal(p, &cfg)?;
    let after = zeta_from_ideal(&q, &cfg)?;
    let invariant = before.p == after.p && before.q == after.q;
    let file = ProblemFile::from_problem(&q);
    let stdout = if flags.json {
        render_json(&json!({
            "restricted": serde_json::to_value(&file).expect("plain data"),
            "before": before.to_json(),
            "after": after.to_json(),
            "invariant": invariant,
        }))
    } else {
        format!("{}\nbefore: {before}\nafter:  {after}\n{}", file.to_json_string(), if invariant { "invariant" } else { "CHANGED" })
    };
    Ok(Outcome { code: if invariant { 0 } else { 1 }, stdout })
}
