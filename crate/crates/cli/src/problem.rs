//! JSON problem files: per-factor variable names, generator strings and
//! declared multidegrees.

use serde::{Deserialize, Serialize};

use segzeta_core::chowring::AmbientSpec;
use segzeta_core::exactalg::{parse_poly, Multidegree, PolyRing, Rationals, VarBlocks};
use segzeta_core::zeta::ZetaProblem;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub factors: Vec<u32>,
    pub variables: Vec<Vec<String>>,
    pub generators: Vec<String>,
    pub degrees: Vec<Vec<u32>>,
}

/// 1-based line and column of byte offset `pos`.
fn line_col(src: &str, pos: usize) -> (usize, usize) {
    let before = &src[..pos];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
    (line, col)
}

/// Byte offset of the `k`-th generator's string literal, when it can be found verbatim.
fn generator_offset(src: &str, generators: &[String], k: usize) -> Option<usize> {
    let mut at = src.find("\"generators\"")? + "\"generators\"".len();
    for (i, g) in generators.iter().enumerate() {
        let lit = serde_json::to_string(g).ok()?;
        at += src[at..].find(&lit)?;
        if i == k {
            return Some(at + 1);
        }
        at += lit.len();
    }
    None
}

impl ProblemFile {
    pub fn parse(src: &str) -> Result<Self, CliError> {
        serde_json::from_str(src).map_err(|e| CliError::Input(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_problem(p: &ZetaProblem) -> Self {
        Self {
            factors: p.base().dims().to_vec(),
            variables: p.ring().vars().blocks().iter().map(|b| b.names.clone()).collect(),
            generators: p.generators().iter().map(|g| g.to_string()).collect(),
            degrees: p.bundle().degrees().iter().map(|d| d.0.clone()).collect(),
        }
    }

    /// Builds the engine problem. `src` is the text the file was read from,
    /// used to place polynomial parse errors.
    pub fn load(&self, src: Option<&str>) -> Result<ZetaProblem, CliError> {
        let input = |m: String| CliError::Input(m);
        if self.factors.is_empty() || self.factors.len() > 2 {
            return Err(input(format!("expected 1 or 2 factors, got {}", self.factors.len())));
        }
        if self.variables.len() != self.factors.len() {
            return Err(input(format!("{} factors but {} variable lists", self.factors.len(), self.variables.len())));
        }
        for (k, (names, &n)) in self.variables.iter().zip(&self.factors).enumerate() {
            if names.len() != n as usize + 1 {
                return Err(input(format!("factor {k} is P^{n} but lists {} variables", names.len())));
            }
        }
        let vars = VarBlocks::projective(&self.variables).map_err(|e| input(e.to_string()))?;
        let ring = PolyRing::new(Rationals, vars);
        let mut gens = Vec::new();
        for (k, s) in self.generators.iter().enumerate() {
            let f = parse_poly(s, &ring).map_err(|e| match src.and_then(|t| generator_offset(t, &self.generators, k).map(|o| (t, o))) {
                Some((text, offset)) => {
                    let (line, col) = line_col(text, offset);
                    input(format!("line {line}, column {}: generator {k}: {}", col + e.column - 1, e.message))
                }
                None => input(format!("generator {k} `{s}`: {e}")),
            })?;
            gens.push(f);
        }
        let degrees = self.degrees.iter().map(|d| Multidegree::new(d.clone())).collect();
        ZetaProblem::new(gens, degrees, AmbientSpec::new(self.factors.clone())).map_err(|e| input(e.to_string()))
    }
}

pub fn read_problem(path: &str) -> Result<ZetaProblem, CliError> {
    let src = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    load_problem(&src).map_err(|e| match e {
        CliError::Input(m) => CliError::Input(format!("{path}: {m}")),
        other => other,
    })
}

pub fn load_problem(src: &str) -> Result<ZetaProblem, CliError> {
    ProblemFile::parse(src)?.load(Some(src))
}
