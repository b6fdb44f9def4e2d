//! The bundled corpus of worked examples plus randomized complete-intersection
//! and dual-algorithm suites.

use std::fmt::Write as _;

use serde_json::{json, Value};

use segzeta_core::chowring::AmbientSpec;
use segzeta_core::exactalg::{parse_poly, random_form, MultiPoly, Multidegree, PolyRing, Rationals, VarBlocks};
use segzeta_core::exec::{derive_seed, EngineConfig};
use segzeta_core::segre::{complete_intersection_segre, segre_class, segre_details, segre_from_projective_degrees};
use segzeta_core::zeta::{check_properties, restriction_invariance, verify_cone, zeta_from_ideal, Verdict, ZetaError, ZetaProblem};

use crate::{load_problem, parse_target, CliError, Flags, Outcome};

pub struct CorpusCase {
    pub name: &'static str,
    pub source: &'static str,
    pub segre: &'static str,
    /// `None` when the rank constraint must reject the problem.
    pub zeta: Option<&'static str>,
    pub cones: &'static [&'static str],
    pub restrict: &'static [usize],
}

pub const CORPUS: &[CorpusCase] = &[
    CorpusCase {
        name: "point-p2",
        source: include_str!("../corpus/point-p2.json"),
        segre: "H^2",
        zeta: Some("P = t^2; Q = (1+t)^2"),
        cones: &[],
        restrict: &[],
    },
    CorpusCase {
        name: "x2xy-p2",
        source: include_str!("../corpus/x2xy-p2.json"),
        segre: "H",
        zeta: Some("P = t + 4t^2; Q = (1+2t)^2"),
        cones: &[],
        restrict: &[],
    },
    CorpusCase {
        name: "x2xy-p3",
        source: include_str!("../corpus/x2xy-p3.json"),
        segre: "H - 4H^3",
        zeta: Some("P = t + 4t^2; Q = (1+2t)^2"),
        cones: &["4", "5"],
        restrict: &[0],
    },
    CorpusCase {
        name: "x-p2",
        source: include_str!("../corpus/x-p2.json"),
        segre: "H - H^2",
        zeta: Some("P = t; Q = 1+t"),
        cones: &["3", "4"],
        restrict: &[0],
    },
    CorpusCase {
        name: "hypersurface-d3-p2",
        source: include_str!("../corpus/hypersurface-d3-p2.json"),
        segre: "3H - 9H^2",
        zeta: Some("P = 3t; Q = 1+3t"),
        cones: &["3", "4"],
        restrict: &[0],
    },
    CorpusCase {
        name: "twisted-cubic-p3",
        source: include_str!("../corpus/twisted-cubic-p3.json"),
        segre: "3H^2 - 10H^3",
        zeta: Some("P = 3t^2 + 8t^3; Q = (1+2t)^3"),
        cones: &[],
        restrict: &[],
    },
    CorpusCase {
        name: "skew-lines-p3",
        source: include_str!("../corpus/skew-lines-p3.json"),
        segre: "2H^2 - 4H^3",
        zeta: None,
        cones: &[],
        restrict: &[],
    },
    CorpusCase {
        name: "ci-p2p2",
        source: include_str!("../corpus/ci-p2p2.json"),
        segre: "st - s^2t - st^2 + s^2t^2",
        zeta: Some("P = st; Q = (1+s)(1+t)"),
        cones: &["3,2", "2,3", "3,3"],
        restrict: &[],
    },
    CorpusCase {
        name: "nonci-p2p2",
        source: include_str!("../corpus/nonci-p2p2.json"),
        segre: "s - s^2 + t^2 - 3st^2 + 6s^2t^2",
        zeta: Some("P = s + s^2 + 2st + t^2; Q = (1+s+t)^2"),
        cones: &["3,2", "2,3", "3,3"],
        restrict: &[],
    },
    CorpusCase {
        name: "bidegree-p1p2",
        source: include_str!("../corpus/bidegree-p1p2.json"),
        segre: "s + 2t - 4st - 4t^2 + 12st^2",
        zeta: Some("P = s + 2t; Q = 1+s+2t"),
        cones: &["2,2", "1,3", "2,3"],
        restrict: &[1],
    },
];

pub fn corpus_case(name: &str) -> Option<&'static CorpusCase> {
    CORPUS.iter().find(|c| c.name == name)
}

/// One row of the pass/fail matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub case: String,
    /// `(check, None)` on pass, `(check, Some(reason))` on failure.
    pub checks: Vec<(String, Option<String>)>,
}

impl Row {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, r)| r.is_none())
    }
}

fn check(name: impl Into<String>, outcome: Result<Option<String>, CliError>) -> (String, Option<String>) {
    (name.into(), outcome.unwrap_or_else(|e| Some(e.to_string())))
}

fn expect_eq(got: String, want: &str) -> Option<String> {
    (got != want).then(|| format!("got `{got}`, expected `{want}`"))
}

fn run_corpus_case(case: &CorpusCase, cfg: &EngineConfig, quick: bool) -> Row {
    let mut checks = Vec::new();
    let p = match load_problem(case.source) {
        Ok(p) => p,
        Err(e) => return Row { case: case.name.into(), checks: vec![("load".into(), Some(e.to_string()))] },
    };
    checks.push(check("segre", segre_class(p.generators(), p.base(), cfg).map(|s| expect_eq(s.to_string(), case.segre)).map_err(CliError::from)));
    let zeta = zeta_from_ideal(&p, cfg);
    match (case.zeta, zeta) {
        (Some(want), Ok(z)) => {
            checks.push(("zeta".into(), expect_eq(z.to_string(), want)));
            checks.push(check("properties", check_properties(&z, &p, cfg).map(|r| (!r.all_passed()).then(|| r.to_string())).map_err(CliError::from)));
        }
        (None, Err(ZetaError::RankConstraint { .. })) => checks.push(("zeta".into(), None)),
        (None, other) => checks.push(("zeta".into(), Some(format!("expected a rank-constraint error, got {other:?}")))),
        (Some(_), Err(e)) => checks.push(check("zeta", Err(e.into()))),
    }
    let cones = if quick { &case.cones[..case.cones.len().min(1)] } else { case.cones };
    for t in cones {
        let outcome = parse_target(t, p.base()).and_then(|target| {
            let rep = verify_cone(&p, &target, cfg)?;
            Ok((rep.verdict != Verdict::Match).then(|| format!("predicted {}, computed {}", rep.predicted, rep.computed)))
        });
        checks.push(check(format!("cone {t}"), outcome));
    }
    if !quick {
        for &factor in case.restrict {
            let outcome = restriction_invariance(&p, factor, 3, cfg).map(|r| (!r.invariant()).then(|| "zeta changed".to_string()));
            checks.push(check(format!("restrict {factor}"), outcome.map_err(CliError::from)));
        }
    }
    Row { case: case.name.into(), checks }
}

fn ring(dims: &[u32]) -> segzeta_core::exactalg::RingRef<Rationals> {
    let stems = ["x", "y"];
    let blocks: Vec<Vec<String>> = dims.iter().enumerate().map(|(b, &n)| (0..=n).map(|i| format!("{}{i}", stems[b])).collect()).collect();
    PolyRing::new(Rationals, VarBlocks::projective(&blocks).expect("distinct names"))
}

/// `(ambient dims, generator multidegrees)` for random complete intersections.
const CI_SUITE: &[(&[u32], &[&[u32]])] = &[
    (&[2], &[&[2]]),
    (&[2], &[&[1], &[3]]),
    (&[3], &[&[2], &[2]]),
    (&[3], &[&[1], &[2], &[2]]),
    (&[4], &[&[2], &[3]]),
    (&[2, 2], &[&[1, 1], &[1, 1]]),
    (&[2, 2], &[&[2, 1], &[0, 1]]),
    (&[1, 2], &[&[1, 1]]),
    (&[1, 2], &[&[1, 0], &[0, 2]]),
    (&[4], &[&[1], &[1], &[2]]),
];

fn run_ci_case(k: usize, cfg: &EngineConfig) -> Row {
    let (dims, degrees) = CI_SUITE[k];
    let name = format!("ci {:?} {:?}", dims, degrees);
    let r = ring(dims);
    let mut rng = cfg.rng(&[0x6369, k as u64]);
    let degrees: Vec<Multidegree> = degrees.iter().map(|d| Multidegree::new(d.to_vec())).collect();
    let outcome = (|| {
        let gens = degrees.iter().map(|d| random_form(&r, d, &mut rng)).collect::<Result<Vec<_>, _>>().map_err(|e| CliError::Input(e.to_string()))?;
        let ambient = AmbientSpec::new(dims.to_vec());
        let expected = complete_intersection_segre(&degrees, &ambient)?;
        let got = segre_class(&gens, &ambient, cfg)?;
        Ok((got != expected).then(|| format!("got {got}, closed form {expected}")))
    })();
    Row { case: name, checks: vec![check("closed form", outcome)] }
}

const DUAL_SUITE: &[(u32, &[&str])] = &[
    (2, &["x0^2", "x0*x1"]),
    (3, &["x0^2", "x0*x1"]),
    (2, &["x0", "x1"]),
    (2, &["x0*x1", "x1*x2", "x2*x0"]),
    (3, &["x0*x2", "x1*x2"]),
    (3, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"]),
    (3, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]),
    (2, &["x0^2", "x1^2"]),
    (2, &["x1^2*x2 - x0^3"]),
    (4, &["x0*x1", "x0*x2"]),
];

fn run_dual_case(k: usize, cfg: &EngineConfig) -> Row {
    let (n, srcs) = DUAL_SUITE[k];
    let r = ring(&[n]);
    let outcome = (|| {
        let gens: Vec<MultiPoly<Rationals>> = srcs.iter().map(|s| parse_poly(s, &r)).collect::<Result<_, _>>().map_err(|e| CliError::Input(e.to_string()))?;
        let d = segre_details(&gens, &AmbientSpec::projective(n), cfg, false)?;
        let (Some(m), Some(e)) = (&d.multidegrees, &d.common_degree) else {
            return Ok(Some("no multidegree data".to_string()));
        };
        let other = segre_from_projective_degrees(&m.projective_degrees(), e.0[0], n);
        Ok((other != d.segre).then(|| format!("graph {}, projective degrees {other}", d.segre)))
    })();
    Row { case: format!("dual P^{n} {srcs:?}"), checks: vec![check("two algorithms", outcome)] }
}

enum Task {
    Corpus(usize),
    Ci(usize),
    Dual(usize),
}

/// Runs every suite; instances get seeds derived from the master seed and
/// their position, so the matrix does not depend on scheduling.
pub fn run_selftest(flags: &Flags) -> Result<Vec<Row>, CliError> {
    let base = flags.config()?;
    let mut tasks: Vec<Task> = (0..CORPUS.len()).map(Task::Corpus).collect();
    let (ci, dual) = if flags.quick { (4, 4) } else { (CI_SUITE.len(), DUAL_SUITE.len()) };
    tasks.extend((0..ci).map(Task::Ci));
    tasks.extend((0..dual).map(Task::Dual));
    let quick = flags.quick;
    let rows = base.execution.map(tasks.into_iter().enumerate().collect(), |(i, task)| {
        let cfg = base.with_seed(derive_seed(base.seed, &[i as u64]));
        match task {
            Task::Corpus(k) => run_corpus_case(&CORPUS[k], &cfg, quick),
            Task::Ci(k) => run_ci_case(k, &cfg),
            Task::Dual(k) => run_dual_case(k, &cfg),
        }
    });
    Ok(rows)
}

pub fn render_rows(rows: &[Row], json: bool) -> String {
    if json {
        let v: Vec<Value> = rows
            .iter()
            .map(|r| {
                let checks: serde_json::Map<String, Value> = r.checks.iter().map(|(k, v)| (k.clone(), v.as_ref().map_or(json!("pass"), |m| json!(format!("fail: {m}"))))).collect();
                json!({"case": r.case, "checks": checks})
            })
            .collect();
        return serde_json::to_string_pretty(&v).expect("json values serialize");
    }
    let width = rows.iter().map(|r| r.case.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.checks.iter().map(|(k, v)| format!("{k}:{}", if v.is_none() { "pass" } else { "FAIL" })).collect();
        let _ = writeln!(out, "{:<width$}  {}", r.case, cells.join("  "));
        for (k, v) in &r.checks {
            if let Some(m) = v {
                let _ = writeln!(out, "{:<width$}    {k}: {m}", "");
            }
        }
    }
    let failed = rows.iter().filter(|r| !r.passed()).count();
    let _ = write!(out, "{} cases, {} failed", rows.len(), failed);
    out
}

pub fn cmd_selftest(flags: &Flags) -> Result<Outcome, CliError> {
    let rows = run_selftest(flags)?;
    let code = if rows.iter().all(Row::passed) { 0 } else { 1 };
    Ok(Outcome { code, stdout: render_rows(&rows, flags.json) })
}

/// The corpus problem with the given name, parsed.
pub fn corpus_problem(name: &str) -> Option<ZetaProblem> {
    corpus_case(name).and_then(|c| load_problem(c.source).ok())
}
