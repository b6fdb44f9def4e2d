use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use segzeta_core::chowring::{AmbientSpec, ChowClass};
use segzeta_core::exactalg::{parse_poly, random_form, MultiPoly, Multidegree, PolyRing, Rationals, RingRef, VarBlocks};
use segzeta_core::exec::EngineConfig;
use segzeta_core::groebner::{saturate, IdealHandle};
use segzeta_core::segre::{codimension, segre_class, segre_details, segre_from_graph_class, segre_from_projective_degrees};

fn ring(dims: &[u32]) -> RingRef<Rationals> {
    let stems = ["x", "y"];
    let blocks: Vec<Vec<String>> = dims.iter().enumerate().map(|(b, &n)| (0..=n).map(|i| format!("{}{i}", stems[b])).collect()).collect();
    PolyRing::new(Rationals, VarBlocks::projective(&blocks).unwrap())
}

fn ambient(dims: &[u32]) -> AmbientSpec {
    AmbientSpec::new(dims.to_vec())
}

fn parse(r: &RingRef<Rationals>, srcs: &[&str]) -> Vec<MultiPoly<Rationals>> {
    srcs.iter().map(|s| parse_poly(s, r).unwrap()).collect()
}

/// Dense truncated series with i64 coefficients, keyed by exponent vector.
type Series = BTreeMap<Vec<u32>, i64>;

fn series_mul(a: &Series, b: &Series, dims: &[u32]) -> Series {
    let mut out = Series::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if e.iter().zip(dims).all(|(x, n)| x <= n) {
                *out.entry(e).or_default() += ca * cb;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `prod D_j / prod (1 + D_j)` via `1/(1+D) = sum (-D)^k`.
fn ci_oracle(degrees: &[Vec<u32>], dims: &[u32]) -> Series {
    let k = dims.len();
    let one: Series = [(vec![0; k], 1)].into();
    let mut out = one.clone();
    for d in degrees {
        let mut div = Series::new();
        for (f, &df) in d.iter().enumerate() {
            if df > 0 {
                let mut e = vec![0; k];
                e[f] = 1;
                div.insert(e, df as i64);
            }
        }
        let neg: Series = div.iter().map(|(e, c)| (e.clone(), -c)).collect();
        let mut inv = one.clone();
        let mut power = one.clone();
        for _ in 0..dims.iter().sum::<u32>() {
            power = series_mul(&power, &neg, dims);
            for (e, c) in &power {
                *inv.entry(e.clone()).or_default() += c;
            }
        }
        inv.retain(|_, c| *c != 0);
        out = series_mul(&series_mul(&out, &div, dims), &inv, dims);
    }
    out
}

fn as_series(c: &ChowClass) -> Series {
    c.poly().terms().iter().map(|(e, v)| (e.clone(), v.to_i64().unwrap())).collect()
}

fn random_gens(dims: &[u32], degrees: &[Vec<u32>], seed: u64) -> Vec<MultiPoly<Rationals>> {
    let r = ring(dims);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    degrees.iter().map(|d| random_form(&r, &Multidegree::new(d.clone()), &mut rng).unwrap()).collect()
}

#[test]
fn complete_intersections_match_closed_form() {
    let cases: Vec<(Vec<u32>, Vec<Vec<u32>>)> = vec![
        (vec![2], vec![vec![1]]),
        (vec![2], vec![vec![3]]),
        (vec![2], vec![vec![1], vec![2]]),
        (vec![2], vec![vec![2], vec![3]]),
        (vec![3], vec![vec![2], vec![2]]),
        (vec![3], vec![vec![1], vec![3]]),
        (vec![3], vec![vec![1], vec![1], vec![2]]),
        (vec![4], vec![vec![2], vec![2]]),
        (vec![4], vec![vec![1], vec![2], vec![3]]),
        (vec![2, 2], vec![vec![1, 0], vec![0, 1]]),
        (vec![2, 2], vec![vec![1, 1], vec![1, 1]]),
        (vec![2, 2], vec![vec![2, 1], vec![1, 2], vec![1, 0]]),
        (vec![1, 2], vec![vec![1, 1]]),
        (vec![1, 2], vec![vec![1, 0], vec![0, 2]]),
        (vec![1, 2], vec![vec![1, 2], vec![0, 1], vec![1, 1]]),
    ];
    let cfg = EngineConfig::default();
    for (k, (dims, degrees)) in cases.iter().enumerate() {
        let gens = random_gens(dims, degrees, 100 + k as u64);
        let a = ambient(dims);
        let codim = codimension(&gens, &a, &cfg).unwrap();
        assert_eq!(codim, Some(degrees.len() as u32), "not a complete intersection: {dims:?} {degrees:?}");
        let s = segre_class(&gens, &a, &cfg).unwrap();
        assert_eq!(as_series(&s), ci_oracle(degrees, dims), "{dims:?} {degrees:?}");
    }
}

fn single_factor_catalog() -> Vec<(u32, Vec<&'static str>)> {
    vec![
        (2, vec!["x0^2", "x0*x1"]),
        (3, vec!["x0^2", "x0*x1"]),
        (2, vec!["x0", "x1"]),
        (2, vec!["x0*x1", "x0*x2"]),
        (2, vec!["x0*x1", "x1*x2", "x2*x0"]),
        (3, vec!["x0*x2", "x1*x2"]),
        (3, vec!["x0*x2", "x0*x3", "x1*x2", "x1*x3"]),
        (3, vec!["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]),
        (2, vec!["x0^2", "x1^2"]),
        (2, vec!["x1^2*x2 - x0^3"]),
        (3, vec!["x0^3", "x0^2*x1", "x2"]),
        (4, vec!["x0*x1", "x0*x2"]),
    ]
}

#[test]
fn graph_and_projective_degree_methods_agree() {
    let cfg = EngineConfig::default();
    for (n, gens) in single_factor_catalog() {
        let r = ring(&[n]);
        let d = segre_details(&parse(&r, &gens), &ambient(&[n]), &cfg, false).unwrap();
        let g = d.multidegrees.as_ref().unwrap().projective_degrees();
        let e = d.common_degree.as_ref().unwrap().0[0];
        assert_eq!(segre_from_projective_degrees(&g, e, n), d.segre, "{gens:?} in P^{n}");
    }
}

#[test]
fn lowest_term_is_the_top_dimensional_cycle() {
    let cfg = EngineConfig::default();
    // (ideal, ambient dim, expected top-dimensional cycle as (codim, degree))
    let cases = [
        (vec!["x0*x2", "x0*x3", "x1*x2", "x1*x3"], 3, (2, 2)),
        (vec!["x0*x2", "x1*x2"], 3, (1, 1)),
        (vec!["x0*x1", "x1*x2", "x2*x0"], 2, (2, 3)),
        (vec!["x0^2", "x0*x1"], 2, (1, 1)),
        (vec!["x0^2", "x1^2"], 2, (2, 4)),
        (vec!["x0*x1*x2"], 2, (1, 3)),
    ];
    for (gens, n, (codim, degree)) in cases {
        let r = ring(&[n]);
        let gens = parse(&r, &gens);
        let a = ambient(&[n]);
        let s = segre_class(&gens, &a, &cfg).unwrap();
        assert_eq!(codimension(&gens, &a, &cfg).unwrap(), Some(codim));
        assert_eq!(s.min_codim(), Some(codim));
        assert_eq!(s.codim_part(codim), ChowClass::monomial(&a, &[codim], degree));
    }
}

#[test]
fn saturation_does_not_change_the_class() {
    let cfg = EngineConfig::default();
    let cases: Vec<(Vec<u32>, Vec<&str>)> = vec![
        (vec![2], vec!["x0^2", "x0*x1", "x0*x2"]),
        (vec![3], vec!["x0^2", "x0*x1", "x0*x2", "x0*x3", "x1*x0", "x1^2", "x1*x2", "x1*x3"]),
        (vec![1, 2], vec!["x0*y0", "x0*y1", "x0*y2", "x1*x0"]),
    ];
    for (dims, gens) in cases {
        let r = ring(&dims);
        let gens = parse(&r, &gens);
        let a = ambient(&dims);
        let ideal = IdealHandle::new(&r, gens.clone()).unwrap();
        let mut sat = ideal.clone();
        for b in 0..dims.len() {
            let irrelevant: Vec<_> = r.vars().block_range(b).map(|i| MultiPoly::var_index(&r, i)).collect();
            sat = saturate(&sat, &IdealHandle::new(&r, irrelevant).unwrap()).unwrap();
        }
        assert!(sat.generators().len() < gens.len());
        assert_eq!(segre_class(&gens, &a, &cfg).unwrap(), segre_class(sat.generators(), &a, &cfg).unwrap(), "{dims:?}");
    }
}

#[test]
fn results_are_stable_across_seeds_and_primes() {
    let r = ring(&[2, 2]);
    let gens = parse(&r, &["x0*y0", "x0*y1"]);
    let a = ambient(&[2, 2]);
    let base = segre_class(&gens, &a, &EngineConfig::default()).unwrap();
    for seed in [1, 7, 123] {
        for prime in [2_147_483_647, 1_000_003] {
            let cfg = EngineConfig { seed, prime, ..EngineConfig::default() };
            assert_eq!(segre_class(&gens, &a, &cfg).unwrap(), base);
        }
    }
}

#[test]
fn pushforward_of_known_graph_class() {
    // [Gamma] = h + u for (x^2, xy) on P^2, d = 2
    use segzeta_core::segre::MultidegreeVector;
    let m = MultidegreeVector { ambient: ambient(&[2]), r: 1, entries: [((vec![1], 0), 1), ((vec![0], 1), 1)].into() };
    let s = segre_from_graph_class(&m, &Multidegree::new(vec![2])).unwrap();
    assert_eq!(s, ChowClass::hyperplane(&ambient(&[2]), 0));
}
