use proptest::prelude::*;
use segzeta_core::chowring::{expand_rational, AmbientSpec};
use segzeta_core::exactalg::{parse_poly, MultiPoly, PolyRing, Rationals, VarBlocks};
use segzeta_core::exec::EngineConfig;
use segzeta_core::segre::segre_class;
use segzeta_core::zeta::{check_properties, relative_views, restriction_invariance, verify_cone, zeta_from_ideal, Verdict, ZetaProblem};

fn problem(dims: &[u32], gens: &[&str]) -> ZetaProblem {
    let stems = ["x", "y"];
    let blocks: Vec<Vec<String>> = dims.iter().enumerate().map(|(b, &n)| (0..=n).map(|i| format!("{}{i}", stems[b])).collect()).collect();
    let ring = PolyRing::new(Rationals, VarBlocks::projective(&blocks).unwrap());
    let gens: Vec<MultiPoly<Rationals>> = gens.iter().map(|s| parse_poly(s, &ring).unwrap()).collect();
    ZetaProblem::from_generators(gens, AmbientSpec::new(dims.to_vec())).unwrap()
}

fn cfg() -> EngineConfig {
    EngineConfig::default()
}

#[test]
fn zeta_evaluates_to_the_segre_class_on_the_base() {
    for (dims, gens) in [
        (vec![3], vec!["x0^2", "x0*x1"]),
        (vec![3], vec!["x0*x1", "x0*x2"]),
        (vec![4], vec!["x0*x2 - x1^2", "x0*x3"]),
        (vec![2, 2], vec!["x0*y0", "x0*y1"]),
        (vec![2, 3], vec!["x0^2*y1", "x1*y0^2"]),
    ] {
        let p = problem(&dims, &gens);
        let z = zeta_from_ideal(&p, &cfg()).unwrap();
        assert_eq!(z.evaluate(p.base()).unwrap(), segre_class(p.generators(), p.base(), &cfg()).unwrap(), "{gens:?}");
    }
}

#[test]
fn cones_over_single_factor_ideals() {
    for (n, gens) in [
        (3, vec!["x0^2", "x0*x1"]),
        (3, vec!["x0*x1*x2"]),
        (4, vec!["x0*x1", "x0*x2"]),
        (4, vec!["x0^2", "x1^3"]),
        (4, vec!["x0*x2 - x1^2", "x0*x3 - x1*x2"]),
    ] {
        let p = problem(&[n], &gens);
        let z = zeta_from_ideal(&p, &cfg()).unwrap();
        for k in 1..=2 {
            let rep = verify_cone(&p, &AmbientSpec::projective(n + k), &cfg()).unwrap();
            assert_eq!(rep.verdict, Verdict::Match, "{gens:?} into P^{}", n + k);
            assert_eq!(rep.predicted, z.evaluate(&rep.target).unwrap());
        }
    }
}

#[test]
fn cones_over_product_ideals() {
    for (dims, gens) in [(vec![2, 2], vec!["x0*y0", "x0*y1"]), (vec![2, 2], vec!["x0*y0"]), (vec![1, 2], vec!["x0*y0^2"])] {
        let p = problem(&dims, &gens);
        let (n, m) = (dims[0], dims[1]);
        for (a, b) in [(n + 1, m), (n, m + 1), (n + 1, m + 1)] {
            let rep = verify_cone(&p, &AmbientSpec::product(a, b), &cfg()).unwrap();
            assert_eq!(rep.verdict, Verdict::Match, "{gens:?} into P^{a}xP^{b}: {rep}");
        }
    }
}

#[test]
fn properties_and_views_hold_on_products() {
    for gens in [vec!["x0*y0", "x0*y1"], vec!["x0^2*y0", "x0*y1^2"], vec!["x0", "y0"]] {
        let p = problem(&[2, 2], &gens);
        let z = zeta_from_ideal(&p, &cfg()).unwrap();
        let rep = check_properties(&z, &p, &cfg()).unwrap();
        assert!(rep.all_passed(), "{gens:?}\n{rep}");
        let (v1, v2) = relative_views(&z).unwrap();
        let full = z.evaluate(p.base()).unwrap();
        assert_eq!(v1.expand().unwrap(), full);
        assert_eq!(v2.expand().unwrap(), full);
    }
}

#[test]
fn hyperplane_restriction_preserves_zeta() {
    let p = problem(&[3], &["x0^2", "x0*x1"]);
    let rep = restriction_invariance(&p, 0, 3, &cfg()).unwrap();
    assert!(rep.invariant());
    let p = problem(&[2, 2], &["x0*y0"]);
    for factor in 0..2 {
        assert!(restriction_invariance(&p, factor, 2, &cfg()).unwrap().invariant());
    }
}

const MONOMIALS: &[&str] = &["x0^2", "x0*x1", "x1^2", "x0*x2", "x1*x2", "x0", "x1", "x0^2*x1", "x0*x1*x2"];

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn generator_order_does_not_matter(picks in proptest::sample::subsequence(MONOMIALS.to_vec(), 1..=2), rotate in 0usize..2) {
        let p = problem(&[3], &picks);
        let mut shuffled = picks.clone();
        shuffled.rotate_left(rotate % picks.len());
        shuffled.reverse();
        let q = problem(&[3], &shuffled);
        let a = zeta_from_ideal(&p, &cfg()).unwrap();
        let b = zeta_from_ideal(&q, &cfg()).unwrap();
        prop_assert_eq!(a.p, b.p);
        prop_assert_eq!(a.q, b.q);
    }

    #[test]
    fn computed_zeta_satisfies_structural_checks(picks in proptest::sample::subsequence(MONOMIALS.to_vec(), 1..=2)) {
        let p = problem(&[3], &picks);
        let z = zeta_from_ideal(&p, &cfg()).unwrap();
        let rep = check_properties(&z, &p, &cfg()).unwrap();
        prop_assert!(rep.all_passed(), "{}", rep);
    }

    #[test]
    fn towers_are_coherent(picks in proptest::sample::subsequence(MONOMIALS.to_vec(), 1..=2), n in 3u32..7) {
        let p = problem(&[3], &picks);
        let z = zeta_from_ideal(&p, &cfg()).unwrap();
        let big = expand_rational(&z.p, &z.q, &AmbientSpec::projective(n + 1)).unwrap();
        let small = expand_rational(&z.p, &z.q, &AmbientSpec::projective(n)).unwrap();
        prop_assert_eq!(big.truncate_to(&AmbientSpec::projective(n)).unwrap(), small);
    }
}
