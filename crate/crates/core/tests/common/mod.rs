//! Shared fixtures and property suites for the integration tests.

#![allow(dead_code)]

use mckay_core::action::{hdet, CyclicGroupAction};
use mckay_core::algebra::{graded_basis, AlgebraElement, AlgebraSpec, Monomial, NcAlgebra};
use mckay_core::beilinson::{BeilinsonAlgebra, SkewBeilinson};
use mckay_core::quiver::{
    covering_quiver, make_canonical_quiver, quiver_qs, quiver_qsg, Quiver,
};
use mckay_core::scalar::{rat_frac, Cyclotomic};
use mckay_core::skew::{SkewElement, SkewGroupAlgebra};
use mckay_core::GradedAutomorphism;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const WEIGHTS: [(u32, u32); 5] = [(1, 1), (1, 2), (1, 3), (2, 3), (3, 5)];

/// Every (spec, r) of the decomposition sweep: commutative for each weight
/// pair and r = 1..=6, plus the Jordan planes with r | q + 1.
pub fn sweep() -> Vec<(AlgebraSpec, u32)> {
    let mut out = Vec::new();
    for (wx, wy) in WEIGHTS {
        for r in 1..=6 {
            out.push((AlgebraSpec::commutative(wx, wy).unwrap(), r));
            if wx == 1 && (wy + 1) % r == 0 {
                out.push((AlgebraSpec::jordan(wy).unwrap(), r));
            }
        }
    }
    out
}

/// The ample cases with their first vanishing degree of S*G/(e), recorded
/// from the first run over the window 4·ℓ·r.
pub fn ampleness_cases() -> Vec<(&'static str, AlgebraSpec, u32, usize)> {
    let z5 = Cyclotomic::zeta_pow(5, 1);
    vec![
        ("(1,1) commutative", AlgebraSpec::commutative(1, 1).unwrap(), 2, 1),
        ("(1,1) commutative", AlgebraSpec::commutative(1, 1).unwrap(), 3, 2),
        ("(1,1) commutative", AlgebraSpec::commutative(1, 1).unwrap(), 4, 3),
        ("(1,1) quantum zeta5", AlgebraSpec::quantum(1, 1, z5.clone()).unwrap(), 2, 1),
        ("(1,1) quantum zeta5", AlgebraSpec::quantum(1, 1, z5).unwrap(), 3, 2),
        ("(1,3) quantum 1", AlgebraSpec::commutative(1, 3).unwrap(), 2, 1),
        ("(1,3) quantum 1", AlgebraSpec::commutative(1, 3).unwrap(), 6, 13),
        ("jordan q=1", AlgebraSpec::jordan(1).unwrap(), 2, 1),
    ]
}

/// All actions exercised by the graded checks.
pub fn test_actions() -> Vec<(AlgebraSpec, u32)> {
    let mut out: Vec<(AlgebraSpec, u32)> = ampleness_cases()
        .into_iter()
        .map(|(_, s, r, _)| (s, r))
        .collect();
    out.extend(sweep());
    out.push((AlgebraSpec::quantum(2, 3, Cyclotomic::zeta_pow(3, 1)).unwrap(), 4));
    out.push((AlgebraSpec::quantum(1, 2, Cyclotomic::from_i64(-1)).unwrap(), 3));
    out
}

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn run<S, F>(cases: u32, strategy: S, test: F) -> Result<(), String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    runner(cases)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

pub fn rational() -> impl Strategy<Value = Cyclotomic> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| Cyclotomic::from_rational(rat_frac(n, d)))
}

pub fn nonzero_rational() -> impl Strategy<Value = Cyclotomic> {
    rational().prop_filter("nonzero", |c| !c.is_zero())
}

pub fn conductor() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 7, 8, 9, 12])
}

pub fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (conductor(), prop::collection::vec((-5i64..=5, 1i64..=4), 0..7)).prop_map(|(n, v)| {
        Cyclotomic::from_poly(n, v.into_iter().map(|(a, b)| rat_frac(a, b)).collect())
    })
}

/// A nonzero scalar q·ζ_n^k.
pub fn unit() -> impl Strategy<Value = Cyclotomic> {
    (nonzero_rational(), conductor(), 0i64..12)
        .prop_map(|(q, n, k)| &q * &Cyclotomic::zeta_pow(n, k))
}

pub fn spec_pool() -> Vec<AlgebraSpec> {
    let mut out: Vec<AlgebraSpec> = WEIGHTS
        .iter()
        .map(|&(wx, wy)| AlgebraSpec::commutative(wx, wy).unwrap())
        .collect();
    out.push(AlgebraSpec::quantum(1, 1, Cyclotomic::zeta_pow(5, 1)).unwrap());
    out.push(AlgebraSpec::quantum(1, 1, Cyclotomic::from_i64(-1)).unwrap());
    out.push(AlgebraSpec::quantum(2, 3, Cyclotomic::from_rational(rat_frac(3, 2))).unwrap());
    out.push(AlgebraSpec::quantum(1, 2, Cyclotomic::zeta_pow(3, 1)).unwrap());
    out.extend((1..=3).map(|q| AlgebraSpec::jordan(q).unwrap()));
    out
}

pub fn spec() -> impl Strategy<Value = AlgebraSpec> {
    prop::sample::select(spec_pool())
}

pub fn monomial(max_a: u32, max_b: u32) -> impl Strategy<Value = Monomial> {
    (0..=max_a, 0..=max_b).prop_map(|(a, b)| Monomial::new(a, b))
}

pub fn element() -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((monomial(3, 3), rational()), 0..4)
        .prop_map(AlgebraElement::from_terms)
}

/// A random homogeneous element of degree d (possibly zero).
pub fn homogeneous(spec: &AlgebraSpec, d: u32) -> impl Strategy<Value = AlgebraElement> {
    let basis = graded_basis(spec, d);
    let n = basis.len();
    prop::collection::vec(rational(), n).prop_map(move |cs| {
        AlgebraElement::from_terms(basis.iter().copied().zip(cs))
    })
}

/// Group orders allowed for a spec, up to 6.
pub fn orders(spec: &AlgebraSpec) -> Vec<u32> {
    (1..=6)
        .filter(|&r| !spec.is_jordan() || (spec.wy() + 1) % r == 0)
        .collect()
}

pub fn skew_element(r: u32) -> impl Strategy<Value = SkewElement> {
    prop::collection::vec((monomial(2, 2), 0..r, rational()), 0..4).prop_map(|terms| {
        let mut e = SkewElement::zero();
        for (m, s, c) in terms {
            e.add_term((m, s), c);
        }
        e
    })
}

/// A random automorphism of the shape tabulated for `spec`.
pub fn automorphism(spec: &AlgebraSpec) -> BoxedStrategy<GradedAutomorphism> {
    let alg = NcAlgebra::new(spec.clone());
    let (wx, wy) = (spec.wx(), spec.wy());
    let alpha = spec.alpha().cloned();
    if spec.is_jordan() {
        let q = wy;
        return (unit(), rational())
            .prop_map(move |(a, c)| {
                let d = a.pow(i64::from(q)).unwrap();
                GradedAutomorphism::triangular(&alg, a, c, d).unwrap()
            })
            .boxed();
    }
    let alpha = alpha.expect("quantum family");
    if wx == 1 && wy == 1 && alpha.is_one() {
        return (unit(), rational(), rational(), unit())
            .prop_filter_map("invertible", move |(a, b, c, d)| {
                GradedAutomorphism::linear(&alg, a, b, c, d).ok()
            })
            .boxed();
    }
    if wx == 1 && wy == 1 && alpha == Cyclotomic::from_i64(-1) {
        return (any::<bool>(), unit(), unit())
            .prop_map(move |(anti, u, v)| {
                if anti {
                    GradedAutomorphism::antidiagonal(&alg, u, v).unwrap()
                } else {
                    GradedAutomorphism::diagonal(&alg, u, v).unwrap()
                }
            })
            .boxed();
    }
    if wx == 1 && alpha.is_one() {
        return (unit(), rational(), unit())
            .prop_map(move |(a, c, d)| GradedAutomorphism::triangular(&alg, a, c, d).unwrap())
            .boxed();
    }
    (unit(), unit())
        .prop_map(move |(a, d)| GradedAutomorphism::diagonal(&alg, a, d).unwrap())
        .boxed()
}

pub fn field_axioms(cases: u32) -> Result<(), String> {
    run(cases, (cyclotomic(), cyclotomic(), cyclotomic()), |(a, b, c)| {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Cyclotomic::zero());
        prop_assert_eq!(&a * &Cyclotomic::one(), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_err());
        }
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Cyclotomic>().unwrap(), a);
        Ok(())
    })
}

pub fn algebra_associativity(cases: u32) -> Result<(), String> {
    run(cases, (spec(), element(), element(), element()), |(s, u, v, w)| {
        let alg = NcAlgebra::new(s);
        prop_assert_eq!(alg.mul(&alg.mul(&u, &v), &w), alg.mul(&u, &alg.mul(&v, &w)));
        prop_assert_eq!(alg.mul(&u, &v.add(&w)), alg.mul(&u, &v).add(&alg.mul(&u, &w)));
        prop_assert_eq!(alg.mul(&AlgebraElement::one(), &u), u.clone());
        Ok(())
    })
}

pub fn degree_additivity(cases: u32) -> Result<(), String> {
    let strat = (spec(), 0u32..6, 0u32..6).prop_flat_map(|(s, d1, d2)| {
        (Just(s.clone()), Just(d1), Just(d2), homogeneous(&s, d1), homogeneous(&s, d2))
    });
    run(cases, strat, |(s, d1, d2, u, v)| {
        let alg = NcAlgebra::new(s.clone());
        let p = alg.mul(&u, &v);
        prop_assert!(p.is_zero() || p.homogeneous_degree(&s) == Some(d1 + d2));
        // S is a domain
        prop_assert_eq!(p.is_zero(), u.is_zero() || v.is_zero());
        Ok(())
    })
}

pub fn skew_associativity(cases: u32) -> Result<(), String> {
    let strat = spec().prop_flat_map(|s| {
        let rs = orders(&s);
        (Just(s), prop::sample::select(rs)).prop_flat_map(|(s, r)| {
            (
                Just(s),
                Just(r),
                skew_element(r),
                skew_element(r),
                skew_element(r),
            )
        })
    });
    run(cases, strat, |(s, r, u, v, w)| {
        let alg = NcAlgebra::new(s.clone());
        let act = CyclicGroupAction::new(&alg, r).unwrap();
        let sg = SkewGroupAlgebra::new(&alg, &act);
        prop_assert_eq!(sg.mul(&sg.mul(&u, &v), &w), sg.mul(&u, &sg.mul(&v, &w)));
        for (key, _) in sg.mul(&u, &v).terms() {
            let du = u.terms().map(|((m, _), _)| s.degree(*m)).max().unwrap_or(0);
            let dv = v.terms().map(|((m, _), _)| s.degree(*m)).max().unwrap_or(0);
            prop_assert!(s.degree(key.0) <= du + dv);
        }
        Ok(())
    })
}

pub fn hdet_homomorphism(cases: u32) -> Result<(), String> {
    let strat = spec().prop_flat_map(|s| {
        let a = automorphism(&s);
        let b = automorphism(&s);
        (Just(s), a, b)
    });
    run(cases, strat, |(s, sigma, tau)| {
        let alg = NcAlgebra::new(s);
        let comp = sigma.compose(&alg, &tau);
        let lhs = hdet(&alg, &comp).unwrap();
        let rhs = &hdet(&alg, &sigma).unwrap() * &hdet(&alg, &tau).unwrap();
        prop_assert_eq!(lhs, rhs);
        let inv = sigma.inverse(&alg).unwrap();
        prop_assert!((&hdet(&alg, &inv).unwrap() * &hdet(&alg, &sigma).unwrap()).is_one());
        Ok(())
    })
}

pub fn apply_functoriality(cases: u32) -> Result<(), String> {
    let strat = spec().prop_flat_map(|s| (Just(s.clone()), automorphism(&s), element(), element()));
    run(cases, strat, |(s, sigma, u, v)| {
        let alg = NcAlgebra::new(s);
        let lhs = sigma.apply(&alg, &alg.mul(&u, &v));
        let rhs = alg.mul(&sigma.apply(&alg, &u), &sigma.apply(&alg, &v));
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

/// Every quiver with at most 12 vertices produced by the constructions.
pub fn small_constructed_quivers() -> Vec<Quiver> {
    let mut out = Vec::new();
    for (wx, wy) in WEIGHTS {
        let s = AlgebraSpec::commutative(wx, wy).unwrap();
        out.push(quiver_qs(&s));
        for c in 1..=6 {
            let q = covering_quiver(&s, c).unwrap();
            if q.vertex_count() <= 12 {
                out.push(q);
            }
        }
        for r in 1..=6 {
            for comp in quiver_qsg(&s, r).unwrap().components() {
                if comp.vertex_count() <= 12 {
                    out.push(comp);
                }
            }
        }
    }
    for i in 1..=11 {
        for j in i..=(12 - i) {
            out.push(make_canonical_quiver(i, j).unwrap());
        }
    }
    out
}

/// Reflection at every admissible vertex: involution, counts and underlying
/// graph preserved, canonical type unchanged.
pub fn bgp_exhaustive() -> Result<(), String> {
    for q in small_constructed_quivers() {
        let ty = q.canonical_type().map_err(|e| format!("{q}: {e}"))?;
        if !q.is_acyclic() {
            return Err(format!("{q} has an oriented cycle"));
        }
        for v in q.reflectable_vertices() {
            let r = q.bgp_reflect(v).map_err(|e| e.to_string())?;
            let back = r.bgp_reflect(v).map_err(|e| e.to_string())?;
            if back != q {
                return Err(format!("reflection at {v} is not an involution on {q}"));
            }
            if r.vertex_count() != q.vertex_count()
                || r.arrow_count() != q.arrow_count()
                || r.underlying_edges() != q.underlying_edges()
            {
                return Err(format!("reflection at {v} changed the shape of {q}"));
            }
            if r.canonical_type().map_err(|e| e.to_string())? != ty {
                return Err(format!("reflection at {v} changed the type of {q}"));
            }
        }
    }
    Ok(())
}

/// Random walks of reflections keep the canonical type.
pub fn bgp_random_walks(cases: u32) -> Result<(), String> {
    let pool = small_constructed_quivers();
    let n = pool.len();
    run(
        cases,
        (0..n, prop::collection::vec(0usize..64, 0..30)),
        |(k, steps)| {
            let q0 = &pool[k];
            let ty = q0.canonical_type().unwrap();
            let mut q = q0.clone();
            for s in steps {
                let opts = q.reflectable_vertices();
                q = q.bgp_reflect(opts[s % opts.len()]).unwrap();
                prop_assert!(q.is_acyclic());
                prop_assert_eq!(q.canonical_type().unwrap(), ty);
            }
            Ok(())
        },
    )
}

pub fn corner_dimensions(max_degree: u32) -> Result<(), String> {
    for (s, r) in test_actions() {
        let alg = NcAlgebra::new(s.clone());
        let act = CyclicGroupAction::new(&alg, r).map_err(|e| e.to_string())?;
        let report = SkewGroupAlgebra::new(&alg, &act).corner_dimension_checks(max_degree);
        if let Some(row) = report.rows.iter().find(|row| !row.holds()) {
            return Err(format!("{s}, r = {r}: {row:?}"));
        }
    }
    Ok(())
}

/// dim Λ = r·dim ∇S, and dim ∇S = Σ(ℓ−d)·dim S_d = number of paths of Q_S.
pub fn beilinson_dimensions() -> Result<(), String> {
    for (s, r) in sweep() {
        let nabla = BeilinsonAlgebra::new(s.clone());
        let paths = quiver_qs(&s).path_count().map_err(|e| e.to_string())?;
        if nabla.dim() != nabla.expected_dim() || nabla.dim() != paths {
            return Err(format!("{s}: dim {} vs paths {paths}", nabla.dim()));
        }
        let lambda = SkewBeilinson::new(s.clone(), r).map_err(|e| e.to_string())?;
        if lambda.dim() != r as usize * nabla.dim() {
            return Err(format!("{s}, r = {r}: dim Λ = {}", lambda.dim()));
        }
    }
    Ok(())
}

/// Every property suite, by name.
pub fn property_suites() -> Vec<(&'static str, Result<(), String>)> {
    vec![
        ("field axioms", field_axioms(256)),
        ("algebra associativity", algebra_associativity(128)),
        ("degree additivity", degree_additivity(128)),
        ("skew associativity", skew_associativity(96)),
        ("hdet homomorphism", hdet_homomorphism(128)),
        ("automorphisms multiplicative", apply_functoriality(96)),
        ("BGP involution and type invariance", bgp_exhaustive()),
        ("BGP random walks", bgp_random_walks(64)),
        ("corner dimensions to D = 10", corner_dimensions(10)),
        ("Beilinson and skew Beilinson dimensions", beilinson_dimensions()),
    ]
}
