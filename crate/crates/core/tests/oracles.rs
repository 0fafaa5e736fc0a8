//! Independent re-derivations checked against the library.

mod common;

use std::collections::BTreeMap;

use mckay_core::action::CyclicGroupAction;
use mckay_core::algebra::{graded_basis, AlgebraElement, AlgebraSpec, Family, Monomial, NcAlgebra};
use mckay_core::beilinson::{BeilinsonAlgebra, NablaElement};
use mckay_core::quiver::{quiver_qs, quiver_qsg, Quiver, Tag};
use mckay_core::scalar::Cyclotomic;
use mckay_core::skew::SkewGroupAlgebra;
use num_bigint::BigInt;
use num_integer::binomial;
use petgraph::graph::DiGraph;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Reduces a word in x, y to normal form by rewriting the leftmost "xy"
/// with the defining relation until no "xy" is left.
fn rewrite_word(spec: &AlgebraSpec, word: &str) -> BTreeMap<Monomial, Cyclotomic> {
    let mut pending: Vec<(String, Cyclotomic)> = vec![(word.to_string(), Cyclotomic::one())];
    let mut done: BTreeMap<Monomial, Cyclotomic> = BTreeMap::new();
    while let Some((w, c)) = pending.pop() {
        match w.find("xy") {
            None => {
                let a = w.chars().filter(|&ch| ch == 'y').count() as u32;
                let b = w.len() as u32 - a;
                let e = done.entry(Monomial::new(a, b)).or_default();
                *e = &*e + &c;
            }
            Some(p) => {
                let (pre, post) = (&w[..p], &w[p + 2..]);
                match spec.family() {
                    Family::Quantum(alpha) => {
                        pending.push((format!("{pre}yx{post}"), &c * alpha));
                    }
                    Family::Jordan => {
                        let q = spec.wy() as usize;
                        pending.push((format!("{pre}yx{post}"), c.clone()));
                        pending.push((format!("{pre}{}{post}", "x".repeat(q + 1)), c));
                    }
                }
            }
        }
    }
    done.retain(|_, c| !c.is_zero());
    done
}

fn word_of(m: Monomial) -> String {
    format!("{}{}", "y".repeat(m.a as usize), "x".repeat(m.b as usize))
}

#[test]
fn products_match_word_rewriting() {
    for spec in common::spec_pool() {
        let alg = NcAlgebra::new(spec.clone());
        for a1 in 0..3 {
            for b1 in 0..4 {
                for a2 in 0..3 {
                    for b2 in 0..3 {
                        let (u, v) = (Monomial::new(a1, b1), Monomial::new(a2, b2));
                        let want = rewrite_word(&spec, &(word_of(u) + &word_of(v)));
                        let got: BTreeMap<Monomial, Cyclotomic> = alg
                            .mul_monomials(u, v)
                            .terms()
                            .map(|(m, c)| (*m, c.clone()))
                            .collect();
                        assert_eq!(got, want, "{spec}: {u} * {v}");
                    }
                }
            }
        }
    }
}

#[test]
fn jordan_commutation_closed_form() {
    // x^b y^c = Σ_k C(c,k) b(b+q)…(b+(k−1)q) y^{c−k} x^{b+kq}
    for q in 1..=4u32 {
        let alg = NcAlgebra::new(AlgebraSpec::jordan(q).unwrap());
        for b in 0..6u32 {
            for c in 0..6u32 {
                let mut want = AlgebraElement::zero();
                for k in 0..=c {
                    let mut coeff = binomial(BigInt::from(c), BigInt::from(k));
                    for t in 0..k {
                        coeff *= BigInt::from(b + t * q);
                    }
                    let coeff: i64 = coeff.try_into().unwrap();
                    want.add_term(Monomial::new(c - k, b + k * q), Cyclotomic::from_i64(coeff));
                }
                assert_eq!(alg.commute(b, c), want, "q = {q}: x^{b} y^{c}");
            }
        }
    }
}

/// Coefficients of the product of two power series truncated at degree n.
fn series_mul(f: &[Cyclotomic], g: &[Cyclotomic], n: usize) -> Vec<Cyclotomic> {
    let mut out = vec![Cyclotomic::zero(); n + 1];
    for (i, a) in f.iter().enumerate().take(n + 1) {
        for (j, b) in g.iter().enumerate().take(n + 1 - i) {
            out[i + j] = &out[i + j] + &(a * b);
        }
    }
    out
}

/// 1/(1 − c·t^w) truncated at degree n.
fn geometric(c: &Cyclotomic, w: usize, n: usize) -> Vec<Cyclotomic> {
    let mut out = vec![Cyclotomic::zero(); n + 1];
    let mut p = Cyclotomic::one();
    let mut d = 0;
    while d <= n {
        out[d] = p.clone();
        p = &p * c;
        d += w;
    }
    out
}

#[test]
fn fixed_dims_match_molien_series() {
    // (1/r) Σ_s 1/((1 − λ_s t^{deg x})(1 − μ_s t^{deg y})) with λ_s, μ_s the
    // eigenvalues of g^s on x and y
    let n = 20;
    for (spec, r) in common::test_actions() {
        let alg = NcAlgebra::new(spec.clone());
        let act = CyclicGroupAction::new(&alg, r).unwrap();
        let sg = SkewGroupAlgebra::new(&alg, &act);
        let mut total = vec![Cyclotomic::zero(); n + 1];
        let (ex, ey) = act.exponents();
        for s in 0..r {
            let lx = act.xi_pow(i64::from(s * ex));
            let ly = act.xi_pow(i64::from(s * ey));
            let term = series_mul(
                &geometric(lx, spec.wx() as usize, n),
                &geometric(ly, spec.wy() as usize, n),
                n,
            );
            for d in 0..=n {
                total[d] = &total[d] + &term[d];
            }
        }
        let inv_r = Cyclotomic::from_i64(i64::from(r)).inv().unwrap();
        let fixed = sg.fixed_ring_dims(n as u32);
        for d in 0..=n {
            assert_eq!(
                &total[d] * &inv_r,
                Cyclotomic::from_i64(fixed[d] as i64),
                "{spec}, r = {r}, degree {d}"
            );
        }
    }
}

#[test]
fn quotient_routes_agree() {
    for (spec, r) in common::test_actions() {
        let alg = NcAlgebra::new(spec.clone());
        let act = CyclicGroupAction::new(&alg, r).unwrap();
        let sg = SkewGroupAlgebra::new(&alg, &act);
        let d = 7.min(2 * spec.ell() * r);
        assert_eq!(
            sg.quotient_by_ideal_e_dims(d),
            sg.quotient_by_ideal_e_dims_direct(d),
            "{spec}, r = {r}"
        );
    }
}

#[test]
fn exploratory_actions_quotient_routes_agree() {
    let alg = NcAlgebra::new(AlgebraSpec::quantum(1, 1, Cyclotomic::from_i64(-1)).unwrap());
    for (r, ex, ey) in [(2, 1, 1), (3, 1, 1), (4, 1, 2), (3, 0, 1)] {
        let act = CyclicGroupAction::diagonal(&alg, r, ex, ey).unwrap();
        let sg = SkewGroupAlgebra::new(&alg, &act);
        assert_eq!(sg.quotient_by_ideal_e_dims(6), sg.quotient_by_ideal_e_dims_direct(6));
    }
}

/// ∇S elements as dense ℓ×ℓ arrays of elements of S, multiplied by
/// (AB)_{ij} = Σ_k a_{kj} b_{ik}.
fn matrix_product(
    alg: &NcAlgebra,
    ell: usize,
    a: &[Vec<AlgebraElement>],
    b: &[Vec<AlgebraElement>],
) -> Vec<Vec<AlgebraElement>> {
    let mut out = vec![vec![AlgebraElement::zero(); ell]; ell];
    for i in 0..ell {
        for j in 0..ell {
            for k in 0..ell {
                out[i][j] = out[i][j].add(&alg.mul(&a[k][j], &b[i][k]));
            }
        }
    }
    out
}

fn to_matrix(ell: usize, x: &NablaElement) -> Vec<Vec<AlgebraElement>> {
    let mut out = vec![vec![AlgebraElement::zero(); ell]; ell];
    for ((i, j, m), c) in x {
        out[*i as usize][*j as usize].add_term(*m, c.clone());
    }
    out
}

#[test]
fn beilinson_product_matches_matrix_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for spec in common::spec_pool() {
        let nabla = BeilinsonAlgebra::new(spec.clone());
        let ell = nabla.ell() as usize;
        let basis = nabla.basis();
        let random = |rng: &mut ChaCha8Rng| -> NablaElement {
            let mut x = NablaElement::new();
            for _ in 0..4 {
                let k = basis[rng.gen_range(0..basis.len())];
                x.insert(k, Cyclotomic::from_i64(rng.gen_range(-4..=4)));
            }
            x.retain(|_, c| !c.is_zero());
            x
        };
        for _ in 0..20 {
            let (a, b) = (random(&mut rng), random(&mut rng));
            let got = to_matrix(ell, &nabla.mul(&a, &b));
            let want = matrix_product(nabla.algebra(), ell, &to_matrix(ell, &a), &to_matrix(ell, &b));
            assert_eq!(got, want, "{spec}");
        }
        assert!(nabla.associativity_check(), "{spec}");
    }
}

/// Number of paths by explicit depth-first enumeration.
fn enumerate_paths(q: &Quiver) -> usize {
    fn from(q: &Quiver, v: usize) -> usize {
        1 + q
            .arrows()
            .iter()
            .filter(|a| a.src == v)
            .map(|a| from(q, a.dst))
            .sum::<usize>()
    }
    (0..q.vertex_count()).map(|v| from(q, v)).sum()
}

#[test]
fn path_counts_match_enumeration() {
    for spec in common::spec_pool() {
        let q = quiver_qs(&spec);
        assert_eq!(q.path_count().unwrap(), enumerate_paths(&q));
        assert_eq!(BeilinsonAlgebra::new(spec).dim(), enumerate_paths(&q));
    }
}

fn to_petgraph(q: &Quiver, respect_tags: bool) -> DiGraph<(), Tag> {
    let mut g = DiGraph::new();
    let nodes: Vec<_> = (0..q.vertex_count()).map(|_| g.add_node(())).collect();
    for a in q.arrows() {
        let t = if respect_tags { a.tag } else { Tag::Untagged };
        g.add_edge(nodes[a.src], nodes[a.dst], t);
    }
    g
}

fn petgraph_isomorphic(a: &Quiver, b: &Quiver, respect_tags: bool) -> bool {
    petgraph::algo::is_isomorphic_matching(
        &to_petgraph(a, respect_tags),
        &to_petgraph(b, respect_tags),
        |_, _| true,
        |x, y| x == y,
    )
}

#[test]
fn isomorphism_agrees_with_vf2() {
    let pool = common::small_constructed_quivers();
    let mut extra = Vec::new();
    for (wx, wy) in common::WEIGHTS {
        let s = AlgebraSpec::commutative(wx, wy).unwrap();
        for r in 1..=4 {
            extra.push(quiver_qsg(&s, r).unwrap());
        }
    }
    let runner_pool: Vec<Quiver> = pool.into_iter().chain(extra).collect();
    let n = runner_pool.len();
    let mut runner = common::runner(400);
    runner
        .run(
            &(0..n, 0..n, prop::collection::vec(0usize..64, 0..8), any::<bool>()),
            |(i, j, walk, tags)| {
                // reorient j by a few reflections so that non-identical pairs appear
                let a = &runner_pool[i];
                let mut b = runner_pool[j].clone();
                for s in walk {
                    let opts = b.reflectable_vertices();
                    if opts.is_empty() {
                        break;
                    }
                    b = b.bgp_reflect(opts[s % opts.len()]).unwrap();
                }
                prop_assert_eq!(a.is_isomorphic(&b, tags), petgraph_isomorphic(a, &b, tags));
                if let Some(map) = a.isomorphism(&b, tags) {
                    let image: Vec<_> = a
                        .labeled_arrows()
                        .into_iter()
                        .map(|(u, v, t)| {
                            let f = |w| map.iter().find(|(x, _)| *x == w).unwrap().1;
                            (f(u), f(v), if tags { t } else { Tag::Untagged })
                        })
                        .collect();
                    let mut image = image;
                    image.sort();
                    let mut target: Vec<_> = b
                        .labeled_arrows()
                        .into_iter()
                        .map(|(u, v, t)| (u, v, if tags { t } else { Tag::Untagged }))
                        .collect();
                    target.sort();
                    prop_assert_eq!(image, target);
                }
                Ok(())
            },
        )
        .unwrap();
}

#[test]
fn direct_quotient_small_windows_by_hand() {
    // (1,1), r = 2: everything of positive degree lies in (e)
    let alg = NcAlgebra::new(AlgebraSpec::commutative(1, 1).unwrap());
    let act = CyclicGroupAction::new(&alg, 2).unwrap();
    let sg = SkewGroupAlgebra::new(&alg, &act);
    assert_eq!(sg.quotient_by_ideal_e_dims_direct(4), vec![1, 0, 0, 0, 0]);
    // degree 0 of S*G/(e) is kG/(e), of dimension r − 1
    for r in 2..=5 {
        let act = CyclicGroupAction::new(&alg, r).unwrap();
        let sg = SkewGroupAlgebra::new(&alg, &act);
        assert_eq!(sg.quotient_by_ideal_e_dims(0), vec![r as usize - 1]);
    }
    assert_eq!(graded_basis(alg.spec(), 2).len(), 3);
}
