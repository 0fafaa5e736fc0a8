//! The invariant suite run by `mckay check` for one algebra and group order.

use serde::Serialize;

use crate::action::{hdet, CyclicGroupAction};
use crate::algebra::{quasi_veronese_corner_dim, quasi_veronese_dim, veronese_dim, AlgebraSpec, NcAlgebra};
use crate::beilinson::{gabriel_quiver_oracle, BeilinsonAlgebra, SkewBeilinson, GABRIEL_LIMIT};
use crate::error::Result;
use crate::quiver::{covering_quiver, predicted_decomposition, quiver_qs, quiver_qsg};
use crate::skew::{SkewElement, SkewGroupAlgebra};

/// Above this dimension of Λ the structure-constant comparison is skipped.
const NABLA_PAIR_LIMIT: usize = 400;

/// Degrees compared between the two quotient-dimension routes.
const DIRECT_ROUTE_DEGREES: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|c| c.passed)
}

/// Runs every check for S under the cyclic group of order r, using degrees
/// up to `max_degree` for the graded checks.
pub fn run_checks(spec: &AlgebraSpec, r: u32, max_degree: u32) -> Result<Vec<CheckResult>> {
    let alg = NcAlgebra::new(spec.clone());
    let action = CyclicGroupAction::new(&alg, r)?;
    let sg = SkewGroupAlgebra::new(&alg, &action);
    let mut out = Vec::new();

    let h = hdet(&alg, action.generator())?;
    out.push(CheckResult::new("hdet-generator", h.is_one(), format!("hdet(g) = {h}")));

    let e = sg.idempotent_e();
    let rhos = sg.rho_idempotents();
    let sum = rhos.iter().fold(SkewElement::zero(), |acc, p| acc.add(p));
    let ortho = rhos.iter().enumerate().all(|(i, a)| {
        rhos.iter().enumerate().all(|(j, b)| {
            let p = sg.mul(a, b);
            if i == j {
                p == *a
            } else {
                p.is_zero()
            }
        })
    });
    out.push(CheckResult::new(
        "group-idempotents",
        sg.mul(&e, &e) == e && sum == sg.one() && ortho,
        format!("{} orthogonal idempotents rho_j summing to 1", rhos.len()),
    ));

    let corners = sg.corner_dimension_checks(max_degree);
    out.push(CheckResult::new(
        "corner-dimensions",
        corners.holds(),
        format!("degrees 0..={max_degree}"),
    ));

    let fixed = sg.fixed_ring_dims(max_degree);
    out.push(CheckResult::new(
        "molien",
        sg.molien_check(max_degree),
        format!("dim S^G = {fixed:?}"),
    ));

    let small = max_degree.min(DIRECT_ROUTE_DEGREES);
    let fast = sg.quotient_by_ideal_e_dims(small);
    let direct = sg.quotient_by_ideal_e_dims_direct(small);
    out.push(CheckResult::new(
        "quotient-routes-agree",
        fast == direct,
        format!("dim (S*G/(e))_d = {fast:?}"),
    ));

    out.push(CheckResult::new(
        "phi-injective",
        sg.phi_injectivity_check(small),
        format!("degrees 0..={small}"),
    ));

    let veronese_ok = (0..=max_degree / r.max(1)).all(|d| {
        quasi_veronese_corner_dim(spec, r, d) == veronese_dim(spec, r, 0, d)
            && quasi_veronese_dim(spec, r, d)
                == (0..r)
                    .flat_map(|i| (0..r).map(move |j| (i, j)))
                    .map(|(i, j)| veronese_dim(spec, r, i64::from(j) - i64::from(i), d))
                    .sum::<usize>()
    });
    out.push(CheckResult::new("quasi-veronese-corner", veronese_ok, ""));

    let nabla = BeilinsonAlgebra::new(spec.clone());
    let qs = quiver_qs(spec);
    let paths = qs.path_count()?;
    let deg0 = quasi_veronese_dim(spec, spec.ell(), 0);
    out.push(CheckResult::new(
        "beilinson-dimension",
        nabla.dim() == nabla.expected_dim() && nabla.dim() == paths && deg0 == nabla.dim(),
        format!("dim = {}, paths of Q_S = {paths}", nabla.dim()),
    ));

    let qsg = quiver_qsg(spec, r)?;
    let (n, c) = predicted_decomposition(spec, r);
    let cover = covering_quiver(spec, c)?;
    let comps = qsg.components();
    let counts_ok = qsg.vertex_count() == (spec.ell() * r) as usize
        && qsg.arrow_count() == (spec.ell() * r) as usize
        && qsg.is_acyclic();
    let decomposition_ok = comps.len() == n as usize && comps.iter().all(|q| q.is_isomorphic(&cover, true));
    out.push(CheckResult::new(
        "decomposition",
        counts_ok && decomposition_ok,
        format!("{} components, expected {n} copies of the {c}-fold cover", comps.len()),
    ));

    let expected = {
        let (a, b) = ((c * spec.wx()) as usize, (c * spec.wy()) as usize);
        (a.min(b), a.max(b))
    };
    let types: Vec<_> = comps.iter().map(|q| q.canonical_type()).collect();
    out.push(CheckResult::new(
        "canonical-type",
        types.iter().all(|t| *t == Ok(expected)),
        format!("expected Q_{expected:?}"),
    ));

    let size = (spec.ell() * r) as usize;
    if size <= GABRIEL_LIMIT {
        let lambda = SkewBeilinson::new(spec.clone(), r)?;
        let report = lambda.idempotent_checks();
        out.push(CheckResult::new(
            "skew-beilinson-idempotents",
            report.holds() && lambda.dim() == r as usize * nabla.dim(),
            format!("{} idempotents, dim = {}", report.count, lambda.dim()),
        ));
        if lambda.dim() <= NABLA_PAIR_LIMIT {
            out.push(CheckResult::new(
                "nabla-of-skew",
                lambda.nabla_of_skew_check(),
                "structure constants compared on all basis pairs",
            ));
        }
        let g = gabriel_quiver_oracle(spec, r)?;
        out.push(CheckResult::new(
            "gabriel-oracle",
            g.is_isomorphic(&qsg, false),
            format!("{} arrows", g.arrow_count()),
        ));
    } else {
        out.push(CheckResult::new(
            "gabriel-oracle",
            true,
            format!("skipped: l*r = {size} exceeds {GABRIEL_LIMIT}"),
        ));
    }
    Ok(out)
}
