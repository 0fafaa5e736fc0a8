//! The skew group algebra S*G for a diagonal cyclic action, its idempotents,
//! the fixed subalgebra S^G, and the quotient S*G/(e) whose finite
//! dimensionality characterizes ampleness.
//!
//! Elements are combinations of pairs (y^a x^b, s) standing for y^a x^b * g^s,
//! multiplied by (a*g^s)(b*g^t) = a·g^s(b) * g^{s+t}. The group part has
//! degree 0.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::action::CyclicGroupAction;
use crate::algebra::{graded_basis, AlgebraElement, Monomial, NcAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{BasisIndex, EchelonBasis};
use crate::scalar::{rat_frac, Cyclotomic};

pub type SkewKey = (Monomial, u32);

/// A combination of basis elements y^a x^b * g^s.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SkewElement {
    terms: BTreeMap<SkewKey, Cyclotomic>,
}

impl SkewElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(m: Monomial, s: u32) -> Self {
        let mut out = Self::zero();
        out.add_term((m, s), Cyclotomic::one());
        out
    }

    pub fn add_term(&mut self, key: SkewKey, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SkewKey, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: SkewKey) -> Cyclotomic {
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, -c);
        }
        out
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }
}

impl fmt::Display for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((m, s), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{m}*g^{s}")?;
        }
        Ok(())
    }
}

/// S*G for a fixed algebra and cyclic action.
#[derive(Clone, Copy, Debug)]
pub struct SkewGroupAlgebra<'a> {
    alg: &'a NcAlgebra,
    action: &'a CyclicGroupAction,
}

/// Per-degree dimensions behind the identifications S^G ≅ e(S*G)e,
/// S ≅ (S*G)e and S ≅ e(S*G).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerRow {
    pub degree: u32,
    pub algebra_dim: usize,
    pub fixed_dim: usize,
    /// rank of {e u e : u ∈ (S*G)_d}
    pub corner_rank: usize,
    /// rank of the image of c ↦ e(c*1)e on (S^G)_d
    pub fixed_image_rank: usize,
    /// rank of {u e : u ∈ (S*G)_d}
    pub right_rank: usize,
    /// rank of the image of a ↦ (a*1)e on S_d
    pub right_image_rank: usize,
    /// rank of {e u : u ∈ (S*G)_d}
    pub left_rank: usize,
    /// rank of the image of a ↦ e(a*1) on S_d
    pub left_image_rank: usize,
}

impl CornerRow {
    pub fn holds(&self) -> bool {
        self.corner_rank == self.fixed_dim
            && self.fixed_image_rank == self.fixed_dim
            && self.right_rank == self.algebra_dim
            && self.right_image_rank == self.algebra_dim
            && self.left_rank == self.algebra_dim
            && self.left_image_rank == self.algebra_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerReport {
    pub rows: Vec<CornerRow>,
}

impl CornerReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(CornerRow::holds)
    }
}

/// Outcome of the truncated finite-dimensionality test for S*G/(e).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every degree in the top part of the window vanishes.
    FiniteUpTo {
        max_degree: usize,
        total_dim: usize,
        vanishing_from: usize,
    },
    /// Some degree in the top part of the window is nonzero.
    UndecidedNonzeroAt {
        max_degree: usize,
        nonzero_degrees: Vec<usize>,
    },
    /// The action is not in HSL(S); dimensions are reported without a claim.
    Exploratory { max_degree: usize },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::FiniteUpTo { max_degree, .. } => write!(f, "FINITE-UP-TO-{max_degree}"),
            Verdict::UndecidedNonzeroAt { max_degree, .. } => {
                write!(f, "UNDECIDED-NONZERO-AT-{max_degree}")
            }
            Verdict::Exploratory { max_degree } => write!(f, "EXPLORATORY-{max_degree}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmplenessReport {
    pub dims: Vec<usize>,
    pub verdict: Verdict,
    /// Number of trailing zero entries of `dims`.
    pub zero_tail: usize,
    /// First degree from which every entry in the window is zero.
    pub vanishing_from: Option<usize>,
}

/// Default degree window 4·ℓ·r for the ampleness test.
pub fn default_window(alg: &NcAlgebra, action: &CyclicGroupAction) -> usize {
    4 * alg.spec().ell() as usize * action.order() as usize
}

impl<'a> SkewGroupAlgebra<'a> {
    pub fn new(alg: &'a NcAlgebra, action: &'a CyclicGroupAction) -> Self {
        Self { alg, action }
    }

    pub fn algebra(&self) -> &NcAlgebra {
        self.alg
    }

    pub fn action(&self) -> &CyclicGroupAction {
        self.action
    }

    pub fn order(&self) -> u32 {
        self.action.order()
    }

    pub fn one(&self) -> SkewElement {
        SkewElement::basis(Monomial::ONE, 0)
    }

    /// a * 1.
    pub fn embed(&self, a: &AlgebraElement) -> SkewElement {
        let mut out = SkewElement::zero();
        for (m, c) in a.terms() {
            out.add_term((*m, 0), c.clone());
        }
        out
    }

    /// 1 * g^s.
    pub fn group_element(&self, s: u32) -> SkewElement {
        SkewElement::basis(Monomial::ONE, s % self.order())
    }

    pub fn mul(&self, u: &SkewElement, v: &SkewElement) -> SkewElement {
        let r = self.order();
        let mut out = SkewElement::zero();
        for ((mu, s), cu) in u.terms() {
            for ((mv, t), cv) in v.terms() {
                // g^s(mv) = ξ^{s·χ(mv)} mv
                let twist = self
                    .action
                    .xi_pow(i64::from(*s) * i64::from(self.action.character(*mv)));
                let coeff = &(cu * cv) * twist;
                let st = (s + t) % r;
                for (m, c) in self.alg.mul_monomials(*mu, *mv).terms() {
                    out.add_term((*m, st), c * &coeff);
                }
            }
        }
        out
    }

    /// ρ_i = (1/r) Σ_p ξ^{ip} g^p.
    pub fn rho(&self, i: u32) -> SkewElement {
        let r = self.order();
        let inv_r = Cyclotomic::from_rational(rat_frac(1, i64::from(r)));
        let mut out = SkewElement::zero();
        for p in 0..r {
            let c = self.action.xi_pow(i64::from(i) * i64::from(p)) * &inv_r;
            out.add_term((Monomial::ONE, p), c);
        }
        out
    }

    /// e = (1/|G|) Σ_g 1*g.
    pub fn idempotent_e(&self) -> SkewElement {
        self.rho(0)
    }

    /// ρ_0 = e, ρ_1, …, ρ_{r−1}: a complete set of orthogonal idempotents of kG.
    pub fn rho_idempotents(&self) -> Vec<SkewElement> {
        (0..self.order()).map(|i| self.rho(i)).collect()
    }

    /// Basis of (S*G)_d: every degree-d monomial paired with every group exponent.
    pub fn graded_basis(&self, d: u32) -> Vec<SkewKey> {
        let r = self.order();
        graded_basis(self.alg.spec(), d)
            .into_iter()
            .flat_map(|m| (0..r).map(move |s| (m, s)))
            .collect()
    }

    /// Monomials spanning (S^G)_d: those with trivial character.
    pub fn fixed_ring_basis(&self, d: u32) -> Vec<Monomial> {
        graded_basis(self.alg.spec(), d)
            .into_iter()
            .filter(|m| self.action.character(*m) == 0)
            .collect()
    }

    pub fn fixed_ring_dims(&self, max_degree: u32) -> Vec<usize> {
        (0..=max_degree)
            .map(|d| self.fixed_ring_basis(d).len())
            .collect()
    }

    /// dim (S^G)_d as the average trace (1/r) Σ_s tr(g^s | S_d).
    pub fn molien_dims(&self, max_degree: u32) -> Vec<Cyclotomic> {
        let r = self.order();
        let inv_r = Cyclotomic::from_rational(rat_frac(1, i64::from(r)));
        (0..=max_degree)
            .map(|d| {
                let basis = graded_basis(self.alg.spec(), d);
                let mut total = Cyclotomic::zero();
                for s in 0..r {
                    for m in &basis {
                        let e = i64::from(s) * i64::from(self.action.character(*m));
                        total = &total + self.action.xi_pow(e);
                    }
                }
                &total * &inv_r
            })
            .collect()
    }

    pub fn molien_check(&self, max_degree: u32) -> bool {
        self.molien_dims(max_degree)
            .iter()
            .zip(self.fixed_ring_dims(max_degree))
            .all(|(m, n)| *m == Cyclotomic::from_i64(n as i64))
    }

    fn rank_in_degree<I>(&self, d: u32, elements: I) -> usize
    where
        I: IntoIterator<Item = SkewElement>,
    {
        let index = BasisIndex::new(self.graded_basis(d));
        let mut echelon = EchelonBasis::new(index.len());
        for u in elements {
            echelon.insert(index.coordinates(u.terms()));
            if echelon.is_full() {
                break;
            }
        }
        echelon.rank()
    }

    pub fn corner_dimension_checks(&self, max_degree: u32) -> CornerReport {
        let e = self.idempotent_e();
        let rows = (0..=max_degree)
            .map(|d| {
                let basis: Vec<SkewElement> = self
                    .graded_basis(d)
                    .into_iter()
                    .map(|(m, s)| SkewElement::basis(m, s))
                    .collect();
                let monos = graded_basis(self.alg.spec(), d);
                let fixed = self.fixed_ring_basis(d);
                let emb = |m: &Monomial| SkewElement::basis(*m, 0);
                CornerRow {
                    degree: d,
                    algebra_dim: monos.len(),
                    fixed_dim: fixed.len(),
                    corner_rank: self
                        .rank_in_degree(d, basis.iter().map(|u| self.mul(&self.mul(&e, u), &e))),
                    fixed_image_rank: self.rank_in_degree(
                        d,
                        fixed.iter().map(|m| self.mul(&self.mul(&e, &emb(m)), &e)),
                    ),
                    right_rank: self.rank_in_degree(d, basis.iter().map(|u| self.mul(u, &e))),
                    right_image_rank: self
                        .rank_in_degree(d, monos.iter().map(|m| self.mul(&emb(m), &e))),
                    left_rank: self.rank_in_degree(d, basis.iter().map(|u| self.mul(&e, u))),
                    left_image_rank: self
                        .rank_in_degree(d, monos.iter().map(|m| self.mul(&e, &emb(m)))),
                }
            })
            .collect();
        CornerReport { rows }
    }

    /// dim (S*G/(e))_d for d = 0..=max_degree.
    ///
    /// In the basis m*ρ_c the ideal splits by character: its ρ_c-component in
    /// degree d is the span of the products m·m' with deg m + deg m' = d and
    /// χ(m') = c.
    pub fn quotient_by_ideal_e_dims(&self, max_degree: u32) -> Vec<usize> {
        (0..=max_degree)
            .into_par_iter()
            .map(|d| self.quotient_dim_by_characters(d))
            .collect()
    }

    fn quotient_dim_by_characters(&self, d: u32) -> usize {
        let spec = self.alg.spec();
        let target = graded_basis(spec, d);
        let index = BasisIndex::new(target.iter().copied());
        let mut total = 0;
        for c in 0..self.order() {
            let mut echelon = EchelonBasis::new(index.len());
            'outer: for right_deg in 0..=d {
                let rights: Vec<Monomial> = graded_basis(spec, right_deg)
                    .into_iter()
                    .filter(|m| self.action.character(*m) == c)
                    .collect();
                if rights.is_empty() {
                    continue;
                }
                for left in graded_basis(spec, d - right_deg) {
                    for right in &rights {
                        let prod = self.alg.mul_monomials(left, *right);
                        echelon.insert(index.coordinates(prod.terms()));
                        if echelon.is_full() {
                            break 'outer;
                        }
                    }
                }
            }
            total += index.len() - echelon.rank();
        }
        total
    }

    /// Same dimensions computed from the spanning set {u·e·v} over the
    /// monomial basis of S*G, without the character splitting.
    pub fn quotient_by_ideal_e_dims_direct(&self, max_degree: u32) -> Vec<usize> {
        let e = self.idempotent_e();
        (0..=max_degree)
            .map(|d| {
                let index = BasisIndex::new(self.graded_basis(d));
                let mut echelon = EchelonBasis::new(index.len());
                'outer: for i in 0..=d {
                    let lefts: Vec<SkewElement> = self
                        .graded_basis(i)
                        .into_iter()
                        .map(|(m, s)| self.mul(&SkewElement::basis(m, s), &e))
                        .collect();
                    let rights = self.graded_basis(d - i);
                    for ue in &lefts {
                        for (m, s) in &rights {
                            let w = self.mul(ue, &SkewElement::basis(*m, *s));
                            echelon.insert(index.coordinates(w.terms()));
                            if echelon.is_full() {
                                break 'outer;
                            }
                        }
                    }
                }
                index.len() - echelon.rank()
            })
            .collect()
    }

    /// Semi-decision for dim S*G/(e) < ∞ within the degree window.
    pub fn ampleness_report(&self, max_degree: usize) -> Result<AmplenessReport> {
        let required = (self.alg.spec().ell() * self.order()) as usize;
        if max_degree < required {
            return Err(Error::WindowTooSmall {
                max_degree,
                required,
            });
        }
        let dims = self.quotient_by_ideal_e_dims(max_degree as u32);
        let zero_tail = dims.iter().rev().take_while(|&&v| v == 0).count();
        let vanishing_from = (zero_tail > 0).then(|| dims.len() - zero_tail);
        let top_half = max_degree - max_degree / 2;
        let verdict = if !self.action.is_hsl() {
            Verdict::Exploratory { max_degree }
        } else if zero_tail >= required.max(top_half) {
            Verdict::FiniteUpTo {
                max_degree,
                total_dim: dims.iter().sum(),
                vanishing_from: vanishing_from.unwrap_or(0),
            }
        } else {
            Verdict::UndecidedNonzeroAt {
                max_degree,
                nonzero_degrees: dims
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(d, _)| d)
                    .collect(),
            }
        };
        Ok(AmplenessReport {
            dims,
            verdict,
            zero_tail,
            vanishing_from,
        })
    }

    /// Whether s*g ↦ [t ↦ s·g(t)] is injective on (S*G)_{≤D}, testing the
    /// operators on t ∈ S_{≤D}.
    pub fn phi_injectivity_check(&self, max_degree: u32) -> bool {
        let spec = self.alg.spec();
        let probes: Vec<Monomial> = (0..=max_degree).flat_map(|d| graded_basis(spec, d)).collect();
        (0..=max_degree).all(|i| {
            let keys: Vec<(Monomial, Monomial)> = probes
                .iter()
                .flat_map(|t| {
                    graded_basis(spec, i + spec.degree(*t))
                        .into_iter()
                        .map(move |m| (*t, m))
                })
                .collect();
            let index = BasisIndex::new(keys);
            let mut echelon = EchelonBasis::new(index.len());
            let basis = self.graded_basis(i);
            for (m, s) in &basis {
                let mut v = vec![Cyclotomic::zero(); index.len()];
                for t in &probes {
                    let twist = self
                        .action
                        .xi_pow(i64::from(*s) * i64::from(self.action.character(*t)));
                    for (mm, c) in self.alg.mul_monomials(*m, *t).terms() {
                        let k = index.get(&(*t, *mm)).expect("product lies in the probed degree");
                        v[k] = &v[k] + &(c * twist);
                    }
                }
                echelon.insert(v);
            }
            echelon.rank() == basis.len()
        })
    }
}
