//! The Beilinson algebra ∇S, the ℓ×ℓ upper-triangular array with entry
//! (i, j) equal to S_{j−i}, its skew group algebra Λ = (∇S)*G, and a
//! Gabriel-quiver computation from Λ.
//!
//! Products follow the convention (AB)_{ij} = Σ_k a_{kj}·b_{ik}, so on basis
//! elements E(i,j,m)·E(i′,j′,m′) = δ_{i,j′} E(i′, j, m·m′).

use std::collections::BTreeMap;

use crate::action::CyclicGroupAction;
use crate::algebra::{graded_basis, AlgebraSpec, Monomial, NcAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{BasisIndex, EchelonBasis};
use crate::quiver::{Quiver, Tag, Vertex};
use crate::scalar::{rat_frac, Cyclotomic};

/// Basis element E(row, col, m) with m a monomial of degree col − row.
pub type NablaKey = (u32, u32, Monomial);
pub type NablaElement = BTreeMap<NablaKey, Cyclotomic>;

/// E(row, col, m) * g^s.
pub type SkewNablaKey = (NablaKey, u32);
pub type SkewNablaElement = BTreeMap<SkewNablaKey, Cyclotomic>;

/// Largest ℓ·r accepted by [`gabriel_quiver_oracle`].
pub const GABRIEL_LIMIT: usize = 64;

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Cyclotomic>, k: K, c: Cyclotomic) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let v = e.get() + &c;
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

#[derive(Clone, Debug)]
pub struct BeilinsonAlgebra {
    alg: NcAlgebra,
    ell: u32,
}

impl BeilinsonAlgebra {
    pub fn new(spec: AlgebraSpec) -> Self {
        let ell = spec.ell();
        Self {
            alg: NcAlgebra::new(spec),
            ell,
        }
    }

    pub fn algebra(&self) -> &NcAlgebra {
        &self.alg
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn basis(&self) -> Vec<NablaKey> {
        let spec = self.alg.spec();
        let mut out = Vec::new();
        for i in 0..self.ell {
            for j in i..self.ell {
                out.extend(graded_basis(spec, j - i).into_iter().map(|m| (i, j, m)));
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.basis().len()
    }

    /// Σ_{d<ℓ} (ℓ−d)·dim S_d.
    pub fn expected_dim(&self) -> usize {
        (0..self.ell)
            .map(|d| (self.ell - d) as usize * graded_basis(self.alg.spec(), d).len())
            .sum()
    }

    pub fn idempotent(&self, i: u32) -> NablaElement {
        NablaElement::from([((i, i, Monomial::ONE), Cyclotomic::one())])
    }

    pub fn one(&self) -> NablaElement {
        (0..self.ell)
            .map(|i| ((i, i, Monomial::ONE), Cyclotomic::one()))
            .collect()
    }

    pub fn mul_basis(&self, u: NablaKey, v: NablaKey) -> NablaElement {
        let mut out = NablaElement::new();
        let ((i, j, m), (i2, j2, m2)) = (u, v);
        if i != j2 {
            return out;
        }
        for (p, c) in self.alg.mul_monomials(m, m2).terms() {
            accumulate(&mut out, (i2, j, *p), c.clone());
        }
        out
    }

    pub fn mul(&self, u: &NablaElement, v: &NablaElement) -> NablaElement {
        let mut out = NablaElement::new();
        for (ku, cu) in u {
            for (kv, cv) in v {
                let coeff = cu * cv;
                for (k, c) in self.mul_basis(*ku, *kv) {
                    accumulate(&mut out, k, &c * &coeff);
                }
            }
        }
        out
    }

    /// (uv)w = u(vw) over all basis triples.
    pub fn associativity_check(&self) -> bool {
        let basis = self.basis();
        let one = |k: NablaKey| NablaElement::from([(k, Cyclotomic::one())]);
        basis.iter().all(|&a| {
            basis.iter().all(|&b| {
                let ab = self.mul_basis(a, b);
                basis.iter().all(|&c| {
                    let left = self.mul(&ab, &one(c));
                    let right = self.mul(&one(a), &self.mul_basis(b, c));
                    left == right
                })
            })
        })
    }
}

/// Λ = (∇S)*G with G acting entrywise through its action on S.
#[derive(Clone, Debug)]
pub struct SkewBeilinson {
    base: BeilinsonAlgebra,
    action: CyclicGroupAction,
}

/// Outcome of the idempotent checks on Λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentReport {
    pub count: usize,
    pub idempotent: bool,
    pub orthogonal: bool,
    pub complete: bool,
    /// dim e′Λ_0 e is 1 on the diagonal and 0 off it.
    pub basic: bool,
}

impl IdempotentReport {
    pub fn holds(&self) -> bool {
        self.idempotent && self.orthogonal && self.complete && self.basic
    }
}

impl SkewBeilinson {
    pub fn new(spec: AlgebraSpec, r: u32) -> Result<Self> {
        let base = BeilinsonAlgebra::new(spec);
        let action = CyclicGroupAction::new(base.algebra(), r)?;
        Ok(Self { base, action })
    }

    pub fn base(&self) -> &BeilinsonAlgebra {
        &self.base
    }

    pub fn action(&self) -> &CyclicGroupAction {
        &self.action
    }

    pub fn order(&self) -> u32 {
        self.action.order()
    }

    pub fn basis(&self) -> Vec<SkewNablaKey> {
        let r = self.order();
        self.base
            .basis()
            .into_iter()
            .flat_map(|k| (0..r).map(move |s| (k, s)))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.basis().len()
    }

    /// (A*g^s)(B*g^t) = A·g^s(B) * g^{s+t}.
    pub fn mul_basis(&self, u: SkewNablaKey, v: SkewNablaKey) -> SkewNablaElement {
        let ((ku, s), (kv, t)) = (u, v);
        let mut out = SkewNablaElement::new();
        let twist = self
            .action
            .xi_pow(i64::from(s) * i64::from(self.action.character(kv.2)));
        let st = (s + t) % self.order();
        for (k, c) in self.base.mul_basis(ku, kv) {
            accumulate(&mut out, (k, st), &c * twist);
        }
        out
    }

    pub fn mul(&self, u: &SkewNablaElement, v: &SkewNablaElement) -> SkewNablaElement {
        let mut out = SkewNablaElement::new();
        for (ku, cu) in u {
            for (kv, cv) in v {
                let coeff = cu * cv;
                for (k, c) in self.mul_basis(*ku, *kv) {
                    accumulate(&mut out, k, &c * &coeff);
                }
            }
        }
        out
    }

    /// e_i^j = e_i * ρ_j with ρ_j = (1/r) Σ_p ξ^{jp} g^p.
    pub fn idempotent(&self, i: u32, j: u32) -> SkewNablaElement {
        let r = self.order();
        let inv_r = Cyclotomic::from_rational(rat_frac(1, i64::from(r)));
        (0..r)
            .map(|p| {
                let c = self.action.xi_pow(i64::from(j) * i64::from(p)) * &inv_r;
                (((i, i, Monomial::ONE), p), c)
            })
            .collect()
    }

    /// All e_i^j, ordered by (i, j).
    pub fn idempotents(&self) -> Vec<((u32, u32), SkewNablaElement)> {
        let mut out = Vec::new();
        for i in 0..self.base.ell() {
            for j in 0..self.order() {
                out.push(((i, j), self.idempotent(i, j)));
            }
        }
        out
    }

    pub fn one(&self) -> SkewNablaElement {
        self.base.one().into_iter().map(|(k, c)| ((k, 0), c)).collect()
    }

    fn rank_of(&self, elements: impl IntoIterator<Item = SkewNablaElement>, index: &BasisIndex<SkewNablaKey>) -> usize {
        let mut ech = EchelonBasis::new(index.len());
        for e in elements {
            if !e.is_empty() {
                ech.insert(index.coordinates(e.iter()));
            }
            if ech.is_full() {
                break;
            }
        }
        ech.rank()
    }

    pub fn idempotent_checks(&self) -> IdempotentReport {
        let ids = self.idempotents();
        let idempotent = ids.iter().all(|(_, e)| self.mul(e, e) == *e);
        let orthogonal = ids.iter().enumerate().all(|(a, (_, e))| {
            ids.iter()
                .enumerate()
                .all(|(b, (_, f))| a == b || self.mul(e, f).is_empty())
        });
        let mut sum = SkewNablaElement::new();
        for (_, e) in &ids {
            for (k, c) in e {
                accumulate(&mut sum, *k, c.clone());
            }
        }
        let complete = sum == self.one();
        let degree_zero: Vec<SkewNablaKey> = self
            .basis()
            .into_iter()
            .filter(|((i, j, _), _)| i == j)
            .collect();
        let index = BasisIndex::new(self.basis());
        let basic = ids.iter().all(|(a, e_left)| {
            ids.iter().all(|(b, e_right)| {
                let piece = degree_zero.iter().map(|k| {
                    let x = SkewNablaElement::from([(*k, Cyclotomic::one())]);
                    self.mul(&self.mul(e_left, &x), e_right)
                });
                self.rank_of(piece, &index) == usize::from(a == b)
            })
        });
        IdempotentReport {
            count: ids.len(),
            idempotent,
            orthogonal,
            complete,
            basic,
        }
    }

    /// Quiver of Λ read off from J/J², J the span of the positive-degree
    /// basis elements: dim e′(J/J²)e arrows from the vertex of e to that of e′.
    pub fn gabriel_quiver(&self) -> Quiver {
        let index = BasisIndex::new(self.basis());
        let radical: Vec<SkewNablaKey> = self
            .basis()
            .into_iter()
            .filter(|((i, j, _), _)| i != j)
            .collect();
        // basis of J² from products of radical basis elements
        let mut sq = EchelonBasis::new(index.len());
        let mut sq_elems: Vec<SkewNablaElement> = Vec::new();
        for &u in &radical {
            for &v in &radical {
                let p = self.mul_basis(u, v);
                if !p.is_empty() && sq.insert(index.coordinates(p.iter())) {
                    sq_elems.push(p);
                }
            }
        }
        let ids = self.idempotents();
        let rad_elems: Vec<SkewNablaElement> = radical
            .iter()
            .map(|k| SkewNablaElement::from([(*k, Cyclotomic::one())]))
            .collect();
        let mut arrows = Vec::new();
        for ((src_i, src_j), e) in &ids {
            let right_j: Vec<SkewNablaElement> =
                rad_elems.iter().map(|x| self.mul(x, e)).collect();
            let right_j2: Vec<SkewNablaElement> =
                sq_elems.iter().map(|x| self.mul(x, e)).collect();
            for ((dst_i, dst_j), e2) in &ids {
                let n_j = self.rank_of(right_j.iter().map(|x| self.mul(e2, x)), &index);
                if n_j == 0 {
                    continue;
                }
                let n_j2 = self.rank_of(right_j2.iter().map(|x| self.mul(e2, x)), &index);
                for _ in 0..n_j - n_j2 {
                    arrows.push((
                        Vertex::Pair(*src_i, *src_j),
                        Vertex::Pair(*dst_i, *dst_j),
                        Tag::Untagged,
                    ));
                }
            }
        }
        let vertices = ids.iter().map(|((i, j), _)| Vertex::Pair(*i, *j));
        Quiver::new(vertices, arrows).expect("endpoints are idempotent labels")
    }

    /// Compares (∇S)*G with ∇(S*G) under E(i,j,m)*g^s ↦ E(i,j,m*g^s): equal
    /// dimension and identical structure constants on all basis pairs.
    pub fn nabla_of_skew_check(&self) -> bool {
        let spec = self.base.algebra().spec();
        let r = self.order() as usize;
        let ell = self.base.ell();
        let entrywise: usize = (0..ell)
            .flat_map(|i| (i..ell).map(move |j| j - i))
            .map(|d| r * graded_basis(spec, d).len())
            .sum();
        if entrywise != self.dim() || self.dim() != r * self.base.dim() {
            return false;
        }
        let sg = crate::skew::SkewGroupAlgebra::new(self.base.algebra(), &self.action);
        let basis = self.basis();
        basis.iter().all(|&(ku, s)| {
            basis.iter().all(|&(kv, t)| {
                let lhs = self.mul_basis((ku, s), (kv, t));
                let mut rhs = SkewNablaElement::new();
                let ((i, j, m), (i2, j2, m2)) = (ku, kv);
                if i == j2 {
                    let p = sg.mul(
                        &crate::skew::SkewElement::basis(m, s),
                        &crate::skew::SkewElement::basis(m2, t),
                    );
                    for ((mm, g), c) in p.terms() {
                        accumulate(&mut rhs, ((i2, j, *mm), *g), c.clone());
                    }
                }
                lhs == rhs
            })
        })
    }
}

/// The quiver of (∇S)*G computed from its radical layers; vertices are
/// `Pair(i, j)` for the idempotents e_i^j.
pub fn gabriel_quiver_oracle(spec: &AlgebraSpec, r: u32) -> Result<Quiver> {
    let size = spec.ell() as usize * r as usize;
    if size > GABRIEL_LIMIT {
        return Err(Error::ScaleExceeded {
            size,
            limit: GABRIEL_LIMIT,
        });
    }
    Ok(SkewBeilinson::new(spec.clone(), r)?.gabriel_quiver())
}
