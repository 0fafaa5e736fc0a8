//! Graded automorphisms of S, their homological determinants, and the cyclic
//! groups ⟨diag(ξ, ξ^{-1})⟩ used for every skew group computation.
//!
//! The homological determinant is computed three ways: from the
//! classification table of graded automorphisms, by the normal-element
//! recursion through S/(x) ≅ k[y], and (for deg x = deg y = 1) through the
//! transpose action on the top degree of the Koszul dual.

use std::collections::HashMap;

use crate::algebra::{graded_basis, AlgebraElement, Family, Monomial, NcAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, BasisIndex};
use crate::scalar::{primitive_root, Cyclotomic};

/// A graded algebra automorphism, stored by its values on x and y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAutomorphism {
    image_x: AlgebraElement,
    image_y: AlgebraElement,
}

fn scalar(n: i64) -> Cyclotomic {
    Cyclotomic::from_i64(n)
}

impl GradedAutomorphism {
    /// Validates homogeneity, preservation of the relation, and invertibility.
    pub fn new(alg: &NcAlgebra, image_x: AlgebraElement, image_y: AlgebraElement) -> Result<Self> {
        let spec = alg.spec();
        let homogeneous = |e: &AlgebraElement, d: u32| e.homogeneous_degree(spec) == Some(d);
        if !homogeneous(&image_x, spec.wx()) {
            return Err(Error::NotHomogeneous {
                generator: 'x',
                degree: spec.wx(),
            });
        }
        if !homogeneous(&image_y, spec.wy()) {
            return Err(Error::NotHomogeneous {
                generator: 'y',
                degree: spec.wy(),
            });
        }
        if !alg.relation_at(&image_x, &image_y).is_zero() {
            return Err(Error::RelationNotPreserved);
        }
        let sigma = Self { image_x, image_y };
        sigma.inverse(alg)?;
        Ok(sigma)
    }

    pub fn identity() -> Self {
        Self {
            image_x: AlgebraElement::x(),
            image_y: AlgebraElement::y(),
        }
    }

    /// x ↦ a·x, y ↦ d·y.
    pub fn diagonal(alg: &NcAlgebra, a: Cyclotomic, d: Cyclotomic) -> Result<Self> {
        Self::new(
            alg,
            AlgebraElement::term(Monomial::X, a),
            AlgebraElement::term(Monomial::Y, d),
        )
    }

    /// x ↦ a·x + b·y, y ↦ c·x + d·y (deg x = deg y = 1).
    pub fn linear(
        alg: &NcAlgebra,
        a: Cyclotomic,
        b: Cyclotomic,
        c: Cyclotomic,
        d: Cyclotomic,
    ) -> Result<Self> {
        Self::new(
            alg,
            AlgebraElement::from_terms([(Monomial::X, a), (Monomial::Y, b)]),
            AlgebraElement::from_terms([(Monomial::X, c), (Monomial::Y, d)]),
        )
    }

    /// x ↦ b·y, y ↦ c·x.
    pub fn antidiagonal(alg: &NcAlgebra, b: Cyclotomic, c: Cyclotomic) -> Result<Self> {
        Self::new(
            alg,
            AlgebraElement::term(Monomial::Y, b),
            AlgebraElement::term(Monomial::X, c),
        )
    }

    /// x ↦ a·x, y ↦ c·x^{deg y} + d·y (deg x = 1).
    pub fn triangular(
        alg: &NcAlgebra,
        a: Cyclotomic,
        c: Cyclotomic,
        d: Cyclotomic,
    ) -> Result<Self> {
        let q = alg.spec().wy();
        Self::new(
            alg,
            AlgebraElement::term(Monomial::X, a),
            AlgebraElement::from_terms([(Monomial::new(0, q), c), (Monomial::Y, d)]),
        )
    }

    pub fn image_x(&self) -> &AlgebraElement {
        &self.image_x
    }

    pub fn image_y(&self) -> &AlgebraElement {
        &self.image_y
    }

    /// σ(u), by substituting into each normal-form monomial.
    pub fn apply(&self, alg: &NcAlgebra, u: &AlgebraElement) -> AlgebraElement {
        let mut ypows: HashMap<u32, AlgebraElement> = HashMap::new();
        let mut xpows: HashMap<u32, AlgebraElement> = HashMap::new();
        let mut out = AlgebraElement::zero();
        for (m, c) in u.terms() {
            let ya = ypows
                .entry(m.a)
                .or_insert_with(|| alg.pow(&self.image_y, m.a))
                .clone();
            let xb = xpows
                .entry(m.b)
                .or_insert_with(|| alg.pow(&self.image_x, m.b))
                .clone();
            for (mm, cc) in alg.mul(&ya, &xb).terms() {
                out.add_term(*mm, cc * c);
            }
        }
        out
    }

    /// self ∘ other.
    pub fn compose(&self, alg: &NcAlgebra, other: &Self) -> Self {
        Self {
            image_x: self.apply(alg, &other.image_x),
            image_y: self.apply(alg, &other.image_y),
        }
    }

    /// Matrix of σ on S_d in the graded basis, as columns.
    pub fn matrix_on_degree(&self, alg: &NcAlgebra, d: u32) -> Vec<Vec<Cyclotomic>> {
        let basis = graded_basis(alg.spec(), d);
        let index = BasisIndex::new(basis.iter().copied());
        basis
            .iter()
            .map(|m| index.coordinates(self.apply(alg, &AlgebraElement::monomial(*m)).terms()))
            .collect()
    }

    /// The inverse automorphism, found by solving σ(u) = x and σ(v) = y.
    pub fn inverse(&self, alg: &NcAlgebra) -> Result<Self> {
        let spec = alg.spec();
        let preimage = |target: Monomial, d: u32| -> Result<AlgebraElement> {
            let basis = graded_basis(spec, d);
            let index = BasisIndex::new(basis.iter().copied());
            let columns = self.matrix_on_degree(alg, d);
            if linalg::rank(basis.len(), columns.iter().cloned()) != basis.len() {
                return Err(Error::NotInvertible);
            }
            let mut rhs = vec![Cyclotomic::zero(); basis.len()];
            rhs[index.get(&target).expect("generator lies in its degree")] = Cyclotomic::one();
            let sol = linalg::solve(&columns, &rhs).ok_or(Error::NotInvertible)?;
            Ok(AlgebraElement::from_terms(basis.into_iter().zip(sol)))
        };
        Ok(Self {
            image_x: preimage(Monomial::X, spec.wx())?,
            image_y: preimage(Monomial::Y, spec.wy())?,
        })
    }
}

/// The row of the classification table an automorphism was matched against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableRow {
    /// (1,1), xy − yx, general linear: ad − bc
    CommutativeLinear,
    /// (1,1), xy + yx, diagonal: ad
    AnticommutativeDiagonal,
    /// (1,1), xy + yx, x ↦ by, y ↦ cx: bc
    AnticommutativeAntidiagonal,
    /// (1,1), xy − αyx, α ≠ 0, ±1, diagonal: ad
    QuantumDiagonal11,
    /// (1,q), q ≥ 2, xy − yx, y ↦ cx^q + dy: ad
    CommutativeTriangular,
    /// (1,q), q ≥ 2, xy − αyx, α ≠ 0, 1, diagonal: ad
    QuantumDiagonal1q,
    /// (p,q), p, q ≥ 2, xy − αyx, diagonal: ad
    QuantumDiagonalPq,
    /// (1,q), xy − yx − x^{q+1}, y ↦ cx^q + a^q y: a^{q+1}
    Jordan,
}

impl TableRow {
    pub const ALL: [TableRow; 8] = [
        TableRow::CommutativeLinear,
        TableRow::AnticommutativeDiagonal,
        TableRow::AnticommutativeAntidiagonal,
        TableRow::QuantumDiagonal11,
        TableRow::CommutativeTriangular,
        TableRow::QuantumDiagonal1q,
        TableRow::QuantumDiagonalPq,
        TableRow::Jordan,
    ];
}

fn not_tabulated(msg: &str) -> Error {
    Error::NotTabulated(msg.to_string())
}

/// Homological determinant read off the classification table.
pub fn hdet_table(alg: &NcAlgebra, sigma: &GradedAutomorphism) -> Result<(TableRow, Cyclotomic)> {
    let spec = alg.spec();
    let (wx, wy) = (spec.wx(), spec.wy());
    let sx = &sigma.image_x;
    let sy = &sigma.image_y;
    let only = |e: &AlgebraElement, keep: &[Monomial]| e.terms().all(|(m, _)| keep.contains(m));

    if wx == 1 && wy == 1 {
        let a = sx.coeff(Monomial::X);
        let b = sx.coeff(Monomial::Y);
        let c = sy.coeff(Monomial::X);
        let d = sy.coeff(Monomial::Y);
        return match spec.family() {
            Family::Jordan => {
                if !b.is_zero() || d != a {
                    return Err(not_tabulated("Jordan plane needs x -> ax, y -> cx + ay"));
                }
                Ok((TableRow::Jordan, a.pow(2)?))
            }
            Family::Quantum(alpha) if alpha.is_one() => {
                Ok((TableRow::CommutativeLinear, &(&a * &d) - &(&b * &c)))
            }
            Family::Quantum(alpha) if *alpha == scalar(-1) => {
                if b.is_zero() && c.is_zero() {
                    Ok((TableRow::AnticommutativeDiagonal, &a * &d))
                } else if a.is_zero() && d.is_zero() {
                    Ok((TableRow::AnticommutativeAntidiagonal, &b * &c))
                } else {
                    Err(not_tabulated("xy + yx admits only diagonal or antidiagonal maps"))
                }
            }
            Family::Quantum(_) => {
                if !b.is_zero() || !c.is_zero() {
                    return Err(not_tabulated("quantum plane admits only diagonal maps"));
                }
                Ok((TableRow::QuantumDiagonal11, &a * &d))
            }
        };
    }

    if wx == 1 {
        let q = wy;
        if !only(sx, &[Monomial::X]) {
            return Err(not_tabulated("sigma(x) must be a multiple of x"));
        }
        let a = sx.coeff(Monomial::X);
        let c = sy.coeff(Monomial::new(0, q));
        let d = sy.coeff(Monomial::Y);
        if !only(sy, &[Monomial::Y, Monomial::new(0, q)]) {
            return Err(not_tabulated("sigma(y) must be c x^q + d y"));
        }
        return match spec.family() {
            Family::Jordan => {
                if d != a.pow(i64::from(q))? {
                    return Err(not_tabulated("Jordan plane needs sigma(y) = cx^q + a^q y"));
                }
                Ok((TableRow::Jordan, a.pow(i64::from(q) + 1)?))
            }
            Family::Quantum(alpha) if alpha.is_one() => Ok((TableRow::CommutativeTriangular, &a * &d)),
            Family::Quantum(_) => {
                if !c.is_zero() {
                    return Err(not_tabulated("quantum plane admits only diagonal maps"));
                }
                Ok((TableRow::QuantumDiagonal1q, &a * &d))
            }
        };
    }

    if wy == 1 {
        // mirror of the (1, q) rows with the roles of x and y exchanged
        let p = wx;
        if !only(sy, &[Monomial::Y]) || !only(sx, &[Monomial::X, Monomial::new(p, 0)]) {
            return Err(not_tabulated("sigma(y) must be dy and sigma(x) = ax + c y^p"));
        }
        let a = sx.coeff(Monomial::X);
        let c = sx.coeff(Monomial::new(p, 0));
        let d = sy.coeff(Monomial::Y);
        return match spec.family() {
            Family::Quantum(alpha) if alpha.is_one() => Ok((TableRow::CommutativeTriangular, &a * &d)),
            Family::Quantum(_) if c.is_zero() => Ok((TableRow::QuantumDiagonal1q, &a * &d)),
            _ => Err(not_tabulated("quantum plane admits only diagonal maps")),
        };
    }

    if !only(sx, &[Monomial::X]) || !only(sy, &[Monomial::Y]) {
        return Err(not_tabulated("weights >= 2 admit only diagonal maps"));
    }
    Ok((
        TableRow::QuantumDiagonalPq,
        &sx.coeff(Monomial::X) * &sy.coeff(Monomial::Y),
    ))
}

/// hdet_S σ = a · hdet_{S/(x)} σ for σ(x) = a·x; on S/(x) ≅ k[y] the
/// induced map is y ↦ d·y with hdet d.
pub fn hdet_normal_recursion(sigma: &GradedAutomorphism) -> Result<Cyclotomic> {
    let sx = &sigma.image_x;
    if sx.len() != 1 || sx.coeff(Monomial::X).is_zero() {
        return Err(Error::NotNormalOnX);
    }
    let a = sx.coeff(Monomial::X);
    // modulo x only the pure y-power survives; in degree deg y that is y itself
    // and hdet of y ↦ d·y on k[y] is d (recursing once more through k[y]/(y) = k)
    let d = sigma.image_y.coeff(Monomial::Y);
    Ok(&a * &d)
}

/// hdet via the transpose action on the one-dimensional space
/// S^!_2 = (V*⊗V*)/R^⊥, valid when S is Koszul (deg x = deg y = 1).
pub fn hdet_koszul(alg: &NcAlgebra, sigma: &GradedAutomorphism) -> Result<Cyclotomic> {
    let spec = alg.spec();
    if spec.wx() != 1 || spec.wy() != 1 {
        return Err(Error::NotKoszul {
            wx: spec.wx(),
            wy: spec.wy(),
        });
    }
    // V = span{x, y}; V⊗V basis ordered xx, xy, yx, yy.
    let relation: [Cyclotomic; 4] = match spec.family() {
        Family::Quantum(alpha) => [scalar(0), scalar(1), -alpha, scalar(0)],
        Family::Jordan => [scalar(-1), scalar(1), scalar(-1), scalar(0)],
    };
    let eval = |phi: &[Cyclotomic]| -> Cyclotomic {
        phi.iter()
            .zip(&relation)
            .fold(Cyclotomic::zero(), |acc, (p, r)| &acc + &(p * r))
    };

    // columns of σ|_{S_1}: σ(x_j) = Σ_i m[i][j] x_i
    let gens = [Monomial::X, Monomial::Y];
    let images = [&sigma.image_x, &sigma.image_y];
    let m: Vec<Vec<Cyclotomic>> = gens
        .iter()
        .map(|gi| images.iter().map(|img| img.coeff(*gi)).collect())
        .collect();

    // R^⊥ = kernel of evaluation on f, a 3-dimensional subspace of V*⊗V*.
    let unit = |k: usize| -> Vec<Cyclotomic> {
        (0..4).map(|i| if i == k { scalar(1) } else { scalar(0) }).collect()
    };
    let anchor = (0..4)
        .find(|&k| !relation[k].is_zero())
        .expect("relation is nonzero");
    let complement = unit(anchor);
    let f_anchor = relation[anchor].clone();
    let mut perp: Vec<Vec<Cyclotomic>> = Vec::new();
    for k in (0..4).filter(|&k| k != anchor) {
        // X_k − (f_k / f_anchor) X_anchor
        let mut v = unit(k);
        v[anchor] = -&relation[k].try_div(&f_anchor)?;
        perp.push(v);
    }
    debug_assert!(perp.iter().all(|v| eval(v).is_zero()));

    // σ^t acts on V* by the transpose matrix: σ^t(X_i) = Σ_p m[i][p] X_p.
    let sigma_t = |i: usize| -> Vec<Cyclotomic> { m[i].clone() };
    let (ai, aj) = (anchor / 2, anchor % 2);
    let (ri, rj) = (sigma_t(ai), sigma_t(aj));
    let mut image = vec![Cyclotomic::zero(); 4];
    for p in 0..2 {
        for q in 0..2 {
            image[2 * p + q] = &ri[p] * &rj[q];
        }
    }

    // write the image in the basis {complement} ∪ R^⊥; the first coordinate is hdet
    let mut columns = vec![complement];
    columns.extend(perp);
    let coords = linalg::solve(&columns, &image).expect("basis of V*⊗V*");
    Ok(coords[0].clone())
}

/// Homological determinant: the table first, the normal-element recursion
/// when the table does not apply.
pub fn hdet(alg: &NcAlgebra, sigma: &GradedAutomorphism) -> Result<Cyclotomic> {
    match hdet_table(alg, sigma) {
        Ok((_, v)) => Ok(v),
        Err(table_err) => hdet_normal_recursion(sigma)
            .or_else(|_| hdet_koszul(alg, sigma))
            .map_err(|_| table_err),
    }
}

pub fn is_hsl(alg: &NcAlgebra, sigma: &GradedAutomorphism) -> Result<bool> {
    Ok(hdet(alg, sigma)?.is_one())
}

/// A cyclic group ⟨g⟩ of order r acting diagonally: g(x) = ξ^{ex}·x,
/// g(y) = ξ^{ey}·y with ξ a primitive r-th root of unity.
#[derive(Clone, Debug)]
pub struct CyclicGroupAction {
    r: u32,
    xi: Cyclotomic,
    x_exp: u32,
    y_exp: u32,
    xi_powers: Vec<Cyclotomic>,
    generator: GradedAutomorphism,
    hsl: bool,
}

impl CyclicGroupAction {
    /// G = ⟨diag(ξ, ξ^{-1})⟩ of order r.
    pub fn new(alg: &NcAlgebra, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroGroupOrder);
        }
        let spec = alg.spec();
        if spec.is_jordan() && (spec.wy() + 1) % r != 0 {
            return Err(Error::JordanDivisibility {
                r,
                q_plus_one: spec.wy() + 1,
            });
        }
        let action = Self::diagonal(alg, r, 1 % r, (r - 1) % r)?;
        debug_assert!(action.hsl);
        Ok(action)
    }

    /// Any diagonal cyclic action; may lie outside HSL(S).
    pub fn diagonal(alg: &NcAlgebra, r: u32, x_exp: u32, y_exp: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroGroupOrder);
        }
        let xi = primitive_root(r);
        let xi_powers: Vec<Cyclotomic> = (0..r).map(|k| Cyclotomic::zeta_pow(r, i64::from(k))).collect();
        let generator = GradedAutomorphism::diagonal(
            alg,
            xi_powers[(x_exp % r) as usize].clone(),
            xi_powers[(y_exp % r) as usize].clone(),
        )?;
        let hsl = is_hsl(alg, &generator)?;
        Ok(Self {
            r,
            xi,
            x_exp: x_exp % r,
            y_exp: y_exp % r,
            xi_powers,
            generator,
            hsl,
        })
    }

    pub fn order(&self) -> u32 {
        self.r
    }

    pub fn xi(&self) -> &Cyclotomic {
        &self.xi
    }

    pub fn generator(&self) -> &GradedAutomorphism {
        &self.generator
    }

    pub fn exponents(&self) -> (u32, u32) {
        (self.x_exp, self.y_exp)
    }

    pub fn is_hsl(&self) -> bool {
        self.hsl
    }

    /// ξ^k for any integer k.
    pub fn xi_pow(&self, k: i64) -> &Cyclotomic {
        &self.xi_powers[k.rem_euclid(i64::from(self.r)) as usize]
    }

    /// The exponent c with g(m) = ξ^c·m.
    pub fn character(&self, m: Monomial) -> u32 {
        let r = u64::from(self.r);
        ((u64::from(self.x_exp) * u64::from(m.b) + u64::from(self.y_exp) * u64::from(m.a)) % r) as u32
    }

    /// g^s(u).
    pub fn act(&self, s: u32, u: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::from_terms(u.terms().map(|(m, c)| {
            let e = i64::from(s) * i64::from(self.character(*m));
            (*m, c * self.xi_pow(e))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;

    fn c(n: i64) -> Cyclotomic {
        Cyclotomic::from_i64(n)
    }

    #[test]
    fn commutative_linear_is_det() {
        let alg = NcAlgebra::new(AlgebraSpec::commutative(1, 1).unwrap());
        let s = GradedAutomorphism::linear(&alg, c(2), c(3), c(5), c(7)).unwrap();
        let (row, v) = hdet_table(&alg, &s).unwrap();
        assert_eq!(row, TableRow::CommutativeLinear);
        assert_eq!(v, c(-1));
        assert_eq!(hdet_koszul(&alg, &s).unwrap(), c(-1));
    }

    #[test]
    fn antidiagonal_is_bc() {
        let alg = NcAlgebra::new(AlgebraSpec::quantum(1, 1, c(-1)).unwrap());
        let s = GradedAutomorphism::antidiagonal(&alg, c(2), c(3)).unwrap();
        assert_eq!(hdet_table(&alg, &s).unwrap(), (TableRow::AnticommutativeAntidiagonal, c(6)));
        assert_eq!(hdet_koszul(&alg, &s).unwrap(), c(6));
        assert_eq!(hdet_normal_recursion(&s), Err(Error::NotNormalOnX));
    }

    #[test]
    fn antidiagonal_rejected_on_generic_quantum_plane() {
        let alg = NcAlgebra::new(AlgebraSpec::quantum(1, 1, c(2)).unwrap());
        assert!(GradedAutomorphism::antidiagonal(&alg, c(1), c(1)).is_err());
    }

    #[test]
    fn jordan_hdet() {
        let alg = NcAlgebra::new(AlgebraSpec::jordan(3).unwrap());
        let s = GradedAutomorphism::triangular(&alg, c(2), c(5), c(8)).unwrap();
        assert_eq!(hdet_table(&alg, &s).unwrap(), (TableRow::Jordan, c(16)));
        assert_eq!(hdet_normal_recursion(&s).unwrap(), c(16));
        assert!(GradedAutomorphism::triangular(&alg, c(2), c(5), c(7)).is_err());
    }

    #[test]
    fn identity_hdet() {
        let alg = NcAlgebra::new(AlgebraSpec::commutative(2, 3).unwrap());
        let id = GradedAutomorphism::identity();
        assert!(is_hsl(&alg, &id).unwrap());
        assert_eq!(hdet_normal_recursion(&id).unwrap(), c(1));
    }

    #[test]
    fn hsl_examples() {
        let alg = NcAlgebra::new(AlgebraSpec::commutative(1, 1).unwrap());
        let xi = primitive_root(5);
        let g = GradedAutomorphism::diagonal(&alg, xi.clone(), xi.inv().unwrap()).unwrap();
        assert!(is_hsl(&alg, &g).unwrap());
        let h = GradedAutomorphism::diagonal(&alg, xi, c(1)).unwrap();
        assert!(!is_hsl(&alg, &h).unwrap());
        let rot = GradedAutomorphism::linear(&alg, c(0), c(1), c(-1), c(0)).unwrap();
        assert!(is_hsl(&alg, &rot).unwrap());
    }

    #[test]
    fn singular_map_rejected() {
        let alg = NcAlgebra::new(AlgebraSpec::commutative(1, 1).unwrap());
        assert_eq!(
            GradedAutomorphism::linear(&alg, c(1), c(2), c(2), c(4)),
            Err(Error::NotInvertible)
        );
    }

    #[test]
    fn cyclic_group_construction() {
        let alg = NcAlgebra::new(AlgebraSpec::commutative(1, 1).unwrap());
        let g = CyclicGroupAction::new(&alg, 3).unwrap();
        assert_eq!(g.generator().image_x(), &AlgebraElement::term(Monomial::X, Cyclotomic::zeta_pow(3, 1)));
        assert_eq!(g.generator().image_y(), &AlgebraElement::term(Monomial::Y, Cyclotomic::zeta_pow(3, 2)));
        assert!(CyclicGroupAction::new(&alg, 1).unwrap().is_hsl());
        assert_eq!(CyclicGroupAction::new(&alg, 0).unwrap_err(), Error::ZeroGroupOrder);

        let jordan = NcAlgebra::new(AlgebraSpec::jordan(1).unwrap());
        assert!(CyclicGroupAction::new(&jordan, 2).is_ok());
        assert_eq!(
            CyclicGroupAction::new(&jordan, 3).unwrap_err(),
            Error::JordanDivisibility { r: 3, q_plus_one: 2 }
        );
    }

    #[test]
    fn generator_action_on_monomials() {
        let alg = NcAlgebra::new(AlgebraSpec::commutative(1, 1).unwrap());
        let g = CyclicGroupAction::new(&alg, 5).unwrap();
        let m = Monomial::new(2, 4);
        let u = AlgebraElement::monomial(m);
        let expect = AlgebraElement::term(m, Cyclotomic::zeta_pow(5, 2));
        assert_eq!(g.generator().apply(&alg, &u), expect);
        assert_eq!(g.act(1, &u), expect);
    }
}
