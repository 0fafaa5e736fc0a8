//! Normal-form arithmetic in S = k⟨x, y⟩/(f) for the dimension-2
//! AS-regular families with coprime generator weights.
//!
//! Elements are combinations of the PBW monomials y^a x^b. Products are
//! brought to normal form by moving every x to the right of every y with
//! the rewriting rule of the family:
//!
//! * quantum plane `xy − α·yx`: x·y → α·y·x
//! * Jordan plane `xy − yx − x^{q+1}`: x·y → y·x + x^{q+1}

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::scalar::Cyclotomic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// xy − α·yx. The anticommutative plane xy + yx is `Quantum(-1)`.
    Quantum(Cyclotomic),
    /// xy − yx − x^{q+1} with deg x = 1 and q = deg y.
    Jordan,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Quantum(a) => write!(f, "quantum(alpha={a})"),
            Family::Jordan => write!(f, "jordan"),
        }
    }
}

/// Generator weights and relation family of S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    wx: u32,
    wy: u32,
    family: Family,
}

impl AlgebraSpec {
    pub fn new(wx: u32, wy: u32, family: Family) -> Result<Self> {
        let spec = Self { wx, wy, family };
        spec.validate()?;
        Ok(spec)
    }

    pub fn quantum(wx: u32, wy: u32, alpha: Cyclotomic) -> Result<Self> {
        Self::new(wx, wy, Family::Quantum(alpha))
    }

    /// The polynomial algebra k[x, y] with the given weights.
    pub fn commutative(wx: u32, wy: u32) -> Result<Self> {
        Self::quantum(wx, wy, Cyclotomic::one())
    }

    /// Jordan plane with deg x = 1, deg y = q.
    pub fn jordan(q: u32) -> Result<Self> {
        Self::new(1, q, Family::Jordan)
    }

    pub fn validate(&self) -> Result<()> {
        if self.wx == 0 || self.wy == 0 {
            return Err(Error::ZeroWeight {
                wx: self.wx,
                wy: self.wy,
            });
        }
        if self.wx.gcd(&self.wy) != 1 {
            return Err(Error::WeightsNotCoprime {
                wx: self.wx,
                wy: self.wy,
            });
        }
        match &self.family {
            Family::Quantum(a) if a.is_zero() => Err(Error::ZeroAlpha),
            Family::Jordan if self.wx != 1 => Err(Error::JordanWeight { wx: self.wx }),
            _ => Ok(()),
        }
    }

    pub fn wx(&self) -> u32 {
        self.wx
    }

    pub fn wy(&self) -> u32 {
        self.wy
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Gorenstein parameter ℓ = deg x + deg y.
    pub fn ell(&self) -> u32 {
        self.wx + self.wy
    }

    pub fn is_jordan(&self) -> bool {
        matches!(self.family, Family::Jordan)
    }

    pub fn alpha(&self) -> Option<&Cyclotomic> {
        match &self.family {
            Family::Quantum(a) => Some(a),
            Family::Jordan => None,
        }
    }

    pub fn degree(&self, m: Monomial) -> u32 {
        m.a * self.wy + m.b * self.wx
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(deg x, deg y) = ({}, {}), {}", self.wx, self.wy, self.family)
    }
}

/// The normal-form monomial y^a x^b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    /// exponent of y
    pub a: u32,
    /// exponent of x
    pub b: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0 };
    pub const X: Monomial = Monomial { a: 0, b: 1 };
    pub const Y: Monomial = Monomial { a: 1, b: 0 };

    pub fn new(a: u32, b: u32) -> Self {
        Self { a, b }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pow = |f: &mut fmt::Formatter<'_>, v: char, e: u32| match e {
            0 => Ok(()),
            1 => write!(f, "{v}"),
            _ => write!(f, "{v}^{e}"),
        };
        if self.a == 0 && self.b == 0 {
            return write!(f, "1");
        }
        pow(f, 'y', self.a)?;
        pow(f, 'x', self.b)
    }
}

/// A finite linear combination of normal-form monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::ONE)
    }

    pub fn x() -> Self {
        Self::monomial(Monomial::X)
    }

    pub fn y() -> Self {
        Self::monomial(Monomial::Y)
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Cyclotomic::one())
    }

    pub fn term(m: Monomial, c: Cyclotomic) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Cyclotomic)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Cyclotomic {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, v)| (*m, v * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        out
    }

    /// The common degree of all terms, if the element is nonzero and homogeneous.
    pub fn homogeneous_degree(&self, spec: &AlgebraSpec) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| spec.degree(*m));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// Multiplies on the left by y^a and on the right by x^b (no rewriting needed).
    fn shifted(&self, a: u32, b: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.a + a, m.b + b), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{m}")?;
            } else if *m == Monomial::ONE {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

/// S together with a memo of the rewritten products x^b·y^a.
#[derive(Debug)]
pub struct NcAlgebra {
    spec: AlgebraSpec,
    memo: RwLock<HashMap<(u32, u32), AlgebraElement>>,
}

impl Clone for NcAlgebra {
    fn clone(&self) -> Self {
        Self::new(self.spec.clone())
    }
}

impl NcAlgebra {
    pub fn new(spec: AlgebraSpec) -> Self {
        Self {
            spec,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    /// Normal form of x^b · y^a.
    pub fn commute(&self, b: u32, a: u32) -> AlgebraElement {
        if a == 0 || b == 0 {
            return AlgebraElement::monomial(Monomial::new(a, b));
        }
        if let Some(v) = self.memo.read().expect("memo poisoned").get(&(b, a)) {
            return v.clone();
        }
        let value = match &self.spec.family {
            Family::Quantum(alpha) => {
                let c = alpha
                    .pow(i64::from(a) * i64::from(b))
                    .expect("alpha is nonzero");
                AlgebraElement::term(Monomial::new(a, b), c)
            }
            Family::Jordan => {
                // x^b y = y x^b + b x^{b+q}, hence
                // x^b y^a = y (x^b y^{a-1}) + b (x^{b+q} y^{a-1})
                let q = self.spec.wy;
                let first = self.commute(b, a - 1).shifted(1, 0);
                let second = self
                    .commute(b + q, a - 1)
                    .scale(&Cyclotomic::from_i64(i64::from(b)));
                first.add(&second)
            }
        };
        self.memo
            .write()
            .expect("memo poisoned")
            .insert((b, a), value.clone());
        value
    }

    pub fn mul_monomials(&self, u: Monomial, v: Monomial) -> AlgebraElement {
        // y^a x^b · y^c x^d = y^a (x^b y^c) x^d
        self.commute(u.b, v.a).shifted(u.a, v.b)
    }

    /// Product u·v in normal form.
    pub fn mul(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (mu, cu) in u.terms() {
            for (mv, cv) in v.terms() {
                let coeff = cu * cv;
                for (m, c) in self.mul_monomials(*mu, *mv).terms() {
                    out.add_term(*m, c * &coeff);
                }
            }
        }
        out
    }

    pub fn pow(&self, u: &AlgebraElement, k: u32) -> AlgebraElement {
        let mut acc = AlgebraElement::one();
        for _ in 0..k {
            acc = self.mul(&acc, u);
        }
        acc
    }

    /// The defining relation f evaluated at (u, v) in place of (x, y).
    pub fn relation_at(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        let uv = self.mul(u, v);
        let vu = self.mul(v, u);
        match &self.spec.family {
            Family::Quantum(alpha) => uv.sub(&vu.scale(alpha)),
            Family::Jordan => uv.sub(&vu).sub(&self.pow(u, self.spec.wy + 1)),
        }
    }

    /// Monomials of degree d, ordered with higher powers of y first.
    pub fn graded_basis(&self, d: u32) -> Vec<Monomial> {
        graded_basis(&self.spec, d)
    }

    pub fn hilbert_dims(&self, max_degree: u32) -> Vec<usize> {
        hilbert_dims(&self.spec, max_degree)
    }
}

pub fn graded_basis(spec: &AlgebraSpec, d: u32) -> Vec<Monomial> {
    (0..=d / spec.wy)
        .rev()
        .filter_map(|a| {
            let rest = d - a * spec.wy;
            (rest % spec.wx == 0).then(|| Monomial::new(a, rest / spec.wx))
        })
        .collect()
}

/// dim S_d for d = 0..=max_degree.
pub fn hilbert_dims(spec: &AlgebraSpec, max_degree: u32) -> Vec<usize> {
    (0..=max_degree)
        .map(|d| graded_basis(spec, d).len())
        .collect()
}

pub fn dim_at(spec: &AlgebraSpec, d: i64) -> usize {
    if d < 0 {
        0
    } else {
        graded_basis(spec, d as u32).len()
    }
}

/// dim of the degree-d piece of the r-th Veronese of S(shift), i.e. dim S_{rd+shift}.
pub fn veronese_dim(spec: &AlgebraSpec, r: u32, shift: i64, d: u32) -> usize {
    assert!(r >= 1, "Veronese index must be positive");
    dim_at(spec, i64::from(r) * i64::from(d) + shift)
}

/// Degree-d dimension of the r×r quasi-Veronese matrix algebra, whose
/// (i, j) entry is S(j−i)^{(r)}.
pub fn quasi_veronese_dim(spec: &AlgebraSpec, r: u32, d: u32) -> usize {
    let mut total = 0;
    for i in 0..r {
        for j in 0..r {
            total += veronese_dim(spec, r, i64::from(j) - i64::from(i), d);
        }
    }
    total
}

/// Degree-d dimension of the corner e·S^{[r]}·e cut out by the (0,0) matrix unit.
pub fn quasi_veronese_corner_dim(spec: &AlgebraSpec, r: u32, d: u32) -> usize {
    veronese_dim(spec, r, 0, d)
}
