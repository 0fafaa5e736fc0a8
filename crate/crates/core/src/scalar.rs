//! Exact scalars: rationals and elements of the cyclotomic fields Q(ζ_n).
//!
//! An element of Q(ζ_n) is stored as its coefficient vector in the power
//! basis 1, ζ, …, ζ^{φ(n)-1}, reduced modulo the n-th cyclotomic polynomial.
//! Operands with different conductors are embedded into the field of the
//! least common multiple before the operation is carried out.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    assert!(n >= 1, "totient of 0 is undefined");
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

fn poly_divide_exact(num: &[Rational], den: &[Rational]) -> Vec<Rational> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] / &lead;
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] += x * y;
        }
    }
    out
}

fn compute_cyclotomic(n: u32) -> Vec<Rational> {
    // t^n - 1 divided by Φ_d for every proper divisor d of n
    let mut num = vec![Rational::zero(); n as usize + 1];
    num[0] = rat(-1);
    num[n as usize] = rat(1);
    let mut den = vec![rat(1)];
    for d in 1..n {
        if n % d == 0 {
            den = poly_mul(&den, &cyclotomic_cached(d));
        }
    }
    poly_divide_exact(&num, &den)
}

fn cyclotomic_cached(n: u32) -> Arc<Vec<Rational>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<Rational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().expect("cyclotomic cache poisoned").get(&n) {
        return Arc::clone(p);
    }
    let p = Arc::new(compute_cyclotomic(n));
    cache
        .write()
        .expect("cyclotomic cache poisoned")
        .entry(n)
        .or_insert(p)
        .clone()
}

/// The n-th cyclotomic polynomial Φ_n, coefficients listed from the constant
/// term upwards. Monic of degree φ(n).
pub fn cyclotomic_polynomial(n: u32) -> Vec<Rational> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    cyclotomic_cached(n).as_ref().clone()
}

fn lcm(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

/// An exact element of Q(ζ_n).
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    /// ζ_n^k for any integer k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::from_poly(n, poly)
    }

    /// Builds the element Σ poly[k] ζ_n^k, reducing modulo Φ_n.
    pub fn from_poly(n: u32, poly: Vec<Rational>) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let phi = cyclotomic_cached(n);
        let coeffs = reduce_mod(poly, &phi);
        let mut out = Self {
            conductor: n,
            coeffs,
        };
        out.normalize();
        out
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    /// The rational value, if the element lies in Q.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.conductor != 1 && self.coeffs[1..].iter().all(Zero::is_zero) {
            self.coeffs.truncate(1);
            self.conductor = 1;
        }
    }

    /// Re-expresses the element in Q(ζ_n); the current conductor must divide n.
    pub fn embed(&self, n: u32) -> Self {
        assert!(
            n % self.conductor == 0,
            "cannot embed conductor {} into {}",
            self.conductor,
            n
        );
        if n == self.conductor {
            return self.clone();
        }
        let step = (n / self.conductor) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Self::from_poly(n, poly)
    }

    fn aligned(&self, other: &Self) -> (u32, Vec<Rational>, Vec<Rational>) {
        let n = lcm(self.conductor, other.conductor);
        let a = if self.conductor == n {
            self.coeffs.clone()
        } else {
            self.embed(n).padded(n)
        };
        let b = if other.conductor == n {
            other.coeffs.clone()
        } else {
            other.embed(n).padded(n)
        };
        (n, a, b)
    }

    // After normalization an embedded element may have dropped to conductor 1.
    fn padded(&self, n: u32) -> Vec<Rational> {
        let mut c = self.coeffs.clone();
        c.resize(euler_phi(n), Rational::zero());
        c
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = Self {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        };
        out.normalize();
        out
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        // Solve (self · u) = 1 as a linear system in the power basis.
        let n = self.conductor;
        let dim = self.coeffs.len();
        let mut columns = Vec::with_capacity(dim);
        for k in 0..dim {
            let basis = Self::zeta_pow(n, k as i64);
            columns.push(self.mul_ref(&basis).padded(n));
        }
        let mut rhs = vec![Rational::zero(); dim];
        rhs[0] = Rational::one();
        let sol = solve_rational(&columns, rhs).ok_or(Error::DivisionByZero)?;
        Ok(Self::from_poly(n, sol))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Smallest k in 1..=limit with self^k = 1.
    pub fn multiplicative_order(&self, limit: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.conductor == other.conductor {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect();
            let mut out = Self {
                conductor: self.conductor,
                coeffs,
            };
            out.normalize();
            return out;
        }
        let (n, a, b) = self.aligned(other);
        let mut out = Self {
            conductor: n,
            coeffs: a.into_iter().zip(b).map(|(a, b)| a + b).collect(),
        };
        out.normalize();
        out
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.conductor == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.conductor == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let (n, a, b) = if self.conductor == other.conductor {
            (self.conductor, self.coeffs.clone(), other.coeffs.clone())
        } else {
            self.aligned(other)
        };
        Self::from_poly(n, poly_mul(&a, &b))
    }
}

fn reduce_mod(mut poly: Vec<Rational>, phi: &[Rational]) -> Vec<Rational> {
    let deg = phi.len() - 1;
    if poly.len() > deg {
        for k in (deg..poly.len()).rev() {
            let c = std::mem::take(&mut poly[k]);
            if c.is_zero() {
                continue;
            }
            for (i, p) in phi.iter().take(deg).enumerate() {
                poly[k - deg + i] -= &c * p;
            }
        }
    }
    poly.resize(deg, Rational::zero());
    poly
}

/// Solves Σ_k columns[k] · x_k = rhs over Q, returning one solution if any.
fn solve_rational(columns: &[Vec<Rational>], rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let rows = rhs.len();
    let cols = columns.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let lead = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v /= &lead;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// A primitive n-th root of unity ζ_n.
pub fn primitive_root(n: u32) -> Cyclotomic {
    Cyclotomic::zeta_pow(n, 1)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = self.aligned(other);
        a == b
    }
}

impl Eq for Cyclotomic {}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_i64(n)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_ref(rhs)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_ref(&-rhs)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_ref(rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "zeta({})", self.conductor)?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in '{}'",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse::<BigInt>().map_err(|_| self.err("bad integer"))
    }

    fn signed_exponent(&mut self) -> Result<i64> {
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let v = self
            .integer()?
            .to_i64()
            .ok_or_else(|| self.err("exponent too large"))?;
        if paren && !self.eat(b')') {
            return Err(self.err("expected ')'"));
        }
        Ok(if neg { -v } else { v })
    }

    fn factor(&mut self) -> Result<Cyclotomic> {
        match self.peek() {
            Some(b'z') => {
                if !self.src[self.pos..].starts_with(b"zeta") {
                    return Err(self.err("expected 'zeta'"));
                }
                self.pos += 4;
                if !self.eat(b'(') {
                    return Err(self.err("expected '('"));
                }
                let n = self
                    .integer()?
                    .to_u32()
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| self.err("conductor must be a positive integer"))?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                let k = if self.eat(b'^') {
                    self.signed_exponent()?
                } else {
                    1
                };
                Ok(Cyclotomic::zeta_pow(n, k))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let q = if self.eat(b'/') {
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                Ok(Cyclotomic::from_rational(q))
            }
            _ => Err(self.err("expected a number or zeta(n)")),
        }
    }

    fn term(&mut self) -> Result<Cyclotomic> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<Cyclotomic> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }
}

/// Parses sums of terms such as `3/2`, `-zeta(5)^2`, `1 + 2*zeta(3)`.
impl FromStr for Cyclotomic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = ExprParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}
