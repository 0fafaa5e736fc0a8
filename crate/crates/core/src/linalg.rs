//! Exact rank and linear solves over cyclotomic fields.

use std::collections::BTreeMap;

use crate::scalar::Cyclotomic;

/// Incrementally built row-echelon basis of a subspace of K^width.
///
/// Every stored row has a 1 at its pivot column and zeros at the pivot
/// columns of all rows inserted before it.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    width: usize,
    rows: Vec<(usize, Vec<Cyclotomic>)>,
}

impl EchelonBasis {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Reduces `v` against the basis and returns the remainder.
    pub fn reduce(&self, mut v: Vec<Cyclotomic>) -> Vec<Cyclotomic> {
        assert_eq!(v.len(), self.width, "vector width mismatch");
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (j, r) in row.iter().enumerate().skip(*p) {
                if !r.is_zero() {
                    v[j] = &v[j] - &(&f * r);
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<Cyclotomic>) -> bool {
        if self.is_full() {
            return false;
        }
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("pivot is nonzero");
        for c in v.iter_mut().skip(p) {
            if !c.is_zero() {
                *c = &*c * &inv;
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn contains(&self, v: Vec<Cyclotomic>) -> bool {
        self.reduce(v).iter().all(Cyclotomic::is_zero)
    }
}

/// Rank of a family of vectors of common width.
pub fn rank<I>(width: usize, vectors: I) -> usize
where
    I: IntoIterator<Item = Vec<Cyclotomic>>,
{
    let mut basis = EchelonBasis::new(width);
    for v in vectors {
        basis.insert(v);
        if basis.is_full() {
            break;
        }
    }
    basis.rank()
}

/// Solves Σ_k columns[k]·x_k = target; returns one solution when consistent.
pub fn solve(columns: &[Vec<Cyclotomic>], target: &[Cyclotomic]) -> Option<Vec<Cyclotomic>> {
    let rows = target.len();
    let cols = columns.len();
    let mut m: Vec<Vec<Cyclotomic>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Cyclotomic> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
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
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    if !m[r][j].is_zero() {
                        let t = &f * &m[r][j];
                        m[i][j] = &m[i][j] - &t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Cyclotomic::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// Assigns consecutive column indices to basis keys.
#[derive(Clone, Debug)]
pub struct BasisIndex<K: Ord> {
    index: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> BasisIndex<K> {
    pub fn new<I: IntoIterator<Item = K>>(keys: I) -> Self {
        let mut index = BTreeMap::new();
        for k in keys {
            let n = index.len();
            index.entry(k).or_insert(n);
        }
        Self { index }
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn get(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }

    /// Dense coordinate vector of a sparse combination. Panics on keys outside the basis.
    pub fn coordinates<'a, I>(&self, terms: I) -> Vec<Cyclotomic>
    where
        I: IntoIterator<Item = (&'a K, &'a Cyclotomic)>,
        K: 'a,
    {
        let mut v = vec![Cyclotomic::zero(); self.len()];
        for (k, c) in terms {
            let i = self.get(k).expect("term outside the chosen basis");
            v[i] = &v[i] + c;
        }
        v
    }
}
