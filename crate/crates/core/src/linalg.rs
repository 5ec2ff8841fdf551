//! Exact rational arithmetic and small dense-in-spirit, sparse-in-storage
//! linear algebra over `Q`.
//!
//! Everything downstream (Fock states, polynomials, the O(V) window of the
//! Zhu algebra) stores coefficients in a [`SparseVector`] keyed by an ordered
//! basis label, so a single row-reduction routine serves all of them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Generalized binomial coefficient `C(upper, k)` for any integer `upper`,
/// i.e. `upper (upper-1) ... (upper-k+1) / k!`.
pub fn binomial(upper: i64, k: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(upper) - BigInt::from(j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// `(-1)^e` for any integer exponent.
pub fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Finite linear combination of basis keys with rational coefficients.
/// No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVector<K: Ord> {
    entries: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for SparseVector<K> {
    fn default() -> Self {
        SparseVector {
            entries: BTreeMap::new(),
        }
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for SparseVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(k, v)| (k, format_rational(v))))
            .finish()
    }
}

impl<K: Ord + Clone> SparseVector<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(key: K) -> Self {
        Self::single(key, Rational::one())
    }

    pub fn single(key: K, coeff: Rational) -> Self {
        let mut v = Self::zero();
        v.add_term(key, coeff);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Rational)>>(terms: I) -> Self {
        let mut v = Self::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<&Rational> {
        self.entries.get(key)
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.entries.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&K, &Rational)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl DoubleEndedIterator<Item = &K> {
        self.entries.keys()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, Rational)> {
        self.entries.into_iter()
    }

    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.entries.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += scale * other`
    pub fn add_scaled(&mut self, other: &Self, scale: &Rational) {
        if scale.is_zero() {
            return;
        }
        for (k, c) in &other.entries {
            self.add_term(k.clone(), c * scale);
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        SparseVector {
            entries: self
                .entries
                .iter()
                .map(|(k, c)| (k.clone(), c * s))
                .collect(),
        }
    }

    /// Keeps only the terms whose key satisfies `pred`.
    pub fn filter<F: Fn(&K) -> bool>(&self, pred: F) -> Self {
        SparseVector {
            entries: self
                .entries
                .iter()
                .filter(|(k, _)| pred(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Linear extension of a map on basis keys.
    pub fn map_linear<L: Ord + Clone, F: FnMut(&K) -> SparseVector<L>>(
        &self,
        mut f: F,
    ) -> SparseVector<L> {
        let mut out = SparseVector::zero();
        for (k, c) in &self.entries {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn first_key(&self) -> Option<&K> {
        self.entries.keys().next()
    }
}

impl<K: Ord + Clone> Add for SparseVector<K> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<K: Ord + Clone> AddAssign for SparseVector<K> {
    fn add_assign(&mut self, rhs: Self) {
        for (k, c) in rhs.entries {
            self.add_term(k, c);
        }
    }
}

impl<K: Ord + Clone> Sub for SparseVector<K> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (k, c) in rhs.entries {
            self.add_term(k, -c);
        }
        self
    }
}

impl<K: Ord + Clone> Neg for SparseVector<K> {
    type Output = Self;
    fn neg(self) -> Self {
        SparseVector {
            entries: self.entries.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

/// A list of rows over an explicit, finite, ordered key universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix<K: Ord> {
    columns: Vec<K>,
    rows: Vec<SparseVector<K>>,
}

impl<K: Ord + Clone> RationalMatrix<K> {
    /// Builds a matrix whose key universe is the union of the row supports
    /// together with any extra `columns`.
    pub fn new(rows: Vec<SparseVector<K>>, columns: impl IntoIterator<Item = K>) -> Self {
        let mut universe: BTreeSet<K> = columns.into_iter().collect();
        for r in &rows {
            universe.extend(r.keys().cloned());
        }
        RationalMatrix {
            columns: universe.into_iter().collect(),
            rows,
        }
    }

    pub fn from_rows(rows: Vec<SparseVector<K>>) -> Self {
        Self::new(rows, std::iter::empty())
    }

    pub fn rows(&self) -> &[SparseVector<K>] {
        &self.rows
    }

    pub fn columns(&self) -> &[K] {
        &self.columns
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }
}

impl RationalMatrix<usize> {
    /// Dense convenience constructor; column `j` is keyed by `j`.
    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let width = rows.iter().map(Vec::len).max().unwrap_or(0);
        let sparse = rows
            .iter()
            .map(|r| SparseVector::from_terms(r.iter().cloned().enumerate()))
            .collect();
        Self::new(sparse, 0..width)
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let width = self.columns.len();
        self.rows
            .iter()
            .map(|r| (0..width).map(|j| r.coeff(&j)).collect())
            .collect()
    }
}

/// Reduced row-echelon form by Gauss-Jordan elimination with first-nonzero
/// pivoting. Zero rows are kept (moved to the bottom) so the row count is
/// unchanged. Returns the reduced matrix and its rank.
pub fn row_reduce<K: Ord + Clone>(m: &RationalMatrix<K>) -> (RationalMatrix<K>, usize) {
    let mut rows = m.rows.clone();
    let mut rank = 0;
    for col in &m.columns {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col).is_some()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank].coeff(col).recip();
        rows[rank] = rows[rank].scale(&inv);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank {
                continue;
            }
            if let Some(c) = row.get(col).cloned() {
                row.add_scaled(&pivot, &-c);
            }
        }
        rank += 1;
    }
    (
        RationalMatrix {
            columns: m.columns.clone(),
            rows,
        },
        rank,
    )
}

/// Solves `sum_i c_i basis_i = target`. Returns coordinates when the target
/// lies in the span. If the basis is dependent, free coordinates are set to
/// zero, so the answer is unique exactly when the basis is independent.
pub fn span_membership<K: Ord + Clone>(
    basis: &[SparseVector<K>],
    target: &SparseVector<K>,
) -> Option<Vec<Rational>> {
    // Transpose: one equation per basis key, one unknown per basis vector,
    // with the target as the last (augmented) column.
    let rhs = basis.len();
    let mut keys: BTreeSet<&K> = target.keys().collect();
    for b in basis {
        keys.extend(b.keys());
    }
    let equations: Vec<SparseVector<usize>> = keys
        .into_iter()
        .map(|k| {
            let mut eq = SparseVector::from_terms(
                basis
                    .iter()
                    .enumerate()
                    .filter_map(|(i, b)| b.get(k).map(|c| (i, c.clone()))),
            );
            eq.add_term(rhs, target.coeff(k));
            eq
        })
        .collect();
    let (reduced, _) = row_reduce(&RationalMatrix::new(equations, 0..=rhs));
    let mut coords = vec![Rational::zero(); rhs];
    for row in reduced.rows() {
        match row.first_key() {
            None => {}
            Some(&p) if p == rhs => return None,
            Some(&p) => coords[p] = row.coeff(&rhs),
        }
    }
    Some(coords)
}

/// Rank of a set of vectors.
pub fn rank<K: Ord + Clone>(vectors: &[SparseVector<K>]) -> usize {
    row_reduce(&RationalMatrix::from_rows(vectors.to_vec())).1
}

/// Lowest-terms check used by tests and debug assertions.
pub fn is_canonical(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).to_u8() == Some(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> RationalMatrix<usize> {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        RationalMatrix::from_dense(&rows)
    }

    fn sv(entries: &[(usize, Rational)]) -> SparseVector<usize> {
        SparseVector::from_terms(entries.iter().cloned())
    }

    #[test]
    fn identity_reduces_to_itself() {
        let m = dense(&[&[1, 0], &[0, 1]]);
        let (r, rank) = row_reduce(&m);
        assert_eq!(r, m);
        assert_eq!(rank, 2);
    }

    #[test]
    fn dependent_rows() {
        let (r, rank) = row_reduce(&dense(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.to_dense(), dense(&[&[1, 2], &[0, 0]]).to_dense());
        assert_eq!(rank, 1);
    }

    #[test]
    fn zero_matrix() {
        let (r, rank) = row_reduce(&dense(&[&[0]]));
        assert_eq!(r.to_dense(), vec![vec![rat(0)]]);
        assert_eq!(rank, 0);
    }

    #[test]
    fn reduction_is_idempotent() {
        let m = dense(&[&[0, 3, 1, 2], &[2, 1, 0, -1], &[2, 4, 1, 1], &[1, 0, 0, 5]]);
        let (r, rank) = row_reduce(&m);
        let (rr, rank2) = row_reduce(&r);
        assert_eq!(r, rr);
        assert_eq!(rank, rank2);
        assert_eq!(rank, 3);
    }

    #[test]
    fn span_examples() {
        let e1 = sv(&[(0, rat(1))]);
        let e2 = sv(&[(1, rat(1))]);
        let t = sv(&[(0, rat(2)), (1, rat(3))]);
        assert_eq!(
            span_membership(&[e1.clone(), e2.clone()], &t),
            Some(vec![rat(2), rat(3)])
        );

        let b = sv(&[(0, rat(1)), (1, rat(1))]);
        assert_eq!(span_membership(&[b], &e1), None);

        let b = sv(&[(0, rat(2)), (1, rat(4))]);
        let t = sv(&[(0, rat(1)), (1, rat(2))]);
        assert_eq!(span_membership(&[b], &t), Some(vec![rat_frac(1, 2)]));
    }

    #[test]
    fn zero_target_is_in_every_span() {
        assert_eq!(span_membership::<usize>(&[], &SparseVector::zero()), Some(vec![]));
        assert_eq!(span_membership::<usize>(&[], &sv(&[(3, rat(1))])), None);
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial(-3, 2), BigInt::from(6));
        assert_eq!(binomial(2, 5), BigInt::from(0));
        assert_eq!(binomial(7, 0), BigInt::from(1));
        // C(-m, i) = (-1)^i C(m+i-1, i)
        for m in 1..6i64 {
            for i in 0..6u64 {
                let lhs = binomial(-m, i);
                let rhs = BigInt::from(sign_pow(i as i64)) * binomial(m + i as i64 - 1, i);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn rationals_stay_canonical() {
        let a = rat_frac(6, -4);
        assert!(is_canonical(&a));
        assert_eq!(format_rational(&a), "-3/2");
        assert_eq!(format_rational(&(a.clone() - a)), "0");
    }
}
