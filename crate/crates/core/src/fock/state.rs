use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_traits::One;

use super::partition::Partition;
use crate::linalg::{rat, Rational, SparseVector};

/// A finite rational linear combination of Fock monomials.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FockState(SparseVector<Partition>);

impl FockState {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::monomial(Partition::vacuum())
    }

    pub fn monomial(p: Partition) -> Self {
        FockState(SparseVector::unit(p))
    }

    /// Convenience: the monomial with the given parts (in any order).
    pub fn from_parts(parts: &[u32]) -> Self {
        Self::monomial(Partition::new(parts.to_vec()))
    }

    pub fn term(p: Partition, c: Rational) -> Self {
        FockState(SparseVector::single(p, c))
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, Rational)>>(terms: I) -> Self {
        FockState(SparseVector::from_terms(terms))
    }

    pub fn as_vector(&self) -> &SparseVector<Partition> {
        &self.0
    }

    pub fn into_vector(self) -> SparseVector<Partition> {
        self.0
    }

    pub fn from_vector(v: SparseVector<Partition>) -> Self {
        FockState(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.0.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Partition, &Rational)> {
        self.0.iter()
    }

    pub fn coeff(&self, p: &Partition) -> Rational {
        self.0.coeff(p)
    }

    pub fn add_term(&mut self, p: Partition, c: Rational) {
        self.0.add_term(p, c);
    }

    pub fn add_scaled(&mut self, other: &FockState, s: &Rational) {
        self.0.add_scaled(&other.0, s);
    }

    pub fn scale(&self, s: &Rational) -> Self {
        FockState(self.0.scale(s))
    }

    pub fn scale_int(&self, s: i64) -> Self {
        self.scale(&rat(s))
    }

    /// The single monomial of a state that is exactly one monomial with
    /// coefficient one.
    pub fn as_monomial(&self) -> Option<&Partition> {
        match self.0.len() {
            1 => {
                let (p, c) = self.0.iter().next()?;
                c.is_one().then_some(p)
            }
            _ => None,
        }
    }

    /// Maximum weight over the support; `None` for the zero state.
    pub fn max_weight(&self) -> Option<u64> {
        self.0.keys().map(Partition::weight).max()
    }

    pub fn max_length(&self) -> Option<usize> {
        self.0.keys().map(Partition::length).max()
    }

    /// Weight if every term has the same weight.
    pub fn homogeneous_weight(&self) -> Option<u64> {
        let mut weights = self.0.keys().map(Partition::weight);
        let w = weights.next()?;
        weights.all(|x| x == w).then_some(w)
    }

    /// Splits into homogeneous weight components.
    pub fn weight_components(&self) -> BTreeMap<u64, FockState> {
        let mut out: BTreeMap<u64, FockState> = BTreeMap::new();
        for (p, c) in self.terms() {
            out.entry(p.weight())
                .or_default()
                .add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn filter<F: Fn(&Partition) -> bool>(&self, pred: F) -> Self {
        FockState(self.0.filter(pred))
    }

    /// Linear extension of a map on monomials.
    pub fn map_monomials<F: FnMut(&Partition) -> FockState>(&self, mut f: F) -> FockState {
        FockState(self.0.map_linear(|p| f(p).0))
    }
}

impl fmt::Debug for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::parse::format_state(self))
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::parse::format_state(self))
    }
}

impl Add for FockState {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        FockState(self.0 + rhs.0)
    }
}

impl AddAssign for FockState {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl Sub for FockState {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        FockState(self.0 - rhs.0)
    }
}

impl Neg for FockState {
    type Output = Self;
    fn neg(self) -> Self {
        FockState(-self.0)
    }
}

impl std::iter::Sum for FockState {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(FockState::zero(), |acc, x| acc + x)
    }
}

impl From<Partition> for FockState {
    fn from(p: Partition) -> Self {
        FockState::monomial(p)
    }
}
