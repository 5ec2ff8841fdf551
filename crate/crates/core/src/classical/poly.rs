use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, Rational, SparseVector};
use crate::text::Cursor;

/// Exponent type of a (Laurent) polynomial in one variable.
pub trait Exponent: Ord + Copy + fmt::Display + fmt::Debug {
    const VAR: char;
    fn checked_add(self, other: Self) -> Option<Self>;
    fn from_i64(e: i64) -> Option<Self>;
    fn to_i64(self) -> i64;
    fn zero() -> Self;
}

impl Exponent for u32 {
    const VAR: char = 'x';
    fn checked_add(self, other: Self) -> Option<Self> {
        u32::checked_add(self, other)
    }
    fn from_i64(e: i64) -> Option<Self> {
        u32::try_from(e).ok()
    }
    fn to_i64(self) -> i64 {
        i64::from(self)
    }
    fn zero() -> Self {
        0
    }
}

impl Exponent for i64 {
    const VAR: char = 't';
    fn checked_add(self, other: Self) -> Option<Self> {
        i64::checked_add(self, other)
    }
    fn from_i64(e: i64) -> Option<Self> {
        Some(e)
    }
    fn to_i64(self) -> i64 {
        self
    }
    fn zero() -> Self {
        0
    }
}

/// Univariate polynomial with rational coefficients; `Poly` uses
/// non-negative exponents in `x`, `LaurentPoly` integer exponents in `t`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<E: Exponent>(SparseVector<E>);

pub type Poly = Polynomial<u32>;
pub type LaurentPoly = Polynomial<i64>;

impl<E: Exponent> Default for Polynomial<E> {
    fn default() -> Self {
        Polynomial(SparseVector::zero())
    }
}

impl<E: Exponent> Polynomial<E> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(E::zero(), Rational::one())
    }

    pub fn monomial(e: E, c: Rational) -> Self {
        Polynomial(SparseVector::single(e, c))
    }

    pub fn from_terms<I: IntoIterator<Item = (E, Rational)>>(terms: I) -> Self {
        Polynomial(SparseVector::from_terms(terms))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&E, &Rational)> {
        self.0.iter()
    }

    pub fn coeff(&self, e: E) -> Rational {
        self.0.coeff(&e)
    }

    pub fn exponents(&self) -> impl DoubleEndedIterator<Item = E> + '_ {
        self.0.keys().copied()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Polynomial(self.0.scale(s))
    }

    pub fn filter<F: Fn(&E) -> bool>(&self, pred: F) -> Self {
        Polynomial(self.0.filter(pred))
    }

    pub fn pow(&self, m: u32) -> Self {
        (0..m).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Parses e.g. `3/2*x^4 - x + 1` (or `t^-2 + 2*t` for Laurent).
    pub fn parse(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        let var = E::VAR.to_string();
        let mut out = Self::zero();
        let mut negate = if cur.eat("-") {
            true
        } else {
            cur.eat("+");
            false
        };
        loop {
            let coeff = if cur.peek_digit() {
                Some(cur.rational()?)
            } else {
                None
            };
            let has_var = match coeff {
                Some(_) => cur.eat("*") && {
                    if !cur.eat(&var) {
                        return Err(cur.error(format!("expected `{var}`")));
                    }
                    true
                },
                None => {
                    if !cur.eat(&var) {
                        return Err(cur.error(format!("expected a coefficient or `{var}`")));
                    }
                    true
                }
            };
            let exp = if has_var {
                if cur.eat("^") {
                    cur.skip_ws();
                    let at = cur.pos();
                    let e = cur.int()?;
                    E::from_i64(e).ok_or_else(|| Error::parse(at, "exponent out of range"))?
                } else {
                    E::from_i64(1).expect("1 fits")
                }
            } else {
                E::zero()
            };
            let c = coeff.unwrap_or_else(Rational::one);
            out.0.add_term(exp, if negate { -c } else { c });
            if cur.eat("+") {
                negate = false;
            } else if cur.eat("-") {
                negate = true;
            } else {
                break;
            }
        }
        cur.finish()?;
        Ok(out)
    }
}

impl LaurentPoly {
    /// `∂_t`.
    pub fn derivative(&self) -> Self {
        Polynomial::from_terms(
            self.terms()
                .filter(|(e, _)| **e != 0)
                .map(|(&e, c)| (e - 1, c * Rational::from_integer(e.into()))),
        )
    }

    pub fn from_poly(p: &Poly) -> Self {
        Polynomial::from_terms(p.terms().map(|(&e, c)| (i64::from(e), c.clone())))
    }
}

impl Poly {
    /// Exact `∫_0^1 f(x) dx`.
    pub fn integral_unit_interval(&self) -> Rational {
        self.terms()
            .map(|(&e, c)| c / Rational::from_integer((i64::from(e) + 1).into()))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

impl<E: Exponent> Add for &Polynomial<E> {
    type Output = Polynomial<E>;
    fn add(self, rhs: Self) -> Polynomial<E> {
        Polynomial(self.0.clone() + rhs.0.clone())
    }
}

impl<E: Exponent> Add for Polynomial<E> {
    type Output = Polynomial<E>;
    fn add(self, rhs: Self) -> Polynomial<E> {
        Polynomial(self.0 + rhs.0)
    }
}

impl<E: Exponent> Sub for Polynomial<E> {
    type Output = Polynomial<E>;
    fn sub(self, rhs: Self) -> Polynomial<E> {
        Polynomial(self.0 - rhs.0)
    }
}

impl<E: Exponent> Neg for Polynomial<E> {
    type Output = Polynomial<E>;
    fn neg(self) -> Polynomial<E> {
        Polynomial(-self.0)
    }
}

impl<E: Exponent> Mul for &Polynomial<E> {
    type Output = Polynomial<E>;
    fn mul(self, rhs: Self) -> Polynomial<E> {
        let mut out = SparseVector::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in rhs.terms() {
                let e = a.checked_add(*b).expect("exponent overflow");
                out.add_term(e, ca * cb);
            }
        }
        Polynomial(out)
    }
}

impl<E: Exponent> fmt::Display for Polynomial<E> {
    /// Descending exponents: `3/2*x^4 - x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let e = e.to_i64();
            if e == 0 {
                f.write_str(&format_rational(&abs))?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{}*", format_rational(&abs))?;
            }
            write!(f, "{}", E::VAR)?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl<E: Exponent> fmt::Debug for Polynomial<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
