//! Associative-algebra counterparts: monomial subspaces of `Q[x]`, the
//! cyclic eigenspace splitting, the zero-integral subspace, images of
//! `D_λ = ∂_t + λ t^{-1}` on Laurent polynomials, and the commutative vertex
//! algebra structure `Y(f, z) g = (e^{z∂} f) g` on `Q[t, t^{-1}]`.

mod poly;

use num_traits::{Signed, Zero};
use serde_json::json;

pub use poly::{Exponent, LaurentPoly, Poly, Polynomial};

use crate::linalg::{factorial, Rational};
use crate::report::{bounds, Counterexample, ProbeReport, ProbeSide};
use crate::setcalc::{mz_witness_search, MZVerdict, PeriodicSet};

/// Whether `span{x^n : n in S}` is Mathieu-Zhao in `Q[x]`.
pub fn poly_monomial_mz_decide(set: &PeriodicSet) -> MZVerdict {
    mz_witness_search(set)
}

/// Membership of `f` in `span{x^n : n in S}`.
pub fn monomial_span_member(set: &PeriodicSet, f: &Poly) -> bool {
    f.exponents().all(|e| set.member(u64::from(e)))
}

/// Components of `f` by exponent residue mod `k`.
///
/// # Panics
/// If `k < 2`.
pub fn cx_eigenspace_decompose(f: &Poly, k: u32) -> Vec<Poly> {
    assert!(k >= 2, "eigenspace modulus must be at least 2");
    (0..k).map(|l| f.filter(|e| e % k == l)).collect()
}

/// `∫_0^1 f(x) dx = 0`.
pub fn integral_membership(f: &Poly) -> bool {
    f.integral_unit_interval().is_zero()
}

/// The exponent `m` with `D_λ(t^{m+1}) = (m+1+λ) t^m = 0`, if `λ` is an
/// integer.
fn dlambda_missing_exponent(lambda: &Rational) -> Option<i64> {
    if !lambda.is_integer() {
        return None;
    }
    let l: i64 = lambda.to_integer().try_into().ok()?;
    Some(-1 - l)
}

/// `D_λ(f) = ∂f + λ t^{-1} f`.
pub fn dlambda_apply(lambda: &Rational, f: &LaurentPoly) -> LaurentPoly {
    let shifted = LaurentPoly::from_terms(f.terms().map(|(&e, c)| (e - 1, c * lambda)));
    f.derivative() + shifted
}

/// Whether `f` lies in `D_λ(Q[t, t^{-1}])`. Since
/// `D_λ(t^{m+1}) = (m+1+λ) t^m`, the image misses exactly `t^{-1-λ}` when
/// `λ` is an integer and is everything otherwise.
pub fn dlambda_image_membership(lambda: &Rational, f: &LaurentPoly) -> bool {
    match dlambda_missing_exponent(lambda) {
        Some(m) => f.coeff(m).is_zero(),
        None => true,
    }
}

/// `D_λ(Q[t, t^{-1}])` is Mathieu-Zhao iff `λ` is not an integer or
/// `λ = -1`.
pub fn dlambda_mz_classify(lambda: &Rational) -> MZVerdict {
    match dlambda_missing_exponent(lambda) {
        None => MZVerdict::mz(format!(
            "λ = {lambda} is not an integer: D_λ is onto, the image is the whole algebra"
        )),
        Some(0) => MZVerdict::mz(
            "λ = -1: the image is the span of all t^m with m != 0 (the constants are missed)",
        ),
        Some(m) => MZVerdict::not_mz(
            None,
            format!("λ = {lambda} is an integer other than -1: the image misses only t^{m}"),
        ),
    }
}

/// `f(n) g` in the commutative vertex algebra `Q[t, t^{-1}]`: zero for
/// `n >= 0`, and `(∂^{-n-1} f / (-n-1)!) g` for `n <= -1`.
pub fn laurent_mode(f: &LaurentPoly, n: i64, g: &LaurentPoly) -> LaurentPoly {
    if n >= 0 {
        return LaurentPoly::zero();
    }
    let order = (-n - 1) as u64;
    let mut d = f.clone();
    for _ in 0..order {
        d = d.derivative();
    }
    let d = d.scale(&Rational::from_integer(factorial(order)).recip());
    &d * g
}

/// Bounded falsification of `f ∈ r(M)` in an associative algebra: checks
/// `f^m ∈ M` for `m = 1..=m_max`. Reports every failing exponent; the tail
/// `[m0, m_max]` is reported as clean only up to the bound.
pub fn poly_radical_probe<E: Exponent>(
    f: &Polynomial<E>,
    member: impl Fn(&Polynomial<E>) -> bool,
    m_max: u32,
) -> ProbeReport {
    let mut report = ProbeReport::new(bounds([("m_max", json!(m_max))]));
    let mut power = Polynomial::one();
    for m in 1..=m_max {
        power = &power * f;
        report.tested += 1;
        if !member(&power) {
            report.push(Counterexample {
                side: ProbeSide::Power,
                t: m as usize,
                modes: Vec::new(),
                operand: None,
                outer_mode: None,
                state: power.to_string(),
            });
        }
    }
    let last_bad = report.counterexamples.last().map(|c| c.t as u64);
    report.largest_falsified_tail_start = last_bad;
    report.conclusion = match (last_bad, &report.counterexample) {
        (None, _) => format!(
            "no counterexample up to bound: f^m ∈ M for every 1 <= m <= {m_max}; this does not \
             establish radical membership"
        ),
        (Some(last), Some(first)) if last as u32 == m_max => format!(
            "counterexamples at m ∈ {:?} (first m = {}); no tail [m0, {m_max}] is clean",
            report.falsified_lengths(),
            first.t
        ),
        (Some(last), _) => format!(
            "counterexamples at m ∈ {:?}; tail [{}, {m_max}] is clean up to the bound only",
            report.falsified_lengths(),
            last + 1
        ),
    };
    report
}

/// Coefficient-level check that `(1/(n+1)!) ∂^{n+1} f = (1/(n+1)) ∂((1/n!) ∂^n f)`.
pub fn divided_derivative_consistent(f: &LaurentPoly, n: u64) -> bool {
    let divided = |k: u64| {
        let mut d = f.clone();
        for _ in 0..k {
            d = d.derivative();
        }
        d.scale(&Rational::from_integer(factorial(k)).recip())
    };
    let lhs = divided(n + 1);
    let rhs = divided(n)
        .derivative()
        .scale(&Rational::from_integer((n as i64 + 1).into()).recip());
    lhs == rhs
}

/// Whether `λ` is a negative integer, used by reports.
pub fn is_negative_integer(lambda: &Rational) -> bool {
    lambda.is_integer() && lambda.is_negative()
}
