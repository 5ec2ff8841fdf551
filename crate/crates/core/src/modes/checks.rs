//! Identity checkers. Each returns both sides and their difference so a
//! failure can be reported without recomputation.

use num_traits::Zero;
use serde::Serialize;

use super::{mode_product_oracle, virasoro_l, ModeEngine};
use crate::fock::{apply_alpha, translate_d, FockState};
use crate::linalg::{binomial, factorial, rat, rat_frac, sign_pow, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub left: FockState,
    pub right: FockState,
    pub difference: FockState,
}

impl Discrepancy {
    pub fn new(left: FockState, right: FockState) -> Self {
        let difference = left.clone() - right.clone();
        Discrepancy {
            left,
            right,
            difference,
        }
    }

    pub fn holds(&self) -> bool {
        self.difference.is_zero()
    }

    pub fn to_json(&self) -> DiscrepancyJson {
        DiscrepancyJson {
            left: self.left.to_string(),
            right: self.right.to_string(),
            difference: self.difference.to_string(),
        }
    }
}

/// Wire form: states in the canonical text grammar.
#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct DiscrepancyJson {
    pub left: String,
    pub right: String,
    pub difference: String,
}

fn max_weight(s: &FockState) -> i64 {
    s.max_weight().map_or(-1, |w| w as i64)
}

/// `a(n)a(m)w - a(m)a(n)w` against `n δ_{m+n,0} w`.
pub fn check_commutator(w: &FockState, m: i64, n: i64) -> Discrepancy {
    let left = apply_alpha(n, &apply_alpha(m, w)) - apply_alpha(m, &apply_alpha(n, w));
    let right = if m + n == 0 {
        w.scale(&rat(n))
    } else {
        FockState::zero()
    };
    Discrepancy::new(left, right)
}

/// Recursion against the normal-ordered oracle.
pub fn check_oracle(engine: &ModeEngine, a: &FockState, n: i64, w: &FockState) -> Discrepancy {
    Discrepancy::new(engine.mode_product(a, n, w), mode_product_oracle(a, n, w))
}

/// Skew symmetry: `B(n)A = Σ_{i>=0} (-1)^{-n-i-1} D^i/i! A(n+i)B`.
pub fn check_skew_symmetry(engine: &ModeEngine, a: &FockState, b: &FockState, n: i64) -> Discrepancy {
    let left = engine.mode_product(b, n, a);
    let mut right = FockState::zero();
    let top = max_weight(a) + max_weight(b) - 1 - n;
    for i in 0..=top.max(-1) {
        let inner = engine.mode_product(a, n + i, b);
        if inner.is_zero() {
            continue;
        }
        let mut term = inner;
        for _ in 0..i {
            term = translate_d(&term);
        }
        let c = Rational::new(sign_pow(-n - i - 1).into(), factorial(i as u64));
        right.add_scaled(&term, &c);
    }
    Discrepancy::new(left, right)
}

/// Iterate formula:
/// `(u(m)v)(n)w = Σ_{i>=0} (-1)^i C(m,i) (u(m-i)v(n+i)w - (-1)^m v(m+n-i)u(i)w)`.
pub fn check_pseudo_associativity(
    engine: &ModeEngine,
    u: &FockState,
    m: i64,
    v: &FockState,
    n: i64,
    w: &FockState,
) -> Discrepancy {
    let left = engine.mode_product(&engine.mode_product(u, m, v), n, w);
    let top = if m >= 0 {
        m
    } else {
        let first = max_weight(v) + max_weight(w) - 1 - n;
        let second = max_weight(u) + max_weight(w) - 1;
        first.max(second)
    };
    let mut right = FockState::zero();
    for i in 0..=top.max(-1) {
        let c = binomial(m, i as u64) * sign_pow(i);
        if c.is_zero() {
            continue;
        }
        let c = Rational::from_integer(c);
        let first = engine.mode_product(u, m - i, &engine.mode_product(v, n + i, w));
        let second = engine.mode_product(v, m + n - i, &engine.mode_product(u, i, w));
        right.add_scaled(&first, &c);
        right.add_scaled(&second, &(-c * rat(sign_pow(m))));
    }
    Discrepancy::new(left, right)
}

/// The vacuum axioms for `v`: `v(-1)|0> = v`, `v(n)|0> = 0` for
/// `0 <= n <= wt(v)+1`, and `v(-2)|0> = D v`.
pub fn check_vacuum_axioms(engine: &ModeEngine, v: &FockState) -> Vec<(String, Discrepancy)> {
    let vac = FockState::vacuum();
    let mut out = vec![(
        "v(-1)|0> = v".to_string(),
        Discrepancy::new(engine.mode_product(v, -1, &vac), v.clone()),
    )];
    let top = max_weight(v) + 1;
    for n in 0..=top {
        out.push((
            format!("v({n})|0> = 0"),
            Discrepancy::new(engine.mode_product(v, n, &vac), FockState::zero()),
        ));
    }
    out.push((
        "v(-2)|0> = D v".to_string(),
        Discrepancy::new(engine.mode_product(v, -2, &vac), translate_d(v)),
    ));
    out
}

/// `L(0)w = wt(w) w` for a homogeneous state.
pub fn check_l0_grading(engine: &ModeEngine, w: &FockState) -> Discrepancy {
    let wt = w.homogeneous_weight().unwrap_or(0);
    Discrepancy::new(virasoro_l(engine, 0, w), w.scale(&rat(wt as i64)))
}

/// `[L(m), L(n)]w = (m-n)L(m+n)w + δ_{m+n,0} (m^3-m)/12 · c · w` with
/// central charge `c = 1`.
pub fn check_virasoro_bracket(engine: &ModeEngine, m: i64, n: i64, w: &FockState) -> Discrepancy {
    let left = virasoro_l(engine, m, &virasoro_l(engine, n, w))
        - virasoro_l(engine, n, &virasoro_l(engine, m, w));
    let mut right = virasoro_l(engine, m + n, w).scale(&rat(m - n));
    if m + n == 0 {
        right.add_scaled(w, &(rat_frac(m * m * m - m, 12) * central_charge()));
    }
    Discrepancy::new(left, right)
}

/// Central charge of the rank-1 Heisenberg vertex operator algebra.
pub fn central_charge() -> Rational {
    rat(1)
}
