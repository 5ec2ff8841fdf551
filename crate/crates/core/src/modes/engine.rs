//! `A(n)w` by recursion on the α-length of `A`.
//!
//! Writing `A = a(-m) B` with `m` the largest part and `u = a(-1)|0>` (so
//! `u(j) = a(j)`), the iterate formula for `(u(-m)B)(n)w` gives
//!
//! ```text
//! A(n)w = Σ_{i>=0} C(m+i-1, i) [ a(-m-i) B(n+i)w - (-1)^m B(n-m-i) a(i)w ]
//! ```
//!
//! The first sum stops once `B(n+i)w` has negative weight, the second once
//! `a(i)` exceeds the largest part of `w`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::fock::{apply_alpha, FockState, Partition};
use crate::linalg::{binomial, sign_pow, Rational};

type Key = (Partition, i64, Partition);

/// Computes mode products, optionally memoizing monomial-pair results.
///
/// The cache is a pure function cache keyed by canonical partitions, so one
/// engine may be shared across threads.
#[derive(Default)]
pub struct ModeEngine {
    cache: Option<RwLock<HashMap<Key, FockState>>>,
}

impl ModeEngine {
    pub fn new() -> Self {
        ModeEngine {
            cache: Some(RwLock::new(HashMap::new())),
        }
    }

    pub fn uncached() -> Self {
        ModeEngine { cache: None }
    }

    /// A process-wide memoizing engine.
    pub fn shared() -> &'static ModeEngine {
        static SHARED: OnceLock<ModeEngine> = OnceLock::new();
        SHARED.get_or_init(ModeEngine::new)
    }

    pub fn cache_len(&self) -> usize {
        self.cache
            .as_ref()
            .map_or(0, |c| c.read().expect("mode cache poisoned").len())
    }

    /// `A(n)w`, bilinear in `A` and `w`.
    pub fn mode_product(&self, a: &FockState, n: i64, w: &FockState) -> FockState {
        let mut out = FockState::zero();
        for (pa, ca) in a.terms() {
            for (pw, cw) in w.terms() {
                let c: Rational = ca * cw;
                out.add_scaled(&self.monomial_product(pa, n, pw), &c);
            }
        }
        out
    }

    /// `A(n)w` for single monomials.
    pub fn monomial_product(&self, a: &Partition, n: i64, w: &Partition) -> FockState {
        let target = a.weight() as i64 + w.weight() as i64 - n - 1;
        if target < 0 || (target == 0 && (a.length() + w.length()) % 2 == 1) {
            return FockState::zero();
        }
        if a.is_vacuum() {
            return if n == -1 {
                FockState::monomial(w.clone())
            } else {
                FockState::zero()
            };
        }
        if a.parts() == [1] {
            return apply_alpha(n, &FockState::monomial(w.clone()));
        }

        let key = (a.clone(), n, w.clone());
        if let Some(cache) = &self.cache {
            if let Some(hit) = cache.read().expect("mode cache poisoned").get(&key) {
                return hit.clone();
            }
        }
        let result = self.peel_largest(a, n, w);
        if let Some(cache) = &self.cache {
            cache
                .write()
                .expect("mode cache poisoned")
                .insert(key, result.clone());
        }
        result
    }

    fn peel_largest(&self, a: &Partition, n: i64, w: &Partition) -> FockState {
        let (m, rest) = a.split_largest().expect("non-vacuum");
        let m = i64::from(m);
        let w_state = FockState::monomial(w.clone());
        let mut out = FockState::zero();

        let top = rest.weight() as i64 + w.weight() as i64 - 1 - n;
        for i in 0..=top.max(-1) {
            let inner = self.monomial_product(&rest, n + i, w);
            if inner.is_zero() {
                continue;
            }
            let c = Rational::from_integer(binomial(m + i - 1, i as u64));
            out.add_scaled(&apply_alpha(-m - i, &inner), &c);
        }

        let largest_w = i64::from(w.largest().unwrap_or(0));
        for i in 1..=largest_w {
            let lowered = apply_alpha(i, &w_state);
            if lowered.is_zero() {
                continue;
            }
            let c = Rational::from_integer(
                -binomial(m + i - 1, i as u64) * sign_pow(m),
            );
            out.add_scaled(&self.mode_product(&FockState::monomial(rest.clone()), n - m - i, &lowered), &c);
        }
        out
    }
}

/// `A(n)w` using the shared memoizing engine.
pub fn mode_product(a: &FockState, n: i64, w: &FockState) -> FockState {
    ModeEngine::shared().mode_product(a, n, w)
}
