#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use vamz::fock::{partitions_up_to, FockState};
use vamz::linalg::Rational;
use vamz::setcalc::PeriodicSet;

/// Random states: up to `max_terms` monomials of weight at most
/// `max_weight`, coefficients `±p/q` with `1 <= p, q <= max_coeff`.
pub fn state(max_weight: u64, max_terms: usize, max_coeff: i64) -> impl Strategy<Value = FockState> {
    let parts = partitions_up_to(max_weight);
    let n = parts.len();
    prop::collection::vec((0..n, 1..=max_coeff, 1..=max_coeff, any::<bool>()), 0..=max_terms).prop_map(
        move |terms| {
            FockState::from_terms(terms.into_iter().map(|(i, p, q, neg)| {
                let c = Rational::new(BigInt::from(if neg { -p } else { p }), BigInt::from(q));
                (parts[i].clone(), c)
            }))
        },
    )
}

pub fn monomial(max_weight: u64) -> impl Strategy<Value = FockState> {
    let parts = partitions_up_to(max_weight);
    (0..parts.len()).prop_map(move |i| FockState::monomial(parts[i].clone()))
}

/// Random eventually periodic sets, modulus at most `max_k`, threshold at
/// most `max_t`, returned in canonical form.
pub fn periodic_set(max_k: u64, max_t: u64) -> impl Strategy<Value = PeriodicSet> {
    (1..=max_k, 0..=max_t, any::<u64>(), any::<u64>(), any::<u64>(), prop::bool::weighted(0.2)).prop_map(
        |(k, t, rmask, emask, evals, zero)| {
            let residues: Vec<u64> = (0..k).filter(|r| rmask >> r & 1 == 1).collect();
            let exceptions: Vec<(u64, bool)> = (1..t)
                .filter(|n| emask >> (n % 64) & 1 == 1)
                .map(|n| (n, evals >> (n % 64) & 1 == 1))
                .collect();
            PeriodicSet::new(k, residues, t, exceptions, zero)
                .expect("valid random set")
                .canonicalize()
        },
    )
}

/// Deterministic sampler for fixed-size randomized checks.
pub fn sample<S: Strategy>(strategy: S, count: usize, seed: u8) -> Vec<S::Value> {
    let mut runner = TestRunner::new_with_rng(
        Config::default(),
        TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]),
    );
    (0..count)
        .map(|_| strategy.new_tree(&mut runner).expect("strategy").current())
        .collect()
}
