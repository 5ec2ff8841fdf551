//! Exhaustive identity sweeps over the monomial corpus. Used by the CLI
//! `identities` and `oracle-diff` subcommands and by the acceptance tests.

use rayon::prelude::*;
use serde::Serialize;

use super::{
    check_commutator, check_l0_grading, check_oracle, check_pseudo_associativity,
    check_skew_symmetry, check_vacuum_axioms, check_virasoro_bracket, Discrepancy, ModeEngine,
};
use crate::fock::{partitions_up_to, FockState};

/// Outcome of one sweep. `failures` holds a description of every failing
/// instance (empty on success).
#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn collect(name: &str, results: Vec<(String, Discrepancy)>) -> Self {
        let checked = results.len();
        let failures = results
            .into_iter()
            .filter(|(_, d)| !d.holds())
            .map(|(label, d)| format!("{label}: difference {}", d.difference))
            .collect();
        SuiteOutcome {
            name: name.to_string(),
            checked,
            failures,
        }
    }
}

pub fn monomial_corpus(max_weight: u64) -> Vec<FockState> {
    partitions_up_to(max_weight)
        .into_iter()
        .map(FockState::monomial)
        .collect()
}

fn nonzero_range(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).filter(|&x| x != 0).collect()
}

/// `[a(n), a(m)]w = n δ_{m+n,0} w` for `m, n` in `[-range, range] \ {0}`.
pub fn commutator_suite(max_weight: u64, range: i64) -> SuiteOutcome {
    let modes = nonzero_range(-range, range);
    let results = monomial_corpus(max_weight)
        .par_iter()
        .flat_map_iter(|w| {
            let modes = &modes;
            modes.iter().flat_map(move |&m| {
                modes
                    .iter()
                    .map(move |&n| (format!("m={m} n={n} w={w}"), check_commutator(w, m, n)))
            })
        })
        .collect();
    SuiteOutcome::collect("commutator", results)
}

/// Recursion vs oracle on all monomial pairs.
pub fn oracle_suite(engine: &ModeEngine, max_weight: u64, range: i64) -> SuiteOutcome {
    let corpus = monomial_corpus(max_weight);
    let results = corpus
        .par_iter()
        .flat_map_iter(|a| {
            let corpus = &corpus;
            corpus.iter().flat_map(move |w| {
                (-range..=range)
                    .map(move |n| (format!("A={a} n={n} w={w}"), check_oracle(engine, a, n, w)))
            })
        })
        .collect();
    SuiteOutcome::collect("oracle equivalence", results)
}

pub fn vacuum_suite(engine: &ModeEngine, max_weight: u64) -> SuiteOutcome {
    let results = monomial_corpus(max_weight)
        .par_iter()
        .flat_map_iter(|v| {
            check_vacuum_axioms(engine, v)
                .into_iter()
                .map(move |(label, d)| (format!("{label} for v={v}"), d))
        })
        .collect();
    SuiteOutcome::collect("vacuum axioms", results)
}

pub fn skew_symmetry_suite(engine: &ModeEngine, max_weight: u64, range: i64) -> SuiteOutcome {
    let corpus = monomial_corpus(max_weight);
    let results = corpus
        .par_iter()
        .flat_map_iter(|a| {
            let corpus = &corpus;
            corpus.iter().flat_map(move |b| {
                (-range..=range).map(move |n| {
                    (format!("A={a} B={b} n={n}"), check_skew_symmetry(engine, a, b, n))
                })
            })
        })
        .collect();
    SuiteOutcome::collect("skew symmetry", results)
}

pub fn pseudo_associativity_suite(engine: &ModeEngine, max_weight: u64, range: i64) -> SuiteOutcome {
    let corpus = monomial_corpus(max_weight);
    let mut triples = Vec::new();
    for u in &corpus {
        for v in &corpus {
            for w in &corpus {
                triples.push((u, v, w));
            }
        }
    }
    let results = triples
        .par_iter()
        .flat_map_iter(|&(u, v, w)| {
            (-range..=range).flat_map(move |m| {
                (-range..=range).map(move |n| {
                    (
                        format!("u={u} m={m} v={v} n={n} w={w}"),
                        check_pseudo_associativity(engine, u, m, v, n, w),
                    )
                })
            })
        })
        .collect();
    SuiteOutcome::collect("pseudo-associativity", results)
}

pub fn l0_suite(engine: &ModeEngine, max_weight: u64) -> SuiteOutcome {
    let results = monomial_corpus(max_weight)
        .par_iter()
        .map(|w| (format!("w={w}"), check_l0_grading(engine, w)))
        .collect();
    SuiteOutcome::collect("L(0) grading", results)
}

pub fn virasoro_suite(engine: &ModeEngine, max_weight: u64, range: i64) -> SuiteOutcome {
    let results = monomial_corpus(max_weight)
        .par_iter()
        .flat_map_iter(|w| {
            (-range..=range).flat_map(move |m| {
                (-range..=range).map(move |n| {
                    (format!("m={m} n={n} w={w}"), check_virasoro_bracket(engine, m, n, w))
                })
            })
        })
        .collect();
    SuiteOutcome::collect("Virasoro bracket", results)
}

/// Literal α-length parity: every term of `A(n)w` has length at most
/// `len(A)+len(w)` and of the same parity.
pub fn length_parity_suite(engine: &ModeEngine, max_weight: u64, range: i64) -> SuiteOutcome {
    let corpus = monomial_corpus(max_weight);
    let mut checked = 0;
    let mut failures = Vec::new();
    for a in &corpus {
        for w in &corpus {
            let bound = a.max_length().unwrap_or(0) + w.max_length().unwrap_or(0);
            for n in -range..=range {
                checked += 1;
                let out = engine.mode_product(a, n, w);
                for (p, _) in out.terms() {
                    if p.length() > bound || (bound - p.length()) % 2 != 0 {
                        failures.push(format!("A={a} n={n} w={w}: term of length {}", p.length()));
                    }
                }
            }
        }
    }
    SuiteOutcome {
        name: "α-length parity".to_string(),
        checked,
        failures,
    }
}

/// The suites run by `vamz identities`.
pub fn identity_suites(engine: &ModeEngine, max_weight: u64) -> Vec<SuiteOutcome> {
    vec![
        commutator_suite(max_weight, 5),
        vacuum_suite(engine, max_weight),
        skew_symmetry_suite(engine, max_weight, 3),
        pseudo_associativity_suite(engine, max_weight, 3),
        l0_suite(engine, max_weight),
        virasoro_suite(engine, max_weight, 3),
    ]
}
