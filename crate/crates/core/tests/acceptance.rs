//! Acceptance criteria 1-11, one PASS/FAIL line each. Every comparison is
//! exact; there is no tolerance anywhere.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use vamz::classical::dlambda_mz_classify;
use vamz::fock::{format_state, parse_state, FockState};
use vamz::linalg::{rat, rat_frac};
use vamz::modes::suite::{
    commutator_suite, l0_suite, length_parity_suite, oracle_suite, pseudo_associativity_suite,
    skew_symmetry_suite, vacuum_suite, virasoro_suite, SuiteOutcome,
};
use vamz::modes::{central_charge, conformal_vector, virasoro_l, ModeEngine};
use vamz::setcalc::{mz_witness_bruteforce, mz_witness_search, PeriodicSet, Verdict};
use vamz::vamz::{counterexample_holds, fock_mz_decide, radical_probe, SubspaceSpec};
use vamz::zhu::{
    zhu_associativity_check, zhu_commutativity_check, zhu_independence_check, zhu_ov_membership,
    zhu_star,
};

type Check = fn(&ModeEngine) -> Outcome;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn from_suites(suites: &[SuiteOutcome]) -> Self {
        let failures: usize = suites.iter().map(|s| s.failures.len()).sum();
        let checked: usize = suites.iter().map(|s| s.checked).sum();
        let mut detail = format!("{checked} checks, {failures} discrepancies");
        if let Some(f) = suites.iter().flat_map(|s| &s.failures).next() {
            detail.push_str(&format!("; first: {f}"));
        }
        Outcome {
            passed: failures == 0,
            detail,
        }
    }

    fn from_failures(checked: usize, failures: Vec<String>) -> Self {
        let mut detail = format!("{checked} checks, {} failures", failures.len());
        if let Some(f) = failures.first() {
            detail.push_str(&format!("; first: {f}"));
        }
        Outcome {
            passed: failures.is_empty(),
            detail,
        }
    }
}

fn m(parts: &[u32]) -> FockState {
    FockState::from_parts(parts)
}

fn corpus(max_weight: u64) -> Vec<FockState> {
    vamz::modes::suite::monomial_corpus(max_weight)
}

fn criterion_1(e: &ModeEngine) -> Outcome {
    Outcome::from_suites(&[oracle_suite(e, 5, 5)])
}

fn criterion_2(_: &ModeEngine) -> Outcome {
    Outcome::from_suites(&[commutator_suite(6, 5)])
}

fn criterion_3(e: &ModeEngine) -> Outcome {
    Outcome::from_suites(&[vacuum_suite(e, 5)])
}

fn criterion_4(e: &ModeEngine) -> Outcome {
    Outcome::from_suites(&[skew_symmetry_suite(e, 4, 3), pseudo_associativity_suite(e, 4, 3)])
}

fn criterion_5(e: &ModeEngine) -> Outcome {
    let mut out = Outcome::from_suites(&[l0_suite(e, 6), virasoro_suite(e, 4, 3)]);
    // L(2)ω = (c/2)|0> fixes the central charge independently of the bracket.
    let c = central_charge();
    let l2 = virasoro_l(e, 2, &conformal_vector());
    let expected = FockState::vacuum().scale(&(c.clone() * rat_frac(1, 2)));
    if l2 != expected || c != rat(1) {
        out.passed = false;
        out.detail.push_str(&format!("; L(2)ω = {l2}, c = {c}"));
    }
    out
}

fn criterion_6(e: &ModeEngine) -> Outcome {
    Outcome::from_suites(&[length_parity_suite(e, 5, 5)])
}

fn criterion_7(_: &ModeEngine) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for k in 2..=8u64 {
        for mask in 1u64..(1 << (k - 1)) {
            let l: Vec<u64> = (1..k).filter(|r| mask >> (r - 1) & 1 == 1).collect();
            let spec = SubspaceSpec::eigenspace_union(k, l.iter().copied()).unwrap();
            checked += 1;
            let v = fock_mz_decide(&spec);
            if v.verdict != Verdict::MZ {
                failures.push(format!("{spec}: {}", v.verdict));
            }
            if l.len() as u64 == k - 1 {
                continue;
            }
            let mut with_zero = l.clone();
            with_zero.push(0);
            let spec = SubspaceSpec::eigenspace_union(k, with_zero).unwrap();
            checked += 1;
            let v = fock_mz_decide(&spec);
            if v.verdict != Verdict::NotMZ || v.witness_d.is_some() {
                failures.push(format!("{spec}: {} {:?}", v.verdict, v.witness_d));
            }
        }
    }
    // {1, 2, 3, ...} has a full tail: x K[x] is an ideal, not a counterexample.
    checked += 1;
    if mz_witness_search(&PeriodicSet::multiples_of(1)).verdict != Verdict::Inapplicable {
        failures.push("multiples of 1: expected Inapplicable".into());
    }
    for d in 2..=30u64 {
        let set = PeriodicSet::multiples_of(d);
        checked += 1;
        let v = mz_witness_search(&set);
        let verified = v
            .witness_d
            .is_some_and(|w| (1..=200).all(|j| set.member(j * w)));
        if v.verdict != Verdict::NotMZ || !verified {
            failures.push(format!("multiples of {d}: {} {:?}", v.verdict, v.witness_d));
        }
        let spec = SubspaceSpec::LengthSet(set.clone());
        if fock_mz_decide(&spec) != v {
            failures.push(format!("multiples of {d}: Fock and polynomial decisions differ"));
        }
    }
    for set in common::sample(common::periodic_set(12, 30), 200, 7) {
        checked += 1;
        let v = mz_witness_search(&set);
        let brute = mz_witness_bruteforce(&set, 60, 60);
        let agrees = match (v.verdict, v.witness_d) {
            (Verdict::Inapplicable, _) => set.tail_is_full() && brute.is_some(),
            (Verdict::NotMZ, Some(d)) => {
                brute.is_some() && (1..=60).all(|j| set.member(j * d)) && !set.contains_zero
            }
            (Verdict::NotMZ, None) => set.contains_zero && !set.is_everything(),
            (Verdict::MZ, _) => set.is_everything() || (brute.is_none() && !set.contains_zero),
        };
        if !agrees {
            failures.push(format!("{set}: search {} {:?}, brute force {brute:?}", v.verdict, v.witness_d));
        }
    }
    Outcome::from_failures(checked, failures)
}

fn criterion_8(_: &ModeEngine) -> Outcome {
    let cases = [
        (rat(-1), Verdict::MZ),
        (rat(-2), Verdict::NotMZ),
        (rat(-3), Verdict::NotMZ),
        (rat(0), Verdict::NotMZ),
        (rat(2), Verdict::NotMZ),
        (rat_frac(1, 2), Verdict::MZ),
        (rat_frac(-7, 3), Verdict::MZ),
    ];
    let failures = cases
        .iter()
        .filter_map(|(l, want)| {
            let got = dlambda_mz_classify(l).verdict;
            (got != *want).then(|| format!("λ = {l}: {got}, expected {want}"))
        })
        .collect();
    Outcome::from_failures(cases.len(), failures)
}

fn criterion_9(e: &ModeEngine) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut expect = |ok: bool, what: String| {
        checked += 1;
        if !ok {
            failures.push(what);
        }
    };
    let mono = corpus(3);
    for b in corpus(4) {
        expect(zhu_star(e, &FockState::vacuum(), &b) == b, format!("1 ⋆ {b} != {b}"));
    }
    expect(
        zhu_ov_membership(&(m(&[2]) + m(&[1])), 2).unwrap(),
        "[2] + [1] not in O(V) at cap 2".into(),
    );
    let weight = |s: &FockState| s.max_weight().unwrap_or(0);
    for a in &mono {
        for b in &mono {
            if weight(a) + weight(b) <= 3 {
                expect(
                    zhu_commutativity_check(e, a, b, 4).unwrap(),
                    format!("{a} and {b} do not commute mod O(V)"),
                );
            }
            for c in &mono {
                if weight(a) + weight(b) + weight(c) <= 3 {
                    expect(
                        zhu_associativity_check(e, a, b, c, 4).unwrap(),
                        format!("({a}, {b}, {c}) not associative mod O(V)"),
                    );
                }
            }
        }
    }
    let classes = [FockState::vacuum(), m(&[1]), zhu_star(e, &m(&[1]), &m(&[1]))];
    expect(
        zhu_independence_check(&classes, 3).unwrap(),
        "1, [1], [1]⋆[1] dependent mod O(V) at cap 3".into(),
    );
    Outcome::from_failures(checked, failures)
}

fn criterion_10(e: &ModeEngine) -> Outcome {
    let v = m(&[1]);
    let spec = SubspaceSpec::eigenspace_union(3, [1, 2]).unwrap();
    let report = radical_probe(e, &v, &spec, 6, &[-1]).unwrap();
    let mut failures = Vec::new();
    if report.falsified_lengths() != vec![3, 6] {
        failures.push(format!("falsified t = {:?}", report.falsified_lengths()));
    }
    for cx in &report.counterexamples {
        if !counterexample_holds(&v, &spec, cx).unwrap() {
            failures.push(format!("counterexample at t = {} does not re-evaluate", cx.t));
        }
    }
    Outcome::from_failures(1 + report.counterexamples.len(), failures)
}

fn criterion_11(_: &ModeEngine) -> Outcome {
    let states = common::sample(common::state(8, 8, 1_000_000), 500, 11);
    let failures = states
        .iter()
        .filter_map(|s| {
            let text = format_state(s);
            match parse_state(&text) {
                Ok(back) if back == *s && format_state(&back) == text => None,
                Ok(back) => Some(format!("{text} reparsed as {back}")),
                Err(e) => Some(format!("{text}: {e}")),
            }
        })
        .collect();
    Outcome::from_failures(states.len(), failures)
}

fn main() -> ExitCode {
    let engine = ModeEngine::new();
    let criteria: [(&str, Check); 11] = [
        ("oracle equivalence, weight <= 5, n in [-5, 5]", criterion_1),
        ("commutator suite, weight <= 6, m, n in [-5, 5] \\ {0}", criterion_2),
        ("vacuum axioms, weight <= 5", criterion_3),
        ("skew symmetry and pseudo-associativity, weight <= 4, modes in [-3, 3]", criterion_4),
        ("L(0) grading, weight <= 6; Virasoro bracket with c = 1, weight <= 4", criterion_5),
        ("α-length parity, weight <= 5", criterion_6),
        ("MZ decisions and 200 randomized sets against brute force", criterion_7),
        ("D_λ classification", criterion_8),
        ("Zhu algebra suite", criterion_9),
        ("radical probe fidelity", criterion_10),
        ("parser round trip on 500 random states", criterion_11),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check(&engine);
        all &= outcome.passed;
        println!(
            "criterion {:>2}: {} {name} ({}, {:.1?})",
            i + 1,
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.detail,
            start.elapsed()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
