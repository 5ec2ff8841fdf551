mod common;

use proptest::prelude::*;
use vamz::classical::{
    cx_eigenspace_decompose, dlambda_image_membership, dlambda_mz_classify, laurent_mode,
    LaurentPoly, Poly,
};
use vamz::fock::{
    apply_alpha, eigenspace_project, format_state, parse_state, translate_d, FockState,
};
use vamz::linalg::{rank, rat, rat_frac, row_reduce, span_membership, RationalMatrix, SparseVector};
use vamz::modes::{check_commutator, mode_product_oracle, virasoro_l, ModeEngine};
use vamz::report::ProbeReport;
use vamz::setcalc::{mz_witness_bruteforce, mz_witness_search, MZVerdict, PeriodicSet, Verdict};
use vamz::vamz::{fock_mz_decide, radical_probe, subspace_member, SubspaceSpec};

fn engine() -> &'static ModeEngine {
    ModeEngine::shared()
}

fn small_vector() -> impl Strategy<Value = SparseVector<usize>> {
    prop::collection::vec((0usize..5, -4i64..=4), 0..6)
        .prop_map(|t| SparseVector::from_terms(t.into_iter().map(|(k, c)| (k, rat(c)))))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -5i64..=5, 1i64..=4), 0..5)
        .prop_map(|t| LaurentPoly::from_terms(t.into_iter().map(|(e, p, q)| (e, rat_frac(p, q)))))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..=9, -5i64..=5, 1i64..=4), 0..6)
        .prop_map(|t| Poly::from_terms(t.into_iter().map(|(e, p, q)| (e, rat_frac(p, q)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn state_text_round_trips(s in common::state(8, 6, 1_000_000)) {
        let text = format_state(&s);
        prop_assert_eq!(parse_state(&text).unwrap(), s);
    }

    #[test]
    fn sparse_vectors_store_no_zeros(v in small_vector(), w in small_vector()) {
        let sum = v.clone() + w.clone() - w;
        prop_assert_eq!(&sum, &v);
        prop_assert!(sum.iter().all(|(_, c)| *c != rat(0)));
    }

    #[test]
    fn row_reduction_is_idempotent(rows in prop::collection::vec(small_vector(), 0..5)) {
        let (once, r1) = row_reduce(&RationalMatrix::from_rows(rows.clone()));
        let (twice, r2) = row_reduce(&once);
        prop_assert_eq!(once, twice);
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(r1, rank(&rows));
    }

    #[test]
    fn span_membership_reconstructs(basis in prop::collection::vec(small_vector(), 1..4),
                                    coeffs in prop::collection::vec(-3i64..=3, 4)) {
        let mut target = SparseVector::zero();
        for (b, c) in basis.iter().zip(&coeffs) {
            target.add_scaled(b, &rat(*c));
        }
        let solution = span_membership(&basis, &target).expect("target is in the span");
        let mut rebuilt = SparseVector::zero();
        for (b, c) in basis.iter().zip(&solution) {
            rebuilt.add_scaled(b, c);
        }
        prop_assert_eq!(rebuilt, target);
    }

    #[test]
    fn recursion_matches_oracle(a in common::monomial(5), w in common::monomial(5), n in -5i64..=5) {
        prop_assert_eq!(engine().mode_product(&a, n, &w), mode_product_oracle(&a, n, &w));
    }

    #[test]
    fn mode_product_is_bilinear(a in common::state(3, 3, 9), b in common::state(3, 3, 9),
                               w in common::state(3, 3, 9), n in -3i64..=3, c in -4i64..=4) {
        let e = engine();
        let lhs = e.mode_product(&(a.clone() + b.scale_int(c)), n, &w);
        let rhs = e.mode_product(&a, n, &w) + e.mode_product(&b, n, &w).scale_int(c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn heisenberg_commutator(w in common::state(6, 4, 50), m in -5i64..=5, n in -5i64..=5) {
        prop_assume!(m != 0 && n != 0);
        prop_assert!(check_commutator(&w, m, n).holds());
    }

    #[test]
    fn translation_is_l_minus_one(w in common::state(5, 4, 50)) {
        prop_assert_eq!(virasoro_l(engine(), -1, &w), translate_d(&w));
    }

    #[test]
    fn alpha_zero_acts_as_zero(w in common::state(6, 4, 50)) {
        prop_assert!(apply_alpha(0, &w).is_zero());
    }

    #[test]
    fn fock_eigenspaces_partition(w in common::state(6, 6, 50), k in 2usize..=5) {
        let parts: Vec<FockState> = (0..k).map(|l| eigenspace_project(&w, k, l)).collect();
        prop_assert_eq!(parts.iter().cloned().sum::<FockState>(), w);
        for (l, p) in parts.iter().enumerate() {
            prop_assert!(p.terms().all(|(q, _)| q.length() % k == l));
        }
    }

    #[test]
    fn polynomial_eigenspaces_partition(f in poly(), k in 2u32..=5) {
        let parts = cx_eigenspace_decompose(&f, k);
        let total = parts.iter().fold(Poly::zero(), |acc, p| &acc + p);
        prop_assert_eq!(total, f);
        for (l, p) in parts.iter().enumerate() {
            prop_assert!(p.exponents().all(|e| e % k == l as u32));
        }
    }

    #[test]
    fn laurent_mode_minus_one_is_product(f in laurent(), g in laurent()) {
        prop_assert_eq!(laurent_mode(&f, -1, &g), &f * &g);
    }

    #[test]
    fn polynomial_text_round_trips(f in poly(), g in laurent()) {
        prop_assert_eq!(Poly::parse(&f.to_string()).unwrap(), f);
        prop_assert_eq!(LaurentPoly::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn dlambda_mz_images(p in -12i64..=12, q in 1i64..=4) {
        let lambda = rat_frac(p, q);
        let missing: Vec<i64> = (-16i64..=16)
            .filter(|&e| !dlambda_image_membership(&lambda, &LaurentPoly::monomial(e, rat(1))))
            .collect();
        match dlambda_mz_classify(&lambda).verdict {
            Verdict::MZ if lambda.is_integer() => prop_assert_eq!(missing, vec![0]),
            Verdict::MZ => prop_assert!(missing.is_empty()),
            _ => prop_assert_eq!(missing.len(), 1),
        }
    }

    #[test]
    fn canonical_sets_keep_membership(s in common::periodic_set(12, 30)) {
        let c = s.canonicalize();
        prop_assert_eq!(&c, &s);
        let text = s.to_string();
        prop_assert_eq!(PeriodicSet::parse(&text).unwrap().canonicalize(), s.clone());
        for n in 0..120 {
            prop_assert_eq!(c.member(n), s.member(n));
        }
    }

    #[test]
    fn raw_sets_canonicalize_faithfully(k in 1u64..=12, t in 0u64..=20, rmask: u64, emask: u64) {
        let residues: Vec<u64> = (0..k).filter(|r| rmask >> r & 1 == 1).collect();
        let exc: Vec<(u64, bool)> = (1..t).map(|n| (n, emask >> n & 1 == 1)).collect();
        let s = PeriodicSet::new(k, residues, t, exc, false).unwrap();
        let c = s.canonicalize();
        prop_assert!(c.modulus <= s.modulus && c.threshold <= s.threshold);
        for n in 0..150 {
            prop_assert_eq!(c.member(n), s.member(n));
        }
    }

    #[test]
    fn witness_search_matches_brute_force(s in common::periodic_set(12, 30)) {
        prop_assume!(!s.contains_zero && !s.tail_is_full());
        let v = mz_witness_search(&s);
        let brute = mz_witness_bruteforce(&s, 60, 60);
        prop_assert_eq!(v.verdict == Verdict::NotMZ, brute.is_some());
        if let Some(d) = v.witness_d {
            prop_assert!((1..=60).all(|m| s.member(m * d)));
        }
    }

    #[test]
    fn fock_and_polynomial_decisions_agree(s in common::periodic_set(12, 30)) {
        prop_assert_eq!(
            fock_mz_decide(&SubspaceSpec::LengthSet(s.clone())),
            vamz::classical::poly_monomial_mz_decide(&s)
        );
    }

    #[test]
    fn verdicts_round_trip_as_json(s in common::periodic_set(12, 30)) {
        let v = mz_witness_search(&s);
        let text = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(serde_json::from_str::<MZVerdict>(&text).unwrap(), v);
        let set_json = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<PeriodicSet>(&set_json).unwrap(), s);
    }

    #[test]
    fn membership_is_monomialwise(w in common::state(6, 5, 20), k in 2u64..=5, rmask in 1u64..32) {
        let l: Vec<u64> = (0..k).filter(|r| rmask >> r & 1 == 1).collect();
        let m = SubspaceSpec::eigenspace_union(k, l).unwrap();
        let each = w.terms().all(|(p, _)| {
            subspace_member(&m, &FockState::monomial(p.clone())).unwrap()
        });
        prop_assert_eq!(subspace_member(&m, &w).unwrap(), each);
    }

    #[test]
    fn probe_reports_round_trip(k in 2u64..=4, t_max in 1usize..=5) {
        let m = SubspaceSpec::eigenspace_union(k, [1]).unwrap();
        let r = radical_probe(engine(), &FockState::from_parts(&[1]), &m, t_max, &[-1]).unwrap();
        let back: ProbeReport = serde_json::from_value(r.to_json()).unwrap();
        prop_assert_eq!(&back, &r);
        for cx in &r.counterexamples {
            prop_assert!(!m.member(&parse_state(&cx.state).unwrap()).unwrap());
        }
    }
}

#[test]
fn random_sets_cover_every_verdict() {
    let sets = common::sample(common::periodic_set(12, 30), 200, 7);
    for want in [Verdict::MZ, Verdict::NotMZ, Verdict::Inapplicable] {
        assert!(sets.iter().any(|s| mz_witness_search(s).verdict == want), "{want} never drawn");
    }
    assert!(sets.iter().any(|s| mz_witness_search(s).witness_d.is_some()));
}
