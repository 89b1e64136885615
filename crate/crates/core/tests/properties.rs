mod common;

use common::{
    arb_class, arb_element, arb_integral_class, arb_integral_class_on, arb_model, element,
};
use fanoxc::chern::{
    chern_character, dual, euler_characteristic, rr_closed_form, twist, RRPolynomialInputs,
    SheafClass,
};
use fanoxc::chow::ThreefoldModel;
use fanoxc::instanton::{
    elementary_transform, hoppe_region, instanton_invariants, rank0_constraint_solver,
    serre_family, Rank0Constraint, Rank0Data, SerreFamilyParams,
};
use fanoxc::ledger::{
    bundled_ledger, emit_report, run_entries, ReportFormat, RunOptions, VerificationReport,
};
use fanoxc::rational::int;
use fanoxc::xcoh::line_cohomology_x;
use proptest::prelude::*;

fn arb_divisor(model: ThreefoldModel) -> impl Strategy<Value = fanoxc::chow::ChowElement> {
    (-6i64..=6, -6i64..=6).prop_map(move |(a, b)| model.divisor(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn reduction_is_confluent(m in arb_model(), i in 0u32..=4, j in 0u32..=4) {
        let (x, f) = (m.xi(), m.f());
        let left = &x.pow(i) * &f.pow(j);
        let right = &f.pow(j) * &x.pow(i);
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left, m.monomial(i, j));
    }

    #[test]
    fn degree_is_linear((_, a, b) in arb_model().prop_flat_map(|m| (Just(m), arb_element(m), arb_element(m))), l in -7i64..=7) {
        prop_assert_eq!((&a + &b.scale_int(l)).degree(), a.degree() + b.degree() * int(l));
    }

    #[test]
    fn only_top_monomials_have_degree(m in arb_model(), i in 0u32..=6, j in 0u32..=6) {
        if i + j != 3 {
            prop_assert_eq!(m.monomial(i, j).degree(), int(0));
        }
    }

    #[test]
    fn display_round_trips_through_parser((m, a) in arb_model().prop_flat_map(|m| (Just(m), arb_element(m)))) {
        let back = fanoxc::chow::parse_expression(&a.to_string(), &m).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn canonical_is_minus_tangent_c1(m in arb_model()) {
        prop_assert_eq!(m.canonical(), -&m.tangent_c1());
        prop_assert_eq!(m.canonical(), element(m, [0, -2, -1, 0, 0, 0]));
    }

    #[test]
    fn twists_compose((s, d1, d2) in arb_class().prop_flat_map(|s| { let m = s.model(); (Just(s), arb_divisor(m), arb_divisor(m)) })) {
        let stepwise = twist(&twist(&s, &d1).unwrap(), &d2).unwrap();
        prop_assert_eq!(stepwise, twist(&s, &(&d1 + &d2)).unwrap());
    }

    #[test]
    fn twist_multiplies_chern_character((s, d) in arb_class().prop_flat_map(|s| { let m = s.model(); (Just(s), arb_divisor(m)) })) {
        let line = chern_character(&SheafClass::line_bundle(&d).unwrap());
        prop_assert_eq!(chern_character(&twist(&s, &d).unwrap()), &chern_character(&s) * &line);
    }

    #[test]
    fn dual_is_an_involution(s in arb_class()) {
        prop_assert_eq!(dual(&dual(&s)), s);
    }

    #[test]
    fn chern_character_round_trips(s in arb_class()) {
        prop_assert_eq!(SheafClass::from_chern_character(s.rank(), &chern_character(&s)).unwrap(), s);
    }

    #[test]
    fn chi_is_additive((a, b) in arb_model().prop_flat_map(|m| (arb_integral_class_on(m), arb_integral_class_on(m)))) {
        let sum = euler_characteristic(&a.direct_sum(&b).unwrap()).unwrap();
        prop_assert_eq!(sum, euler_characteristic(&a).unwrap() + euler_characteristic(&b).unwrap());
    }

    #[test]
    fn chi_satisfies_serre_duality(s in arb_integral_class()) {
        let k = s.model().canonical();
        let dual_twist = twist(&dual(&s), &k).unwrap();
        prop_assert_eq!(euler_characteristic(&s).unwrap(), -euler_characteristic(&dual_twist).unwrap());
    }

    #[test]
    fn closed_form_matches_hrr_off_grid(alpha in -40i64..=40, beta in -40i64..=40, l1 in -12i64..=12, l2 in -12i64..=12, c in 0i64..=4) {
        let m = fanoxc::chow::make_model(c).unwrap();
        let e = SheafClass::orientable_rank2(m, alpha, beta);
        let hrr = euler_characteristic(&twist(&e, &m.divisor(l1, l2)).unwrap()).unwrap();
        prop_assert_eq!(hrr, rr_closed_form(&RRPolynomialInputs { alpha, beta, lambda1: l1, lambda2: l2, c }));
    }

    #[test]
    fn line_tables_match_hrr_and_duality(c in 0i64..=4, l1 in -12i64..=12, l2 in -12i64..=12) {
        let m = fanoxc::chow::make_model(c).unwrap();
        let t = line_cohomology_x(c, l1, l2).unwrap();
        let chi = euler_characteristic(&SheafClass::line_bundle(&m.divisor(l1, l2)).unwrap()).unwrap();
        if let Some(e) = t.euler_characteristic() {
            prop_assert_eq!(int(e), chi);
        }
        let d = line_cohomology_x(c, -2 - l1, -1 - l2).unwrap();
        if t.is_exact() && d.is_exact() {
            prop_assert_eq!(t.reversed(), d);
        }
    }

    #[test]
    fn charge_is_coherent(alpha in -30i64..=30, beta in -30i64..=30, c in 0i64..=4) {
        let e = instanton_invariants(alpha, beta, c).unwrap();
        let closed = rr_closed_form(&RRPolynomialInputs { alpha, beta, lambda1: -1, lambda2: -1, c });
        let m = e.model();
        let hrr = euler_characteristic(&twist(&e.sheaf_class(), &m.divisor(-1, -1)).unwrap()).unwrap();
        prop_assert_eq!(int(e.charge), -closed);
        prop_assert_eq!(int(e.charge), -hrr);
    }

    #[test]
    fn ext_gap_survives_transforms(alpha in 6i64..=30, beta in 2i64..=30, c in 0i64..=4, times in 0u32..=4) {
        let mut e = instanton_invariants(alpha, beta, c).unwrap();
        for _ in 0..times {
            e = elementary_transform(&e, &Rank0Data::twisted_line()).unwrap();
        }
        if let (Some(x1), Some(x2)) = (e.ext1, e.ext2) {
            prop_assert_eq!(x1 - x2, e.ext_gap());
        }
    }

    #[test]
    fn serre_family_gap(m in 1i64..=40, c in 0i64..=4) {
        let s = serre_family(SerreFamilyParams { m, c }).unwrap();
        if let (Some(x1), Some(x2)) = (s.instanton.ext1, s.instanton.ext2) {
            prop_assert_eq!(x1 - x2, s.instanton.ext_gap());
        }
    }

    #[test]
    fn hoppe_region_is_downward_closed(c in 0i64..=4, a0 in -6i64..=0, b0 in -12i64..=0) {
        let r = hoppe_region(c, (a0, a0 + 6), (b0, b0 + 12)).unwrap();
        for &(a, b) in &r.points {
            if b > b0 {
                prop_assert!(r.points.binary_search(&(a, b - 1)).is_ok());
            }
        }
        for a in a0..=a0 + 6 {
            for b in b0..=b0 + 12 {
                let inside = r.pairing.0 * a + r.pairing.1 * b <= -r.mu;
                prop_assert_eq!(inside, r.points.binary_search(&(a, b)).is_ok());
            }
        }
    }

    #[test]
    fn orientable_class_restricts_with_degree_two(c in 0i64..=4, alpha in -10i64..=10, beta in -10i64..=10) {
        let e = instanton_invariants(alpha, beta, c).unwrap();
        let m = e.model();
        let f2 = m.f().pow(2);
        prop_assert_eq!((e.sheaf_class().c1() * &f2).degree(), int(2));
    }
}

#[test]
fn solver_output_satisfies_constraints() {
    for window in [2, 5, 10, 25] {
        let r = rank0_constraint_solver(window).unwrap();
        assert!(Rank0Constraint::satisfied(r.eta, r.theta));
        assert!(2 * r.eta + r.theta + 1 >= 0 && r.eta >= 0 && 3 * r.eta + r.theta < 0);
        assert_eq!((r.eta, r.theta), (0, -1));
    }
}

#[test]
fn json_report_round_trips() {
    let report = run_entries(&bundled_ledger(), RunOptions::default());
    let bytes = emit_report(&report, ReportFormat::Json);
    let back: VerificationReport = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(back, report);
    assert_eq!(back.passed + back.failed + back.skipped, back.entries.len());
}

#[test]
fn json_report_keys_are_ordered() {
    let report = run_entries(
        &bundled_ledger(),
        RunOptions {
            parallel: false,
            record_timings: false,
        },
    );
    let text = String::from_utf8(emit_report(&report, ReportFormat::Json)).unwrap();
    let top: Vec<usize> = [
        "\"version\"",
        "\"passed\"",
        "\"failed\"",
        "\"skipped\"",
        "\"entries\"",
    ]
    .iter()
    .map(|k| text.find(k).unwrap())
    .collect();
    assert!(top.windows(2).all(|w| w[0] < w[1]));
    let first = &text[text.find("\"id\"").unwrap()..];
    let keys: Vec<usize> = [
        "\"id\"",
        "\"status\"",
        "\"citation\"",
        "\"expected\"",
        "\"computed\"",
        "\"micros\"",
    ]
    .iter()
    .map(|k| first.find(k).unwrap())
    .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn empty_report_is_valid_json() {
    let empty = VerificationReport::from_entries(Vec::new());
    let v: serde_json::Value =
        serde_json::from_slice(&emit_report(&empty, ReportFormat::Json)).unwrap();
    assert_eq!(v["passed"], 0);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["skipped"], 0);
    assert_eq!(v["entries"].as_array().unwrap().len(), 0);
}
