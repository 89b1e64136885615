use std::collections::{BTreeMap, BTreeSet};

use fanoxc::ledger::{
    bundled_ledger, parse_ledger, run_entries, RunOptions, Status, BUNDLED_LEDGER,
};

/// Every worked example the bundled ledger must reproduce, keyed by a
/// short description, with the entry that carries it.
const REQUIRED: [(&str, &str); 39] = [
    (
        "make_model c=2 relation, deg xi^3 = 2",
        "chow.make-model-c2-relation",
    ),
    (
        "make_model c=0, deg xi^3 = 4",
        "chow.make-model-c0-xi-cubed",
    ),
    ("xi*xi on X_2", "chow.mul-xi-xi-c2"),
    ("f*f*f = 0", "chow.mul-f-cubed"),
    ("deg xi^3 = 4 - c", "chow.degree-xi-cubed"),
    ("deg xi^2 f = 2", "chow.degree-xi2-f"),
    ("parse xi^2 on X_1", "chow.parse-xi-squared-c1"),
    ("Serre bundle twisted by 2f", "chern.twist-serre-bundle"),
    ("chi(E(-h))", "chern.chi-minus-h"),
    ("chi(E(-2xi-f)) = 5 - alpha", "chern.chi-alpha-witness"),
    ("chi(End E) from c1^2 - 4c2", "chern.endomorphism-chi"),
    ("closed form at (0, 0)", "chern.rr-constant-term"),
    ("closed form at (-1, -1)", "chern.rr-minus-h"),
    ("closed form at (-2, -1)", "chern.rr-alpha-witness"),
    ("O(-xi + 17f) is acyclic", "xcoh.line-lambda1-minus-one"),
    ("chi(O_M) = 1", "xcoh.chi-cubic"),
    ("restriction degree 3", "xcoh.restriction-degree-three"),
    ("restriction degree -1", "xcoh.restriction-degree-minus-one"),
    ("restriction degree -2", "xcoh.restriction-degree-minus-two"),
    ("normal bundle sections of M", "xcoh.normal-bundle-cubic"),
    ("normal bundle sections of L", "xcoh.normal-bundle-line"),
    ("(6, 2, 1) Ulrich", "instanton.ulrich-x1"),
    ("pullback charge (l-1)(l+3)", "instanton.pullback-charge-l2"),
    ("alpha >= 5", "instanton.alpha-bound"),
    ("c1 = 2xi + 3f is orientable", "instanton.orientable"),
    ("Serre family m=2, c=1", "instanton.serre-m2-c1"),
    ("Serre family m=3, c=0", "instanton.serre-m3-c0"),
    (
        "Serre family m=2, c=0 invalid",
        "instanton.serre-m2-c0-invalid",
    ),
    ("pullback l=1, c=2 Ulrich", "instanton.pullback-l1-c2"),
    ("pullback dimension identity", "instanton.pullback-identity"),
    ("transform along O_L(1)", "instanton.transform-line"),
    ("Hoppe c=1 (0, -4)", "instanton.hoppe-c1-inside"),
    ("Hoppe c=0 (1, -6)", "instanton.hoppe-c0-boundary"),
    ("Serre Ext dimension m=2", "instanton.serre-ext-m2"),
    ("Serre Ext dimension m=1", "instanton.serre-ext-m1"),
    ("rank-0 solver output", "instanton.rank0-solution"),
    ("rank-0 c3", "instanton.rank0-c3"),
    ("rank-0 twisted chi", "instanton.rank0-twisted-chi"),
    ("deg xi^3 for all five c", "chow.degree-xi-cubed"),
];

#[test]
fn bundled_ledger_covers_required_examples() {
    let ledger = bundled_ledger();
    assert!(
        ledger.entries.len() >= 40,
        "{} entries",
        ledger.entries.len()
    );
    let report = run_entries(
        &ledger,
        RunOptions {
            parallel: false,
            record_timings: false,
        },
    );
    let status: BTreeMap<&str, Status> = report
        .entries
        .iter()
        .map(|e| (e.id.as_str(), e.status))
        .collect();
    for (what, id) in REQUIRED {
        assert_eq!(status.get(id), Some(&Status::Pass), "{what}: {id}");
    }
}

#[test]
fn required_table_has_no_duplicate_descriptions() {
    let keys: BTreeSet<&str> = REQUIRED.iter().map(|(k, _)| *k).collect();
    assert_eq!(keys.len(), REQUIRED.len());
}

#[test]
fn every_entry_has_a_citation_and_unique_id() {
    let ledger = bundled_ledger();
    let ids: BTreeSet<&str> = ledger.entries.iter().map(|e| e.id.as_str()).collect();
    assert_eq!(ids.len(), ledger.entries.len());
    assert!(ledger.entries.iter().all(|e| !e.citation.trim().is_empty()));
}

#[test]
fn bundled_ledger_round_trips_through_json() {
    let ledger = bundled_ledger();
    let text = serde_json::to_string_pretty(&ledger).unwrap();
    assert_eq!(parse_ledger(&text).unwrap(), ledger);
    let original: serde_json::Value = serde_json::from_str(BUNDLED_LEDGER).unwrap();
    assert_eq!(serde_json::to_value(&ledger).unwrap(), original);
}

#[test]
fn skipped_entries_are_bounds_only() {
    let report = run_entries(&bundled_ledger(), RunOptions::default());
    for e in report
        .entries
        .iter()
        .filter(|e| e.status == Status::Skipped)
    {
        assert_eq!(e.computed["exact"], false, "{}", e.id);
    }
    assert_eq!(report.failed, 0);
}
