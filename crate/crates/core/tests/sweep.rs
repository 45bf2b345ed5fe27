use cycloseq::oracle::{equivalence_sweep, Execution};

#[test]
fn closed_forms_match_enumeration_to_twelve_digits() {
    let report = equivalence_sweep(12, 4, 14, Execution::Parallel).unwrap();
    assert!(report.passed(), "{:?} {:?}", report.mismatches.first(), report.jump_sum_failures);
    assert_eq!(report.jump_sums_checked, (2..=14).map(|n| n / 2).sum::<usize>());
}
