use cycloseq::errata::{typo_ledger, Verdict};
use cycloseq::oracle::{self, Execution};
use cycloseq::patterncounts::{count_distribution, joint_01_001, triple_01_001_0001};
use cycloseq::{Pattern, Scope, SequenceFamily};

fn pattern(text: &str) -> Pattern {
    text.parse().unwrap()
}

fn families(from: usize, to: usize) -> impl Iterator<Item = SequenceFamily> {
    (from..=to).flat_map(SequenceFamily::all_of_length).filter(|f| !f.is_degenerate())
}

#[test]
fn every_entry_has_a_verdict_backed_by_all_cases() {
    let ledger = typo_ledger(Execution::Parallel).unwrap();
    let ids: Vec<&str> = ledger.iter().map(|e| e.id).collect();
    for required in ["t44-001-row", "triple-corner-sign", "deep-chain-direction", "001-prefactor"] {
        assert!(ids.contains(&required), "{required}");
    }
    for entry in &ledger {
        assert!(matches!(entry.verdict, Verdict::Misprint { .. }), "{}: {:?}", entry.id, entry.verdict);
        let adopted = entry.adopted().unwrap();
        assert_eq!(adopted.agreements, entry.cases_checked, "{}", entry.id);
        assert!(entry.readings[0].agreements < entry.cases_checked, "{}", entry.id);
        let witness = entry.witness.as_ref().unwrap();
        assert_ne!(witness.values[0], witness.oracle, "{}", entry.id);
    }
}

#[test]
fn shipped_001_follows_the_verdicts() {
    let family = SequenceFamily::new(4, 4).unwrap();
    let dist = count_distribution(family, &pattern("001")).unwrap();
    let row: Vec<u64> = (0..=4).map(|l| dist.get(l).try_into().unwrap()).collect();
    assert_eq!(row, vec![2, 56, 12, 0, 0]);
    let joint = joint_01_001(family).unwrap();
    assert_eq!(joint.get(&[4, 0]), 2u32.into());
    assert_eq!(joint.marginal(1), dist);
}

#[test]
fn shipped_triple_table_matches_enumeration() {
    let pats = [pattern("01"), pattern("001"), pattern("0001")];
    for family in families(5, 10) {
        let closed = triple_01_001_0001(family).unwrap();
        let oracle = oracle::joint_distribution(family, &pats, Execution::Parallel).unwrap();
        assert_eq!(closed.entries().iter().filter(|(_, c)| **c != 0u32.into()).count(),
                   oracle.entries().iter().filter(|(_, c)| **c != 0u32.into()).count(), "{family:?}");
        for (cell, count) in oracle.entries() {
            assert_eq!(closed.get(cell), *count, "{family:?} {cell:?}");
        }
    }
}

#[test]
fn shipped_deep_runs_match_enumeration() {
    for text in ["001", "0001", "00001", "10000", "11110"] {
        let p = pattern(text);
        for family in families(p.len() + 1, 11) {
            let closed = count_distribution(family, &p).unwrap();
            let oracle = oracle::pattern_distribution(Scope::Family(family), &p, Execution::Parallel).unwrap();
            assert_eq!(closed, oracle, "{text} {family:?}");
        }
    }
}
