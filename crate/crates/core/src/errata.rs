//! Places where a printed formula or table entry disagrees with another
//! printed reading of the same quantity. Each inconsistency is evaluated
//! under every reading and settled by enumeration.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeffs::{appendix_matrix, c_general, AppendixKind, AppendixMatrix};
use crate::distribution::Scope;
use crate::error::Result;
use crate::exactmath::{binomial, choose, demoivre, BigNat, SequenceFamily};
use crate::oracle::{self, tableau, Execution};
use crate::pattern::Pattern;
use crate::patterncounts::count_distribution;

/// One way of reading an inconsistent formula, and how many checked cases it
/// got right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reading {
    pub label: &'static str,
    pub formula: &'static str,
    pub agreements: usize,
}

/// A case where the printed reading and the oracle part ways; `values` has
/// one entry per reading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub case: String,
    pub values: Vec<BigRational>,
    pub oracle: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The printed reading fails and the named reading matches everywhere.
    Misprint { adopted: &'static str },
    /// The printed reading matches the oracle everywhere.
    PrintedHolds,
    /// No reading matches everywhere.
    Unresolved,
}

impl Verdict {
    pub fn describe(&self) -> String {
        match self {
            Verdict::Misprint { adopted } => format!("misprint; adopt '{adopted}'"),
            Verdict::PrintedHolds => "printed reading holds".to_string(),
            Verdict::Unresolved => "unresolved".to_string(),
        }
    }
}

/// The first reading is always the printed one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub readings: Vec<Reading>,
    pub cases_checked: usize,
    pub witness: Option<Witness>,
    pub verdict: Verdict,
}

impl LedgerEntry {
    /// The reading the oracle confirmed, if any.
    pub fn adopted(&self) -> Option<&Reading> {
        match &self.verdict {
            Verdict::Misprint { adopted } => self.readings.iter().find(|r| r.label == *adopted),
            Verdict::PrintedHolds => self.readings.first(),
            Verdict::Unresolved => None,
        }
    }
}

struct Case {
    label: String,
    values: Vec<BigRational>,
    oracle: BigRational,
}

fn rational(value: BigNat) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

fn ratio(num: BigNat, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn settle(id: &'static str, description: &'static str, readings: &[(&'static str, &'static str)], cases: Vec<Case>) -> LedgerEntry {
    let mut out: Vec<Reading> = readings
        .iter()
        .map(|&(label, formula)| Reading { label, formula, agreements: 0 })
        .collect();
    let mut witness = None;
    for case in &cases {
        for (reading, value) in out.iter_mut().zip(&case.values) {
            if *value == case.oracle {
                reading.agreements += 1;
            }
        }
        if witness.is_none() && case.values[0] != case.oracle {
            witness = Some(Witness { case: case.label.clone(), values: case.values.clone(), oracle: case.oracle.clone() });
        }
    }
    let total = cases.len();
    let verdict = if out[0].agreements == total {
        Verdict::PrintedHolds
    } else if let Some(reading) = out[1..].iter().find(|r| r.agreements == total) {
        Verdict::Misprint { adopted: reading.label }
    } else {
        Verdict::Unresolved
    };
    if witness.is_none() {
        witness = cases
            .first()
            .map(|case| Witness { case: case.label.clone(), values: case.values.clone(), oracle: case.oracle.clone() });
    }
    LedgerEntry { id, description, readings: out, cases_checked: total, witness, verdict }
}

fn pattern(text: &str) -> Pattern {
    text.parse().expect("literal pattern")
}

fn families(from_len: usize, to_len: usize) -> impl Iterator<Item = SequenceFamily> {
    (from_len..=to_len).flat_map(SequenceFamily::all_of_length).filter(|f| !f.is_degenerate())
}

/// The worked `(4,4)` example's `001` row, printed as `2 56 12 9 0`.
fn t44_001_row(execution: Execution) -> Result<LedgerEntry> {
    let family = SequenceFamily::new(4, 4)?;
    let p = pattern("001");
    let shipped = count_distribution(family, &p)?;
    let oracle = oracle::pattern_distribution(Scope::Family(family), &p, execution)?;
    let printed = [2u32, 56, 12, 9, 0];
    let cases = (0..printed.len())
        .map(|l| Case {
            label: format!("(m,n)=(4,4) l={l}"),
            values: vec![rational(BigNat::from(printed[l])), rational(shipped.get(l))],
            oracle: rational(oracle.get(l)),
        })
        .collect();
    Ok(settle(
        "t44-001-row",
        "Column sums of the (01;001) table for four zeros and four ones; the printed row sums to 79 although there are 70 sequences.",
        &[("printed", "2, 56, 12, 9, 0"), ("column sums", "(N/n) sum_h c^4_{hl} C(4,h)")],
        cases,
    ))
}

/// The same example's joint table, whose corner cell is printed as 2 while
/// the displayed rule with `c^4_{40} = 4` gives 8.
fn t44_joint_corner(execution: Execution) -> Result<LedgerEntry> {
    let family = SequenceFamily::new(4, 4)?;
    let oracle = oracle::joint_distribution(family, &[pattern("01"), pattern("001")], execution)?;
    let mut cases = Vec::new();
    for h in 1..=4usize {
        for l in 0..=4usize {
            let with_diagonal = if h == 4 && l == 0 { BigNat::from(4u32) } else { c_general(0, 4, h, l) };
            let rule = |c: BigNat| ratio(c * binomial(4, h as i64) * 8u32, 4);
            cases.push(Case {
                label: format!("(m,n)=(4,4) h={h} l={l}"),
                values: vec![rule(with_diagonal), rule(c_general(0, 4, h, l))],
                oracle: rational(oracle.get(&[h, l])),
            });
        }
    }
    Ok(settle(
        "t44-joint-corner",
        "The (01;001) table for four zeros and four ones is built as (N/n) c^4_{hl} C(4,h) from a c^4 matrix whose corner c^4_{40} is 4, yet the table prints 2 there.",
        &[("diagonal i", "c^i_{i0} = i"), ("diagonal 1", "c^i_{i0} = 1 (one tableau)")],
        cases,
    ))
}

/// Corner `m <= 2h` of the `(01;001;0001)` table.
fn triple_corner_sign(execution: Execution) -> Result<LedgerEntry> {
    let pats = [pattern("01"), pattern("001"), pattern("0001")];
    let mut cases = Vec::new();
    for family in families(5, 10) {
        let (m, n, len) = (family.zeros(), family.ones(), family.len());
        let oracle = oracle::joint_distribution(family, &pats, execution)?;
        for h in 1..=m.min(n) {
            if m > 2 * h {
                continue;
            }
            let (m_, n_, h_) = (m as i64, n as i64, h as i64);
            let lead = binomial(n as u64, m_ - h_) * len;
            cases.push(Case {
                label: format!("(m,n)=({m},{n}) h={h}"),
                values: vec![
                    ratio(&lead * choose(n_ - m_ - h_, 2 * h_ - m_), n),
                    ratio(lead * choose(n_ - m_ + h_, 2 * h_ - m_), n),
                ],
                oracle: rational(oracle.get(&[h, m - h, 0])),
            });
        }
    }
    Ok(settle(
        "triple-corner-sign",
        "Count of sequences with h strings 01, m-h strings 001 and no 0001, in the corner m <= 2h.",
        &[("printed", "(N/n) C(n, m-h) C(n-m-h, 2h-m)"), ("sign fixed", "(N/n) C(n, m-h) C(n-m+h, 2h-m)")],
        cases,
    ))
}

#[derive(Clone, Copy)]
enum ChainReading {
    Printed,
    Reversed,
    ReversedWithFactor,
}

/// `T_l(0^{s+2} 1)` as the sum over `h` and chains, under one reading.
fn deep_chain(reading: ChainReading, family: SequenceFamily, s: usize, l: usize) -> BigRational {
    let (m, n) = (family.zeros() as i64, family.ones() as i64);
    let l_ = l as i64;
    let top = (m - (s as i64 + 1) * l_).min(n);
    let mut sum = BigNat::zero();
    for h in l_..=top {
        let (high, low) = match reading {
            ChainReading::Printed => (m, h),
            _ => (h, l_),
        };
        let mut chain = vec![0i64; s];
        walk_chains(&mut chain, 0, high, low, &mut |chain| {
            let used: i64 = chain.iter().sum();
            let mut term = BigNat::one();
            for t in 0..s.saturating_sub(1) {
                term *= choose(h - chain[t + 1], chain[t] - chain[t + 1]);
            }
            if let ChainReading::ReversedWithFactor = reading {
                term *= choose(h - l_, chain[s - 1] - l_);
            }
            term *= choose(n - l_, h - l_) * choose(m - h - used - 1, l_ - 1);
            sum += term;
        });
    }
    let len = family.len();
    ratio(sum * binomial(n as u64, l_) * len, n as usize)
}

fn walk_chains(chain: &mut Vec<i64>, at: usize, high: i64, low: i64, visit: &mut impl FnMut(&[i64])) {
    if at == chain.len() {
        visit(chain);
        return;
    }
    let mut value = high;
    while value >= low {
        chain[at] = value;
        walk_chains(chain, at + 1, value, low, visit);
        value -= 1;
    }
}

fn deep_chain_direction(execution: Execution) -> Result<LedgerEntry> {
    let mut cases = Vec::new();
    for (s, text) in [(1usize, "0001"), (2, "00001")] {
        let p = pattern(text);
        for family in families(p.len() + 1, 10) {
            let oracle = oracle::pattern_distribution(Scope::Family(family), &p, execution)?;
            for l in 1..=family.zeros() / (s + 2) {
                cases.push(Case {
                    label: format!("{text} (m,n)=({},{}) l={l}", family.zeros(), family.ones()),
                    values: vec![
                        deep_chain(ChainReading::Printed, family, s, l),
                        deep_chain(ChainReading::Reversed, family, s, l),
                        deep_chain(ChainReading::ReversedWithFactor, family, s, l),
                    ],
                    oracle: rational(oracle.get(l)),
                });
            }
        }
    }
    Ok(settle(
        "deep-chain-direction",
        "Count of sequences with l strings 0^{s+2}1 written as a sum over h and a chain of intermediate string counts l', ..., l^(s).",
        &[
            ("printed", "chain l' >= ... >= l^(s) >= h, product C(h-l_{t+1}, l_t-l_{t+1})"),
            ("chain reversed", "chain h >= l' >= ... >= l^(s) >= l, same product"),
            ("chain reversed, closing factor", "chain h >= l' >= ... >= l^(s) >= l, product times C(h-l, l^(s)-l)"),
        ],
        cases,
    ))
}

fn prefactor_001(execution: Execution) -> Result<LedgerEntry> {
    let p = pattern("001");
    let mut cases = Vec::new();
    for family in families(4, 10) {
        let (m, n, len) = (family.zeros(), family.ones(), family.len());
        let oracle = oracle::pattern_distribution(Scope::Family(family), &p, execution)?;
        for l in 0..=m / 2 {
            let mut per_term = BigRational::zero();
            let mut summed = BigNat::zero();
            for h in 1..=m.min(n) {
                let weight = c_general(0, m, h, l) * binomial(n as u64, h as i64);
                per_term += ratio(&weight * len, h);
                summed += weight;
            }
            cases.push(Case {
                label: format!("(m,n)=({m},{n}) l={l}"),
                values: vec![per_term, ratio(summed * len, n)],
                oracle: rational(oracle.get(l)),
            });
        }
    }
    Ok(settle(
        "001-prefactor",
        "Count of sequences with l strings 001 after summing the joint count over h; the printed right-hand side keeps N/h outside the sum over h.",
        &[("printed", "(N/h) sum_h c^m_{hl} C(n,h), N/h read per term"), ("N/n outside", "(N/n) sum_h c^m_{hl} C(n,h)")],
        cases,
    ))
}

fn prefactor_01(execution: Execution) -> Result<LedgerEntry> {
    let p = pattern("01");
    let mut cases = Vec::new();
    for family in families(3, 10) {
        let (m, n, len) = (family.zeros(), family.ones(), family.len());
        let oracle = oracle::pattern_distribution(Scope::Family(family), &p, execution)?;
        for h in 1..=m.min(n) {
            let loops = demoivre(h as u64, m as u64) * demoivre(h as u64, n as u64) * len;
            cases.push(Case {
                label: format!("(m,n)=({m},{n}) h={h}"),
                values: vec![ratio(loops.clone(), n), ratio(loops, h)],
                oracle: rational(oracle.get(h)),
            });
        }
    }
    Ok(settle(
        "01-prefactor",
        "Count of sequences with h strings 01 written with two De Moivre numbers.",
        &[("printed", "(N/n) M^h_m M^h_n"), ("N/h", "(N/h) M^h_m M^h_n")],
        cases,
    ))
}

/// The appendix shorthand for the two-column weight coefficients.
fn appendix_weight_formula() -> LedgerEntry {
    let mut cases = Vec::new();
    for i in 1..=10usize {
        for k in 1..i {
            for j in 1..=i - k {
                let (i_, j_, k_) = (i as i64, j as i64, k as i64);
                let mut printed = BigNat::zero();
                let mut fixed = BigNat::zero();
                for f in 0..=j_ {
                    let shared = binomial(j as u64, j_ - f) * choose(k_ - 1, f - 1);
                    printed += choose(j_ - f, i_ - (k_ + 2 * f) - (j_ - k_)) * &shared;
                    fixed += choose(j_ - f, i_ - k_ - j_ - f) * shared;
                }
                cases.push(Case {
                    label: format!("i={i} g={k} j={j}"),
                    values: vec![rational(printed), rational(fixed)],
                    oracle: rational(tableau::weight_count(1, i, k, j)),
                });
            }
        }
    }
    settle(
        "appendix-weight-formula",
        "Tableaux of weight i and height j left with weight g after deleting two columns, as rewritten for the appendix tables.",
        &[
            ("printed", "sum_f C(j-f, i-(g+2f)-(j-g)) C(j, j-f) C(g-1, f-1)"),
            ("lower index fixed", "sum_f C(j-f, i-g-j-f) C(j, j-f) C(g-1, f-1)"),
        ],
        cases,
    )
}

/// The transposed Pascal matrix printed beside the `c'` construction, rows
/// `r = 1..=5`, columns `s = 1..=7`, blanks as 0.
const PRINTED_PASCAL: [[u32; 7]; 5] = [
    [1, 2, 3, 4, 5, 6, 7],
    [0, 1, 3, 6, 10, 15, 21],
    [0, 0, 1, 4, 10, 20, 35],
    [0, 0, 0, 1, 5, 16, 35],
    [0, 0, 0, 0, 1, 6, 21],
];

fn pascal_cell() -> LedgerEntry {
    let mut cases = Vec::new();
    for (r, row) in PRINTED_PASCAL.iter().enumerate() {
        for (s, &printed) in row.iter().enumerate() {
            let (r, s) = (r + 1, s + 1);
            let subsets = (0u64..1 << s).filter(|w| w.count_ones() as usize == r).count();
            cases.push(Case {
                label: format!("r={r} s={s}"),
                values: vec![rational(BigNat::from(printed)), rational(binomial(s as u64, r as i64))],
                oracle: rational(BigNat::from(subsets)),
            });
        }
    }
    settle(
        "pascal-cell",
        "Entries C(s, r) of the transposed Pascal matrix used to build c' from c.",
        &[("printed", "table as printed"), ("binomial", "C(s, r)")],
        cases,
    )
}

/// Every inconsistency, each settled by enumeration. Families go up to ten
/// digits.
pub fn typo_ledger(execution: Execution) -> Result<Vec<LedgerEntry>> {
    Ok(vec![
        t44_001_row(execution)?,
        triple_corner_sign(execution)?,
        deep_chain_direction(execution)?,
        prefactor_001(execution)?,
        t44_joint_corner(execution)?,
        prefactor_01(execution)?,
        appendix_weight_formula(),
        pascal_cell(),
    ])
}

/// A cell of the printed coefficient matrices that differs from the computed
/// matrix. `printed` is `None` for a blank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppendixMisprint {
    pub kind: AppendixKind,
    pub fixed: usize,
    pub row: usize,
    pub col: usize,
    pub printed: Option<u64>,
    pub tableau: BigNat,
}

/// Direct tableau count for a cell, with the diagonal read as one tableau.
pub fn tableau_cell(kind: AppendixKind, fixed: usize, row: usize, col: usize) -> BigNat {
    match kind {
        AppendixKind::CByK => tableau::dimension_count(0, row, col, fixed),
        AppendixKind::CByI => tableau::dimension_count(0, fixed, row, col),
        AppendixKind::CPrimeByK => tableau::dimension_count(1, row, col, fixed),
        AppendixKind::CPrimeWeight => tableau::weight_count(1, row, fixed, col),
    }
}

/// The known misprints of the printed coefficient matrices.
///
/// The `c'` matrix for dimension 0 prints only its `j = i - 1` diagonal; every
/// other nonzero cell (`C(j, i-j)` for `i/2 <= j <= i`) is blank.
pub fn appendix_misprints() -> Vec<AppendixMisprint> {
    let mut cells: Vec<(AppendixKind, usize, usize, usize, Option<u64>)> = vec![
        (AppendixKind::CByI, 6, 3, 2, Some(5)),
        (AppendixKind::CPrimeWeight, 2, 9, 4, Some(30)),
        (AppendixKind::CPrimeWeight, 2, 9, 5, Some(50)),
        (AppendixKind::CPrimeWeight, 3, 9, 3, Some(20)),
    ];
    for i in 1..=AppendixKind::CPrimeByK.printed_extent() {
        for j in i.div_ceil(2)..=i.min(11) {
            if j + 1 != i {
                cells.push((AppendixKind::CPrimeByK, 0, i, j, None));
            }
        }
    }
    cells
        .into_iter()
        .map(|(kind, fixed, row, col, printed)| AppendixMisprint {
            kind,
            fixed,
            row,
            col,
            printed,
            tableau: tableau_cell(kind, fixed, row, col),
        })
        .collect()
}

/// The printed coefficient matrices, in the layout of
/// [`crate::coeffs::render_matrix`].
pub const PRINTED_COEFFICIENTS: &str = include_str!("../data/printed_coefficients.txt");

/// A printed cell that differs from the computed matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellMismatch {
    pub kind: AppendixKind,
    pub fixed: usize,
    pub row: usize,
    pub col: usize,
    pub printed: BigNat,
    pub computed: BigNat,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AppendixAudit {
    pub matrices: usize,
    pub cells_checked: usize,
    /// Every mismatch, explained or not.
    pub mismatches: Vec<CellMismatch>,
    /// Mismatches missing from [`appendix_misprints`].
    pub unexplained: Vec<CellMismatch>,
    /// Registry entries that the printed data does not bear out.
    pub stale: Vec<AppendixMisprint>,
    /// Registry entries whose tableau count differs from the computed cell.
    pub oracle_disagreements: Vec<AppendixMisprint>,
}

impl AppendixAudit {
    pub fn clean(&self) -> bool {
        self.unexplained.is_empty() && self.stale.is_empty() && self.oracle_disagreements.is_empty()
    }
}

/// Compares printed matrices with the computed ones and with the misprint
/// registry.
pub fn audit_appendix(printed: &[AppendixMatrix]) -> AppendixAudit {
    let registry = appendix_misprints();
    let mut audit = AppendixAudit { matrices: printed.len(), ..AppendixAudit::default() };
    let mut seen = Vec::new();
    for matrix in printed {
        let extent = matrix.row_labels.iter().copied().max().unwrap_or(0).max(matrix.kind.printed_extent());
        let computed = appendix_matrix(matrix.kind, matrix.fixed_index, extent);
        for (row, cells) in matrix.row_labels.iter().zip(&matrix.rows) {
            for (col, cell) in matrix.col_labels.iter().zip(cells) {
                audit.cells_checked += 1;
                let value = computed.at(*row, *col).cloned().unwrap_or_default();
                if *cell == value {
                    continue;
                }
                let mismatch = CellMismatch {
                    kind: matrix.kind,
                    fixed: matrix.fixed_index,
                    row: *row,
                    col: *col,
                    printed: cell.clone(),
                    computed: value,
                };
                let entry = registry.iter().position(|e| {
                    e.kind == mismatch.kind && e.fixed == mismatch.fixed && e.row == mismatch.row && e.col == mismatch.col
                });
                match entry {
                    Some(index) if BigNat::from(registry[index].printed.unwrap_or(0)) == mismatch.printed => {
                        seen.push(index)
                    }
                    _ => audit.unexplained.push(mismatch.clone()),
                }
                audit.mismatches.push(mismatch);
            }
        }
    }
    for (index, entry) in registry.iter().enumerate() {
        let covered = printed.iter().any(|m| m.kind == entry.kind && m.fixed_index == entry.fixed);
        if covered && !seen.contains(&index) {
            audit.stale.push(entry.clone());
        }
        let computed = appendix_matrix(entry.kind, entry.fixed, entry.row.max(entry.kind.printed_extent()));
        if computed.at(entry.row, entry.col) != Some(&entry.tableau) {
            audit.oracle_disagreements.push(entry.clone());
        }
    }
    audit
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_verdicts() {
        let ledger = typo_ledger(Execution::Parallel).unwrap();
        let verdict = |id: &str| ledger.iter().find(|e| e.id == id).unwrap().verdict.clone();
        assert_eq!(verdict("t44-001-row"), Verdict::Misprint { adopted: "column sums" });
        assert_eq!(verdict("triple-corner-sign"), Verdict::Misprint { adopted: "sign fixed" });
        assert_eq!(verdict("deep-chain-direction"), Verdict::Misprint { adopted: "chain reversed, closing factor" });
        assert_eq!(verdict("001-prefactor"), Verdict::Misprint { adopted: "N/n outside" });
        assert_eq!(verdict("t44-joint-corner"), Verdict::Misprint { adopted: "diagonal 1" });
        assert_eq!(verdict("01-prefactor"), Verdict::Misprint { adopted: "N/h" });
        assert_eq!(verdict("appendix-weight-formula"), Verdict::Misprint { adopted: "lower index fixed" });
        assert_eq!(verdict("pascal-cell"), Verdict::Misprint { adopted: "binomial" });
    }

    #[test]
    fn witnesses() {
        let ledger = typo_ledger(Execution::Parallel).unwrap();
        let witness = |id: &str| ledger.iter().find(|e| e.id == id).unwrap().witness.clone().unwrap();
        let int = |v: i64| BigRational::from_integer(BigInt::from(v));
        let row = witness("t44-001-row");
        assert_eq!((row.values[0].clone(), row.oracle.clone()), (int(9), int(0)));
        let corner = witness("triple-corner-sign");
        assert_eq!(corner.values[0], int(0));
        let prefactor = witness("001-prefactor");
        assert!(prefactor.values[0] != prefactor.oracle);
        let all = ledger.iter().find(|e| e.id == "001-prefactor").unwrap();
        assert!(all.cases_checked > 50);
    }

    #[test]
    fn misprints_are_tableau_counts() {
        let list = appendix_misprints();
        let find = |kind, fixed, row, col| {
            list.iter().find(|c| c.kind == kind && c.fixed == fixed && c.row == row && c.col == col).unwrap().tableau.clone()
        };
        assert_eq!(find(AppendixKind::CByI, 6, 3, 2), BigNat::from(6u32));
        assert_eq!(find(AppendixKind::CPrimeWeight, 2, 9, 4), BigNat::from(24u32));
        assert_eq!(find(AppendixKind::CPrimeWeight, 2, 9, 5), BigNat::from(30u32));
        assert_eq!(find(AppendixKind::CPrimeWeight, 3, 9, 3), BigNat::from(10u32));
        assert_eq!(find(AppendixKind::CPrimeByK, 0, 4, 2), BigNat::from(1u32));
    }
}
