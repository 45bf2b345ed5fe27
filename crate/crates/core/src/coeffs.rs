//! Column-deletion coefficients of Young-De Moivre tableaux.
//!
//! A tableau is a composition of `i` into `j` ordered positive parts. Deleting
//! its first `s + 1` columns leaves a residual tableau with some number `k` of
//! surviving rows (its dimension) and some residual weight `g`. The
//! coefficients below count, over all `M^j_i` tableaux, how often each
//! dimension or weight occurs:
//!
//! * `c^i_{jk}` (one column) and `c'^i_{jk}` (two columns) by dimension;
//! * `c^(s)i_{jk}` for any depth;
//! * `c^(s)ig_j` by weight.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{CountError, Result};
use crate::exactmath::{binomial, choose, demoivre, exact_div, BigNat};

/// How to read the diagonal `c^i_{i0}`.
///
/// The defining formula sets `c^i_{ik} = i δ_{0k}`, which keeps the row sums
/// equal to `M^j_i`. Counting tableaux instead gives 1: the single tableau of
/// `i` ones loses everything with its first column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    Formula,
    Tableau,
}

/// Calls `visit` with every chain `top >= f_1 >= ... >= f_len >= bottom`.
fn for_each_chain(len: usize, top: usize, bottom: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(len: usize, top: usize, bottom: usize, chain: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if chain.len() == len {
            visit(chain);
            return;
        }
        if top < bottom {
            return;
        }
        for f in (bottom..=top).rev() {
            chain.push(f);
            go(len, f, bottom, chain, visit);
            chain.pop();
        }
    }
    go(len, top, bottom, &mut Vec::with_capacity(len), visit);
}

/// `C(top, f_1) C(f_1, f_2) ... C(f_{len-1}, f_len)`.
fn chain_product(top: usize, chain: &[usize]) -> BigNat {
    let mut product = BigNat::one();
    let mut above = top;
    for &f in chain {
        product *= binomial(above as u64, f as i64);
        above = f;
    }
    product
}

/// The dimension-indexed coefficient `c^i_{jk}` with the formula convention.
pub fn c_coeff(i: usize, j: usize, k: usize) -> BigNat {
    c_coeff_with(Convention::Formula, i, j, k)
}

/// `c^i_{jk} = (k / (i - j)) C(j, k) C(i - j, k)` for `j < i`.
pub fn c_coeff_with(convention: Convention, i: usize, j: usize, k: usize) -> BigNat {
    if j > i {
        return BigNat::zero();
    }
    if j == i {
        return match (k, convention) {
            (0, Convention::Formula) => BigNat::from(i),
            (0, Convention::Tableau) => BigNat::one(),
            _ => BigNat::zero(),
        };
    }
    if k == 0 {
        return BigNat::zero();
    }
    let numerator = BigNat::from(k) * binomial(j as u64, k as i64) * binomial((i - j) as u64, k as i64);
    exact_div(&numerator, &BigNat::from(i - j), "c coefficient").expect("k C(i-j, k) is divisible by i-j")
}

/// Same values as [`c_coeff`], stepping `c_{k+1} = c_k (j-k)(i-j-k) / (k (k+1))`
/// up from `c^i_{j1} = j`.
pub fn c_coeff_by_recurrence(i: usize, j: usize, k: usize) -> BigNat {
    if j >= i || k == 0 {
        return c_coeff(i, j, k);
    }
    if k > j.min(i - j) {
        return BigNat::zero();
    }
    let mut value = BigNat::from(j);
    for step in 1..k {
        value *= (j - step) * (i - j - step);
        value /= step * (step + 1);
    }
    value
}

/// Two deleted columns, by dimension.
///
/// For `k > 0`, `sum_f (k / (i-j-f)) C(j,f) C(f,k) C(i-j-f,k)`; for `k = 0`,
/// `C(j, i-j)` when `i <= 2j`.
pub fn c_prime(i: usize, j: usize, k: usize) -> BigNat {
    if j > i {
        return BigNat::zero();
    }
    let rest = i - j;
    if k == 0 {
        return if i <= 2 * j { binomial(j as u64, rest as i64) } else { BigNat::zero() };
    }
    let mut sum = BigNat::zero();
    for f in k..=j.min(rest.saturating_sub(k)) {
        let numerator = BigNat::from(k)
            * binomial(j as u64, f as i64)
            * binomial(f as u64, k as i64)
            * binomial((rest - f) as u64, k as i64);
        sum += exact_div(&numerator, &BigNat::from(rest - f), "c' coefficient").expect("integral term");
    }
    sum
}

/// `s + 1` deleted columns, by dimension: the sum over chains
/// `j >= f_1 >= ... >= f_s >= k` of `C(j,f_1) ... C(f_s,k) M^k_{i-j-f_1-...-f_s}`.
///
/// At `k = 0` only chains exhausting the weight contribute. Depth 0 gives
/// [`c_coeff_with`] under the tableau convention and depth 1 gives [`c_prime`].
pub fn c_general(s: usize, i: usize, j: usize, k: usize) -> BigNat {
    if j > i {
        return BigNat::zero();
    }
    let rest = i - j;
    let mut sum = BigNat::zero();
    for_each_chain(s, j, k, &mut |chain| {
        let used: usize = chain.iter().sum();
        if used > rest {
            return;
        }
        let last = chain.last().copied().unwrap_or(j);
        let term = chain_product(j, chain) * binomial(last as u64, k as i64) * demoivre(k as u64, (rest - used) as u64);
        sum += term;
    });
    sum
}

/// Tableaux of weight `m` and height `h` whose residual weight after deleting
/// `s + 1` columns is `g`.
pub(crate) fn weight_count(s: usize, m: usize, g: usize, h: usize) -> BigNat {
    if h > m || g > m - h {
        return BigNat::zero();
    }
    // The first column always removes h; deeper columns remove f_1, ..., f_s.
    let target = m - h - g;
    let mut sum = BigNat::zero();
    for_each_chain(s, h, 0, &mut |chain| {
        if chain.iter().sum::<usize>() != target {
            return;
        }
        let last = chain.last().copied().unwrap_or(h);
        let survivors: BigNat = (0..=last.min(g))
            .map(|rows| binomial(last as u64, rows as i64) * demoivre(rows as u64, g as u64))
            .sum();
        sum += chain_product(h, chain) * survivors;
    });
    sum
}

/// Weight-indexed coefficient `c^(s)mg_h`.
///
/// Depth 0 returns `C(m-1, g)`, which does not depend on `h`: it is the
/// number of tableaux of weight `m`, over every height, left with weight `g`.
/// Depth 1 uses
/// `(1/g) sum_l l C(h,l) C(g,l) C(h-l, m-g-h-l)` (or `C(h, m-h)` at `g = 0`);
/// deeper levels sum `k C(h,f_1) ... C(f_s,k) C(g,k) / g` over chains with
/// `f_1 + ... + f_s = m - h - g`.
pub fn c_weight(s: usize, m: usize, g: usize, h: usize) -> BigNat {
    match s {
        0 => {
            if m == 0 {
                BigNat::from(u8::from(g == 0))
            } else {
                binomial((m - 1) as u64, g as i64)
            }
        }
        1 => c_prime_weight(m, g, h),
        _ => c_deep_weight(s, m, g, h),
    }
}

fn c_prime_weight(m: usize, g: usize, h: usize) -> BigNat {
    if h > m {
        return BigNat::zero();
    }
    if g == 0 {
        return if m <= 2 * h { binomial(h as u64, (m - h) as i64) } else { BigNat::zero() };
    }
    let mut sum = BigNat::zero();
    for l in 1..=h.min(g) {
        let below = m as i64 - g as i64 - h as i64 - l as i64;
        sum += BigNat::from(l)
            * binomial(h as u64, l as i64)
            * binomial(g as u64, l as i64)
            * choose((h - l) as i64, below);
    }
    exact_div(&sum, &BigNat::from(g), "c' weight coefficient").expect("integral sum")
}

fn c_deep_weight(s: usize, m: usize, g: usize, h: usize) -> BigNat {
    if h > m || g > m - h {
        return BigNat::zero();
    }
    let target = m - h - g;
    let mut sum = BigNat::zero();
    for_each_chain(s, h, 0, &mut |chain| {
        if chain.iter().sum::<usize>() != target {
            return;
        }
        let base = chain_product(h, chain);
        if g == 0 {
            sum += base;
            return;
        }
        let last = chain[chain.len() - 1];
        for k in 1..=last.min(g) {
            sum += &base * BigNat::from(k) * binomial(last as u64, k as i64) * binomial(g as u64, k as i64);
        }
    });
    if g == 0 {
        sum
    } else {
        exact_div(&sum, &BigNat::from(g), "weight coefficient").expect("integral sum")
    }
}

/// The four matrix families of the coefficient appendix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AppendixKind {
    /// `c^i_{jk}` for fixed `k`: rows `i`, columns `j`.
    CByK,
    /// `c^i_{jk}` for fixed `i`: rows `j`, columns `k`.
    CByI,
    /// `c'^i_{jk}` for fixed `k`: rows `i`, columns `j`.
    CPrimeByK,
    /// `c'^{ig}_j` for fixed `g`: rows `i`, columns `j`.
    CPrimeWeight,
}

impl AppendixKind {
    pub const ALL: [AppendixKind; 4] =
        [AppendixKind::CByK, AppendixKind::CByI, AppendixKind::CPrimeByK, AppendixKind::CPrimeWeight];

    pub fn name(&self) -> &'static str {
        match self {
            AppendixKind::CByK => "c_by_k",
            AppendixKind::CByI => "c_by_i",
            AppendixKind::CPrimeByK => "cprime_by_k",
            AppendixKind::CPrimeWeight => "cprime_weight",
        }
    }

    /// Fixed indices of the printed set.
    pub fn printed_fixed(&self) -> std::ops::RangeInclusive<usize> {
        match self {
            AppendixKind::CByK => 0..=5,
            AppendixKind::CByI => 3..=10,
            AppendixKind::CPrimeByK | AppendixKind::CPrimeWeight => 0..=3,
        }
    }

    /// Last row label of the printed matrices.
    pub fn printed_extent(&self) -> usize {
        match self {
            AppendixKind::CByK | AppendixKind::CPrimeByK => 12,
            AppendixKind::CByI | AppendixKind::CPrimeWeight => 10,
        }
    }

    fn cell(&self, fixed: usize, row: usize, col: usize) -> BigNat {
        match self {
            AppendixKind::CByK => c_coeff(row, col, fixed),
            AppendixKind::CByI => c_coeff(fixed, row, col),
            AppendixKind::CPrimeByK => c_prime(row, col, fixed),
            AppendixKind::CPrimeWeight => c_weight(1, row, fixed, col),
        }
    }

    fn columns(&self, fixed: usize, extent: usize) -> Vec<usize> {
        match self {
            AppendixKind::CByK => (1..=extent).collect(),
            AppendixKind::CByI => (0..=5.max(fixed / 2)).collect(),
            AppendixKind::CPrimeByK | AppendixKind::CPrimeWeight => (1..extent).collect(),
        }
    }
}

impl fmt::Display for AppendixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AppendixKind {
    type Err = CountError;

    fn from_str(s: &str) -> Result<Self> {
        AppendixKind::ALL
            .into_iter()
            .find(|kind| kind.name() == s)
            .ok_or_else(|| CountError::Domain(format!("unknown appendix matrix kind '{s}'")))
    }
}

/// One coefficient matrix. Zero cells are kept as zeros; only a human
/// rendering shows them blank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppendixMatrix {
    pub kind: AppendixKind,
    pub fixed_index: usize,
    pub row_labels: Vec<usize>,
    pub col_labels: Vec<usize>,
    pub rows: Vec<Vec<BigNat>>,
}

impl AppendixMatrix {
    /// Value at the given row and column labels.
    pub fn at(&self, row: usize, col: usize) -> Option<&BigNat> {
        let r = self.row_labels.iter().position(|&x| x == row)?;
        let c = self.col_labels.iter().position(|&x| x == col)?;
        Some(&self.rows[r][c])
    }
}

/// A single matrix with rows labelled `1..=extent`.
pub fn appendix_matrix(kind: AppendixKind, fixed: usize, extent: usize) -> AppendixMatrix {
    let row_labels: Vec<usize> = (1..=extent).collect();
    let col_labels = kind.columns(fixed, extent);
    let rows = row_labels
        .par_iter()
        .map(|&row| col_labels.iter().map(|&col| kind.cell(fixed, row, col)).collect())
        .collect();
    AppendixMatrix { kind, fixed_index: fixed, row_labels, col_labels, rows }
}

/// The full printed set of one kind.
pub fn appendix_tables(kind: AppendixKind) -> Vec<AppendixMatrix> {
    kind.printed_fixed()
        .map(|fixed| appendix_matrix(kind, fixed, kind.printed_extent()))
        .collect()
}

/// The plain-text layout of a coefficient matrix: a `matrix <kind> <fixed>`
/// header, a `cols` line of column labels, then one line per row with zero
/// cells drawn as `.`.
pub fn render_matrix(matrix: &AppendixMatrix) -> String {
    let mut out = format!("matrix {} {}\ncols", matrix.kind, matrix.fixed_index);
    for col in &matrix.col_labels {
        out.push_str(&format!(" {col}"));
    }
    out.push('\n');
    for (label, row) in matrix.row_labels.iter().zip(&matrix.rows) {
        out.push_str(&format!("{label:>2} |"));
        for cell in row {
            if cell.is_zero() {
                out.push_str("   .");
            } else {
                out.push_str(&format!(" {cell:>3}"));
            }
        }
        out.push('\n');
    }
    out
}

/// Reads matrices written by [`render_matrix`]; blank lines and `#` comments
/// are skipped.
pub fn parse_matrices(text: &str) -> Result<Vec<AppendixMatrix>> {
    let bad = |line: &str| CountError::Domain(format!("malformed matrix line '{line}'"));
    let number = |token: &str, line: &str| token.parse::<usize>().map_err(|_| bad(line));
    let mut out: Vec<AppendixMatrix> = Vec::new();
    for line in text.lines().map(str::trim_end) {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("matrix ") {
            let mut parts = rest.split_whitespace();
            let (Some(kind), Some(fixed), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(bad(line));
            };
            out.push(AppendixMatrix {
                kind: kind.parse()?,
                fixed_index: number(fixed, line)?,
                row_labels: Vec::new(),
                col_labels: Vec::new(),
                rows: Vec::new(),
            });
            continue;
        }
        let current = out.last_mut().ok_or_else(|| bad(line))?;
        if let Some(rest) = trimmed.strip_prefix("cols") {
            current.col_labels = rest.split_whitespace().map(|t| number(t, line)).collect::<Result<_>>()?;
            continue;
        }
        let (label, cells) = trimmed.split_once('|').ok_or_else(|| bad(line))?;
        let row: Vec<BigNat> = cells
            .split_whitespace()
            .map(|t| if t == "." { Ok(BigNat::zero()) } else { t.parse::<BigNat>().map_err(|_| bad(line)) })
            .collect::<Result<_>>()?;
        if row.len() != current.col_labels.len() {
            return Err(bad(line));
        }
        current.row_labels.push(number(label.trim(), line)?);
        current.rows.push(row);
    }
    Ok(out)
}

/// Outcome of checking `c'^i_{jk} = sum_f c^{i-j}_{fk} C(j, f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PascalReport {
    pub k: usize,
    pub bound: usize,
    pub convention: Convention,
    pub cells_checked: usize,
    /// `(i, j, left side, right side)` for every failing cell.
    pub mismatches: Vec<(usize, usize, BigNat, BigNat)>,
}

impl PascalReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks the Pascal-matrix factorisation of the `c'` matrices for all
/// `1 <= j <= i <= bound`, reading `c` under `convention`.
pub fn pascal_identity_check(k: usize, bound: usize, convention: Convention) -> PascalReport {
    let mut cells_checked = 0;
    let mut mismatches = Vec::new();
    for i in 1..=bound {
        for j in 1..=i {
            let left = c_prime(i, j, k);
            let right: BigNat = (0..=j)
                .map(|f| c_coeff_with(convention, i - j, f, k) * binomial(j as u64, f as i64))
                .sum();
            cells_checked += 1;
            if left != right {
                mismatches.push((i, j, left, right));
            }
        }
    }
    PascalReport { k, bound, convention, cells_checked, mismatches }
}
