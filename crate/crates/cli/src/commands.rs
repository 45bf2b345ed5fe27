use cycloseq::analytics::{
    moment_approx, moment_exact, moment_pair, normalized_moment, quoted_asymptotic_row, quoted_binomial_row, quoted_moments,
    rational_to_f64, t_asymptotic, t_asymptotic_curve, QuotedValue,
};
use cycloseq::coeffs::{
    appendix_matrix, appendix_tables, c_coeff_with, c_general, c_prime, c_weight, parse_matrices, Convention,
};
use cycloseq::errata::{audit_appendix, typo_ledger, PRINTED_COEFFICIENTS};
use cycloseq::oracle::{self, equivalence_sweep, oracle_cap, Execution};
use cycloseq::patterncounts::{count_distribution, fibonacci_gf, kaplansky};
use cycloseq::physics::{
    cosh_only_deficit, ising_partition_brute_force, ising_partition_by_families, ising_partition_fixed, ising_partition_total,
    walk_path_count, walk_weight_polynomial, IsingParams, WalkSpec,
};
use cycloseq::tnumbers::{t_distribution, t_number};
use cycloseq::{BigNat, CountDistribution, CountError, Pattern, Scope, SequenceFamily};
use serde_json::{json, Value};

use crate::args::{CoeffKind, Command, Diagonal, IsingMode, Via};
use crate::output::{Body, Cell, Provenance, Report};

/// A finished command: its report and whether every check in it passed.
pub struct Outcome {
    pub report: Report,
    pub ok: bool,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome { report, ok: true }
    }
}

fn report(command: &str, parameters: Vec<(&str, Value)>, provenance: Provenance, body: Body) -> Report {
    Report {
        command: command.to_string(),
        parameters: parameters.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        provenance,
        body,
    }
}

fn float(v: f64) -> Cell {
    Cell::Float(v)
}

fn exact(v: BigNat) -> Cell {
    Cell::Exact(v)
}

fn text(v: impl Into<String>) -> Cell {
    Cell::Text(v.into())
}

pub fn execute(command: &Command) -> Result<Outcome, CountError> {
    match command {
        Command::Tnum { m, n, tau, grid, max_len } => {
            if *grid {
                return tnum_grid(*max_len);
            }
            let (m, n) = (m.expect("required by clap"), n.expect("required by clap"));
            tnum(m, n, *tau)
        }
        Command::Dist { m, n, pattern, via } => dist(*m, *n, pattern, *via),
        Command::Coeff { kind, s, i, j, k, diagonal } => coeff(*kind, *s, *i, *j, *k, *diagonal),
        Command::Appendix { which, fixed, extent } => {
            let extent = extent.unwrap_or(which.printed_extent());
            let matrices = match fixed {
                Some(f) => vec![appendix_matrix(*which, *f, extent)],
                None if extent == which.printed_extent() => appendix_tables(*which),
                None => which.printed_fixed().map(|f| appendix_matrix(*which, f, extent)).collect(),
            };
            let mut params = vec![("which", json!(which.name()))];
            if let Some(f) = fixed {
                params.push(("fixed", json!(f)));
            }
            params.push(("extent", json!(extent)));
            Ok(Outcome::ok(report("appendix", params, Provenance::ClosedForm, Body::Matrices(matrices))))
        }
        Command::Fib { len, r, h } => {
            let value = fibonacci_gf(*len, *r, *h)?;
            Ok(Outcome::ok(report(
                "fib",
                vec![("N", json!(len)), ("r", json!(r)), ("h", json!(h))],
                Provenance::ClosedForm,
                Body::Scalar(exact(value)),
            )))
        }
        Command::Kaplansky { len, n, p } => Ok(Outcome::ok(report(
            "kaplansky",
            vec![("N", json!(len)), ("n", json!(n)), ("p", json!(p))],
            Provenance::ClosedForm,
            Body::Scalar(exact(kaplansky(*len, *n, *p))),
        ))),
        Command::Ising { mode } => ising(mode),
        Command::Walk { steps, k, alpha } => walk(*steps, *k, *alpha),
        Command::Moments { m, n, r, approx } => moments(*m, *n, *r, *approx),
        Command::Asym { m, n, tau, sweep, from, to, step } => asym(*m, *n, *tau, *sweep, *from, *to, *step),
        Command::Verify { max_len, max_pattern_len, sequential } => {
            let exec = if *sequential { Execution::Sequential } else { Execution::Parallel };
            verify(*max_len, *max_pattern_len, exec)
        }
    }
}

fn tnum(m: usize, n: usize, tau: Option<usize>) -> Result<Outcome, CountError> {
    let family = SequenceFamily::new(m, n)?;
    let mut params = vec![("m", json!(m)), ("n", json!(n))];
    let body = match tau {
        Some(tau) => {
            params.push(("tau", json!(tau)));
            Body::Scalar(exact(t_number(family, tau)?))
        }
        None => Body::counts(&t_distribution(family)?),
    };
    Ok(Outcome::ok(report("tnum", params, Provenance::ClosedForm, body)))
}

/// All families with `2 <= N <= max_len`: one column per family ordered by N
/// and then by decreasing m (only m <= n, the rest follow by symmetry), one
/// row per h = tau/2.
fn tnum_grid(max_len: usize) -> Result<Outcome, CountError> {
    let mut families = Vec::new();
    for len in 2..=max_len {
        for m in (1..=len / 2).rev() {
            families.push(SequenceFamily::new(m, len - m)?);
        }
    }
    let mut columns = vec!["h".to_string()];
    columns.extend(families.iter().map(|f| format!("{}/{}", f.len(), f.zeros())));
    let mut rows = Vec::new();
    for h in 1..=max_len / 2 {
        let mut row = vec![text(h.to_string())];
        for family in &families {
            let value = t_number(*family, 2 * h)?;
            row.push(if value == BigNat::default() { Cell::Empty } else { exact(value) });
        }
        rows.push(row);
    }
    Ok(Outcome::ok(report(
        "tnum",
        vec![("grid", json!(true)), ("max_N", json!(max_len))],
        Provenance::ClosedForm,
        Body::Table { columns, rows },
    )))
}

fn dist(m: usize, n: usize, text_pattern: &str, via: Via) -> Result<Outcome, CountError> {
    let pattern: Pattern = text_pattern.parse()?;
    let family = SequenceFamily::new(m, n)?;
    let params = vec![("m", json!(m)), ("n", json!(n)), ("pattern", json!(pattern.to_string()))];
    let enumerate = || -> Result<CountDistribution, CountError> {
        let found = oracle::pattern_distribution(Scope::Family(family), &pattern, Execution::Parallel)?;
        Ok(CountDistribution::new(Scope::Family(family), pattern.index_kind(), found.entries().clone()))
    };
    match via {
        Via::ClosedForm => {
            let closed = count_distribution(family, &pattern)?;
            Ok(Outcome::ok(report("dist", params, Provenance::ClosedForm, Body::counts(&closed))))
        }
        Via::Oracle => Ok(Outcome::ok(report("dist", params, Provenance::Oracle, Body::counts(&enumerate()?)))),
        Via::Both => {
            let closed = count_distribution(family, &pattern)?;
            let found = enumerate()?;
            let agree = closed.same_counts(&found);
            let body = Body::Sections(vec![
                ("closed-form".to_string(), Body::counts(&closed)),
                ("oracle".to_string(), Body::counts(&found)),
                ("agree".to_string(), Body::Scalar(text(agree.to_string()))),
            ]);
            Ok(Outcome { report: report("dist", params, Provenance::Both, body), ok: agree })
        }
    }
}

fn coeff(
    kind: CoeffKind,
    s: Option<usize>,
    i: usize,
    j: Option<usize>,
    k: Option<usize>,
    diagonal: Diagonal,
) -> Result<Outcome, CountError> {
    let convention = match diagonal {
        Diagonal::Formula => Convention::Formula,
        Diagonal::Tableau => Convention::Tableau,
    };
    let depth = match kind {
        CoeffKind::C => 0,
        CoeffKind::Cprime => 1,
        CoeffKind::Cs | CoeffKind::Cweight => {
            s.ok_or_else(|| CountError::Domain(format!("--s is required for --kind {}", kind_name(kind))))?
        }
    };
    if matches!(kind, CoeffKind::C | CoeffKind::Cprime) && s.is_some_and(|s| s != depth) {
        return Err(CountError::Domain(format!("--kind {} has depth s = {depth}", kind_name(kind))));
    }
    let cell = |j: usize, k: usize| -> BigNat {
        match kind {
            CoeffKind::C => c_coeff_with(convention, i, j, k),
            CoeffKind::Cprime => c_prime(i, j, k),
            CoeffKind::Cs if depth == 0 => c_coeff_with(convention, i, j, k),
            CoeffKind::Cs => c_general(depth, i, j, k),
            CoeffKind::Cweight => c_weight(depth, i, k, j),
        }
    };
    // For cweight, j is the height h and k the weight g.
    let (row_name, col_name) = match kind {
        CoeffKind::Cweight => ("h", "g"),
        _ => ("j", "k"),
    };
    let mut params = vec![("kind", json!(kind_name(kind))), ("s", json!(depth)), ("i", json!(i))];
    let body = match (j, k) {
        (Some(j), Some(k)) => {
            params.push((row_name, json!(j)));
            params.push((col_name, json!(k)));
            Body::Scalar(exact(cell(j, k)))
        }
        _ => {
            let row_range: Vec<usize> = match j {
                Some(j) => vec![j],
                None => (1..=i).collect(),
            };
            let col_range: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (0..=i).collect(),
            };
            if let Some(j) = j {
                params.push((row_name, json!(j)));
            }
            if let Some(k) = k {
                params.push((col_name, json!(k)));
            }
            let mut columns = vec![format!("{row_name}\\{col_name}")];
            columns.extend(col_range.iter().map(|c| c.to_string()));
            let rows = row_range
                .iter()
                .map(|&r| {
                    let mut row = vec![text(r.to_string())];
                    row.extend(col_range.iter().map(|&c| exact(cell(r, c))));
                    row
                })
                .collect();
            Body::Table { columns, rows }
        }
    };
    if matches!(kind, CoeffKind::C | CoeffKind::Cs) && depth == 0 {
        params.push(("diagonal", json!(if convention == Convention::Formula { "formula" } else { "tableau" })));
    }
    Ok(Outcome::ok(report("coeff", params, Provenance::ClosedForm, body)))
}

fn kind_name(kind: CoeffKind) -> &'static str {
    match kind {
        CoeffKind::C => "c",
        CoeffKind::Cprime => "cprime",
        CoeffKind::Cs => "cs",
        CoeffKind::Cweight => "cweight",
    }
}

fn ising(mode: &IsingMode) -> Result<Outcome, CountError> {
    match mode {
        IsingMode::Fixed { len, n, nu } => {
            let params = IsingParams::new(*len, *nu)?;
            let value = ising_partition_fixed(params, *n)?;
            Ok(Outcome::ok(report(
                "ising fixed",
                vec![("N", json!(len)), ("n", json!(n)), ("nu", json!(nu))],
                Provenance::ClosedForm,
                Body::Scalar(float(value)),
            )))
        }
        IsingMode::Total { len, nu } => {
            let params = IsingParams::new(*len, *nu)?;
            let total = ising_partition_total(params);
            let cosh_only = (2.0 * nu.cosh()).powi(*len as i32);
            let mut fields = vec![
                ("total".to_string(), float(total)),
                ("cosh_only".to_string(), float(cosh_only)),
                ("sinh_term".to_string(), float((2.0 * nu.sinh()).powi(*len as i32))),
                ("by_families".to_string(), float(ising_partition_by_families(params)?)),
            ];
            let mut provenance = Provenance::ClosedForm;
            if *len <= oracle_cap() {
                fields.push(("brute_force".to_string(), float(ising_partition_brute_force(params, Execution::Parallel)?)));
                fields.push(("cosh_only_deficit".to_string(), float(cosh_only_deficit(params, Execution::Parallel)?)));
                provenance = Provenance::Both;
            }
            Ok(Outcome::ok(report(
                "ising total",
                vec![("N", json!(len)), ("nu", json!(nu))],
                provenance,
                Body::Record(fields),
            )))
        }
    }
}

fn walk(steps: usize, k: i64, alpha: f64) -> Result<Outcome, CountError> {
    let spec = WalkSpec::new(steps, k, alpha)?;
    let poly = walk_weight_polynomial(spec)?;
    let rows = poly
        .coefficients
        .iter()
        .map(|(tau, count)| {
            let weight = alpha.powi(*tau as i32) * spec.beta().powi((steps - tau) as i32);
            vec![text(tau.to_string()), exact(count.clone()), float(weight)]
        })
        .collect();
    let body = Body::Sections(vec![
        (
            "coefficients".to_string(),
            Body::Table { columns: vec!["tau".into(), "count".into(), "weight".into()], rows },
        ),
        (
            "summary".to_string(),
            Body::Record(vec![
                ("paths".to_string(), exact(walk_path_count(spec))),
                ("scalar".to_string(), float(poly.scalar)),
            ]),
        ),
    ]);
    Ok(Outcome::ok(report(
        "walk",
        vec![("N", json!(steps)), ("k", json!(k)), ("alpha", json!(alpha))],
        Provenance::ClosedForm,
        body,
    )))
}

fn moments(m: usize, n: usize, r: u32, approx: bool) -> Result<Outcome, CountError> {
    SequenceFamily::new(m, n)?;
    let normalized = normalized_moment(m, n, r);
    let mut fields = vec![
        ("exact".to_string(), exact(moment_exact(m, n, r))),
        ("normalized".to_string(), text(normalized.to_string())),
        ("normalized_value".to_string(), float(rational_to_f64(&normalized))),
    ];
    if approx {
        let (_, normalized_approx) = moment_pair(m, n, r)?;
        fields.push(("approx".to_string(), float(moment_approx(m, n, r)?.value)));
        fields.push(("approx_normalized".to_string(), float(normalized_approx)));
    }
    Ok(Outcome::ok(report(
        "moments",
        vec![("m", json!(m)), ("n", json!(n)), ("r", json!(r))],
        Provenance::ClosedForm,
        Body::Record(fields),
    )))
}

fn asym(
    m: usize,
    n: usize,
    tau: Option<f64>,
    sweep: bool,
    from: f64,
    to: Option<f64>,
    step: f64,
) -> Result<Outcome, CountError> {
    let family = SequenceFamily::new(m, n)?;
    let mut params = vec![("m", json!(m)), ("n", json!(n))];
    let body = if sweep {
        let to = to.unwrap_or((m.min(n)) as f64);
        params.extend([("from", json!(from)), ("to", json!(to)), ("step", json!(step))]);
        let rows = t_asymptotic_curve(family, from, to, step)?
            .into_iter()
            .map(|(h, value)| vec![float(2.0 * h), float(value)])
            .collect();
        Body::Table { columns: vec!["tau".into(), "value".into()], rows }
    } else if let Some(tau) = tau {
        params.push(("tau", json!(tau)));
        Body::Scalar(float(t_asymptotic(family, tau)?.value))
    } else {
        let rows = (1..=m.min(n))
            .map(|h| {
                let tau = 2 * h;
                Ok(vec![
                    text(tau.to_string()),
                    exact(t_number(family, tau)?),
                    float(t_asymptotic(family, tau as f64)?.value),
                ])
            })
            .collect::<Result<Vec<_>, CountError>>()?;
        Body::Table { columns: vec!["tau".into(), "exact".into(), "asymptotic".into()], rows }
    };
    Ok(Outcome::ok(report("asym", params, Provenance::ClosedForm, body)))
}

fn quoted_rows(values: &[QuotedValue]) -> Body {
    let rows = values
        .iter()
        .map(|q| {
            vec![
                text(q.label.clone()),
                float(q.printed),
                float(q.computed),
                float(q.tolerance),
                text(if q.holds() { "holds" } else { "differs" }),
            ]
        })
        .collect();
    Body::Table {
        columns: vec!["label".into(), "printed".into(), "computed".into(), "tolerance".into(), "status".into()],
        rows,
    }
}

/// Sweep, misprint ledger and appendix audit. The quoted floating-point
/// values are printed for reference; the known misprints among them do not
/// affect the exit status.
fn verify(max_len: usize, max_pattern_len: usize, exec: Execution) -> Result<Outcome, CountError> {
    let cap = oracle_cap();
    if max_len > cap {
        return Err(CountError::CapExceeded { len: max_len, cap });
    }
    let sweep = equivalence_sweep(max_len, max_pattern_len, max_len + 2, exec)?;
    let ledger = typo_ledger(exec)?;
    let audit = audit_appendix(&parse_matrices(PRINTED_COEFFICIENTS)?);

    let mut mismatch_rows = Vec::new();
    for mismatch in &sweep.mismatches {
        let pattern = mismatch.pattern.as_ref().map_or("jumps".to_string(), |p| p.to_string());
        mismatch_rows.push(vec![
            text(format!("{}/{}", mismatch.family.zeros(), mismatch.family.ones())),
            text(pattern),
        ]);
    }
    for (len, tau) in &sweep.jump_sum_failures {
        mismatch_rows.push(vec![text(format!("N={len}")), text(format!("jump sum tau={tau}"))]);
    }

    let ledger_rows = ledger
        .iter()
        .map(|entry| {
            let readings: Vec<String> =
                entry.readings.iter().map(|r| format!("{} ({}/{})", r.label, r.agreements, entry.cases_checked)).collect();
            let witness = entry.witness.as_ref().map_or(String::new(), |w| {
                let values: Vec<String> = w.values.iter().map(|v| v.to_string()).collect();
                format!("{}: {} vs oracle {}", w.case, values.join(" / "), w.oracle)
            });
            vec![
                text(entry.id),
                text(entry.readings.first().map_or("", |r| r.formula)),
                text(entry.adopted().map_or("", |r| r.formula)),
                text(readings.join("; ")),
                text(entry.verdict.describe()),
                text(witness),
            ]
        })
        .collect();

    let misprint_rows = audit
        .mismatches
        .iter()
        .map(|m| {
            vec![
                text(m.kind.name()),
                text(m.fixed.to_string()),
                text(m.row.to_string()),
                text(m.col.to_string()),
                exact(m.printed.clone()),
                exact(m.computed.clone()),
                text(if audit.unexplained.contains(m) { "unexplained" } else { "registered" }),
            ]
        })
        .collect();

    let ledger_ok = ledger.iter().all(|e| e.adopted().is_some());
    let ok = sweep.passed() && ledger_ok && audit.clean();

    let mut quoted = quoted_moments()?;
    quoted.extend(quoted_binomial_row()?);
    quoted.extend(quoted_asymptotic_row()?);

    let body = Body::Sections(vec![
        (
            "sweep".to_string(),
            Body::Record(vec![
                ("families".to_string(), text(sweep.families.to_string())),
                ("distributions_checked".to_string(), text(sweep.distributions_checked.to_string())),
                ("jump_sums_checked".to_string(), text(sweep.jump_sums_checked.to_string())),
                ("mismatches".to_string(), text((sweep.mismatches.len() + sweep.jump_sum_failures.len()).to_string())),
                ("passed".to_string(), text(sweep.passed().to_string())),
            ]),
        ),
        (
            "sweep mismatches".to_string(),
            Body::Table { columns: vec!["family".into(), "statistic".into()], rows: mismatch_rows },
        ),
        (
            "typo ledger".to_string(),
            Body::Table {
                columns: vec![
                    "id".into(),
                    "printed".into(),
                    "adopted".into(),
                    "readings".into(),
                    "verdict".into(),
                    "witness".into(),
                ],
                rows: ledger_rows,
            },
        ),
        (
            "appendix audit".to_string(),
            Body::Record(vec![
                ("matrices".to_string(), text(audit.matrices.to_string())),
                ("cells_checked".to_string(), text(audit.cells_checked.to_string())),
                ("misprints".to_string(), text(audit.mismatches.len().to_string())),
                ("unexplained".to_string(), text(audit.unexplained.len().to_string())),
                ("stale".to_string(), text(audit.stale.len().to_string())),
                ("oracle_disagreements".to_string(), text(audit.oracle_disagreements.len().to_string())),
                ("clean".to_string(), text(audit.clean().to_string())),
            ]),
        ),
        (
            "appendix misprints".to_string(),
            Body::Table {
                columns: vec![
                    "matrix".into(),
                    "fixed".into(),
                    "row".into(),
                    "col".into(),
                    "printed".into(),
                    "computed".into(),
                    "status".into(),
                ],
                rows: misprint_rows,
            },
        ),
        ("quoted values".to_string(), quoted_rows(&quoted)),
        ("passed".to_string(), Body::Scalar(text(ok.to_string()))),
    ]);
    let provenance = Provenance::Both;
    Ok(Outcome {
        report: report(
            "verify",
            vec![("max_N", json!(max_len)), ("max_pattern_len", json!(max_pattern_len))],
            provenance,
            body,
        ),
        ok,
    })
}
