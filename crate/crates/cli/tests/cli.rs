use cycloseq::coeffs::{appendix_tables, AppendixKind};
use cycloseq::patterncounts::count_distribution;
use cycloseq::tnumbers::t_distribution;
use cycloseq::{Pattern, SequenceFamily};
use cycloseq_cli::output::{distribution_from_json, matrices_from_json};
use cycloseq_cli::{run, EXIT_CHECK_FAILED, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cycloseq").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn payload(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = invoke(&full);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    serde_json::from_str::<Value>(&out).unwrap()["payload"].clone()
}

#[test]
fn spec_examples() {
    assert_eq!(payload(&["tnum", "--m", "3", "--n", "4"]), serde_json::json!({"2": "7", "4": "21", "6": "7"}));
    assert_eq!(
        payload(&["dist", "--m", "5", "--n", "3", "--pattern", "000"]),
        serde_json::json!({"0": "8", "1": "24", "2": "16", "3": "8"})
    );
    assert_eq!(payload(&["fib", "--N", "5", "--r", "3", "--h", "0"]), "20");
    assert_eq!(payload(&["tnum", "--m", "5", "--n", "5", "--tau", "6"]), "120");
}

#[test]
fn envelope_fields() {
    let (_, out, _) = invoke(&["dist", "--m", "4", "--n", "4", "--pattern", "001", "--via", "oracle", "--format", "json"]);
    let value: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(value["command"], "dist");
    assert_eq!(value["parameters"]["pattern"], "001");
    assert_eq!(value["format_version"], "1");
    assert_eq!(value["provenance"], "oracle");
    assert_eq!(value["payload"]["0"], "2");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--max-N", "8", "--format", "json"][..],
        &["ising", "total", "--N", "10", "--nu", "0.5"],
        &["appendix", "--which", "cprime_weight"],
        &["asym", "--m", "5", "--n", "5", "--sweep", "--format", "csv"],
    ] {
        assert_eq!(invoke(args), invoke(args), "{args:?}");
    }
}

#[test]
fn distributions_round_trip() {
    for (m, n) in [(3, 4), (5, 5), (1, 9), (7, 2)] {
        let family = SequenceFamily::new(m, n).unwrap();
        let (ms, ns) = (m.to_string(), n.to_string());
        let (_, out, _) = invoke(&["tnum", "--m", &ms, "--n", &ns, "--format", "json"]);
        assert_eq!(distribution_from_json(&out).unwrap(), t_distribution(family).unwrap());
        for text in ["000", "001", "01", "0101", "1110"] {
            let pattern: Pattern = text.parse().unwrap();
            let Ok(expected) = count_distribution(family, &pattern) else { continue };
            let (_, out, _) = invoke(&["dist", "--m", &ms, "--n", &ns, "--pattern", text, "--format", "json"]);
            assert_eq!(distribution_from_json(&out).unwrap(), expected, "{text} on ({m},{n})");
        }
    }
}

#[test]
fn matrices_round_trip() {
    for kind in AppendixKind::ALL {
        let (_, out, _) = invoke(&["appendix", "--which", kind.name(), "--format", "json"]);
        assert_eq!(matrices_from_json(&out).unwrap(), appendix_tables(kind));
    }
}

#[test]
fn csv_counts() {
    let (code, out, _) = invoke(&["tnum", "--m", "3", "--n", "4", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "tau,count\n2,7\n4,21\n6,7\n");
}

#[test]
fn oracle_matches_closed_form_for_every_solved_pattern() {
    let mut compared = 0;
    for len in 2..=12usize {
        for ones in 1..len {
            let (ms, ns) = ((len - ones).to_string(), ones.to_string());
            for pattern_len in 1..=4.min(len - 1) {
                for pattern in Pattern::all_of_length(pattern_len).filter(Pattern::is_solved) {
                    let text = pattern.to_string();
                    let args = ["dist", "--m", &ms, "--n", &ns, "--pattern", &text, "--format", "json"];
                    let (closed_code, closed, _) = invoke(&args);
                    let mut oracle_args = args.to_vec();
                    oracle_args.extend(["--via", "oracle"]);
                    let (oracle_code, oracle, _) = invoke(&oracle_args);
                    assert_eq!((closed_code, oracle_code), (EXIT_OK, EXIT_OK), "{text} on N={len} n={ones}");
                    let closed: Value = serde_json::from_str(&closed).unwrap();
                    let oracle: Value = serde_json::from_str(&oracle).unwrap();
                    assert_eq!(closed["payload"], oracle["payload"], "{text} on N={len} n={ones}");
                    compared += 1;
                }
            }
        }
    }
    assert!(compared > 1000, "{compared}");
}

#[test]
fn both_reports_agreement() {
    let (code, out, _) = invoke(&["dist", "--m", "6", "--n", "4", "--pattern", "0001", "--via", "both", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let value: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(value["payload"]["agree"], "true");
    assert_eq!(value["payload"]["closed-form"], value["payload"]["oracle"]);
}

#[test]
fn exit_codes() {
    assert_eq!(invoke(&["--help"]).0, EXIT_OK);
    assert!(invoke(&["--help"]).1.contains("Usage"));
    assert_eq!(invoke(&["tnum"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["tnum", "--m", "x", "--n", "3"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["dist", "--m", "3", "--n", "3", "--pattern", "012"]).0, EXIT_USAGE);

    let (code, _, err) = invoke(&["dist", "--m", "5", "--n", "5", "--pattern", "0110"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.contains("no closed form"), "{err}");
    assert_eq!(invoke(&["dist", "--m", "5", "--n", "5", "--pattern", "0110", "--via", "oracle"]).0, EXIT_OK);
    assert_eq!(invoke(&["tnum", "--m", "4", "--n", "0", "--tau", "2"]).0, EXIT_DOMAIN);
    assert_eq!(invoke(&["tnum", "--m", "4", "--n", "4", "--tau", "3"]).0, EXIT_DOMAIN);
    assert_eq!(invoke(&["walk", "--N", "5", "--k", "2", "--alpha", "0.3"]).0, EXIT_DOMAIN);
    assert_eq!(invoke(&["coeff", "--kind", "cs", "--i", "5"]).0, EXIT_DOMAIN);
    assert_eq!(invoke(&["verify", "--max-N", "64"]).0, EXIT_DOMAIN);
    assert_eq!(invoke(&["verify", "--max-N", "9"]).0, EXIT_OK);
    // Only a failed comparison exits with 1.
    assert_ne!(EXIT_CHECK_FAILED, EXIT_OK);
}

#[test]
fn coefficient_lookups() {
    assert_eq!(payload(&["coeff", "--kind", "c", "--i", "4", "--j", "4", "--k", "0"]), "4");
    assert_eq!(payload(&["coeff", "--kind", "c", "--i", "4", "--j", "4", "--k", "0", "--diagonal", "tableau"]), "1");
    assert_eq!(payload(&["coeff", "--kind", "cweight", "--s", "1", "--m", "5", "--h", "3", "--g", "0"]), "3");
    assert_eq!(payload(&["coeff", "--kind", "cprime", "--i", "6", "--j", "4", "--k", "0"]), "6");
    assert_eq!(payload(&["kaplansky", "--N", "8", "--n", "4", "--p", "2"]), "2");
}

#[test]
fn grid_layout() {
    let (code, out, _) = invoke(&["tnum", "--grid", "--max-N", "6"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[1].split_whitespace().collect::<Vec<_>>(), ["h", "2/1", "3/1", "4/2", "4/1", "5/2", "5/1", "6/3", "6/2", "6/1"]);
    assert_eq!(lines[2].split_whitespace().collect::<Vec<_>>(), ["1", "2", "3", "4", "4", "5", "5", "6", "6", "6"]);
    assert_eq!(lines[4].split_whitespace().collect::<Vec<_>>(), ["3", "2"]);
}

#[test]
fn ising_and_walk_reports() {
    let total = payload(&["ising", "total", "--N", "8", "--nu", "0"]);
    assert_eq!(total["total"], 256.0);
    assert_eq!(total["brute_force"], 256.0);
    let fixed = payload(&["ising", "fixed", "--N", "9", "--n", "4", "--nu", "0"]);
    assert!((fixed.as_f64().unwrap() - 126.0).abs() < 1e-9);
    let walk = payload(&["walk", "--N", "7", "--k", "1", "--alpha", "0.5"]);
    assert_eq!(walk["summary"]["paths"], "35");
    let counts: Vec<&str> = walk["coefficients"].as_array().unwrap().iter().map(|r| r["count"].as_str().unwrap()).collect();
    assert_eq!(counts, ["7", "21", "7"]);
}
