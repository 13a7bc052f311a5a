use std::path::PathBuf;

use adft_cli::commands::bench::{correctness_gate, direct_counts, direct_kernel, fast_counts, DenseMatrix};
use adft_cli::commands::random_frames;
use adft_cli::commands::verify::verify_with;
use adft_cli::document::validate_envelope;
use adft_cli::format::{fmt_f64, num};
use adft_cli::{run, Outcome, ResultDocument, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use adft_core::numerics::Matrix;
use adft_core::transforms::FactorStage;
use adft_core::{build_factorization, complexity_report, ComplexF, DyadicGaussian, Factorization};
use proptest::prelude::*;
use serde_json::Value;

fn adft(args: &[&str]) -> Outcome {
    run(std::iter::once("adft").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let out = adft(args);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    validate_envelope(&v).unwrap();
    v
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("adft-cli-test-{}-{name}", std::process::id()))
}

#[test]
fn matrix_approx_first_row() {
    let out = adft(&["matrix", "--which", "approx"]);
    assert_eq!(out.code, EXIT_OK);
    let rows: Vec<&str> = out.stdout.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0], "1 1 1 1 1 1 1 1");
    assert_eq!(rows[1], "1 (1-1j)/2 -1j (-1-1j)/2 -1 (-1+1j)/2 1j (1+1j)/2");
    assert!(!out.stdout.contains("0.5"), "exact values only");
}

#[test]
fn matrix_stages_in_application_order() {
    let v = json(&["matrix", "--which", "stages", "--format", "json"]);
    let names: Vec<&str> =
        v["payload"]["stages"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["B8", "diag(B4,A2)", "D1", "diag(B2,I2,A4)", "D2", "diag(I2,A1,A3)", "P"]);
    let text = adft(&["matrix", "--which", "stages"]).stdout;
    assert_eq!(text.lines().filter(|l| l.starts_with("stage ")).count(), 7);
}

#[test]
fn matrix_exact_two_point() {
    let out = adft(&["matrix", "--which", "exact", "--n", "2"]);
    let rows: Vec<&str> = out.stdout.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows, ["1 1", "1 -1"]);
    let v = json(&["matrix", "--which", "exact", "--n", "2", "--format", "json"]);
    assert_eq!(v["payload"]["rows"], serde_json::json!([["1", "1"], ["1", "-1"]]));
}

#[test]
fn matrix_rejects_bad_size() {
    let out = adft(&["matrix", "--which", "approx", "--n", "4"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("--n"));
    let out = adft(&["matrix", "--format", "csv"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("--format"));
}

#[test]
fn verify_passes_and_reports_counts() {
    let out = adft(&["verify"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("complex multiplications: 0"));
    assert!(out.stdout.contains("complex additions: 26 (real additions: 52)"));
    assert!(out.stdout.contains("halvings: 2"));
    assert!(out.stdout.contains("j-rotations: 3"));

    // counts against a nonzero-counting oracle over the dense stages
    let mut adds = 0;
    for s in build_factorization().stages() {
        let m = s.to_matrix();
        for i in 0..8 {
            adds += m.row(i).iter().filter(|z| !z.is_zero()).count() - 1;
        }
    }
    let v = json(&["verify", "--format", "json"]);
    assert_eq!(v["payload"]["counts"]["complex_additions"], adds);
    assert_eq!(v["payload"]["complex_multiplications"], 0);
    assert_eq!(v["payload"]["passed"], true);
}

fn flipped_stage(f: &Factorization, idx: usize) -> Factorization {
    let mut stages: Vec<FactorStage> = f.stages().to_vec();
    let m = stages[idx].to_matrix();
    let (r, c) = (0..8).flat_map(|i| (0..8).map(move |k| (i, k))).find(|&(i, k)| !m.get(i, k).is_zero()).unwrap();
    let flipped = Matrix::from_fn(8, 8, |i, k| if (i, k) == (r, c) { -m.get(i, k) } else { m.get(i, k) });
    stages[idx] = FactorStage::from_matrix(stages[idx].name(), &flipped).unwrap();
    Factorization::from_stages(stages).unwrap()
}

#[test]
fn verify_names_first_failure() {
    let broken = flipped_stage(&build_factorization(), 3);
    let r = verify_with(&broken, 50, 1);
    assert!(!r.passed());
    assert_eq!(r.first_failure().unwrap().name, "factorization identity");
    assert!(!r.checks[1].passed, "fast vs direct must also fail");
}

#[test]
fn search_rank_one_and_exit_code() {
    let v = json(&["search", "--top-k", "1", "--format", "json"]);
    let top = &v["payload"]["results"][0];
    assert_eq!((top["h0"].as_i64(), top["h1"].as_str(), top["h2"].as_str()), (Some(2), Some("1-1j"), Some("-2j")));
    assert_eq!(top["dyadic_scale"], "1/2");
    assert!((top["scale"].as_f64().unwrap() - 0.5).abs() < 0.05);
    assert_eq!(v["payload"]["rank1_matches_expected"], true);
}

#[test]
fn search_exhaustive_and_deterministic() {
    let a = adft(&["search", "--top-k", "625", "--format", "csv"]);
    let b = adft(&["search", "--top-k", "625", "--format", "csv"]);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout.lines().count(), 626);
    assert!(a.stdout.lines().all(|l| l.split(',').count() == 10));
    let j1 = adft(&["search", "--top-k", "625", "--format", "json"]).stdout;
    assert_eq!(j1, adft(&["search", "--top-k", "625", "--format", "json"]).stdout);
}

#[test]
fn search_top_k_bounds() {
    for bad in ["0", "626"] {
        let out = adft(&["search", "--top-k", bad]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.contains("--top-k"));
    }
}

#[test]
fn pattern_csv_shape() {
    let out = adft(&["pattern", "--grid-step", "1.0"]);
    assert_eq!(out.code, EXIT_OK);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "angle_deg,beam0_db,beam1_db,beam2_db,beam3_db,beam4_db,beam5_db,beam6_db,beam7_db");
    assert_eq!(lines.len() - 1, 181);
    assert!(lines.iter().all(|l| l.split(',').count() == 9));
    assert!(!out.stdout.contains('\r'));
    assert_eq!(lines[1].split(',').next(), Some("-90"));
    assert_eq!(lines[181].split(',').next(), Some("90"));
    // summary goes to stderr so the CSV stays plain
    assert_eq!(out.stderr.lines().filter(|l| l.starts_with("beam ")).count(), 8);
}

fn peaks(v: &Value) -> Vec<f64> {
    v["payload"]["peaks"].as_array().unwrap().iter().map(|p| p["peak_deg_from_broadside"].as_f64().unwrap()).collect()
}

#[test]
fn pattern_exact_and_approx_agree() {
    let a = peaks(&json(&["pattern", "--format", "json", "--transform", "approx"]));
    let e = peaks(&json(&["pattern", "--format", "json", "--transform", "exact"]));
    let listed = [0.0, 14.5, 30.0, 48.5, 90.0, -48.5, -30.0, -14.5];
    for k in 0..8 {
        assert!((a[k] - e[k]).abs() <= 0.5);
        let tol = if k == 4 { 1.0 } else { 0.1 };
        assert!((a[k] - listed[k]).abs() <= tol, "beam {k}: {}", a[k]);
    }
}

#[test]
fn pattern_both_angle_conventions() {
    let v = json(&["pattern", "--format", "json", "--grid-step", "0.5"]);
    for p in v["payload"]["peaks"].as_array().unwrap() {
        let b = p["peak_deg_from_broadside"].as_f64().unwrap();
        let a = p["peak_deg_from_axis"].as_f64().unwrap();
        assert!((a + b - 90.0).abs() < 1e-9);
    }
}

#[test]
fn pattern_writes_output_file() {
    let path = temp_path("pattern.csv");
    let out = adft(&["pattern", "--grid-step", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 92);
    std::fs::remove_file(path).unwrap();

    let out = adft(&["pattern", "--output", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("--output"));
}

#[test]
fn pattern_flag_validation() {
    for (args, flag) in [
        (vec!["pattern", "--grid-step", "0"], "--grid-step"),
        (vec!["pattern", "--floor-db", "3"], "--floor-db"),
        (vec!["pattern", "--spacing", "-0.5"], "--spacing"),
        (vec!["pattern", "--spacing", "abc"], "--spacing"),
        (vec!["pattern", "--trials", "5", "--beam", "8"], "--beam"),
        (vec!["pattern", "--trials", "5", "--gain-sigma", "-1"], "--gain-sigma"),
        (vec!["pattern", "--freq-ghz", "2"], "--design-freq-ghz"),
        (vec!["pattern", "--freq-ghz", "2", "--design-freq-ghz", "4", "--spacing", "0.5"], "--spacing"),
    ] {
        let out = adft(&args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}");
        assert!(out.stderr.contains(flag), "{args:?}: {}", out.stderr);
    }
}

#[test]
fn pattern_physical_frequency() {
    let v = json(&["pattern", "--format", "json", "--grid-step", "1", "--freq-ghz", "2", "--design-freq-ghz", "4"]);
    assert_eq!(v["parameters"]["geometry"]["spacing_wavelengths"], 0.25);
    let p = &v["payload"]["peaks"][2];
    assert_eq!(p["theoretical_deg_from_broadside"], 90.0);
    assert!(v["payload"]["peaks"][4]["theoretical_deg_from_broadside"].is_null());
}

#[test]
fn pattern_ensemble() {
    let args =
        ["pattern", "--grid-step", "1", "--trials", "50", "--gain-sigma", "0.05", "--seed", "3", "--format", "json"];
    let a = json(&args);
    assert_eq!(a, json(&args));
    assert_eq!(a["provenance"]["seed"], 3);
    assert!(a["payload"]["peak_shift_p95_deg"].as_f64().unwrap() <= 2.0);
    let csv = adft(&["pattern", "--grid-step", "1", "--trials", "10", "--beam", "2"]);
    assert!(csv.stdout.starts_with("angle_deg,beam2_mean_db,beam2_p5_db,beam2_p95_db\n"));
}

#[test]
fn beamsim_winners() {
    for (angle, want) in [("0", 0), ("30", 2), ("-30", 6), ("48.59", 3)] {
        let v = json(&["beamsim", "--angle", angle, "--format", "json"]);
        assert_eq!(v["payload"]["winner"], want, "angle {angle}");
        let text = adft(&["beamsim", "--angle", angle]).stdout;
        assert!(text.ends_with(&format!("winner: {want}\n")));
    }
}

#[test]
fn beamsim_validation() {
    let out = adft(&["beamsim", "--angle", "91"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("--angle"));
    let out = adft(&["beamsim"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("--angle"));
    let out = adft(&["beamsim", "--angle", "0", "--amplitude", "0"]);
    assert!(out.stderr.contains("--amplitude"));
}

#[test]
fn bench_counts_and_gate() {
    let v = json(&["bench", "--frames", "2000", "--format", "json", "--lanes", "2"]);
    assert_eq!(v["payload"]["gate"]["passed"], true);
    let modes = v["payload"]["modes"].as_array().unwrap();
    assert_eq!(modes.len(), 2);
    let report = complexity_report(&build_factorization());
    assert_eq!(modes[0]["mode"], "fast");
    assert_eq!(modes[0]["real_additions_per_frame"], report.real_additions());
    assert_eq!(modes[1]["real_additions_per_frame"], 240);
    assert_eq!(modes[1]["real_multiplications_per_frame"], 256);
    assert!(fast_counts().real_additions < direct_counts().real_additions);

    let only = json(&["bench", "--frames", "10", "--mode", "direct", "--format", "json"]);
    assert_eq!(only["payload"]["modes"].as_array().unwrap().len(), 1);
}

#[test]
fn bench_validation() {
    for (args, flag) in [
        (vec!["bench", "--frames", "0"], "--frames"),
        (vec!["bench", "--lanes", "0"], "--lanes"),
        (vec!["bench", "--mode", "slow"], "--mode"),
    ] {
        let out = adft(&args);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.contains(flag), "{}", out.stderr);
    }
}

fn broken_fast(m: &DenseMatrix, x: &[ComplexF; 8]) -> [ComplexF; 8] {
    let mut y = direct_kernel(m, x);
    y[3] += ComplexF::new(1e-6, 0.0);
    y
}

#[test]
fn bench_gate_catches_wrong_kernel() {
    let frames = random_frames(100, 5);
    let g = correctness_gate(&frames, broken_fast, direct_kernel);
    assert!(!g.passed);
}

#[test]
fn documents_round_trip() {
    for args in [
        vec!["matrix", "--format", "json"],
        vec!["verify", "--format", "json", "--frames", "10"],
        vec!["search", "--format", "json", "--top-k", "625"],
        vec!["pattern", "--format", "json", "--grid-step", "3"],
        vec!["beamsim", "--format", "json", "--angle", "12.5"],
    ] {
        let text = adft(&args).stdout;
        let doc = ResultDocument::from_json(&text).unwrap();
        assert_eq!(doc.schema_version, "1");
        assert_eq!(doc.command, args[0]);
        assert_eq!(doc.to_json(), text, "{args:?}");
        assert_eq!(ResultDocument::from_json(&doc.to_json()).unwrap(), doc);
    }
}

#[test]
fn help_and_version() {
    let out = adft(&["--help"]);
    assert_eq!(out.code, EXIT_OK);
    for cmd in ["matrix", "verify", "search", "pattern", "beamsim", "bench"] {
        assert!(out.stdout.contains(cmd));
    }
    assert_eq!(adft(&["--version"]).code, EXIT_OK);
    assert_eq!(adft(&["nope"]).code, EXIT_USAGE);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_adft");
    let ok = std::process::Command::new(bin).args(["verify", "--frames", "10"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = std::process::Command::new(bin).args(["bench", "--frames", "0"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert_ne!(EXIT_FAILURE, EXIT_OK);
}

fn arb_value() -> impl Strategy<Value = Value> {
    let leaf = prop_oneof![
        any::<f64>().prop_map(num),
        any::<i64>().prop_map(Value::from),
        "[a-z0-9()/+-]{0,12}".prop_map(Value::from),
        Just(Value::Null),
    ];
    leaf.prop_recursive(3, 24, 6, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 0..6).prop_map(Value::Array),
            proptest::collection::btree_map("[a-z_]{1,8}", inner, 0..6)
                .prop_map(|m| Value::Object(m.into_iter().collect())),
        ]
    })
}

proptest! {
    #[test]
    fn document_round_trip_is_lossless(payload in arb_value(), seed in proptest::option::of(any::<u64>())) {
        let payload = serde_json::json!({ "data": payload });
        let doc = ResultDocument::new("search", &serde_json::json!({ "top_k": 3 }), payload, seed);
        let back = ResultDocument::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert!(validate_envelope(&serde_json::to_value(&back).unwrap()).is_ok());
    }

    #[test]
    fn twelve_digit_rendering(x in -1e300..1e300_f64) {
        let s = fmt_f64(x);
        let back: f64 = s.parse().unwrap();
        prop_assert!((back - x).abs() <= 5e-12 * x.abs());
        prop_assert_eq!(fmt_f64(back), s);
    }

    #[test]
    fn exact_entries_render_losslessly(re in -4096_i64..4096, im in -4096_i64..4096, e in 0_u32..12) {
        let d = DyadicGaussian::new(re, im, e);
        prop_assert_eq!(d.to_string().parse::<DyadicGaussian>().unwrap(), d);
    }
}
