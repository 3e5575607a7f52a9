mod common;

use std::process::{Command, Output};

use kraus_entanglement::cli::spec::FIGURES;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kraus-entanglement")).args(args).output().expect("spawn")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().expect("header").split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn classify_exits_zero() {
    let out = bin(&["classify", "--channel", "ad", "--p", "0.3", "--rho-ee", "0.5", "--e0sq", "0.5"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("W_GENUINE"));
}

#[test]
fn incomplete_custom_pair_is_usage_error() {
    let out = bin(&["classify", "--channel", "custom", "--k0", "1,0,0,1", "--k1", "1,0,0,1", "--rho-ee", "0.5"]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_channel_is_usage_error() {
    let out = bin(&["classify", "--channel", "depolarizing", "--rho-ee", "0.5"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn missing_subcommand_is_usage_error() {
    assert_eq!(code(&bin(&[])), 2);
    assert_eq!(code(&bin(&["verify", "--n", "0"])), 2);
}

#[test]
fn empty_grid_is_usage_error() {
    let out = bin(&["sweep", "--channel", "ad", "--p", "0:1:0", "--rho-ee", "0.5", "--e0sq", "0.5"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn infeasible_fixed_point_is_usage_error() {
    let out = bin(&["classify", "--channel", "ad", "--p", "0.3", "--rho-ee", "0.1", "--e0sq", "0.9"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_passes_and_fails_by_threshold() {
    let ok = bin(&["verify", "--n", "20", "--seed", "3"]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stdout));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("PASS"));
    let fail = bin(&["verify", "--n", "20", "--seed", "3", "--tol", "1e-20"]);
    assert_eq!(code(&fail), 1);
    assert!(String::from_utf8_lossy(&fail.stdout).contains("FAIL"));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let args = ["sweep", "--figure", "4", "--grid", "7"];
    assert_eq!(bin(&args).stdout, bin(&args).stdout);
    let args = ["verify", "--n", "10", "--seed", "9"];
    assert_eq!(bin(&args).stdout, bin(&args).stdout);
}

#[test]
fn json_config_drives_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.json");
    let csv = dir.path().join("out.csv");
    std::fs::write(
        &config,
        r#"{"channel": "dephasing", "p": "0:1:5", "rho_ee": 0.5, "e0sq": "0:1:3", "phi": 0.7}"#,
    )
    .unwrap();
    let out = bin(&["sweep", "--config", config.to_str().unwrap(), "-o", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = parse_csv(&std::fs::read_to_string(&csv).unwrap());
    assert_eq!(header[0], "p");
    assert_eq!(rows.len(), 15);
    let tau = header.iter().position(|h| h == "tau").unwrap();
    for row in &rows {
        let p: f64 = row[0].parse().unwrap();
        let e0sq: f64 = row[3].parse().unwrap();
        let want = common::channel_formula("dephasing", "tau", p, 0.5, e0sq).unwrap();
        assert!((row[tau].parse::<f64>().unwrap() - want).abs() < 1e-12);
    }
}

#[test]
fn missing_config_file_is_usage_error() {
    assert_eq!(code(&bin(&["sweep", "--config", "/nonexistent/sweep.json"])), 2);
}

#[test]
fn figure_presets_reproduce_channel_formulas() {
    for preset in FIGURES {
        let n = preset.number.to_string();
        let out = bin(&["sweep", "--figure", &n, "--grid", "9"]);
        assert_eq!(code(&out), 0, "figure {n}");
        let (header, rows) = parse_csv(&String::from_utf8(out.stdout).unwrap());
        assert!(rows.len() >= 9 * 9, "figure {n}: {} rows", rows.len());
        let field = |row: &[String], name: &str| -> f64 {
            row[header.iter().position(|h| h == name).unwrap()].parse().unwrap()
        };
        for row in &rows {
            let (p, rho, e0sq) = (field(row, "p"), field(row, "rho_ee"), field(row, "e0sq"));
            for col in common::COLUMNS {
                if let Some(want) = common::channel_formula(preset.channel, col, p, rho, e0sq) {
                    let got = field(row, col);
                    assert!((got - want).abs() < 1e-12, "figure {n} {col} at p={p} rho={rho}: {got} vs {want}");
                }
            }
        }
    }
}
