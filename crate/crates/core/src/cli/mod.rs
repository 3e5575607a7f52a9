//! Command-line front end: `classify`, `sweep` and `verify`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

pub mod spec;
pub mod sweep;
pub mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::bipartite::{EntanglementReport, InitialReduced};
use crate::classify::DEFAULT_TOL;
use crate::error::{Error, Result};
use spec::{axis_field, figure, Axis, ChannelSpec, DEFAULT_GRID};
use sweep::Sweep;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

const COMPLEX_HELP: &str = "Complex entries use the syntax re+imj, e.g. 0.5, -0.5j, 0.5-0.5j.";

#[derive(Debug, Parser)]
#[command(name = "kraus-entanglement", version, about = "Entanglement of S'-S-E under a two-outcome channel on S", after_help = COMPLEX_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full closed-form report and family for one channel and initial state.
    Classify(ClassifyArgs),
    /// Evaluate a grid of points and write CSV.
    Sweep(SweepArgs),
    /// Compare closed forms with the state-vector oracle on random instances.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct ChannelArgs {
    /// ad, dephasing, phase-flip, custom or unitary.
    #[arg(long)]
    #[serde(default)]
    pub channel: Option<String>,
    /// K0 row-major as four comma-separated complex entries (custom channel).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    #[serde(default)]
    pub k0: Option<Vec<String>>,
    /// K1 row-major as four comma-separated complex entries (custom channel).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    #[serde(default)]
    pub k1: Option<Vec<String>>,
    /// 4×4 unitary on S⊗E, sixteen row-major entries (unitary channel).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    #[serde(default)]
    pub unitary: Option<Vec<String>>,
}

impl ChannelArgs {
    fn resolve(&self) -> Result<ChannelSpec> {
        let name = self
            .channel
            .as_deref()
            .ok_or_else(|| Error::Invalid("no channel given (use --channel)".into()))?;
        ChannelSpec::parse(name, self.k0.as_deref(), self.k1.as_deref(), self.unitary.as_deref())
    }

    fn or(self, other: Self) -> Self {
        Self {
            channel: self.channel.or(other.channel),
            k0: self.k0.or(other.k0),
            k1: self.k1.or(other.k1),
            unitary: self.unitary.or(other.unitary),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// Channel strength in [0, 1]; ignored by custom and unitary channels.
    #[arg(long, default_value_t = 0.0)]
    pub p: f64,
    /// Excited population of S.
    #[arg(long)]
    pub rho_ee: f64,
    /// Initial entanglement E0²; exclusive with --rho-ge.
    #[arg(long, conflicts_with = "rho_ge")]
    pub e0sq: Option<f64>,
    /// Coherence magnitude |rho_ge|.
    #[arg(long)]
    pub rho_ge: Option<f64>,
    /// Coherence phase.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

/// Sweep settings; the same field names are accepted in a JSON file.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    /// JSON config file; command-line flags override its fields.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub channel: ChannelArgs,
    /// Axis: value, start:stop:count.
    #[arg(long)]
    #[serde(default, deserialize_with = "axis_field")]
    pub p: Option<String>,
    /// Axis: value, start:stop:count or feasible[:count].
    #[arg(long)]
    #[serde(default, deserialize_with = "axis_field")]
    pub rho_ee: Option<String>,
    /// Axis: value, start:stop:count.
    #[arg(long)]
    #[serde(default, deserialize_with = "axis_field")]
    pub e0sq: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub phi: Option<f64>,
    /// Figure preset 1-9.
    #[arg(long)]
    #[serde(default)]
    pub figure: Option<u8>,
    /// Points per swept axis of a figure preset.
    #[arg(long)]
    #[serde(default)]
    pub grid: Option<usize>,
    #[arg(long)]
    #[serde(default)]
    pub tol: Option<f64>,
    /// Output CSV path; stdout when absent.
    #[arg(long, short)]
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl SweepArgs {
    /// `self` wins over `file` field by field.
    pub fn or(self, file: Self) -> Self {
        Self {
            config: self.config,
            channel: self.channel.or(file.channel),
            p: self.p.or(file.p),
            rho_ee: self.rho_ee.or(file.rho_ee),
            e0sq: self.e0sq.or(file.e0sq),
            phi: self.phi.or(file.phi),
            figure: self.figure.or(file.figure),
            grid: self.grid.or(file.grid),
            tol: self.tol.or(file.tol),
            output: self.output.or(file.output),
        }
    }

    /// Flags, then the config file, then the figure preset.
    pub fn resolve(self) -> Result<(Sweep, Option<PathBuf>)> {
        let merged = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
                let file: SweepArgs = serde_json::from_str(&text)
                    .map_err(|e| Error::Invalid(format!("bad config {}: {e}", path.display())))?;
                self.or(file)
            }
            None => self,
        };
        let axis = |s: &Option<String>| s.as_deref().map(str::parse::<Axis>).transpose();
        let (mut p, mut rho_ee, mut e0sq) = (axis(&merged.p)?, axis(&merged.rho_ee)?, axis(&merged.e0sq)?);
        let mut channel_args = merged.channel;
        if let Some(n) = merged.figure {
            let preset = figure(n)?;
            let (pp, pr, pe) = preset.axes(merged.grid.unwrap_or(DEFAULT_GRID));
            p = p.or(Some(pp));
            rho_ee = rho_ee.or(Some(pr));
            e0sq = e0sq.or(Some(pe));
            channel_args.channel = channel_args.channel.or(Some(preset.channel.into()));
        } else if merged.grid.is_some() {
            return Err(Error::Invalid("--grid applies to figure presets only".into()));
        }
        let channel = channel_args.resolve()?;
        let p = match (p, channel.is_parametric()) {
            (Some(p), _) => p,
            (None, false) => Axis::Fixed(0.0),
            (None, true) => return Err(Error::Invalid("no p axis given (use --p)".into())),
        };
        let missing = |n: &str| Error::Invalid(format!("no {n} axis given (use --{})", n.replace('_', "-")));
        Ok((
            Sweep {
                channel,
                p,
                rho_ee: rho_ee.ok_or_else(|| missing("rho_ee"))?,
                phi: merged.phi.unwrap_or(0.0),
                e0sq: e0sq.ok_or_else(|| missing("e0sq"))?,
                tol: merged.tol.unwrap_or(DEFAULT_TOL),
            },
            merged.output,
        ))
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Number of random instances.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Threshold for exact identities; CKW and 3-tangle correspondences use 10×.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

pub fn classify_text(args: &ClassifyArgs) -> Result<String> {
    let kp = args.channel.resolve()?.at(args.p)?;
    let r0 = match (args.e0sq, args.rho_ge) {
        (Some(e), _) => InitialReduced::from_e0sq(args.rho_ee, args.phi, e)?,
        (None, Some(c)) => InitialReduced::new(args.rho_ee, args.phi, c)?,
        (None, None) => return Err(Error::Invalid("give --e0sq or --rho-ge".into())),
    };
    let rep = EntanglementReport::closed_form(&kp, &r0, args.tol)?;
    let c = rep
        .classification
        .conditions
        .expect("closed-form classification records its conditions");
    let mut out = format!(
        "rho_ee        {:.12}\n|rho_ge|      {:.12}\nphi           {:.12}\nE0^2          {:.12}\n",
        r0.rho_ee(),
        r0.rho_ge_abs(),
        r0.phi(),
        r0.e0sq()
    );
    out += &rep.to_string();
    out += &format!(
        "\nu = 4det(K0K1)            {:.12} {:+.12}i\nv = g^2(K0,K1)            {:.12} {:+.12}i\n|u - v|                   {:.6e}\n|det K0| + |det K1|       {:.12}\nS-separable residual      {:.6e}\nE-separable residual      {:.6e}\n",
        c.u.re, c.u.im, c.v.re, c.v.im, c.gap, c.det_sum, c.bisep_s_residual, c.bisep_e_residual
    );
    Ok(out)
}

fn run_sweep(args: SweepArgs) -> Result<()> {
    let figure_no = args.figure;
    let (sweep, output) = args.resolve()?;
    let out = sweep.run()?;
    let io_err = |e: io::Error| Error::Invalid(format!("cannot write output: {e}"));
    match &output {
        Some(path) => {
            let f = File::create(path).map_err(|e| Error::Invalid(format!("cannot create {}: {e}", path.display())))?;
            out.write_csv(BufWriter::new(f)).map_err(io_err)?;
        }
        None => out.write_csv(io::stdout().lock()).map_err(io_err)?,
    }
    if let Some(n) = figure_no {
        let preset = figure(n)?;
        eprintln!("figure {n}: {} channel, plotted columns {}", sweep.channel, preset.columns.join(", "));
    }
    eprintln!("{} rows, {} infeasible points skipped", out.rows.len(), out.infeasible);
    Ok(())
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> u8 {
    let result = match cli.command {
        Command::Classify(args) => classify_text(&args).map(|text| {
            print!("{text}");
            EXIT_OK
        }),
        Command::Sweep(args) => run_sweep(args).map(|()| EXIT_OK),
        Command::Verify(args) => {
            let report = verify::run_verify(args.n, args.seed, args.tol);
            println!("{report}");
            let _ = io::stdout().flush();
            Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        EXIT_USAGE
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("kraus-entanglement").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn classify_ad_point() {
        let Command::Classify(a) = parse(&["classify", "--channel", "ad", "--p", "0.5", "--e0sq", "0.4", "--rho-ee", "0.5"]).command else {
            panic!()
        };
        let text = classify_text(&a).unwrap();
        assert!(text.contains("family        W_GENUINE\n"), "{text}");
        assert!(text.contains("C2_S'S        0.200000000000"), "{text}");
    }

    #[test]
    fn custom_channel_with_negative_entries() {
        let Command::Classify(a) = parse(&[
            "classify", "--channel", "custom", "--k0", "1,0,0,-0.6j", "--k1", "0,0.8,0,0", "--rho-ee", "0.5", "--e0sq", "0.5",
        ])
        .command
        else {
            panic!()
        };
        assert!(classify_text(&a).is_ok());
    }

    #[test]
    fn json_config_and_flag_override() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        std::fs::write(
            &path,
            r#"{"channel": "dephasing", "p": "0:1:3", "rho_ee": "feasible:2", "e0sq": 0.4, "phi": 0.5}"#,
        )
        .unwrap();
        let Command::Sweep(a) = parse(&["sweep", "--config", path.to_str().unwrap(), "--channel", "pf"]).command else {
            panic!()
        };
        let (s, out) = a.resolve().unwrap();
        assert_eq!(s.channel, ChannelSpec::PhaseFlip);
        assert_eq!(s.e0sq, Axis::Fixed(0.4));
        assert_eq!(s.phi, 0.5);
        assert_eq!(s.run().unwrap().rows.len(), 6);
        assert!(out.is_none());
    }

    #[test]
    fn malformed_axis_is_rejected() {
        let args = SweepArgs {
            channel: ChannelArgs {
                channel: Some("ad".into()),
                ..Default::default()
            },
            p: Some("0:1".into()),
            rho_ee: Some("0.5".into()),
            e0sq: Some("0.4".into()),
            ..Default::default()
        };
        assert!(args.resolve().is_err());
    }

    #[test]
    fn figure_preset_fills_axes() {
        let args = SweepArgs {
            figure: Some(3),
            grid: Some(4),
            ..Default::default()
        };
        let (s, _) = args.resolve().unwrap();
        assert_eq!(s.channel, ChannelSpec::AmplitudeDamping);
        assert_eq!(s.rho_ee, Axis::Fixed(0.5));
        assert_eq!(s.run().unwrap().rows.len(), 16);
    }
}
