//! Grid evaluation of the closed forms and CSV output.

use std::io::Write;

use rayon::prelude::*;

use super::spec::{Axis, ChannelSpec};
use crate::bipartite::{EntanglementReport, InitialReduced};
use crate::error::{Error, Result};

pub const CSV_HEADER: &str =
    "p,rho_ee,phi,e0sq,tau,c2_sp_se,c2_s_spe,c2_e_ssp,c2_sps,c2_spe,c2_se,G,dS,dE,family,tier";

/// Fully resolved sweep.
#[derive(Clone, Debug)]
pub struct Sweep {
    pub channel: ChannelSpec,
    pub p: Axis,
    pub rho_ee: Axis,
    pub phi: f64,
    pub e0sq: Axis,
    pub tol: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CsvRow {
    pub p: f64,
    pub rho_ee: f64,
    pub phi: f64,
    pub e0sq: f64,
    pub report: EntanglementReport,
}

impl CsvRow {
    pub fn to_csv(&self) -> String {
        let t = &self.report.tangles;
        let nums = [
            self.p,
            self.rho_ee,
            self.phi,
            self.e0sq,
            t.tau,
            t.c2_sp_se,
            t.c2_s_spe,
            t.c2_e_ssp,
            t.c2_sps,
            t.c2_spe,
            t.c2_se,
            self.report.g,
            self.report.d_s,
            self.report.d_e,
        ];
        // `+ 0.0` folds -0.0 into 0.0
        let mut line = nums.map(|x| format!("{:.16e}", x + 0.0)).join(",");
        line.push(',');
        line.push_str(self.report.classification.label.as_str());
        line.push(',');
        line.push_str(self.report.classification.tier.as_str());
        line
    }
}

#[derive(Clone, Debug)]
pub struct SweepOutput {
    pub rows: Vec<CsvRow>,
    /// Grid points with `e0sq > 4 rho_ee (1 − rho_ee)`.
    pub infeasible: usize,
}

impl SweepOutput {
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for row in &self.rows {
            writeln!(out, "{}", row.to_csv())?;
        }
        out.flush()
    }
}

impl Sweep {
    /// Evaluates every grid point, `p` outermost and `e0sq` innermost.
    pub fn run(&self) -> Result<SweepOutput> {
        let ps = self.p.values("p", None)?;
        let e0s = self.e0sq.values("e0sq", None)?;
        let single_e0 = (e0s.len() == 1).then(|| e0s[0]);
        let rhos = self.rho_ee.values("rho_ee", single_e0)?;
        if !self.channel.is_parametric() && ps.len() > 1 {
            log::warn!("fixed Kraus pair ignores the p axis");
        }

        let mut points = Vec::with_capacity(ps.len() * rhos.len() * e0s.len());
        for &p in &ps {
            for &r in &rhos {
                points.extend(e0s.iter().map(|&e| (p, r, e)));
            }
        }
        let evaluated: Vec<Option<CsvRow>> = points
            .par_iter()
            .map(|&(p, rho_ee, e0sq)| self.point(p, rho_ee, e0sq))
            .collect::<Result<_>>()?;
        let infeasible = evaluated.iter().filter(|r| r.is_none()).count();
        Ok(SweepOutput {
            rows: evaluated.into_iter().flatten().collect(),
            infeasible,
        })
    }

    fn point(&self, p: f64, rho_ee: f64, e0sq: f64) -> Result<Option<CsvRow>> {
        let r0 = match InitialReduced::from_e0sq(rho_ee, self.phi, e0sq) {
            Ok(r0) => r0,
            Err(Error::InfeasibleInitialState { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let kp = self.channel.at(p)?;
        Ok(Some(CsvRow {
            p,
            rho_ee,
            phi: r0.phi(),
            e0sq,
            report: EntanglementReport::closed_form(&kp, &r0, self.tol)?,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sweep(channel: ChannelSpec, p: &str, rho: &str, e0: &str) -> Sweep {
        Sweep {
            channel,
            p: p.parse().unwrap(),
            rho_ee: rho.parse().unwrap(),
            phi: 0.0,
            e0sq: e0.parse().unwrap(),
            tol: 1e-9,
        }
    }

    #[test]
    fn row_order_and_infeasible_count() {
        let out = sweep(ChannelSpec::AmplitudeDamping, "0:1:3", "0.1:0.5:2", "0.2:0.8:2")
            .run()
            .unwrap();
        // 4 rho(1-rho) = 0.36 at rho = 0.1, so e0sq = 0.8 is skipped there
        assert_eq!(out.infeasible, 3);
        assert_eq!(out.rows.len(), 9);
        let keys: Vec<(f64, f64, f64)> = out.rows.iter().map(|r| (r.p, r.rho_ee, r.e0sq)).collect();
        assert_eq!(keys[0], (0.0, 0.1, 0.2));
        assert_eq!(keys[1], (0.0, 0.5, 0.2));
        assert_eq!(keys[2], (0.0, 0.5, 0.8));
        assert_eq!(keys[3].0, 0.5);
    }

    #[test]
    fn csv_has_fixed_shape() {
        let out = sweep(ChannelSpec::Dephasing, "0.5", "feasible:4", "0.4").run().unwrap();
        let mut buf = Vec::new();
        out.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 5);
        for l in &lines[1..] {
            assert_eq!(l.split(',').count(), 16);
            assert!(l.ends_with("GHZ,KRAUS_CRITERION"), "{l}");
        }
    }

    #[test]
    fn empty_grid_is_an_error() {
        assert!(sweep(ChannelSpec::PhaseFlip, "0:1:0", "0.5", "0.4").run().is_err());
    }

    #[test]
    fn floats_round_trip() {
        let out = sweep(ChannelSpec::AmplitudeDamping, "0.3", "0.37", "0.41").run().unwrap();
        let line = out.rows[0].to_csv();
        let col: f64 = line.split(',').nth(5).unwrap().parse().unwrap();
        assert_eq!(col, out.rows[0].report.tangles.c2_sp_se);
    }
}
