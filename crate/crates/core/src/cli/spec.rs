//! Parsing of channel descriptions, complex entries and sweep axes.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Deserializer, Serialize};

use crate::bipartite::feasible_rho_ee;
use crate::channels::{
    amplitude_damping, dephasing, kraus_from_unitary, phase_flip, CMat4, KrausPair,
};
use crate::error::{Error, Result};
use crate::mat2::CMat2;

/// Parses `re`, `imj` or `re±imj`, e.g. `0.5-0.5j`, `-j`, `1e-3+2e-1j`.
pub fn parse_complex(text: &str) -> Result<C64> {
    let s = text.trim();
    let bad = || Error::Invalid(format!("cannot parse complex number `{text}` (expected re+imj)"));
    let num = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    let Some(body) = s.strip_suffix(['j', 'i']) else {
        return s.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(C64::new(body[..k].parse().map_err(|_| bad())?, num(&body[k..])?)),
        None => Ok(C64::new(0.0, num(body)?)),
    }
}

fn parse_entries<const N: usize>(what: &str, raw: &[String]) -> Result<[C64; N]> {
    if raw.len() != N {
        return Err(Error::Invalid(format!("{what} needs {N} entries, got {}", raw.len())));
    }
    let mut out = [C64::new(0.0, 0.0); N];
    for (o, r) in out.iter_mut().zip(raw) {
        *o = parse_complex(r)?;
    }
    Ok(out)
}

/// Channel as requested on the command line or in a config file.
#[derive(Clone, Debug, PartialEq)]
pub enum ChannelSpec {
    AmplitudeDamping,
    Dephasing,
    PhaseFlip,
    /// Fixed pair, given directly or read off a unitary.
    Fixed(KrausPair),
}

impl ChannelSpec {
    /// `k0`, `k1`: four row-major entries each; `unitary`: sixteen.
    pub fn parse(
        name: &str,
        k0: Option<&[String]>,
        k1: Option<&[String]>,
        unitary: Option<&[String]>,
    ) -> Result<Self> {
        match name {
            "ad" | "amplitude-damping" => Ok(Self::AmplitudeDamping),
            "dephasing" | "d" => Ok(Self::Dephasing),
            "phase-flip" | "pf" => Ok(Self::PhaseFlip),
            "custom" => {
                let (Some(k0), Some(k1)) = (k0, k1) else {
                    return Err(Error::Invalid("channel `custom` needs --k0 and --k1".into()));
                };
                let [a, b, c, d] = parse_entries::<4>("k0", k0)?;
                let k0 = CMat2::new(a, b, c, d);
                let [a, b, c, d] = parse_entries::<4>("k1", k1)?;
                Ok(Self::Fixed(KrausPair::new(k0, CMat2::new(a, b, c, d))?))
            }
            "unitary" => {
                let Some(u) = unitary else {
                    return Err(Error::Invalid("channel `unitary` needs --unitary".into()));
                };
                let e = parse_entries::<16>("unitary", u)?;
                let rows: [[C64; 4]; 4] = std::array::from_fn(|r| std::array::from_fn(|c| e[4 * r + c]));
                Ok(Self::Fixed(kraus_from_unitary(&CMat4::from_rows(rows))?))
            }
            other => Err(Error::Invalid(format!(
                "unknown channel `{other}` (expected ad, dephasing, phase-flip, custom or unitary)"
            ))),
        }
    }

    pub fn is_parametric(&self) -> bool {
        !matches!(self, Self::Fixed(_))
    }

    /// Kraus pair at strength `p`; fixed channels ignore `p`.
    pub fn at(&self, p: f64) -> Result<KrausPair> {
        match self {
            Self::AmplitudeDamping => amplitude_damping(p),
            Self::Dephasing => dephasing(p),
            Self::PhaseFlip => phase_flip(p),
            Self::Fixed(kp) => Ok(*kp),
        }
    }
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::AmplitudeDamping => "amplitude damping",
            Self::Dephasing => "dephasing",
            Self::PhaseFlip => "phase flip",
            Self::Fixed(_) => "fixed Kraus pair",
        })
    }
}

/// One sweep axis: `0.4`, `start:stop:count` or, for `rho_ee` only,
/// `feasible[:count]`.
#[derive(Clone, Debug, PartialEq)]
pub enum Axis {
    Fixed(f64),
    Grid { start: f64, stop: f64, count: usize },
    Feasible { count: usize },
}

pub const DEFAULT_GRID: usize = 50;

impl FromStr for Axis {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("cannot parse axis `{text}` (expected x, start:stop:count or feasible[:count])"));
        let parts: Vec<&str> = text.trim().split(':').collect();
        let count = |t: &str| t.parse::<usize>().map_err(|_| bad());
        match parts.as_slice() {
            ["feasible"] => Ok(Self::Feasible { count: DEFAULT_GRID }),
            ["feasible", n] => Ok(Self::Feasible { count: count(n)? }),
            [x] => Ok(Self::Fixed(x.parse().map_err(|_| bad())?)),
            [a, b, n] => Ok(Self::Grid {
                start: a.parse().map_err(|_| bad())?,
                stop: b.parse().map_err(|_| bad())?,
                count: count(n)?,
            }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Fixed(x) => write!(f, "{x}"),
            Self::Grid { start, stop, count } => write!(f, "{start}:{stop}:{count}"),
            Self::Feasible { count } => write!(f, "feasible:{count}"),
        }
    }
}

fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        1 => vec![start],
        _ => (0..count)
            .map(|i| {
                if i + 1 == count {
                    stop
                } else {
                    start + (stop - start) * i as f64 / (count - 1) as f64
                }
            })
            .collect(),
    }
}

impl Axis {
    /// Grid points; `feasible` spans `[ρ⁻, ρ⁺]` for `e0sq`.
    pub fn values(&self, name: &str, e0sq: Option<f64>) -> Result<Vec<f64>> {
        let empty = || Error::Invalid(format!("axis `{name}` is empty"));
        match *self {
            Self::Fixed(x) => Ok(vec![x]),
            Self::Grid { count: 0, .. } | Self::Feasible { count: 0 } => Err(empty()),
            Self::Grid { start, stop, count } => Ok(linspace(start, stop, count)),
            Self::Feasible { count } => {
                let e = e0sq.ok_or_else(|| {
                    Error::Invalid(format!("axis `{name}` = feasible needs a single e0sq value"))
                })?;
                let (lo, hi) = feasible_rho_ee(e);
                Ok(linspace(lo, hi, count))
            }
        }
    }
}

/// Accepts a JSON number or an axis string.
pub(crate) fn axis_field<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<String>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Text(String),
    }
    Ok(Option::<Raw>::deserialize(d)?.map(|r| match r {
        Raw::Num(x) => x.to_string(),
        Raw::Text(t) => t,
    }))
}

/// What a figure preset plots; the CSV always carries every column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FigurePreset {
    pub number: u8,
    pub channel: &'static str,
    pub columns: &'static [&'static str],
    /// `true`: `(p, e0sq)` at `rho_ee = 0.5`; `false`: `(p, rho_ee)` at `e0sq = 0.4`.
    pub over_e0sq: bool,
}

pub const FIGURES: [FigurePreset; 9] = [
    FigurePreset { number: 1, channel: "ad", columns: &["c2_e_ssp"], over_e0sq: false },
    FigurePreset { number: 2, channel: "ad", columns: &["c2_s_spe"], over_e0sq: false },
    FigurePreset { number: 3, channel: "ad", columns: &["c2_s_spe", "c2_e_ssp"], over_e0sq: true },
    FigurePreset { number: 4, channel: "dephasing", columns: &["c2_e_ssp", "tau"], over_e0sq: false },
    FigurePreset { number: 5, channel: "dephasing", columns: &["c2_s_spe", "tau"], over_e0sq: false },
    FigurePreset { number: 6, channel: "dephasing", columns: &["tau"], over_e0sq: true },
    FigurePreset { number: 7, channel: "phase-flip", columns: &["c2_e_ssp", "tau"], over_e0sq: false },
    FigurePreset { number: 8, channel: "phase-flip", columns: &["c2_s_spe", "tau"], over_e0sq: false },
    FigurePreset { number: 9, channel: "phase-flip", columns: &["tau"], over_e0sq: true },
];

pub fn figure(number: u8) -> Result<&'static FigurePreset> {
    FIGURES
        .iter()
        .find(|f| f.number == number)
        .ok_or_else(|| Error::Invalid(format!("no figure preset {number} (expected 1-9)")))
}

impl FigurePreset {
    /// `(p, rho_ee, e0sq)` axes with `grid` points per swept axis.
    pub fn axes(&self, grid: usize) -> (Axis, Axis, Axis) {
        let p = Axis::Grid { start: 0.0, stop: 1.0, count: grid };
        if self.over_e0sq {
            (p, Axis::Fixed(0.5), Axis::Grid { start: 0.0, stop: 1.0, count: grid })
        } else {
            (p, Axis::Feasible { count: grid }, Axis::Fixed(0.4))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_syntax() {
        let cases = [
            ("0.5", C64::new(0.5, 0.0)),
            ("-2", C64::new(-2.0, 0.0)),
            ("0.5-0.5j", C64::new(0.5, -0.5)),
            ("-0.5+0.25j", C64::new(-0.5, 0.25)),
            ("j", C64::new(0.0, 1.0)),
            ("-j", C64::new(0.0, -1.0)),
            ("3j", C64::new(0.0, 3.0)),
            ("1e-3+2e-1j", C64::new(1e-3, 0.2)),
            ("1e-3-j", C64::new(1e-3, -1.0)),
            ("2E+1-1.5e-2j", C64::new(20.0, -0.015)),
        ];
        for (text, want) in cases {
            assert_eq!(parse_complex(text).unwrap(), want, "{text}");
        }
        for bad in ["", "abc", "1+", "1+2", "0.5+xj"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn axes() {
        assert_eq!("0.4".parse::<Axis>().unwrap(), Axis::Fixed(0.4));
        assert_eq!(
            "0:1:5".parse::<Axis>().unwrap().values("p", None).unwrap(),
            vec![0.0, 0.25, 0.5, 0.75, 1.0]
        );
        assert_eq!("feasible".parse::<Axis>().unwrap(), Axis::Feasible { count: DEFAULT_GRID });
        let v = "feasible:3".parse::<Axis>().unwrap().values("rho_ee", Some(0.64)).unwrap();
        assert!((v[0] - 0.2).abs() < 1e-15 && (v[1] - 0.5).abs() < 1e-15 && (v[2] - 0.8).abs() < 1e-15);
        assert!("0:1:0".parse::<Axis>().unwrap().values("p", None).is_err());
        assert!("feasible".parse::<Axis>().unwrap().values("rho_ee", None).is_err());
        assert!("1:2".parse::<Axis>().is_err());
    }

    #[test]
    fn channel_specs() {
        assert_eq!(ChannelSpec::parse("ad", None, None, None).unwrap(), ChannelSpec::AmplitudeDamping);
        let strings = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let k0 = strings(&["1", "0", "0", "0"]);
        let k1 = strings(&["0", "0", "0", "1"]);
        let spec = ChannelSpec::parse("custom", Some(&k0), Some(&k1), None).unwrap();
        assert!(!spec.is_parametric());
        let bad = strings(&["1", "0", "0", "1"]);
        let err = ChannelSpec::parse("custom", Some(&k0), Some(&bad), None).unwrap_err();
        assert!(matches!(err, Error::Incomplete { .. }));
        assert!(err.to_string().contains("not complete"));
        assert!(ChannelSpec::parse("bogus", None, None, None).is_err());

        let mut u = vec!["0".to_string(); 16];
        for k in [0, 5, 10, 15] {
            u[k] = "1".into();
        }
        let spec = ChannelSpec::parse("unitary", None, None, Some(&u)).unwrap();
        assert_eq!(spec.at(0.3).unwrap(), KrausPair::identity());
    }

    #[test]
    fn presets_cover_nine_figures() {
        for n in 1..=9 {
            assert_eq!(figure(n).unwrap().number, n);
        }
        assert!(figure(10).is_err());
    }
}
