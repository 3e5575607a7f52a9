//! Family of the evolved state read off the Kraus pair.
//!
//! | family          | condition                                        |
//! |-----------------|--------------------------------------------------|
//! | GHZ             | `4 det(K₀K₁) ≠ g²(K₀, K₁)`                       |
//! | W, 3-partite    | `0 < |det K₀| + |det K₁| < 1` (sufficient only)  |
//! | S-separable     | `det K₀ = det K₁ = G = 0`                        |
//! | E-separable     | `G = E₀² (|det K₀|² + |det K₁|² − 1)`            |
//!
//! When the W condition fails and neither biseparable condition holds, the
//! bipartition tangles are computed from the state itself.

use std::fmt;

use num_complex::Complex64 as C64;

use crate::bipartite::{g_term, InitialReduced};
use crate::channels::KrausPair;
use crate::error::Result;
use crate::oracle::{evolve3, purity_tangle_of, PureStateN};
use crate::tangle::{three_tangle_direct, ThreeQubitPure};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyLabel {
    Ghz,
    WGenuine,
    /// `S` disentangled from `S'E`.
    BisepS,
    /// `E` disentangled from `SS'`.
    BisepE,
    /// `S'` disentangled; only reachable from [`classify_direct`].
    BisepSPrime,
    WGenuineByDirect,
    /// Only reachable from [`classify_direct`].
    FullySeparable,
    DegenerateE0Zero,
}

impl FamilyLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyLabel::Ghz => "GHZ",
            FamilyLabel::WGenuine => "W_GENUINE",
            FamilyLabel::BisepS => "BISEP_S",
            FamilyLabel::BisepE => "BISEP_E",
            FamilyLabel::BisepSPrime => "BISEP_SP",
            FamilyLabel::WGenuineByDirect => "W_GENUINE_BY_DIRECT",
            FamilyLabel::FullySeparable => "FULLY_SEPARABLE",
            FamilyLabel::DegenerateE0Zero => "DEGENERATE_E0_ZERO",
        }
    }

    /// Equality up to how a genuinely W-entangled state was detected.
    pub fn same_family(&self, other: &FamilyLabel) -> bool {
        let canon = |l: &FamilyLabel| match l {
            FamilyLabel::WGenuineByDirect => FamilyLabel::WGenuine,
            l => *l,
        };
        canon(self) == canon(other)
    }
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecisionTier {
    KrausCriterion,
    DirectComputation,
}

impl DecisionTier {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecisionTier::KrausCriterion => "KRAUS_CRITERION",
            DecisionTier::DirectComputation => "DIRECT_COMPUTATION",
        }
    }
}

impl fmt::Display for DecisionTier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Raw values behind the Kraus-pair tests.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KrausConditions {
    /// `4 det(K₀K₁)`
    pub u: C64,
    /// `g²(K₀, K₁)`
    pub v: C64,
    pub gap: f64,
    pub det_sum: f64,
    pub g: f64,
    pub e0sq: f64,
    /// `max(|det K₀|, |det K₁|, |G|)`; zero iff `S`-separable.
    pub bisep_s_residual: f64,
    /// `|G − E₀²(|det K₀|² + |det K₁|² − 1)|`; zero iff `E`-separable.
    pub bisep_e_residual: f64,
}

impl KrausConditions {
    pub fn evaluate(kp: &KrausPair, r0: &InitialReduced) -> Result<Self> {
        let (u, v) = (kp.det_product(), kp.mixed_det_sq());
        let (d0, d1) = (kp.k0().det().norm(), kp.k1().det().norm());
        let g = g_term(kp, r0)?;
        let e0sq = r0.e0sq();
        Ok(Self {
            u,
            v,
            gap: (u - v).norm(),
            det_sum: d0 + d1,
            g,
            e0sq,
            bisep_s_residual: d0.max(d1).max(g.abs()),
            bisep_e_residual: (g - e0sq * (d0 * d0 + d1 * d1 - 1.0)).abs(),
        })
    }

    /// `|u − v|` against `tol · max(1, |u|, |v|)`.
    pub fn is_ghz(&self, tol: f64) -> bool {
        self.gap > tol * 1f64.max(self.u.norm()).max(self.v.norm())
    }
}

/// Tangles `(τ, C²_{S'|SE}, C²_{S|S'E}, C²_{E|SS'})` of an explicit state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirectTangles {
    pub tau: f64,
    pub cuts: [f64; 3],
}

impl DirectTangles {
    pub fn of(s: &ThreeQubitPure) -> Self {
        let state = PureStateN::from(*s);
        Self {
            tau: three_tangle_direct(s),
            cuts: [0, 1, 2].map(|q| purity_tangle_of(&state, q)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Classification {
    pub label: FamilyLabel,
    pub tier: DecisionTier,
    pub conditions: Option<KrausConditions>,
    pub direct: Option<DirectTangles>,
}

/// Table-driven classification with a direct fallback.
///
/// `E₀² ≤ tol` is outside the scope of the Kraus criteria and is reported as
/// [`FamilyLabel::DegenerateE0Zero`].
pub fn classify(kp: &KrausPair, r0: &InitialReduced, tol: f64) -> Result<Classification> {
    let c = KrausConditions::evaluate(kp, r0)?;
    let tier1 = |label| Classification {
        label,
        tier: DecisionTier::KrausCriterion,
        conditions: Some(c),
        direct: None,
    };

    if c.e0sq <= tol {
        return Ok(tier1(FamilyLabel::DegenerateE0Zero));
    }
    if c.is_ghz(tol) {
        return Ok(tier1(FamilyLabel::Ghz));
    }
    if c.bisep_s_residual <= tol {
        return Ok(tier1(FamilyLabel::BisepS));
    }
    if c.bisep_e_residual <= tol {
        return Ok(tier1(FamilyLabel::BisepE));
    }
    if c.det_sum > tol && c.det_sum < 1.0 - tol {
        return Ok(tier1(FamilyLabel::WGenuine));
    }

    let state = evolve3(kp, &r0.purification());
    let direct = DirectTangles::of(&ThreeQubitPure::try_from(&state)?);
    let label = match direct.cuts {
        [_, s, _] if s <= tol => FamilyLabel::BisepS,
        [_, _, e] if e <= tol => FamilyLabel::BisepE,
        _ => FamilyLabel::WGenuineByDirect,
    };
    Ok(Classification {
        label,
        tier: DecisionTier::DirectComputation,
        conditions: Some(c),
        direct: Some(direct),
    })
}

/// Classification of an arbitrary 3-qubit pure state from its 3-tangle and
/// single-qubit tangles.
pub fn classify_direct(s: &ThreeQubitPure, tol: f64) -> Classification {
    let direct = DirectTangles::of(s);
    let label = if direct.tau > tol {
        FamilyLabel::Ghz
    } else {
        let zero: Vec<usize> = (0..3).filter(|&q| direct.cuts[q] <= tol).collect();
        match zero.as_slice() {
            [] => FamilyLabel::WGenuineByDirect,
            [0] => FamilyLabel::BisepSPrime,
            [1] => FamilyLabel::BisepS,
            [2] => FamilyLabel::BisepE,
            _ => FamilyLabel::FullySeparable,
        }
    };
    Classification {
        label,
        tier: DecisionTier::DirectComputation,
        conditions: None,
        direct: Some(direct),
    }
}
