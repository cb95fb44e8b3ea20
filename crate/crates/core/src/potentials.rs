//! The potential family and the energy to (kappa, q, nu, z0) maps.
//!
//! Units are 2m/hbar^2 = 1 throughout, so the Schrödinger equation reads
//! psi'' = (V - E) psi.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Members of the exponential family and the three cubic segments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// V0 (e^{2|x|/a} - 1): confining well
    V1,
    /// V0 (e^{-2|x|/a} - 1): valley falling to -V0
    V2,
    /// V0 (e^{-2x/a} - 1): analytic, V1 on the left and V2 on the right
    V3,
    /// V0 (1 - e^{2|x|/a}): bottomless
    V4,
    /// V0 (1 - e^{-2|x|/a}): well with asymptote V0
    V5,
    /// V0 (1 - e^{-2x/a}): analytic, V4 on the left and V5 on the right
    V6,
    /// -|x|^3
    CubicAbsNeg,
    /// |x|^3
    CubicAbs,
    /// x^3
    Cubic,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::V1,
        Family::V2,
        Family::V3,
        Family::V4,
        Family::V5,
        Family::V6,
        Family::CubicAbsNeg,
        Family::CubicAbs,
        Family::Cubic,
    ];

    pub fn is_cubic(self) -> bool {
        matches!(self, Family::CubicAbsNeg | Family::CubicAbs | Family::Cubic)
    }

    /// V4, V5, V6: kappa = sqrt(V0 - E), solutions J_{±kappa a}.
    pub fn is_well_family(self) -> bool {
        matches!(self, Family::V4 | Family::V5 | Family::V6)
    }

    /// V1, V2, V3: kappa = sqrt(E + V0), solutions K_{i kappa a}, I_{±i kappa a}.
    pub fn is_valley_family(self) -> bool {
        matches!(self, Family::V1 | Family::V2 | Family::V3)
    }

    /// Potentials built from |x| with a derivative kink at the origin.
    pub fn is_non_analytic(self) -> bool {
        matches!(
            self,
            Family::V1
                | Family::V2
                | Family::V4
                | Family::V5
                | Family::CubicAbsNeg
                | Family::CubicAbs
        )
    }

    pub fn is_symmetric(self) -> bool {
        !matches!(self, Family::V3 | Family::V6 | Family::Cubic)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::V1 => "v1",
            Family::V2 => "v2",
            Family::V3 => "v3",
            Family::V4 => "v4",
            Family::V5 => "v5",
            Family::V6 => "v6",
            Family::CubicAbsNeg => "cubic-abs-neg",
            Family::CubicAbs => "cubic-abs",
            Family::Cubic => "cubic",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == lower)
            .ok_or_else(|| Error::Domain(format!("unknown potential family '{s}'")))
    }
}

/// A potential: family plus depth V0 and length a (ignored by the cubic segments).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub family: Family,
    pub v0: f64,
    pub a: f64,
}

impl PotentialSpec {
    /// Exponential families need V0 > 0 and a > 0; sign flips are expressed
    /// through the pole map in `scattering`, never through a negative V0.
    pub fn new(family: Family, v0: f64, a: f64) -> Result<Self> {
        if family.is_cubic() {
            return Ok(Self::cubic(family));
        }
        if !(v0.is_finite() && v0 > 0.0) {
            return Err(Error::Domain(format!("V0 must be positive, got {v0}")));
        }
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::Domain(format!("a must be positive, got {a}")));
        }
        Ok(PotentialSpec { family, v0, a })
    }

    pub fn cubic(family: Family) -> Self {
        PotentialSpec {
            family,
            v0: 1.0,
            a: 1.0,
        }
    }

    /// V(x).
    pub fn evaluate(&self, x: f64) -> f64 {
        let (v0, a) = (self.v0, self.a);
        let ax = x.abs();
        match self.family {
            Family::V1 => v0 * (2.0 * ax / a).exp_m1(),
            Family::V2 => v0 * (-2.0 * ax / a).exp_m1(),
            Family::V3 => v0 * (-2.0 * x / a).exp_m1(),
            Family::V4 => -v0 * (2.0 * ax / a).exp_m1(),
            Family::V5 => -v0 * (-2.0 * ax / a).exp_m1(),
            Family::V6 => -v0 * (-2.0 * x / a).exp_m1(),
            Family::CubicAbsNeg => -ax * ax * ax,
            Family::CubicAbs => ax * ax * ax,
            Family::Cubic => x * x * x,
        }
    }

    /// Energy-dependent (kappa, q, nu, z0).
    pub fn wave_params(&self, energy: f64) -> Result<WaveParams> {
        wave_params(self, energy)
    }
}

/// kappa, q = sqrt(V0), nu = kappa a and z0 = q a at one energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WaveParams {
    pub kappa: f64,
    pub q: f64,
    pub nu: f64,
    pub z0: f64,
}

/// kappa = sqrt(V0 - E) for V4/V5/V6 and kappa = sqrt(E + V0) for V1/V2/V3.
pub fn wave_params(spec: &PotentialSpec, energy: f64) -> Result<WaveParams> {
    if !energy.is_finite() {
        return Err(Error::Domain(format!("energy {energy} is not finite")));
    }
    let kappa_sq = if spec.family.is_well_family() {
        spec.v0 - energy
    } else if spec.family.is_valley_family() {
        energy + spec.v0
    } else {
        return Err(Error::Incompatible(format!(
            "{} has no Bessel parametrisation",
            spec.family
        )));
    };
    if kappa_sq < 0.0 {
        return Err(Error::Regime(format!(
            "kappa^2 = {kappa_sq} < 0 for {} at E = {energy}; only real kappa is treated",
            spec.family
        )));
    }
    let kappa = kappa_sq.sqrt();
    let q = spec.v0.sqrt();
    Ok(WaveParams {
        kappa,
        q,
        nu: kappa * spec.a,
        z0: q * spec.a,
    })
}
