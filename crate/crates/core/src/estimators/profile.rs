use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::stats::LogBase;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileMode {
    /// Every derived constant follows the proof couplings exactly.
    Theoretical,
    /// Measured base constants; `d` set at desk scale.
    Calibrated,
}

/// The constants measured by Monte Carlo; everything else is derived.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseConstants {
    /// lower envelope of `√q · T` for the conditional sampler
    pub c0: f64,
    /// upper envelope of `√q · E[T]` for the conditional sampler
    pub c1: f64,
    /// relative error reached with probability 7/8 by sequential estimation
    pub c_seq: f64,
    /// bound on `p · E[T²]`
    pub c_prime_seq: f64,
    /// bound on `E[1/T] / √p`
    pub c_dprime_seq: f64,
}

/// Reference values from `calibrate_constants(&DEFAULT_GRID, 100_000, 2024)`.
pub const REFERENCE_BASE: BaseConstants = BaseConstants {
    c0: 1.644384383287557,
    c1: 13.495854167862072,
    c_seq: 0.9938271604938271,
    c_prime_seq: 112.62741,
    c_dprime_seq: 0.6407829533043543,
};

/// `d` used by calibrated profiles.
pub const DESK_D: f64 = 10.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantProfile {
    pub c0: f64,
    pub c1: f64,
    pub c: f64,
    pub c_prime: f64,
    pub d: f64,
    pub c1_alg3: f64,
    pub c2_alg3: f64,
    pub c_seq: f64,
    pub c_prime_seq: f64,
    pub c_dprime_seq: f64,
    #[serde(default)]
    pub log_base: LogBase,
    pub mode: ProfileMode,
}

/// `c = c0² / (c1² √191)`
pub fn coupled_c(c0: f64, c1: f64) -> f64 {
    c0 * c0 / (c1 * c1 * 191f64.sqrt())
}

impl ConstantProfile {
    /// Applies the proof couplings to `base`. `d` is `600/√c` in theoretical
    /// mode and [`DESK_D`] in calibrated mode.
    pub fn from_base(base: BaseConstants, mode: ProfileMode, log_base: LogBase) -> Result<Self> {
        let profile = Self { log_base, ..Self::from_base_unchecked(base, mode) };
        profile.validate()?;
        Ok(profile)
    }

    pub fn theoretical() -> Self {
        Self::from_base(REFERENCE_BASE, ProfileMode::Theoretical, LogBase::Natural).expect("reference constants are valid")
    }

    pub fn calibrated() -> Self {
        Self::from_base(REFERENCE_BASE, ProfileMode::Calibrated, LogBase::Natural).expect("reference constants are valid")
    }

    pub fn base(&self) -> BaseConstants {
        BaseConstants { c0: self.c0, c1: self.c1, c_seq: self.c_seq, c_prime_seq: self.c_prime_seq, c_dprime_seq: self.c_dprime_seq }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            ("c0", self.c0),
            ("c1", self.c1),
            ("c", self.c),
            ("c_prime", self.c_prime),
            ("d", self.d),
            ("c1_alg3", self.c1_alg3),
            ("c2_alg3", self.c2_alg3),
            ("c_seq", self.c_seq),
            ("c_prime_seq", self.c_prime_seq),
            ("c_dprime_seq", self.c_dprime_seq),
        ];
        for (name, v) in all {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(format!("constant {name} = {v} must be positive and finite")));
            }
        }
        if !(self.c < 1.0) {
            return Err(invalid(format!("c = {} must be below 1", self.c)));
        }
        if !(self.c0 < self.c1) {
            return Err(invalid(format!("c0 = {} must be below c1 = {}", self.c0, self.c1)));
        }
        if !(self.c_seq < 1.0) {
            return Err(invalid(format!("c_seq = {} must be below 1", self.c_seq)));
        }
        if self.mode == ProfileMode::Theoretical {
            let want = Self::from_base_unchecked(self.base(), ProfileMode::Theoretical);
            let pairs = [
                ("c", self.c, want.c),
                ("c_prime", self.c_prime, want.c_prime),
                ("d", self.d, want.d),
                ("c1_alg3", self.c1_alg3, want.c1_alg3),
                ("c2_alg3", self.c2_alg3, want.c2_alg3),
            ];
            for (name, got, expect) in pairs {
                if (got - expect).abs() > 1e-9 * expect.abs() {
                    return Err(invalid(format!("theoretical profile breaks the coupling for {name}: {got} vs {expect}")));
                }
            }
        }
        Ok(())
    }

    fn from_base_unchecked(base: BaseConstants, mode: ProfileMode) -> Self {
        let c = coupled_c(base.c0, base.c1);
        Self {
            c0: base.c0,
            c1: base.c1,
            c,
            c_prime: 190.0 * base.c1,
            d: if mode == ProfileMode::Theoretical { 600.0 / c.sqrt() } else { DESK_D },
            c1_alg3: 16.0 * base.c_prime_seq * (1.0 + base.c_seq).sqrt(),
            c2_alg3: 4.0 * (1.0 + base.c_seq) / (1.0 - base.c_seq).sqrt(),
            c_seq: base.c_seq,
            c_prime_seq: base.c_prime_seq,
            c_dprime_seq: base.c_dprime_seq,
            log_base: LogBase::Natural,
            mode,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("profile serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: Self = serde_json::from_str(text)?;
        p.validate()?;
        Ok(p)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    /// `theoretical`, `calibrated`, or a path to a profile JSON file.
    pub fn resolve(name: &str) -> Result<Self> {
        match name {
            "theoretical" => Ok(Self::theoretical()),
            "calibrated" => Ok(Self::calibrated()),
            path => Self::load(Path::new(path)).map_err(|e| Error::Config(format!("profile `{path}`: {e}"))),
        }
    }

    /// `log(1/δ)` in the profile's base.
    pub fn log_inv(&self, delta: f64) -> f64 {
        self.log_base.log(1.0 / delta)
    }
}
