//! Run configuration shared by the command-line front end and the fuzz
//! harnesses: a JSON object with rational values encoded as `"p/q"` strings
//! (masses may be `"inf"` where the variant mandates an infinite-mass
//! limit). Unknown keys are rejected.

use crate::error::{Error, Result};
use crate::geometry::MassConfig;
use crate::model::{GaugeParams, SpecialModel};
use crate::rational::{parse_rat, Rat};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Four masses, `"p/q"` or `"inf"`.
    #[serde(default = "default_masses")]
    pub masses: [String; 4],
    #[serde(default = "default_one3")]
    pub d: String,
    #[serde(default = "default_one")]
    pub omega: String,
    /// Gauge parameters `(a, b, c, e, f, g)`.
    #[serde(default = "default_gauge")]
    pub gauge: [String; 6],
    /// `generic | equal | atomic | molecular | three-center`.
    #[serde(default = "default_variant")]
    pub variant: String,
    /// Graded-basis cutoff for spectra.
    #[serde(default = "default_n", rename = "N")]
    pub n: u32,
    /// Classical coordinates for the molecular / three-center variants.
    #[serde(default)]
    pub rho12: Option<String>,
    #[serde(default)]
    pub rho13: Option<String>,
    #[serde(default)]
    pub rho23: Option<String>,
    /// Seed for the randomized suites.
    #[serde(default)]
    pub seed: u64,
    /// Optional output path (overridden by --out).
    #[serde(default)]
    pub out: Option<String>,
    /// `json` or `csv` (spectrum tables only).
    #[serde(default)]
    pub format: Option<String>,
}

fn default_masses() -> [String; 4] {
    std::array::from_fn(|_| "1".to_string())
}
fn default_one() -> String {
    "1".into()
}
fn default_one3() -> String {
    "3".into()
}
fn default_gauge() -> [String; 6] {
    std::array::from_fn(|_| "1".to_string())
}
fn default_variant() -> String {
    "equal".into()
}
fn default_n() -> u32 {
    2
}

impl Default for RunConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("empty config is valid")
    }
}

/// A parsed mass entry.
#[derive(Clone, Debug, PartialEq)]
pub enum MassEntry {
    Finite(Rat),
    Infinite,
}

fn parse_mass(s: &str) -> Result<MassEntry> {
    if s.trim() == "inf" {
        return Ok(MassEntry::Infinite);
    }
    let v = parse_rat(s)?;
    if !v.is_positive() {
        return Err(Error::Config(format!("mass {s:?} must be positive")));
    }
    Ok(MassEntry::Finite(v))
}

/// Fully validated configuration.
#[derive(Clone, Debug)]
pub struct ValidatedConfig {
    pub model: SpecialModel,
    pub gauge: GaugeParams,
    pub d: Rat,
    pub n: u32,
    pub seed: u64,
}

impl RunConfig {
    pub fn parse_json(bytes: &[u8]) -> Result<RunConfig> {
        serde_json::from_slice(bytes).map_err(|e| Error::Config(format!("bad config JSON: {e}")))
    }

    pub fn validate(&self) -> Result<ValidatedConfig> {
        let masses: Vec<MassEntry> = self
            .masses
            .iter()
            .map(|s| parse_mass(s))
            .collect::<Result<_>>()?;
        let inf_count = masses.iter().filter(|m| **m == MassEntry::Infinite).count();
        let finite = |i: usize| -> Result<Rat> {
            match &masses[i] {
                MassEntry::Finite(v) => Ok(v.clone()),
                MassEntry::Infinite => Err(Error::Config(format!(
                    "mass {} must be finite for variant {:?}",
                    i + 1,
                    self.variant
                ))),
            }
        };
        let require_inf = |i: usize| -> Result<()> {
            match &masses[i] {
                MassEntry::Infinite => Ok(()),
                MassEntry::Finite(_) => Err(Error::Config(format!(
                    "variant {:?} requires mass {} to be \"inf\"",
                    self.variant,
                    i + 1
                ))),
            }
        };
        let equal_tail = |from: usize| -> Result<Rat> {
            let m = finite(from)?;
            for i in from + 1..4 {
                if finite(i)? != m {
                    return Err(Error::Config(format!(
                        "variant {:?} requires masses {}..4 to be equal",
                        self.variant,
                        from + 1
                    )));
                }
            }
            Ok(m)
        };
        let classical = |field: &Option<String>, name: &str| -> Result<Rat> {
            let Some(s) = field else {
                return Err(Error::Config(format!(
                    "variant {:?} requires the classical coordinate {name}",
                    self.variant
                )));
            };
            let v = parse_rat(s)?;
            if v.is_negative() {
                return Err(Error::Config(format!("{name} must be non-negative")));
            }
            Ok(v)
        };
        let model = match self.variant.as_str() {
            "generic" => {
                if inf_count > 0 {
                    return Err(Error::Config(
                        "variant \"generic\" does not allow infinite masses".into(),
                    ));
                }
                SpecialModel::Generic(MassConfig::new([
                    finite(0)?,
                    finite(1)?,
                    finite(2)?,
                    finite(3)?,
                ])?)
            }
            "equal" => {
                if inf_count > 0 {
                    return Err(Error::Config(
                        "variant \"equal\" does not allow infinite masses".into(),
                    ));
                }
                SpecialModel::EqualMasses { m: equal_tail(0)? }
            }
            "atomic" => {
                require_inf(0)?;
                if inf_count != 1 {
                    return Err(Error::Config(
                        "variant \"atomic\" takes exactly one infinite mass (m1)".into(),
                    ));
                }
                SpecialModel::Atomic { m: equal_tail(1)? }
            }
            "molecular" => {
                require_inf(0)?;
                require_inf(1)?;
                if inf_count != 2 {
                    return Err(Error::Config(
                        "variant \"molecular\" takes exactly two infinite masses (m1, m2)".into(),
                    ));
                }
                SpecialModel::MolecularTwoCenter {
                    m: equal_tail(2)?,
                    rho12: classical(&self.rho12, "rho12")?,
                }
            }
            "three-center" => {
                require_inf(0)?;
                require_inf(1)?;
                require_inf(2)?;
                if inf_count != 3 {
                    return Err(Error::Config(
                        "variant \"three-center\" takes exactly three infinite masses".into(),
                    ));
                }
                SpecialModel::ThreeCenter {
                    m: finite(3)?,
                    rho12: classical(&self.rho12, "rho12")?,
                    rho13: classical(&self.rho13, "rho13")?,
                    rho23: classical(&self.rho23, "rho23")?,
                }
            }
            other => {
                return Err(Error::Config(format!(
                    "unknown variant {other:?} (expected generic | equal | atomic | molecular | three-center)"
                )))
            }
        };
        let gauge = GaugeParams::new(
            [
                parse_rat(&self.gauge[0])?,
                parse_rat(&self.gauge[1])?,
                parse_rat(&self.gauge[2])?,
                parse_rat(&self.gauge[3])?,
                parse_rat(&self.gauge[4])?,
                parse_rat(&self.gauge[5])?,
            ],
            parse_rat(&self.omega)?,
        )?;
        model.validate_gauge(&gauge)?;
        let d = parse_rat(&self.d)?;
        if d <= crate::rational::rat_i(2) {
            return Err(Error::Config(
                "the rho-representation operators need d > 2".into(),
            ));
        }
        if self.n > 4 {
            return Err(Error::Config(
                "N is capped at 4 to keep exact dense matrices desk-scale".into(),
            ));
        }
        if let Some(fmt) = &self.format {
            if fmt != "json" && fmt != "csv" {
                return Err(Error::Config(format!("unknown format {fmt:?}")));
            }
        }
        Ok(ValidatedConfig {
            model,
            gauge,
            d,
            n: self.n,
            seed: self.seed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_i;

    #[test]
    fn default_config_is_equal_masses() {
        let cfg = RunConfig::default().validate().unwrap();
        assert_eq!(cfg.model, SpecialModel::EqualMasses { m: rat_i(1) });
        assert_eq!(cfg.d, rat_i(3));
    }

    #[test]
    fn unknown_keys_rejected() {
        let r = RunConfig::parse_json(br#"{"massez": ["1","1","1","1"]}"#);
        assert!(matches!(r, Err(Error::Config(_))));
    }

    #[test]
    fn inf_count_validation() {
        let mut cfg = RunConfig {
            variant: "generic".into(),
            masses: ["inf".into(), "inf".into(), "1".into(), "1".into()],
            ..RunConfig::default()
        };
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
        cfg.variant = "molecular".into();
        cfg.gauge[0] = "0".into();
        cfg.rho12 = Some("1".into());
        assert!(cfg.validate().is_ok());
        // molecular with a nonzero a is a bad limit
        cfg.gauge[0] = "1".into();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn malformed_rational_rejected() {
        let mut cfg = RunConfig {
            d: "7/0".into(),
            ..RunConfig::default()
        };
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
        cfg.d = "x".into();
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn atomic_requires_equal_tail() {
        let mut cfg = RunConfig {
            variant: "atomic".into(),
            masses: ["inf".into(), "1".into(), "2".into(), "1".into()],
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
        cfg.masses = ["inf".into(), "2".into(), "2".into(), "2".into()];
        assert!(cfg.validate().is_ok());
    }
}
