//! Optional TOML configuration mirroring the command-line flags. Flags win.

use std::path::{Path, PathBuf};

use serde::Deserialize;

pub const DEFAULT_CHAR: u32 = 32003;
pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub family: Option<u32>,
    pub seed: Option<u64>,
    #[serde(rename = "char")]
    pub characteristic: Option<u32>,
    pub out: Option<PathBuf>,
    pub checks: Option<String>,
    pub budget: Option<f64>,
    pub workers: Option<usize>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    /// Flags override the file field by field.
    pub fn overlay(self, flags: Config) -> Config {
        Config {
            family: flags.family.or(self.family),
            seed: flags.seed.or(self.seed),
            characteristic: flags.characteristic.or(self.characteristic),
            out: flags.out.or(self.out),
            checks: flags.checks.or(self.checks),
            budget: flags.budget.or(self.budget),
            workers: flags.workers.or(self.workers),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win() {
        let file: Config = toml::from_str("family = 3\nseed = 9\nchar = 101\nbudget = 5.0").unwrap();
        let flags = Config { seed: Some(2), ..Default::default() };
        let c = file.overlay(flags);
        assert_eq!((c.family, c.seed, c.characteristic, c.budget), (Some(3), Some(2), Some(101), Some(5.0)));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<Config>("famly = 3").is_err());
    }
}
