//! Flat `key = value` experiment configuration with section-prefixed keys.
//!
//! No external format: lines are `key = value`, `#` starts a comment, keys
//! are drawn from a fixed schema so typos fail loudly. Serialization emits
//! sorted lines, and `parse(serialize(c)) == c`.

use anyhow::{anyhow, bail, Context, Result};
use spinelim_core::FamilyParam;
use std::collections::BTreeMap;
use std::path::Path;

/// Every key the schema understands.
pub const KNOWN_KEYS: &[&str] = &[
    "experiment",
    "family.kind",
    "family.s",
    "family.a",
    "family.b",
    "family.omega",
    "map.delta",
    "map.epsilon",
    "map.theta0",
    "cloud.seeds",
    "cloud.transient",
    "cloud.keep",
    "cover.resolution",
    "cover.steps",
    "grid.start",
    "grid.stop",
    "grid.step",
    "rotation.n",
    "rotation.grid_res",
    "rotation.seeds",
    "tongues.r",
    "tongues.b_max",
    "tongues.res_b",
    "tongues.res_omega",
    "tongues.omega_min",
    "tongues.omega_max",
    "tongues.n",
    "periodic.max_period",
    "periodic.tol",
    "entropy.n",
    "rng.seed",
];

/// A parsed configuration: a validated key/value map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Config {
    map: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let mut map = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected `key = value`, got `{raw}`", lineno + 1))?;
            let key = key.trim();
            let value = value.trim();
            if !KNOWN_KEYS.contains(&key) {
                bail!("line {}: unknown config key `{key}`", lineno + 1);
            }
            if value.is_empty() {
                bail!("line {}: config key `{key}` has an empty value", lineno + 1);
            }
            if map.insert(key.to_string(), value.to_string()).is_some() {
                bail!("line {}: duplicate config key `{key}`", lineno + 1);
            }
        }
        Ok(Config { map })
    }

    pub fn from_file(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Config::parse(&text)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.map {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(v);
            out.push('\n');
        }
        out
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        assert!(KNOWN_KEYS.contains(&key), "unknown config key `{key}`");
        self.map.insert(key.to_string(), value.to_string());
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn get(&self, key: &str) -> Result<&str> {
        self.map
            .get(key)
            .map(|s| s.as_str())
            .ok_or_else(|| anyhow!("missing config key `{key}`"))
    }

    pub fn get_opt(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(|s| s.as_str())
    }

    pub fn get_f64(&self, key: &str) -> Result<f64> {
        self.get(key)?
            .parse()
            .map_err(|_| anyhow!("config key `{key}`: expected a number, got `{}`", self.map[key]))
    }

    pub fn get_f64_or(&self, key: &str, default: f64) -> Result<f64> {
        match self.get_opt(key) {
            None => Ok(default),
            Some(_) => self.get_f64(key),
        }
    }

    pub fn get_usize(&self, key: &str) -> Result<usize> {
        self.get(key)?.parse().map_err(|_| {
            anyhow!("config key `{key}`: expected a non-negative integer, got `{}`", self.map[key])
        })
    }

    pub fn get_usize_or(&self, key: &str, default: usize) -> Result<usize> {
        match self.get_opt(key) {
            None => Ok(default),
            Some(_) => self.get_usize(key),
        }
    }

    pub fn get_u64(&self, key: &str) -> Result<u64> {
        self.get(key)?.parse().map_err(|_| {
            anyhow!("config key `{key}`: expected an integer seed, got `{}`", self.map[key])
        })
    }

    pub fn experiment(&self) -> Result<&str> {
        self.get("experiment")
    }

    /// Build the family member described by the `family.*` section.
    pub fn family(&self) -> Result<FamilyParam> {
        match self.get("family.kind")? {
            "tent" => FamilyParam::tent(self.get_f64("family.s")?)
                .map_err(|e| anyhow!("config key `family.s`: {e}")),
            "quadratic" => FamilyParam::quadratic(self.get_f64("family.a")?)
                .map_err(|e| anyhow!("config key `family.a`: {e}")),
            "standard" => FamilyParam::standard(
                self.get_f64("family.b")?,
                self.get_f64("family.omega")?,
            )
            .map_err(|e| anyhow!("config keys `family.b`/`family.omega`: {e}")),
            other => bail!("config key `family.kind`: unknown family `{other}`"),
        }
    }

    /// The rng seed: CLI override first, else `rng.seed` (mandatory — runs
    /// never draw ambient entropy).
    pub fn rng_seed(&self, cli_override: Option<u64>) -> Result<u64> {
        match cli_override {
            Some(s) => Ok(s),
            None => self.get_u64("rng.seed"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_roundtrip() {
        let text = "experiment = demo\nfamily.kind = tent # comment\nfamily.s = 1.8\n";
        let c = Config::parse(text).unwrap();
        assert_eq!(c.get("experiment").unwrap(), "demo");
        let again = Config::parse(&c.serialize()).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn rejects_unknown_and_duplicate_keys() {
        let err = Config::parse("familly.kind = tent").unwrap_err();
        assert!(err.to_string().contains("familly.kind"));
        let err = Config::parse("family.s = 1\nfamily.s = 2").unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn errors_name_the_field() {
        let c = Config::parse("family.kind = tent").unwrap();
        let err = c.family().unwrap_err();
        assert!(err.to_string().contains("family.s"), "{err}");
        let c = Config::parse("family.kind = tent\nfamily.s = nope").unwrap();
        assert!(c.family().unwrap_err().to_string().contains("family.s"));
        let c = Config::parse("family.kind = tent\nfamily.s = 3.0").unwrap();
        assert!(c.family().is_err());
    }

    #[test]
    fn family_construction() {
        let c = Config::parse("family.kind = standard\nfamily.b = 2\nfamily.omega = 0.3").unwrap();
        assert!(c.family().unwrap().is_circle());
    }
}
