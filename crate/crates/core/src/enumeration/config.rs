use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::heights::HeightBudget;
use crate::numerics::rational::is_prime;
use crate::numerics::DEFAULT_PRECISION;
use crate::pcf::SieveConfig;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationConfig {
    pub n_arch: usize,
    pub n_padic: usize,
    pub precision: u32,
    pub refinements: u32,
    /// Primes for the p-adic sieve, applied in order.
    pub primes: Vec<u64>,
    /// Fail when anything ends up undecided.
    pub strict: bool,
    /// Worker threads; 0 means one per available core.
    pub workers: usize,
    /// Iteration cap for the final exact certification.
    pub certify_iterations: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            n_arch: 14,
            n_padic: 14,
            precision: DEFAULT_PRECISION,
            refinements: 4,
            primes: vec![2, 3],
            strict: false,
            workers: 0,
            certify_iterations: 64,
        }
    }
}

impl EnumerationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.precision < 16 {
            return Err(Error::Config(format!("precision {} is below 16 bits", self.precision)));
        }
        if let Some(p) = self.primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::Config(format!("{p} in primes is not prime")));
        }
        Ok(())
    }

    pub fn sieve(&self) -> SieveConfig {
        SieveConfig {
            n_arch: self.n_arch,
            n_padic: self.n_padic,
            precision: self.precision,
            refinements: self.refinements,
            ..SieveConfig::default()
        }
    }

    pub fn budget(&self) -> HeightBudget {
        HeightBudget {
            max_iterations: self.certify_iterations,
            precision: self.precision,
            ..HeightBudget::default()
        }
    }

    /// Applies one `key = value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = || Error::Config(format!("invalid value '{value}' for {key}"));
        let v = value.trim();
        match key.trim() {
            "n_arch" => self.n_arch = v.parse().map_err(|_| bad())?,
            "n_padic" => self.n_padic = v.parse().map_err(|_| bad())?,
            "precision" => self.precision = v.parse().map_err(|_| bad())?,
            "refinements" => self.refinements = v.parse().map_err(|_| bad())?,
            "workers" => self.workers = v.parse().map_err(|_| bad())?,
            "certify_iterations" => self.certify_iterations = v.parse().map_err(|_| bad())?,
            "strict" => self.strict = v.parse().map_err(|_| bad())?,
            "primes" => {
                self.primes = v
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse().map_err(|_| bad()))
                    .collect::<Result<_>>()?
            }
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// SHA-256 of the canonical rendering, hex, first 16 digits.
    /// `workers` is left out: it cannot change results.
    pub fn digest(&self) -> String {
        let canonical = Self { workers: 0, ..self.clone() }.to_string();
        Sha256::digest(canonical.as_bytes())
            .iter()
            .take(8)
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

/// `key = value` lines; `#` starts a comment.
impl FromStr for EnumerationConfig {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut c = EnumerationConfig::default();
        for (i, line) in s.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            c.set(k, v)?;
        }
        c.validate()?;
        Ok(c)
    }
}

impl fmt::Display for EnumerationConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let primes: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        writeln!(f, "n_arch = {}", self.n_arch)?;
        writeln!(f, "n_padic = {}", self.n_padic)?;
        writeln!(f, "precision = {}", self.precision)?;
        writeln!(f, "refinements = {}", self.refinements)?;
        writeln!(f, "primes = {}", primes.join(", "))?;
        writeln!(f, "strict = {}", self.strict)?;
        writeln!(f, "workers = {}", self.workers)?;
        writeln!(f, "certify_iterations = {}", self.certify_iterations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let c: EnumerationConfig = "# sieve\nn_arch = 5\nprimes = 2\nstrict=true\n".parse().unwrap();
        assert_eq!(c.n_arch, 5);
        assert_eq!(c.primes, vec![2]);
        assert!(c.strict);
        let back: EnumerationConfig = c.to_string().parse().unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn rejects_bad_input() {
        assert!("n_arch = x".parse::<EnumerationConfig>().is_err());
        assert!("primes = 2, 4".parse::<EnumerationConfig>().is_err());
        assert!("colour = red".parse::<EnumerationConfig>().is_err());
        assert!("n_arch 5".parse::<EnumerationConfig>().is_err());
    }

    #[test]
    fn digest_ignores_workers() {
        let a = EnumerationConfig::default();
        let b = EnumerationConfig { workers: 7, ..a.clone() };
        let c = EnumerationConfig { n_arch: 5, ..a.clone() };
        assert_eq!(a.digest(), b.digest());
        assert_ne!(a.digest(), c.digest());
        assert_eq!(a.digest().len(), 16);
    }
}
