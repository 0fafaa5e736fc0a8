//! Job settings merged from flags and an optional `key = value` file.
//! Flags win over the file.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use mckay_core::{AlgebraSpec, Cyclotomic, CyclicGroupAction, Family, NcAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Quantum,
    Jordan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

/// Options shared by every subcommand.
#[derive(Args, Clone, Debug, Default)]
pub struct GlobalArgs {
    /// Degree of x
    #[arg(long, global = true)]
    pub wx: Option<u32>,
    /// Degree of y (q for the Jordan family)
    #[arg(long, global = true)]
    pub wy: Option<u32>,
    /// Relation family: xy - alpha*yx or xy - yx - x^(q+1)
    #[arg(long, global = true, value_enum)]
    pub family: Option<FamilyArg>,
    /// Quantum parameter, e.g. 1, -1, 3/2, zeta(5), zeta(12)^5
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Order of the cyclic group
    #[arg(long, global = true)]
    pub r: Option<u32>,
    /// Largest degree for graded computations
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Read settings from a key = value file; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Fully resolved settings.
#[derive(Clone, Debug)]
pub struct Job {
    pub spec: AlgebraSpec,
    pub r: u32,
    pub max_degree: Option<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

const KEYS: [&str; 8] = ["wx", "wy", "family", "alpha", "r", "max-degree", "format", "out"];

/// Parses a config file into key → (line number, value).
fn read_config(path: &Path) -> Result<HashMap<String, (usize, String)>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    let mut out = HashMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = k + 1;
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("{}:{lineno}: expected key = value", path.display()))?;
        let key = key.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            bail!("{}:{lineno}: unknown key '{key}'", path.display());
        }
        out.insert(key, (lineno, value.trim().to_string()));
    }
    Ok(out)
}

fn from_file<T: FromStr>(
    file: &HashMap<String, (usize, String)>,
    path: &Path,
    key: &str,
) -> Result<Option<T>> {
    match file.get(key) {
        None => Ok(None),
        Some((line, v)) => v
            .parse::<T>()
            .map(Some)
            .map_err(|_| anyhow!("{}:{line}: invalid value '{v}' for {key}", path.display())),
    }
}

fn value_enum<T: ValueEnum>(
    file: &HashMap<String, (usize, String)>,
    path: &Path,
    key: &str,
) -> Result<Option<T>> {
    match file.get(key) {
        None => Ok(None),
        Some((line, v)) => T::from_str(v, true)
            .map(Some)
            .map_err(|_| anyhow!("{}:{line}: invalid value '{v}' for {key}", path.display())),
    }
}

impl GlobalArgs {
    /// Fills unset flags from the config file, if one was given.
    fn merged(&self) -> Result<GlobalArgs> {
        let mut g = self.clone();
        let Some(path) = self.config.clone() else {
            return Ok(g);
        };
        let file = read_config(&path)?;
        g.wx = g.wx.or(from_file(&file, &path, "wx")?);
        g.wy = g.wy.or(from_file(&file, &path, "wy")?);
        g.family = g.family.or(value_enum(&file, &path, "family")?);
        g.alpha = g.alpha.or(from_file(&file, &path, "alpha")?);
        g.r = g.r.or(from_file(&file, &path, "r")?);
        g.max_degree = g.max_degree.or(from_file(&file, &path, "max-degree")?);
        g.format = g.format.or(value_enum(&file, &path, "format")?);
        g.out = g.out.or(from_file(&file, &path, "out")?);
        Ok(g)
    }

    pub fn resolve(&self) -> Result<Job> {
        let g = self.merged()?;
        let wx = g.wx.unwrap_or(1);
        let wy = g.wy.unwrap_or(1);
        let family = match g.family.unwrap_or(FamilyArg::Quantum) {
            FamilyArg::Jordan => {
                if g.alpha.is_some() {
                    bail!("--alpha does not apply to the Jordan family");
                }
                Family::Jordan
            }
            FamilyArg::Quantum => {
                let text = g.alpha.as_deref().unwrap_or("1");
                let alpha: Cyclotomic = text
                    .parse()
                    .map_err(|e| anyhow!("--alpha '{text}': {e}"))?;
                Family::Quantum(alpha)
            }
        };
        let spec = AlgebraSpec::new(wx, wy, family)?;
        Ok(Job {
            spec,
            r: g.r.unwrap_or(1),
            max_degree: g.max_degree,
            format: g.format.unwrap_or(Format::Text),
            out: g.out,
        })
    }
}

impl Job {
    pub fn algebra(&self) -> NcAlgebra {
        NcAlgebra::new(self.spec.clone())
    }

    /// ⟨diag(ξ, ξ^{-1})⟩, or any diagonal action when exponents are given.
    pub fn action(&self, alg: &NcAlgebra, exps: Option<(u32, u32)>) -> Result<CyclicGroupAction> {
        Ok(match exps {
            Some((ex, ey)) => CyclicGroupAction::diagonal(alg, self.r, ex, ey)?,
            None => CyclicGroupAction::new(alg, self.r)?,
        })
    }
}
