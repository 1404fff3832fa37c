use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use levelzero::arith::{is_prime, prime_power};
use levelzero::coeff::CoefficientRing;
use serde::Deserialize;

use crate::report::{Format, Report};

/// Settings shared by every command. Each may come from the TOML file
/// named by --config; a flag on the command line wins over the file.
#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// TOML file with any of the keys below
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// residue characteristic (the building is modelled over Q_p)
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// residue field size, a power of p
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// rank of GL_d
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// coefficient ring: Q or F<l>
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// congruence level M for orbit systems (minimum if omitted)
    #[arg(long, global = true)]
    pub level: Option<u32>,
    /// ball radius
    #[arg(long, global = true)]
    pub radius: Option<u32>,
    /// enumeration budget for the command's search (command default if omitted)
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    /// write `<command>.<ext>` into this directory instead of stdout
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// worker threads
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// seed recorded in the report header
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    p: Option<u64>,
    q: Option<u64>,
    d: Option<usize>,
    ring: Option<String>,
    level: Option<u32>,
    radius: Option<u32>,
    budget: Option<u128>,
    out_dir: Option<PathBuf>,
    format: Option<Format>,
    threads: Option<usize>,
    seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub p: Option<u64>,
    pub q: Option<u64>,
    pub d: Option<usize>,
    pub ring: CoefficientRing,
    pub level: Option<u32>,
    pub radius: Option<u32>,
    pub budget: Option<u128>,
    pub out_dir: Option<PathBuf>,
    pub format: Format,
    pub threads: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn load(args: &GlobalArgs) -> Result<Self> {
        let file = match &args.config {
            Some(path) => read_file(path)?,
            None => FileConfig::default(),
        };
        let ring = args.ring.clone().or(file.ring);
        let cfg = RunConfig {
            p: args.p.or(file.p),
            q: args.q.or(file.q),
            d: args.d.or(file.d),
            ring: match ring {
                Some(s) => CoefficientRing::parse(&s)?,
                None => CoefficientRing::Rationals,
            },
            level: args.level.or(file.level),
            radius: args.radius.or(file.radius),
            budget: args.budget.or(file.budget),
            out_dir: args.out_dir.clone().or(file.out_dir),
            format: args.format.or(file.format).unwrap_or(Format::Csv),
            threads: args.threads.or(file.threads).unwrap_or(1),
            seed: args.seed.or(file.seed).unwrap_or(0),
        };
        cfg.validate()
    }

    /// Checks the p/q relation, the ring against p, and positivity, and
    /// fills p from q when only q is given.
    fn validate(mut self) -> Result<Self> {
        if let Some(p) = self.p {
            if !is_prime(p) {
                bail!("p={p} is not prime");
            }
        }
        if let Some(q) = self.q {
            let (base, _) = prime_power(q).ok_or_else(|| anyhow!("q={q} is not a prime power"))?;
            match self.p {
                Some(p) if p != base => bail!("q={q} is not a power of p={p}"),
                _ => self.p = Some(base),
            }
        }
        if let Some(p) = self.p {
            self.ring.validate(p)?;
        } else {
            self.ring.validate(0)?;
        }
        if self.d == Some(0) {
            bail!("d must be positive");
        }
        if self.budget == Some(0) {
            bail!("budget must be positive");
        }
        if self.threads == 0 {
            bail!("threads must be positive");
        }
        Ok(self)
    }

    pub fn d(&self) -> Result<usize> {
        self.d.ok_or_else(|| anyhow!("--d is required"))
    }

    pub fn q(&self) -> Result<u64> {
        self.q.ok_or_else(|| anyhow!("--q is required"))
    }

    /// The building is modelled over Q_p, so q (if given) must equal p.
    pub fn building_p(&self) -> Result<u64> {
        let p = self.p.ok_or_else(|| anyhow!("--p (or a prime --q) is required"))?;
        if let Some(q) = self.q {
            if q != p {
                bail!("the building is modelled over Q_p; q={q} must equal p={p}");
            }
        }
        Ok(p)
    }

    pub fn budget_or(&self, default: u128) -> u128 {
        self.budget.unwrap_or(default)
    }

    pub fn report(&self, command: &str) -> Report {
        let mut r = Report::new(command);
        r.header("seed", self.seed);
        for (k, v) in [("p", self.p), ("q", self.q), ("d", self.d.map(|d| d as u64))] {
            if let Some(v) = v {
                r.header(k, v);
            }
        }
        r.header("ring", self.ring);
        r.header("threads", self.threads);
        r
    }
}

fn read_file(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}
