//! Plain-text `key = value` scan configuration and the shared name parsers.
//!
//! ```text
//! # comment
//! variety = quintic3
//! rank_max = 4
//! c1_range = -4..4
//! c2_denominator = 2
//! xi_bound = 2
//! profile = threefold
//! format = csv
//! output = scan.csv
//! workers = 8
//! ```
//!
//! `c1_min` and `c1_max` may be given instead of `c1_range`.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use quintic_bg::bounds::ProfileKind;
use quintic_bg::scan::{ScanConfig, Variety};
use quintic_bg::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

pub fn parse_variety(s: &str) -> Result<Variety> {
    match s.trim().to_ascii_lowercase().as_str() {
        "quintic2" | "surface" | "quintic-surface" | "quinticsurface" => Ok(Variety::QuinticSurface),
        "quintic3" | "threefold" | "quintic-threefold" | "quinticthreefold" => Ok(Variety::QuinticThreefold),
        other => bail!("unknown variety `{other}` (expected quintic2 or quintic3)"),
    }
}

pub fn parse_profile(s: &str) -> Result<ProfileKind> {
    match s.trim().to_ascii_lowercase().as_str() {
        "surface" | "surfacequintic" => Ok(ProfileKind::SurfaceQuintic),
        "threefold" | "threefoldquintic" => Ok(ProfileKind::ThreefoldQuintic),
        "prior" | "priorli" => Ok(ProfileKind::PriorLi),
        "classical" | "classicalbg" | "bg" => Ok(ProfileKind::ClassicalBG),
        other => bail!("unknown profile `{other}` (expected surface, threefold, prior or classical)"),
    }
}

pub fn parse_format(s: &str) -> Result<Format> {
    match s.trim().to_ascii_lowercase().as_str() {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        other => bail!("unknown format `{other}` (expected csv or json)"),
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse().map_err(|e| anyhow!("`{s}`: {e}"))
}

/// `lo..hi`, inclusive on both ends.
pub fn parse_int_range(s: &str) -> Result<(i64, i64)> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| anyhow!("expected `lo..hi`, got `{s}`"))?;
    let lo = lo.trim().parse().with_context(|| format!("range start in `{s}`"))?;
    let hi = hi.trim().trim_start_matches('=').parse().with_context(|| format!("range end in `{s}`"))?;
    Ok((lo, hi))
}

/// Values read from a config file. Unset keys stay `None` so command-line
/// flags can fill or override them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScanSettings {
    pub variety: Option<Variety>,
    pub rank_max: Option<u32>,
    pub c1_min: Option<i64>,
    pub c1_max: Option<i64>,
    pub c2_denominator: Option<u32>,
    pub xi_bound: Option<Rational>,
    pub profile: Option<ProfileKind>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub workers: Option<usize>,
}

impl ScanSettings {
    pub fn parse(text: &str) -> Result<Self> {
        let mut s = ScanSettings::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| anyhow!("line {}: expected key = value", n + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let ctx = || format!("line {}: key `{key}`", n + 1);
            match key {
                "variety" => s.variety = Some(parse_variety(value).with_context(ctx)?),
                "rank_max" => s.rank_max = Some(value.parse().with_context(ctx)?),
                "c1_min" => s.c1_min = Some(value.parse().with_context(ctx)?),
                "c1_max" => s.c1_max = Some(value.parse().with_context(ctx)?),
                "c1_range" => {
                    let (lo, hi) = parse_int_range(value).with_context(ctx)?;
                    s.c1_min = Some(lo);
                    s.c1_max = Some(hi);
                }
                "c2_denominator" => s.c2_denominator = Some(value.parse().with_context(ctx)?),
                "xi_bound" => s.xi_bound = Some(parse_rational(value).with_context(ctx)?),
                "profile" => s.profile = Some(parse_profile(value).with_context(ctx)?),
                "output" => s.output = Some(PathBuf::from(value)),
                "format" => s.format = Some(parse_format(value).with_context(ctx)?),
                "workers" => s.workers = Some(value.parse().with_context(ctx)?),
                _ => bail!("line {}: unknown key `{key}`", n + 1),
            }
        }
        Ok(s)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overlay(mut self, other: ScanSettings) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(variety, rank_max, c1_min, c1_max, c2_denominator, xi_bound, profile, output, format, workers);
        self
    }

    /// The validated library config. `variety`, `rank_max` and the `c1`
    /// range are required; everything else has a default.
    pub fn to_config(&self) -> Result<ScanConfig> {
        let variety = self.variety.ok_or_else(|| anyhow!("scan needs a variety"))?;
        let rank_max = self.rank_max.ok_or_else(|| anyhow!("scan needs rank_max"))?;
        let c1_min = self.c1_min.ok_or_else(|| anyhow!("scan needs a c1 range"))?;
        let c1_max = self.c1_max.ok_or_else(|| anyhow!("scan needs a c1 range"))?;
        let mut cfg = ScanConfig::new(variety, rank_max, c1_min, c1_max);
        if let Some(d) = self.c2_denominator {
            cfg.c2_denominator = d;
        }
        if let Some(x) = self.xi_bound {
            cfg.xi_bound = x;
        }
        if let Some(p) = self.profile {
            cfg.profile = p;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}
