//! Lattice enumeration of reduced characters and their classification
//! against the bound profiles.
//!
//! The lattice is `(5r, 5a, j/den)` with `1 ≤ r ≤ rank_max`, `a` in the
//! configured range and `|ξ| ≤ xi_bound`. Work is split into `(r, a)` blocks;
//! each block is independent and its rows are sorted by `c2`, so
//! concatenating blocks in [`blocks`] order gives the full deterministic scan.

use alloc::vec::Vec;

use crate::bounds::{check_character, classical_bg, prior_bound, profile_by_kind, BoundProfile, ProfileKind};
use crate::characters::{ReducedCharacter, QUINTIC_DEGREE};
use crate::error::{Error, Result};
use crate::rational::{q, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variety {
    QuinticSurface,
    QuinticThreefold,
}

impl Variety {
    pub fn dim(self) -> u8 {
        match self {
            Variety::QuinticSurface => 2,
            Variety::QuinticThreefold => 3,
        }
    }

    /// The strongest profile available on this variety.
    pub fn default_profile(self) -> ProfileKind {
        match self {
            Variety::QuinticSurface => ProfileKind::SurfaceQuintic,
            Variety::QuinticThreefold => ProfileKind::ThreefoldQuintic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    pub variety: Variety,
    pub rank_max: u32,
    pub c1_min: i64,
    pub c1_max: i64,
    pub c2_denominator: u32,
    /// Rows satisfy `|ξ| ≤ xi_bound`.
    pub xi_bound: Rational,
    pub profile: ProfileKind,
}

impl ScanConfig {
    pub fn new(variety: Variety, rank_max: u32, c1_min: i64, c1_max: i64) -> Self {
        ScanConfig {
            variety,
            rank_max,
            c1_min,
            c1_max,
            c2_denominator: 2,
            xi_bound: q(2, 1),
            profile: variety.default_profile(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank_max == 0 {
            return Err(Error::InvalidConfig("rank_max must be at least 1"));
        }
        if self.c2_denominator == 0 {
            return Err(Error::InvalidConfig("c2_denominator must be at least 1"));
        }
        if self.c1_min > self.c1_max {
            return Err(Error::InvalidConfig("c1 range is empty"));
        }
        if self.xi_bound.is_negative() {
            return Err(Error::InvalidConfig("xi_bound must be nonnegative"));
        }
        let profile = self.new_profile()?;
        if profile.dim.is_some_and(|d| d != self.variety.dim()) {
            return Err(Error::InvalidConfig("profile does not apply to this variety"));
        }
        Ok(())
    }

    fn new_profile(&self) -> Result<BoundProfile> {
        profile_by_kind(self.profile).ok_or(Error::InvalidConfig("custom profiles cannot be scanned"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanRow {
    pub character: ReducedCharacter,
    pub r: u32,
    pub a: i64,
    pub c2: Rational,
    pub mu: Rational,
    pub xi: Rational,
    pub delta: Rational,
    pub classical_bg: bool,
    /// `None` when the prior bound does not apply (surfaces, or `|μ| > 1`).
    pub prior: Option<bool>,
    /// `None` outside the selected profile's validity interval.
    pub new_bound: Option<bool>,
    pub margin_new: Option<Rational>,
}

/// `(r, a)` blocks in scan order.
pub fn blocks(config: &ScanConfig) -> Vec<(u32, i64)> {
    let mut out = Vec::new();
    for r in 1..=config.rank_max {
        for a in config.c1_min..=config.c1_max {
            out.push((r, a));
        }
    }
    out
}

fn optional_check(c: &ReducedCharacter, profile: &BoundProfile) -> Result<Option<(bool, Rational)>> {
    match check_character(c, profile) {
        Ok(r) => Ok(Some((r.satisfies, r.margin))),
        Err(Error::OutOfValidity(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Classifies one character against the classical, prior and selected
/// profiles independently.
pub fn classify(config: &ScanConfig, c: &ReducedCharacter, r: u32, a: i64) -> Result<ScanRow> {
    let mu = c.mu().finite().ok_or(Error::RankZero)?;
    let xi = c.xi()?;
    let classical = check_character(c, &classical_bg())?.satisfies;
    let prior = match config.variety {
        Variety::QuinticThreefold => optional_check(c, &prior_bound())?.map(|p| p.0),
        Variety::QuinticSurface => None,
    };
    let new = optional_check(c, &config.new_profile()?)?;
    Ok(ScanRow {
        character: *c,
        r,
        a,
        c2: c.c2(),
        mu,
        xi,
        delta: c.discriminant(),
        classical_bg: classical,
        prior,
        new_bound: new.map(|n| n.0),
        margin_new: new.map(|n| n.1),
    })
}

/// All rows with `c0 = 5r`, `c1 = 5a`, in increasing `c2`.
pub fn scan_block(config: &ScanConfig, r: u32, a: i64) -> Result<Vec<ScanRow>> {
    let den = i128::from(config.c2_denominator);
    let c0 = QUINTIC_DEGREE * Rational::from(r);
    let c1 = QUINTIC_DEGREE * Rational::from(a);
    // |c2| ≤ xi_bound·c0, so |j| ≤ xi_bound·c0·den.
    let j_max = (config.xi_bound * c0 * Rational::from_integer(den)).floor().numer();
    let mut rows = Vec::with_capacity((2 * j_max + 1) as usize);
    for j in -j_max..=j_max {
        let c = ReducedCharacter::new(config.variety.dim(), QUINTIC_DEGREE, c0, c1, q(j, den))?;
        rows.push(classify(config, &c, r, a)?);
    }
    Ok(rows)
}

/// Sequential scan; parallel drivers must reproduce this order.
pub fn scan(config: &ScanConfig) -> Result<Vec<ScanRow>> {
    config.validate()?;
    let mut out = Vec::new();
    for (r, a) in blocks(config) {
        out.extend(scan_block(config, r, a)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(rows: &[ScanRow], c0: i128, c1: i128, c2: Rational) -> ScanRow {
        *rows
            .iter()
            .find(|r| r.character.c0() == q(c0, 1) && r.character.c1() == q(c1, 1) && r.c2 == c2)
            .expect("row present")
    }

    #[test]
    fn line_bundle_saturates_threefold_bound() {
        let rows = scan(&ScanConfig::new(Variety::QuinticThreefold, 1, 1, 1)).unwrap();
        let row = find(&rows, 5, 5, q(5, 2));
        assert_eq!(row.margin_new, Some(Rational::ZERO));
        assert_eq!(row.new_bound, Some(true));
    }

    #[test]
    fn marked_point_and_separating_example() {
        let rows = scan(&ScanConfig::new(Variety::QuinticThreefold, 2, 1, 1)).unwrap();
        let row = find(&rows, 10, 5, q(-1, 2));
        assert_eq!((row.new_bound, row.prior, row.margin_new), (Some(true), Some(true), Some(Rational::ZERO)));
        let row = find(&rows, 10, 5, Rational::ZERO);
        assert_eq!((row.prior, row.new_bound), (Some(true), Some(false)));
        assert!(row.classical_bg);
    }

    #[test]
    fn row_order_and_bounds() {
        let cfg = ScanConfig::new(Variety::QuinticThreefold, 2, -1, 1);
        let rows = scan(&cfg).unwrap();
        let keys: Vec<_> = rows.iter().map(|r| (r.r, r.a, r.c2)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(rows.iter().all(|r| r.xi.abs() <= q(2, 1)));
        // r = 1: |j| ≤ 2·5·2 = 20, so 41 rows per a; r = 2 gives 81.
        assert_eq!(rows.len(), 3 * 41 + 3 * 81);
    }

    #[test]
    fn surface_rows_have_no_prior_flag() {
        let rows = scan(&ScanConfig::new(Variety::QuinticSurface, 1, 0, 1)).unwrap();
        assert!(rows.iter().all(|r| r.prior.is_none()));
        // μ = 0 lies outside (0, 1).
        assert!(rows.iter().filter(|r| r.a == 0).all(|r| r.new_bound.is_none() && r.margin_new.is_none()));
    }

    #[test]
    fn flags_match_check_character() {
        let cfg = ScanConfig::new(Variety::QuinticThreefold, 3, -3, 3);
        for row in scan(&cfg).unwrap() {
            let t = crate::bounds::threefold_bound();
            match check_character(&row.character, &t) {
                Ok(r) => assert_eq!((row.new_bound, row.margin_new), (Some(r.satisfies), Some(r.margin))),
                Err(_) => assert_eq!(row.new_bound, None),
            }
            assert_eq!(row.classical_bg, !row.delta.is_negative());
        }
    }

    #[test]
    fn config_validation() {
        let mut cfg = ScanConfig::new(Variety::QuinticThreefold, 0, 0, 0);
        assert!(cfg.validate().is_err());
        cfg.rank_max = 1;
        cfg.c2_denominator = 0;
        assert!(cfg.validate().is_err());
        cfg.c2_denominator = 2;
        cfg.profile = ProfileKind::SurfaceQuintic;
        assert!(cfg.validate().is_err());
        cfg.profile = ProfileKind::ClassicalBG;
        assert!(cfg.validate().is_ok());
        cfg.c1_min = 2;
        assert!(cfg.validate().is_err());
    }
}
