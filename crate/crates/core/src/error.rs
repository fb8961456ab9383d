use core::fmt;

use crate::rational::{Rational, Slope};

/// Every failure the numerical layer can report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `Hⁿch₀ = 0` where a slope point is required.
    RankZero,
    InvalidDimension(u8),
    InvalidDegree(Rational),
    DimensionMismatch { expected: u8, found: u8 },
    /// Two characters live on different ambient varieties.
    AmbientMismatch,
    NotQuintic,
    NegativeDiscriminant(Rational),
    NonPositiveRank,
    ZeroWall,
    EmptyWall,
    DegenerateInterval { a: Rational, b: Rational },
    OutsideDomain(Rational),
    InvalidPieces(&'static str),
    InvalidRange(&'static str),
    OutOfValidity(Rational),
    NotPiecewiseLinear,
    TodaHypothesis(Slope),
    DegenerateSlope(Rational),
    HypothesisRange(Rational),
    BelowProfile { xi: Rational, bound: Rational },
    InvalidConfig(&'static str),
    CrossCheck(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RankZero => f.write_str("character has rank zero (H^n ch0 = 0)"),
            Error::InvalidDimension(n) => write!(f, "dimension {} is not in {{1, 2, 3}}", n),
            Error::InvalidDegree(d) => write!(f, "degree H^n must be positive, got {}", d),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "expected a character of dimension {}, got {}", expected, found)
            }
            Error::AmbientMismatch => {
                f.write_str("characters live on different ambient varieties")
            }
            Error::NotQuintic => f.write_str("operation requires a quintic (degree 5)"),
            Error::NegativeDiscriminant(d) => {
                write!(f, "discriminant {} is negative; BG excludes this input", d)
            }
            Error::NonPositiveRank => f.write_str("character must have H^n ch0 > 0"),
            Error::ZeroWall => f.write_str("wall coefficients (a, b) are both zero"),
            Error::EmptyWall => f.write_str("wall has no points above the parabola alpha = beta^2/2"),
            Error::DegenerateInterval { a, b } => {
                write!(f, "interval [{}, {}] is empty or degenerate", a, b)
            }
            Error::OutsideDomain(x) => write!(f, "{} lies outside the function's domain", x),
            Error::InvalidPieces(why) => write!(f, "invalid piecewise function: {}", why),
            Error::InvalidRange(why) => write!(f, "invalid slope range: {}", why),
            Error::OutOfValidity(x) => write!(f, "{} lies outside the profile's validity interval", x),
            Error::NotPiecewiseLinear => f.write_str("profile is not piecewise linear"),
            Error::TodaHypothesis(mu) => {
                write!(f, "Toda check needs a quintic threefold character with mu = -1/2, got mu = {}", mu)
            }
            Error::DegenerateSlope(mu) => write!(f, "slope {} makes a tilt slope infinite", mu),
            Error::HypothesisRange(mu) => write!(f, "slope {} is outside the certified range", mu),
            Error::BelowProfile { xi, bound } => {
                write!(f, "xi = {} already satisfies the bound {}; nothing to refute", xi, bound)
            }
            Error::InvalidConfig(why) => write!(f, "invalid scan configuration: {}", why),
            Error::CrossCheck(what) => write!(f, "internal cross-check failed: {}", what),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
