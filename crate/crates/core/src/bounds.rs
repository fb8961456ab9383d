//! Bogomolov–Gieseker type bound profiles `ξ ≤ f(μ)` on quintics, the
//! star-shapedness predicate and the Toda-inequality check.

use alloc::vec::Vec;

use crate::characters::{ReducedCharacter, QUINTIC_DEGREE};
use crate::error::{Error, Result};
use crate::piecewise::{Endpoint, Piece, PiecewiseLinearFn};
use crate::rational::{q, Rational, Slope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProfileKind {
    SurfaceQuintic,
    ThreefoldQuintic,
    /// The earlier threefold bound, read off the comparison plot.
    PriorLi,
    ClassicalBG,
    Custom,
}

impl ProfileKind {
    pub fn name(self) -> &'static str {
        match self {
            ProfileKind::SurfaceQuintic => "surface",
            ProfileKind::ThreefoldQuintic => "threefold",
            ProfileKind::PriorLi => "prior",
            ProfileKind::ClassicalBG => "classical",
            ProfileKind::Custom => "custom",
        }
    }
}

/// Which function of the character the profile is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variable {
    Mu,
    AbsMu,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Curve {
    Linear(PiecewiseLinearFn),
    /// `x²/2` on the whole line.
    HalfParabola,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundProfile {
    pub kind: ProfileKind,
    pub variable: Variable,
    pub curve: Curve,
    /// Ambient dimension the profile applies to; `None` for any.
    pub dim: Option<u8>,
}

/// Endpoint of a validity interval and whether it is included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bound {
    pub at: Endpoint,
    pub closed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Validity {
    pub lo: Bound,
    pub hi: Bound,
}

fn pieces(rows: &[(Rational, Rational, Rational, Rational)]) -> Vec<Piece> {
    rows.iter().map(|&(lo, hi, s, t)| Piece::closed(lo, hi, s, t).with_ownership(false, true)).collect()
}

/// Five pieces on `(0, 1)`; the value at 39/46 belongs to the last piece.
pub fn surface_bound() -> BoundProfile {
    let mut ps = pieces(&[
        (Rational::ZERO, q(7, 46), q(17, 26), q(-2, 13)),
        (q(7, 46), q(7, 20), q(-5, 14), Rational::ZERO),
        (q(7, 20), q(13, 20), q(1, 2), q(-3, 10)),
        (q(13, 20), q(39, 46), q(19, 14), q(-6, 7)),
        (q(39, 46), Rational::ONE, q(9, 26), Rational::ZERO),
    ]);
    ps[3].owns_right = false;
    ps[4].owns_left = true;
    ps[4].owns_right = false;
    BoundProfile {
        kind: ProfileKind::SurfaceQuintic,
        variable: Variable::Mu,
        curve: Curve::Linear(PiecewiseLinearFn::new(ps).expect("surface profile")),
        dim: Some(2),
    }
}

fn closed_unit_profile(kind: ProfileKind, rows: &[(Rational, Rational, Rational, Rational)]) -> BoundProfile {
    let mut ps = pieces(rows);
    ps[0].owns_left = true;
    BoundProfile {
        kind,
        variable: Variable::AbsMu,
        curve: Curve::Linear(PiecewiseLinearFn::new(ps).expect("threefold profile")),
        dim: Some(3),
    }
}

/// The threefold bound in `x = |μ|` on `[0, 1]`. Seven linear pieces: the
/// branch `x/2 − 1/4` occurs on both sides of the middle window.
pub fn threefold_bound() -> BoundProfile {
    closed_unit_profile(
        ProfileKind::ThreefoldQuintic,
        &[
            (Rational::ZERO, q(1, 4), q(-1, 2), Rational::ZERO),
            (q(1, 4), q(5, 13), q(1, 2), q(-1, 4)),
            (q(5, 13), q(6, 13), q(-3, 20), Rational::ZERO),
            (q(6, 13), q(7, 13), q(1, 2), q(-3, 10)),
            (q(7, 13), q(8, 13), q(23, 20), q(-13, 20)),
            (q(8, 13), q(3, 4), q(1, 2), q(-1, 4)),
            (q(3, 4), Rational::ONE, q(3, 2), -Rational::ONE),
        ],
    )
}

/// The earlier threefold bound: `x/2 − 1/4` across the whole middle window,
/// outer pieces shared with [`threefold_bound`].
pub fn prior_bound() -> BoundProfile {
    closed_unit_profile(
        ProfileKind::PriorLi,
        &[
            (Rational::ZERO, q(1, 4), q(-1, 2), Rational::ZERO),
            (q(1, 4), q(3, 4), q(1, 2), q(-1, 4)),
            (q(3, 4), Rational::ONE, q(3, 2), -Rational::ONE),
        ],
    )
}

/// `ξ ≤ μ²/2`, equivalently a nonnegative discriminant.
pub fn classical_bg() -> BoundProfile {
    BoundProfile { kind: ProfileKind::ClassicalBG, variable: Variable::Mu, curve: Curve::HalfParabola, dim: None }
}

pub fn profile_by_kind(kind: ProfileKind) -> Option<BoundProfile> {
    match kind {
        ProfileKind::SurfaceQuintic => Some(surface_bound()),
        ProfileKind::ThreefoldQuintic => Some(threefold_bound()),
        ProfileKind::PriorLi => Some(prior_bound()),
        ProfileKind::ClassicalBG => Some(classical_bg()),
        ProfileKind::Custom => None,
    }
}

impl BoundProfile {
    /// A profile in `x = μ` from arbitrary pieces.
    pub fn custom(f: PiecewiseLinearFn) -> Self {
        BoundProfile { kind: ProfileKind::Custom, variable: Variable::Mu, curve: Curve::Linear(f), dim: None }
    }

    pub fn linear(&self) -> Option<&PiecewiseLinearFn> {
        match &self.curve {
            Curve::Linear(f) => Some(f),
            Curve::HalfParabola => None,
        }
    }

    pub fn validity(&self) -> Validity {
        match &self.curve {
            Curve::HalfParabola => Validity {
                lo: Bound { at: Endpoint::NegInf, closed: false },
                hi: Bound { at: Endpoint::PosInf, closed: false },
            },
            Curve::Linear(f) => {
                let first = f.pieces()[0];
                let last = f.pieces()[f.pieces().len() - 1];
                Validity {
                    lo: Bound { at: first.lo, closed: first.owns_left },
                    hi: Bound { at: last.hi, closed: last.owns_right },
                }
            }
        }
    }

    /// `f(x)`, or an out-of-validity error.
    pub fn eval(&self, x: Rational) -> Result<Rational> {
        match &self.curve {
            Curve::HalfParabola => Ok(Rational::HALF * x.square()),
            Curve::Linear(f) => f.eval(x).ok_or(Error::OutOfValidity(x)),
        }
    }

    /// The abscissa at which a character is compared.
    pub fn abscissa(&self, c: &ReducedCharacter) -> Result<Rational> {
        let mu = c.mu().finite().ok_or(Error::RankZero)?;
        Ok(match self.variable {
            Variable::Mu => mu,
            Variable::AbsMu => mu.abs(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckResult {
    pub x: Rational,
    pub xi: Rational,
    pub bound: Rational,
    pub satisfies: bool,
    /// `bound − ξ`; negative exactly when the bound is violated.
    pub margin: Rational,
}

/// Compares `ξ(c)` with the profile at `μ(c)` (or `|μ(c)|`).
pub fn check_character(c: &ReducedCharacter, profile: &BoundProfile) -> Result<CheckResult> {
    if let Some(dim) = profile.dim {
        if c.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: c.dim() });
        }
        if c.degree() != QUINTIC_DEGREE {
            return Err(Error::NotQuintic);
        }
    }
    let x = profile.abscissa(c)?;
    let xi = c.xi()?;
    let bound = profile.eval(x)?;
    let margin = bound - xi;
    Ok(CheckResult { x, xi, bound, satisfies: !margin.is_negative(), margin })
}

/// Chord from `(t, y)` to `(d, d²/2)` evaluated at `x`.
fn chord(t: Rational, y: Rational, d: Rational, x: Rational) -> Rational {
    let apex = Rational::HALF * d.square();
    y + (apex - y) * (x - t) / (d - t)
}

/// Whether every chord from a graph point `(t, f(t))` to `(d, d²/2)` stays on
/// or above the graph between `t` and `d`.
///
/// Only chords from knots need checking. If `t` lies inside a linear piece
/// with ends `t₁ < t₂` (say `t < d`), the chord from `t₁` dominates `f(t₂)`,
/// so the segment of the graph is no steeper than the chord from `t`, and the
/// chord from `t` dominates the chord from `t₂` on `[t₂, d]`. The chords
/// are affine, so it is enough to compare them at knots, using every value
/// the graph takes or approaches there.
pub fn star_shaped(profile: &BoundProfile, d: Rational) -> Result<bool> {
    let f = match &profile.curve {
        Curve::Linear(f) => f,
        Curve::HalfParabola => return Err(Error::NotPiecewiseLinear),
    };
    let knots = f.knots();
    let apex = Rational::HALF * d.square();
    for &t in &knots {
        for y in f.values_near(t) {
            for &x in &knots {
                let between = if t < d { t < x && x < d } else { d < x && x < t };
                if !between {
                    continue;
                }
                if f.values_near(x).into_iter().any(|v| v > chord(t, y, d, x)) {
                    return Ok(false);
                }
            }
            // The apex itself must not lie below the graph.
            if f.spans(d) && t != d && f.values_near(d).into_iter().any(|v| v > apex) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Minimum of `x²/2 − (s·x + t)` over the closure of a piece.
pub fn parabola_gap(p: &Piece) -> Rational {
    let mut x = p.slope;
    if let Endpoint::Finite(lo) = p.lo {
        x = x.max(lo);
    }
    if let Endpoint::Finite(hi) = p.hi {
        x = x.min(hi);
    }
    Rational::HALF * x.square() - p.value_at(x)
}

/// `f(x) ≤ x²/2` on the closure of every piece.
pub fn dominated_by_parabola(profile: &BoundProfile) -> bool {
    match &profile.curve {
        Curve::HalfParabola => true,
        Curve::Linear(f) => f.pieces().iter().all(|p| !parabola_gap(p).is_negative()),
    }
}

/// Stand-ins for the irrational constants of the Toda inequalities, as
/// printed to the available precision.
pub const TODA_DELTA_THRESHOLD: Rational = Rational::integer(15139);
pub const TODA_DELTA_SCALE: Rational = Rational::integer(10000);
pub const TODA_XI_NUMERATOR: Rational = Rational::integer(-2639);
pub const TODA_XI_SCALE: Rational = Rational::integer(100000);

pub fn toda_delta_threshold() -> Rational {
    TODA_DELTA_THRESHOLD / TODA_DELTA_SCALE
}

pub fn toda_xi_threshold() -> Rational {
    TODA_XI_NUMERATOR / TODA_XI_SCALE
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TodaReport {
    /// `HΔ(E)/rk(E)²`.
    pub lhs_delta: Rational,
    /// `Hch₂(E)/(H³rk(E))`.
    pub lhs_xi: Rational,
    pub passes_delta: bool,
    pub passes_xi: bool,
}

/// Evaluates both Toda inequalities for a threefold character with
/// `ch₁/rk = −H/2`.
///
/// With `ch₁ = (c1/H³)·H`, `Δ = ch₁² − 2ch₀ch₂` gives
/// `HΔ = c1²/H³ − 2·rk·c2`, and with `c0 = H³·rk` this is
/// `HΔ/rk² = H³·(c1² − 2c0c2)/c0²`. At `μ = −1/2` it equals `5/4 − 10ξ`.
pub fn toda_check(c: &ReducedCharacter) -> Result<TodaReport> {
    if c.dim() != 3 || c.degree() != QUINTIC_DEGREE {
        return Err(Error::TodaHypothesis(c.mu()));
    }
    if c.mu() != Slope::Finite(q(-1, 2)) {
        return Err(Error::TodaHypothesis(c.mu()));
    }
    let lhs_delta = c.degree() * c.discriminant() / c.c0().square();
    let lhs_xi = c.xi()?;
    Ok(TodaReport {
        lhs_delta,
        lhs_xi,
        passes_delta: lhs_delta > toda_delta_threshold(),
        passes_xi: lhs_xi < toda_xi_threshold(),
    })
}
