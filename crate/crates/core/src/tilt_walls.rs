//! Tilt slopes and wall geometry in the `(β, α)` half-plane.
//!
//! Stability parameters are the points with `α > β²/2`. The tilt slope is
//! `ν_{α,β}(E) = (c2 − α·c0) / (c1 − β·c0)`. Equating the tilt slopes of two
//! characters and cross-multiplying cancels the `αβ` term, so every numerical
//! wall is an affine line `a·β + b·α = c`. A line meets the open region above
//! the parabola in nothing, a bounded segment, or (when vertical) a ray.

use alloc::vec::Vec;

use crate::characters::ReducedCharacter;
use crate::error::{Error, Result};
use crate::rational::{Rational, Slope};

/// A point `(β, α)` of the parameter plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TiltPoint {
    pub beta: Rational,
    pub alpha: Rational,
}

impl TiltPoint {
    pub fn new(beta: Rational, alpha: Rational) -> Self {
        TiltPoint { beta, alpha }
    }

    /// `α > β²/2`.
    pub fn is_stability_parameter(&self) -> bool {
        self.alpha > Rational::HALF * self.beta.square()
    }
}

/// `Hⁿ⁻¹ch₁^{βH} = c1 − β·c0`.
pub fn ch1_twisted(c: &ReducedCharacter, beta: Rational) -> Rational {
    c.c1() - beta * c.c0()
}

/// The tilt slope `ν_{α,β,H}`, `+∞` when `c1 − β·c0 = 0`.
pub fn nu(c: &ReducedCharacter, p: TiltPoint) -> Slope {
    Slope::ratio(c.c2() - p.alpha * c.c0(), ch1_twisted(c, p.beta))
}

/// The vertical wall `β = μ(c)` on which `ν` is infinite.
pub fn vertical_wall(c: &ReducedCharacter) -> Result<Rational> {
    c.mu().finite().ok_or(Error::RankZero)
}

/// `α² + (β − ⌊β⌋ − ½)² > ¼`.
pub fn gepner_region(p: TiltPoint) -> bool {
    let frac = p.beta - p.beta.floor() - Rational::HALF;
    p.alpha.square() + frac.square() > Rational::new(1, 4)
}

/// The line `a·β + b·α = c`, stored canonically: `b = 1` when the line is not
/// vertical, otherwise `a = 1, b = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Wall {
    a: Rational,
    b: Rational,
    c: Rational,
}

/// The portion of a wall lying strictly above `α = β²/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admissible {
    Empty,
    /// A vertical line: every `α > β²/2` at this `β`.
    Ray { beta: Rational },
    Segment(Segment),
}

/// Open segment with abscissae `center ± √radicand`.
///
/// `endpoints` is filled in only when the square root is rational; otherwise
/// the pair `(center, radicand)` is the exact description.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub center: Rational,
    pub radicand: Rational,
    pub endpoints: Option<(Rational, Rational)>,
}

/// How the rational witness point on a wall was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessMethod {
    /// Midpoint of the admissible segment (always rational).
    Midpoint,
    /// On a vertical ray, one unit above the parabola.
    RayOffset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessPoint {
    pub point: TiltPoint,
    pub method: WitnessMethod,
}

impl Wall {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if !b.is_zero() {
            Ok(Wall { a: a / b, b: Rational::ONE, c: c / b })
        } else if !a.is_zero() {
            Ok(Wall { a: Rational::ONE, b: Rational::ZERO, c: c / a })
        } else {
            Err(Error::ZeroWall)
        }
    }

    pub fn a(&self) -> Rational {
        self.a
    }

    pub fn b(&self) -> Rational {
        self.b
    }

    pub fn c(&self) -> Rational {
        self.c
    }

    pub fn is_vertical(&self) -> bool {
        self.b.is_zero()
    }

    pub fn contains(&self, p: TiltPoint) -> bool {
        self.a * p.beta + self.b * p.alpha == self.c
    }

    /// `α` on the wall above `beta`, for non-vertical walls.
    pub fn alpha_at(&self, beta: Rational) -> Option<Rational> {
        if self.is_vertical() {
            None
        } else {
            Some(self.c - self.a * beta)
        }
    }

    pub fn admissible(&self) -> Admissible {
        if self.is_vertical() {
            return Admissible::Ray { beta: self.c };
        }
        // α = c − aβ > β²/2  ⇔  β² + 2aβ − 2c < 0, roots −a ± √(a² + 2c).
        let center = -self.a;
        let radicand = self.a.square() + Rational::from(2) * self.c;
        if !radicand.is_positive() {
            return Admissible::Empty;
        }
        let endpoints = radicand.sqrt_exact().map(|r| (center - r, center + r));
        Admissible::Segment(Segment { center, radicand, endpoints })
    }

    /// A rational point strictly inside the admissible locus.
    pub fn witness(&self) -> Option<WitnessPoint> {
        match self.admissible() {
            Admissible::Empty => None,
            Admissible::Ray { beta } => Some(WitnessPoint {
                point: TiltPoint::new(beta, Rational::HALF * beta.square() + Rational::ONE),
                method: WitnessMethod::RayOffset,
            }),
            Admissible::Segment(seg) => Some(WitnessPoint {
                point: TiltPoint::new(seg.center, self.c - self.a * seg.center),
                method: WitnessMethod::Midpoint,
            }),
        }
    }

    /// `n` distinct rational points strictly inside the admissible locus.
    pub fn sample_points(&self, n: usize) -> Vec<TiltPoint> {
        let n_q = Rational::from(n as i128);
        match self.admissible() {
            Admissible::Empty => Vec::new(),
            Admissible::Ray { beta } => (1..=n)
                .map(|k| {
                    let lift = Rational::from(k as i128) / n_q;
                    TiltPoint::new(beta, Rational::HALF * beta.square() + lift)
                })
                .collect(),
            Admissible::Segment(seg) => {
                // δ² < radicand, so center ± δ stays inside the open segment.
                let delta = if seg.radicand >= Rational::ONE {
                    Rational::HALF
                } else {
                    seg.radicand * Rational::HALF
                };
                (0..n)
                    .map(|k| {
                        let t = Rational::from(2 * k as i128 + 1 - n as i128) / n_q;
                        let beta = seg.center + t * delta;
                        TiltPoint::new(beta, self.c - self.a * beta)
                    })
                    .collect()
            }
        }
    }
}

/// Result of equating the tilt slopes of two characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WallLocus {
    Wall(Wall),
    /// The equality locus misses the region `α > β²/2`.
    NoWall,
    /// Proportional characters: equal tilt slopes everywhere.
    EverywhereEqual,
}

/// The locus where `ν(c) = ν(d)`.
///
/// From `(c2 − αc0)(d1 − βd0) = (d2 − αd0)(c1 − βc0)` one gets
/// `(c0d2 − c2d0)·β + (c1d0 − c0d1)·α = c1d2 − c2d1`.
pub fn numerical_wall(c: &ReducedCharacter, d: &ReducedCharacter) -> WallLocus {
    let a = c.c0() * d.c2() - c.c2() * d.c0();
    let b = c.c1() * d.c0() - c.c0() * d.c1();
    let k = c.c1() * d.c2() - c.c2() * d.c1();
    match Wall::new(a, b, k) {
        Err(_) if k.is_zero() => WallLocus::EverywhereEqual,
        Err(_) => WallLocus::NoWall,
        Ok(wall) if wall.admissible() == Admissible::Empty => WallLocus::NoWall,
        Ok(wall) => WallLocus::Wall(wall),
    }
}

/// Search box and lattice for [`enumerate_destabilizers`].
///
/// Candidates are `(Hⁿ·r, Hⁿ·s, j/c2_denominator)` with `|r|, |s| ≤ bound_box`
/// and `|c2| ≤ Hⁿ·bound_box`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DestabilizerOptions {
    pub bound_box: u32,
    pub c2_denominator: u32,
    /// Keep candidates proportional to the input (only possible when its
    /// discriminant vanishes).
    pub include_proportional: bool,
}

impl DestabilizerOptions {
    pub fn new(bound_box: u32) -> Self {
        DestabilizerOptions { bound_box, c2_denominator: 2, include_proportional: false }
    }

    pub fn rank_range(&self) -> core::ops::RangeInclusive<i64> {
        let b = self.bound_box as i64;
        -b..=b
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DestabilizerSearch {
    /// The point where the `ch₁^β` betweenness was evaluated.
    pub witness: WitnessPoint,
    /// Sorted by `(c0, c1, c2)`.
    pub candidates: Vec<ReducedCharacter>,
}

fn check_destabilizer_input(c: &ReducedCharacter, wall: &Wall) -> Result<WitnessPoint> {
    if !c.c0().is_positive() {
        return Err(Error::NonPositiveRank);
    }
    let delta = c.discriminant();
    if delta.is_negative() {
        return Err(Error::NegativeDiscriminant(delta));
    }
    wall.witness().ok_or(Error::EmptyWall)
}

/// Lattice characters that could appear as a sub-object (or quotient) of `c`
/// along `wall`: same wall, `0 < ch₁^β(F) < ch₁^β(c)` at the witness point,
/// and both `F` and `c − F` with discriminant in `[0, Δ(c))`. Equality with
/// `Δ(c)` is admitted only for proportional characters with `Δ = 0`, and only
/// when `include_proportional` is set.
pub fn enumerate_destabilizers(
    c: &ReducedCharacter,
    wall: &Wall,
    opts: &DestabilizerOptions,
) -> Result<DestabilizerSearch> {
    let witness = check_destabilizer_input(c, wall)?;
    let candidates = enumerate_destabilizers_for_ranks(c, wall, opts, opts.rank_range())?;
    Ok(DestabilizerSearch { witness, candidates })
}

/// The part of [`enumerate_destabilizers`] with `c0 = Hⁿ·r` for `r` in
/// `ranks`. Lets callers split the box across workers; concatenating the
/// results of consecutive rank ranges reproduces the full sorted list.
pub fn enumerate_destabilizers_for_ranks(
    c: &ReducedCharacter,
    wall: &Wall,
    opts: &DestabilizerOptions,
    ranks: core::ops::RangeInclusive<i64>,
) -> Result<Vec<ReducedCharacter>> {
    let witness = check_destabilizer_input(c, wall)?;
    if opts.c2_denominator == 0 {
        return Err(Error::InvalidConfig("c2_denominator must be positive"));
    }
    let beta = witness.point.beta;
    let upper = ch1_twisted(c, beta);
    let delta_c = c.discriminant();
    let deg = c.degree();
    let b = opts.bound_box as i64;
    let den = opts.c2_denominator as i128;
    let j_max = (deg * Rational::from(b) * Rational::from(den)).floor().numer();

    let admissible_delta = |f: &ReducedCharacter| -> bool {
        let d = f.discriminant();
        if d.is_negative() {
            return false;
        }
        if d < delta_c {
            return true;
        }
        opts.include_proportional && d == delta_c && d.is_zero() && f.is_proportional(c)
    };

    let mut out = Vec::new();
    for r in ranks.filter(|r| r.abs() <= b) {
        for s in -b..=b {
            for j in -j_max..=j_max {
                let f = c.with_entries(
                    deg * Rational::from(r),
                    deg * Rational::from(s),
                    Rational::new(j, den),
                );
                let on_wall = match numerical_wall(c, &f) {
                    WallLocus::Wall(w) => w == *wall,
                    WallLocus::EverywhereEqual => opts.include_proportional,
                    WallLocus::NoWall => false,
                };
                if !on_wall {
                    continue;
                }
                let t = ch1_twisted(&f, beta);
                if !(t.is_positive() && t < upper) {
                    continue;
                }
                let quotient = c.difference(&f)?;
                if admissible_delta(&f) && admissible_delta(&quotient) {
                    out.push(f);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}
