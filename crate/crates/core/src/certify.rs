//! Restriction slope intervals and replayable certificates for the surface
//! and threefold bound arguments.
//!
//! A certificate starts from a point `(μ, ξ)` on or above a bound profile,
//! recomputes every slope estimate and `h⁰` constant the argument needs, and
//! reports which inequality the chain ends with. It checks arithmetic only;
//! nothing here constructs a sheaf.

use alloc::vec::Vec;

use crate::bounds::{surface_bound, threefold_bound};
use crate::characters::{ReducedCharacter, QUINTIC_DEGREE};
use crate::clifford::{concave_roof, h0_bound_hn, h_quintic, SlopeRangeData};
use crate::error::{Error, Result};
use crate::piecewise::Endpoint;
use crate::rational::{q, Rational, Slope};
use crate::tilt_walls::{nu, TiltPoint};

/// `ν_{0,0}` of `F`, `F∨`, `F(−H)[1]` and `F∨(H)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NuZero {
    pub nu_f: Rational,
    pub nu_f_dual: Rational,
    pub nu_f_twist_shift: Rational,
    pub nu_f_dualtwist: Rational,
}

fn nu_origin(c: &ReducedCharacter) -> Option<Rational> {
    nu(c, TiltPoint::new(Rational::ZERO, Rational::ZERO)).finite()
}

fn slope_of(c: &ReducedCharacter) -> Result<Rational> {
    c.mu().finite().ok_or(Error::RankZero)
}

/// The four tilt slopes at the origin, evaluated on the transformed
/// characters and cross-checked against their closed forms in `(μ, ξ)`.
pub fn nu_zero_formulas(c: &ReducedCharacter) -> Result<NuZero> {
    let mu = slope_of(c)?;
    let xi = c.xi()?;
    if mu.is_zero() || mu == Rational::ONE {
        return Err(Error::DegenerateSlope(mu));
    }
    let half = Rational::HALF;
    let one = Rational::ONE;
    let direct = |d: ReducedCharacter| nu_origin(&d).ok_or(Error::CrossCheck("tilt slope at origin is infinite"));
    let out = NuZero {
        nu_f: direct(*c)?,
        nu_f_dual: direct(c.dual())?,
        nu_f_twist_shift: direct(c.tensor_oh(-1).shift())?,
        nu_f_dualtwist: direct(c.dual().tensor_oh(1))?,
    };
    if out.nu_f != xi / mu {
        return Err(Error::CrossCheck("nu(F) = xi/mu"));
    }
    if out.nu_f_dual != -xi / mu {
        return Err(Error::CrossCheck("nu(F^v) = -xi/mu"));
    }
    if out.nu_f_twist_shift + half != (xi - half * mu) / (mu - one) {
        return Err(Error::CrossCheck("nu(F(-H)[1]) + 1/2 = (xi - mu/2)/(mu - 1)"));
    }
    if out.nu_f_dualtwist + half != (xi - half) / (one - mu) + q(3, 2) {
        return Err(Error::CrossCheck("nu(F^v(H)) + 1/2 = (xi - 1/2)/(1 - mu) + 3/2"));
    }
    Ok(out)
}

/// Closed interval of slopes that the HN factors of a restriction to a
/// divisor in `|mH|` must lie in. The endpoints are normalised so that
/// `lower ≤ upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RestrictionInterval {
    pub lower: Rational,
    pub upper: Rational,
    pub m: u32,
}

/// `⟦m/2 + ν_{0,0}(E), m/2 + ν_{0,0}(E(−mH)[1])⟧`.
pub fn restriction_interval(c: &ReducedCharacter, m: u32) -> Result<RestrictionInterval> {
    if m == 0 {
        return Err(Error::InvalidRange("m must be positive"));
    }
    let mu = slope_of(c)?;
    let mq = Rational::from(m);
    if mu.is_zero() || mu == mq {
        return Err(Error::DegenerateSlope(mu));
    }
    let half_m = Rational::HALF * mq;
    let a = half_m + nu_origin(c).ok_or(Error::DegenerateSlope(mu))?;
    let b = half_m + nu_origin(&c.tensor_oh(-(m as i64)).shift()).ok_or(Error::DegenerateSlope(mu))?;
    Ok(RestrictionInterval { lower: a.min(b), upper: a.max(b), m })
}

/// Numerical character of the restriction to a divisor in `|mH|`: one
/// dimension lower, degree `m·Hⁿ`, entries multiplied by `m`.
pub fn restricted_character(c: &ReducedCharacter, m: u32) -> Result<ReducedCharacter> {
    if c.dim() < 2 {
        return Err(Error::InvalidDimension(c.dim() - 1));
    }
    if m == 0 {
        return Err(Error::InvalidRange("m must be positive"));
    }
    let mq = Rational::from(m);
    ReducedCharacter::new(c.dim() - 1, c.degree() * mq, mq * c.c0(), mq * c.c1(), mq * c.c2())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    SurfaceMain,
    SurfaceSmallSlope,
    ThreefoldMiddle,
}

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::SurfaceMain => "SurfaceMain",
            CaseTag::SurfaceSmallSlope => "SurfaceSmallSlope",
            CaseTag::ThreefoldMiddle => "ThreefoldMiddle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub label: &'static str,
    pub value: Rational,
}

/// Whether a slope check bounds the value from above or below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Upper,
    Lower,
}

/// One slope inequality the argument needs. Both the strict and the weak
/// reading are recorded; `holds` follows the one the argument uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlopeCheck {
    pub label: &'static str,
    pub value: Rational,
    pub side: Side,
    pub bound: Rational,
    pub strict: bool,
    pub holds: bool,
    pub holds_strict: bool,
    pub holds_weak: bool,
}

impl SlopeCheck {
    fn new(label: &'static str, value: Rational, side: Side, bound: Rational, strict: bool) -> Self {
        let (holds_strict, holds_weak) = match side {
            Side::Upper => (value < bound, value <= bound),
            Side::Lower => (value > bound, value >= bound),
        };
        SlopeCheck {
            label,
            value,
            side,
            bound,
            strict,
            holds: if strict { holds_strict } else { holds_weak },
            holds_strict,
            holds_weak,
        }
    }

    pub fn relation(&self) -> &'static str {
        match (self.side, self.strict) {
            (Side::Upper, true) => "<",
            (Side::Upper, false) => "<=",
            (Side::Lower, true) => ">",
            (Side::Lower, false) => ">=",
        }
    }
}

/// `ξ ≤ slope·μ + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conclusion {
    pub slope: Rational,
    pub intercept: Rational,
}

impl Conclusion {
    pub fn at(&self, mu: Rational) -> Rational {
        self.slope * mu + self.intercept
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// Rank-one character with the requested `(μ, ξ)`.
    pub input: ReducedCharacter,
    pub case_tag: CaseTag,
    /// The `(μ, ξ)` the chain actually runs on, when a symmetry was applied
    /// first (`F∨(H)` on the surface, `F∨` on the threefold).
    pub reduced: Option<(Rational, Rational)>,
    pub steps: Vec<Step>,
    pub checks: Vec<SlopeCheck>,
    pub conclusion: Conclusion,
    /// `conclusion(μ) − ξ` at the point the chain runs on.
    pub margin: Rational,
    /// Every check holds and `ξ` exceeds the concluded bound.
    pub contradicts_assumption: bool,
}

impl Certificate {
    pub fn step(&self, label: &str) -> Option<Rational> {
        self.steps.iter().find(|s| s.label == label).map(|s| s.value)
    }
}

/// Per-rank `χ` as an affine form `(coef_xi, coef_mu, constant)` in `(ξ, μ)`,
/// read off by evaluating `chi` on three rank-one characters.
fn chi_affine_form(chi: impl Fn(&ReducedCharacter) -> Result<Rational>) -> Result<(Rational, Rational, Rational)> {
    let at = |mu: Rational, xi: Rational| -> Result<Rational> {
        let c = ReducedCharacter::from_slope_point(2, QUINTIC_DEGREE, mu, xi)?;
        Ok(chi(&c)? / c.rank())
    };
    let k0 = at(Rational::ZERO, Rational::ZERO)?;
    let k_mu = at(Rational::ONE, Rational::ZERO)? - k0;
    let k_xi = at(Rational::ZERO, Rational::ONE)? - k0;
    if !k_xi.is_positive() {
        return Err(Error::CrossCheck("chi must increase with xi"));
    }
    Ok((k_xi, k_mu, k0))
}

/// Solves `k_xi·ξ + k_mu·μ + k0 ≤ b_mu·μ + b0` for `ξ`.
fn solve_for_xi(chi: (Rational, Rational, Rational), b_mu: Rational, b0: Rational) -> Conclusion {
    let (k_xi, k_mu, k0) = chi;
    Conclusion { slope: (b_mu - k_mu) / k_xi, intercept: (b0 - k0) / k_xi }
}

fn finish(
    input: ReducedCharacter,
    case_tag: CaseTag,
    reduced: Option<(Rational, Rational)>,
    point: (Rational, Rational),
    steps: Vec<Step>,
    checks: Vec<SlopeCheck>,
    conclusion: Conclusion,
) -> Certificate {
    let margin = conclusion.at(point.0) - point.1;
    let contradicts_assumption = checks.iter().all(|c| c.holds) && margin.is_negative();
    Certificate { input, case_tag, reduced, steps, checks, conclusion, margin, contradicts_assumption }
}

/// Replays the surface argument at `(μ, ξ)` with `0 < μ < 1` and
/// `ξ ≥ f(μ)` for the surface profile `f`.
///
/// Slopes above `1/2` are first moved to `1 − μ` through `F ↦ F∨(H)`. Slopes
/// in `[7/46, 1/2]` run the main chain: both restrictions have HN slopes in
/// `[0, 6/7]`, where the roof of `h` is affine. Smaller slopes run the
/// small-slope chain through `χ(F(H))`, bounding `h⁰(F|_C)` by `h(2/13)` and
/// `h⁰(F(H)|_C)` by `h(8/7) = 3`; the weaker slope bound `15/13` and the
/// constant `h(15/13)` are recorded too.
pub fn certify_surface(mu: Rational, xi: Rational) -> Result<Certificate> {
    if !(mu.is_positive() && mu < Rational::ONE) {
        return Err(Error::HypothesisRange(mu));
    }
    let bound = surface_bound().eval(mu)?;
    if xi < bound {
        return Err(Error::BelowProfile { xi, bound });
    }
    let input = ReducedCharacter::from_slope_point(2, QUINTIC_DEGREE, mu, xi)?;
    let half = Rational::HALF;
    let (m, x, reduced) = if mu > half {
        let r = (Rational::ONE - mu, xi - mu + half);
        (r.0, r.1, Some(r))
    } else {
        (mu, xi, None)
    };
    let c = ReducedCharacter::from_slope_point(2, QUINTIC_DEGREE, m, x)?;
    let nz = nu_zero_formulas(&c)?;
    let mut steps = alloc::vec![
        Step { label: "mu", value: m },
        Step { label: "xi", value: x },
        Step { label: "nu(F)", value: nz.nu_f },
        Step { label: "nu(F(-H)[1])", value: nz.nu_f_twist_shift },
        Step { label: "nu(F^v(H))", value: nz.nu_f_dualtwist },
        Step { label: "nu(F^v[1])", value: nz.nu_f_dual },
    ];
    let e1 = half + nz.nu_f;
    let e2 = half + nz.nu_f_twist_shift;
    let mu_plus_f = e1.max(e2);
    let mu_minus_f = e1.min(e2);
    steps.push(Step { label: "mu+(F|C) bound", value: mu_plus_f });
    steps.push(Step { label: "mu-(F|C) bound", value: mu_minus_f });
    let h = h_quintic();
    let small_slope_cut = surface_bound().linear().expect("linear").breakpoints()[0];

    if m >= small_slope_cut {
        let d1 = half + nz.nu_f_dualtwist;
        let d2 = half + nz.nu_f_dual;
        let mu_plus_d = d1.max(d2);
        let mu_minus_d = d1.min(d2);
        steps.push(Step { label: "mu+(F^v(H)|C) bound", value: mu_plus_d });
        steps.push(Step { label: "mu-(F^v(H)|C) bound", value: mu_minus_d });
        // The first piece of h starting at 0 fixes the window [0, 6/7].
        let window = h.piece_at(Rational::ZERO).and_then(|p| p.hi.finite()).expect("h has a piece at 0");
        let roof = concave_roof(&h, Rational::ZERO, window)?;
        let [piece] = roof.pieces() else {
            return Err(Error::CrossCheck("roof of h on the first window is affine"));
        };
        let checks = alloc::vec![
            SlopeCheck::new("mu+(F|C)", mu_plus_f, Side::Upper, window, false),
            SlopeCheck::new("mu-(F|C)", mu_minus_f, Side::Lower, Rational::ZERO, false),
            SlopeCheck::new("mu+(F^v(H)|C)", mu_plus_d, Side::Upper, window, false),
            SlopeCheck::new("mu-(F^v(H)|C)", mu_minus_d, Side::Lower, Rational::ZERO, false),
        ];
        let h0_f = piece.value_at(m);
        let h0_d = piece.value_at(Rational::ONE - m);
        let hn_f = h0_bound_hn(SlopeRangeData::new(Endpoint::Finite(Rational::ZERO), window, m)?)?;
        if hn_f != h0_f {
            return Err(Error::CrossCheck("roof evaluation"));
        }
        // roof(μ) + roof(1 − μ) = sμ + t + s(1 − μ) + t: the μ terms cancel.
        let b_mu = Rational::ZERO;
        let b0 = piece.intercept * q(2, 1) + piece.slope;
        let chi = chi_affine_form(|c| c.chi_quintic_surface())?;
        steps.push(Step { label: "roof window", value: window });
        steps.push(Step { label: "roof slope", value: piece.slope });
        steps.push(Step { label: "roof intercept", value: piece.intercept });
        steps.push(Step { label: "h0(F|C)/rk", value: h0_f });
        steps.push(Step { label: "h0(F^v(H)|C)/rk", value: h0_d });
        steps.push(Step { label: "h0 sum/rk", value: h0_f + h0_d });
        steps.push(Step { label: "chi/rk coefficient of xi", value: chi.0 });
        steps.push(Step { label: "chi/rk coefficient of mu", value: chi.1 });
        steps.push(Step { label: "chi/rk constant", value: chi.2 });
        steps.push(Step { label: "chi/rk", value: c.chi_quintic_surface()? / c.rank() });
        let conclusion = solve_for_xi(chi, b_mu, b0);
        steps.push(Step { label: "bound at mu", value: conclusion.at(m) });
        Ok(finish(input, CaseTag::SurfaceMain, reduced, (m, x), steps, checks, conclusion))
    } else {
        let mu_plus_twist = mu_plus_f + Rational::ONE;
        steps.push(Step { label: "mu+(F(H)|C) bound", value: mu_plus_twist });
        let low_cap = q(2, 13);
        let twist_cap = low_cap + Rational::ONE;
        // End of the constant piece of h through 1.
        let flat_end = h.piece_at(Rational::ONE).and_then(|p| p.hi.finite()).expect("h has a piece at 1");
        let checks = alloc::vec![
            SlopeCheck::new("mu+(F|C)", mu_plus_f, Side::Upper, low_cap, false),
            SlopeCheck::new("mu+(F(H)|C)", mu_plus_twist, Side::Upper, twist_cap, false),
            SlopeCheck::new("mu+(F(H)|C) for h = 3", mu_plus_twist, Side::Upper, flat_end, false),
        ];
        let unbounded = |cap: Rational| h0_bound_hn(SlopeRangeData { mu_minus: Endpoint::NegInf, mu_plus: cap, mu: cap });
        let h0_f = unbounded(low_cap)?;
        let h0_twist = unbounded(flat_end)?;
        let h0_twist_weak = unbounded(twist_cap)?;
        let chi = chi_affine_form(|c| c.tensor_oh(1).chi_quintic_surface())?;
        let conclusion = solve_for_xi(chi, Rational::ZERO, h0_f + h0_twist);
        let weak = solve_for_xi(chi, Rational::ZERO, h0_f + h0_twist_weak);
        steps.push(Step { label: "h0(F|C)/rk", value: h0_f });
        steps.push(Step { label: "h0(F(H)|C)/rk", value: h0_twist });
        steps.push(Step { label: "h0 sum/rk", value: h0_f + h0_twist });
        steps.push(Step { label: "chi(F(H))/rk coefficient of xi", value: chi.0 });
        steps.push(Step { label: "chi(F(H))/rk coefficient of mu", value: chi.1 });
        steps.push(Step { label: "chi(F(H))/rk constant", value: chi.2 });
        steps.push(Step { label: "chi(F(H))/rk", value: c.tensor_oh(1).chi_quintic_surface()? / c.rank() });
        steps.push(Step { label: "bound at mu", value: conclusion.at(m) });
        steps.push(Step { label: "h(15/13)", value: h0_twist_weak });
        steps.push(Step { label: "intercept using h(15/13)", value: weak.intercept });
        Ok(finish(input, CaseTag::SurfaceSmallSlope, reduced, (m, x), steps, checks, conclusion))
    }
}

/// Replays the threefold argument at `(μ, ξ)` with `|μ| ∈ [5/13, 8/13]` and
/// `ξ ≥ f(|μ|)` for the threefold profile. Negative slopes are dualised first.
///
/// The restriction to a quintic surface in `|H|` has HN slopes strictly
/// inside the window of the surface profile's middle piece, which then gives
/// the conclusion.
pub fn certify_threefold(mu: Rational, xi: Rational) -> Result<Certificate> {
    let input = ReducedCharacter::from_slope_point(3, QUINTIC_DEGREE, mu, xi)?;
    let (m, reduced) = if mu.is_negative() { (-mu, Some((-mu, xi))) } else { (mu, None) };
    let (lo, hi) = (q(5, 13), q(8, 13));
    if m < lo || m > hi {
        return Err(Error::HypothesisRange(mu));
    }
    let bound = threefold_bound().eval(m)?;
    if xi < bound {
        return Err(Error::BelowProfile { xi, bound });
    }
    let c = ReducedCharacter::from_slope_point(3, QUINTIC_DEGREE, m, xi)?;
    let nz = nu_zero_formulas(&c)?;
    let half = Rational::HALF;
    let e1 = half + nz.nu_f;
    let e2 = half + nz.nu_f_twist_shift;
    let interval = restriction_interval(&c, 1)?;
    if interval.lower != e1.min(e2) || interval.upper != e1.max(e2) {
        return Err(Error::CrossCheck("restriction interval endpoints"));
    }
    let surface = restricted_character(&c, 1)?;
    if surface.mu() != Slope::Finite(m) || surface.xi()? != xi {
        return Err(Error::CrossCheck("restriction preserves mu and xi"));
    }
    let profile = surface_bound();
    let middle = *profile
        .linear()
        .expect("linear")
        .piece_at(half)
        .ok_or(Error::CrossCheck("surface profile is defined at 1/2"))?;
    let (w_lo, w_hi) = match (middle.lo.finite(), middle.hi.finite()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::CrossCheck("middle piece is bounded")),
    };
    let steps = alloc::vec![
        Step { label: "mu", value: m },
        Step { label: "xi", value: xi },
        Step { label: "nu(F)", value: nz.nu_f },
        Step { label: "nu(F(-H)[1])", value: nz.nu_f_twist_shift },
        Step { label: "mu-(F|S) bound", value: e1 },
        Step { label: "mu+(F|S) bound", value: e2 },
        Step { label: "interval lower", value: interval.lower },
        Step { label: "interval upper", value: interval.upper },
        Step { label: "window lower", value: w_lo },
        Step { label: "window upper", value: w_hi },
        Step { label: "mu(F|S)", value: m },
        Step { label: "xi(F|S)", value: xi },
        Step { label: "bound at mu", value: middle.value_at(m) },
    ];
    let checks = alloc::vec![
        SlopeCheck::new("mu-(F|S)", e1, Side::Lower, w_lo, true),
        SlopeCheck::new("mu+(F|S)", e2, Side::Upper, w_hi, true),
        SlopeCheck::new("nu(F) <= nu(F(-H)[1])", nz.nu_f - nz.nu_f_twist_shift, Side::Upper, Rational::ZERO, false),
    ];
    let conclusion = Conclusion { slope: middle.slope, intercept: middle.intercept };
    Ok(finish(input, CaseTag::ThreefoldMiddle, reduced, (m, xi), steps, checks, conclusion))
}
