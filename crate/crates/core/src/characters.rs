//! Reduced Chern characters `(Hⁿch₀, Hⁿ⁻¹ch₁, Hⁿ⁻²ch₂)` and their arithmetic.
//!
//! Every entry is already contracted against powers of the hyperplane class,
//! so twisting by `βH`, dualising and tensoring with `O(kH)` act linearly on
//! the three coordinates. `ch₃` is not modelled.
//!
//! The discriminant is `c1² − 2·c0·c2` in these coordinates. Only its sign and
//! the ordering of values are ever compared, and both are unaffected by a
//! fixed positive rescaling.
//!
//! Dual and shift use the standard conventions `(c0, −c1, c2)` and
//! `(−c0, −c1, −c2)`.

use crate::error::{Error, Result};
use crate::rational::{Rational, Slope};

/// `Hⁿ = 5` on both the quintic surface and the quintic threefold.
pub const QUINTIC_DEGREE: Rational = Rational::integer(5);

/// A point `(μ_H, ξ_H)` of the slope plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SlopePoint {
    pub mu: Rational,
    pub xi: Rational,
}

/// `v̄_H(E)` together with the ambient dimension and `Hⁿ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedCharacter {
    dim: u8,
    degree: Rational,
    c0: Rational,
    c1: Rational,
    c2: Rational,
}

impl ReducedCharacter {
    pub fn new(
        dim: u8,
        degree: Rational,
        c0: Rational,
        c1: Rational,
        c2: Rational,
    ) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidDimension(dim));
        }
        if !degree.is_positive() {
            return Err(Error::InvalidDegree(degree));
        }
        Ok(ReducedCharacter { dim, degree, c0, c1, c2 })
    }

    pub fn quintic_surface(c0: Rational, c1: Rational, c2: Rational) -> Self {
        ReducedCharacter { dim: 2, degree: QUINTIC_DEGREE, c0, c1, c2 }
    }

    pub fn quintic_threefold(c0: Rational, c1: Rational, c2: Rational) -> Self {
        ReducedCharacter { dim: 3, degree: QUINTIC_DEGREE, c0, c1, c2 }
    }

    /// Builds the character of a class with `rk = rank`, `ch₁ = a·H` and
    /// `ch₂ = b·H²`, so that `c0 = Hⁿ·rank`, `c1 = Hⁿ·a`, `c2 = Hⁿ·b`.
    pub fn from_hyperplane_multiples(
        dim: u8,
        degree: Rational,
        rank: Rational,
        a: Rational,
        b: Rational,
    ) -> Result<Self> {
        ReducedCharacter::new(dim, degree, degree * rank, degree * a, degree * b)
    }

    /// Same ambient variety, new entries.
    pub fn with_entries(&self, c0: Rational, c1: Rational, c2: Rational) -> Self {
        ReducedCharacter { c0, c1, c2, ..*self }
    }

    /// The rank-one normalised character with slope point `(mu, xi)`:
    /// entries `(Hⁿ, Hⁿ·mu, Hⁿ·xi)`.
    pub fn from_slope_point(dim: u8, degree: Rational, mu: Rational, xi: Rational) -> Result<Self> {
        ReducedCharacter::new(dim, degree, degree, degree * mu, degree * xi)
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn degree(&self) -> Rational {
        self.degree
    }

    pub fn c0(&self) -> Rational {
        self.c0
    }

    pub fn c1(&self) -> Rational {
        self.c1
    }

    pub fn c2(&self) -> Rational {
        self.c2
    }

    /// `ch₀ = c0 / Hⁿ`.
    pub fn rank(&self) -> Rational {
        self.c0 / self.degree
    }

    pub fn same_ambient(&self, other: &ReducedCharacter) -> bool {
        self.dim == other.dim && self.degree == other.degree
    }

    pub fn scaled(&self, k: Rational) -> Self {
        self.with_entries(k * self.c0, k * self.c1, k * self.c2)
    }

    pub fn sum(&self, other: &ReducedCharacter) -> Result<Self> {
        if !self.same_ambient(other) {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.with_entries(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2))
    }

    pub fn difference(&self, other: &ReducedCharacter) -> Result<Self> {
        self.sum(&other.shift())
    }

    /// `μ_H = c1/c0`, or `+∞` for rank-zero characters.
    pub fn mu(&self) -> Slope {
        Slope::ratio(self.c1, self.c0)
    }

    /// `ξ_H = c2/c0`.
    pub fn xi(&self) -> Result<Rational> {
        self.c2.checked_div(self.c0).ok_or(Error::RankZero)
    }

    pub fn slope_point(&self) -> Result<SlopePoint> {
        let mu = self.mu().finite().ok_or(Error::RankZero)?;
        Ok(SlopePoint { mu, xi: self.xi()? })
    }

    /// Twisted character `v̄^{βH}`.
    pub fn twist(&self, beta: Rational) -> Self {
        self.with_entries(
            self.c0,
            self.c1 - beta * self.c0,
            self.c2 - beta * self.c1 + Rational::HALF * beta.square() * self.c0,
        )
    }

    pub fn dual(&self) -> Self {
        self.with_entries(self.c0, -self.c1, self.c2)
    }

    /// `E ⊗ O(kH)`, which is the twist by `β = −k`.
    pub fn tensor_oh(&self, k: i64) -> Self {
        self.twist(Rational::from(-k))
    }

    /// Homological shift `E[1]`.
    pub fn shift(&self) -> Self {
        self.with_entries(-self.c0, -self.c1, -self.c2)
    }

    pub fn discriminant(&self) -> Rational {
        self.c1.square() - Rational::from(2) * self.c0 * self.c2
    }

    /// Two characters have proportional `v̄` vectors.
    pub fn is_proportional(&self, other: &ReducedCharacter) -> bool {
        (self.c0 * other.c1 - self.c1 * other.c0).is_zero()
            && (self.c0 * other.c2 - self.c2 * other.c0).is_zero()
            && (self.c1 * other.c2 - self.c2 * other.c1).is_zero()
    }

    /// Euler characteristic on a smooth quintic surface,
    /// `χ = ch₂ − ½H·ch₁ + H²ch₀ = c2 − c1/2 + c0`.
    pub fn chi_quintic_surface(&self) -> Result<Rational> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: self.dim });
        }
        if self.degree != QUINTIC_DEGREE {
            return Err(Error::NotQuintic);
        }
        Ok(self.c2 - Rational::HALF * self.c1 + self.c0)
    }
}

impl core::fmt::Display for ReducedCharacter {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({}, {}, {})", self.c0, self.c1, self.c2)
    }
}
