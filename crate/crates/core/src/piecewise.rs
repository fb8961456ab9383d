//! Exact piecewise-linear functions on the rational line.
//!
//! Pieces are closed-or-open intervals that tile the domain. At a shared
//! endpoint exactly one piece owns the value, which is how jump points are
//! represented (a filled dot belongs to the owning piece, an open circle to
//! the other one).

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// An interval endpoint, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Endpoint {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Endpoint {
    pub fn finite(self) -> Option<Rational> {
        match self {
            Endpoint::Finite(x) => Some(x),
            _ => None,
        }
    }

    fn lt(self, other: Endpoint) -> bool {
        match (self, other) {
            (Endpoint::NegInf, Endpoint::NegInf) | (Endpoint::PosInf, Endpoint::PosInf) => false,
            (Endpoint::NegInf, _) | (_, Endpoint::PosInf) => true,
            (_, Endpoint::NegInf) | (Endpoint::PosInf, _) => false,
            (Endpoint::Finite(a), Endpoint::Finite(b)) => a < b,
        }
    }
}

impl From<Rational> for Endpoint {
    fn from(x: Rational) -> Self {
        Endpoint::Finite(x)
    }
}

/// `slope·x + intercept` on an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Piece {
    pub lo: Endpoint,
    pub hi: Endpoint,
    pub slope: Rational,
    pub intercept: Rational,
    pub owns_left: bool,
    pub owns_right: bool,
}

impl Piece {
    /// A piece on the closed interval `[lo, hi]`.
    pub fn closed(lo: Rational, hi: Rational, slope: Rational, intercept: Rational) -> Self {
        Piece {
            lo: Endpoint::Finite(lo),
            hi: Endpoint::Finite(hi),
            slope,
            intercept,
            owns_left: true,
            owns_right: true,
        }
    }

    pub fn with_ownership(mut self, owns_left: bool, owns_right: bool) -> Self {
        self.owns_left = owns_left;
        self.owns_right = owns_right;
        self
    }

    pub fn value_at(&self, x: Rational) -> Rational {
        self.slope * x + self.intercept
    }

    /// Whether `x` lies in the interior of the piece.
    pub fn contains_interior(&self, x: Rational) -> bool {
        Endpoint::Finite(x).lt(self.hi) && self.lo.lt(Endpoint::Finite(x))
    }

    /// Whether the piece owns the value at `x`.
    pub fn owns(&self, x: Rational) -> bool {
        self.contains_interior(x)
            || (self.owns_left && self.lo == Endpoint::Finite(x))
            || (self.owns_right && self.hi == Endpoint::Finite(x))
    }

    /// Closed-hull membership `lo ≤ x ≤ hi`.
    pub fn spans(&self, x: Rational) -> bool {
        self.contains_interior(x) || self.lo == Endpoint::Finite(x) || self.hi == Endpoint::Finite(x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiecewiseLinearFn {
    pieces: Vec<Piece>,
}

impl PiecewiseLinearFn {
    /// Validates that the pieces are non-degenerate, ordered, contiguous, and
    /// that every shared endpoint has exactly one owner.
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidPieces("no pieces"));
        }
        for p in &pieces {
            if !p.lo.lt(p.hi) {
                return Err(Error::InvalidPieces("piece with empty interior"));
            }
            if (p.owns_left && p.lo.finite().is_none()) || (p.owns_right && p.hi.finite().is_none()) {
                return Err(Error::InvalidPieces("infinite endpoint cannot be owned"));
            }
        }
        for w in pieces.windows(2) {
            if w[0].hi != w[1].lo || w[0].hi.finite().is_none() {
                return Err(Error::InvalidPieces("pieces are not contiguous"));
            }
            if w[0].owns_right == w[1].owns_left {
                return Err(Error::InvalidPieces("shared endpoint needs exactly one owner"));
            }
        }
        Ok(PiecewiseLinearFn { pieces })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn domain_start(&self) -> Endpoint {
        self.pieces[0].lo
    }

    pub fn domain_end(&self) -> Endpoint {
        self.pieces[self.pieces.len() - 1].hi
    }

    /// The piece owning `x`, if any.
    pub fn piece_at(&self, x: Rational) -> Option<&Piece> {
        self.pieces.iter().find(|p| p.owns(x))
    }

    pub fn eval(&self, x: Rational) -> Option<Rational> {
        self.piece_at(x).map(|p| p.value_at(x))
    }

    /// `lim_{t→x⁻} f(t)`, when `f` is defined just left of `x`.
    pub fn left_limit(&self, x: Rational) -> Option<Rational> {
        self.pieces
            .iter()
            .find(|p| p.contains_interior(x) || p.hi == Endpoint::Finite(x))
            .map(|p| p.value_at(x))
    }

    /// `lim_{t→x⁺} f(t)`, when `f` is defined just right of `x`.
    pub fn right_limit(&self, x: Rational) -> Option<Rational> {
        self.pieces
            .iter()
            .find(|p| p.contains_interior(x) || p.lo == Endpoint::Finite(x))
            .map(|p| p.value_at(x))
    }

    /// Interior breakpoints, in increasing order.
    pub fn breakpoints(&self) -> Vec<Rational> {
        self.pieces.windows(2).filter_map(|w| w[0].hi.finite()).collect()
    }

    /// Finite domain endpoints together with the interior breakpoints.
    pub fn knots(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        if let Some(x) = self.domain_start().finite() {
            out.push(x);
        }
        out.extend(self.breakpoints());
        if let Some(x) = self.domain_end().finite() {
            out.push(x);
        }
        out
    }

    /// Every value `f` takes or approaches at `x`: the owned value and both
    /// one-sided limits, deduplicated.
    pub fn values_near(&self, x: Rational) -> Vec<Rational> {
        let mut vals = Vec::with_capacity(3);
        for v in [self.left_limit(x), self.eval(x), self.right_limit(x)].into_iter().flatten() {
            if !vals.contains(&v) {
                vals.push(v);
            }
        }
        vals
    }

    /// `x` lies in the closure of the domain.
    pub fn spans(&self, x: Rational) -> bool {
        self.pieces.iter().any(|p| p.spans(x))
    }

    /// Same pieces with adjacent collinear pieces merged where the joint
    /// point is continuous.
    pub fn simplified(&self) -> Self {
        let mut out: Vec<Piece> = Vec::with_capacity(self.pieces.len());
        for p in &self.pieces {
            if let Some(last) = out.last_mut() {
                if last.slope == p.slope && last.intercept == p.intercept {
                    last.hi = p.hi;
                    last.owns_right = p.owns_right;
                    continue;
                }
            }
            out.push(*p);
        }
        PiecewiseLinearFn { pieces: out }
    }
}
