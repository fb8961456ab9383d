//! Clifford-type `h⁰` bounds for bundles on a smooth plane quintic curve.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::piecewise::{Endpoint, Piece, PiecewiseLinearFn};
use crate::rational::{q, Rational};

/// The per-rank bound `h(x)` on `h⁰(E)/rk(E)` for a semistable bundle of
/// slope `x` on a plane quintic.
///
/// Jumps at 0 (value 1 owned by the right) and at 2 (value 6 owned by the
/// left, limit 5 from the right).
pub fn h_quintic() -> PiecewiseLinearFn {
    let z = Rational::ZERO;
    PiecewiseLinearFn::new(vec![
        Piece {
            lo: Endpoint::NegInf,
            hi: Endpoint::Finite(z),
            slope: z,
            intercept: z,
            owns_left: false,
            owns_right: false,
        },
        Piece::closed(z, q(6, 7), q(3, 2), Rational::ONE),
        Piece::closed(q(6, 7), Rational::ONE, q(5, 1), q(-2, 1)).with_ownership(false, false),
        Piece::closed(Rational::ONE, q(8, 7), z, q(3, 1)),
        Piece::closed(q(8, 7), q(2, 1), q(7, 2), q(-1, 1)).with_ownership(false, true),
        Piece {
            lo: Endpoint::Finite(q(2, 1)),
            hi: Endpoint::PosInf,
            slope: q(5, 1),
            intercept: q(-5, 1),
            owns_left: false,
            owns_right: false,
        },
    ])
    .expect("h is well formed")
}

/// `h(μ)`: bound on `h⁰(E)/rk(E)` for a semistable `E` of slope `μ`.
/// Equality holds for `μ > 2`; elsewhere it is only an upper bound.
pub fn h0_bound_semistable(mu: Rational) -> Rational {
    h_quintic().eval(mu).expect("h is defined everywhere")
}

fn cross(o: (Rational, Rational), a: (Rational, Rational), b: (Rational, Rational)) -> Rational {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Candidate hull vertices of `f` on `[a, b]`: every knot in range with the
/// largest value `f` takes or approaches there.
fn roof_vertices(f: &PiecewiseLinearFn, a: Rational, b: Rational) -> Vec<(Rational, Rational)> {
    let mut xs = vec![a];
    xs.extend(f.breakpoints().into_iter().filter(|&x| a < x && x < b));
    xs.push(b);
    xs.into_iter()
        .filter_map(|x| {
            let vals = if x == a {
                [f.eval(x), f.right_limit(x), None]
            } else if x == b {
                [f.eval(x), f.left_limit(x), None]
            } else {
                [f.eval(x), f.left_limit(x), f.right_limit(x)]
            };
            vals.into_iter().flatten().max().map(|y| (x, y))
        })
        .collect()
}

/// The least concave majorant of `f` on `[a, b]`, i.e. the upper hull of the
/// closure of the graph. Jump points contribute their larger value.
pub fn concave_roof(f: &PiecewiseLinearFn, a: Rational, b: Rational) -> Result<PiecewiseLinearFn> {
    if a >= b {
        return Err(Error::DegenerateInterval { a, b });
    }
    for x in [a, b] {
        if !f.spans(x) {
            return Err(Error::OutsideDomain(x));
        }
    }
    let pts = roof_vertices(f, a, b);
    let mut hull: Vec<(Rational, Rational)> = Vec::with_capacity(pts.len());
    for p in pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) >= Rational::ZERO {
            hull.pop();
        }
        hull.push(p);
    }
    let pieces = hull
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let slope = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
            let intercept = w[0].1 - slope * w[0].0;
            Piece::closed(w[0].0, w[1].0, slope, intercept).with_ownership(i == 0, true)
        })
        .collect();
    PiecewiseLinearFn::new(pieces)
}

/// Extreme Harder–Narasimhan slopes of a bundle together with its slope.
/// `mu_minus` may be `−∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlopeRangeData {
    pub mu_minus: Endpoint,
    pub mu_plus: Rational,
    pub mu: Rational,
}

impl SlopeRangeData {
    pub fn new(mu_minus: Endpoint, mu_plus: Rational, mu: Rational) -> Result<Self> {
        let r = SlopeRangeData { mu_minus, mu_plus, mu };
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<()> {
        if self.mu > self.mu_plus {
            return Err(Error::InvalidRange("mu exceeds mu_plus"));
        }
        match self.mu_minus {
            Endpoint::PosInf => Err(Error::InvalidRange("mu_minus cannot be +inf")),
            Endpoint::Finite(lo) if lo > self.mu => Err(Error::InvalidRange("mu_minus exceeds mu")),
            _ => Ok(()),
        }
    }
}

/// Bound on `h⁰(E)/rk(E)` from the HN slope range: the concave roof of `h`
/// over `[μ⁻, μ⁺]` evaluated at `μ`. For `μ⁻ = −∞` and `μ⁺ ≤ 2` the roof is
/// the constant `h(μ⁺)` since `h` is nondecreasing there.
pub fn h0_bound_hn(range: SlopeRangeData) -> Result<Rational> {
    range.validate()?;
    let h = h_quintic();
    match range.mu_minus {
        Endpoint::NegInf => {
            if range.mu_plus > q(2, 1) {
                return Err(Error::InvalidRange("unbounded range needs mu_plus <= 2"));
            }
            Ok(h0_bound_semistable(range.mu_plus))
        }
        Endpoint::Finite(lo) if lo == range.mu_plus => Ok(h0_bound_semistable(lo)),
        Endpoint::Finite(lo) => concave_roof(&h, lo, range.mu_plus)?
            .eval(range.mu)
            .ok_or(Error::OutsideDomain(range.mu)),
        Endpoint::PosInf => Err(Error::InvalidRange("mu_minus cannot be +inf")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_in(lo: Rational, hi: Rational) -> impl Strategy<Value = Rational> {
        (0i128..=720).prop_map(move |k| lo + (hi - lo) * q(k, 720))
    }

    #[test]
    fn h_golden_values() {
        let h = h_quintic();
        assert_eq!(h.eval(q(8, 7)), Some(q(3, 1)));
        assert_eq!(h.eval(q(2, 1)), Some(q(6, 1)));
        assert_eq!(h.right_limit(q(2, 1)), Some(q(5, 1)));
        assert_eq!(h.eval(q(-1, 1)), Some(Rational::ZERO));
        assert_eq!(h.eval(Rational::ZERO), Some(Rational::ONE));
        assert_eq!(h0_bound_semistable(Rational::ONE), q(3, 1));
        assert_eq!(h0_bound_semistable(q(6, 7)), q(16, 7));
        assert_eq!(h0_bound_semistable(q(3, 1)), q(10, 1));
    }

    #[test]
    fn h_is_continuous_except_at_zero_and_two() {
        let h = h_quintic();
        for x in h.breakpoints() {
            let jumps = h.left_limit(x) != h.right_limit(x);
            assert_eq!(jumps, x == Rational::ZERO || x == q(2, 1), "at {}", x);
        }
    }

    #[test]
    fn h_nondecreasing_up_to_two() {
        let h = h_quintic();
        for p in h.pieces() {
            assert!(p.slope >= Rational::ZERO);
        }
        for x in h.breakpoints() {
            assert!(h.left_limit(x) <= h.eval(x));
            if x < q(2, 1) {
                assert!(h.eval(x) <= h.right_limit(x));
            }
        }
    }

    #[test]
    fn roof_on_first_window_is_single_piece() {
        let roof = concave_roof(&h_quintic(), Rational::ZERO, q(6, 7)).unwrap();
        assert_eq!(roof.pieces(), &[Piece::closed(Rational::ZERO, q(6, 7), q(3, 2), Rational::ONE)]);
    }

    #[test]
    fn roof_of_affine_piece_is_itself() {
        let h = h_quintic();
        let roof = concave_roof(&h, q(1, 1), q(8, 7)).unwrap();
        assert_eq!(roof.pieces(), &[Piece::closed(q(1, 1), q(8, 7), Rational::ZERO, q(3, 1))]);
        let roof = concave_roof(&h, q(1, 7), q(3, 7)).unwrap();
        assert_eq!(roof.pieces(), &[Piece::closed(q(1, 7), q(3, 7), q(3, 2), Rational::ONE)]);
    }

    // Brute force: the roof at x is the max over all pairs of vertices
    // (u, v) with u ≤ x ≤ v of the chord value at x.
    fn brute_roof(vertices: &[(Rational, Rational)], x: Rational) -> Rational {
        let mut best = None;
        for &(u, fu) in vertices {
            for &(v, fv) in vertices {
                if u <= x && x <= v {
                    let val = if u == v { fu } else { fu + (fv - fu) * (x - u) / (v - u) };
                    best = Some(best.map_or(val, |b: Rational| b.max(val)));
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn roof_on_zero_two_matches_vertex_oracle() {
        let verts = [
            (Rational::ZERO, Rational::ONE),
            (q(6, 7), q(16, 7)),
            (Rational::ONE, q(3, 1)),
            (q(8, 7), q(3, 1)),
            (q(2, 1), q(6, 1)),
        ];
        let roof = concave_roof(&h_quintic(), Rational::ZERO, q(2, 1)).unwrap();
        assert_eq!(roof.pieces(), &[Piece::closed(Rational::ZERO, q(2, 1), q(5, 2), Rational::ONE)]);
        for k in 0..=28 {
            let x = q(k, 14);
            assert_eq!(roof.eval(x).unwrap(), brute_roof(&verts, x));
        }
    }

    #[test]
    fn roof_rejects_bad_intervals() {
        let h = h_quintic();
        assert!(matches!(concave_roof(&h, q(1, 1), q(1, 1)), Err(Error::DegenerateInterval { .. })));
        assert!(matches!(concave_roof(&h, q(1, 1), q(0, 1)), Err(Error::DegenerateInterval { .. })));
        let f = PiecewiseLinearFn::new(vec![Piece::closed(Rational::ZERO, Rational::ONE, Rational::ONE, Rational::ZERO)])
            .unwrap();
        assert!(matches!(concave_roof(&f, Rational::ZERO, q(2, 1)), Err(Error::OutsideDomain(_))));
    }

    #[test]
    fn hn_bound_examples() {
        let b = |lo, hi, mu| h0_bound_hn(SlopeRangeData::new(lo, hi, mu).unwrap()).unwrap();
        assert_eq!(b(Endpoint::Finite(Rational::ZERO), q(6, 7), q(1, 2)), q(7, 4));
        assert_eq!(b(Endpoint::NegInf, Rational::ONE, q(-3, 1)), q(3, 1));
        assert_eq!(b(Endpoint::NegInf, Rational::ONE, Rational::ONE), q(3, 1));
        assert_eq!(b(Endpoint::NegInf, q(2, 13), q(1, 13)), q(16, 13));
        for mu_plus in [q(2, 13), Rational::ONE, q(8, 7), q(2, 1)] {
            assert_eq!(b(Endpoint::NegInf, mu_plus, mu_plus), h0_bound_semistable(mu_plus));
        }
        assert!(SlopeRangeData::new(Endpoint::Finite(Rational::ONE), Rational::ZERO, Rational::ZERO).is_err());
        let r = SlopeRangeData { mu_minus: Endpoint::NegInf, mu_plus: q(3, 1), mu: Rational::ZERO };
        assert!(h0_bound_hn(r).is_err());
    }

    proptest! {
        #[test]
        fn roof_majorizes_and_touches(a in arb_in(q(-1, 2), q(5, 2)), len in arb_in(q(1, 100), q(2, 1))) {
            let h = h_quintic();
            let b = a + len;
            let roof = concave_roof(&h, a, b).unwrap();
            let mut xs = vec![a, b];
            xs.extend(h.breakpoints().into_iter().filter(|&x| a < x && x < b));
            xs.extend(roof.breakpoints());
            let n = xs.len();
            for i in 0..n {
                for j in 0..n {
                    xs.push(xs[i].midpoint(xs[j]));
                }
            }
            for &x in &xs {
                let r = roof.eval(x).unwrap();
                for v in h.values_near(x) {
                    if (x > a || Some(v) != h.left_limit(x) || h.eval(x) == Some(v))
                        && (x < b || Some(v) != h.right_limit(x) || h.eval(x) == Some(v))
                    {
                        prop_assert!(r >= v);
                    }
                }
            }
            for x in roof.knots() {
                let r = roof.eval(x).unwrap();
                prop_assert!(roof_vertices(&h, a, b).contains(&(x, r)));
            }
        }

        #[test]
        fn roof_satisfies_jensen(
            xs in proptest::collection::vec(arb_in(Rational::ZERO, q(2, 1)), 1..=4),
            ws in proptest::collection::vec(1i128..=50, 4),
        ) {
            let h = h_quintic();
            let roof = concave_roof(&h, Rational::ZERO, q(2, 1)).unwrap();
            let total: i128 = ws[..xs.len()].iter().sum();
            let mut mean = Rational::ZERO;
            let mut avg_roof = Rational::ZERO;
            let mut avg_h = Rational::ZERO;
            for (x, &w) in xs.iter().zip(&ws) {
                let w = q(w, total);
                mean += w * *x;
                avg_roof += w * roof.eval(*x).unwrap();
                avg_h += w * h.eval(*x).unwrap();
            }
            prop_assert!(avg_h <= avg_roof);
            prop_assert!(avg_roof <= roof.eval(mean).unwrap());
        }

        #[test]
        fn degenerate_hn_range_is_semistable_bound(mu in arb_in(Rational::ZERO, q(2, 1))) {
            let r = SlopeRangeData::new(Endpoint::Finite(mu), mu, mu).unwrap();
            prop_assert_eq!(h0_bound_hn(r).unwrap(), h0_bound_semistable(mu));
        }
    }
}
