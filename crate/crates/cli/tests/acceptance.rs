//! Acceptance suite. Each criterion runs under its time limit and prints one
//! `PASS`/`FAIL` line; the process exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use quintic_bg::bounds::{
    dominated_by_parabola, star_shaped, surface_bound, threefold_bound, toda_check, toda_delta_threshold,
    toda_xi_threshold, BoundProfile, check_character,
};
use quintic_bg::certify::{certify_surface, restriction_interval, CaseTag};
use quintic_bg::clifford::{concave_roof, h0_bound_hn, h_quintic, SlopeRangeData};
use quintic_bg::piecewise::{Endpoint, Piece, PiecewiseLinearFn};
use quintic_bg::tilt_walls::{
    enumerate_destabilizers, nu, numerical_wall, DestabilizerOptions, TiltPoint, Wall, WallLocus,
};
use quintic_bg::{q, Rational, ReducedCharacter, Slope};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn surface(c0: i128, c1: i128, c2: Rational) -> ReducedCharacter {
    ReducedCharacter::quintic_surface(q(c0, 1), q(c1, 1), c2)
}

fn threefold(c0: i128, c1: i128, c2: Rational) -> ReducedCharacter {
    ReducedCharacter::quintic_threefold(q(c0, 1), q(c1, 1), c2)
}

fn linear(p: &BoundProfile) -> &PiecewiseLinearFn {
    p.linear().expect("piecewise-linear profile")
}

fn golden_values() -> Outcome {
    let (s, t) = (surface_bound(), threefold_bound());
    let cases = [
        (&t, q(1, 2), q(-1, 20)),
        (&t, Rational::ONE, q(1, 2)),
        (&s, q(7, 46), q(-5, 92)),
        (&s, q(1, 2), q(-1, 20)),
        (&s, q(39, 46), q(27, 92)),
    ];
    for (p, x, want) in cases {
        let got = p.eval(x).map_err(|e| e.to_string())?;
        ensure!(got == want, "{}({x}) = {got}, want {want}", p.kind.name());
    }
    Ok(format!("{} values exact", cases.len()))
}

fn breakpoint_continuity() -> Outcome {
    let mut counts = Vec::new();
    for p in [surface_bound(), threefold_bound()] {
        let f = linear(&p);
        let bps = f.breakpoints();
        for &x in &bps {
            let (l, r) = (f.left_limit(x), f.right_limit(x));
            ensure!(l.is_some() && l == r && f.eval(x) == l, "{} jumps at {x}: {l:?} vs {r:?}", p.kind.name());
        }
        counts.push(format!("{} {}", p.kind.name(), bps.len()));
    }
    Ok(format!("interior breakpoints checked: {}", counts.join(", ")))
}

fn parabola_domination() -> Outcome {
    for p in [surface_bound(), threefold_bound()] {
        ensure!(dominated_by_parabola(&p), "{} rises above x^2/2", p.kind.name());
        // Independent sign analysis: x²/2 − (sx + t) has discriminant s² + 2t;
        // if it is positive both roots must avoid the piece's closure.
        for piece in linear(&p).pieces() {
            let (lo, hi) = (piece.lo.finite().unwrap(), piece.hi.finite().unwrap());
            let disc = piece.slope.square() + q(2, 1) * piece.intercept;
            if !disc.is_positive() {
                continue;
            }
            // Roots s ± √disc; the piece avoids (root⁻, root⁺) iff it lies on
            // one side. Compare squares to stay rational.
            let left_of = hi <= piece.slope && (piece.slope - hi).square() >= disc;
            let right_of = lo >= piece.slope && (lo - piece.slope).square() >= disc;
            ensure!(left_of || right_of, "{} piece on [{lo}, {hi}] crosses x^2/2", p.kind.name());
        }
    }
    Ok("all pieces below x^2/2".into())
}

fn roof_reproduces_affine_bound() -> Outcome {
    let h = h_quintic();
    let roof = concave_roof(&h, Rational::ZERO, q(6, 7)).map_err(|e| e.to_string())?;
    let want = PiecewiseLinearFn::new(vec![Piece::closed(Rational::ZERO, q(6, 7), q(3, 2), Rational::ONE)]).unwrap();
    ensure!(roof == want, "roof on [0, 6/7] is {roof:?}");
    for cap in [q(2, 13), Rational::ONE, q(8, 7), q(2, 1)] {
        for mu in [cap, cap - q(1, 3), q(-5, 1)] {
            let got = h0_bound_hn(SlopeRangeData::new(Endpoint::NegInf, cap, mu).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            ensure!(Some(got) == h.eval(cap), "unbounded range capped at {cap}, mu {mu}: {got}");
        }
    }
    Ok("single piece 1 + 3x/2; constant h(mu+) for 4 caps".into())
}

fn roof_oracle() -> Outcome {
    let h = h_quintic();
    let roof = concave_roof(&h, Rational::ZERO, q(2, 1)).map_err(|e| e.to_string())?;
    let mut rng = StdRng::seed_from_u64(0xacce);
    for trial in 0..1000 {
        let n = rng.gen_range(1..=6);
        let weights: Vec<Rational> = (0..n).map(|_| q(rng.gen_range(1..=20), 1)).collect();
        let total: Rational = weights.iter().fold(Rational::ZERO, |a, &w| a + w);
        let xs: Vec<Rational> = (0..n).map(|_| q(rng.gen_range(0..=168), 84)).collect();
        let (mut lhs, mut mid, mut mean) = (Rational::ZERO, Rational::ZERO, Rational::ZERO);
        for (&w, &x) in weights.iter().zip(&xs) {
            let w = w / total;
            lhs += w * h.eval(x).unwrap();
            mid += w * roof.eval(x).unwrap();
            mean += w * x;
        }
        let rhs = roof.eval(mean).unwrap();
        ensure!(lhs <= mid && mid <= rhs, "trial {trial}: {lhs} <= {mid} <= {rhs} fails for {xs:?}");
    }
    Ok("1000 partitions".into())
}

fn star_shapedness() -> Outcome {
    let s = surface_bound();
    for d in [Rational::ZERO, Rational::ONE] {
        ensure!(star_shaped(&s, d).map_err(|e| e.to_string())?, "surface profile not star-shaped at {d}");
    }
    let spike = BoundProfile::custom(
        PiecewiseLinearFn::new(vec![
            Piece::closed(Rational::ZERO, q(1, 2), Rational::ONE, Rational::ZERO),
            Piece::closed(q(1, 2), Rational::ONE, -Rational::ONE, Rational::ONE).with_ownership(false, true),
        ])
        .unwrap(),
    );
    ensure!(!star_shaped(&spike, Rational::ZERO).map_err(|e| e.to_string())?, "spike reported star-shaped");
    Ok("surface at 0 and 1 true, spike false".into())
}

fn toda_implication() -> Outcome {
    let t = threefold_bound();
    let (mut checked, mut extremal) = (0, None);
    for r in (2..=20).step_by(2) {
        let c0 = 5 * r;
        let c1 = -5 * r / 2;
        for j in -(40 * c0)..=(4 * c0) {
            let c = threefold(c0, c1, q(j, 2));
            if !check_character(&c, &t).map_err(|e| e.to_string())?.satisfies {
                continue;
            }
            let rep = toda_check(&c).map_err(|e| e.to_string())?;
            ensure!(rep.passes_delta && rep.passes_xi, "{c}: {rep:?}");
            if c.xi().unwrap() == q(-1, 20) {
                extremal = Some(rep);
            }
            checked += 1;
        }
    }
    let rep = extremal.ok_or("no character on the boundary xi = -1/20")?;
    ensure!(rep.lhs_delta == q(7, 4) && rep.lhs_delta > toda_delta_threshold(), "extremal lhs_delta {}", rep.lhs_delta);
    ensure!(rep.lhs_xi == q(-1, 20) && rep.lhs_xi < toda_xi_threshold(), "extremal lhs_xi {}", rep.lhs_xi);
    Ok(format!("{checked} characters; extremal 7/4 and -1/20"))
}

fn restriction_window() -> Outcome {
    let iv = restriction_interval(&threefold(10, 5, q(-1, 2)), 1).map_err(|e| e.to_string())?;
    ensure!((iv.lower, iv.upper) == (q(2, 5), q(3, 5)), "interval [{}, {}]", iv.lower, iv.upper);
    ensure!(q(7, 20) <= iv.lower && iv.upper <= q(13, 20), "not inside [7/20, 13/20]");
    Ok("[2/5, 3/5]".into())
}

fn certificate_fixed_points() -> Outcome {
    let eps = q(1, 1_000_000);
    let half = Rational::HALF;
    for mu in [q(7, 46), q(1, 4), q(1, 2)] {
        let xi = surface_bound().eval(mu).unwrap() + eps;
        let cert = certify_surface(mu, xi).map_err(|e| e.to_string())?;
        ensure!(cert.case_tag == CaseTag::SurfaceMain, "mu {mu}: case {:?}", cert.case_tag);
        ensure!(cert.contradicts_assumption, "mu {mu}: no contradiction");
        ensure!(cert.conclusion.slope == half && cert.conclusion.intercept == q(-3, 10), "mu {mu}: {:?}", cert.conclusion);
        // Rank-one character (5, 5μ, 5ξ): ν at the origin is c2/c1.
        let nu_f = xi / mu;
        let nu_twist_shift = (xi - mu + half) / (mu - Rational::ONE);
        let e1 = half + nu_f;
        let e2 = half + nu_twist_shift;
        let h_aff = |x: Rational| Rational::ONE + q(3, 2) * x;
        let h0_sum = h_aff(mu) + h_aff(Rational::ONE - mu);
        let chi = q(5, 1) * (xi - mu / q(2, 1) + Rational::ONE);
        let expect = [
            ("nu(F)", nu_f),
            ("nu(F(-H)[1])", nu_twist_shift),
            ("nu(F^v[1])", -xi / mu),
            ("nu(F^v(H))", (xi - mu + half) / (Rational::ONE - mu)),
            ("mu+(F|C) bound", e1.max(e2)),
            ("mu-(F|C) bound", e1.min(e2)),
            ("h0(F|C)/rk", h_aff(mu)),
            ("h0 sum/rk", h0_sum),
            ("chi/rk", chi),
            ("bound at mu", mu / q(2, 1) - q(3, 10)),
        ];
        for (label, want) in expect {
            let got = cert.step(label).ok_or_else(|| format!("missing step {label}"))?;
            ensure!(got == want, "mu {mu}, {label}: {got} != {want}");
        }
        ensure!(h0_sum == q(7, 2) && chi > h0_sum, "mu {mu}: chi {chi} vs {h0_sum}");
        ensure!(cert.margin == mu / q(2, 1) - q(3, 10) - xi, "mu {mu}: margin {}", cert.margin);
    }
    Ok("3 points, main case, xi <= mu/2 - 3/10".into())
}

/// Three rational points strictly above the parabola on `wall`.
fn oracle_points(wall: &Wall) -> [TiltPoint; 3] {
    if wall.b().is_zero() {
        let beta = wall.c() / wall.a();
        let base = Rational::HALF * beta.square();
        return [1, 2, 3].map(|k| TiltPoint::new(beta, base + q(k, 1)));
    }
    let center = -wall.a();
    let radicand = wall.a().square() + q(2, 1) * wall.c();
    let mut step = Rational::ONE;
    while step.square() >= radicand {
        step *= Rational::HALF;
    }
    [center - step * Rational::HALF, center, center + step * Rational::HALF]
        .map(|beta| TiltPoint::new(beta, wall.c() - wall.a() * beta))
}

fn brute_force(c: &ReducedCharacter, wall: &Wall, bound_box: i128) -> Vec<ReducedCharacter> {
    let pts = oracle_points(wall);
    let beta = pts[1].beta;
    let twisted = |f: &ReducedCharacter| f.c1() - beta * f.c0();
    let delta_c = c.discriminant();
    let mut out = Vec::new();
    for r in -bound_box..=bound_box {
        for s in -bound_box..=bound_box {
            for j in -(10 * bound_box)..=(10 * bound_box) {
                let f = surface(5 * r, 5 * s, q(j, 2));
                if f.is_proportional(c) || !pts.iter().all(|&p| nu(&f, p) == nu(c, p)) {
                    continue;
                }
                let t = twisted(&f);
                if !(t.is_positive() && t < twisted(c)) {
                    continue;
                }
                let rest = c.difference(&f).unwrap();
                let ok = |d: Rational| !d.is_negative() && d < delta_c;
                if ok(f.discriminant()) && ok(rest.discriminant()) {
                    out.push(f);
                }
            }
        }
    }
    out.sort();
    out
}

fn wall_geometry() -> Outcome {
    let o = surface(5, 0, Rational::ZERO);
    let o_h = surface(5, 5, q(5, 2));
    let WallLocus::Wall(wall) = numerical_wall(&o, &o_h) else {
        return Err("no wall between O and O(H)".into());
    };
    // α = β/2  ⇔  −β/2 + α = 0.
    ensure!((wall.a(), wall.b(), wall.c()) == (q(-1, 2), Rational::ONE, Rational::ZERO), "wall {wall:?}");
    let sp = o_h.slope_point().map_err(|e| e.to_string())?;
    ensure!(wall.contains(TiltPoint::new(sp.mu, sp.xi)), "p(O(H)) = ({}, {}) off the wall", sp.mu, sp.xi);
    ensure!((sp.mu, sp.xi) == (Rational::ONE, q(1, 2)), "p(O(H)) = ({}, {})", sp.mu, sp.xi);
    let pts = wall.sample_points(10);
    ensure!(pts.len() == 10, "{} sample points", pts.len());
    for p in pts {
        ensure!(p.alpha > Rational::HALF * p.beta.square() && wall.contains(p), "bad sample {p:?}");
        let (a, b) = (nu(&o, p), nu(&o_h, p));
        ensure!(a == b && matches!(a, Slope::Finite(_)), "nu differs at {p:?}: {a:?} vs {b:?}");
    }

    // A case with a non-empty answer: slope point (2, 1) lies on the same wall.
    let c = surface(5, 10, q(5, 1));
    let got = enumerate_destabilizers(&c, &wall, &DestabilizerOptions::new(2)).map_err(|e| e.to_string())?.candidates;
    ensure!(!got.is_empty() && got == brute_force(&c, &wall, 2), "line-bundle wall: {got:?}");
    let fixed = got.len();

    let mut rng = StdRng::seed_from_u64(0xa11);
    let (mut cases, mut found) = (0, 0);
    while cases < 5 {
        let c = surface(5 * rng.gen_range(1..=3), 5 * rng.gen_range(-3..=3), q(rng.gen_range(-30..=30), 2));
        let delta = c.discriminant();
        if delta.is_negative() || delta > q(25, 1) {
            continue;
        }
        let d = surface(5 * rng.gen_range(-3..=3), 5 * rng.gen_range(-3..=3), q(rng.gen_range(-30..=30), 2));
        let WallLocus::Wall(w) = numerical_wall(&c, &d) else { continue };
        if w.witness().is_none() {
            continue;
        }
        let bound_box = rng.gen_range(1..=3);
        let got = enumerate_destabilizers(&c, &w, &DestabilizerOptions::new(bound_box as u32))
            .map_err(|e| e.to_string())?
            .candidates;
        let want = brute_force(&c, &w, bound_box);
        ensure!(got == want, "c = {c}, wall {w:?}: {} vs oracle {}", got.len(), want.len());
        found += got.len();
        cases += 1;
    }
    Ok(format!("alpha = beta/2, 10 samples, 5 random characters ({found} destabilizers), fixed case {fixed}"))
}

fn chi_golden() -> Outcome {
    for (c, want) in [
        (surface(5, 0, Rational::ZERO), 5),
        (surface(5, 5, q(5, 2)), 5),
        (surface(5, 10, q(10, 1)), 10),
    ] {
        let got = c.chi_quintic_surface().map_err(|e| e.to_string())?;
        ensure!(got == q(want, 1), "chi{c} = {got}, want {want}");
    }
    Ok("5, 5, 10".into())
}

fn scan_csv(workers: usize) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_quintic-bg"))
        .args(["scan", "--variety", "quintic3", "--rank-max", "4", "--c1-range=-4..4", "--format", "csv"])
        .args(["--workers", &workers.to_string()])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "scan failed: {}", String::from_utf8_lossy(&out.stderr));
    Ok(out.stdout)
}

fn scan_determinism() -> Outcome {
    let one = scan_csv(1)?;
    let eight = scan_csv(8)?;
    ensure!(one == eight, "CSV differs between 1 and 8 workers");
    let rows = one.iter().filter(|&&b| b == b'\n').count() - 1;
    ensure!(rows > 0, "empty scan");
    Ok(format!("{rows} rows, {} bytes identical", one.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("bound-profile golden values", 1, golden_values),
        ("breakpoint continuity", 1, breakpoint_continuity),
        ("parabola domination", 1, parabola_domination),
        ("concave roof affine case", 1, roof_reproduces_affine_bound),
        ("roof oracle", 5, roof_oracle),
        ("star-shapedness", 1, star_shapedness),
        ("toda implication", 5, toda_implication),
        ("restriction interval", 1, restriction_window),
        ("certificate fixed points", 1, certificate_fixed_points),
        ("wall geometry", 30, wall_geometry),
        ("chi golden values", 1, chi_golden),
        ("scan determinism", 60, scan_determinism),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(limit) => Err(format!("took {elapsed:.2?}, limit {limit}s")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
