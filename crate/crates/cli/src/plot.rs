//! Plot data: sampled curves with exact breakpoint and one-sided limit
//! rows, for external plotting.

use std::io::Write;

use anyhow::{bail, Result};
use quintic_bg::bounds::{prior_bound, surface_bound, threefold_bound};
use quintic_bg::clifford::h_quintic;
use quintic_bg::piecewise::PiecewiseLinearFn;
use quintic_bg::{q, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Sample,
    Breakpoint,
    LeftLimit,
    RightLimit,
    /// Limit at an excluded domain end.
    Limit,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Sample => "sample",
            Kind::Breakpoint => "breakpoint",
            Kind::LeftLimit => "left_limit",
            Kind::RightLimit => "right_limit",
            Kind::Limit => "limit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlotRow {
    pub series: String,
    pub x: Rational,
    pub y: Rational,
    pub kind: Kind,
}

pub const SERIES: [&str; 5] = ["h", "surface", "threefold", "prior", "parabola"];

fn grid(lo: Rational, hi: Rational, step: Rational) -> Vec<Rational> {
    let mut xs = Vec::new();
    let mut x = lo;
    while x <= hi {
        xs.push(x);
        x += step;
    }
    xs
}

fn piecewise_rows(name: &str, f: &PiecewiseLinearFn, lo: Rational, hi: Rational, step: Rational) -> Vec<PlotRow> {
    let row = |x, y, kind| PlotRow { series: name.to_string(), x, y, kind };
    let breaks: Vec<Rational> = f.breakpoints().into_iter().filter(|&x| lo <= x && x <= hi).collect();
    let mut rows = Vec::new();
    for x in grid(lo, hi, step) {
        if breaks.contains(&x) {
            continue;
        }
        match f.eval(x) {
            Some(y) => rows.push(row(x, y, Kind::Sample)),
            None => {
                // Excluded domain end: report the one-sided limit instead.
                if let Some(y) = f.right_limit(x).or(f.left_limit(x)) {
                    rows.push(row(x, y, Kind::Limit));
                }
            }
        }
    }
    for x in breaks {
        let value = f.eval(x);
        if let Some(y) = value {
            rows.push(row(x, y, Kind::Breakpoint));
        }
        if let Some(y) = f.left_limit(x).filter(|&y| Some(y) != value) {
            rows.push(row(x, y, Kind::LeftLimit));
        }
        if let Some(y) = f.right_limit(x).filter(|&y| Some(y) != value) {
            rows.push(row(x, y, Kind::RightLimit));
        }
    }
    rows.sort_by_key(|r| (r.x, r.kind));
    rows
}

/// Rows for each requested series, in request order. `h` is plotted on
/// `[−1, 3]`, the bound profiles and the parabola `x²/2` on `[0, 1]`.
pub fn plot_data(series: &[String], step: Rational) -> Result<Vec<PlotRow>> {
    if !step.is_positive() {
        bail!("sample step must be positive");
    }
    let unit = (Rational::ZERO, Rational::ONE);
    let mut rows = Vec::new();
    for name in series {
        let name = name.trim();
        match name {
            "h" => rows.extend(piecewise_rows(name, &h_quintic(), q(-1, 1), q(3, 1), step)),
            "surface" | "threefold" | "prior" => {
                let profile = match name {
                    "surface" => surface_bound(),
                    "threefold" => threefold_bound(),
                    _ => prior_bound(),
                };
                let f = profile.linear().expect("piecewise-linear profile");
                rows.extend(piecewise_rows(name, f, unit.0, unit.1, step));
            }
            "parabola" => rows.extend(grid(unit.0, unit.1, step).into_iter().map(|x| PlotRow {
                series: name.to_string(),
                x,
                y: Rational::HALF * x.square(),
                kind: Kind::Sample,
            })),
            other => bail!("unknown series `{other}` (expected one of {})", SERIES.join(", ")),
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[PlotRow], decimal: bool, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if decimal {
        w.write_record(["series", "x", "y", "kind", "x_decimal", "y_decimal"])?;
    } else {
        w.write_record(["series", "x", "y", "kind"])?;
    }
    for r in rows {
        let mut rec = vec![r.series.clone(), r.x.to_string(), r.y.to_string(), r.kind.name().to_string()];
        if decimal {
            rec.push(r.x.to_decimal(crate::json::DECIMAL_PLACES));
            rec.push(r.y.to_decimal(crate::json::DECIMAL_PLACES));
        }
        w.write_record(rec)?;
    }
    w.flush()?;
    Ok(())
}
