use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::thread;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use quintic_bg::bounds::{
    check_character, classical_bg, profile_by_kind, star_shaped, toda_check, BoundProfile, ProfileKind, Variable,
};
use quintic_bg::certify::{certify_surface, certify_threefold, nu_zero_formulas, restricted_character, restriction_interval};
use quintic_bg::clifford::{concave_roof, h0_bound_hn, h_quintic, SlopeRangeData};
use quintic_bg::piecewise::Endpoint;
use quintic_bg::scan::Variety;
use quintic_bg::tilt_walls::{
    enumerate_destabilizers_for_ranks, nu, numerical_wall, DestabilizerOptions, WallLocus,
};
use quintic_bg::{Rational, ReducedCharacter, QUINTIC_DEGREE};
use quintic_bg_cli::config::{parse_format, parse_int_range, parse_profile, parse_rational, parse_variety, Format, ScanSettings};
use quintic_bg_cli::json::{self as js, Renderer};
use quintic_bg_cli::{plot, scan_io};

/// Exact tilt-stability and Bogomolov–Gieseker bound arithmetic on quintic
/// surfaces and threefolds.
#[derive(Parser)]
#[command(name = "quintic-bg", version)]
struct Cli {
    /// Add 6-place decimal renderings next to exact values.
    #[arg(long, global = true)]
    decimal: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CharacterArgs {
    /// quintic2 (surface) or quintic3 (threefold).
    #[arg(long, default_value = "quintic3", value_parser = parse_variety)]
    variety: Variety,
    /// H^n ch0.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    c0: Rational,
    /// H^(n-1) ch1.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    c1: Rational,
    /// H^(n-2) ch2.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    c2: Rational,
}

impl CharacterArgs {
    fn character(&self) -> ReducedCharacter {
        character(self.variety, self.c0, self.c1, self.c2)
    }
}

fn character(v: Variety, c0: Rational, c1: Rational, c2: Rational) -> ReducedCharacter {
    match v {
        Variety::QuinticSurface => ReducedCharacter::quintic_surface(c0, c1, c2),
        Variety::QuinticThreefold => ReducedCharacter::quintic_threefold(c0, c1, c2),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a bound profile (surface, threefold, prior, classical) or h.
    /// Profiles in |mu| are evaluated at |x|.
    EvalBound {
        #[arg(long)]
        profile: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        x: Rational,
    },
    /// Compare a character with a bound profile; exit 1 if it violates it.
    CheckCharacter {
        #[command(flatten)]
        ch: CharacterArgs,
        /// Defaults to the variety's own profile.
        #[arg(long, value_parser = parse_profile)]
        profile: Option<ProfileKind>,
    },
    /// Numerical wall between two characters, optionally with destabilizers.
    Walls {
        #[command(flatten)]
        ch: CharacterArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        d0: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        d1: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        d2: Rational,
        /// Print this many sample points with both tilt slopes.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        /// Enumerate destabilizers of the first character in this box.
        #[arg(long)]
        bound_box: Option<u32>,
        #[arg(long, default_value_t = 2)]
        c2_denominator: u32,
        #[arg(long)]
        include_proportional: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Concave roof of h on [a, b]; `--a -inf` gives the constant h(b).
    Roof {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        b: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        at: Option<Rational>,
    },
    /// Star-shapedness of a profile along the line beta = d.
    StarShaped {
        #[arg(long, value_parser = parse_profile)]
        profile: ProfileKind,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        d: Rational,
    },
    /// Restriction slope interval and restricted character for a divisor in |mH|.
    Restrict {
        #[command(flatten)]
        ch: CharacterArgs,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Replay the surface or threefold bound argument at (mu, xi).
    Certify {
        #[arg(long, default_value = "quintic2", value_parser = parse_variety)]
        variety: Variety,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        mu: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        xi: Rational,
    },
    /// Toda's inequalities for a threefold character with mu = -1/2; exit 1 on failure.
    Toda {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        c0: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        c1: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        c2: Rational,
    },
    /// Enumerate and classify lattice characters.
    Scan(ScanArgs),
    /// Curve data for h and the bound profiles as CSV.
    PlotData {
        /// Comma-separated series: h, surface, threefold, prior, parabola.
        #[arg(long, default_value = "h,surface,threefold,prior,parabola")]
        profiles: String,
        #[arg(long, default_value = "1/20", value_parser = parse_rational)]
        step: Rational,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ScanArgs {
    /// key = value file; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = parse_variety)]
    variety: Option<Variety>,
    #[arg(long)]
    rank_max: Option<u32>,
    /// Inclusive range `lo..hi` for a in ch1 = aH.
    #[arg(long, allow_hyphen_values = true)]
    c1_range: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c1_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    c1_max: Option<i64>,
    #[arg(long)]
    c2_denominator: Option<u32>,
    #[arg(long, value_parser = parse_rational)]
    xi_bound: Option<Rational>,
    #[arg(long, value_parser = parse_profile)]
    profile: Option<ProfileKind>,
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
}

impl ScanArgs {
    fn settings(&self) -> Result<ScanSettings> {
        let base = match &self.config {
            Some(p) => ScanSettings::load(p)?,
            None => ScanSettings::default(),
        };
        let (mut c1_min, mut c1_max) = (self.c1_min, self.c1_max);
        if let Some(r) = &self.c1_range {
            let (lo, hi) = parse_int_range(r)?;
            c1_min = Some(lo);
            c1_max = Some(hi);
        }
        Ok(base.overlay(ScanSettings {
            variety: self.variety,
            rank_max: self.rank_max,
            c1_min,
            c1_max,
            c2_denominator: self.c2_denominator,
            xi_bound: self.xi_bound,
            profile: self.profile,
            output: self.output.clone(),
            format: self.format,
            workers: self.workers,
        }))
    }
}

fn print_json(v: &Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn open_output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn profile_for(kind: Option<ProfileKind>, c: &ReducedCharacter) -> Result<BoundProfile> {
    let kind = kind.unwrap_or(match c.dim() {
        2 => ProfileKind::SurfaceQuintic,
        _ => ProfileKind::ThreefoldQuintic,
    });
    profile_by_kind(kind).ok_or_else(|| anyhow!("no built-in profile {:?}", kind))
}

fn eval_bound(r: &Renderer, profile: &str, x: Rational) -> Result<Value> {
    let value = if profile.trim().eq_ignore_ascii_case("h") {
        h_quintic().eval(x).ok_or_else(|| anyhow!("h undefined at {x}"))?
    } else {
        let p = profile_by_kind(parse_profile(profile)?).unwrap_or_else(classical_bg);
        match p.variable {
            Variable::AbsMu => p.eval(x.abs())?,
            Variable::Mu => p.eval(x)?,
        }
    };
    let mut m = r.object(&[("x", x), ("value", value)]);
    m.insert("profile".into(), json!(profile));
    Ok(Value::Object(m))
}

#[allow(clippy::too_many_arguments)]
fn walls(
    r: &Renderer,
    c: ReducedCharacter,
    d: ReducedCharacter,
    samples: usize,
    bound_box: Option<u32>,
    c2_denominator: u32,
    include_proportional: bool,
    workers: usize,
) -> Result<Value> {
    let mut m = Map::new();
    m.insert("c".into(), r.character(&c));
    m.insert("d".into(), r.character(&d));
    let wall = match numerical_wall(&c, &d) {
        WallLocus::Wall(w) => w,
        WallLocus::NoWall => {
            m.insert("locus".into(), json!("no_wall"));
            return Ok(Value::Object(m));
        }
        WallLocus::EverywhereEqual => {
            m.insert("locus".into(), json!("everywhere_equal"));
            return Ok(Value::Object(m));
        }
    };
    m.insert("locus".into(), json!("wall"));
    m.insert("wall".into(), r.wall(&wall));
    let pts: Vec<Value> = wall
        .sample_points(samples)
        .into_iter()
        .map(|p| {
            let mut s = r.object(&[("beta", p.beta), ("alpha", p.alpha)]);
            s.insert("nu_c".into(), js::slope(nu(&c, p)));
            s.insert("nu_d".into(), js::slope(nu(&d, p)));
            Value::Object(s)
        })
        .collect();
    m.insert("samples".into(), Value::Array(pts));
    if let Some(b) = bound_box {
        let opts = DestabilizerOptions { bound_box: b, c2_denominator, include_proportional };
        let ranks: Vec<i64> = opts.rank_range().collect();
        let chunk = ranks.len().div_ceil(workers.max(1));
        let parts: Vec<quintic_bg::Result<Vec<ReducedCharacter>>> = thread::scope(|s| {
            let handles: Vec<_> = ranks
                .chunks(chunk)
                .map(|rs| {
                    let range = rs[0]..=rs[rs.len() - 1];
                    let (c, wall, opts) = (&c, &wall, &opts);
                    s.spawn(move || enumerate_destabilizers_for_ranks(c, wall, opts, range))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        let mut found = Vec::new();
        for p in parts {
            found.extend(p?);
        }
        let list: Vec<Value> = found.iter().map(|f| r.character(f)).collect();
        m.insert("destabilizers".into(), Value::Array(list));
    }
    Ok(Value::Object(m))
}

fn roof(r: &Renderer, a: &str, b: Rational, at: Option<Rational>) -> Result<Value> {
    let lower = match a.trim() {
        "-inf" | "\u{2212}inf" => Endpoint::NegInf,
        s => Endpoint::Finite(parse_rational(s)?),
    };
    let mut m = Map::new();
    m.insert("a".into(), js::endpoint(lower));
    r.put(&mut m, "b", b);
    match lower {
        Endpoint::Finite(lo) => {
            let f = concave_roof(&h_quintic(), lo, b)?;
            m.insert("roof".into(), r.piecewise(&f));
            if let Some(x) = at {
                let v = f.eval(x).ok_or_else(|| anyhow!("{x} is outside [{lo}, {b}]"))?;
                r.put(&mut m, "at", x);
                r.put(&mut m, "value", v);
            }
        }
        _ => {
            let x = at.unwrap_or(b);
            let v = h0_bound_hn(SlopeRangeData::new(lower, b, x)?)?;
            r.put(&mut m, "at", x);
            r.put(&mut m, "value", v);
        }
    }
    Ok(Value::Object(m))
}

fn restrict(r: &Renderer, c: ReducedCharacter, m_: u32) -> Result<Value> {
    let iv = restriction_interval(&c, m_)?;
    let mut m = Map::new();
    m.insert("character".into(), r.character(&c));
    m.insert("interval".into(), r.interval(&iv));
    m.insert(
        "restricted".into(),
        restricted_character(&c, m_).map_or(Value::Null, |s| r.character(&s)),
    );
    m.insert("nu_zero".into(), nu_zero_formulas(&c).map_or(Value::Null, |n| r.nu_zero(&n)));
    Ok(Value::Object(m))
}

fn scan(args: &ScanArgs) -> Result<()> {
    let settings = args.settings()?;
    let config = settings.to_config()?;
    let workers = settings.workers.unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get()));
    let rows = scan_io::parallel_scan(&config, workers)?;
    let out = open_output(settings.output.as_ref())?;
    match settings.format.unwrap_or(Format::Csv) {
        Format::Csv => scan_io::write_csv(&rows, out),
        Format::Json => scan_io::write_json(&rows, out),
    }
}

fn run(cli: Cli) -> Result<u8> {
    let r = Renderer { decimal: cli.decimal };
    match cli.command {
        Command::EvalBound { profile, x } => print_json(&eval_bound(&r, &profile, x)?)?,
        Command::CheckCharacter { ch, profile } => {
            let c = ch.character();
            let p = profile_for(profile, &c)?;
            let res = check_character(&c, &p)?;
            print_json(&r.check(&c, p.kind.name(), &res))?;
            if !res.satisfies {
                return Ok(1);
            }
        }
        Command::Walls { ch, d0, d1, d2, samples, bound_box, c2_denominator, include_proportional, workers } => {
            let c = ch.character();
            let d = character(ch.variety, d0, d1, d2);
            print_json(&walls(&r, c, d, samples, bound_box, c2_denominator, include_proportional, workers)?)?;
        }
        Command::Roof { a, b, at } => print_json(&roof(&r, &a, b, at)?)?,
        Command::StarShaped { profile, d } => {
            let p = profile_by_kind(profile).ok_or_else(|| anyhow!("unknown profile"))?;
            let ok = star_shaped(&p, d)?;
            let mut m = r.object(&[("d", d)]);
            m.insert("profile".into(), json!(p.kind.name()));
            m.insert("star_shaped".into(), json!(ok));
            print_json(&Value::Object(m))?;
        }
        Command::Restrict { ch, m } => print_json(&restrict(&r, ch.character(), m)?)?,
        Command::Certify { variety, mu, xi } => {
            let cert = match variety {
                Variety::QuinticSurface => certify_surface(mu, xi)?,
                Variety::QuinticThreefold => certify_threefold(mu, xi)?,
            };
            print_json(&r.certificate(&cert))?;
        }
        Command::Toda { c0, c1, c2 } => {
            let c = ReducedCharacter::new(3, QUINTIC_DEGREE, c0, c1, c2)?;
            let rep = toda_check(&c)?;
            print_json(&r.toda(&c, &rep))?;
            if !(rep.passes_delta && rep.passes_xi) {
                return Ok(1);
            }
        }
        Command::Scan(args) => scan(&args)?,
        Command::PlotData { profiles, step, output } => {
            let series: Vec<String> = profiles.split(',').map(|s| s.trim().to_string()).collect();
            if series.iter().any(|s| s.is_empty()) {
                bail!("empty series name in `{profiles}`");
            }
            let rows = plot::plot_data(&series, step)?;
            plot::write_csv(&rows, r.decimal, open_output(output.as_ref())?)?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
