//! JSON renderings of the library types.
//!
//! Rationals are exact `"p/q"` strings. With decimals enabled, each rational
//! field `k` gains a sibling `k_decimal` rounded to six places.

use quintic_bg::bounds::{CheckResult, TodaReport};
use quintic_bg::certify::{Certificate, NuZero, RestrictionInterval, SlopeCheck};
use quintic_bg::piecewise::{Endpoint, PiecewiseLinearFn};
use quintic_bg::tilt_walls::{Admissible, Wall, WitnessMethod, WitnessPoint};
use quintic_bg::{Rational, ReducedCharacter, Slope};
use serde_json::{json, Map, Value};

pub const DECIMAL_PLACES: u32 = 6;

#[derive(Debug, Clone, Copy, Default)]
pub struct Renderer {
    pub decimal: bool,
}

pub fn rational(x: Rational) -> Value {
    Value::String(x.to_string())
}

pub fn endpoint(e: Endpoint) -> Value {
    match e {
        Endpoint::NegInf => Value::String("-inf".into()),
        Endpoint::PosInf => Value::String("+inf".into()),
        Endpoint::Finite(x) => rational(x),
    }
}

pub fn slope(s: Slope) -> Value {
    match s {
        Slope::Finite(x) => rational(x),
        Slope::Infinity => Value::String("+inf".into()),
    }
}

impl Renderer {
    /// Inserts `key` and, when enabled, `key_decimal`.
    pub fn put(&self, map: &mut Map<String, Value>, key: &str, x: Rational) {
        map.insert(key.into(), rational(x));
        if self.decimal {
            map.insert(format!("{key}_decimal"), Value::String(x.to_decimal(DECIMAL_PLACES)));
        }
    }

    pub fn object(&self, fields: &[(&str, Rational)]) -> Map<String, Value> {
        let mut m = Map::new();
        for (k, v) in fields {
            self.put(&mut m, k, *v);
        }
        m
    }

    pub fn character(&self, c: &ReducedCharacter) -> Value {
        let mut m = Map::new();
        m.insert("dim".into(), json!(c.dim()));
        m.insert("degree".into(), rational(c.degree()));
        m.insert("ch".into(), json!([rational(c.c0()), rational(c.c1()), rational(c.c2())]));
        m.insert("mu".into(), slope(c.mu()));
        match c.xi() {
            Ok(xi) => self.put(&mut m, "xi", xi),
            Err(_) => {
                m.insert("xi".into(), Value::Null);
            }
        }
        self.put(&mut m, "discriminant", c.discriminant());
        Value::Object(m)
    }

    pub fn piecewise(&self, f: &PiecewiseLinearFn) -> Value {
        let pieces: Vec<Value> = f
            .pieces()
            .iter()
            .map(|p| {
                let mut m = Map::new();
                m.insert("interval".into(), json!([endpoint(p.lo), endpoint(p.hi)]));
                self.put(&mut m, "slope", p.slope);
                self.put(&mut m, "intercept", p.intercept);
                m.insert("owns_left".into(), json!(p.owns_left));
                m.insert("owns_right".into(), json!(p.owns_right));
                Value::Object(m)
            })
            .collect();
        json!({ "pieces": pieces })
    }

    pub fn check(&self, c: &ReducedCharacter, profile: &str, r: &CheckResult) -> Value {
        let mut m = self.object(&[("x", r.x), ("xi", r.xi), ("bound", r.bound), ("margin", r.margin)]);
        m.insert("character".into(), self.character(c));
        m.insert("profile".into(), json!(profile));
        m.insert("satisfies".into(), json!(r.satisfies));
        Value::Object(m)
    }

    pub fn toda(&self, c: &ReducedCharacter, r: &TodaReport) -> Value {
        let mut m = self.object(&[
            ("lhs_delta", r.lhs_delta),
            ("lhs_xi", r.lhs_xi),
            ("delta_threshold", quintic_bg::bounds::toda_delta_threshold()),
            ("xi_threshold", quintic_bg::bounds::toda_xi_threshold()),
        ]);
        m.insert("character".into(), self.character(c));
        m.insert("passes_delta".into(), json!(r.passes_delta));
        m.insert("passes_xi".into(), json!(r.passes_xi));
        Value::Object(m)
    }

    pub fn wall(&self, w: &Wall) -> Value {
        let mut m = self.object(&[("a", w.a()), ("b", w.b()), ("c", w.c())]);
        m.insert("vertical".into(), json!(w.is_vertical()));
        let adm = match w.admissible() {
            Admissible::Empty => json!({ "kind": "empty" }),
            Admissible::Ray { beta } => {
                let mut a = self.object(&[("beta", beta)]);
                a.insert("kind".into(), json!("ray"));
                Value::Object(a)
            }
            Admissible::Segment(seg) => {
                let mut a = self.object(&[("center", seg.center), ("radicand", seg.radicand)]);
                a.insert("kind".into(), json!("segment"));
                a.insert(
                    "endpoints".into(),
                    seg.endpoints.map_or(Value::Null, |(l, r)| json!([rational(l), rational(r)])),
                );
                Value::Object(a)
            }
        };
        m.insert("admissible".into(), adm);
        m.insert("witness".into(), w.witness().map_or(Value::Null, |p| self.witness(&p)));
        Value::Object(m)
    }

    pub fn witness(&self, p: &WitnessPoint) -> Value {
        let mut m = self.object(&[("beta", p.point.beta), ("alpha", p.point.alpha)]);
        let method = match p.method {
            WitnessMethod::Midpoint => "midpoint",
            WitnessMethod::RayOffset => "ray_offset",
        };
        m.insert("method".into(), json!(method));
        Value::Object(m)
    }

    pub fn interval(&self, r: &RestrictionInterval) -> Value {
        let mut m = self.object(&[("lower", r.lower), ("upper", r.upper)]);
        m.insert("m".into(), json!(r.m));
        Value::Object(m)
    }

    pub fn nu_zero(&self, n: &NuZero) -> Value {
        Value::Object(self.object(&[
            ("nu_F", n.nu_f),
            ("nu_F_dual", n.nu_f_dual),
            ("nu_F_twist_shift", n.nu_f_twist_shift),
            ("nu_F_dualtwist", n.nu_f_dualtwist),
        ]))
    }

    fn slope_check(&self, c: &SlopeCheck) -> Value {
        let mut m = self.object(&[("value", c.value), ("bound", c.bound)]);
        m.insert("label".into(), json!(c.label));
        m.insert("relation".into(), json!(c.relation()));
        m.insert("holds".into(), json!(c.holds));
        m.insert("holds_strict".into(), json!(c.holds_strict));
        m.insert("holds_weak".into(), json!(c.holds_weak));
        Value::Object(m)
    }

    pub fn certificate(&self, cert: &Certificate) -> Value {
        let steps: Vec<Value> = cert
            .steps
            .iter()
            .map(|s| {
                let mut v = vec![json!(s.label), rational(s.value)];
                if self.decimal {
                    v.push(json!(s.value.to_decimal(DECIMAL_PLACES)));
                }
                Value::Array(v)
            })
            .collect();
        let checks: Vec<Value> = cert.checks.iter().map(|c| self.slope_check(c)).collect();
        let mut m = Map::new();
        m.insert("input".into(), self.character(&cert.input));
        m.insert("case_tag".into(), json!(cert.case_tag.name()));
        m.insert(
            "reduced".into(),
            cert.reduced.map_or(Value::Null, |(mu, xi)| Value::Object(self.object(&[("mu", mu), ("xi", xi)]))),
        );
        m.insert("steps".into(), Value::Array(steps));
        m.insert("checks".into(), Value::Array(checks));
        m.insert(
            "conclusion".into(),
            json!({ "xi_le": Value::Object(self.object(&[
                ("slope", cert.conclusion.slope),
                ("intercept", cert.conclusion.intercept),
            ])) }),
        );
        self.put(&mut m, "margin", cert.margin);
        m.insert("contradicts_assumption".into(), json!(cert.contradicts_assumption));
        Value::Object(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use quintic_bg::clifford::h_quintic;
    use quintic_bg::q;

    #[test]
    fn piecewise_schema() {
        let v = Renderer::default().piecewise(&h_quintic());
        let first = &v["pieces"][0];
        assert_eq!(first["interval"], json!(["-inf", "0"]));
        assert_eq!(first["owns_left"], json!(false));
        assert_eq!(v["pieces"][5]["interval"], json!(["2", "+inf"]));
        assert_eq!(v["pieces"][1]["slope"], json!("3/2"));
    }

    #[test]
    fn decimals_are_siblings() {
        let mut m = Map::new();
        Renderer { decimal: true }.put(&mut m, "x", q(-1, 20));
        assert_eq!(m["x"], json!("-1/20"));
        assert_eq!(m["x_decimal"], json!("-0.050000"));
    }
}
