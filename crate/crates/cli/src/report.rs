//! JSON encoding of exact values and the run report envelope.

use hypcone::planecurve::{CurvePoint, Line2};
use hypcone::scalar::rational_string;
use hypcone::{PointQ, Rational, Scalar};
use serde_json::{json, Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `{"exact": "p/q", "approx": f64}`.
pub fn rational(x: &Rational) -> Value {
    json!({ "exact": rational_string(x), "approx": x.approx() })
}

/// Coordinates as exact strings plus decimals.
pub fn point(p: &PointQ) -> Value {
    let exact: Vec<String> = p.coords().iter().map(rational_string).collect();
    json!({ "exact": exact, "approx": p.to_f64() })
}

pub fn opt_point(p: Option<&PointQ>) -> Value {
    p.map_or(Value::Null, point)
}

pub fn line(l: &Line2) -> Value {
    json!({
        "equation": l.to_string(),
        "coeffs": point(&l.normal()),
    })
}

/// A curve point `t*base + dir` with `t` in an isolating interval.
pub fn curve_point(p: &CurvePoint) -> Value {
    let mut m = Map::new();
    m.insert("theta_index".into(), json!(p.theta_index));
    m.insert("branch".into(), json!(p.branch));
    m.insert("multiplicity".into(), json!(p.multiplicity));
    m.insert("base".into(), point(&p.base));
    m.insert("dir".into(), point(&p.dir));
    m.insert(
        "t".into(),
        match p.root.exact.as_ref() {
            Some(t) => json!({ "lo": rational(t), "hi": rational(t) }),
            None => json!({ "lo": rational(&p.root.lo), "hi": rational(&p.root.hi) }),
        },
    );
    m.insert("exact_point".into(), opt_point(p.exact_point().as_ref()));
    m.insert("approx".into(), json!(p.approx()));
    m.insert("smoothness".into(), json!(p.smoothness.tag()));
    Value::Object(m)
}

/// The report printed on stdout.
#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub params: Value,
    pub seed: u64,
    pub result: Value,
    /// Wall-clock milliseconds per phase; not part of the reproducible content.
    pub timings: Map<String, Value>,
}

impl RunReport {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("params".into(), self.params.clone());
        m.insert("seed".into(), json!(self.seed));
        m.insert("result".into(), self.result.clone());
        m.insert("version".into(), json!(VERSION));
        m.insert("timings".into(), Value::Object(self.timings.clone()));
        Value::Object(m)
    }

    /// Everything except the timings, serialized: equal across identical runs.
    pub fn canonical(&self) -> String {
        let mut v = self.to_json();
        if let Value::Object(m) = &mut v {
            m.remove("timings");
        }
        serde_json::to_string(&v).expect("report serializes")
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypcone::Point;

    #[test]
    fn rationals_carry_both_forms() {
        let v = rational(&Rational::new(3.into(), (-4).into()));
        assert_eq!(v["exact"], "-3/4");
        assert_eq!(v["approx"], -0.75);
        let p = point(&Point::from_ints(&[1, 0, -2]));
        assert_eq!(p["exact"], json!(["1", "0", "-2"]));
    }

    #[test]
    fn canonical_form_drops_timings() {
        let mut r = RunReport {
            command: "check".into(),
            params: json!({}),
            seed: 3,
            result: json!({ "a": 1 }),
            timings: Map::new(),
        };
        let before = r.canonical();
        r.timings.insert("total_ms".into(), json!(12));
        assert_eq!(before, r.canonical());
        let keys: Vec<String> = r.to_json().as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["command", "params", "seed", "result", "version", "timings"]);
    }
}
