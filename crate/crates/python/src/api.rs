//! Plain-Rust layer under the Python bindings: strings in, JSON values out.
//! Everything here is testable without an interpreter.

use serde_json::{json, Value};

use pcfheight::enumeration::output::summary_json;
use pcfheight::enumeration::{self, EnumerationConfig, Family};
use pcfheight::heights::{self, HeightBudget};
use pcfheight::numerics::{parse_rational, DyadicInterval, QuadExt, Rational, DEFAULT_PRECISION};
use pcfheight::pcf::certify_pcf;
use pcfheight::poly::{parse_poly, PolySpec};
use pcfheight::Result;

pub fn budget(precision: Option<u32>, iterations: usize) -> HeightBudget {
    HeightBudget {
        max_iterations: iterations,
        precision: precision.unwrap_or(DEFAULT_PRECISION),
        ..HeightBudget::default()
    }
}

/// What to certify.
pub enum Target<'a> {
    Poly(&'a str),
    Cubic(&'a str, &'a str),
    Quadratic(&'a str),
}

impl Target<'_> {
    pub fn poly(&self) -> Result<PolySpec> {
        match self {
            Target::Poly(s) => parse_poly(s),
            Target::Cubic(a, b) => Ok(PolySpec::cubic(parse_rational(a)?, parse_rational(b)?)),
            Target::Quadratic(c) => Ok(PolySpec::quadratic(parse_rational(c)?)),
        }
    }
}

pub fn interval_json(x: &DyadicInterval) -> Value {
    serde_json::to_value(x).expect("intervals serialize")
}

pub fn canonical_height(poly: &str, point: &str, budget: &HeightBudget) -> Result<DyadicInterval> {
    let z: QuadExt = point.parse()?;
    heights::canonical_height(&parse_poly(poly)?, &z, budget)
}

pub fn height_report(poly: &str, point: &str, budget: &HeightBudget) -> Result<Value> {
    let f = parse_poly(poly)?;
    let z: QuadExt = point.parse()?;
    let r = heights::canonical_height_report(&f, &z, budget)?;
    Ok(json!({
        "poly": f,
        "point": z,
        "value": r.value,
        "complete": r.complete,
        "preperiodic": r.preperiodic,
        "iterations": r.iterations,
        "locals": r.locals,
    }))
}

pub fn critical_height(poly: &str, budget: &HeightBudget) -> Result<DyadicInterval> {
    heights::critical_height(&parse_poly(poly)?, budget)
}

pub fn certify(target: Target, budget: &HeightBudget) -> Result<Value> {
    let f = target.poly()?;
    let v = certify_pcf(&f, budget)?;
    Ok(json!({"poly": f, "label": v.label(), "verdict": v}))
}

pub fn enumerate_cubics(config: &EnumerationConfig) -> Result<Value> {
    let r = enumeration::enumerate_pcf_cubics(config)?;
    let mut v = summary_json(&r);
    v["records"] = r.records.iter().map(enumeration::output::record_json).collect();
    Ok(v)
}

pub fn enumerate_quadratics(config: &EnumerationConfig) -> Result<Value> {
    let r = enumeration::enumerate_pcf_quadratics(config)?;
    Ok(serde_json::to_value(&r).expect("results serialize"))
}

pub fn family_scan(family: &str, degree: usize, cs: &[String], budget: &HeightBudget) -> Result<Value> {
    let family: Family = family.parse()?;
    let cs = cs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<Rational>>>()?;
    let rows = enumeration::family_scan(family, degree, &cs, budget)?;
    Ok(serde_json::to_value(&rows).expect("rows serialize"))
}

/// The canonical `d; a_d, ..., a_0` text of any accepted polynomial syntax.
pub fn canonical_poly(s: &str) -> Result<String> {
    Ok(parse_poly(s)?.to_string())
}
