//! Ledger operations: each `inputs.op` maps to one core computation.

use serde_json::{json, Map, Value};

use super::LedgerEntry;
use crate::chern::{
    endomorphism_class, euler_characteristic, rr_closed_form, twist, RRPolynomialInputs, SheafClass,
};
use crate::chow::{make_model, parse_expression, ChowElement, ThreefoldModel};
use crate::error::{Error, Result};
use crate::instanton::{
    effectivity_quadratic, elementary_transform, hoppe_region, instanton_invariants,
    orientability_check, pullback_family, rank0_constraint_solver, serre_ext_dimension,
    serre_family, PullbackFamilyParams, Rank0Data, SerreFamilyParams, RANK0_WINDOW,
};
use crate::p2::{bott_line, surface_chi, sym_power_cohomology};
use crate::rational::{exact_string, frac, int, parse_exact, Rational};
use crate::xcoh::{
    curve_twisted_chi, line_cohomology_x, normal_bundle_sections, restriction_cohomology,
    CurveModel,
};

pub const KNOWN_OPS: [&str; 23] = [
    "bott",
    "chi",
    "chow-eval",
    "curve-chi",
    "effectivity",
    "elementary-transform",
    "endomorphism",
    "hoppe",
    "instanton-invariants",
    "line-cohomology",
    "normal-bundle",
    "orientability",
    "pullback-family",
    "pullback-identity",
    "rank0-line",
    "rank0-solver",
    "restriction",
    "rr-closed-form",
    "serre-ext",
    "serre-family",
    "surface-chi",
    "sym-cohomology",
    "twist",
];

pub(super) struct Outcome {
    pub value: Value,
    pub bounds_only: bool,
    /// Per-`c` evaluation when `inputs.c` is a list.
    pub swept: Option<Vec<i64>>,
    pub c: Option<i64>,
}

struct Args<'a>(&'a Map<String, Value>);

fn missing(key: &str, what: &str) -> Error {
    Error::Parameter(format!("input {key:?} must be {what}"))
}

impl Args<'_> {
    fn int(&self, key: &str) -> Result<i64> {
        self.0
            .get(key)
            .and_then(Value::as_i64)
            .ok_or_else(|| missing(key, "an integer"))
    }

    fn int_or(&self, key: &str, default: i64) -> Result<i64> {
        match self.0.get(key) {
            None => Ok(default),
            Some(_) => self.int(key),
        }
    }

    fn str(&self, key: &str) -> Result<&str> {
        self.0
            .get(key)
            .and_then(Value::as_str)
            .ok_or_else(|| missing(key, "a string"))
    }

    fn model(&self) -> Result<ThreefoldModel> {
        make_model(self.int("c")?)
    }

    fn element(&self, model: &ThreefoldModel, key: &str) -> Result<ChowElement> {
        parse_expression(self.str(key)?, model)
    }

    fn element_or_zero(&self, model: &ThreefoldModel, key: &str) -> Result<ChowElement> {
        match self.0.get(key) {
            None => Ok(model.zero()),
            Some(_) => self.element(model, key),
        }
    }

    fn sheaf(&self, model: &ThreefoldModel) -> Result<SheafClass> {
        let rank = self.int("rank")?;
        let rank = u32::try_from(rank).map_err(|_| missing("rank", "a nonnegative integer"))?;
        SheafClass::new(
            rank,
            self.element(model, "c1")?,
            self.element(model, "c2")?,
            self.element_or_zero(model, "c3")?,
        )
    }

    fn curve(&self) -> Result<CurveModel> {
        match self.str("curve")? {
            "L" => Ok(CurveModel::LINE),
            "M" => Ok(CurveModel::CUBIC),
            other => Err(Error::Parameter(format!(
                "unknown curve {other:?}, expected L or M"
            ))),
        }
    }
}

/// Integers as JSON numbers, other rationals as `"p/q"`.
fn rational_json(r: &Rational) -> Value {
    match crate::rational::to_i64(r) {
        Some(n) => json!(n),
        None => json!(exact_string(r)),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn eval_one(op: &str, a: &Args) -> Result<(Value, bool)> {
    let exact = |v: Value| Ok((v, false));
    match op {
        "chow-eval" => {
            let model = a.model()?;
            let e = a.element(&model, "expr")?;
            exact(json!({"normal_form": e.to_string(), "degree": rational_json(&e.degree())}))
        }
        "twist" => {
            let model = a.model()?;
            let t = twist(&a.sheaf(&model)?, &a.element(&model, "twist")?)?;
            exact(json!({
                "rank": t.rank(),
                "c1": t.c1().to_string(),
                "c2": t.c2().to_string(),
                "c3": t.c3().to_string(),
            }))
        }
        "chi" => {
            let model = a.model()?;
            let s = a.sheaf(&model)?;
            let s = twist(&s, &a.element_or_zero(&model, "twist")?)?;
            exact(json!({"chi": rational_json(&euler_characteristic(&s)?)}))
        }
        "rr-closed-form" => {
            let p = RRPolynomialInputs {
                alpha: a.int("alpha")?,
                beta: a.int("beta")?,
                lambda1: a.int("lambda1")?,
                lambda2: a.int("lambda2")?,
                c: a.int("c")?,
            };
            let model = make_model(p.c)?;
            let e = SheafClass::orientable_rank2(model, p.alpha, p.beta);
            let hrr = euler_characteristic(&twist(&e, &model.divisor(p.lambda1, p.lambda2))?)?;
            exact(
                json!({"closed_form": rational_json(&rr_closed_form(&p)), "hrr": rational_json(&hrr)}),
            )
        }
        "endomorphism" => {
            let model = a.model()?;
            let e = SheafClass::orientable_rank2(model, a.int("alpha")?, a.int("beta")?);
            let end = endomorphism_class(&e)?;
            let disc = &(e.c1() * e.c1()) - &e.c2().scale_int(4);
            let formula = (&disc * &-model.canonical()).degree() * frac(1, 2) + int(4);
            exact(json!({
                "rank": end.rank(),
                "c2": end.c2().to_string(),
                "chi": rational_json(&euler_characteristic(&end)?),
                "chi_formula": rational_json(&formula),
            }))
        }
        "bott" => exact(to_json(&bott_line(a.int("d")?))),
        "sym-cohomology" => {
            let t = sym_power_cohomology(a.int("c")?, a.int("m")?, a.int("b")?)?;
            Ok((to_json(&t), !t.is_exact()))
        }
        "surface-chi" => exact(json!({
            "chi": rational_json(&surface_chi(a.int("c")?, a.int("m")?, a.int("b")?))
        })),
        "line-cohomology" => {
            let t = line_cohomology_x(a.int("c")?, a.int("l1")?, a.int("l2")?)?;
            Ok((to_json(&t), !t.is_exact()))
        }
        "curve-chi" => {
            let model = a.model()?;
            let d = a.element_or_zero(&model, "twist")?;
            exact(json!({"chi": rational_json(&curve_twisted_chi(&a.curve()?, &d)?)}))
        }
        "restriction" => {
            let model = a.model()?;
            let r = restriction_cohomology(
                &a.element(&model, "curve_class")?,
                &a.element(&model, "divisor")?,
            )?;
            exact(to_json(&r))
        }
        "normal-bundle" => {
            let (h0, h1) = normal_bundle_sections(&a.curve()?);
            exact(json!({"h0": h0, "h1": h1}))
        }
        "instanton-invariants" => exact(to_json(&instanton_invariants(
            a.int("alpha")?,
            a.int("beta")?,
            a.int("c")?,
        )?)),
        "orientability" => {
            let model = a.model()?;
            let rank = a.int("rank")?;
            let rank = u32::try_from(rank).map_err(|_| missing("rank", "a nonnegative integer"))?;
            let s = SheafClass::without_c3(rank, a.element(&model, "c1")?, model.zero())?;
            exact(json!({"orientable": orientability_check(&s)}))
        }
        "serre-family" => exact(to_json(&serre_family(SerreFamilyParams {
            m: a.int("m")?,
            c: a.int("c")?,
        })?)),
        "pullback-family" => exact(to_json(&pullback_family(PullbackFamilyParams {
            l: a.int("l")?,
            c: a.int("c")?,
        })?)),
        "pullback-identity" => {
            let c = a.int("c")?;
            let (lo, hi) = (a.int("l_min")?, a.int("l_max")?);
            let mut holds = true;
            for l in lo..=hi {
                let p = pullback_family(PullbackFamilyParams { l, c })?;
                let beta = l * l + 2 * l + 3 - c;
                let main = 10 * 5 + 4 * beta + 4 * c - 62;
                holds &= main == 4 * l * (l + 2)
                    && p.quotient_count == main
                    && p.instanton.ext_gap() == main;
            }
            exact(json!({"all_hold": holds, "checked": (hi - lo + 1).max(0)}))
        }
        "elementary-transform" => {
            let mut e = instanton_invariants(a.int("alpha")?, a.int("beta")?, a.int("c")?)?;
            for _ in 0..a.int_or("times", 1)? {
                e = elementary_transform(&e, &Rank0Data::twisted_line())?;
            }
            let mut v = to_json(&e);
            v["ext_gap"] = json!(e.ext_gap());
            exact(v)
        }
        "hoppe" => {
            let (x, y) = (a.int("a")?, a.int("b")?);
            let r = hoppe_region(a.int("c")?, (x, x), (y, y))?;
            exact(json!({
                "in_region": !r.points.is_empty(),
                "pairing": r.pairing.0 * x + r.pairing.1 * y,
                "mu": r.mu,
            }))
        }
        "effectivity" => {
            let variant =
                u8::try_from(a.int("variant")?).map_err(|_| missing("variant", "1 or 2"))?;
            exact(to_json(&effectivity_quadratic(
                a.int("c")?,
                a.int("a")?,
                a.int("b")?,
                variant,
            )?))
        }
        "serre-ext" => exact(json!({"dim": serre_ext_dimension(a.int("m")?)?})),
        "rank0-solver" => {
            let r = rank0_constraint_solver(a.int_or("window", RANK0_WINDOW)?)?;
            let mut v = to_json(&r);
            if a.0.contains_key("a") {
                v["twisted_chi"] = json!(r.twisted_chi(a.int("a")?, a.int("b")?));
            }
            exact(v)
        }
        "rank0-line" => {
            let model = a.model()?;
            let t = a.int("t")?;
            let s = CurveModel::LINE.sheaf_class(&model.h())?;
            let chi = euler_characteristic(&twist(&s, &model.h().scale_int(t))?)?;
            exact(json!({"chi": rational_json(&chi)}))
        }
        other => Err(Error::Parameter(format!("unknown op {other:?}"))),
    }
}

pub(super) fn evaluate(entry: &LedgerEntry) -> Result<Outcome> {
    let inputs = entry
        .inputs
        .as_object()
        .ok_or_else(|| Error::Parameter("inputs must be an object".into()))?;
    let op = inputs
        .get("op")
        .and_then(Value::as_str)
        .ok_or_else(|| missing("op", "a string"))?;
    if let Some(list) = inputs.get("c").and_then(Value::as_array) {
        let cs: Vec<i64> = list
            .iter()
            .map(|v| {
                v.as_i64()
                    .ok_or_else(|| missing("c", "an integer or a list of integers"))
            })
            .collect::<Result<_>>()?;
        let mut values = Vec::with_capacity(cs.len());
        let mut bounds_only = false;
        for &c in &cs {
            let mut one = inputs.clone();
            one.insert("c".into(), json!(c));
            let (v, b) = eval_one(op, &Args(&one))?;
            values.push(v);
            bounds_only |= b;
        }
        return Ok(Outcome {
            value: Value::Array(values),
            bounds_only,
            swept: Some(cs),
            c: None,
        });
    }
    let (value, bounds_only) = eval_one(op, &Args(inputs))?;
    Ok(Outcome {
        value,
        bounds_only,
        swept: None,
        c: inputs.get("c").and_then(Value::as_i64),
    })
}

fn as_rational(v: &Value) -> Option<Rational> {
    match v {
        Value::Number(n) => n.as_i64().map(int),
        Value::String(s) => parse_exact(s),
        _ => None,
    }
}

/// `expected` is contained in `computed`: objects by key subset, lists
/// elementwise, numbers exactly, strings literally or as equal Chow classes.
fn value_matches(expected: &Value, computed: &Value, c: Option<i64>) -> bool {
    match (expected, computed) {
        (Value::Object(e), Value::Object(v)) => e
            .iter()
            .all(|(k, ev)| v.get(k).is_some_and(|cv| value_matches(ev, cv, c))),
        (Value::Array(e), Value::Array(v)) => {
            e.len() == v.len() && e.iter().zip(v).all(|(x, y)| value_matches(x, y, c))
        }
        (Value::String(e), Value::String(v)) if e == v => true,
        (Value::String(e), Value::String(v)) => {
            if let (Some(x), Some(y)) = (parse_exact(e), parse_exact(v)) {
                return x == y;
            }
            let Some(model) = c.and_then(|c| make_model(c).ok()) else {
                return false;
            };
            match (parse_expression(e, &model), parse_expression(v, &model)) {
                (Ok(x), Ok(y)) => x == y,
                _ => false,
            }
        }
        (Value::Number(_), _) | (_, Value::Number(_)) => {
            matches!((as_rational(expected), as_rational(computed)), (Some(x), Some(y)) if x == y)
        }
        _ => expected == computed,
    }
}

pub(super) fn matches(expected: &Value, o: &Outcome) -> bool {
    match &o.swept {
        None => value_matches(expected, &o.value, o.c),
        Some(cs) => {
            let Value::Array(values) = &o.value else {
                return false;
            };
            match expected {
                Value::Array(e) => {
                    e.len() == values.len()
                        && e.iter()
                            .zip(values)
                            .zip(cs)
                            .all(|((x, y), &c)| value_matches(x, y, Some(c)))
                }
                _ => values
                    .iter()
                    .zip(cs)
                    .all(|(v, &c)| value_matches(expected, v, Some(c))),
            }
        }
    }
}
