#![allow(dead_code)]

use std::collections::BTreeMap;

use fanoxc::chern::{chern_character, SheafClass};
use fanoxc::chow::{ChowElement, ThreefoldModel};
use fanoxc::rational::int;
use fanoxc::xcoh::CurveModel;
use proptest::prelude::*;

/// Independent normal form of `xi^i f^j`: rewrite one monomial at a time
/// until only `1, xi, f, xi f, f^2, xi f^2` remain.
pub fn naive_normal_form(c: i64, i: u32, j: u32) -> [i64; 6] {
    let mut poly: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    poly.insert((i, j), 1);
    while let Some((&(a, b), &coef)) = poly
        .iter()
        .find(|(&(a, b), &n)| n != 0 && (a >= 2 || b >= 3))
    {
        poly.remove(&(a, b));
        if b >= 3 {
            continue;
        }
        *poly.entry((a - 1, b + 1)).or_insert(0) += 2 * coef;
        *poly.entry((a - 2, b + 2)).or_insert(0) -= c * coef;
    }
    let order = [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)];
    let mut out = [0; 6];
    for ((a, b), n) in poly {
        if n != 0 {
            let slot = order
                .iter()
                .position(|&m| m == (a, b))
                .expect("basis monomial");
            out[slot] += n;
        }
    }
    out
}

pub fn element(model: ThreefoldModel, coeffs: [i64; 6]) -> ChowElement {
    ChowElement::from_coefficients(model, coeffs.map(int))
}

pub fn arb_model() -> impl Strategy<Value = ThreefoldModel> {
    (0i64..=4).prop_map(|c| ThreefoldModel::new(c).unwrap())
}

pub fn arb_element(model: ThreefoldModel) -> impl Strategy<Value = ChowElement> {
    proptest::array::uniform6(-20i64..=20).prop_map(move |c| element(model, c))
}

pub fn arb_triple() -> impl Strategy<Value = (ChowElement, ChowElement, ChowElement)> {
    arb_model().prop_flat_map(|m| (arb_element(m), arb_element(m), arb_element(m)))
}

/// Chern data of a genuine coherent sheaf: a sum of line bundles plus
/// twisted structure sheaves of lines, cubics and points, so chi must be integral.
pub fn arb_integral_class() -> impl Strategy<Value = SheafClass> {
    arb_model().prop_flat_map(arb_integral_class_on)
}

pub fn arb_integral_class_on(model: ThreefoldModel) -> impl Strategy<Value = SheafClass> {
    (
        proptest::collection::vec((-4i64..=4, -4i64..=4), 1..=3),
        proptest::collection::vec((0usize..2, -3i64..=3, -3i64..=3), 0..=2),
        0i64..=3,
    )
        .prop_map(move |(lines, curves, points)| {
            let mut ch = model.zero();
            for &(a, b) in &lines {
                let l = SheafClass::line_bundle(&model.divisor(a, b)).unwrap();
                ch = &ch + &chern_character(&l);
            }
            for &(which, a, b) in &curves {
                let curve = if which == 0 {
                    CurveModel::LINE
                } else {
                    CurveModel::CUBIC
                };
                let s = curve.sheaf_class(&model.divisor(a, b)).unwrap();
                ch = &ch + &chern_character(&s);
            }
            ch = &ch + &model.points(points);
            SheafClass::from_chern_character(lines.len() as u32, &ch).unwrap()
        })
}

/// Random classes of rank at most 3 with integer Chern data.
pub fn arb_class() -> impl Strategy<Value = SheafClass> {
    (
        arb_model(),
        0u32..=3,
        -6i64..=6,
        -6i64..=6,
        -9i64..=9,
        -9i64..=9,
        -9i64..=9,
    )
        .prop_map(|(model, r, a, b, x, y, z)| {
            SheafClass::new(r, model.divisor(a, b), model.curve(x, y), model.points(z)).unwrap()
        })
}
