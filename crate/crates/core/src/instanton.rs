//! Numerical invariants of rank-2 orientable instanton classes on X_c.
//!
//! Classes have `c1 = 2xi + 3f`, `c2 = alpha*xi*f + beta*f^2`, `c3 = 0`.
//! Inadmissible parameters are reported through flags and reason strings.

use rayon::prelude::*;
use serde::Serialize;

use crate::chern::{chern_character, euler_characteristic, twist, SheafClass};
use crate::chow::{make_model, ChowElement, ThreefoldModel};
use crate::error::{Error, Result};
use crate::rational::{frac, int, to_i64};
use crate::xcoh::restriction_cohomology;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct InstantonClass {
    pub c: u8,
    pub alpha: i64,
    pub beta: i64,
    /// `k = 3 alpha + beta + c - 21`.
    pub charge: i64,
    pub ext1: Option<i64>,
    pub ext2: Option<i64>,
    pub orientable: bool,
    pub ulrich: bool,
    pub alpha_admissible: bool,
    pub charge_admissible: bool,
    pub reasons: Vec<String>,
}

impl InstantonClass {
    fn build(model: ThreefoldModel, alpha: i64, beta: i64) -> Self {
        let c = model.c() as i64;
        let charge = 3 * alpha + beta + c - 21;
        let mut reasons = Vec::new();
        if alpha < 5 {
            reasons.push(format!("alpha >= 5 is necessary, got alpha = {alpha}"));
        }
        if charge < 0 {
            reasons.push(format!(
                "charge 3*alpha + beta + c - 21 must be >= 0, got {charge}"
            ));
        }
        Self {
            c: model.c(),
            alpha,
            beta,
            charge,
            ext1: None,
            ext2: None,
            orientable: true,
            ulrich: charge == 0,
            alpha_admissible: alpha >= 5,
            charge_admissible: charge >= 0,
            reasons,
        }
    }

    pub fn model(&self) -> ThreefoldModel {
        ThreefoldModel::new(self.c as i64).expect("c in range")
    }

    pub fn sheaf_class(&self) -> SheafClass {
        SheafClass::orientable_rank2(self.model(), self.alpha, self.beta)
    }

    pub fn admissible(&self) -> bool {
        self.alpha_admissible && self.charge_admissible
    }

    /// `ext1 - ext2` from Riemann-Roch on the endomorphism bundle: `(c1^2 - 4c2)K/2 - 3`.
    pub fn ext_gap(&self) -> i64 {
        let model = self.model();
        let s = self.sheaf_class();
        let disc = &(s.c1() * s.c1()) - &s.c2().scale_int(4);
        let v = (&disc * &model.canonical()).degree() * frac(1, 2) - int(3);
        to_i64(&v).expect("integral")
    }
}

fn main_theorem_range(c: i64, alpha: i64, beta: i64) -> bool {
    beta >= 2 && alpha >= if c == 0 { 7 } else { 6 }
}

/// `l >= 1` with `beta = l^2 + 2l + 3 - c`, if any.
fn pullback_index(c: i64, beta: i64) -> Option<i64> {
    // (l + 1)^2 = beta + c - 2
    let t = beta + c - 2;
    if t < 4 {
        return None;
    }
    let r = (t as f64).sqrt().round() as i64;
    (r * r == t).then_some(r - 1)
}

/// `instanton_invariants`: charge, flags and, where known, Ext dimensions.
pub fn instanton_invariants(alpha: i64, beta: i64, c: i64) -> Result<InstantonClass> {
    let model = make_model(c)?;
    let mut e = InstantonClass::build(model, alpha, beta);
    if main_theorem_range(c, alpha, beta) {
        e.ext1 = Some(10 * alpha + 4 * beta + 4 * c - 62);
        e.ext2 = Some(0);
    } else if alpha == 5 {
        if let Some(l) = pullback_index(c, beta) {
            e.ext1 = Some(4 * l * (l + 2));
            e.ext2 = Some(0);
        }
    }
    Ok(e)
}

/// `orientability_check`: `c1 = (4h + K) rank / 2`.
pub fn orientability_check(s: &SheafClass) -> bool {
    let model = s.model();
    let target = (&model.h().scale_int(4) + &model.canonical()).scale(&frac(s.rank() as i64, 2));
    s.c1() == &target
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SerreFamilyParams {
    pub m: i64,
    pub c: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SerreFamily {
    pub m: i64,
    pub instanton: InstantonClass,
    /// `6m - 1`.
    pub family_dim: i64,
    /// `ext1 - family_dim = 4 alpha + 4c - 29`.
    pub codimension: i64,
    pub valid: bool,
    /// The family dimension count needs `m >= 3` (`m >= 5` when `c = 0`).
    pub family_dim_valid: bool,
    pub reasons: Vec<String>,
}

/// `serre_family`: bundles from `m` disjoint rational cubics.
pub fn serre_family(p: SerreFamilyParams) -> Result<SerreFamily> {
    let (m, c) = (p.m, p.c);
    if m < 1 {
        return Err(Error::Parameter(format!(
            "Serre family needs m >= 1, got {m}"
        )));
    }
    let model = make_model(c)?;
    let alpha = m + 4;
    let mut e = InstantonClass::build(model, alpha, 2);
    let valid = m >= if c == 0 { 3 } else { 2 };
    let family_dim_valid = m >= if c == 0 { 5 } else { 3 };
    let mut reasons = Vec::new();
    if valid {
        e.ext1 = Some(10 * alpha + 4 * c - 54);
        e.ext2 = Some(0);
    } else {
        reasons.push(format!(
            "alpha >= 6 when c >= 1 and alpha >= 7 when c = 0; got alpha = {alpha}, c = {c}"
        ));
    }
    if !family_dim_valid {
        reasons.push(format!(
            "family dimension 6m - 1 is only established for m >= {}",
            if c == 0 { 5 } else { 3 }
        ));
    }
    let family_dim = 6 * m - 1;
    let codimension = 10 * alpha + 4 * c - 54 - family_dim;
    debug_assert_eq!(codimension, 4 * alpha + 4 * c - 29);
    Ok(SerreFamily {
        m,
        instanton: e,
        family_dim,
        codimension,
        valid,
        family_dim_valid,
        reasons,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PullbackFamilyParams {
    pub l: i64,
    pub c: i64,
}

impl PullbackFamilyParams {
    /// `(2l + 3, 2l + 1)`.
    pub fn space_dims(&self) -> (i64, i64) {
        (2 * self.l + 3, 2 * self.l + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PullbackFamily {
    pub l: i64,
    pub instanton: InstantonClass,
    /// `dim M_0 - dim G` for the space of surjections modulo the group.
    pub quotient_count: i64,
    /// `4 c2 - c1^2 - 3` of the bundle on the plane.
    pub plane_count: i64,
}

/// `pullback_family`: pullbacks of kernel bundles from the plane twisted by `xi`.
pub fn pullback_family(p: PullbackFamilyParams) -> Result<PullbackFamily> {
    let (l, c) = (p.l, p.c);
    if l < 1 {
        return Err(Error::Parameter(format!(
            "pullback family needs l >= 1, got {l}"
        )));
    }
    let model = make_model(c)?;
    let (big, small) = p.space_dims();
    let beta = l * l + 2 * l + 3 - c;

    // c2 from 0 -> G -> V_big (x) O((l+2)f + xi) -> V_small (x) O((l+3)f + xi) -> 0
    let ch = &chern_character(&SheafClass::line_bundle(&model.divisor(1, l + 2))?).scale_int(big)
        - &chern_character(&SheafClass::line_bundle(&model.divisor(1, l + 3))?).scale_int(small);
    let g = SheafClass::from_chern_character(2, &ch)?;
    let expected = SheafClass::orientable_rank2(model, 5, beta);
    if g.c1() != expected.c1() || g.c2() != expected.c2() {
        return Err(Error::Consistency(format!(
            "resolution gives ({g}) instead of c2 = {}",
            expected.c2()
        )));
    }

    let ext1 = 4 * l * (l + 2);
    let quotient_count = 3 * big * small - (big * big + small * small - 1);
    let plane_count = 4 * (l * l + 2 * l + 3) - 9 - 3;
    if quotient_count != ext1 || plane_count != ext1 {
        return Err(Error::Consistency(format!(
            "dimension counts {quotient_count}, {plane_count} differ from 4l(l+2) = {ext1}"
        )));
    }
    let mut e = InstantonClass::build(model, 5, beta);
    e.ext1 = Some(ext1);
    e.ext2 = Some(0);
    if e.ext_gap() != ext1 {
        return Err(Error::Consistency(format!(
            "Riemann-Roch gap {} differs from 4l(l+2) = {ext1}",
            e.ext_gap()
        )));
    }
    Ok(PullbackFamily {
        l,
        instanton: e,
        quotient_count,
        plane_count,
    })
}

/// A rank-0 instanton quotient: support class `gamma`, degree `chi(T(-h))`
/// and `c3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Rank0Data {
    /// Support class as `(xi*f, f^2)` coefficients.
    pub gamma: (i64, i64),
    pub degree: i64,
    pub c3: i64,
}

impl Rank0Data {
    /// `O_L(1)` on a line `L`.
    pub fn twisted_line() -> Self {
        Self {
            gamma: (0, 1),
            degree: 1,
            c3: 2,
        }
    }

    pub fn identity() -> Self {
        Self {
            gamma: (0, 0),
            degree: 0,
            c3: 0,
        }
    }
}

/// `elementary_transform`: kernel of `E -> T`.
pub fn elementary_transform(e: &InstantonClass, t: &Rank0Data) -> Result<InstantonClass> {
    if t.degree < 0 {
        return Err(Error::Parameter(format!(
            "rank-0 quotient must have degree >= 0, got {}",
            t.degree
        )));
    }
    let model = e.model();
    let gamma = model.curve(t.gamma.0, t.gamma.1);
    let support_degree = to_i64(&(&gamma * &model.h()).degree()).expect("integral");
    if support_degree != t.degree {
        return Err(Error::Parameter(format!(
            "degree {} does not match the support class degree {support_degree}",
            t.degree
        )));
    }
    let mut out = InstantonClass::build(model, e.alpha + t.gamma.0, e.beta + t.gamma.1);
    debug_assert_eq!(out.charge, e.charge + t.degree);
    if t.gamma == (0, 0) {
        out.ext1 = e.ext1;
        out.ext2 = e.ext2;
    } else if t.gamma == (0, 1) && t.degree == 1 {
        out.ext1 = e.ext1.map(|v| v + 4);
        out.ext2 = e.ext2;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HoppeRegion {
    pub c: u8,
    /// Slope `c1 h^2 / 2` of an orientable class.
    pub mu: i64,
    /// `(xi h^2, f h^2)`, so `(a xi + b f) h^2 = pairing.0 a + pairing.1 b`.
    pub pairing: (i64, i64),
    pub points: Vec<(i64, i64)>,
}

/// `hoppe_region`: `(a, b)` in the window with `(a xi + b f) h^2 <= -mu`.
pub fn hoppe_region(c: i64, a_range: (i64, i64), b_range: (i64, i64)) -> Result<HoppeRegion> {
    let model = make_model(c)?;
    if a_range.0 > a_range.1 || b_range.0 > b_range.1 {
        return Err(Error::Parameter(format!(
            "empty window a in [{}, {}], b in [{}, {}]",
            a_range.0, a_range.1, b_range.0, b_range.1
        )));
    }
    let h2 = model.h().pow(2);
    let deg = |d: &ChowElement| to_i64(&(d * &h2).degree()).expect("integral");
    let c1h2 = deg(&model.divisor(2, 3));
    let mu = c1h2 / 2;
    let pairing = (deg(&model.xi()), deg(&model.f()));
    let mut points: Vec<(i64, i64)> = (a_range.0..=a_range.1)
        .into_par_iter()
        .flat_map_iter(|a| {
            (b_range.0..=b_range.1)
                .filter(move |&b| pairing.0 * a + pairing.1 * b <= -mu)
                .map(move |b| (a, b))
        })
        .collect();
    points.sort_unstable();
    Ok(HoppeRegion {
        c: model.c(),
        mu,
        pairing,
        points,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EffectivityQuadratic {
    pub q2: i64,
    pub q1: i64,
    pub q0: i64,
    pub not_effective: bool,
}

/// Closed forms of the quadratic, kept to cross-check the Chow expansion.
fn transcribed_quadratic(c: i64, a: i64, b: i64, variant: u8) -> (i64, i64, i64) {
    match variant {
        1 => ((4 - c) * a + 2 * b + 4, 4 * a + 2 * b + 4, a),
        _ => ((4 - c) * a + 2 * b + 10 - 2 * c, 4 * a + 2 * b + 10, a + 2),
    }
}

/// `effectivity_quadratic`: `deg(D (k xi + f)^2)` as a polynomial in `k`,
/// with `D = a xi + (b+2) f` (variant 1) or `D = (a+2) xi + (b+1) f` (variant 2).
pub fn effectivity_quadratic(c: i64, a: i64, b: i64, variant: u8) -> Result<EffectivityQuadratic> {
    let model = make_model(c)?;
    let d = match variant {
        1 => model.divisor(a, b + 2),
        2 => model.divisor(a + 2, b + 1),
        _ => {
            return Err(Error::Parameter(format!(
                "variant must be 1 or 2, got {variant}"
            )))
        }
    };
    let deg = |e: &ChowElement| to_i64(&(&d * e).degree()).expect("integral");
    // (k xi + f)^2 = k^2 xi^2 + 2k xi f + f^2
    let q2 = deg(&model.xi().pow(2));
    let q1 = deg(&model.curve(2, 0));
    let q0 = deg(&model.curve(0, 1));
    if (q2, q1, q0) != transcribed_quadratic(c, a, b, variant) {
        return Err(Error::Consistency(format!(
            "Chow expansion ({q2}, {q1}, {q0}) disagrees with the closed form {:?}",
            transcribed_quadratic(c, a, b, variant)
        )));
    }
    let hypotheses = a >= 0 && (9 - c) * a + 4 * b <= c - 15 && (variant == 1 || c >= 2);
    Ok(EffectivityQuadratic {
        q2,
        q1,
        q0,
        not_effective: hypotheses && q2 < 0,
    })
}

/// `serre_ext_dimension`: `sum_i h^1(O_{M_i}(-2))` over `m` disjoint cubics.
pub fn serre_ext_dimension(m: i64) -> Result<i64> {
    if m < 0 {
        return Err(Error::Parameter(format!("m must be >= 0, got {m}")));
    }
    let model = make_model(0)?;
    let per_curve = restriction_cohomology(&model.curve(1, 0), &model.divisor(0, -2))?.h1;
    Ok((0..m).map(|_| per_curve).sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Rank0Constraint {
    pub eta: i64,
    pub theta: i64,
    /// `deg(-(2 xi + 3 f) c2)`.
    pub c3: i64,
}

impl Rank0Constraint {
    pub fn satisfied(eta: i64, theta: i64) -> bool {
        2 * eta + theta + 1 >= 0 && eta >= 0 && 3 * eta + theta < 0
    }

    /// `chi(T(a xi + b f)) = (2 eta + theta)(-2 - a) + eta(-2 - b)`.
    pub fn twisted_chi(&self, a: i64, b: i64) -> i64 {
        (2 * self.eta + self.theta) * (-2 - a) + self.eta * (-2 - b)
    }

    pub fn sheaf_class(&self, model: ThreefoldModel) -> SheafClass {
        let c2 = model.curve(self.eta, self.theta);
        let c3 = -&(&model.divisor(2, 3) * &c2);
        SheafClass::new(0, model.zero(), c2, c3).expect("homogeneous")
    }
}

pub const RANK0_WINDOW: i64 = 10;

/// `rank0_constraint_solver`: the unique integer solution in `[-w, w]^2`.
pub fn rank0_constraint_solver(window: i64) -> Result<Rank0Constraint> {
    let solutions: Vec<(i64, i64)> = (-window..=window)
        .flat_map(|eta| (-window..=window).map(move |theta| (eta, theta)))
        .filter(|&(eta, theta)| Rank0Constraint::satisfied(eta, theta))
        .collect();
    let &[(eta, theta)] = solutions.as_slice() else {
        return Err(Error::Consistency(format!(
            "expected one solution of the rank-0 constraints, found {solutions:?}"
        )));
    };
    let model = make_model(0)?;
    let c3 = -&(&model.divisor(2, 3) * &model.curve(eta, theta));
    Ok(Rank0Constraint {
        eta,
        theta,
        c3: to_i64(&c3.degree()).expect("integral"),
    })
}

/// `-chi(E(-h))`, the charge computed by Riemann-Roch.
pub fn charge_by_riemann_roch(e: &InstantonClass) -> Result<i64> {
    let twisted = twist(&e.sheaf_class(), &-e.model().h())?;
    Ok(-to_i64(&euler_characteristic(&twisted)?).expect("integral"))
}
