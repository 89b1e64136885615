//! Cohomology on X_c: line bundles through the projection to the plane, and
//! Euler-characteristic arithmetic for the lines `L` and rational cubics `M`.

use serde::Serialize;

use crate::chern::{chern_character, euler_characteristic, SheafClass};
use crate::chow::{make_model, ChowElement};
use crate::error::{Error, Result};
use crate::p2::{sym_power_cohomology, CohomologyTable, SurfaceCohomologyTable};
use crate::rational::{to_i64, Rational};

pub type ThreefoldCohomologyTable = CohomologyTable<4>;

fn pad(t: &SurfaceCohomologyTable, shift: usize) -> ThreefoldCohomologyTable {
    let mut lower = [0; 4];
    let mut upper = [0; 4];
    lower[shift..shift + 3].copy_from_slice(&t.lower());
    upper[shift..shift + 3].copy_from_slice(&t.upper());
    ThreefoldCohomologyTable::bounds(lower, upper)
}

/// `line_cohomology_x`: `h^i(X_c, O(l1*xi + l2*f))`.
pub fn line_cohomology_x(c: i64, l1: i64, l2: i64) -> Result<ThreefoldCohomologyTable> {
    make_model(c)?;
    Ok(match l1 {
        l1 if l1 >= 0 => pad(&sym_power_cohomology(c, l1, l2)?, 0),
        -1 => ThreefoldCohomologyTable::zero(),
        _ => {
            // R^1 pi_* gives (S^k F)^dual (-2) with k = -l1-2, and (S^k F)^dual = S^k F(-2k)
            let k = -l1 - 2;
            pad(&sym_power_cohomology(c, k, l2 - 2 - 2 * k)?, 1)
        }
    })
}

/// A rational curve on X_c cut out by two divisors meeting transversally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CurveModel {
    pub name: &'static str,
    /// Class `a*xi*f + b*f^2` as `(a, b)`.
    pub class: (i64, i64),
    /// Koszul divisors `(D1, D2 | D1 + D2)`, each as `(xi, f)` coefficients.
    pub koszul: [(i64, i64); 2],
    /// Splitting degrees of the normal bundle.
    pub normal_splitting: [i64; 2],
}

impl CurveModel {
    /// A line `L` of class `f^2`: a fiber of the projection.
    pub const LINE: CurveModel = CurveModel {
        name: "L",
        class: (0, 1),
        koszul: [(0, -1), (0, -1)],
        normal_splitting: [0, 0],
    };

    /// A rational cubic `M` of class `xi*f`.
    pub const CUBIC: CurveModel = CurveModel {
        name: "M",
        class: (1, 0),
        koszul: [(-1, 0), (0, -1)],
        normal_splitting: [1, 2],
    };

    pub fn class_in(&self, c: i64) -> Result<ChowElement> {
        Ok(make_model(c)?.curve(self.class.0, self.class.1))
    }

    /// Koszul terms `(sign, divisor)` of `0 -> O(D1+D2) -> O(D1)+O(D2) -> O -> O_curve -> 0`.
    fn koszul_terms(&self) -> [(i64, (i64, i64)); 4] {
        let [(a1, b1), (a2, b2)] = self.koszul;
        [
            (1, (0, 0)),
            (-1, (a1, b1)),
            (-1, (a2, b2)),
            (1, (a1 + a2, b1 + b2)),
        ]
    }

    /// Chern data of `O_curve(D)` from the Koszul resolution.
    pub fn sheaf_class(&self, divisor: &ChowElement) -> Result<SheafClass> {
        check_divisor(divisor)?;
        let model = divisor.model();
        let mut ch = model.zero();
        for (sign, (a, b)) in self.koszul_terms() {
            let line = SheafClass::line_bundle(&(divisor + &model.divisor(a, b)))?;
            ch = &ch + &chern_character(&line).scale_int(sign);
        }
        SheafClass::from_chern_character(0, &ch)
    }
}

fn check_divisor(d: &ChowElement) -> Result<()> {
    if !d.is_homogeneous_of(1) {
        return Err(Error::NotHomogeneous {
            expected: 1,
            what: format!("divisor {d}"),
        });
    }
    Ok(())
}

/// `curve_twisted_chi`: `chi(O_curve(D))` as the alternating Koszul sum.
pub fn curve_twisted_chi(curve: &CurveModel, divisor: &ChowElement) -> Result<Rational> {
    check_divisor(divisor)?;
    let model = divisor.model();
    let mut total = Rational::default();
    for (sign, (a, b)) in curve.koszul_terms() {
        let line = SheafClass::line_bundle(&(divisor + &model.divisor(a, b)))?;
        let chi = euler_characteristic(&line)?;
        if sign > 0 {
            total += chi;
        } else {
            total -= chi;
        }
    }
    Ok(total)
}

/// Cohomology of `O(d)` on a smooth rational curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RestrictionCohomology {
    pub degree: i64,
    pub h0: i64,
    pub h1: i64,
}

pub fn rational_curve_cohomology(d: i64) -> RestrictionCohomology {
    RestrictionCohomology {
        degree: d,
        h0: (d + 1).max(0),
        h1: (-d - 1).max(0),
    }
}

/// `restriction_cohomology`: cohomology of `O(D)` restricted to a rational
/// curve of class `curve_class`.
pub fn restriction_cohomology(
    curve_class: &ChowElement,
    divisor: &ChowElement,
) -> Result<RestrictionCohomology> {
    if !curve_class.is_homogeneous_of(2) {
        return Err(Error::NotHomogeneous {
            expected: 2,
            what: format!("curve class {curve_class}"),
        });
    }
    check_divisor(divisor)?;
    let deg = curve_class.checked_mul(divisor)?.degree();
    let d = to_i64(&deg)
        .ok_or_else(|| Error::Parameter(format!("non-integral restriction degree {deg}")))?;
    Ok(rational_curve_cohomology(d))
}

/// `normal_bundle_sections`: `(h0, h1)` of the recorded normal bundle.
pub fn normal_bundle_sections(curve: &CurveModel) -> (i64, i64) {
    splitting_sections(&curve.normal_splitting)
}

pub fn splitting_sections(degrees: &[i64]) -> (i64, i64) {
    degrees.iter().fold((0, 0), |(h0, h1), &d| {
        let r = rational_curve_cohomology(d);
        (h0 + r.h0, h1 + r.h1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn t4(h: [u64; 4]) -> ThreefoldCohomologyTable {
        ThreefoldCohomologyTable::exact(h)
    }

    #[test]
    fn line_examples() {
        for c in 0..=4 {
            assert_eq!(line_cohomology_x(c, -1, 17).unwrap(), t4([0; 4]));
            assert_eq!(line_cohomology_x(c, -2, 2).unwrap(), t4([0, 1, 0, 0]));
            for d in -6..6 {
                let b = crate::p2::bott_line(d).values().unwrap();
                assert_eq!(
                    line_cohomology_x(c, 0, d).unwrap(),
                    t4([b[0], b[1], b[2], 0])
                );
            }
        }
        // canonical bundle K = -2xi - f has h^3 = 1
        assert_eq!(line_cohomology_x(2, -2, -1).unwrap(), t4([0, 0, 0, 1]));
        assert!(line_cohomology_x(5, 0, 0).is_err());
    }

    #[test]
    fn curve_chi_examples() {
        for c in 0..=4 {
            let model = make_model(c).unwrap();
            for t in -4..5 {
                let d = model.h().scale_int(t);
                assert_eq!(
                    curve_twisted_chi(&CurveModel::CUBIC, &d).unwrap(),
                    int(3 * t + 1)
                );
                assert_eq!(
                    curve_twisted_chi(&CurveModel::LINE, &d).unwrap(),
                    int(t + 1)
                );
            }
        }
    }

    #[test]
    fn curve_degrees() {
        for c in 0..=4 {
            let model = make_model(c).unwrap();
            for (curve, deg) in [(CurveModel::LINE, 1), (CurveModel::CUBIC, 3)] {
                let cls = curve.class_in(c).unwrap();
                assert_eq!((&cls * &model.h()).degree(), int(deg));
                let [(a1, b1), (a2, b2)] = curve.koszul;
                assert_eq!(&model.divisor(a1, b1) * &model.divisor(a2, b2), cls);
            }
        }
    }

    #[test]
    fn line_sheaf_class() {
        for c in 0..=4 {
            let model = make_model(c).unwrap();
            let s = CurveModel::LINE.sheaf_class(&model.h()).unwrap();
            assert_eq!(s.rank(), 0);
            assert!(s.c1().is_zero());
            assert_eq!(s.c2(), &model.curve(0, -1));
            assert_eq!(s.c3(), &model.points(2));
        }
    }

    #[test]
    fn restriction_examples() {
        let model = make_model(1).unwrap();
        let xf = model.curve(1, 0);
        let r = restriction_cohomology(&xf, &model.divisor(2, -1)).unwrap();
        assert_eq!((r.degree, r.h0, r.h1), (3, 4, 0));
        let r = restriction_cohomology(&xf, &model.divisor(0, -1)).unwrap();
        assert_eq!((r.degree, r.h0, r.h1), (-1, 0, 0));
        let r = restriction_cohomology(&xf, &model.divisor(0, -2)).unwrap();
        assert_eq!((r.degree, r.h0, r.h1), (-2, 0, 1));
        assert!(restriction_cohomology(&model.f(), &model.f()).is_err());
    }

    #[test]
    fn normal_bundles() {
        assert_eq!(normal_bundle_sections(&CurveModel::CUBIC), (5, 0));
        assert_eq!(normal_bundle_sections(&CurveModel::LINE), (2, 0));
        assert_eq!(splitting_sections(&[-2, 0]), (1, 1));
    }
}
