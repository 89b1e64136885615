//! Chern-class calculus on X_c: twists, duals, Chern character, Todd class
//! and exact Euler characteristics by Hirzebruch-Riemann-Roch.

use std::sync::OnceLock;

use serde::Serialize;

use crate::chow::{ChowElement, ThreefoldModel};
use crate::error::{Error, Result};
use crate::rational::{binomial, exact_string, frac, int, Rational};

/// Chern data `(rank, c1, c2, c3)` of a coherent sheaf on one X_c.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SheafClass {
    rank: u32,
    c1: ChowElement,
    c2: ChowElement,
    c3: ChowElement,
}

impl SheafClass {
    pub fn new(rank: u32, c1: ChowElement, c2: ChowElement, c3: ChowElement) -> Result<Self> {
        let model = c1.model();
        for (k, c) in [(1, &c1), (2, &c2), (3, &c3)] {
            if c.model() != model {
                return Err(Error::ModelMismatch {
                    left: model.c(),
                    right: c.model().c(),
                });
            }
            if !c.is_homogeneous_of(k) {
                return Err(Error::NotHomogeneous {
                    expected: k,
                    what: format!("c{k} = {c}"),
                });
            }
        }
        Ok(Self { rank, c1, c2, c3 })
    }

    /// Same as [`SheafClass::new`] with `c3 = 0`.
    pub fn without_c3(rank: u32, c1: ChowElement, c2: ChowElement) -> Result<Self> {
        let c3 = c1.model().zero();
        Self::new(rank, c1, c2, c3)
    }

    pub fn structure_sheaf(model: ThreefoldModel) -> Self {
        Self::trivial(model, 1)
    }

    pub fn trivial(model: ThreefoldModel, rank: u32) -> Self {
        Self {
            rank,
            c1: model.zero(),
            c2: model.zero(),
            c3: model.zero(),
        }
    }

    /// `O_X(D)` for a divisor class `D`.
    pub fn line_bundle(divisor: &ChowElement) -> Result<Self> {
        twist(&Self::structure_sheaf(divisor.model()), divisor)
    }

    /// Rank-2 orientable class with `c1 = 2xi + 3f`, `c2 = alpha*xi*f + beta*f^2`, `c3 = 0`.
    pub fn orientable_rank2(model: ThreefoldModel, alpha: i64, beta: i64) -> Self {
        Self {
            rank: 2,
            c1: model.divisor(2, 3),
            c2: model.curve(alpha, beta),
            c3: model.zero(),
        }
    }

    /// Recover Chern classes from a rank and a Chern character via Newton's identities.
    pub fn from_chern_character(rank: u32, ch: &ChowElement) -> Result<Self> {
        if ch.component(0) != ChowElement::scalar(ch.model(), int(rank as i64)) {
            return Err(Error::Consistency(format!(
                "Chern character {ch} does not have rank {rank}"
            )));
        }
        let ch1 = ch.component(1);
        let ch2 = ch.component(2);
        let ch3 = ch.component(3);
        let c1 = ch1.clone();
        // ch2 = (c1^2 - 2 c2)/2
        let c2 = (&(&c1 * &c1) - &ch2.scale_int(2)).scale(&frac(1, 2));
        // ch3 = (c1^3 - 3 c1 c2 + 3 c3)/6
        let c3 = (&(&ch3.scale_int(6) - &c1.pow(3)) + &(&c1 * &c2).scale_int(3)).scale(&frac(1, 3));
        Self::new(rank, c1, c2, c3)
    }

    pub fn model(&self) -> ThreefoldModel {
        self.c1.model()
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn c1(&self) -> &ChowElement {
        &self.c1
    }

    pub fn c2(&self) -> &ChowElement {
        &self.c2
    }

    pub fn c3(&self) -> &ChowElement {
        &self.c3
    }

    pub fn total_chern_class(&self) -> ChowElement {
        &(&(&self.model().one() + &self.c1) + &self.c2) + &self.c3
    }

    /// Whitney sum `s + t`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let total = self
            .total_chern_class()
            .checked_mul(&other.total_chern_class())?;
        Self::new(
            self.rank + other.rank,
            total.component(1),
            total.component(2),
            total.component(3),
        )
    }
}

impl std::fmt::Display for SheafClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "rank {}, c1 = {}, c2 = {}, c3 = {}",
            self.rank,
            self.c1,
            self.c2,
            exact_string(&self.c3.degree())
        )
    }
}

/// `twist`: Chern classes of `s (x) O(D)`, valid for every rank.
pub fn twist(s: &SheafClass, divisor: &ChowElement) -> Result<SheafClass> {
    if divisor.model() != s.model() {
        return Err(Error::ModelMismatch {
            left: s.model().c(),
            right: divisor.model().c(),
        });
    }
    if !divisor.is_homogeneous_of(1) {
        return Err(Error::NotHomogeneous {
            expected: 1,
            what: format!("twist divisor {divisor}"),
        });
    }
    let r = s.rank as i64;
    let d = divisor;
    let d2 = d * d;
    let d3 = &d2 * d;
    let c1 = &s.c1 + &d.scale_int(r);
    let c2 = &(&s.c2 + &(&s.c1 * d).scale_int(r - 1)) + &d2.scale_int(binomial(r, 2));
    let c3 = &(&(&s.c3 + &(&s.c2 * d).scale_int(r - 2))
        + &(&s.c1 * &d2).scale_int(binomial(r - 1, 2)))
        + &d3.scale_int(binomial(r, 3));
    Ok(SheafClass {
        rank: s.rank,
        c1,
        c2,
        c3,
    })
}

/// `dual`: `c_i -> (-1)^i c_i`.
pub fn dual(s: &SheafClass) -> SheafClass {
    SheafClass {
        rank: s.rank,
        c1: -&s.c1,
        c2: s.c2.clone(),
        c3: -&s.c3,
    }
}

/// `chern_character`: `r + c1 + (c1^2 - 2c2)/2 + (c1^3 - 3c1c2 + 3c3)/6`.
pub fn chern_character(s: &SheafClass) -> ChowElement {
    let model = s.model();
    let c1 = &s.c1;
    let c1_sq = c1 * c1;
    let ch2 = (&c1_sq - &s.c2.scale_int(2)).scale(&frac(1, 2));
    let ch3 =
        (&(&(&c1_sq * c1) - &(c1 * &s.c2).scale_int(3)) + &s.c3.scale_int(3)).scale(&frac(1, 6));
    &(&(&ChowElement::scalar(model, int(s.rank as i64)) + c1) + &ch2) + &ch3
}

/// `todd_class`: `1 + c1/2 + (c1^2 + c2)/12 + c1c2/24` of the tangent bundle.
pub fn todd_class(model: ThreefoldModel) -> ChowElement {
    static TODD: OnceLock<Vec<ChowElement>> = OnceLock::new();
    let all = TODD.get_or_init(|| {
        (0..=4)
            .map(|c| compute_todd(ThreefoldModel::new(c).expect("c in range")))
            .collect()
    });
    all[model.c() as usize].clone()
}

fn compute_todd(model: ThreefoldModel) -> ChowElement {
    let c1 = model.tangent_c1();
    let c2 = model.tangent_c2();
    let td2 = (&(&c1 * &c1) + &c2).scale(&frac(1, 12));
    let td3 = (&c1 * &c2).scale(&frac(1, 24));
    &(&(&model.one() + &c1.scale(&frac(1, 2))) + &td2) + &td3
}

/// Degree of `ch(s) * td(X)`, possibly non-integral.
pub fn hrr_degree(s: &SheafClass) -> Rational {
    (&chern_character(s) * &todd_class(s.model())).degree()
}

/// `euler_characteristic`: exact HRR value, which must be an integer.
pub fn euler_characteristic(s: &SheafClass) -> Result<Rational> {
    let chi = hrr_degree(s);
    if !chi.is_integer() {
        return Err(Error::Consistency(format!(
            "non-integral Euler characteristic {} for class ({s})",
            exact_string(&chi)
        )));
    }
    Ok(chi)
}

/// `endomorphism_class`: Chern data of `E (x) E^dual` for a rank-2 class.
pub fn endomorphism_class(s: &SheafClass) -> Result<SheafClass> {
    if s.rank != 2 {
        return Err(Error::Parameter(format!(
            "endomorphism class needs rank 2, got rank {}",
            s.rank
        )));
    }
    let model = s.model();
    let c2 = &s.c2.scale_int(4) - &(&s.c1 * &s.c1);
    Ok(SheafClass {
        rank: 4,
        c1: model.zero(),
        c2,
        c3: model.zero(),
    })
}

/// Inputs of the closed-form Riemann-Roch polynomial of a rank-2 orientable
/// class twisted by `lambda1*xi + lambda2*f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub struct RRPolynomialInputs {
    pub alpha: i64,
    pub beta: i64,
    pub lambda1: i64,
    pub lambda2: i64,
    pub c: i64,
}

/// `rr_closed_form`: the explicit cubic in `(lambda1, lambda2)`.
pub fn rr_closed_form(p: &RRPolynomialInputs) -> Rational {
    let (a, b, l1, l2, c) = (p.alpha, p.beta, p.lambda1, p.lambda2, p.c);
    let q = |n: i64| int(n);
    frac(4 - c, 3) * q(l1 * l1 * l1)
        + q(2 * l1 * l1 * l2)
        + q(l1 * l2 * l2)
        + q((12 - 2 * c) * l1 * l1)
        + q(12 * l1 * l2)
        + q(2 * l2 * l2)
        + (frac(143 - 14 * c, 3) - q(2 * a) - q(b)) * q(l1)
        + q((21 - a) * l2)
        + q(-6 * a - 2 * b + 68 - 4 * c)
}
