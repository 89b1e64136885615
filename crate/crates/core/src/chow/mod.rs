//! Graded Chow ring A(X_c) of the ruled threefold X_c = P(F_c) over the plane.
//!
//! A(X_c) is free of rank 6 with ordered basis `1; xi, f; xi*f, f^2; xi*f^2`
//! and relations `xi^2 = 2*xi*f - c*f^2`, `f^3 = 0`. Elements are always held
//! in normal form over that basis with exact rational coefficients.

mod parse;

pub use parse::parse_expression;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{exact_string, int, Rational};

/// Exponent pairs `(xi, f)` of the normal-form basis, in serialization order.
pub const BASIS: [(u32, u32); 6] = [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)];

/// Graded degree of each basis slot.
pub const BASIS_DEGREE: [usize; 6] = [0, 1, 1, 2, 2, 3];

const BASIS_NAMES: [&str; 6] = ["1", "xi", "f", "xi*f", "f^2", "xi*f^2"];

/// Index of the single top-degree basis monomial `xi*f^2`.
const TOP: usize = 5;

type ProductTable = [[[i64; 6]; 6]; 6];

/// The fixed geometric data of X_c, `c` in `0..=4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThreefoldModel {
    c: u8,
}

/// `make_model`: validate `c` and build the model.
pub fn make_model(c: i64) -> Result<ThreefoldModel> {
    ThreefoldModel::new(c)
}

impl ThreefoldModel {
    pub fn new(c: i64) -> Result<Self> {
        if !(0..=4).contains(&c) {
            return Err(Error::Parameter(format!("c must lie in 0..=4, got {c}")));
        }
        Ok(Self { c: c as u8 })
    }

    pub fn c(&self) -> u8 {
        self.c
    }

    /// Coefficients `(p, q)` of the relation `xi^2 = p*xi*f + q*f^2`.
    pub fn xi_squared_relation(&self) -> (i64, i64) {
        (2, -(self.c as i64))
    }

    /// Degrees of `(xi^3, xi^2*f, xi*f^2, f^3)`.
    pub fn degree_table(&self) -> [i64; 4] {
        [4 - self.c as i64, 2, 1, 0]
    }

    pub fn zero(&self) -> ChowElement {
        ChowElement::zero(*self)
    }

    pub fn one(&self) -> ChowElement {
        self.basis(0)
    }

    pub fn xi(&self) -> ChowElement {
        self.basis(1)
    }

    pub fn f(&self) -> ChowElement {
        self.basis(2)
    }

    /// Polarization `h = xi + f`.
    pub fn h(&self) -> ChowElement {
        self.xi() + self.f()
    }

    /// `K_X = -2xi - f`.
    pub fn canonical(&self) -> ChowElement {
        self.divisor(-2, -1)
    }

    /// `c_1(T_X) = 2xi + f`.
    pub fn tangent_c1(&self) -> ChowElement {
        self.divisor(2, 1)
    }

    /// `c_2(T_X) = 6xi*f - 3f^2`.
    pub fn tangent_c2(&self) -> ChowElement {
        self.curve(6, -3)
    }

    /// The divisor class `a*xi + b*f`.
    pub fn divisor(&self, a: i64, b: i64) -> ChowElement {
        let mut e = self.zero();
        e.coeffs[1] = int(a);
        e.coeffs[2] = int(b);
        e
    }

    /// The curve class `a*xi*f + b*f^2`.
    pub fn curve(&self, a: i64, b: i64) -> ChowElement {
        let mut e = self.zero();
        e.coeffs[3] = int(a);
        e.coeffs[4] = int(b);
        e
    }

    /// `n` times the point class `xi*f^2`.
    pub fn points(&self, n: i64) -> ChowElement {
        let mut e = self.zero();
        e.coeffs[TOP] = int(n);
        e
    }

    pub fn basis(&self, slot: usize) -> ChowElement {
        let mut e = self.zero();
        e.coeffs[slot] = Rational::one();
        e
    }

    /// Normal form of the monomial `xi^i * f^j`.
    pub fn monomial(&self, i: u32, j: u32) -> ChowElement {
        let coeffs = self.reduce_monomial(i, j);
        ChowElement {
            model: *self,
            coeffs: coeffs.map(int),
        }
    }

    /// Integer normal-form coefficients of `xi^i * f^j`, obtained by rewriting
    /// `xi^2 -> 2 xi f - c f^2` and `f^3 -> 0`. Monomials above degree 3 vanish.
    pub fn reduce_monomial(&self, i: u32, j: u32) -> [i64; 6] {
        let mut out = [0i64; 6];
        if i + j > 3 || j >= 3 {
            return out;
        }
        if i <= 1 {
            let slot = BASIS
                .iter()
                .position(|&m| m == (i, j))
                .expect("basis monomial");
            out[slot] = 1;
            return out;
        }
        let (p, q) = self.xi_squared_relation();
        let first = self.reduce_monomial(i - 1, j + 1);
        let second = self.reduce_monomial(i - 2, j + 2);
        for k in 0..6 {
            out[k] = p * first[k] + q * second[k];
        }
        out
    }

    fn product_table(&self) -> &'static ProductTable {
        static TABLES: OnceLock<[ProductTable; 5]> = OnceLock::new();
        let tables = TABLES.get_or_init(|| {
            std::array::from_fn(|c| ThreefoldModel { c: c as u8 }.build_product_table())
        });
        &tables[self.c as usize]
    }

    fn build_product_table(&self) -> ProductTable {
        let mut table = [[[0i64; 6]; 6]; 6];
        for (a, &(ia, ja)) in BASIS.iter().enumerate() {
            for (b, &(ib, jb)) in BASIS.iter().enumerate() {
                table[a][b] = self.reduce_monomial(ia + ib, ja + jb);
            }
        }
        table
    }
}

/// An element of A(X_c) in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChowElement {
    model: ThreefoldModel,
    coeffs: [Rational; 6],
}

impl ChowElement {
    pub fn zero(model: ThreefoldModel) -> Self {
        Self {
            model,
            coeffs: std::array::from_fn(|_| Rational::zero()),
        }
    }

    pub fn from_coefficients(model: ThreefoldModel, coeffs: [Rational; 6]) -> Self {
        Self { model, coeffs }
    }

    pub fn scalar(model: ThreefoldModel, value: Rational) -> Self {
        let mut e = Self::zero(model);
        e.coeffs[0] = value;
        e
    }

    pub fn model(&self) -> ThreefoldModel {
        self.model
    }

    /// Coefficients over `1; xi, f; xi*f, f^2; xi*f^2`.
    pub fn coefficients(&self) -> &[Rational; 6] {
        &self.coeffs
    }

    pub fn coefficient(&self, slot: usize) -> &Rational {
        &self.coeffs[slot]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_model(&self, other: &Self) -> Result<()> {
        if self.model != other.model {
            return Err(Error::ModelMismatch {
                left: self.model.c,
                right: other.model.c,
            });
        }
        Ok(())
    }

    /// `ring_add`.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_model(other)?;
        let coeffs = small_combination(&self.coeffs, 1, &other.coeffs)
            .unwrap_or_else(|| std::array::from_fn(|k| &self.coeffs[k] + &other.coeffs[k]));
        Ok(Self {
            model: self.model,
            coeffs,
        })
    }

    /// `ring_mul`: distribute and reduce to normal form. Anything above
    /// degree 3 truncates to zero.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_model(other)?;
        let table = self.model.product_table();
        if let Some(out) = small_product(table, &self.coeffs, &other.coeffs) {
            return Ok(Self {
                model: self.model,
                coeffs: out,
            });
        }
        let mut out = Self::zero(self.model);
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() || BASIS_DEGREE[a] + BASIS_DEGREE[b] > 3 {
                    continue;
                }
                let prod = ca * cb;
                for (k, &t) in table[a][b].iter().enumerate() {
                    if t != 0 {
                        out.coeffs[k] += &prod * int(t);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if let (Some(sn), Some(sd), Some((nums, den))) = (
            s.numer().to_i128(),
            s.denom().to_i128(),
            small_form(&self.coeffs),
        ) {
            let scaled = nums
                .iter()
                .map(|n| n.checked_mul(sn))
                .collect::<Option<Vec<_>>>();
            if let (Some(scaled), Some(den)) = (scaled, den.checked_mul(sd)) {
                return Self {
                    model: self.model,
                    coeffs: from_small(std::array::from_fn(|k| scaled[k]), den),
                };
            }
        }
        Self {
            model: self.model,
            coeffs: std::array::from_fn(|k| &self.coeffs[k] * s),
        }
    }

    pub fn scale_int(&self, s: i64) -> Self {
        self.scale(&int(s))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = self.model.one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Pushforward to a point: the coefficient of `xi*f^2`.
    pub fn degree(&self) -> Rational {
        self.coeffs[TOP].clone()
    }

    /// Projection onto graded degree `k`.
    pub fn graded_component(&self, k: usize) -> Result<Self> {
        if k > 3 {
            return Err(Error::Parameter(format!(
                "graded degree must lie in 0..=3, got {k}"
            )));
        }
        Ok(self.component(k))
    }

    pub(crate) fn component(&self, k: usize) -> Self {
        Self {
            model: self.model,
            coeffs: std::array::from_fn(|s| {
                if BASIS_DEGREE[s] == k {
                    self.coeffs[s].clone()
                } else {
                    Rational::zero()
                }
            }),
        }
    }

    /// True when every nonzero coefficient sits in graded degree `k`.
    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.coeffs
            .iter()
            .zip(BASIS_DEGREE)
            .all(|(c, d)| d == k || c.is_zero())
    }

    /// `(a, b)` of a degree-1 class `a*xi + b*f`, or of a degree-2 class
    /// `a*xi*f + b*f^2`.
    pub fn pair(&self, k: usize) -> Option<(Rational, Rational)> {
        match k {
            1 => Some((self.coeffs[1].clone(), self.coeffs[2].clone())),
            2 => Some((self.coeffs[3].clone(), self.coeffs[4].clone())),
            _ => None,
        }
    }
}

impl fmt::Display for ChowElement {
    /// Writes the normal form in a syntax the expression parser accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (slot, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            if slot == 0 {
                f.write_str(&exact_string(&mag))?;
            } else if mag.is_one() {
                f.write_str(BASIS_NAMES[slot])?;
            } else {
                write!(f, "{}*{}", exact_string(&mag), BASIS_NAMES[slot])?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    c: u8,
    coefficients: Vec<String>,
}

impl Serialize for ChowElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            c: self.model.c,
            coefficients: self.coeffs.iter().map(exact_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChowElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ElementRepr::deserialize(d)?;
        let model = ThreefoldModel::new(repr.c as i64).map_err(D::Error::custom)?;
        if repr.coefficients.len() != 6 {
            return Err(D::Error::custom("expected 6 coefficients"));
        }
        let mut coeffs: [Rational; 6] = std::array::from_fn(|_| Rational::zero());
        for (slot, s) in repr.coefficients.iter().enumerate() {
            coeffs[slot] = crate::rational::parse_exact(s)
                .ok_or_else(|| D::Error::custom(format!("bad coefficient {s:?}")))?;
        }
        Ok(Self { model, coeffs })
    }
}

// Operator forms panic on a model mismatch; use `checked_*` for untrusted input.

/// Numerators over one common denominator, when all of it fits in i128.
fn small_form(coeffs: &[Rational; 6]) -> Option<([i128; 6], i128)> {
    let mut den: i128 = 1;
    for q in coeffs {
        let d = q.denom().to_i128()?;
        den = den.checked_mul(d / den.gcd(&d))?;
    }
    let mut nums = [0i128; 6];
    for (n, q) in nums.iter_mut().zip(coeffs) {
        *n = q
            .numer()
            .to_i128()?
            .checked_mul(den / q.denom().to_i128()?)?;
    }
    Some((nums, den))
}

/// Machine-integer product; `None` on overflow so the caller falls back to
/// big rationals.
fn small_product(
    table: &ProductTable,
    x: &[Rational; 6],
    y: &[Rational; 6],
) -> Option<[Rational; 6]> {
    let (xn, xd) = small_form(x)?;
    let (yn, yd) = small_form(y)?;
    let mut acc = [0i128; 6];
    for (a, &ca) in xn.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (b, &cb) in yn.iter().enumerate() {
            if cb == 0 || BASIS_DEGREE[a] + BASIS_DEGREE[b] > 3 {
                continue;
            }
            let prod = ca.checked_mul(cb)?;
            for (k, &t) in table[a][b].iter().enumerate() {
                if t != 0 {
                    acc[k] = acc[k].checked_add(prod.checked_mul(t as i128)?)?;
                }
            }
        }
    }
    Some(from_small(acc, xd.checked_mul(yd)?))
}

/// Elementwise `x + s*y` in machine integers.
fn small_combination(x: &[Rational; 6], s: i128, y: &[Rational; 6]) -> Option<[Rational; 6]> {
    let (xn, xd) = small_form(x)?;
    let (yn, yd) = small_form(y)?;
    let g = xd.gcd(&yd);
    let (fx, fy) = (yd / g, xd / g);
    let mut acc = [0i128; 6];
    for k in 0..6 {
        acc[k] = xn[k]
            .checked_mul(fx)?
            .checked_add(yn[k].checked_mul(fy)?.checked_mul(s)?)?;
    }
    Some(from_small(acc, xd.checked_mul(fx)?))
}

fn from_small(nums: [i128; 6], den: i128) -> [Rational; 6] {
    nums.map(|n| {
        if n == 0 {
            Rational::zero()
        } else if n == i128::MIN {
            Rational::new(BigInt::from(n), BigInt::from(den))
        } else if den == 1 {
            Rational::from_integer(BigInt::from(n))
        } else {
            // den > 0 throughout, so only the gcd needs removing
            let g = n.gcd(&den);
            Rational::new_raw(BigInt::from(n / g), BigInt::from(den / g))
        }
    })
}

impl Add for &ChowElement {
    type Output = ChowElement;
    fn add(self, rhs: &ChowElement) -> ChowElement {
        self.checked_add(rhs).expect("ChowElement addition")
    }
}

impl Add for ChowElement {
    type Output = ChowElement;
    fn add(self, rhs: ChowElement) -> ChowElement {
        &self + &rhs
    }
}

impl Sub for &ChowElement {
    type Output = ChowElement;
    fn sub(self, rhs: &ChowElement) -> ChowElement {
        self.check_model(rhs).expect("ChowElement subtraction");
        match small_combination(&self.coeffs, -1, &rhs.coeffs) {
            Some(coeffs) => ChowElement {
                model: self.model,
                coeffs,
            },
            None => self + &(-rhs),
        }
    }
}

impl Sub for ChowElement {
    type Output = ChowElement;
    fn sub(self, rhs: ChowElement) -> ChowElement {
        &self - &rhs
    }
}

impl Neg for &ChowElement {
    type Output = ChowElement;
    fn neg(self) -> ChowElement {
        ChowElement {
            model: self.model,
            coeffs: std::array::from_fn(|k| -&self.coeffs[k]),
        }
    }
}

impl Neg for ChowElement {
    type Output = ChowElement;
    fn neg(self) -> ChowElement {
        -&self
    }
}

impl Mul for &ChowElement {
    type Output = ChowElement;
    fn mul(self, rhs: &ChowElement) -> ChowElement {
        self.checked_mul(rhs).expect("ChowElement multiplication")
    }
}

impl Mul for ChowElement {
    type Output = ChowElement;
    fn mul(self, rhs: ChowElement) -> ChowElement {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn model(c: i64) -> ThreefoldModel {
        make_model(c).unwrap()
    }

    #[test]
    fn make_model_range() {
        assert_eq!(model(2).xi_squared_relation(), (2, -2));
        assert_eq!(model(2).degree_table()[0], 2);
        assert_eq!(model(0).degree_table()[0], 4);
        assert!(matches!(make_model(5), Err(Error::Parameter(_))));
        assert!(make_model(-1).is_err());
    }

    #[test]
    fn canonical_is_minus_tangent_c1() {
        for c in 0..=4 {
            let m = model(c);
            assert_eq!(m.canonical(), -m.tangent_c1());
        }
    }

    #[test]
    fn addition_examples() {
        let m = model(3);
        assert_eq!(m.xi() + m.xi(), m.divisor(2, 0));
        let xf = m.curve(1, 0);
        assert!((&xf + &xf.scale_int(-1)).is_zero());
        assert_eq!(m.divisor(1, 1) + m.divisor(1, -1), m.divisor(2, 0));
    }

    #[test]
    fn multiplication_examples() {
        let m2 = model(2);
        assert_eq!(&m2.xi() * &m2.xi(), m2.curve(2, -2));
        for c in 0..=4 {
            let m = model(c);
            assert!(m.f().pow(3).is_zero());
        }
        let m0 = model(0);
        assert_eq!(m0.h().pow(2), m0.curve(4, 1));
    }

    #[test]
    fn degree_examples() {
        for c in 0..=4 {
            let m = model(c);
            assert_eq!(m.xi().pow(3).degree(), int(4 - c));
            assert_eq!((m.xi().pow(2) * m.f()).degree(), int(2));
            assert_eq!(m.h().pow(3).degree(), int(13 - c));
        }
    }

    #[test]
    fn mismatched_models() {
        let a = model(1).xi();
        let b = model(2).xi();
        assert_eq!(
            a.checked_add(&b),
            Err(Error::ModelMismatch { left: 1, right: 2 })
        );
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn graded_components() {
        let m = model(1);
        let e = m.one() + m.xi() + m.curve(1, 0);
        assert_eq!(e.graded_component(1).unwrap(), m.xi());
        assert_eq!(m.points(1).graded_component(3).unwrap(), m.points(1));
        assert!(m.xi().graded_component(2).unwrap().is_zero());
        assert!(e.graded_component(4).is_err());
    }

    #[test]
    fn display_forms() {
        let m = model(1);
        assert_eq!(m.xi().pow(2).to_string(), "2*xi*f - f^2");
        assert_eq!(m.zero().to_string(), "0");
        let e = m.one().scale(&frac(-1, 2)) + m.xi();
        assert_eq!(e.to_string(), "-1/2 + xi");
    }

    #[test]
    fn serde_round_trip() {
        let m = model(4);
        let e = m.h().pow(2).scale(&frac(3, 7));
        let s = serde_json::to_string(&e).unwrap();
        let back: ChowElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }
}
