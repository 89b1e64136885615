//! Cohomology on the plane: Bott's formula for `O(d)` and symmetric powers
//! `S^m F_c(b)` of the five rank-2 Fano bundles, via their resolutions.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{choose, frac, int, Rational};

/// Dimensions `h^0..h^{N-1}`, either exact or bracketed by `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CohomologyTable<const N: usize> {
    lower: [u64; N],
    upper: [u64; N],
}

pub type SurfaceCohomologyTable = CohomologyTable<3>;

impl<const N: usize> CohomologyTable<N> {
    pub fn exact(h: [u64; N]) -> Self {
        Self { lower: h, upper: h }
    }

    pub fn bounds(lower: [u64; N], upper: [u64; N]) -> Self {
        debug_assert!(lower.iter().zip(&upper).all(|(l, u)| l <= u));
        Self { lower, upper }
    }

    pub fn zero() -> Self {
        Self::exact([0; N])
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// The dimensions when exact.
    pub fn values(&self) -> Option<[u64; N]> {
        self.is_exact().then_some(self.lower)
    }

    pub fn lower(&self) -> [u64; N] {
        self.lower
    }

    pub fn upper(&self) -> [u64; N] {
        self.upper
    }

    /// `h^i`; panics on a bounds-only entry that is not pinned.
    pub fn h(&self, i: usize) -> u64 {
        assert_eq!(self.lower[i], self.upper[i], "h^{i} is only bracketed");
        self.lower[i]
    }

    pub fn euler_characteristic(&self) -> Option<i64> {
        self.values().map(|h| {
            h.iter()
                .enumerate()
                .map(|(i, &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) })
                .sum()
        })
    }

    pub fn reversed(&self) -> Self {
        let mut lower = self.lower;
        let mut upper = self.upper;
        lower.reverse();
        upper.reverse();
        Self { lower, upper }
    }

    /// `n` copies.
    pub fn times(&self, n: u64) -> Self {
        Self {
            lower: self.lower.map(|v| v * n),
            upper: self.upper.map(|v| v * n),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..N {
            out.lower[i] += other.lower[i];
            out.upper[i] += other.upper[i];
        }
        out
    }
}

impl<const N: usize> std::fmt::Display for CohomologyTable<N> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..N {
            if i > 0 {
                f.write_str(" ")?;
            }
            if self.lower[i] == self.upper[i] {
                write!(f, "h{i}={}", self.lower[i])?;
            } else {
                write!(f, "h{i}=[{},{}]", self.lower[i], self.upper[i])?;
            }
        }
        if !self.is_exact() {
            f.write_str(" (bounds only)")?;
        }
        Ok(())
    }
}

impl<const N: usize> Serialize for CohomologyTable<N> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_exact() {
            let mut st = s.serialize_struct("CohomologyTable", 2)?;
            st.serialize_field("exact", &true)?;
            st.serialize_field("h", &self.lower.to_vec())?;
            st.end()
        } else {
            let mut st = s.serialize_struct("CohomologyTable", 3)?;
            st.serialize_field("exact", &false)?;
            st.serialize_field("lower", &self.lower.to_vec())?;
            st.serialize_field("upper", &self.upper.to_vec())?;
            st.end()
        }
    }
}

/// How `F_c` is presented by line bundles on the plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Presentation {
    /// `F = O(d_1) + O(d_2)`.
    SplitSum { degrees: [i64; 2] },
    /// `0 -> O(kernel) -> O(a_1)+...+O(a_n) -> F -> 0`.
    LineKernel { ambient: Vec<i64>, kernel: i64 },
    /// `0 -> O(k_1)+O(k_2) -> O(a_1)+...+O(a_n) -> F -> 0`.
    Rank2Kernel { ambient: Vec<i64>, kernel: [i64; 2] },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanoBundleData {
    pub c: u8,
    pub presentation: Presentation,
}

impl FanoBundleData {
    /// `(c1, c2)` read off the presentation, as integers on the plane.
    pub fn chern_numbers(&self) -> (i64, i64) {
        // c(F) = c(ambient) / c(kernel), truncated at degree 2
        let (amb, ker): (Vec<i64>, Vec<i64>) = match &self.presentation {
            Presentation::SplitSum { degrees } => (degrees.to_vec(), vec![]),
            Presentation::LineKernel { ambient, kernel } => (ambient.clone(), vec![*kernel]),
            Presentation::Rank2Kernel { ambient, kernel } => (ambient.clone(), kernel.to_vec()),
        };
        let e1 = |v: &[i64]| v.iter().sum::<i64>();
        let e2 = |v: &[i64]| {
            let mut s = 0;
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    s += v[i] * v[j];
                }
            }
            s
        };
        // inverse of 1 + k1 t + k2 t^2 is 1 - k1 t + (k1^2 - k2) t^2
        let (k1, k2) = (e1(&ker), e2(&ker));
        let (i1, i2) = (-k1, k1 * k1 - k2);
        let (a1, a2) = (e1(&amb), e2(&amb));
        (a1 + i1, a2 + a1 * i1 + i2)
    }
}

/// Chern numbers and presentation of `F_c`.
pub fn fano_bundle(c: i64) -> Result<FanoBundleData> {
    let presentation = match c {
        0 => Presentation::SplitSum { degrees: [0, 2] },
        1 => Presentation::SplitSum { degrees: [1, 1] },
        2 => Presentation::LineKernel {
            ambient: vec![1, 0, 0],
            kernel: -1,
        },
        3 => Presentation::Rank2Kernel {
            ambient: vec![0, 0, 0, 0],
            kernel: [-1, -1],
        },
        4 => Presentation::LineKernel {
            ambient: vec![0, 0, 0],
            kernel: -2,
        },
        _ => return Err(Error::Parameter(format!("c must lie in 0..=4, got {c}"))),
    };
    Ok(FanoBundleData {
        c: c as u8,
        presentation,
    })
}

fn bott_values(d: i64) -> [i64; 3] {
    [
        if d >= 0 { choose(d + 2, 2) } else { 0 },
        0,
        if d <= -3 { choose(-d - 1, 2) } else { 0 },
    ]
}

/// `bott_line`: cohomology of `O(d)` on the plane.
pub fn bott_line(d: i64) -> SurfaceCohomologyTable {
    SurfaceCohomologyTable::exact(bott_values(d).map(|v| v as u64))
}

/// Multiset of degrees of `S^j(O(a_1)+...+O(a_n))`, as (degree, multiplicity).
fn sym_degrees(ambient: &[i64], j: i64) -> Vec<(i64, i64)> {
    if j < 0 {
        return Vec::new();
    }
    // dp[k]: degree multiset of S^k over the summands seen so far
    let mut dp: Vec<std::collections::BTreeMap<i64, i64>> =
        vec![Default::default(); j as usize + 1];
    dp[0].insert(0, 1);
    for &a in ambient {
        // unbounded knapsack: allow any number of copies of this summand
        for k in 1..=j as usize {
            let prev: Vec<(i64, i64)> = dp[k - 1].iter().map(|(&d, &n)| (d, n)).collect();
            for (d, n) in prev {
                *dp[k].entry(d + a).or_insert(0) += n;
            }
        }
    }
    dp[j as usize].iter().map(|(&d, &n)| (d, n)).collect()
}

fn sum_h(degrees: &[(i64, i64)], shift: i64, i: usize) -> i64 {
    degrees
        .iter()
        .map(|&(d, n)| n * bott_values(d + shift)[i])
        .sum()
}

/// Raw data of the line-kernel chase at one twist: exact `h^0`, and `h^2`
/// when the kernel has no `H^2`.
fn line_kernel_raw(ambient: &[i64], kernel: i64, m: i64, b: i64) -> (i64, Option<i64>) {
    let mid = sym_degrees(ambient, m);
    let left = sym_degrees(ambient, m - 1);
    let h0 = sum_h(&mid, b, 0) - sum_h(&left, b + kernel, 0);
    let h2_left = sum_h(&left, b + kernel, 2);
    let h2 = (h2_left == 0).then(|| sum_h(&mid, b, 2));
    (h0, h2)
}

/// Twist dual to `b` for `S^m F`: `(S^m F(b))^dual (x) K = S^m F(-2m-b-3)`.
pub fn dual_twist(m: i64, b: i64) -> i64 {
    -2 * m - b - 3
}

fn to_table(c: u8, m: i64, b: i64, h: [i64; 3]) -> Result<SurfaceCohomologyTable> {
    if h.iter().any(|&v| v < 0) {
        return Err(Error::Presentation {
            c,
            m: m as u32,
            b,
            detail: format!("negative dimension in {h:?}"),
        });
    }
    Ok(SurfaceCohomologyTable::exact(h.map(|v| v as u64)))
}

fn line_kernel_table(
    c: u8,
    ambient: &[i64],
    kernel: i64,
    m: i64,
    b: i64,
) -> Result<SurfaceCohomologyTable> {
    let (h0, h2_direct) = line_kernel_raw(ambient, kernel, m, b);
    let (h0_dual, h2_dual_direct) = line_kernel_raw(ambient, kernel, m, dual_twist(m, b));
    let inconsistent = |detail: String| Error::Presentation {
        c,
        m: m as u32,
        b,
        detail,
    };
    if let Some(h2) = h2_direct {
        if h2 != h0_dual {
            return Err(inconsistent(format!(
                "h2 = {h2} but the Serre dual has h0 = {h0_dual}"
            )));
        }
    }
    if let Some(h2d) = h2_dual_direct {
        if h2d != h0 {
            return Err(inconsistent(format!(
                "h0 = {h0} but the Serre dual has h2 = {h2d}"
            )));
        }
    }
    let h2 = h0_dual;
    let mid = sym_degrees(ambient, m);
    let left = sym_degrees(ambient, m - 1);
    // 0 -> H^1 S -> H^2 K -> H^2 M -> H^2 S -> 0
    let h1 = sum_h(&left, b + kernel, 2) - sum_h(&mid, b, 2) + h2;
    let chi = surface_chi(c as i64, m, b);
    if int(h0 - h1 + h2) != chi {
        return Err(inconsistent(format!(
            "alternating sum {} differs from Riemann-Roch value {chi}",
            h0 - h1 + h2
        )));
    }
    to_table(c, m, b, [h0, h1, h2])
}

/// `h^0` of `S^m F_3(b)` as an interval, from the Koszul resolution
/// `0 -> O(b-2)^p -> O(b-1)^q -> O(b)^r -> S^m F_3(b) -> 0`.
fn koszul_h0(m: i64, b: i64) -> (i64, i64) {
    let p = choose(m + 1, 3);
    let q = 2 * choose(m + 2, 3);
    let r = choose(m + 3, 3);
    let [h0p, _, h2p] = bott_values(b - 2).map(|v| v * p);
    let [h0q, _, h2q] = bott_values(b - 1).map(|v| v * q);
    let h0r = r * bott_values(b)[0];
    // I = coker(P -> Q): h^0 I = h^0 Q - h^0 P; h^1 I = dim ker(H^2 P -> H^2 Q)
    let h0i = h0q - h0p;
    let (lo, hi) = if h2p == 0 || h2q == 0 {
        (h2p, h2p)
    } else {
        ((h2p - h2q).max(0), h2p)
    };
    // H^0 R -> H^0 S -> H^1 I -> H^1 R = 0
    (h0r - h0i + lo, h0r - h0i + hi)
}

/// Full table when `H^2(O(b-1)) = 0`, where every connecting map is forced.
fn koszul_forced(m: i64, b: i64) -> Option<[i64; 3]> {
    if bott_values(b - 1)[2] != 0 {
        return None;
    }
    // H^2 I is a quotient of H^2 Q = 0, so H^1 S = 0 and H^2 S = H^2 R
    let (h0, _) = koszul_h0(m, b);
    Some([h0, 0, choose(m + 3, 3) * bott_values(b)[2]])
}

fn koszul_table(m: i64, b: i64) -> Result<SurfaceCohomologyTable> {
    let chi: i64 = surface_chi(3, m, b)
        .to_integer()
        .try_into()
        .map_err(|_| Error::Consistency("Euler characteristic overflow".into()))?;
    let inconsistent = |detail: String| Error::Presentation {
        c: 3,
        m: m as u32,
        b,
        detail,
    };
    let dual = dual_twist(m, b);
    let forced = koszul_forced(m, b).or_else(|| {
        koszul_forced(m, dual).map(|mut h| {
            h.reverse();
            h
        })
    });
    if let Some(h) = forced {
        if h[0] - h[1] + h[2] != chi {
            return Err(inconsistent(format!(
                "alternating sum {} differs from Riemann-Roch value {chi}",
                h[0] - h[1] + h[2]
            )));
        }
        return to_table(3, m, b, h);
    }
    let (lo0, hi0) = koszul_h0(m, b);
    let (lo2, hi2) = koszul_h0(m, dual);
    // h^1 = h^0 + h^2 - chi >= 0
    let lo0 = lo0.max(chi - hi2);
    let lo2 = lo2.max(chi - hi0);
    let lo1 = (lo0 + lo2 - chi).max(0);
    let hi1 = hi0 + hi2 - chi;
    if hi1 < 0 || lo0 > hi0 || lo2 > hi2 {
        return Err(inconsistent("empty cohomology interval".into()));
    }
    let table = SurfaceCohomologyTable::bounds(
        [lo0 as u64, lo1 as u64, lo2 as u64],
        [hi0 as u64, hi1 as u64, hi2 as u64],
    );
    if let Some(e) = table.euler_characteristic() {
        if e != chi {
            return Err(inconsistent(format!(
                "alternating sum {e} differs from Riemann-Roch value {chi}"
            )));
        }
    }
    Ok(table)
}

fn split_table(degrees: [i64; 2], m: i64, b: i64) -> SurfaceCohomologyTable {
    (0..=m).fold(SurfaceCohomologyTable::zero(), |acc, k| {
        acc.plus(&bott_line(k * degrees[0] + (m - k) * degrees[1] + b))
    })
}

fn check_m(m: i64) -> Result<()> {
    if m < 0 {
        return Err(Error::Parameter(format!(
            "symmetric power m must be >= 0, got {m}"
        )));
    }
    Ok(())
}

/// `sym_power_cohomology`: `h^i(P^2, S^m F_c (x) O(b))`.
pub fn sym_power_cohomology(c: i64, m: i64, b: i64) -> Result<SurfaceCohomologyTable> {
    check_m(m)?;
    let data = fano_bundle(c)?;
    match &data.presentation {
        Presentation::SplitSum { degrees } => Ok(split_table(*degrees, m, b)),
        Presentation::LineKernel { ambient, kernel } => {
            line_kernel_table(data.c, ambient, *kernel, m, b)
        }
        Presentation::Rank2Kernel { .. } => koszul_table(m, b),
    }
}

/// Same as [`sym_power_cohomology`] for `c` in `{0, 1}` but through the
/// line-kernel chase on a degenerate presentation `O -> F + O`.
pub fn sym_power_cohomology_via_kernel(c: i64, m: i64, b: i64) -> Result<SurfaceCohomologyTable> {
    check_m(m)?;
    let ambient = match c {
        0 => [0, 2, 0],
        1 => [1, 1, 0],
        _ => {
            return Err(Error::Parameter(format!(
                "degenerate presentation exists only for split bundles, got c = {c}"
            )))
        }
    };
    line_kernel_table(c as u8, &ambient, 0, m, b)
}

/// `surface_chi`: Riemann-Roch on the plane for `S^m F_c(b)` from the Chern
/// roots of the symmetric power.
pub fn surface_chi(c: i64, m: i64, b: i64) -> Rational {
    // roots of F: x1 + x2 = 2, x1 x2 = c; roots of S^m F: k x1 + (m-k) x2
    let r = m + 1;
    let s1: i64 = (0..=m).sum();
    let s2: i64 = (0..=m).map(|k| k * k).sum();
    let cross: i64 = (0..=m).map(|k| k * (m - k)).sum();
    let sum_y = 2 * s1;
    let sum_y2 = s2 * (4 - 2 * c) + 2 * c * cross;
    let ch1 = int(sum_y + r * b);
    let ch2 = int(sum_y2 + 2 * b * sum_y + r * b * b) * frac(1, 2);
    ch2 + ch1 * frac(3, 2) + int(r)
}
