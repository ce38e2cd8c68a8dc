//! Exact arithmetic in the monogenic order `Z[ρ]` of the three cubic families.
//!
//! Elements are integer triples `(x₁, x₂, x₃)` in the power basis `{1, ρ, ρ²}`.
//! Trace, norm and total positivity are read off the characteristic polynomial
//! of the multiplication-by-α matrix, so nothing here touches floating point.

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Shanks' simplest cubic fields, `x³ − ax² − (a+3)x − 1`.
    SimplestCubic,
    /// Ennola's cubics, `x³ + (a−1)x² − ax − 1`.
    Ennola,
    /// Thomas' orders with exceptional units, `x³ − (a+b)x² + abx − 1`.
    Thomas,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::SimplestCubic => "simplest",
            Family::Ennola => "ennola",
            Family::Thomas => "thomas",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "simplest" | "simplest-cubic" | "simplest_cubic" | "shanks" => Ok(Family::SimplestCubic),
            "ennola" => Ok(Family::Ennola),
            "thomas" => Ok(Family::Thomas),
            other => Err(format!("unknown family `{other}` (expected simplest, ennola or thomas)")),
        }
    }
}

/// Family tag plus integer parameters. Construction validates the family
/// range and irreducibility, so every value of this type names a genuine
/// totally real cubic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderParams {
    family: Family,
    a: i64,
    b: Option<i64>,
    /// `c₀, c₁, c₂` of the monic minimal polynomial `x³ + c₂x² + c₁x + c₀`.
    low: [i64; 3],
}

impl OrderParams {
    pub fn new(family: Family, a: i64, b: Option<i64>) -> Result<Self> {
        let invalid = |reason: String| Error::InvalidParams { family, reason };
        let low = match family {
            Family::SimplestCubic => {
                if b.is_some() {
                    return Err(invalid("takes no parameter b".into()));
                }
                if a < -1 {
                    return Err(invalid(format!("a = {a}, need a >= -1")));
                }
                let c1 = a.checked_add(3).and_then(i64::checked_neg);
                match c1 {
                    Some(c1) => [-1, c1, -a],
                    None => return Err(invalid("a too large".into())),
                }
            }
            Family::Ennola => {
                if b.is_some() {
                    return Err(invalid("takes no parameter b".into()));
                }
                if a < 3 {
                    return Err(invalid(format!("a = {a}, need a >= 3")));
                }
                [-1, -a, a - 1]
            }
            Family::Thomas => {
                let b = b.ok_or_else(|| invalid("parameter b is required".into()))?;
                if a < 2 || b.checked_sub(2).is_none_or(|m| a > m) {
                    return Err(invalid(format!("(a, b) = ({a}, {b}), need 2 <= a <= b - 2")));
                }
                let sum = a.checked_add(b).ok_or_else(|| invalid("a + b overflows".into()))?;
                let prod = a.checked_mul(b).ok_or_else(|| invalid("ab overflows".into()))?;
                [-1, prod, -sum]
            }
        };
        let params = OrderParams { family, a, b, low };
        if params.minimal_poly().has_rational_root() {
            return Err(invalid("minimal polynomial has a rational root".into()));
        }
        Ok(params)
    }

    pub fn simplest(a: i64) -> Result<Self> {
        Self::new(Family::SimplestCubic, a, None)
    }

    pub fn ennola(a: i64) -> Result<Self> {
        Self::new(Family::Ennola, a, None)
    }

    pub fn thomas(a: i64, b: i64) -> Result<Self> {
        Self::new(Family::Thomas, a, Some(b))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> Option<i64> {
        self.b
    }

    /// `b` for Thomas orders; 0 otherwise.
    pub(crate) fn b_or_zero(&self) -> i64 {
        self.b.unwrap_or(0)
    }

    pub fn minimal_poly(&self) -> MinimalPoly {
        let [c0, c1, c2] = self.low;
        MinimalPoly {
            coeffs: [c0.into(), c1.into(), c2.into(), BigInt::one()],
        }
    }

    pub(crate) fn low_coeffs(&self) -> [i64; 3] {
        self.low
    }
}

impl fmt::Display for OrderParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.b {
            Some(b) => write!(f, "{}(a={}, b={})", self.family, self.a, b),
            None => write!(f, "{}(a={})", self.family, self.a),
        }
    }
}

/// Monic integer cubic, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalPoly {
    coeffs: [BigInt; 4],
}

impl MinimalPoly {
    /// `[c₀, c₁, c₂, 1]`.
    pub fn coeffs(&self) -> &[BigInt; 4] {
        &self.coeffs
    }

    pub fn eval<T>(&self, x: &T) -> T
    where
        T: Clone + From<BigInt> + for<'a> std::ops::Mul<&'a T, Output = T> + std::ops::Add<T, Output = T>,
    {
        let mut acc = T::from(self.coeffs[3].clone());
        for c in self.coeffs[..3].iter().rev() {
            acc = acc * x + T::from(c.clone());
        }
        acc
    }

    /// `[c₁, 2c₂, 3]`, the derivative in ascending degree.
    pub fn derivative(&self) -> [BigInt; 3] {
        [
            self.coeffs[1].clone(),
            &self.coeffs[2] * 2,
            BigInt::from(3),
        ]
    }

    /// A monic integer cubic with no rational root is irreducible over Q, and
    /// any rational root of it is an integer dividing the constant term.
    pub fn has_rational_root(&self) -> bool {
        let c0 = self.coeffs[0].abs();
        if c0.is_zero() {
            return true;
        }
        let mut d = BigInt::one();
        while d <= c0 {
            if c0.is_multiple_of(&d) {
                for cand in [d.clone(), -d.clone()] {
                    if self.eval(&cand).is_zero() {
                        return true;
                    }
                }
            }
            d += 1;
        }
        false
    }

    /// Discriminant of the cubic.
    pub fn discriminant(&self) -> BigInt {
        let [c0, c1, c2, _] = &self.coeffs;
        discriminant_of(&BigInt::one(), c2, c1, c0)
    }
}

/// Discriminant of `a x³ + b x² + c x + d`.
pub(crate) fn discriminant_of(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> BigInt {
    BigInt::from(18) * a * b * c * d - BigInt::from(4) * b * b * b * d + b * b * c * c
        - BigInt::from(4) * a * c * c * c
        - BigInt::from(27) * a * a * d * d
}

/// Elementary symmetric functions of the three conjugates; the characteristic
/// polynomial is `x³ − e₁x² + e₂x − e₃`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    pub e1: BigInt,
    pub e2: BigInt,
    pub e3: BigInt,
}

impl CharPoly {
    pub fn discriminant(&self) -> BigInt {
        discriminant_of(&BigInt::one(), &-&self.e1, &self.e2, &-&self.e3)
    }

    /// All roots positive. Valid because every root is real here.
    pub fn all_roots_positive(&self) -> bool {
        self.e1.is_positive() && self.e2.is_positive() && self.e3.is_positive()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderElement {
    params: OrderParams,
    coords: [BigInt; 3],
}

impl OrderElement {
    pub fn new(params: OrderParams, coords: [BigInt; 3]) -> Self {
        OrderElement { params, coords }
    }

    pub fn from_i64(params: OrderParams, [x1, x2, x3]: [i64; 3]) -> Self {
        Self::new(params, [x1.into(), x2.into(), x3.into()])
    }

    pub fn integer(params: OrderParams, n: i64) -> Self {
        Self::from_i64(params, [n, 0, 0])
    }

    pub fn zero(params: OrderParams) -> Self {
        Self::integer(params, 0)
    }

    pub fn one(params: OrderParams) -> Self {
        Self::integer(params, 1)
    }

    pub fn rho(params: OrderParams) -> Self {
        Self::from_i64(params, [0, 1, 0])
    }

    pub fn params(&self) -> &OrderParams {
        &self.params
    }

    pub fn coords(&self) -> &[BigInt; 3] {
        &self.coords
    }

    pub fn into_coords(self) -> [BigInt; 3] {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.params == other.params {
            Ok(())
        } else {
            Err(Error::IncompatibleOrder)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let [x1, x2, x3] = &self.coords;
        let [y1, y2, y3] = &other.coords;
        Self::new(self.params, [x1 + y1, x2 + y2, x3 + y3])
    }

    pub(crate) fn sub_unchecked(&self, other: &Self) -> Self {
        let [x1, x2, x3] = &self.coords;
        let [y1, y2, y3] = &other.coords;
        Self::new(self.params, [x1 - y1, x2 - y2, x3 - y3])
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        Self::new(self.params, mul_coords(self.params.low, &self.coords, &other.coords))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let [x1, x2, x3] = &self.coords;
        Self::new(self.params, [x1 * k, x2 * k, x3 * k])
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.params);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            exp >>= 1;
        }
        acc
    }

    /// Matrix of multiplication by `self` on the power basis; column `j`
    /// holds the coordinates of `self · ρʲ`.
    pub fn multiplication_matrix(&self) -> [[BigInt; 3]; 3] {
        let c0 = times_rho(self.params.low, &self.coords);
        let c1 = times_rho(self.params.low, &c0);
        let cols = [self.coords.clone(), c0, c1];
        std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r].clone()))
    }

    pub fn char_poly(&self) -> CharPoly {
        char_poly_of_matrix(&self.multiplication_matrix())
    }

    pub fn trace(&self) -> BigInt {
        self.char_poly().e1
    }

    pub fn norm(&self) -> BigInt {
        self.char_poly().e3
    }

    pub fn is_totally_positive(&self) -> bool {
        self.char_poly().all_roots_positive()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    /// `N(α)/α = α'α''`, an element of the order.
    pub fn adjoint(&self) -> Self {
        let m = self.multiplication_matrix();
        let minor = |r0: usize, r1: usize, c0: usize, c1: usize| &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0];
        // First column of adj(M) = cofactors along the first row.
        Self::new(self.params, [minor(1, 2, 1, 2), -minor(1, 2, 0, 2), minor(1, 2, 0, 1)])
    }

    /// `self / divisor` when the quotient lies in the order.
    pub fn try_div_exact(&self, divisor: &Self) -> Result<Option<Self>> {
        self.check_same(divisor)?;
        let n = divisor.norm();
        if n.is_zero() {
            return Ok(None);
        }
        let num = self.mul_unchecked(&divisor.adjoint());
        if num.coords.iter().all(|c| c.is_multiple_of(&n)) {
            let [x1, x2, x3] = &num.coords;
            Ok(Some(Self::new(self.params, [x1 / &n, x2 / &n, x3 / &n])))
        } else {
            Ok(None)
        }
    }

    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let adj = self.adjoint();
        Some(if self.norm().is_negative() { -adj } else { adj })
    }

    /// The order-3 automorphism `ρ ↦ a + 2 + aρ − ρ²` (that is `ρ ↦ −1 − 1/ρ`)
    /// of a simplest cubic field.
    pub fn galois_conjugate(&self) -> Result<Self> {
        if self.params.family != Family::SimplestCubic {
            return Err(Error::UnsupportedFamily(self.params.family));
        }
        let a = self.params.a;
        let image = Self::from_i64(self.params, [a + 2, a, -1]);
        let image_sq = image.mul_unchecked(&image);
        let [x1, x2, x3] = &self.coords;
        let linear = image.scale(x2).add_unchecked(&image_sq.scale(x3));
        Ok(Self::new(
            self.params,
            [x1 + &linear.coords[0], linear.coords[1].clone(), linear.coords[2].clone()],
        ))
    }

    /// Lexicographic key on coordinates, used for canonical representatives.
    pub(crate) fn lex_key(&self) -> &[BigInt; 3] {
        &self.coords
    }
}

impl Neg for OrderElement {
    type Output = OrderElement;

    fn neg(self) -> Self::Output {
        let [x1, x2, x3] = self.coords;
        OrderElement::new(self.params, [-x1, -x2, -x3])
    }
}

impl Neg for &OrderElement {
    type Output = OrderElement;

    fn neg(self) -> Self::Output {
        -self.clone()
    }
}

impl fmt::Display for OrderElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_power_basis(&self.coords))
    }
}

/// `1 + 2ρ − ρ²` style rendering.
pub fn format_power_basis(coords: &[BigInt; 3]) -> String {
    let mut out = String::new();
    for (k, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let unit = match k {
            0 => "",
            1 => "ρ",
            _ => "ρ²",
        };
        if k == 0 || !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(unit);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn times_rho([c0, c1, c2]: [i64; 3], x: &[BigInt; 3]) -> [BigInt; 3] {
    // ρ³ = −c₂ρ² − c₁ρ − c₀
    let top = &x[2];
    [-(top * c0), &x[0] - top * c1, &x[1] - top * c2]
}

pub(crate) fn mul_coords(low: [i64; 3], x: &[BigInt; 3], y: &[BigInt; 3]) -> [BigInt; 3] {
    let mut p: [BigInt; 5] = Default::default();
    for i in 0..3 {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..3 {
            p[i + j] += &x[i] * &y[j];
        }
    }
    let [c0, c1, c2] = low;
    for k in (3..5).rev() {
        let top = std::mem::take(&mut p[k]);
        if top.is_zero() {
            continue;
        }
        p[k - 1] -= &top * c2;
        p[k - 2] -= &top * c1;
        p[k - 3] -= &top * c0;
    }
    let [p0, p1, p2, _, _] = p;
    [p0, p1, p2]
}

pub(crate) fn char_poly_of_matrix(m: &[[BigInt; 3]; 3]) -> CharPoly {
    let e1 = &m[0][0] + &m[1][1] + &m[2][2];
    let e2 = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0] + &m[0][0] * &m[2][2] - &m[0][2] * &m[2][0]
        + &m[1][1] * &m[2][2]
        - &m[1][2] * &m[2][1];
    let e3 = &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
    CharPoly { e1, e2, e3 }
}
