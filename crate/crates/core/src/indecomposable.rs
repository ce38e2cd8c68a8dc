//! Additively indecomposable totally positive elements of `Z[ρ]`.
//!
//! Two independent routes are provided and cross-checked by the test suites:
//! the closed-form families ([`closed_form_indecomposables`]) and the
//! two-parallelepiped candidate enumeration followed by an exhaustive
//! decomposition search ([`indecomposable_classes`]).

use std::cmp::Ordering;
use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::embeddings::EmbeddedOrder;
use crate::error::{Error, Result};
use crate::interval::RationalInterval;
use crate::order::{Family, OrderElement, OrderParams};

/// Closed-form parameters naming one indecomposable, up to totally positive
/// unit multiples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Descriptor {
    One,
    OnePlusRhoPlusRhoSq,
    /// `−v − wρ + (v+1)ρ²` in a simplest cubic order.
    SimplestVW { v: i64, w: i64 },
    /// `1 + wρ + ρ²` in an Ennola order.
    EnnolaW { w: i64 },
    /// `−v + (bw+1)ρ − wρ²` in a Thomas order.
    ThomasVW { v: i64, w: i64 },
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::One => f.write_str("1"),
            Descriptor::OnePlusRhoPlusRhoSq => f.write_str("1+ρ+ρ²"),
            Descriptor::SimplestVW { v, w } | Descriptor::ThomasVW { v, w } => write!(f, "(v={v},w={w})"),
            Descriptor::EnnolaW { w } => write!(f, "(w={w})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndecDescriptor {
    params: OrderParams,
    variant: Descriptor,
}

impl IndecDescriptor {
    pub fn new(params: OrderParams, variant: Descriptor) -> Result<Self> {
        let a = params.a();
        let bad = || Err(Error::Descriptor(format!("{variant} is not valid in {params}")));
        let ok = match (params.family(), variant) {
            (Family::SimplestCubic, Descriptor::One | Descriptor::OnePlusRhoPlusRhoSq) => true,
            (Family::SimplestCubic, Descriptor::SimplestVW { v, w }) => {
                (0..=a).contains(&v) && v * (a + 2) < w && w <= (v + 1) * (a + 1)
            }
            (Family::Ennola, Descriptor::One) => true,
            (Family::Ennola, Descriptor::EnnolaW { w }) => (1..a).contains(&w),
            (Family::Thomas, Descriptor::ThomasVW { v, w }) => {
                let b = params.b_or_zero();
                (0..b - a).contains(&v) && v * a <= w && w < (v + 1) * a
            }
            _ => false,
        };
        if ok {
            Ok(IndecDescriptor { params, variant })
        } else {
            bad()
        }
    }

    pub fn params(&self) -> &OrderParams {
        &self.params
    }

    pub fn variant(&self) -> Descriptor {
        self.variant
    }

    /// Simplest cubic `α(v, W)` with `w = v(a+2) + 1 + W`.
    pub fn simplest_vw_cap(params: OrderParams, v: i64, cap_w: i64) -> Result<Self> {
        let w = v * (params.a() + 2) + 1 + cap_w;
        if params.family() != Family::SimplestCubic || cap_w < 0 || cap_w > params.a() - v {
            return Err(Error::Descriptor(format!("α({v},{cap_w}) is not valid in {params}")));
        }
        Self::new(params, Descriptor::SimplestVW { v, w })
    }

    /// `(v, W)` coordinates of a simplest cubic `VW` descriptor.
    pub fn simplest_v_cap_w(&self) -> Result<(i64, i64)> {
        match self.variant {
            Descriptor::SimplestVW { v, w } => Ok((v, w - v * (self.params.a() + 2) - 1)),
            _ => Err(Error::Descriptor(format!("{} is not in ▲(a)", self.variant))),
        }
    }

    /// `(v, W)` with `w = av + W` for a Thomas descriptor.
    pub fn thomas_v_cap_w(&self) -> Result<(i64, i64)> {
        match self.variant {
            Descriptor::ThomasVW { v, w } => Ok((v, w - self.params.a() * v)),
            _ => Err(Error::Descriptor(format!("{} is not in Ψ", self.variant))),
        }
    }

    pub fn to_element(&self) -> OrderElement {
        let p = self.params;
        let coords = match self.variant {
            Descriptor::One => [1, 0, 0],
            Descriptor::OnePlusRhoPlusRhoSq => [1, 1, 1],
            Descriptor::SimplestVW { v, w } => [-v, -w, v + 1],
            Descriptor::EnnolaW { w } => [1, w, 1],
            Descriptor::ThomasVW { v, w } => {
                let b = BigInt::from(p.b_or_zero());
                return OrderElement::new(p, [BigInt::from(-v), b * w + 1, BigInt::from(-w)]);
            }
        };
        OrderElement::from_i64(p, coords)
    }
}

impl fmt::Display for IndecDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.variant.fmt(f)
    }
}

/// Checked translation of a raw descriptor into its element.
pub fn descriptor_to_element(params: OrderParams, variant: Descriptor) -> Result<OrderElement> {
    Ok(IndecDescriptor::new(params, variant)?.to_element())
}

/// The complete closed-form list, ordered lexicographically.
pub fn closed_form_indecomposables(params: OrderParams) -> Vec<IndecDescriptor> {
    let a = params.a();
    let mk = |d| IndecDescriptor { params, variant: d };
    let mut out = Vec::new();
    match params.family() {
        Family::SimplestCubic => {
            out.push(mk(Descriptor::One));
            out.push(mk(Descriptor::OnePlusRhoPlusRhoSq));
            for v in 0..=a {
                for w in v * (a + 2) + 1..=(v + 1) * (a + 1) {
                    out.push(mk(Descriptor::SimplestVW { v, w }));
                }
            }
        }
        Family::Ennola => {
            out.push(mk(Descriptor::One));
            out.extend((1..a).map(|w| mk(Descriptor::EnnolaW { w })));
        }
        Family::Thomas => {
            let b = params.b_or_zero();
            for v in 0..b - a {
                for w in v * a..(v + 1) * a {
                    out.push(mk(Descriptor::ThomasVW { v, w }));
                }
            }
        }
    }
    out
}

/// `T₁(α(v, W)) = α(W, a − v − W)`: a conjugate of `α` times a totally
/// positive unit, again inside `▲(a)`.
pub fn t1(d: &IndecDescriptor) -> Result<IndecDescriptor> {
    let (v, cap_w) = d.simplest_v_cap_w()?;
    IndecDescriptor::simplest_vw_cap(d.params, cap_w, d.params.a() - v - cap_w)
}

/// `T₂(α(v, W)) = α''ρ² = α(a − v − W, v)`.
pub fn t2(d: &IndecDescriptor) -> Result<IndecDescriptor> {
    let (v, cap_w) = d.simplest_v_cap_w()?;
    IndecDescriptor::simplest_vw_cap(d.params, d.params.a() - v - cap_w, v)
}

/// `(▲(a), ▲₀(a))`: all non-unit `VW` descriptors and the fundamental domain
/// for the action of `T₁, T₂`.
pub fn triangle_sets(a: i64) -> Result<(Vec<IndecDescriptor>, Vec<IndecDescriptor>)> {
    let params = OrderParams::simplest(a)?;
    let full: Vec<_> = closed_form_indecomposables(params)
        .into_iter()
        .filter(|d| matches!(d.variant, Descriptor::SimplestVW { .. }))
        .collect();
    let (cap_a, a0) = (a.div_euclid(3), a.rem_euclid(3));
    let v_max = if a0 == 0 { cap_a - 1 } else { cap_a };
    let mut base = Vec::new();
    for v in 0..=v_max {
        for cap_w in v..=a - 2 * v - 1 {
            base.push(IndecDescriptor::simplest_vw_cap(params, v, cap_w)?);
        }
    }
    if a0 == 0 && a >= 0 {
        base.push(IndecDescriptor::simplest_vw_cap(params, cap_a, cap_a)?);
    }
    base.sort();
    Ok((full, base))
}

/// Two totally positive units, distinct and different from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitPair {
    eps1: OrderElement,
    eps2: OrderElement,
}

impl UnitPair {
    pub fn new(eps1: OrderElement, eps2: OrderElement) -> Result<Self> {
        if eps1.params() != eps2.params() {
            return Err(Error::IncompatibleOrder);
        }
        let one = OrderElement::one(*eps1.params());
        for e in [&eps1, &eps2] {
            if !e.is_unit() || !e.is_totally_positive() || *e == one {
                return Err(Error::Invariant(format!("{e} is not a totally positive unit other than 1")));
            }
        }
        if eps1 == eps2 {
            return Err(Error::Invariant("unit pair has equal members".into()));
        }
        Ok(UnitPair { eps1, eps2 })
    }

    pub fn first(&self) -> &OrderElement {
        &self.eps1
    }

    pub fn second(&self) -> &OrderElement {
        &self.eps2
    }
}

/// The generator pair each family's candidate construction is built from.
pub fn standard_unit_pair(params: OrderParams) -> Result<UnitPair> {
    let a = params.a();
    let rho = OrderElement::rho(params);
    let (e1, e2) = match params.family() {
        Family::Thomas => {
            let b = params.b_or_zero();
            (rho, OrderElement::from_i64(params, [1, a * a - a * b, b - a]))
        }
        Family::SimplestCubic => (
            rho.pow(2),
            OrderElement::from_i64(params, [-a - 1, -(a * a + 3 * a + 3), a + 2]),
        ),
        Family::Ennola => {
            let rho_minus_one = OrderElement::from_i64(params, [-1, 1, 0]);
            (rho.pow(2), rho_minus_one.pow(2))
        }
    };
    UnitPair::new(e1, e2)
}

/// Integer points of the two closed parallelepipeds spanned by
/// `(1, ε₁, ε₂)` and `(1, ε₁, ε₁ε₂⁻¹)`, zero excluded, sorted and deduplicated.
pub fn parallelepiped_candidates(params: OrderParams, pair: &UnitPair) -> Result<Vec<OrderElement>> {
    if pair.first().params() != &params {
        return Err(Error::IncompatibleOrder);
    }
    let one = OrderElement::one(params);
    let inv2 = pair
        .second()
        .unit_inverse()
        .ok_or_else(|| Error::Invariant("second unit has no inverse".into()))?;
    let third = pair.first().mul_unchecked(&inv2);
    let mut points = lattice_points_in_parallelepiped([one.coords(), pair.first().coords(), pair.second().coords()])?;
    points.extend(lattice_points_in_parallelepiped([one.coords(), pair.first().coords(), third.coords()])?);
    points.sort();
    points.dedup();
    Ok(points
        .into_iter()
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .map(|c| OrderElement::new(params, c))
        .collect())
}

/// Integer points `x = Σ tᵢ gᵢ` with every `tᵢ ∈ [0, 1]`. Membership is
/// decided exactly through the integer adjugate: `t = adj(M)·x / det M`.
pub fn lattice_points_in_parallelepiped(gens: [&[BigInt; 3]; 3]) -> Result<Vec<[BigInt; 3]>> {
    let m: [[BigInt; 3]; 3] = std::array::from_fn(|r| std::array::from_fn(|c| gens[c][r].clone()));
    let mut adj = adjugate(&m);
    let mut det: BigInt = (0..3).map(|k| &m[0][k] * &adj[k][0]).sum();
    if det.is_zero() {
        let names: Vec<String> = gens.iter().map(|g| format!("{g:?}")).collect();
        return Err(Error::DegenerateParallelepiped(names.join(", ")));
    }
    if det.is_negative() {
        det = -det;
        for row in adj.iter_mut() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
    }
    let bounds: [(BigInt, BigInt); 3] = std::array::from_fn(|r| {
        let lo: BigInt = m[r].iter().filter(|x| x.is_negative()).sum();
        let hi: BigInt = m[r].iter().filter(|x| x.is_positive()).sum();
        (lo, hi)
    });

    let mut out = Vec::new();
    let mut x3 = bounds[2].0.clone();
    while x3 <= bounds[2].1 {
        let mut x2 = bounds[1].0.clone();
        while x2 <= bounds[1].1 {
            let (mut lo, mut hi) = bounds[0].clone();
            for row in &adj {
                let c = &row[1] * &x2 + &row[2] * &x3;
                let k = &row[0];
                // 0 ≤ k·x₁ + c ≤ det
                if k.is_zero() {
                    if c.is_negative() || c > det {
                        hi = &lo - 1;
                    }
                    continue;
                }
                let (num_lo, num_hi) = if k.is_positive() { (-&c, &det - &c) } else { (&det - &c, -&c) };
                lo = lo.max(div_ceil(&num_lo, k));
                hi = hi.min(num_hi.div_floor(k));
            }
            let mut x1 = lo;
            while x1 <= hi {
                out.push([x1.clone(), x2.clone(), x3.clone()]);
                x1 += 1;
            }
            x2 += 1;
        }
        x3 += 1;
    }
    Ok(out)
}

fn div_ceil(n: &BigInt, d: &BigInt) -> BigInt {
    -((-n).div_floor(d))
}

fn adjugate(m: &[[BigInt; 3]; 3]) -> [[BigInt; 3]; 3] {
    let cof = |r: usize, c: usize| {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        let minor = &m[rows[0]][cols[0]] * &m[rows[1]][cols[1]] - &m[rows[0]][cols[1]] * &m[rows[1]][cols[0]];
        if (r + c).is_multiple_of(2) {
            minor
        } else {
            -minor
        }
    };
    std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i)))
}

/// Exhaustive decomposition search: `α` is indecomposable iff no totally
/// positive `β` leaves `α − β` totally positive. Such a `β` has every
/// conjugate strictly between 0 and the matching conjugate of `α`, so the
/// search runs over that box.
pub fn is_indecomposable(elem: &OrderElement) -> Result<bool> {
    is_indecomposable_in(&*EmbeddedOrder::shared(*elem.params())?, elem)
}

pub fn is_indecomposable_in(eo: &EmbeddedOrder, elem: &OrderElement) -> Result<bool> {
    Ok(find_decomposition(eo, elem)?.is_none())
}

/// A totally positive summand `β` with `α − β` totally positive, if any.
pub fn find_decomposition(eo: &EmbeddedOrder, elem: &OrderElement) -> Result<Option<OrderElement>> {
    if elem.params() != eo.params() {
        return Err(Error::IncompatibleOrder);
    }
    if !elem.is_totally_positive() {
        return Err(Error::NotTotallyPositive(elem.to_string()));
    }
    let params = *elem.params();
    let conj = eo.embed(elem)?;
    let targets = conj.map(|c| RationalInterval::new_unchecked(BigRational::zero(), c.hi().clone()));
    let trace = TraceForm::new(params);
    let total = trace.eval(elem.coords());

    let found = eo.scan_rows(&targets, |row| {
        let mut x1 = row.x1_lo.clone();
        while x1 <= row.x1_hi {
            let coords = [x1.clone(), row.x2.clone(), row.x3.clone()];
            let t = trace.eval(&coords);
            // both traces must be positive
            if t.is_positive() && t < total {
                let beta = OrderElement::new(params, coords);
                if beta.is_totally_positive() && elem.sub_unchecked(&beta).is_totally_positive() {
                    return ControlFlow::Break(beta);
                }
            }
            x1 += 1;
        }
        ControlFlow::Continue(())
    });
    Ok(found)
}

/// `Tr(x₁ + x₂ρ + x₃ρ²) = 3x₁ + s₁x₂ + s₂x₃` with power sums `s₁, s₂` of the roots.
#[derive(Debug, Clone)]
pub(crate) struct TraceForm {
    s1: BigInt,
    s2: BigInt,
}

impl TraceForm {
    pub(crate) fn new(params: OrderParams) -> Self {
        TraceForm {
            s1: OrderElement::rho(params).trace(),
            s2: OrderElement::from_i64(params, [0, 0, 1]).trace(),
        }
    }

    pub(crate) fn eval(&self, x: &[BigInt; 3]) -> BigInt {
        &x[0] * 3 + &self.s1 * &x[1] + &self.s2 * &x[2]
    }
}

/// Whether `β = α·ε` for a totally positive unit `ε` of the order. Decided
/// exactly: the quotient must be integral, of norm 1, and totally positive.
pub fn same_unit_class(alpha: &OrderElement, beta: &OrderElement) -> Result<bool> {
    if alpha.params() != beta.params() {
        return Err(Error::IncompatibleOrder);
    }
    if alpha.norm() != beta.norm() {
        return Ok(false);
    }
    Ok(match beta.try_div_exact(alpha)? {
        Some(q) => q.is_unit() && q.is_totally_positive(),
        None => false,
    })
}

/// Partition totally positive elements into unit-multiple classes and return
/// the lexicographically least member of each, sorted.
pub fn dedup_up_to_units(elems: &[OrderElement], params: OrderParams) -> Result<Vec<OrderElement>> {
    let mut sorted: Vec<&OrderElement> = elems.iter().collect();
    for e in &sorted {
        if e.params() != &params {
            return Err(Error::IncompatibleOrder);
        }
        if !e.is_totally_positive() {
            return Err(Error::NotTotallyPositive(e.to_string()));
        }
    }
    sorted.sort_by(|x, y| x.lex_key().cmp(y.lex_key()));
    sorted.dedup();
    // Visiting in lexicographic order makes the first member of each class its least.
    let mut reps: Vec<(BigInt, OrderElement)> = Vec::new();
    for e in sorted {
        let n = e.norm();
        let mut known = false;
        for (rn, r) in &reps {
            if *rn == n && same_unit_class(r, e)? {
                known = true;
                break;
            }
        }
        if !known {
            reps.push((n, e.clone()));
        }
    }
    let mut out: Vec<_> = reps.into_iter().map(|(_, r)| r).collect();
    out.sort_by(|x, y| x.lex_key().cmp(y.lex_key()));
    Ok(out)
}

/// Unit classes of indecomposables found by the parallelepiped route:
/// candidates are grouped first (indecomposability is a class property),
/// then each class representative is checked by exhaustive search.
pub fn indecomposable_classes(params: OrderParams) -> Result<Vec<OrderElement>> {
    let pair = standard_unit_pair(params)?;
    let candidates = parallelepiped_candidates(params, &pair)?;
    let reps = dedup_up_to_units(&candidates, params)?;
    let eo = EmbeddedOrder::shared(params)?;
    let flags: Vec<bool> = reps
        .par_iter()
        .map(|r| is_indecomposable_in(&eo, r))
        .collect::<Result<_>>()?;
    Ok(reps.into_iter().zip(flags).filter_map(|(r, ok)| ok.then_some(r)).collect())
}

/// Index of the closed-form descriptor whose element is a unit multiple of
/// `elem`, if any.
pub fn match_closed_form(elem: &OrderElement, forms: &[IndecDescriptor]) -> Result<Option<usize>> {
    for (i, d) in forms.iter().enumerate() {
        if same_unit_class(&d.to_element(), elem)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Orders the pair `(α, β)` by norm then coordinates; used for stable listings.
pub fn cmp_by_norm(x: &OrderElement, y: &OrderElement) -> Ordering {
    x.norm().cmp(&y.norm()).then_with(|| x.lex_key().cmp(y.lex_key()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(params: OrderParams, v: Descriptor) -> IndecDescriptor {
        IndecDescriptor::new(params, v).unwrap()
    }

    #[test]
    fn descriptor_elements() {
        let e = OrderParams::ennola(5).unwrap();
        assert_eq!(descriptor_to_element(e, Descriptor::EnnolaW { w: 3 }).unwrap().coords(), &[1, 3, 1].map(BigInt::from));
        let t = OrderParams::thomas(2, 4).unwrap();
        assert_eq!(
            descriptor_to_element(t, Descriptor::ThomasVW { v: 1, w: 2 }).unwrap().coords(),
            &[-1, 9, -2].map(BigInt::from)
        );
        let s = OrderParams::simplest(2).unwrap();
        assert_eq!(
            descriptor_to_element(s, Descriptor::SimplestVW { v: 1, w: 6 }).unwrap().coords(),
            &[-1, -6, 2].map(BigInt::from)
        );
    }

    #[test]
    fn descriptor_ranges_are_checked() {
        let t = OrderParams::thomas(2, 4).unwrap();
        assert!(IndecDescriptor::new(t, Descriptor::ThomasVW { v: 1, w: 1 }).is_err());
        assert!(IndecDescriptor::new(t, Descriptor::ThomasVW { v: 2, w: 4 }).is_err());
        assert!(IndecDescriptor::new(t, Descriptor::One).is_err());
        let e = OrderParams::ennola(3).unwrap();
        assert!(IndecDescriptor::new(e, Descriptor::EnnolaW { w: 3 }).is_err());
        assert!(IndecDescriptor::new(e, Descriptor::OnePlusRhoPlusRhoSq).is_err());
        let s = OrderParams::simplest(1).unwrap();
        assert!(IndecDescriptor::new(s, Descriptor::SimplestVW { v: 0, w: 0 }).is_err());
        assert!(IndecDescriptor::new(s, Descriptor::SimplestVW { v: 0, w: 2 }).is_ok());
    }

    #[test]
    fn closed_forms_small_cases() {
        let e = OrderParams::ennola(3).unwrap();
        let list: Vec<_> = closed_form_indecomposables(e).iter().map(|d| d.to_element().into_coords()).collect();
        assert_eq!(list, vec![[1, 0, 0], [1, 1, 1], [1, 2, 1]].into_iter().map(|c| c.map(BigInt::from)).collect::<Vec<_>>());

        let s = OrderParams::simplest(-1).unwrap();
        let list = closed_form_indecomposables(s);
        assert_eq!(list.iter().map(|d| d.variant()).collect::<Vec<_>>(), vec![Descriptor::One, Descriptor::OnePlusRhoPlusRhoSq]);

        let t = OrderParams::thomas(2, 4).unwrap();
        let vw: Vec<_> = closed_form_indecomposables(t).iter().map(|d| d.variant()).collect();
        let expect: Vec<_> = [(0, 0), (0, 1), (1, 2), (1, 3)].map(|(v, w)| Descriptor::ThomasVW { v, w }).into();
        assert_eq!(vw, expect);
    }

    #[test]
    fn closed_forms_are_totally_positive() {
        for p in [OrderParams::simplest(4), OrderParams::ennola(6), OrderParams::thomas(3, 7)] {
            for desc in closed_form_indecomposables(p.unwrap()) {
                assert!(desc.to_element().is_totally_positive(), "{desc}");
            }
        }
    }

    #[test]
    fn standard_pairs_are_totally_positive_units() {
        for p in [OrderParams::simplest(-1), OrderParams::simplest(3), OrderParams::ennola(4), OrderParams::thomas(2, 4)] {
            let p = p.unwrap();
            let pair = standard_unit_pair(p).unwrap();
            for u in [pair.first(), pair.second()] {
                assert!(u.is_unit() && u.is_totally_positive());
            }
        }
        let t = OrderParams::thomas(3, 8).unwrap();
        let pair = standard_unit_pair(t).unwrap();
        assert_eq!(pair.first(), &OrderElement::rho(t));
        assert_eq!(pair.second().coords(), &[1, 9 - 24, 5].map(BigInt::from));
        let s = OrderParams::simplest(2).unwrap();
        assert_eq!(standard_unit_pair(s).unwrap().second().coords(), &[-3, -13, 4].map(BigInt::from));
    }

    #[test]
    fn unit_pair_rejects_non_units() {
        let t = OrderParams::thomas(2, 4).unwrap();
        let rho = OrderElement::rho(t);
        assert!(UnitPair::new(rho.clone(), rho.clone()).is_err());
        assert!(UnitPair::new(rho.clone(), OrderElement::integer(t, 2)).is_err());
        assert!(UnitPair::new(rho, OrderElement::one(t)).is_err());
    }

    #[test]
    fn degenerate_parallelepiped() {
        let g = [1, 2, 3].map(BigInt::from);
        let h = [2, 4, 6].map(BigInt::from);
        let k = [0, 0, 1].map(BigInt::from);
        assert!(matches!(
            lattice_points_in_parallelepiped([&g, &h, &k]),
            Err(Error::DegenerateParallelepiped(_))
        ));
    }

    #[test]
    fn unit_cube_has_eight_points() {
        let e: [[BigInt; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| BigInt::from((i == j) as i64)));
        assert_eq!(lattice_points_in_parallelepiped([&e[0], &e[1], &e[2]]).unwrap().len(), 8);
        // a sheared cell of determinant 3 holds 3 interior/boundary points beyond its vertices
        let g = [[1, 0, 0], [1, 3, 0], [0, 0, 1]].map(|r| r.map(BigInt::from));
        let pts = lattice_points_in_parallelepiped([&g[0], &g[1], &g[2]]).unwrap();
        assert!(pts.contains(&[1, 1, 0].map(BigInt::from)));
        assert!(pts.contains(&[2, 3, 1].map(BigInt::from)));
        assert!(!pts.contains(&[0, 1, 0].map(BigInt::from)));
    }

    #[test]
    fn candidates_are_totally_positive() {
        for p in [OrderParams::simplest(2), OrderParams::ennola(3), OrderParams::thomas(2, 5)] {
            let p = p.unwrap();
            let pair = standard_unit_pair(p).unwrap();
            let cands = parallelepiped_candidates(p, &pair).unwrap();
            assert!(!cands.is_empty());
            assert!(cands.iter().all(OrderElement::is_totally_positive));
        }
    }

    #[test]
    fn thomas_first_body_border_candidates() {
        let (a, b) = (3, 7);
        let p = OrderParams::thomas(a, b).unwrap();
        let pair = standard_unit_pair(p).unwrap();
        let one = OrderElement::one(p);
        let first = lattice_points_in_parallelepiped([one.coords(), pair.first().coords(), pair.second().coords()]).unwrap();
        for u in 1..b - a {
            assert!(first.contains(&[1, -a * u, u].map(BigInt::from)), "u = {u}");
        }
    }

    #[test]
    fn indecomposability_examples() {
        let t = OrderParams::thomas(2, 4).unwrap();
        assert!(is_indecomposable(&OrderElement::one(t)).unwrap());
        assert!(!is_indecomposable(&OrderElement::integer(t, 2)).unwrap());
        assert!(is_indecomposable(&OrderElement::from_i64(t, [-1, 9, -2])).unwrap());
        let s = OrderParams::simplest(4).unwrap();
        let x = OrderElement::from_i64(s, [1, 1, 1]);
        assert!(is_indecomposable(&x).unwrap());
        assert_eq!(x.norm(), BigInt::from(37));
    }

    #[test]
    fn indecomposability_requires_total_positivity() {
        let t = OrderParams::thomas(2, 4).unwrap();
        assert!(matches!(
            is_indecomposable(&OrderElement::from_i64(t, [-2, 1, 0])),
            Err(Error::NotTotallyPositive(_))
        ));
    }

    #[test]
    fn decomposition_witness_is_valid() {
        let p = OrderParams::ennola(4).unwrap();
        let eo = EmbeddedOrder::shared(p).unwrap();
        let x = OrderElement::from_i64(p, [2, 2, 2]);
        let beta = find_decomposition(&eo, &x).unwrap().expect("2(1+ρ+ρ²) decomposes");
        assert!(beta.is_totally_positive());
        assert!(x.try_sub(&beta).unwrap().is_totally_positive());
    }

    #[test]
    fn orbit_maps() {
        let s3 = OrderParams::simplest(3).unwrap();
        let fixed = IndecDescriptor::simplest_vw_cap(s3, 1, 1).unwrap();
        assert_eq!(t1(&fixed).unwrap(), fixed);
        assert_eq!(t2(&fixed).unwrap(), fixed);

        let s4 = OrderParams::simplest(4).unwrap();
        let origin = IndecDescriptor::simplest_vw_cap(s4, 0, 0).unwrap();
        assert_eq!(t1(&origin).unwrap().simplest_v_cap_w().unwrap(), (0, 4));
        assert_eq!(t2(&origin).unwrap().simplest_v_cap_w().unwrap(), (4, 0));
        assert!(t1(&d(s4, Descriptor::One)).is_err());
    }

    #[test]
    fn triangle_sizes() {
        for a in -1..10 {
            let (full, base) = triangle_sets(a).unwrap();
            assert_eq!(full.len() as i64, (a + 1) * (a + 2) / 2);
            assert!(base.iter().all(|x| full.contains(x)));
        }
        let s3 = OrderParams::simplest(3).unwrap();
        let (_, base) = triangle_sets(3).unwrap();
        assert!(base.contains(&IndecDescriptor::simplest_vw_cap(s3, 1, 1).unwrap()));
    }

    #[test]
    fn dedup_examples() {
        let t = OrderParams::thomas(3, 6).unwrap();
        let rho = OrderElement::rho(t);
        let one = OrderElement::one(t);
        // (0,1,0) precedes (1,0,0)
        assert_eq!(dedup_up_to_units(&[one.clone(), rho.clone()], t).unwrap(), vec![rho.clone()]);

        let alpha = OrderElement::from_i64(t, [-1, 19, -3]);
        let pair = standard_unit_pair(t).unwrap();
        let moved = alpha.try_mul(pair.second()).unwrap();
        let reps = dedup_up_to_units(&[moved.clone(), alpha.clone()], t).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(reps[0] == alpha || reps[0] == moved);
        assert!(same_unit_class(&alpha, &moved).unwrap());
        assert!(!same_unit_class(&alpha, &one).unwrap());
    }

    #[test]
    fn dedup_rejects_non_positive_input() {
        let t = OrderParams::thomas(3, 6).unwrap();
        assert!(dedup_up_to_units(&[OrderElement::from_i64(t, [-3, 1, 0])], t).is_err());
    }
}
