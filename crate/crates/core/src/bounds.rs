//! Closed-form norms, sharp norm bounds, Thomas minimal traces and the
//! large-minimal-trace witness.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::codifferent::min_trace;
use crate::error::{Error, Result};
use crate::indecomposable::{closed_form_indecomposables, Descriptor, IndecDescriptor};
use crate::order::{Family, OrderElement, OrderParams};

/// `Σ c · Πᵢ xᵢ^eᵢ` over the listed monomials.
fn poly<const N: usize>(terms: &[(i64, [u32; N])], vars: [i64; N]) -> BigInt {
    let vars = vars.map(BigInt::from);
    terms
        .iter()
        .map(|(c, exps)| {
            let mut m = BigInt::from(*c);
            for (x, &e) in vars.iter().zip(exps) {
                m *= x.pow(e);
            }
            m
        })
        .sum()
}

/// `a = 3A + a₀` with `a₀ ∈ {0, 1, 2}`.
pub fn split3(a: i64) -> (i64, i64) {
    (a.div_euclid(3), a.rem_euclid(3))
}

/// `n = 2N + n₀` with `n₀ ∈ {0, 1}`.
pub fn split2(n: i64) -> (i64, i64) {
    (n.div_euclid(2), n.rem_euclid(2))
}

// Monomials over (A, a₀, v, W).
const SIMPLEST_NORM: &[(i64, [u32; 4])] = &[
    (3, [0, 0, 0, 0]),
    (6, [1, 0, 0, 0]),
    (2, [0, 1, 0, 0]),
    (9, [1, 0, 1, 0]),
    (9, [2, 0, 1, 0]),
    (3, [0, 1, 1, 0]),
    (6, [1, 1, 1, 0]),
    (1, [0, 2, 1, 0]),
    (-3, [0, 0, 2, 0]),
    (-6, [1, 0, 2, 0]),
    (-2, [0, 1, 2, 0]),
    (1, [0, 0, 3, 0]),
    (9, [1, 0, 0, 1]),
    (3, [0, 1, 0, 1]),
    (-3, [0, 0, 1, 1]),
    (3, [1, 0, 1, 1]),
    (9, [2, 0, 1, 1]),
    (1, [0, 1, 1, 1]),
    (6, [1, 1, 1, 1]),
    (1, [0, 2, 1, 1]),
    (-3, [1, 0, 2, 1]),
    (-1, [0, 1, 2, 1]),
    (-3, [0, 0, 0, 2]),
    (3, [1, 0, 0, 2]),
    (1, [0, 1, 0, 2]),
    (-3, [0, 0, 1, 2]),
    (-3, [1, 0, 1, 2]),
    (-1, [0, 1, 1, 2]),
    (-1, [0, 0, 0, 3]),
];

// Monomials over (a, w).
const ENNOLA_NORM: &[(i64, [u32; 2])] = &[
    (2, [2, 0]),
    (2, [1, 0]),
    (1, [0, 0]),
    (1, [2, 1]),
    (-3, [1, 1]),
    (-2, [0, 1]),
    (-2, [1, 2]),
    (1, [0, 2]),
    (1, [0, 3]),
];

// Monomials over (a, b, v, W).
const THOMAS_NORM: &[(i64, [u32; 4])] = &[
    (1, [0, 0, 0, 0]),
    (-1, [2, 0, 1, 0]),
    (1, [1, 1, 1, 0]),
    (-2, [1, 0, 2, 0]),
    (1, [0, 1, 2, 0]),
    (-1, [0, 0, 3, 0]),
    (-1, [1, 0, 0, 1]),
    (2, [0, 1, 0, 1]),
    (-3, [0, 0, 1, 1]),
    (-1, [2, 1, 1, 1]),
    (1, [1, 2, 1, 1]),
    (-1, [1, 1, 2, 1]),
    (-1, [1, 1, 0, 2]),
    (1, [0, 2, 0, 2]),
    (-1, [1, 0, 1, 2]),
    (-1, [0, 1, 1, 2]),
    (-1, [0, 0, 0, 3]),
];

/// `N(α(v, W))` in a simplest cubic order, `a = 3A + a₀`.
pub fn norm_formula_simplest(v: i64, cap_w: i64, a: i64) -> BigInt {
    let (cap_a, a0) = split3(a);
    poly(SIMPLEST_NORM, [cap_a, a0, v, cap_w])
}

/// `N(1 + wρ + ρ²)` in an Ennola order.
pub fn norm_formula_ennola(w: i64, a: i64) -> BigInt {
    poly(ENNOLA_NORM, [a, w])
}

/// `N(α(v, W))` in a Thomas order, with `w = av + W`.
pub fn norm_formula_thomas(v: i64, cap_w: i64, a: i64, b: i64) -> BigInt {
    poly(THOMAS_NORM, [a, b, v, cap_w])
}

/// Closed-form norm of any descriptor.
pub fn descriptor_norm(d: &IndecDescriptor) -> BigInt {
    let p = d.params();
    let a = p.a();
    match d.variant() {
        Descriptor::One => BigInt::one(),
        Descriptor::OnePlusRhoPlusRhoSq if p.family() == Family::SimplestCubic => BigInt::from(a * a + 3 * a + 9),
        Descriptor::OnePlusRhoPlusRhoSq => norm_formula_ennola(1, a),
        Descriptor::SimplestVW { .. } => {
            let (v, cap_w) = d.simplest_v_cap_w().expect("VW descriptor");
            norm_formula_simplest(v, cap_w, a)
        }
        Descriptor::EnnolaW { w } => norm_formula_ennola(w, a),
        Descriptor::ThomasVW { .. } => {
            let (v, cap_w) = d.thomas_v_cap_w().expect("VW descriptor");
            norm_formula_thomas(v, cap_w, a, p.b().expect("thomas"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormBound {
    pub value: BigInt,
    /// False when the value comes from the argmax scan outside the range
    /// where a closed form is proven.
    pub closed_form: bool,
}

/// Sharp upper bound on norms of indecomposables.
pub fn norm_bound(params: OrderParams) -> NormBound {
    let a = params.a();
    let closed = |v: i64| NormBound { value: BigInt::from(v), closed_form: true };
    match params.family() {
        Family::SimplestCubic => {
            let (cap_a, a0) = split3(a);
            if a <= 3 {
                return closed(a * a + 3 * a + 9);
            }
            let terms: &[(i64, [u32; 1])] = match a0 {
                2 => &[(3, [4]), (14, [3]), (28, [2]), (27, [1]), (11, [0])],
                1 => &[(3, [4]), (10, [3]), (16, [2]), (13, [1]), (5, [0])],
                _ => &[(3, [4]), (6, [3]), (9, [2]), (6, [1]), (3, [0])],
            };
            NormBound { value: poly(terms, [cap_a]), closed_form: true }
        }
        Family::Ennola => {
            let (cap_a, a0) = split3(a);
            if a <= 4 {
                return closed(3 * a * a - 3 * a + 1);
            }
            let terms: &[(i64, [u32; 1])] = match a0 {
                2 => &[(4, [3]), (18, [2]), (26, [1]), (13, [0])],
                1 => &[(4, [3]), (14, [2]), (16, [1]), (7, [0])],
                _ => &[(4, [3]), (10, [2]), (8, [1]), (3, [0])],
            };
            NormBound { value: poly(terms, [cap_a]), closed_form: true }
        }
        Family::Thomas => {
            let b = params.b().expect("thomas");
            if (a, b) == (2, 4) {
                return closed(16);
            }
            let (l, l0) = split2(b - a);
            if l0 == 0 && (1..=a - 2).contains(&l) {
                // L²a³ + (2L³+L²+1)a² − (2L³+3L²+L)a + L³ + L²
                let terms = &[
                    (1, [2, 3]),
                    (2, [3, 2]),
                    (1, [2, 2]),
                    (1, [0, 2]),
                    (-2, [3, 1]),
                    (-3, [2, 1]),
                    (-1, [1, 1]),
                    (1, [3, 0]),
                    (1, [2, 0]),
                ];
                return NormBound { value: poly(terms, [l, a]), closed_form: true };
            }
            if l0 == 1 && (1..=a + 1).contains(&l) {
                // (L²+L)a³ + (2L³+4L²+3L+3)a² − (2L³+6L²+5L+3)a + L³+3L²+2L+1
                let terms = &[
                    (1, [2, 3]),
                    (1, [1, 3]),
                    (2, [3, 2]),
                    (4, [2, 2]),
                    (3, [1, 2]),
                    (3, [0, 2]),
                    (-2, [3, 1]),
                    (-6, [2, 1]),
                    (-5, [1, 1]),
                    (-3, [0, 1]),
                    (1, [3, 0]),
                    (3, [2, 0]),
                    (2, [1, 0]),
                    (1, [0, 0]),
                ];
                return NormBound { value: poly(terms, [l, a]), closed_form: true };
            }
            let vs = if l0 == 0 { l - 1..=2 * l - 1 } else { l..=2 * l };
            let value = vs
                .map(|v| norm_formula_thomas(v, a - 1, a, b))
                .max()
                .expect("non-empty range");
            NormBound { value, closed_form: false }
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoundReport {
    pub params: OrderParams,
    pub claimed_bound: BigInt,
    pub closed_form: bool,
    pub attained_norm: BigInt,
    pub attaining_descriptor: IndecDescriptor,
    pub matches: bool,
}

/// Compares [`norm_bound`] with the largest norm over the closed-form list,
/// each norm computed from the characteristic polynomial.
pub fn bound_report(params: OrderParams) -> BoundReport {
    let bound = norm_bound(params);
    let (attained_norm, attaining_descriptor) = closed_form_indecomposables(params)
        .into_iter()
        .map(|d| (d.to_element().norm(), d))
        .max_by(|x, y| x.0.cmp(&y.0).then_with(|| y.1.cmp(&x.1)))
        .expect("every family lists at least one indecomposable");
    BoundReport {
        params,
        matches: bound.value == attained_norm,
        claimed_bound: bound.value,
        closed_form: bound.closed_form,
        attained_norm,
        attaining_descriptor,
    }
}

/// `min{b − a − v + 1, w − av + 1}`.
pub fn min_trace_formula_thomas(v: i64, w: i64, a: i64, b: i64) -> i64 {
    (b - a - v + 1).min(w - a * v + 1)
}

/// `min{b − a + 1, a}`, the largest minimal trace over `Ψ`.
pub fn min_trace_cap_thomas(a: i64, b: i64) -> i64 {
    (b - a + 1).min(a)
}

/// A conservative search ceiling for [`min_trace`]. `Tr(α·1) = Tr(α)` and
/// `1` lies in the codifferent, so the trace always suffices; family
/// formulas tighten it where known.
pub fn min_trace_upper(alpha: &OrderElement, descriptor: Option<&IndecDescriptor>) -> u64 {
    let trace = u64::try_from(alpha.trace()).unwrap_or(u64::MAX);
    let hint = descriptor.and_then(|d| match d.variant() {
        Descriptor::ThomasVW { v, w } => {
            let p = d.params();
            u64::try_from(min_trace_formula_thomas(v, w, p.a(), p.b()?)).ok()
        }
        _ => None,
    });
    hint.map_or(trace, |h| h.min(trace))
}

#[derive(Debug, Clone)]
pub struct Witness {
    pub params: OrderParams,
    pub descriptor: IndecDescriptor,
    /// Value of the minimal-trace formula.
    pub achieved: u64,
    /// Exhaustive minimal trace, when requested.
    pub confirmed: Option<u64>,
}

/// A Thomas order and an indecomposable whose minimal trace exceeds `n`:
/// `(a, b) = (n+1, 2n+2)` and `α = −(1 + ... )` with `(v, w) = (0, a−1)`, of
/// minimal trace `min{n+2, n+1} = n+1`.
pub fn witness_large_min_trace(n: u64, confirm: bool) -> Result<Witness> {
    if n == 0 {
        return Err(Error::Descriptor("witness requires n ≥ 1".into()));
    }
    let n_i = i64::try_from(n).map_err(|_| Error::Descriptor(format!("n = {n} is too large")))?;
    let (a, b) = (n_i + 1, 2 * n_i + 2);
    let params = OrderParams::thomas(a, b)?;
    let descriptor = IndecDescriptor::new(params, Descriptor::ThomasVW { v: 0, w: a - 1 })?;
    let achieved = min_trace_formula_thomas(0, a - 1, a, b) as u64;
    let confirmed = if confirm {
        Some(min_trace(&descriptor.to_element(), achieved)?)
    } else {
        None
    };
    Ok(Witness { params, descriptor, achieved, confirmed })
}

/// Whether `a² + 3a + 9` is squarefree, which makes `Z[ρ]` the maximal
/// order of a simplest cubic field.
pub fn simplest_is_monogenic_maximal(a: i64) -> bool {
    let n = a * a + 3 * a + 9;
    let mut p = 2;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    !n.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplest_formula_matches_char_poly_spot_checks() {
        let p = OrderParams::simplest(3).unwrap();
        let d = IndecDescriptor::simplest_vw_cap(p, 1, 1).unwrap();
        assert_eq!(norm_formula_simplest(1, 1, 3), d.to_element().norm());
        assert_eq!(norm_formula_simplest(0, 0, 0), BigInt::from(3));
        let p0 = OrderParams::simplest(0).unwrap();
        assert_eq!(IndecDescriptor::simplest_vw_cap(p0, 0, 0).unwrap().to_element().norm(), BigInt::from(3));
    }

    #[test]
    fn ennola_and_thomas_spot_checks() {
        assert_eq!(norm_formula_ennola(1, 3), BigInt::from(19));
        assert_eq!(norm_formula_thomas(0, 0, 2, 4), BigInt::one());
    }

    #[test]
    fn quoted_bounds() {
        let nb = |p: Result<OrderParams>| norm_bound(p.unwrap()).value;
        assert_eq!(nb(OrderParams::simplest(4)), BigInt::from(47));
        assert_eq!(nb(OrderParams::simplest(1)), BigInt::from(13));
        assert_eq!(nb(OrderParams::ennola(3)), BigInt::from(19));
        assert_eq!(nb(OrderParams::thomas(2, 4)), BigInt::from(16));
    }

    #[test]
    fn bound_reports_match_on_small_orders() {
        for p in [OrderParams::simplest(4), OrderParams::ennola(7), OrderParams::thomas(3, 6), OrderParams::thomas(2, 9)] {
            let r = bound_report(p.unwrap());
            assert!(r.matches, "{r:?}");
            assert_eq!(r.attaining_descriptor.to_element().norm(), r.attained_norm);
        }
    }

    #[test]
    fn min_trace_formula_examples() {
        assert_eq!(min_trace_formula_thomas(0, 3, 4, 8), 4);
        for v in 0..4 {
            assert_eq!(min_trace_formula_thomas(v, 4 * v, 4, 8), 1);
        }
        assert_eq!(min_trace_cap_thomas(4, 8), 4);
    }

    #[test]
    fn cap_is_max_of_formula() {
        for a in 2..9 {
            for b in a + 2..a + 12 {
                let max = (0..b - a)
                    .flat_map(|v| (v * a..(v + 1) * a).map(move |w| min_trace_formula_thomas(v, w, a, b)))
                    .max()
                    .unwrap();
                assert_eq!(max, min_trace_cap_thomas(a, b), "({a},{b})");
            }
        }
    }

    #[test]
    fn witnesses() {
        let w = witness_large_min_trace(3, true).unwrap();
        assert_eq!((w.params.a(), w.params.b()), (4, Some(8)));
        assert_eq!(w.descriptor.variant(), Descriptor::ThomasVW { v: 0, w: 3 });
        assert_eq!((w.achieved, w.confirmed), (4, Some(4)));
        let w1 = witness_large_min_trace(1, true).unwrap();
        assert_eq!((w1.params.a(), w1.params.b(), w1.confirmed), (2, Some(4), Some(2)));
        assert!(witness_large_min_trace(0, false).is_err());
        for n in 1..30 {
            assert!(witness_large_min_trace(n, false).unwrap().achieved > n);
        }
    }

    #[test]
    fn squarefree_criterion() {
        let maximal: Vec<i64> = (-1..=6).filter(|&a| simplest_is_monogenic_maximal(a)).collect();
        assert_eq!(maximal, vec![-1, 1, 2, 4]);
    }
}
