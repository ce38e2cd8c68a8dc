//! The codifferent `(1/f'(ρ))·Z[ρ]`, its trace pairing with the order, and
//! minimal traces `min Tr(αδ)` over totally positive `δ`.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::embeddings::EmbeddedOrder;
use crate::error::{Error, Result};
use crate::interval::RationalInterval;
use crate::order::{Family, OrderElement, OrderParams};

/// `num / f'(ρ)` for an integral numerator `num ∈ Z[ρ]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodifferentElement {
    num: OrderElement,
}

impl CodifferentElement {
    pub fn new(num: OrderElement) -> Self {
        CodifferentElement { num }
    }

    pub fn num(&self) -> &OrderElement {
        &self.num
    }

    pub fn params(&self) -> &OrderParams {
        self.num.params()
    }

    /// `Tr(δ)`, the pairing with 1.
    pub fn trace(&self) -> BigInt {
        pairing_trace(self, &OrderElement::one(*self.params())).expect("same order")
    }
}

/// `f'(ρ)` as an element of `Z[ρ]`.
pub fn f_prime_element(params: OrderParams) -> OrderElement {
    let [d0, d1, d2] = params.minimal_poly().derivative();
    OrderElement::new(params, [d0, d1, d2])
}

/// `δ.num · f'(ρ)⁻¹` written as `γ / N(f'(ρ))` with integral `γ`.
fn quotient_parts(delta: &CodifferentElement) -> (OrderElement, BigInt) {
    let fp = f_prime_element(*delta.params());
    (delta.num.mul_unchecked(&fp.adjoint()), fp.norm())
}

/// Exact `Tr(α · δ)`, computed in `Q(ρ)` by inverting `f'(ρ)`.
pub fn pairing_trace(delta: &CodifferentElement, alpha: &OrderElement) -> Result<BigInt> {
    if delta.params() != alpha.params() {
        return Err(Error::IncompatibleOrder);
    }
    let (gamma, n) = quotient_parts(delta);
    let tr = gamma.mul_unchecked(alpha).trace();
    let (q, r) = tr.div_rem(&n);
    if !r.is_zero() {
        return Err(Error::Invariant(format!("Tr(({alpha})·δ) = {tr}/{n} is not integral")));
    }
    Ok(q)
}

/// Total positivity of `δ = γ/N` from the rational symmetric functions
/// `e₁/N, e₂/N², e₃/N³` of the quotient.
pub fn is_totally_positive_codiff(delta: &CodifferentElement) -> bool {
    if delta.num.is_zero() {
        return false;
    }
    let (gamma, n) = quotient_parts(delta);
    let cp = gamma.char_poly();
    let s = BigInt::from(if n.is_negative() { -1 } else { 1 });
    (&cp.e1 * &s).is_positive() && cp.e2.is_positive() && (&cp.e3 * &s).is_positive()
}

fn thomas(params: OrderParams) -> Result<(i64, i64)> {
    match (params.family(), params.b()) {
        (Family::Thomas, Some(b)) => Ok((params.a(), b)),
        _ => Err(Error::UnsupportedFamily(params.family())),
    }
}

/// `δ_v = (a² − a − (2a−1)ρ + ρ²) / f'(ρ)`.
pub fn delta_v(params: OrderParams) -> Result<CodifferentElement> {
    let (a, _) = thomas(params)?;
    Ok(CodifferentElement::new(OrderElement::from_i64(params, [a * a - a, -(2 * a - 1), 1])))
}

/// `δ_w = (a²b − a − 1 − (ab + a² − 1)ρ + aρ²) / f'(ρ)`.
pub fn delta_w(params: OrderParams) -> Result<CodifferentElement> {
    let (a, b) = thomas(params)?;
    let a_big = BigInt::from(a);
    let coords = [
        &a_big * &a_big * b - a - 1i64,
        -(&a_big * b + &a_big * &a_big - 1i64),
        a_big,
    ];
    Ok(CodifferentElement::new(OrderElement::new(params, coords)))
}

/// The general codifferent element pairing to `t` with `α(v, w)`, with free
/// integer parameters `k, l`.
pub fn delta_t(params: OrderParams, t: i64, v: i64, w: i64, k: i64, l: i64) -> Result<CodifferentElement> {
    let (a, b) = thomas(params)?;
    if !(0..b - a).contains(&v) || w < v * a || w >= (v + 1) * a {
        return Err(Error::Descriptor(format!("(v={v},w={w}) outside Ψ for {params}")));
    }
    let [a, b, t, v, w, k, l] = [a, b, t, v, w, k, l].map(BigInt::from);
    let c0 = -(&a * &t) - &a * (&v - &b) * &l + (1 - &a * &w) * &k;
    let c1 = &t + (&v - &b - &a) * &l + &w * &k;
    Ok(CodifferentElement::new(OrderElement::new(params, [c0, c1, l])))
}

/// Least `t ∈ [1, upper]` with `Tr(αδ) = t` for some totally positive `δ`.
pub fn min_trace(alpha: &OrderElement, upper: u64) -> Result<u64> {
    Ok(min_trace_with_witness(alpha, upper)?.0)
}

/// [`min_trace`] together with a `δ` attaining it.
///
/// For a target `t`, every conjugate product `α⁽ⁱ⁾δ⁽ⁱ⁾` is positive and the
/// three sum to `t`, so `0 < δ⁽ⁱ⁾ < t/α⁽ⁱ⁾`. Multiplying by `f'(ρ⁽ⁱ⁾)` bounds
/// the conjugates of the integral numerator, whose lattice points are then
/// scanned exhaustively with exact checks.
pub fn min_trace_with_witness(alpha: &OrderElement, upper: u64) -> Result<(u64, CodifferentElement)> {
    let params = *alpha.params();
    if !alpha.is_totally_positive() {
        return Err(Error::NotTotallyPositive(alpha.to_string()));
    }
    let eo = EmbeddedOrder::shared(params)?;
    let conj = eo.embed_certified(alpha)?;
    let basis = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        .map(|c| pairing_trace(&CodifferentElement::new(OrderElement::from_i64(params, c)), alpha));
    let [l1, l2, l3] = [basis[0].clone()?, basis[1].clone()?, basis[2].clone()?];

    for t in 1..=upper {
        let tb = BigInt::from(t);
        let targets: [RationalInterval; 3] = std::array::from_fn(|i| {
            let cap = BigRational::from_integer(tb.clone()) / conj[i].lo();
            let delta_i = RationalInterval::new_unchecked(BigRational::zero(), cap);
            &delta_i * &eo.f_prime()[i]
        });
        let hit = eo.scan_rows(&targets, |row| {
            // Tr(αδ) = l₁x₁ + l₂x₂ + l₃x₃ is linear in the numerator.
            let rest = &tb - &l2 * &row.x2 - &l3 * &row.x3;
            let try_x1 = |x1: BigInt| {
                let num = OrderElement::new(params, [x1, row.x2.clone(), row.x3.clone()]);
                let delta = CodifferentElement::new(num);
                is_totally_positive_codiff(&delta).then_some(delta)
            };
            if l1.is_zero() {
                if rest.is_zero() {
                    let mut x1 = row.x1_lo.clone();
                    while x1 <= row.x1_hi {
                        if let Some(d) = try_x1(x1.clone()) {
                            return ControlFlow::Break(d);
                        }
                        x1 += 1;
                    }
                }
            } else {
                let (x1, r) = rest.div_rem(&l1);
                if r.is_zero() && row.x1_lo <= x1 && x1 <= row.x1_hi {
                    if let Some(d) = try_x1(x1) {
                        return ControlFlow::Break(d);
                    }
                }
            }
            ControlFlow::Continue(())
        });
        if let Some(delta) = hit {
            debug_assert_eq!(pairing_trace(&delta, alpha).ok(), Some(tb));
            return Ok((t, delta));
        }
    }
    Err(Error::WitnessNotFound { upper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(p: OrderParams, c: [i64; 3]) -> OrderElement {
        OrderElement::from_i64(p, c)
    }

    /// `Tr(γ/f'(ρ))` is the `ρ²` coefficient of `γ`.
    fn euler_pairing(delta: &CodifferentElement, alpha: &OrderElement) -> BigInt {
        delta.num().try_mul(alpha).unwrap().coords()[2].clone()
    }

    fn thomas_alpha(p: OrderParams, v: i64, w: i64) -> OrderElement {
        let b = p.b().unwrap();
        el(p, [-v, b * w + 1, -w])
    }

    #[test]
    fn delta_v_numerator() {
        let p = OrderParams::thomas(2, 4).unwrap();
        let d = delta_v(p).unwrap();
        assert_eq!(d.num().coords(), &[2, -3, 1].map(BigInt::from));
        assert!(is_totally_positive_codiff(&d));
        assert_eq!(pairing_trace(&d, &OrderElement::one(p)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn named_elements_pair_as_claimed() {
        for (a, b) in [(2, 4), (3, 7), (4, 8), (5, 12)] {
            let p = OrderParams::thomas(a, b).unwrap();
            let (dv, dw) = (delta_v(p).unwrap(), delta_w(p).unwrap());
            assert!(is_totally_positive_codiff(&dv) && is_totally_positive_codiff(&dw));
            for v in 0..b - a {
                for w in v * a..(v + 1) * a {
                    let x = thomas_alpha(p, v, w);
                    assert_eq!(pairing_trace(&dv, &x).unwrap(), BigInt::from(b - a + 1 - v));
                    assert_eq!(pairing_trace(&dw, &x).unwrap(), BigInt::from(w - a * v + 1));
                }
            }
            // v₁ + (b−a+1)v₂ + (b−a+1)b·v₃
            let g = el(p, [3, -2, 5]);
            assert_eq!(pairing_trace(&dv, &g).unwrap(), BigInt::from(3 - 2 * (b - a + 1) + 5 * (b - a + 1) * b));
        }
    }

    #[test]
    fn delta_t_examples() {
        let p = OrderParams::thomas(3, 7).unwrap();
        assert_eq!(delta_t(p, 1, 0, 0, 0, 0).unwrap().num().coords(), &[-3, 1, 0].map(BigInt::from));
        for (t, k, l) in [(1, 0, 0), (4, -3, 2), (-2, 7, 5)] {
            let d = delta_t(p, t, 1, 4, k, l).unwrap();
            assert_eq!(pairing_trace(&d, &thomas_alpha(p, 1, 4)).unwrap(), BigInt::from(t));
            assert_eq!(d.trace(), BigInt::from(l));
        }
        assert!(delta_t(p, 1, 4, 12, 0, 0).is_err());
        assert!(delta_v(OrderParams::ennola(3).unwrap()).is_err());
    }

    #[test]
    fn zero_and_negated() {
        let p = OrderParams::thomas(2, 4).unwrap();
        let zero = CodifferentElement::new(OrderElement::zero(p));
        assert!(!is_totally_positive_codiff(&zero));
        assert_eq!(pairing_trace(&zero, &el(p, [4, -1, 9])).unwrap(), BigInt::zero());
        let neg = CodifferentElement::new(-delta_v(p).unwrap().num());
        assert!(!is_totally_positive_codiff(&neg));
    }

    #[test]
    fn min_trace_examples() {
        let t24 = OrderParams::thomas(2, 4).unwrap();
        assert_eq!(min_trace(&OrderElement::rho(t24), 3).unwrap(), 1);
        let e3 = OrderParams::ennola(3).unwrap();
        assert_eq!(min_trace(&el(e3, [1, 1, 1]), 3).unwrap(), 2);
        let t48 = OrderParams::thomas(4, 8).unwrap();
        assert_eq!(min_trace(&thomas_alpha(t48, 0, 3), 5).unwrap(), 4);
    }

    #[test]
    fn min_trace_errors() {
        let t48 = OrderParams::thomas(4, 8).unwrap();
        assert_eq!(
            min_trace(&thomas_alpha(t48, 0, 3), 3),
            Err(Error::WitnessNotFound { upper: 3 })
        );
        assert!(matches!(min_trace(&el(t48, [-1, 0, 0]), 3), Err(Error::NotTotallyPositive(_))));
    }

    #[test]
    fn witness_attains_min_trace() {
        let p = OrderParams::simplest(2).unwrap();
        let x = el(p, [1, 1, 1]);
        let (t, d) = min_trace_with_witness(&x, 4).unwrap();
        assert_eq!(t, 2);
        assert!(is_totally_positive_codiff(&d));
        assert_eq!(pairing_trace(&d, &x).unwrap(), BigInt::from(2));
    }

    fn any_params() -> impl Strategy<Value = OrderParams> {
        prop_oneof![
            (-1i64..8).prop_map(|a| OrderParams::simplest(a).unwrap()),
            (3i64..10).prop_map(|a| OrderParams::ennola(a).unwrap()),
            (2i64..7, 2i64..6).prop_map(|(a, d)| OrderParams::thomas(a, a + d).unwrap()),
        ]
    }

    fn coords() -> impl Strategy<Value = [i64; 3]> {
        [-30i64..30, -30i64..30, -30i64..30]
    }

    proptest! {
        #[test]
        fn pairing_matches_euler_and_is_bilinear(p in any_params(), n in coords(), x in coords(), y in coords()) {
            let d = CodifferentElement::new(el(p, n));
            let (x, y) = (el(p, x), el(p, y));
            let px = pairing_trace(&d, &x).unwrap();
            prop_assert_eq!(&px, &euler_pairing(&d, &x));
            let py = pairing_trace(&d, &y).unwrap();
            prop_assert_eq!(pairing_trace(&d, &x.try_add(&y).unwrap()).unwrap(), &px + &py);
            let d2 = CodifferentElement::new(y.clone());
            let sum = CodifferentElement::new(d.num().try_add(&y).unwrap());
            prop_assert_eq!(pairing_trace(&sum, &x).unwrap(), px + pairing_trace(&d2, &x).unwrap());
        }

        #[test]
        fn positive_pairs_have_positive_trace(p in any_params(), n in coords(), x in coords()) {
            let d = CodifferentElement::new(el(p, n));
            let x = el(p, x);
            if is_totally_positive_codiff(&d) && x.is_totally_positive() {
                prop_assert!(pairing_trace(&d, &x).unwrap() >= BigInt::from(1));
            }
        }

        #[test]
        fn codiff_positivity_matches_integer_route(p in any_params(), n in coords()) {
            // γ/f' ≻ 0 ⟺ γ·f' ≻ 0, since γ·f' = (γ/f')·f'²
            let d = CodifferentElement::new(el(p, n));
            let via_square = d.num().try_mul(&f_prime_element(p)).unwrap().is_totally_positive();
            prop_assert_eq!(is_totally_positive_codiff(&d), via_square);
        }
    }
}
