use cubic_indec::bounds::{norm_formula_ennola, norm_formula_simplest, norm_formula_thomas};
use cubic_indec::{OrderElement, OrderParams};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Fraction-free determinant (Bareiss).
fn det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// `Res(f, g)` for monic cubic `f` and `g = x₁ + x₂x + x₃x²` of formal degree 2,
/// which equals `Π g(rᵢ)` over the roots of `f`.
fn resultant_norm(p: OrderParams, x: [i64; 3]) -> BigInt {
    let f: Vec<BigInt> = p.minimal_poly().coeffs().iter().rev().cloned().collect();
    let g: Vec<BigInt> = x.iter().rev().map(|&c| BigInt::from(c)).collect();
    let mut rows = Vec::new();
    for shift in 0..2 {
        let mut row = vec![BigInt::zero(); 5];
        for (i, c) in f.iter().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..3 {
        let mut row = vec![BigInt::zero(); 5];
        for (i, c) in g.iter().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    det(rows)
}

#[test]
fn ennola_one_plus_rho_plus_rho_squared() {
    let p = OrderParams::ennola(3).unwrap();
    let x = OrderElement::from_i64(p, [1, 1, 1]);
    assert_eq!(x.norm(), BigInt::from(19));
    assert_eq!(resultant_norm(p, [1, 1, 1]), BigInt::from(19));
    assert_eq!(norm_formula_ennola(1, 3), BigInt::from(19));
}

#[test]
fn resultant_of_rho_is_one() {
    for p in [OrderParams::simplest(2), OrderParams::ennola(5), OrderParams::thomas(2, 4)] {
        assert_eq!(resultant_norm(p.unwrap(), [0, 1, 0]), BigInt::one());
    }
}

#[test]
fn formulas_match_resultant_on_wider_grids() {
    for a in -1..=15 {
        let p = OrderParams::simplest(a).unwrap();
        for v in 0..=a {
            for cap_w in 0..=a - v {
                let w = v * (a + 2) + 1 + cap_w;
                assert_eq!(norm_formula_simplest(v, cap_w, a), resultant_norm(p, [-v, -w, v + 1]), "a={a}");
            }
        }
    }
    for a in 3..=20 {
        let p = OrderParams::ennola(a).unwrap();
        for w in 1..a {
            assert_eq!(norm_formula_ennola(w, a), resultant_norm(p, [1, w, 1]));
        }
    }
    for a in 2..=7 {
        for b in a + 2..=a + 9 {
            let p = OrderParams::thomas(a, b).unwrap();
            for v in 0..b - a {
                for cap_w in 0..a {
                    let w = a * v + cap_w;
                    assert_eq!(norm_formula_thomas(v, cap_w, a, b), resultant_norm(p, [-v, b * w + 1, -w]));
                }
            }
        }
    }
}

fn any_params() -> impl Strategy<Value = OrderParams> {
    prop_oneof![
        (-1i64..12).prop_map(|a| OrderParams::simplest(a).unwrap()),
        (3i64..12).prop_map(|a| OrderParams::ennola(a).unwrap()),
        (2i64..8, 2i64..8).prop_map(|(a, d)| OrderParams::thomas(a, a + d).unwrap()),
    ]
}

proptest! {
    #[test]
    fn char_poly_norm_equals_resultant(p in any_params(), x in [-40i64..40, -40i64..40, -40i64..40]) {
        prop_assert_eq!(OrderElement::from_i64(p, x).norm(), resultant_norm(p, x));
    }

    #[test]
    fn norm_is_multiplicative(p in any_params(), x in [-9i64..9, -9i64..9, -9i64..9], y in [-9i64..9, -9i64..9, -9i64..9]) {
        let (x, y) = (OrderElement::from_i64(p, x), OrderElement::from_i64(p, y));
        prop_assert_eq!(x.try_mul(&y).unwrap().norm(), x.norm() * y.norm());
    }
}
