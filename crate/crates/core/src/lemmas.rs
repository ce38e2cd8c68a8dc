//! Falsification suites for the structural lemmas. Each claim is checked
//! literally over a bounded window; a failure carries the witness tuple.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;

use crate::bounds::{split2, split3};
use crate::embeddings::EmbeddedOrder;
use crate::error::Result;
use crate::indecomposable::{same_unit_class, t1, t2, triangle_sets, IndecDescriptor};
use crate::order::{OrderElement, OrderParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub name: String,
    pub checked: usize,
    pub counterexamples: Vec<String>,
}

impl LemmaReport {
    fn new(name: impl Into<String>) -> Self {
        LemmaReport { name: name.into(), checked: 0, counterexamples: Vec::new() }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.counterexamples.push(witness());
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} checks", self.name, self.checked)?;
        if !self.passed() {
            write!(f, ", {} counterexamples, first {}", self.counterexamples.len(), self.counterexamples[0])?;
        }
        f.write_str(")")
    }
}

/// Norm of the simplest cubic `α(v, W)` through the characteristic polynomial.
fn simplest_norm(p: OrderParams, v: i64, cap_w: i64) -> Result<BigInt> {
    Ok(IndecDescriptor::simplest_vw_cap(p, v, cap_w)?.to_element().norm())
}

/// Norm comparisons among `α(v, W)` for a simplest cubic order with `a ≥ 5`.
pub fn simplest_norm_monotonicity(a: i64) -> Result<LemmaReport> {
    let p = OrderParams::simplest(a)?;
    let (cap_a, _) = split3(a);
    let mut r = LemmaReport::new(format!("simplest norm monotonicity a={a}"));
    let n = |v, w| simplest_norm(p, v, w);
    for v in 0..cap_a {
        for cap_w in v + 1..=a - 2 * v - 3 {
            let (lhs, rhs) = (n(v, cap_w)?, n(v + 1, cap_w)?);
            r.check(lhs < rhs, || format!("part 1 (v={v},W={cap_w}): {lhs} ≥ {rhs}"));
        }
        let (lhs, rhs) = (n(v, v)?, n(v + 1, v + 1)?);
        r.check(lhs < rhs, || format!("part 2 v={v}: {lhs} ≥ {rhs}"));
    }
    for v in 0..=cap_a - 2 {
        for (part, off) in [(3, 1), (4, 2)] {
            let (lhs, rhs) = (n(v, a - 2 * v - off)?, n(v + 1, a - 2 * (v + 1) - off)?);
            r.check(lhs < rhs, || format!("part {part} v={v}: {lhs} ≥ {rhs}"));
        }
    }
    Ok(r)
}

/// `β(t, v₂, v₃) = t − (b−a+1)v₂ − (b−a+1)b·v₃ + v₂ρ + v₃ρ²`.
pub fn thomas_beta(p: OrderParams, t: i64, v2: i64, v3: i64) -> OrderElement {
    let (a, b) = (p.a(), p.b().unwrap_or(0));
    let s = BigInt::from(b - a + 1);
    let c0 = BigInt::from(t) - &s * v2 - &s * b * v3;
    OrderElement::new(p, [c0, BigInt::from(v2), BigInt::from(v3)])
}

/// Sign-case exclusions for `β(t, v₂, v₃)` with `t ∈ [1, b−a]` and
/// `v₂, v₃ ∈ [−window, window]`.
pub fn thomas_beta_exclusion(a: i64, b: i64, window: i64) -> Result<LemmaReport> {
    let p = OrderParams::thomas(a, b)?;
    let mut r = LemmaReport::new(format!("β sign-case exclusions ({a},{b}) window {window}"));
    for t in 1..=b - a {
        for v2 in -window..=window {
            for v3 in -window..=window {
                let case = match (v2.cmp(&0), v3.cmp(&0)) {
                    (Ordering::Equal, o) if o != Ordering::Equal => 1,
                    (Ordering::Less, Ordering::Less) => 2,
                    (Ordering::Greater, o) if o != Ordering::Less => 3,
                    (Ordering::Less, _) if b <= 2 * a - 3 => 4,
                    _ => continue,
                };
                let tp = thomas_beta(p, t, v2, v3).is_totally_positive();
                r.check(!tp, || format!("case {case}: (t,v2,v3)=({t},{v2},{v3}) is totally positive"));
            }
        }
    }
    Ok(r)
}

/// Whether the exclusion of `β(t,v₂,v₃)'' ≤ 1` applies to `(a, b)`.
pub fn lessthan1_applies(a: i64, b: i64) -> bool {
    b >= 2 * a - 2 && ![(2, 4), (2, 5), (3, 5)].contains(&(a, b))
}

/// For `v₂ < 0 ≤ v₃`, a totally positive `β` has smallest conjugate above 1.
pub fn thomas_beta_lessthan1(a: i64, b: i64, window: i64) -> Result<LemmaReport> {
    let p = OrderParams::thomas(a, b)?;
    let mut r = LemmaReport::new(format!("β'' > 1 ({a},{b}) window {window}"));
    if !lessthan1_applies(a, b) {
        return Ok(r);
    }
    let eo = EmbeddedOrder::shared(p)?;
    let one = OrderElement::one(p);
    for t in 1..=b - a {
        for v2 in -window..0 {
            for v3 in 0..=window {
                let beta = thomas_beta(p, t, v2, v3);
                if !beta.is_totally_positive() {
                    continue;
                }
                // enclosures ascend, so index 0 is the smallest conjugate
                let shifted = eo.embed_certified(&beta.try_sub(&one)?)?;
                let above = shifted[0].sign() == Some(Ordering::Greater);
                r.check(above, || format!("(t,v2,v3)=({t},{v2},{v3}) has β'' ≤ 1"));
            }
        }
    }
    Ok(r)
}

/// Norm comparisons among Thomas `α(v, W)`, `w = av + W`.
pub fn thomas_norm_comparisons(a: i64, b: i64) -> Result<LemmaReport> {
    let p = OrderParams::thomas(a, b)?;
    let mut r = LemmaReport::new(format!("Thomas norm comparisons ({a},{b})"));
    if (a, b) == (2, 4) {
        return Ok(r);
    }
    let n = |v: i64, cap_w: i64| -> Result<BigInt> {
        let d = IndecDescriptor::new(p, crate::indecomposable::Descriptor::ThomasVW { v, w: a * v + cap_w })?;
        Ok(d.to_element().norm())
    };
    let (cap_a, _) = split2(a);
    let (l, l0) = split2(b - a);
    let mut less = |part: &str, x: (i64, i64), y: (i64, i64)| -> Result<()> {
        let (lhs, rhs) = (n(x.0, x.1)?, n(y.0, y.1)?);
        r.check(lhs < rhs, || format!("part {part}: N{x:?}={lhs} ≥ N{y:?}={rhs}"));
        Ok(())
    };
    for v in 0..=b - a - 2 {
        for cap_w in 0..=a - 2 {
            less("1", (v, cap_w), (v, cap_w + 1))?;
        }
    }
    let top = b - a - 1;
    if a != 2 {
        for cap_w in 0..=cap_a {
            less("2a", (top, cap_w), (top, cap_w + 1))?;
        }
        for cap_w in cap_a + 1..=a - 1 {
            less("2b", (top, cap_w), (top - 1, cap_w))?;
        }
    } else {
        less("3", (b - 3, 0), (b - 3, 1))?;
        less("3", (b - 3, 1), (b - 4, 1))?;
    }
    let v_max = if l0 == 0 { l - 2 } else { l - 1 };
    for v in 0..=v_max {
        less("4", (v, a - 1), (v + 1, a - 1))?;
    }
    Ok(r)
}

/// Closure, orbit, fixed-point and norm-invariance properties of `T₁, T₂`
/// on `▲(a)`, plus the conjugate-times-unit description of `T₁`.
pub fn orbit_properties(a: i64) -> Result<LemmaReport> {
    let p = OrderParams::simplest(a)?;
    let mut r = LemmaReport::new(format!("T1/T2 orbit properties a={a}"));
    let (full, base) = triangle_sets(a)?;
    let (cap_a, a0) = split3(a);
    let centre = (a0 == 0).then(|| IndecDescriptor::simplest_vw_cap(p, cap_a, cap_a)).transpose()?;
    for d in &full {
        let (x, y) = (t1(d)?, t2(d)?);
        r.check(full.contains(&x) && full.contains(&y), || format!("{d} leaves ▲"));
        r.check(t1(&x)? == y && t1(&y)? == *d, || format!("{d}: T1∘T1 ≠ T2 or T1³ ≠ id"));
        let fixed = x == *d;
        r.check(fixed == (Some(*d) == centre), || format!("{d}: fixed point mismatch"));
        r.check(
            base.contains(d) || base.contains(&x) || base.contains(&y),
            || format!("orbit of {d} misses ▲0"),
        );
        if base.contains(d) && Some(*d) != centre {
            r.check(!base.contains(&x) && !base.contains(&y), || format!("orbit of {d} meets ▲0 twice"));
        }
        let e = d.to_element();
        let n = e.norm();
        r.check(
            x.to_element().norm() == n && y.to_element().norm() == n,
            || format!("{d}: norm changes along its orbit"),
        );
        let conj = e.galois_conjugate()?;
        let conj2 = conj.galois_conjugate()?;
        let ok = same_unit_class(&conj, &x.to_element())? || same_unit_class(&conj2, &x.to_element())?;
        r.check(ok, || format!("T1({d}) is not a conjugate times a totally positive unit"));
    }
    Ok(r)
}
