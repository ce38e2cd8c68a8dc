//! Cross-oracle checks over parameter grids. Each check accepts the formula
//! under test as an argument, so a deliberately corrupted formula can be fed
//! in to confirm the harness reports it.

use std::cmp::Ordering;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{self, min_trace_upper};
use crate::codifferent::min_trace;
use crate::embeddings::{conjugate_signs, EmbeddedOrder};
use crate::error::Result;
use crate::indecomposable::{
    closed_form_indecomposables, indecomposable_classes, is_indecomposable, match_closed_form, Descriptor,
    IndecDescriptor,
};
use crate::lemmas::{self, LemmaReport};
use crate::order::{Family, OrderElement, OrderParams};

pub const SIMPLEST_CLASS_GRID: RangeInclusive<i64> = -1..=6;
pub const SIMPLEST_BOUND_GRID: RangeInclusive<i64> = -1..=10;
pub const ENNOLA_GRID: RangeInclusive<i64> = 3..=8;
pub const THOMAS_GRID: [(i64, i64); 7] = [(2, 4), (2, 5), (3, 5), (3, 6), (4, 6), (4, 7), (4, 8)];
pub const WITNESS_GRID: RangeInclusive<u64> = 1..=3;
pub const SIMPLEST_LEMMA_GRID: RangeInclusive<i64> = 5..=9;
pub const BETA_LEMMA_GRID: [(i64, i64); 3] = [(3, 6), (4, 7), (5, 7)];
pub const ORBIT_GRID: [i64; 3] = [3, 6, 9];
pub const LEMMA_WINDOW: i64 = 5;
pub const POSITIVITY_SAMPLES: usize = 10_000;
pub const POSITIVITY_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub id: u8,
    pub title: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(id: u8, title: impl Into<String>) -> Self {
        CheckReport { id, title: title.into(), checks: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(witness());
        }
    }

    fn absorb(&mut self, lemma: LemmaReport) {
        self.checks += lemma.checked;
        self.failures
            .extend(lemma.counterexamples.into_iter().map(|c| format!("{}: {c}", lemma.name)));
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} [{}] {} ({} checks)", self.id, self.title, self.checks)?;
        for w in self.failures.iter().take(5) {
            write!(f, "\n    counterexample: {w}")?;
        }
        if self.failures.len() > 5 {
            write!(f, "\n    ... {} more", self.failures.len() - 5)?;
        }
        Ok(())
    }
}

/// Enumerated classes against the closed-form list: a bijection, every
/// closed-form element indecomposable by exhaustive search.
fn classes_match(r: &mut CheckReport, params: OrderParams) -> Result<Vec<IndecDescriptor>> {
    let forms = closed_form_indecomposables(params);
    let classes = indecomposable_classes(params)?;
    let mut hit = vec![false; forms.len()];
    for c in &classes {
        match match_closed_form(c, &forms)? {
            Some(i) => {
                r.check(!hit[i], || format!("{params}: two classes match {}", forms[i]));
                hit[i] = true;
            }
            None => r.check(false, || format!("{params}: class of {c} has no closed form")),
        }
    }
    for (d, h) in forms.iter().zip(&hit) {
        r.check(*h, || format!("{params}: closed form {d} not enumerated"));
    }
    let flags: Vec<bool> = forms
        .par_iter()
        .map(|d| is_indecomposable(&d.to_element()))
        .collect::<Result<_>>()?;
    for (d, ok) in forms.iter().zip(flags) {
        r.check(ok, || format!("{params}: {d} decomposes"));
    }
    Ok(forms)
}

/// Criterion 1: simplest cubic classes.
pub fn check_simplest_classes(grid: RangeInclusive<i64>) -> Result<CheckReport> {
    let mut r = CheckReport::new(1, format!("simplest cubic classes = closed forms, a in {grid:?}"));
    for a in grid {
        let p = OrderParams::simplest(a)?;
        let forms = classes_match(&mut r, p)?;
        let expect = (a + 1) * (a + 2) / 2 + 2;
        r.check(forms.len() as i64 == expect, || format!("a={a}: {} classes, expected {expect}", forms.len()));
    }
    Ok(r)
}

fn max_class_norm(r: &mut CheckReport, params: OrderParams) -> Result<BigInt> {
    let classes = indecomposable_classes(params)?;
    let max = classes.iter().map(OrderElement::norm).max();
    r.check(max.is_some(), || format!("{params}: no classes"));
    Ok(max.unwrap_or_default())
}

/// Criterion 2: largest class norm equals the bound formula.
pub fn check_simplest_bounds(grid: RangeInclusive<i64>, bound: impl Fn(OrderParams) -> BigInt) -> Result<CheckReport> {
    let mut r = CheckReport::new(2, format!("simplest cubic norm bounds, a in {grid:?}"));
    for a in grid {
        let p = OrderParams::simplest(a)?;
        let (max, claimed) = (max_class_norm(&mut r, p)?, bound(p));
        r.check(max == claimed, || format!("a={a}: max norm {max}, bound {claimed}"));
        if a == 4 {
            r.check(max == BigInt::from(47), || format!("a=4: max norm {max} ≠ 47"));
        }
    }
    Ok(r)
}

/// Criterion 3: Ennola classes, minimal traces and norm bounds.
pub fn check_ennola(grid: RangeInclusive<i64>, bound: impl Fn(OrderParams) -> BigInt) -> Result<CheckReport> {
    let mut r = CheckReport::new(3, format!("Ennola classes, min traces and norm bounds, a in {grid:?}"));
    for a in grid {
        let p = OrderParams::ennola(a)?;
        let forms = classes_match(&mut r, p)?;
        let traces: Vec<(IndecDescriptor, u64)> = forms
            .par_iter()
            .filter(|d| d.variant() != Descriptor::One)
            .map(|d| {
                let e = d.to_element();
                Ok((*d, min_trace(&e, min_trace_upper(&e, Some(d)))?))
            })
            .collect::<Result<_>>()?;
        for (d, t) in traces {
            r.check(t == 2, || format!("a={a}: min trace of {d} is {t}"));
        }
        let (max, claimed) = (max_class_norm(&mut r, p)?, bound(p));
        r.check(max == claimed, || format!("a={a}: max norm {max}, bound {claimed}"));
        if a == 3 {
            r.check(max == BigInt::from(19), || format!("a=3: max norm {max} ≠ 19"));
        }
    }
    Ok(r)
}

/// Criterion 4: Thomas classes and minimal traces against `formula(v, w, a, b)`.
pub fn check_thomas(grid: &[(i64, i64)], formula: impl Fn(i64, i64, i64, i64) -> i64 + Sync) -> Result<CheckReport> {
    let mut r = CheckReport::new(4, format!("Thomas classes and min traces, (a,b) in {grid:?}"));
    for &(a, b) in grid {
        let p = OrderParams::thomas(a, b)?;
        let forms = classes_match(&mut r, p)?;
        let traces: Vec<(i64, i64, u64)> = forms
            .par_iter()
            .map(|d| {
                let Descriptor::ThomasVW { v, w } = d.variant() else { unreachable!("Thomas list") };
                let e = d.to_element();
                Ok((v, w, min_trace(&e, min_trace_upper(&e, None))?))
            })
            .collect::<Result<_>>()?;
        let mut ones = 0;
        for &(v, w, t) in &traces {
            let expect = formula(v, w, a, b);
            r.check(t as i64 == expect, || format!("({a},{b}) (v={v},w={w}): min trace {t}, formula {expect}"));
            ones += usize::from(t == 1);
        }
        r.check(ones as i64 >= b - a, || format!("({a},{b}): only {ones} classes of min trace 1"));
        let max = traces.iter().map(|x| x.2 as i64).max().unwrap_or(0);
        let cap = bounds::min_trace_cap_thomas(a, b);
        r.check(max == cap, || format!("({a},{b}): max min trace {max}, cap {cap}"));
    }
    Ok(r)
}

/// Criterion 5: the witness has exhaustively confirmed minimal trace above `n`.
pub fn check_witness(grid: RangeInclusive<u64>) -> Result<CheckReport> {
    let mut r = CheckReport::new(5, format!("large min trace witness, n in {grid:?}"));
    for n in grid {
        let w = bounds::witness_large_min_trace(n, true)?;
        let confirmed = w.confirmed.unwrap_or(0);
        r.check(confirmed > n && confirmed == w.achieved, || {
            format!("n={n}: {} {} confirmed {confirmed}, formula {}", w.params, w.descriptor, w.achieved)
        });
    }
    Ok(r)
}

/// The three norm formulas under test.
#[derive(Clone, Copy)]
pub struct NormFormulas {
    pub simplest: fn(i64, i64, i64) -> BigInt,
    pub ennola: fn(i64, i64) -> BigInt,
    pub thomas: fn(i64, i64, i64, i64) -> BigInt,
}

impl Default for NormFormulas {
    fn default() -> Self {
        NormFormulas {
            simplest: bounds::norm_formula_simplest,
            ennola: bounds::norm_formula_ennola,
            thomas: bounds::norm_formula_thomas,
        }
    }
}

/// Criterion 6: formula–oracle identities on the full descriptor ranges.
pub fn check_norm_formulas(f: NormFormulas) -> Result<CheckReport> {
    let mut r = CheckReport::new(6, "norm formulas = characteristic polynomial norms");
    for a in SIMPLEST_BOUND_GRID {
        let p = OrderParams::simplest(a)?;
        for v in 0..=a {
            for cap_w in 0..=a - v {
                let oracle = IndecDescriptor::simplest_vw_cap(p, v, cap_w)?.to_element().norm();
                let got = (f.simplest)(v, cap_w, a);
                r.check(got == oracle, || format!("simplest a={a} (v={v},W={cap_w}): {got} ≠ {oracle}"));
            }
        }
    }
    for a in ENNOLA_GRID {
        let p = OrderParams::ennola(a)?;
        for w in 1..a {
            let oracle = OrderElement::from_i64(p, [1, w, 1]).norm();
            let got = (f.ennola)(w, a);
            r.check(got == oracle, || format!("Ennola a={a} w={w}: {got} ≠ {oracle}"));
        }
    }
    for (a, b) in THOMAS_GRID {
        let p = OrderParams::thomas(a, b)?;
        for d in closed_form_indecomposables(p) {
            let (v, cap_w) = d.thomas_v_cap_w()?;
            let oracle = d.to_element().norm();
            let got = (f.thomas)(v, cap_w, a, b);
            r.check(got == oracle, || format!("Thomas ({a},{b}) (v={v},W={cap_w}): {got} ≠ {oracle}"));
        }
    }
    let b24 = bounds::norm_bound(OrderParams::thomas(2, 4)?).value;
    r.check(b24 == BigInt::from(16), || format!("Thomas (2,4) bound {b24} ≠ 16"));
    Ok(r)
}

/// Criterion 7: lemma falsification suites.
pub fn check_lemmas() -> Result<CheckReport> {
    let mut r = CheckReport::new(7, "lemma falsification suites");
    for a in SIMPLEST_LEMMA_GRID {
        r.absorb(lemmas::simplest_norm_monotonicity(a)?);
    }
    for (a, b) in BETA_LEMMA_GRID {
        r.absorb(lemmas::thomas_beta_exclusion(a, b, LEMMA_WINDOW)?);
        r.absorb(lemmas::thomas_beta_lessthan1(a, b, LEMMA_WINDOW)?);
    }
    for a in ORBIT_GRID {
        r.absorb(lemmas::orbit_properties(a)?);
    }
    Ok(r)
}

/// Lemma suites for one order, as selected from the command line.
pub fn check_lemmas_for(params: OrderParams, window: i64) -> Result<CheckReport> {
    let mut r = CheckReport::new(7, format!("lemma falsification suites for {params}"));
    let a = params.a();
    match params.family() {
        Family::SimplestCubic => {
            if a >= 5 {
                r.absorb(lemmas::simplest_norm_monotonicity(a)?);
            }
            r.absorb(lemmas::orbit_properties(a)?);
        }
        Family::Thomas => {
            let b = params.b().unwrap_or_default();
            r.absorb(lemmas::thomas_beta_exclusion(a, b, window)?);
            r.absorb(lemmas::thomas_beta_lessthan1(a, b, window)?);
            r.absorb(lemmas::thomas_norm_comparisons(a, b)?);
        }
        Family::Ennola => {}
    }
    Ok(r)
}

/// Interval verdict on total positivity: `Some` only when decided.
fn interval_verdict(signs: &[Option<Ordering>; 3]) -> Option<bool> {
    if signs.iter().any(|s| matches!(s, Some(Ordering::Less | Ordering::Equal))) {
        Some(false)
    } else if signs.iter().all(|s| *s == Some(Ordering::Greater)) {
        Some(true)
    } else {
        None
    }
}

fn family_grid(family: Family) -> Vec<OrderParams> {
    let built: Vec<Result<OrderParams>> = match family {
        Family::SimplestCubic => SIMPLEST_BOUND_GRID.map(OrderParams::simplest).collect(),
        Family::Ennola => (3..=12).map(OrderParams::ennola).collect(),
        Family::Thomas => THOMAS_GRID.iter().map(|&(a, b)| OrderParams::thomas(a, b)).collect(),
    };
    built.into_iter().map(|p| p.expect("grid parameters are valid")).collect()
}

/// Criterion 8: symmetric-function positivity agrees with interval signs
/// wherever the latter decide.
pub fn check_positivity(samples: usize, seed: u64) -> Result<CheckReport> {
    let mut r = CheckReport::new(8, format!("positivity oracles agree, {samples} samples per family"));
    let mut undecided = 0usize;
    for (k, family) in [Family::SimplestCubic, Family::Ennola, Family::Thomas].into_iter().enumerate() {
        let grid = family_grid(family);
        let orders: Vec<_> = grid.iter().map(|&p| EmbeddedOrder::shared(p)).collect::<Result<_>>()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
        for _ in 0..samples {
            let i = rng.gen_range(0..grid.len());
            let coords = [0; 3].map(|_| rng.gen_range(-20i64..=20));
            let x = OrderElement::from_i64(grid[i], coords);
            let exact = x.is_totally_positive();
            match interval_verdict(&conjugate_signs(&x, orders[i].enclosures())?) {
                Some(v) => r.check(v == exact, || format!("{}: {x}: intervals say {v}, symmetric functions {exact}", grid[i])),
                None => undecided += 1,
            }
        }
    }
    if undecided > 0 {
        r.title.push_str(&format!(", {undecided} undecided by intervals"));
    }
    Ok(r)
}

/// Every criterion, in order.
pub fn run_acceptance() -> Result<Vec<CheckReport>> {
    let nb = |p| bounds::norm_bound(p).value;
    Ok(vec![
        check_simplest_classes(SIMPLEST_CLASS_GRID)?,
        check_simplest_bounds(SIMPLEST_BOUND_GRID, nb)?,
        check_ennola(ENNOLA_GRID, nb)?,
        check_thomas(&THOMAS_GRID, bounds::min_trace_formula_thomas)?,
        check_witness(WITNESS_GRID)?,
        check_norm_formulas(NormFormulas::default())?,
        check_lemmas()?,
        check_positivity(POSITIVITY_SAMPLES, POSITIVITY_SEED)?,
    ])
}

/// Simplest cubic minimal traces where `Z[ρ]` is maximal: 2 for the class of
/// `1 + ρ + ρ²`, 1 for every other class.
pub fn check_simplest_min_traces(grid: RangeInclusive<i64>) -> Result<CheckReport> {
    let mut r = CheckReport::new(0, format!("simplest cubic min traces (maximal orders), a in {grid:?}"));
    for a in grid.filter(|&a| bounds::simplest_is_monogenic_maximal(a)) {
        let p = OrderParams::simplest(a)?;
        let forms = closed_form_indecomposables(p);
        let traces: Vec<u64> = forms
            .par_iter()
            .map(|d| {
                let e = d.to_element();
                min_trace(&e, min_trace_upper(&e, Some(d)))
            })
            .collect::<Result<_>>()?;
        for (d, t) in forms.iter().zip(traces) {
            let expect = if d.variant() == Descriptor::OnePlusRhoPlusRhoSq { 2 } else { 1 };
            r.check(t == expect, || format!("a={a}: min trace of {d} is {t}, expected {expect}"));
        }
    }
    Ok(r)
}

/// Norm bounds against class maxima for Thomas orders.
pub fn check_thomas_bounds(grid: &[(i64, i64)]) -> Result<CheckReport> {
    let mut r = CheckReport::new(0, format!("Thomas norm bounds, (a,b) in {grid:?}"));
    for &(a, b) in grid {
        let p = OrderParams::thomas(a, b)?;
        let (max, claimed) = (max_class_norm(&mut r, p)?, bounds::norm_bound(p).value);
        r.check(max == claimed, || format!("({a},{b}): max norm {max}, bound {claimed}"));
    }
    Ok(r)
}
