//! Certified rational enclosures of the three real roots of `f`, interval
//! evaluation of the real embeddings, and the inverse problem: which integer
//! coordinate triples can have their conjugates inside given target intervals.
//!
//! Enclosures are always sorted ascending, so index 0 is the smallest
//! conjugate. The primed naming `ρ, ρ', ρ''` does not follow that order
//! in every family, and nothing here depends on it.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{ceil, floor, RationalInterval};
use crate::order::{Family, MinimalPoly, OrderElement, OrderParams};

/// Hard floor for automatic refinement.
pub const REFINEMENT_CAP_BITS: u64 = 64;

/// Width used by [`EmbeddedOrder::shared`].
pub const WORKING_WIDTH_BITS: u64 = 40;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn dyadic(bits: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

fn refinement_cap() -> BigRational {
    dyadic(REFINEMENT_CAP_BITS)
}

fn sign_at(poly: &MinimalPoly, x: &BigRational) -> Ordering {
    poly.eval(x).cmp(&BigRational::zero())
}

/// Three disjoint intervals, one around each real root of the minimal
/// polynomial, certified by a sign change of `f` across each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootEnclosures {
    params: OrderParams,
    intervals: [RationalInterval; 3],
}

impl RootEnclosures {
    pub fn params(&self) -> &OrderParams {
        &self.params
    }

    pub fn intervals(&self) -> &[RationalInterval; 3] {
        &self.intervals
    }

    /// Largest of the three widths.
    pub fn width(&self) -> BigRational {
        self.intervals.iter().map(RationalInterval::width).max().unwrap()
    }

    /// Narrow every interval to at most `width`. Never widens.
    pub fn refine(&self, width: &BigRational) -> Result<Self> {
        if !width.is_positive() {
            return Err(Error::InvalidInterval(format!("requested width {width} is not positive")));
        }
        let poly = self.params.minimal_poly();
        let intervals = self.intervals.clone().map(|iv| bisect(&poly, iv, width));
        Ok(RootEnclosures {
            params: self.params,
            intervals,
        })
    }

    /// Halve the current width.
    pub fn halve(&self) -> Result<Self> {
        self.refine(&(self.width() / BigInt::from(2)))
    }
}

/// Sign-certified enclosures of width at most `width`.
pub fn isolate_roots(params: OrderParams, width: &BigRational) -> Result<RootEnclosures> {
    if !width.is_positive() {
        return Err(Error::InvalidInterval(format!("requested width {width} is not positive")));
    }
    let poly = params.minimal_poly();
    let mut seeds = match known_seeds(&params).filter(|s| s.iter().all(|iv| straddles_root(&poly, iv))) {
        Some(s) => s,
        None => scan_seeds(&poly)?,
    };
    seeds.sort_by(|x, y| x.lo().cmp(y.lo()));
    let enc = RootEnclosures {
        params,
        intervals: seeds,
    };
    enc.refine(width)
}

fn straddles_root(poly: &MinimalPoly, iv: &RationalInterval) -> bool {
    let (l, h) = (sign_at(poly, iv.lo()), sign_at(poly, iv.hi()));
    l != Ordering::Equal && h != Ordering::Equal && l != h
}

/// Closed-form root brackets for the Ennola and Thomas families.
fn known_seeds(params: &OrderParams) -> Option<[RationalInterval; 3]> {
    let a = params.a();
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let iv = |lo: BigRational, hi: BigRational| RationalInterval::new(lo, hi).ok();
    match params.family() {
        Family::SimplestCubic => None,
        Family::Ennola => Some([
            iv(rat(1) + q(1, a + 3), rat(1) + q(1, a + 2))?,
            iv(q(-1, a), q(-1, a + 1))?,
            iv(rat(-a) + q(1, a * a + a), rat(-a) + q(1, a * a))?,
        ]),
        Family::Thomas => {
            let b = params.b()?;
            Some([
                iv(rat(b), rat(b + 1))?,
                iv(rat(a - 1), rat(a))?,
                iv(q(1, a * b), q(1, a * b - 1))?,
            ])
        }
    }
}

/// Scan a grid over the Cauchy bound, halving the step until three sign
/// changes appear. A cubic without rational roots never vanishes on the grid.
fn scan_seeds(poly: &MinimalPoly) -> Result<[RationalInterval; 3]> {
    let bound = poly.coeffs()[..3].iter().map(|c| c.abs()).max().unwrap() + 1;
    let bound = BigRational::from_integer(bound);
    let mut step = BigRational::one();
    for _ in 0..64 {
        let mut found = Vec::with_capacity(3);
        let mut x = -bound.clone();
        let mut prev = sign_at(poly, &x);
        while x < bound {
            let next = &x + &step;
            let s = sign_at(poly, &next);
            if s == Ordering::Equal {
                return Err(Error::Invariant(format!("minimal polynomial vanishes at {next}")));
            }
            if s != prev {
                found.push(RationalInterval::new_unchecked(x.clone(), next.clone()));
            }
            prev = s;
            x = next;
        }
        if let Ok(three) = <[RationalInterval; 3]>::try_from(found) {
            return Ok(three);
        }
        step /= BigInt::from(2);
    }
    Err(Error::Invariant("could not separate three real roots".into()))
}

/// Bisection to the requested width. Endpoints are first pulled inward onto a
/// dyadic grid (when that keeps the sign certificate) so the denominators stay
/// powers of two during long refinements.
fn bisect(poly: &MinimalPoly, iv: RationalInterval, width: &BigRational) -> RationalInterval {
    if &iv.width() <= width {
        return iv;
    }
    let (mut lo, mut hi) = (iv.lo().clone(), iv.hi().clone());
    let lo_sign = sign_at(poly, &lo);
    let hi_sign = sign_at(poly, &hi);

    let w = iv.width();
    let k = ((w.denom() * BigInt::from(16)) / w.numer() + 1u32).bits();
    let scale = BigRational::from_integer(BigInt::one() << k);
    let snapped_lo = BigRational::from_integer(ceil(&(&lo * &scale))) / &scale;
    let snapped_hi = BigRational::from_integer(floor(&(&hi * &scale))) / &scale;
    if snapped_lo < snapped_hi && sign_at(poly, &snapped_lo) == lo_sign && sign_at(poly, &snapped_hi) == hi_sign {
        lo = snapped_lo;
        hi = snapped_hi;
    }

    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / BigInt::from(2);
        match sign_at(poly, &mid) {
            Ordering::Equal => return RationalInterval::point(mid),
            s if s == lo_sign => lo = mid,
            _ => hi = mid,
        }
    }
    RationalInterval::new_unchecked(lo, hi)
}

/// Enclosures of the three conjugates of `elem`, indexed like `enc`.
pub fn embed_interval(elem: &OrderElement, enc: &RootEnclosures) -> Result<[RationalInterval; 3]> {
    if elem.params() != enc.params() {
        return Err(Error::IncompatibleOrder);
    }
    let [x1, x2, x3] = elem.coords().clone().map(BigRational::from_integer);
    Ok(enc.intervals.clone().map(|iv| iv.quadratic_image(&x1, &x2, &x3)))
}

/// Conjugate signs decided at the current width, `None` where undetermined.
pub fn conjugate_signs(elem: &OrderElement, enc: &RootEnclosures) -> Result<[Option<Ordering>; 3]> {
    Ok(embed_interval(elem, enc)?.map(|iv| iv.sign()))
}

/// Conjugate signs, refining a private copy of `enc` until all are decided.
pub fn certified_signs(elem: &OrderElement, enc: &RootEnclosures) -> Result<[Ordering; 3]> {
    if elem.params() != enc.params() {
        return Err(Error::IncompatibleOrder);
    }
    if elem.is_zero() {
        return Ok([Ordering::Equal; 3]);
    }
    let cap = refinement_cap();
    let mut enc = enc.clone();
    loop {
        let signs = conjugate_signs(elem, &enc)?;
        if let [Some(s0), Some(s1), Some(s2)] = signs {
            return Ok([s0, s1, s2]);
        }
        if enc.width() < cap {
            return Err(Error::RefinementExhausted("conjugate signs"));
        }
        enc = enc.halve()?;
    }
}

/// Inclusive integer ranges for `(x₁, x₂, x₃)`; `None` marks an empty range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientBox {
    pub ranges: [Option<(BigInt, BigInt)>; 3],
}

impl CoefficientBox {
    pub fn is_empty(&self) -> bool {
        self.ranges.iter().any(Option::is_none)
    }

    pub fn contains(&self, coords: &[BigInt; 3]) -> bool {
        self.ranges
            .iter()
            .zip(coords)
            .all(|(r, x)| matches!(r, Some((lo, hi)) if lo <= x && x <= hi))
    }

    /// Number of lattice points in the box.
    pub fn volume(&self) -> BigInt {
        self.ranges
            .iter()
            .map(|r| match r {
                Some((lo, hi)) => hi - lo + 1,
                None => BigInt::zero(),
            })
            .product()
    }
}

/// Sound integer box for every element whose `i`-th conjugate lies in
/// `targets[i]`. Refines the enclosures internally when `f'` at some root
/// cannot yet be separated from zero.
pub fn coefficient_box(targets: &[RationalInterval; 3], enc: &RootEnclosures) -> Result<CoefficientBox> {
    Ok(EmbeddedOrder::from_enclosures(enc.clone())?.coefficient_box(targets))
}

/// A lattice row: fixed `(x₂, x₃)` with every admissible `x₁` in `x1_lo..=x1_hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub x2: BigInt,
    pub x3: BigInt,
    pub x1_lo: BigInt,
    pub x1_hi: BigInt,
}

/// An order together with root enclosures narrow enough for certified sign
/// decisions on `f'`, plus the precomputed interval data used by the scans.
#[derive(Debug, Clone)]
pub struct EmbeddedOrder {
    params: OrderParams,
    enc: RootEnclosures,
    squares: [RationalInterval; 3],
    f_prime: [RationalInterval; 3],
    /// `lagrange[k][i]`: multiplier of the `i`-th target in coordinate `k`.
    lagrange: [[RationalInterval; 3]; 3],
}

type Memo = RwLock<HashMap<OrderParams, Arc<EmbeddedOrder>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

impl EmbeddedOrder {
    pub fn new(params: OrderParams) -> Result<Self> {
        Self::from_enclosures(isolate_roots(params, &dyadic(WORKING_WIDTH_BITS))?)
    }

    /// Memoized [`EmbeddedOrder::new`]; safe to call from many threads.
    pub fn shared(params: OrderParams) -> Result<Arc<Self>> {
        if let Some(hit) = memo().read().unwrap_or_else(|e| e.into_inner()).get(&params) {
            return Ok(Arc::clone(hit));
        }
        let built = Arc::new(Self::new(params)?);
        let mut table = memo().write().unwrap_or_else(|e| e.into_inner());
        Ok(Arc::clone(table.entry(params).or_insert(built)))
    }

    pub fn from_enclosures(mut enc: RootEnclosures) -> Result<Self> {
        let poly = enc.params.minimal_poly();
        let [_, c1, c2] = enc.params.low_coeffs().map(rat);
        let [d0, d1, d2] = poly.derivative().map(BigRational::from_integer);
        let cap = refinement_cap();
        loop {
            let ivs = enc.intervals.clone();
            let f_prime = ivs.clone().map(|iv| iv.quadratic_image(&d0, &d1, &d2));
            let disjoint = ivs[0].hi() < ivs[1].lo() && ivs[1].hi() < ivs[2].lo();
            if disjoint && f_prime.iter().all(|fp| !fp.contains_zero()) {
                let squares = ivs.clone().map(|iv| iv.quadratic_image(&rat(0), &rat(0), &rat(1)));
                let l2: [RationalInterval; 3] = std::array::from_fn(|i| {
                    RationalInterval::point(rat(1)).checked_div(&f_prime[i]).unwrap()
                });
                let l1: [RationalInterval; 3] = std::array::from_fn(|i| {
                    let num = &ivs[i] + &RationalInterval::point(c2.clone());
                    num.checked_div(&f_prime[i]).unwrap()
                });
                let l0: [RationalInterval; 3] = std::array::from_fn(|i| {
                    ivs[i].quadratic_image(&c1, &c2, &rat(1)).checked_div(&f_prime[i]).unwrap()
                });
                return Ok(EmbeddedOrder {
                    params: enc.params,
                    enc,
                    squares,
                    f_prime,
                    lagrange: [l0, l1, l2],
                });
            }
            if enc.width() < cap {
                return Err(Error::RefinementExhausted("signs of f' at the roots"));
            }
            enc = enc.halve()?;
        }
    }

    pub fn params(&self) -> &OrderParams {
        &self.params
    }

    pub fn enclosures(&self) -> &RootEnclosures {
        &self.enc
    }

    /// Enclosures of `f'` at the three roots.
    pub fn f_prime(&self) -> &[RationalInterval; 3] {
        &self.f_prime
    }

    pub fn f_prime_signs(&self) -> [Ordering; 3] {
        self.f_prime.clone().map(|iv| iv.sign().expect("certified at construction"))
    }

    pub fn embed(&self, elem: &OrderElement) -> Result<[RationalInterval; 3]> {
        embed_interval(elem, &self.enc)
    }

    /// Conjugate enclosures whose signs are all certified, refining when
    /// needed. Fails only for the zero element.
    pub fn embed_certified(&self, elem: &OrderElement) -> Result<[RationalInterval; 3]> {
        if elem.is_zero() {
            return Err(Error::Invariant("zero has no nonzero conjugate enclosure".into()));
        }
        let cap = refinement_cap();
        let mut enc = self.enc.clone();
        loop {
            let ivs = embed_interval(elem, &enc)?;
            if ivs.iter().all(|iv| !iv.contains_zero()) {
                return Ok(ivs);
            }
            if enc.width() < cap {
                return Err(Error::RefinementExhausted("conjugate signs"));
            }
            enc = enc.halve()?;
        }
    }

    pub fn coefficient_box(&self, targets: &[RationalInterval; 3]) -> CoefficientBox {
        let ranges = std::array::from_fn(|k| {
            let mut acc = &targets[0] * &self.lagrange[k][0];
            for (t, l) in targets.iter().zip(&self.lagrange[k]).skip(1) {
                acc = &acc + &(t * l);
            }
            acc.integer_hull()
        });
        CoefficientBox { ranges }
    }

    /// Visit every lattice row that can contain an element with conjugates in
    /// `targets`. Rows are emitted in ascending `(x₃, x₂)` order; bounds are
    /// sound but not tight, so callers still test each point exactly.
    pub fn scan_rows<B>(
        &self,
        targets: &[RationalInterval; 3],
        mut visit: impl FnMut(Row) -> ControlFlow<B>,
    ) -> Option<B> {
        let bx = self.coefficient_box(targets);
        let [Some((x1_lo, x1_hi)), Some((x2_lo, x2_hi)), Some((x3_lo, x3_hi))] = bx.ranges else {
            return None;
        };
        let box_x1 = RationalInterval::new_unchecked(x1_lo.into(), x1_hi.into());
        let box_x2 = RationalInterval::new_unchecked(x2_lo.into(), x2_hi.into());
        let ivs = &self.enc.intervals;

        // Differences of conjugates: x₂(rᵢ − rⱼ) + x₃(rᵢ² − rⱼ²) ∈ Tᵢ − Tⱼ.
        let pairs: Vec<_> = [(0, 1), (0, 2), (1, 2)]
            .into_iter()
            .map(|(i, j)| {
                (
                    &targets[i] - &targets[j],
                    &ivs[i] - &ivs[j],
                    &self.squares[i] - &self.squares[j],
                )
            })
            .collect();

        let mut x3 = x3_lo;
        while x3 <= x3_hi {
            let x3r = BigRational::from_integer(x3.clone());
            let mut x2_range = Some(box_x2.clone());
            for (diff, d1, d2) in &pairs {
                let Some(cur) = x2_range else { break };
                let rhs = diff - &d2.scale(&x3r);
                x2_range = rhs.checked_div(d1).and_then(|c| cur.intersect(&c));
            }
            if let Some((x2_lo, x2_hi)) = x2_range.as_ref().and_then(RationalInterval::integer_hull) {
                let mut x2 = x2_lo;
                while x2 <= x2_hi {
                    let x2r = BigRational::from_integer(x2.clone());
                    let mut x1_range = Some(box_x1.clone());
                    for (iv, target) in ivs.iter().zip(targets) {
                        let Some(cur) = x1_range else { break };
                        let partial = iv.quadratic_image(&BigRational::zero(), &x2r, &x3r);
                        x1_range = cur.intersect(&(target - &partial));
                    }
                    if let Some((x1_lo, x1_hi)) = x1_range.as_ref().and_then(RationalInterval::integer_hull) {
                        let row = Row {
                            x2: x2.clone(),
                            x3: x3.clone(),
                            x1_lo,
                            x1_hi,
                        };
                        if let ControlFlow::Break(b) = visit(row) {
                            return Some(b);
                        }
                    }
                    x2 += 1;
                }
            }
            x3 += 1;
        }
        None
    }

    /// Every lattice point whose conjugates might lie in `targets`.
    pub fn candidate_points(&self, targets: &[RationalInterval; 3]) -> Vec<[BigInt; 3]> {
        let mut out = Vec::new();
        self.scan_rows::<()>(targets, |row| {
            let mut x1 = row.x1_lo.clone();
            while x1 <= row.x1_hi {
                out.push([x1.clone(), row.x2.clone(), row.x3.clone()]);
                x1 += 1;
            }
            ControlFlow::Continue(())
        });
        out
    }
}
