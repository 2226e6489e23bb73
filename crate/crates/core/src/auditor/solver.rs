//! Exact solution sets for comparisons between mixtures whose weight is a
//! standard rational in `(0, 1)`.
//!
//! Every coefficient of `α·a + (1−α)·b` is affine in `α`, so the verdict of
//! any regime's comparison can only change where one of those coefficients
//! crosses zero. Between consecutive roots one exact sample decides the whole
//! open cell; each root is decided by evaluating at the root itself.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::nsreal::{NsReal, QOrdering};
use crate::pref::{compare_values, Regime};

/// An interval with rational endpoints inside `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub lo_closed: bool,
    pub hi: BigRational,
    pub hi_closed: bool,
}

impl Interval {
    pub fn contains(&self, x: &BigRational) -> bool {
        let above = if self.lo_closed { *x >= self.lo } else { *x > self.lo };
        let below = if self.hi_closed { *x <= self.hi } else { *x < self.hi };
        above && below
    }

    fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// A point inside the interval: the endpoint for a singleton, otherwise
    /// the midpoint.
    pub fn sample(&self) -> BigRational {
        if self.is_point() {
            self.lo.clone()
        } else {
            (&self.lo + &self.hi) / BigRational::from_integer(2.into())
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo);
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// A finite, sorted, disjoint union of intervals inside `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalIntervalSet {
    intervals: Vec<Interval>,
}

impl RationalIntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The whole open unit interval.
    pub fn full() -> Self {
        Self::open(BigRational::zero(), BigRational::one())
    }

    pub fn open(lo: BigRational, hi: BigRational) -> Self {
        RationalIntervalSet {
            intervals: vec![Interval {
                lo,
                lo_closed: false,
                hi,
                hi_closed: false,
            }],
        }
    }

    pub fn point(x: BigRational) -> Self {
        RationalIntervalSet {
            intervals: vec![Interval {
                lo: x.clone(),
                lo_closed: true,
                hi: x,
                hi_closed: true,
            }],
        }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full()
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    pub fn single_point(&self) -> Option<&BigRational> {
        match self.intervals.as_slice() {
            [i] if i.is_point() => Some(&i.lo),
            _ => None,
        }
    }

    /// Some member of the set, if it has one.
    pub fn witness(&self) -> Option<BigRational> {
        self.intervals.first().map(Interval::sample)
    }
}

impl fmt::Display for RationalIntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("empty");
        }
        for (k, i) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str(" U ")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

fn at(alpha: &BigRational, at_one: &NsReal, at_zero: &NsReal) -> NsReal {
    crate::pref::mix_values(&NsReal::from_rational(alpha.clone()), at_one, at_zero)
}

/// Roots in `(0, 1)` of each coefficient of `α·f1 + (1−α)·f0`.
fn push_roots(f1: &NsReal, f0: &NsReal, roots: &mut Vec<BigRational>) {
    let zero = BigRational::zero();
    let one = BigRational::one();
    let exps = f1.terms().iter().chain(f0.terms()).map(|(k, _)| *k);
    for k in exps {
        let (c1, c0) = (f1.coefficient(k), f0.coefficient(k));
        let slope = &c1 - &c0;
        if slope.is_zero() {
            continue;
        }
        let root = -c0 / slope;
        if root > zero && root < one {
            roots.push(root);
        }
    }
}

/// All standard `α ∈ (0, 1)` with
/// `compare(α·x1 + (1−α)·x0, α·y1 + (1−α)·y0) = rel` under `regime`.
pub fn solve_affine_relation(
    x1: &NsReal,
    x0: &NsReal,
    y1: &NsReal,
    y0: &NsReal,
    rel: QOrdering,
    regime: Regime,
) -> Result<RationalIntervalSet> {
    partition(breakpoints(x1, x0, y1, y0), |alpha| {
        let got = compare_values(&at(alpha, x1, x0), &at(alpha, y1, y0), regime)?;
        Ok(QOrdering::from(got) == rel)
    })
}

fn breakpoints(x1: &NsReal, x0: &NsReal, y1: &NsReal, y0: &NsReal) -> Vec<BigRational> {
    let mut roots = Vec::new();
    push_roots(x1, x0, &mut roots);
    push_roots(y1, y0, &mut roots);
    push_roots(&(x1 - y1), &(x0 - y0), &mut roots);
    roots.sort();
    roots.dedup();
    roots
}

/// One point per piece of the partition of `(0, 1)` by `roots`: the cell
/// next to 1, the cell next to 0, then the remaining cells and the roots.
fn samples(roots: &[BigRational]) -> Vec<BigRational> {
    let two = BigRational::from_integer(2.into());
    let mut bounds = Vec::with_capacity(roots.len() + 2);
    bounds.push(BigRational::zero());
    bounds.extend(roots.iter().cloned());
    bounds.push(BigRational::one());
    let mids: Vec<BigRational> = bounds.windows(2).map(|w| (&w[0] + &w[1]) / &two).collect();
    let mut out = Vec::with_capacity(mids.len() + roots.len());
    out.push(mids[mids.len() - 1].clone());
    if mids.len() > 1 {
        out.push(mids[0].clone());
        out.extend(mids[1..mids.len() - 1].iter().cloned());
    }
    out.extend(roots.iter().cloned());
    out
}

/// Some `α` in the set [`solve_affine_relation`] returns, found without
/// building the set.
pub fn affine_relation_witness(
    x1: &NsReal,
    x0: &NsReal,
    y1: &NsReal,
    y0: &NsReal,
    rel: QOrdering,
    regime: Regime,
) -> Result<Option<BigRational>> {
    for alpha in samples(&breakpoints(x1, x0, y1, y0)) {
        let got = compare_values(&at(&alpha, x1, x0), &at(&alpha, y1, y0), regime)?;
        if QOrdering::from(got) == rel {
            return Ok(Some(alpha));
        }
    }
    Ok(None)
}

/// Whether [`solve_affine_relation`] would return all of `(0, 1)`.
pub fn affine_relation_everywhere(
    x1: &NsReal,
    x0: &NsReal,
    y1: &NsReal,
    y0: &NsReal,
    rel: QOrdering,
    regime: Regime,
) -> Result<bool> {
    for alpha in samples(&breakpoints(x1, x0, y1, y0)) {
        let got = compare_values(&at(&alpha, x1, x0), &at(&alpha, y1, y0), regime)?;
        if QOrdering::from(got) != rel {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Collects the points of `(0, 1)` where `test` holds, given that its
/// value is constant between consecutive `roots` (sorted, deduplicated,
/// all inside `(0, 1)`).
pub(crate) fn partition<F>(roots: Vec<BigRational>, test: F) -> Result<RationalIntervalSet>
where
    F: Fn(&BigRational) -> Result<bool>,
{
    let mut bounds = Vec::with_capacity(roots.len() + 2);
    bounds.push(BigRational::zero());
    bounds.extend(roots);
    bounds.push(BigRational::one());

    let mut out: Vec<Interval> = Vec::new();
    let mut open: Option<Interval> = None;
    let two = BigRational::from_integer(2.into());
    for w in 0..bounds.len() - 1 {
        let (lo, hi) = (&bounds[w], &bounds[w + 1]);
        // the root at `lo` (not for the left end at 0)
        if w > 0 {
            if test(lo)? {
                match open.as_mut() {
                    Some(cur) => {
                        cur.hi = lo.clone();
                        cur.hi_closed = true;
                    }
                    None => {
                        open = Some(Interval {
                            lo: lo.clone(),
                            lo_closed: true,
                            hi: lo.clone(),
                            hi_closed: true,
                        })
                    }
                }
            } else if let Some(cur) = open.take() {
                out.push(cur);
            }
        }
        let mid = (lo + hi) / &two;
        if test(&mid)? {
            match open.as_mut() {
                Some(cur) => {
                    cur.hi = hi.clone();
                    cur.hi_closed = false;
                }
                None => {
                    open = Some(Interval {
                        lo: lo.clone(),
                        lo_closed: false,
                        hi: hi.clone(),
                        hi_closed: false,
                    })
                }
            }
        } else if let Some(cur) = open.take() {
            out.push(cur);
        }
    }
    if let Some(cur) = open {
        out.push(cur);
    }
    Ok(RationalIntervalSet { intervals: out })
}

/// Roots in `(0, 1)` of `a + α·b` for each `(a, b)`, sorted and deduplicated.
pub(crate) fn affine_roots<I>(forms: I) -> Vec<BigRational>
where
    I: IntoIterator<Item = (BigRational, BigRational)>,
{
    let (zero, one) = (BigRational::zero(), BigRational::one());
    let mut roots: Vec<_> = forms
        .into_iter()
        .filter(|(_, slope)| !slope.is_zero())
        .map(|(c, slope)| -c / slope)
        .filter(|r| *r > zero && *r < one)
        .collect();
    roots.sort();
    roots.dedup();
    roots
}

/// All standard `α ∈ (0, 1)` with `compare(α·u_p + (1−α)·u_r, u_q) = rel`.
pub fn solve_mixture_relation(
    u_p: &NsReal,
    u_r: &NsReal,
    u_q: &NsReal,
    rel: QOrdering,
    regime: Regime,
) -> Result<RationalIntervalSet> {
    solve_affine_relation(u_p, u_r, u_q, u_q, rel, regime)
}
