//! Lexicographically ordered pairs, mixed componentwise. Used as a contrast
//! to the qualitative order: it satisfies independence but not the
//! existence of an indifferent mixture between a strictly preferred and a
//! strictly dispreferred pair.

use num_rational::BigRational;
use num_traits::One;

use super::solver::{affine_roots, partition, RationalIntervalSet};
use crate::error::Result;
use crate::pref::PrefOrdering;

pub type Pair = (BigRational, BigRational);

/// `(x, y) < (x', y')` iff `x < x'`, or `x = x'` and `y < y'`.
pub fn lexicographic_compare(v: &Pair, w: &Pair) -> PrefOrdering {
    match v.0.cmp(&w.0).then_with(|| v.1.cmp(&w.1)) {
        std::cmp::Ordering::Greater => PrefOrdering::Better,
        std::cmp::Ordering::Equal => PrefOrdering::Indifferent,
        std::cmp::Ordering::Less => PrefOrdering::Worse,
    }
}

/// `λ·v + (1−λ)·w`, componentwise.
pub fn lexicographic_mix(lambda: &BigRational, v: &Pair, w: &Pair) -> Pair {
    let rest = BigRational::one() - lambda;
    (
        lambda * &v.0 + &rest * &w.0,
        lambda * &v.1 + &rest * &w.1,
    )
}

/// All `γ ∈ (0, 1)` with `compare(γ·p + (1−γ)·r, q) = rel`.
pub fn lexicographic_solve(p: &Pair, r: &Pair, q: &Pair, rel: PrefOrdering) -> Result<RationalIntervalSet> {
    // component k of the difference is (r.k − q.k) + γ·(p.k − r.k)
    let roots = affine_roots([
        (&r.0 - &q.0, &p.0 - &r.0),
        (&r.1 - &q.1, &p.1 - &r.1),
    ]);
    partition(roots, |g| Ok(lexicographic_compare(&lexicographic_mix(g, p, r), q) == rel))
}
