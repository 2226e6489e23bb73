//! Maximin as expected qualitative utility.
//!
//! Outcomes `x_0, …, x_{n−1}` are ordered worst to best and valued
//! `u(x_i) = −ε^{−(n−i−1)}`. Every utility is negative and infinitely larger
//! in magnitude than the next better one, so a mixture's value is dominated
//! by its worst outcome and, among mixtures with the same worst outcome, by
//! that outcome's probability.
//!
//! The positive assignment `u(x_i) = ε^{n−i−1}` does not work: with
//! non-negative utilities the dominant term of any mixture belongs to its
//! best outcome, which gives a maximax rule instead. It is kept as
//! [`literal_maximin_utilities`] so the difference can be demonstrated.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::nsreal::NsReal;
use crate::pref::{mix, Lottery, PrefOrdering, Regime, UtilityAssignment};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaximinSpec {
    n: usize,
}

impl MaximinSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::PreconditionViolated(format!(
                "maximin needs at least two outcomes, got {n}"
            )));
        }
        Ok(MaximinSpec { n })
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn outcome(self, i: usize) -> String {
        outcome_id(i)
    }
}

pub fn outcome_id(i: usize) -> String {
    format!("x_{i}")
}

/// `u(x_i) = −ε^{−(n−i−1)}`, a signed assignment.
pub fn maximin_utilities(spec: MaximinSpec) -> UtilityAssignment {
    let mut u = UtilityAssignment::signed();
    for i in 0..spec.n {
        let k = (spec.n - i - 1) as i64;
        u.insert(outcome_id(i), -NsReal::eps_pow(-k))
            .expect("signed assignment accepts negative values");
    }
    u
}

/// `u(x_i) = ε^{n−i−1}`: positive infinitesimal powers, best outcome `1`.
pub fn literal_maximin_utilities(spec: MaximinSpec) -> UtilityAssignment {
    let mut u = UtilityAssignment::new();
    for i in 0..spec.n {
        let k = (spec.n - i - 1) as i64;
        u.insert(outcome_id(i), NsReal::eps_pow(k))
            .expect("positive utilities");
    }
    u
}

/// The lottery `λ·x_i + (1−λ)·x_j`.
pub fn maximin_mixture(
    spec: MaximinSpec,
    i: usize,
    lambda: &BigRational,
    j: usize,
) -> Result<Lottery> {
    if i >= spec.n || j >= spec.n {
        return Err(Error::IndexOrder(format!("{i}, {j} with n = {}", spec.n)));
    }
    mix(
        &NsReal::from_rational(lambda.clone()),
        &Lottery::degenerate(outcome_id(i)),
        &Lottery::degenerate(outcome_id(j)),
        Regime::NsUtil,
    )
}

/// Compares `λ·x_i + (1−λ)·x_j` with `μ·x_i' + (1−μ)·x_j'` by the worst
/// outcome first, then by the worst outcome's probability (lower is better).
pub fn maximin_compare_oracle(
    (i, lambda, j): (usize, &BigRational, usize),
    (i2, mu, j2): (usize, &BigRational, usize),
) -> Result<PrefOrdering> {
    if i >= j || i2 >= j2 {
        return Err(Error::IndexOrder(format!(
            "need i < j and i' < j', got ({i}, {j}) and ({i2}, {j2})"
        )));
    }
    for w in [lambda, mu] {
        if *w <= BigRational::zero() || *w >= BigRational::one() {
            return Err(Error::InvalidWeight {
                weight: w.to_string(),
                reason: "must lie strictly between 0 and 1".into(),
            });
        }
    }
    // (i, λ) is worse than (i', μ) iff x_i < x_i', or x_i ∼ x_i' and λ > μ
    let worse = |a: usize, wa: &BigRational, b: usize, wb: &BigRational| a < b || (a == b && wa > wb);
    Ok(if worse(i, lambda, i2, mu) {
        PrefOrdering::Worse
    } else if worse(i2, mu, i, lambda) {
        PrefOrdering::Better
    } else {
        PrefOrdering::Indifferent
    })
}
