//! Lotteries, mixtures and expected-utility preference in the three
//! characterized regimes plus the fully qualitative one.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::auditor::solver::{solve_mixture_relation, RationalIntervalSet};
use crate::error::{Error, Result};
use crate::nsreal::{NsReal, QOrdering};

/// Which quantities may be nonstandard, and how expected utilities are
/// compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    /// Standard probabilities and utilities; classical comparison.
    Std,
    /// Standard probabilities, nonstandard utilities; compared by `≻`.
    NsUtil,
    /// Nonstandard probabilities, standard utilities; compared by the
    /// standard parts of expected utilities.
    NsProb,
    /// Both may be nonstandard; compared by `≻`.
    Qualitative,
}

impl Regime {
    pub const ALL: [Regime; 4] = [
        Regime::Std,
        Regime::NsUtil,
        Regime::NsProb,
        Regime::Qualitative,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Regime::Std => "std",
            Regime::NsUtil => "ns-util",
            Regime::NsProb => "ns-prob",
            Regime::Qualitative => "ns",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Regime> {
        Regime::ALL.into_iter().find(|r| r.tag() == tag)
    }

    pub fn standard_probabilities(self) -> bool {
        matches!(self, Regime::Std | Regime::NsUtil)
    }

    pub fn standard_utilities(self) -> bool {
        matches!(self, Regime::Std | Regime::NsProb)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Preference between two alternatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrefOrdering {
    Better,
    Indifferent,
    Worse,
}

impl PrefOrdering {
    pub fn reverse(self) -> Self {
        match self {
            PrefOrdering::Better => PrefOrdering::Worse,
            PrefOrdering::Indifferent => PrefOrdering::Indifferent,
            PrefOrdering::Worse => PrefOrdering::Better,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PrefOrdering::Better => "Better",
            PrefOrdering::Indifferent => "Indifferent",
            PrefOrdering::Worse => "Worse",
        }
    }
}

impl From<QOrdering> for PrefOrdering {
    fn from(q: QOrdering) -> Self {
        match q {
            QOrdering::Greater => PrefOrdering::Better,
            QOrdering::Equivalent => PrefOrdering::Indifferent,
            QOrdering::Less => PrefOrdering::Worse,
        }
    }
}

impl From<PrefOrdering> for QOrdering {
    fn from(p: PrefOrdering) -> Self {
        match p {
            PrefOrdering::Better => QOrdering::Greater,
            PrefOrdering::Indifferent => QOrdering::Equivalent,
            PrefOrdering::Worse => QOrdering::Less,
        }
    }
}

impl fmt::Display for PrefOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Utility of each outcome.
///
/// Unless `signed` is set, utilities must be non-negative. Only the
/// maximin construction produces signed assignments.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UtilityAssignment {
    values: BTreeMap<String, NsReal>,
    signed: bool,
}

impl UtilityAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn signed() -> Self {
        UtilityAssignment {
            values: BTreeMap::new(),
            signed: true,
        }
    }

    pub fn from_pairs<I, S>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, NsReal)>,
        S: Into<String>,
    {
        let mut u = Self::new();
        for (id, v) in pairs {
            u.insert(id, v)?;
        }
        Ok(u)
    }

    pub fn insert(&mut self, outcome: impl Into<String>, utility: NsReal) -> Result<()> {
        let outcome = outcome.into();
        if !self.signed && utility.sign() < 0 {
            return Err(Error::PreconditionViolated(format!(
                "utility of `{outcome}` is negative ({utility}) in an unsigned assignment"
            )));
        }
        self.values.insert(outcome, utility);
        Ok(())
    }

    pub fn get(&self, outcome: &str) -> Option<&NsReal> {
        self.values.get(outcome)
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &NsReal)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Checks the regime's constraint on utilities.
    pub fn check_regime(&self, regime: Regime) -> Result<()> {
        if regime.standard_utilities() {
            if let Some((id, v)) = self.values.iter().find(|(_, v)| !v.is_standard()) {
                return Err(Error::RegimeViolation {
                    path: format!("outcomes.{id}"),
                    literal: v.to_string(),
                    msg: format!("is not standard, regime {regime} requires standard utilities"),
                });
            }
        }
        Ok(())
    }
}

/// A finitely supported probability distribution over outcome ids.
///
/// Zero-probability entries are dropped so that equal distributions compare
/// equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lottery {
    probs: BTreeMap<String, NsReal>,
}

impl Lottery {
    /// Validates that probabilities are non-negative and sum to exactly one.
    pub fn new<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, NsReal)>,
        S: Into<String>,
    {
        let mut probs: BTreeMap<String, NsReal> = BTreeMap::new();
        for (id, p) in entries {
            let id = id.into();
            if p.sign() < 0 {
                return Err(Error::PreconditionViolated(format!(
                    "probability of `{id}` is negative ({p})"
                )));
            }
            let slot = probs.entry(id).or_default();
            *slot = &*slot + &p;
        }
        probs.retain(|_, p| !p.is_zero());
        let total: NsReal = probs.values().cloned().sum();
        if total != NsReal::one() {
            return Err(Error::PreconditionViolated(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Lottery { probs })
    }

    /// The sure lottery `δ(outcome)`.
    pub fn degenerate(outcome: impl Into<String>) -> Self {
        let mut probs = BTreeMap::new();
        probs.insert(outcome.into(), NsReal::one());
        Lottery { probs }
    }

    pub fn probability(&self, outcome: &str) -> NsReal {
        self.probs.get(outcome).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = (&str, &NsReal)> {
        self.probs.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn is_standard(&self) -> bool {
        self.probs.values().all(NsReal::is_standard)
    }

    pub fn check_regime(&self, regime: Regime) -> Result<()> {
        if regime.standard_probabilities() {
            if let Some((id, p)) = self.probs.iter().find(|(_, p)| !p.is_standard()) {
                return Err(Error::RegimeViolation {
                    path: id.clone(),
                    literal: p.to_string(),
                    msg: format!(
                        "is not standard, regime {regime} requires standard probabilities"
                    ),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Lottery {
    /// `{a: 1/2, b: 1/2}` with outcomes in lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (id, p)) in self.probs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{id}: {p}")?;
        }
        f.write_str("}")
    }
}

/// Checks `0 < λ < 1` and the regime's restriction on weights.
pub fn check_weight(lambda: &NsReal, regime: Regime) -> Result<()> {
    let bad = |reason: &str| Error::InvalidWeight {
        weight: lambda.to_string(),
        reason: reason.to_string(),
    };
    if lambda.sign() <= 0 || (NsReal::one() - lambda).sign() <= 0 {
        return Err(bad("must lie strictly between 0 and 1"));
    }
    if regime.standard_probabilities() && !lambda.is_standard() {
        return Err(bad(&format!("regime {regime} only admits standard weights")));
    }
    Ok(())
}

/// `λ·p + (1−λ)·q`, pointwise.
pub fn mix(lambda: &NsReal, p: &Lottery, q: &Lottery, regime: Regime) -> Result<Lottery> {
    check_weight(lambda, regime)?;
    Ok(mix_unchecked(lambda, p, q))
}

pub(crate) fn mix_unchecked(lambda: &NsReal, p: &Lottery, q: &Lottery) -> Lottery {
    let rest = NsReal::one() - lambda;
    let mut probs = BTreeMap::new();
    for id in p.probs.keys().chain(q.probs.keys()) {
        if probs.contains_key(id) {
            continue;
        }
        let v = lambda * p.probability(id) + &rest * q.probability(id);
        if !v.is_zero() {
            probs.insert(id.clone(), v);
        }
    }
    Lottery { probs }
}

/// Mixture of two values with the same weight: `λ·x + (1−λ)·y`.
pub fn mix_values(lambda: &NsReal, x: &NsReal, y: &NsReal) -> NsReal {
    y + lambda * (x - y)
}

/// Exact expected utility `Σ p(x)·u(x)`.
pub fn expected_utility(p: &Lottery, u: &UtilityAssignment) -> Result<NsReal> {
    p.support()
        .map(|(id, prob)| {
            u.get(id)
                .map(|v| prob * v)
                .ok_or_else(|| Error::MissingUtility(id.to_string()))
        })
        .sum()
}

/// The standard-valued functional used with nonstandard probabilities: the
/// standard part of the expected utility.
pub fn case1_functional(p: &Lottery, u: &UtilityAssignment) -> Result<BigRational> {
    expected_utility(p, u)?.standard_part()
}

/// Compares two expected utilities the way `regime` prescribes.
pub fn compare_values(x: &NsReal, y: &NsReal, regime: Regime) -> Result<PrefOrdering> {
    Ok(match regime {
        Regime::Std => x.cmp(y).into_pref(),
        Regime::NsUtil | Regime::Qualitative => x.qcompare(y).into(),
        Regime::NsProb => x.standard_part()?.cmp(&y.standard_part()?).into_pref(),
    })
}

trait IntoPref {
    fn into_pref(self) -> PrefOrdering;
}

impl IntoPref for std::cmp::Ordering {
    fn into_pref(self) -> PrefOrdering {
        QOrdering::from(self).into()
    }
}

pub fn prefers(
    p: &Lottery,
    q: &Lottery,
    u: &UtilityAssignment,
    regime: Regime,
) -> Result<PrefOrdering> {
    compare_values(&expected_utility(p, u)?, &expected_utility(q, u)?, regime)
}

/// Leading-exponent form of the override relation on expected utilities:
/// `x ≫ y` iff `x ≻ y` and `y` is zero or infinitesimal relative to `x`.
///
/// Both values must be non-negative.
pub fn overrides_values(x: &NsReal, y: &NsReal) -> Result<bool> {
    if x.sign() < 0 || y.sign() < 0 {
        return Err(Error::PreconditionViolated(format!(
            "overrides needs non-negative utilities, got {x} and {y}"
        )));
    }
    if x.qcompare(y) != QOrdering::Greater {
        return Ok(false);
    }
    Ok(match (x.leading_exponent(), y.leading_exponent()) {
        (_, None) => true,
        (Some(ex), Some(ey)) => ey > ex,
        (None, Some(_)) => false,
    })
}

/// `p ≫ q`: `p` is preferred to `q` so strongly that, in mixtures with
/// `p`, `q` could be replaced by anything worse without changing the
/// preference.
pub fn overrides(p: &Lottery, q: &Lottery, u: &UtilityAssignment) -> Result<bool> {
    if u.is_signed() {
        return Err(Error::PreconditionViolated(
            "overrides is defined for non-negative utilities".into(),
        ));
    }
    overrides_values(&expected_utility(p, u)?, &expected_utility(q, u)?)
}

/// Whether `λ` is negligible for the convex set generated by `generators`:
/// every mixture `λ·p + (1−λ)·q` with `p, q` in the set is indifferent to
/// `q`.
///
/// The sweep runs over ordered pairs of the depth-one mixture closure at
/// grid 8. When some pair of generators has distinct standard values, the
/// result is cross-checked against `λ` being infinitesimal.
pub fn is_negligible(
    lambda: &NsReal,
    u: &UtilityAssignment,
    generators: &[Lottery],
) -> Result<bool> {
    check_weight(lambda, Regime::NsProb)?;
    u.check_regime(Regime::NsProb)?;
    let closure = crate::auditor::closure_of(generators, 8, 1);
    let values = closure
        .iter()
        .map(|p| expected_utility(p, u))
        .collect::<Result<Vec<_>>>()?;
    let mut negligible = true;
    'outer: for a in &values {
        for b in &values {
            let m = mix_values(lambda, a, b);
            if compare_values(&m, b, Regime::NsProb)? != PrefOrdering::Indifferent {
                negligible = false;
                break 'outer;
            }
        }
    }
    let mut standard = Vec::with_capacity(generators.len());
    for g in generators {
        standard.push(case1_functional(g, u)?);
    }
    let separates = standard.iter().any(|s| *s != standard[0]);
    if separates && negligible != lambda.is_infinitesimal() {
        return Err(Error::AnalyticMismatch(format!(
            "weight {lambda}: sweep says negligible={negligible}, infinitesimal={}",
            lambda.is_infinitesimal()
        )));
    }
    Ok(negligible)
}

/// How property P fails, when it does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyPFailure {
    /// No standard weight makes the mixture indifferent to the sure option;
    /// `mixtures` is the preference every weight yields when it is the same
    /// for all of them.
    NoIndifference { mixtures: Option<PrefOrdering> },
    /// The indifference set has more than one point.
    NotUnique,
    /// Indifference is unique but the preference does not switch there.
    NotMonotone,
}

/// Result of probing property P for a sure option `p` between a better
/// outcome `l` and a worse outcome `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyPReport {
    /// Weights `λ` with `λ·l + (1−λ)·d ∼ p`.
    pub indifference: RationalIntervalSet,
    /// Weights with the mixture preferred to `p`.
    pub better: RationalIntervalSet,
    /// Weights with `p` preferred to the mixture.
    pub worse: RationalIntervalSet,
    pub threshold: Option<BigRational>,
    pub failure: Option<PropertyPFailure>,
}

impl PropertyPReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn check_property_p(
    p: &Lottery,
    l: &Lottery,
    d: &Lottery,
    u: &UtilityAssignment,
    regime: Regime,
) -> Result<PropertyPReport> {
    if prefers(l, p, u, regime)? != PrefOrdering::Better
        || prefers(p, d, u, regime)? != PrefOrdering::Better
    {
        return Err(Error::PreconditionViolated(
            "property P needs l preferred to p and p preferred to d".into(),
        ));
    }
    let (up, ul, ud) = (
        expected_utility(p, u)?,
        expected_utility(l, u)?,
        expected_utility(d, u)?,
    );
    let solve = |rel| solve_mixture_relation(&ul, &ud, &up, rel, regime);
    let indifference = solve(QOrdering::Equivalent)?;
    let better = solve(QOrdering::Greater)?;
    let worse = solve(QOrdering::Less)?;

    let (threshold, failure) = match indifference.single_point() {
        Some(t) => {
            let zero = BigRational::zero();
            let one = BigRational::one();
            let above = RationalIntervalSet::open(t.clone(), one);
            let below = RationalIntervalSet::open(zero, t.clone());
            let ok = better == above && worse == below;
            (
                Some(t.clone()),
                (!ok).then_some(PropertyPFailure::NotMonotone),
            )
        }
        None if indifference.is_empty() => {
            let mixtures = if better.is_full() {
                Some(PrefOrdering::Better)
            } else if worse.is_full() {
                Some(PrefOrdering::Worse)
            } else {
                None
            };
            (None, Some(PropertyPFailure::NoIndifference { mixtures }))
        }
        None => (None, Some(PropertyPFailure::NotUnique)),
    };
    Ok(PropertyPReport {
        indifference,
        better,
        worse,
        threshold,
        failure,
    })
}
