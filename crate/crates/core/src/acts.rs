//! Acts over a finite state space: each act assigns a lottery to every
//! state, and is valued by its belief-weighted expected utility.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::nsreal::NsReal;
use crate::pref::{compare_values, expected_utility, Lottery, PrefOrdering, Regime, UtilityAssignment};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace {
    states: Vec<String>,
}

impl StateSpace {
    pub fn new<I, S>(ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let states: Vec<String> = ids.into_iter().map(Into::into).collect();
        if states.is_empty() {
            return Err(Error::PreconditionViolated("state space is empty".into()));
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(Error::PreconditionViolated(format!("duplicate state `{s}`")));
            }
        }
        Ok(StateSpace { states })
    }

    pub fn ids(&self) -> &[String] {
        &self.states
    }

    pub fn contains(&self, id: &str) -> bool {
        self.states.iter().any(|s| s == id)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Subjective probabilities of the states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Belief {
    probs: BTreeMap<String, NsReal>,
}

impl Belief {
    pub fn new<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, NsReal)>,
        S: Into<String>,
    {
        let mut probs = BTreeMap::new();
        for (id, p) in entries {
            let id = id.into();
            if p.sign() < 0 {
                return Err(Error::PreconditionViolated(format!(
                    "belief in `{id}` is negative ({p})"
                )));
            }
            probs.insert(id, p);
        }
        let total: NsReal = probs.values().cloned().sum();
        if total != NsReal::one() {
            return Err(Error::PreconditionViolated(format!(
                "beliefs sum to {total}, not 1"
            )));
        }
        Ok(Belief { probs })
    }

    pub fn uniform(states: &StateSpace) -> Self {
        let p = NsReal::ratio(1, states.len() as i64);
        Belief {
            probs: states.ids().iter().map(|s| (s.clone(), p.clone())).collect(),
        }
    }

    pub fn get(&self, state: &str) -> NsReal {
        self.probs.get(state).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &NsReal)> {
        self.probs.iter().map(|(k, v)| (k.as_str(), v))
    }
}

/// A mapping from every state to a lottery.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Act {
    outcomes: BTreeMap<String, Lottery>,
}

impl Act {
    pub fn new<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = (S, Lottery)>,
        S: Into<String>,
    {
        Act {
            outcomes: entries.into_iter().map(|(s, l)| (s.into(), l)).collect(),
        }
    }

    pub fn at(&self, state: &str) -> Option<&Lottery> {
        self.outcomes.get(state)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Lottery)> {
        self.outcomes.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Copy of this act with the lottery at `state` replaced.
    pub fn with(&self, state: &str, lottery: Lottery) -> Act {
        let mut a = self.clone();
        a.outcomes.insert(state.to_string(), lottery);
        a
    }

    /// Whether the two acts agree on every state except possibly `state`.
    pub fn agrees_off(&self, other: &Act, state: &str) -> bool {
        self.outcomes
            .iter()
            .filter(|(s, _)| s.as_str() != state)
            .all(|(s, l)| other.outcomes.get(s) == Some(l))
            && other
                .outcomes
                .keys()
                .filter(|s| s.as_str() != state)
                .all(|s| self.outcomes.contains_key(s))
    }
}

impl fmt::Display for Act {
    /// `[s: {a: 1}, t: {b: 1/2, c: 1/2}]` with states in lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (s, l)) in self.outcomes.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}: {l}")?;
        }
        f.write_str("]")
    }
}

/// The act that yields `p` in every state.
pub fn constant_act(p: &Lottery, states: &StateSpace) -> Act {
    Act::new(states.ids().iter().map(|s| (s.clone(), p.clone())))
}

/// A subjective expected utility model over a finite state space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AaModel {
    pub states: StateSpace,
    pub belief: Belief,
    pub utilities: UtilityAssignment,
    pub regime: Regime,
}

impl AaModel {
    /// Validates cross references and the regime's constraints.
    pub fn new(
        states: StateSpace,
        belief: Belief,
        utilities: UtilityAssignment,
        regime: Regime,
    ) -> Result<Self> {
        for (s, p) in belief.iter() {
            if !states.contains(s) {
                return Err(Error::UnknownState(s.to_string()));
            }
            if regime.standard_probabilities() && !p.is_standard() {
                return Err(Error::RegimeViolation {
                    path: format!("states.{s}"),
                    literal: p.to_string(),
                    msg: format!("is not standard, regime {regime} requires standard beliefs"),
                });
            }
        }
        utilities.check_regime(regime)?;
        Ok(AaModel {
            states,
            belief,
            utilities,
            regime,
        })
    }

    pub fn check_act(&self, a: &Act) -> Result<()> {
        for s in self.states.ids() {
            let l = a.at(s).ok_or_else(|| {
                Error::PreconditionViolated(format!("act is not defined on state `{s}`"))
            })?;
            l.check_regime(self.regime)?;
        }
        if let Some((s, _)) = a.iter().find(|(s, _)| !self.states.contains(s)) {
            return Err(Error::UnknownState(s.to_string()));
        }
        Ok(())
    }
}

/// `Σₛ belief(s)·EU(a(s))`.
pub fn act_utility(a: &Act, m: &AaModel) -> Result<NsReal> {
    m.states
        .ids()
        .iter()
        .map(|s| {
            let l = a.at(s).ok_or_else(|| {
                Error::PreconditionViolated(format!("act is not defined on state `{s}`"))
            })?;
            Ok(m.belief.get(s) * expected_utility(l, &m.utilities)?)
        })
        .sum()
}

pub fn act_prefers(a: &Act, b: &Act, m: &AaModel) -> Result<PrefOrdering> {
    compare_values(&act_utility(a, m)?, &act_utility(b, m)?, m.regime)
}

/// Whether state `t` is null: acts that agree off `t` are always
/// indifferent.
///
/// The decision comes from the analytic rule: `t` has zero belief, or for
/// every generator act `a`, replacing `a(t)` by the least and by the most
/// valuable lottery the generators use at `t` gives indifferent acts. The
/// definitional sweep over generator pairs `(a, a[t := b(t)])` is run as
/// well and must agree.
pub fn is_null(t: &str, m: &AaModel, generators: &[Act]) -> Result<bool> {
    if !m.states.contains(t) {
        return Err(Error::UnknownState(t.to_string()));
    }
    let weight = m.belief.get(t);

    let mut sweep = true;
    'outer: for a in generators {
        for b in generators {
            let b_t = b.at(t).ok_or_else(|| Error::UnknownState(t.to_string()))?;
            let a2 = a.with(t, b_t.clone());
            if act_prefers(a, &a2, m)? != PrefOrdering::Indifferent {
                sweep = false;
                break 'outer;
            }
        }
    }

    let analytic = if weight.is_zero() {
        true
    } else {
        let mut at_t = Vec::with_capacity(generators.len());
        for b in generators {
            let l = b.at(t).ok_or_else(|| Error::UnknownState(t.to_string()))?;
            at_t.push(expected_utility(l, &m.utilities)?);
        }
        match (at_t.iter().min(), at_t.iter().max()) {
            (Some(lo), Some(hi)) if lo != hi => {
                let mut all = true;
                for (a, here) in generators.iter().zip(&at_t) {
                    let rest = act_utility(a, m)? - &weight * here;
                    let low = &rest + &weight * lo;
                    let high = &rest + &weight * hi;
                    if compare_values(&high, &low, m.regime)? != PrefOrdering::Indifferent {
                        all = false;
                        break;
                    }
                }
                all
            }
            _ => true,
        }
    };

    if sweep != analytic {
        return Err(Error::AnalyticMismatch(format!(
            "state `{t}`: sweep says null={sweep}, analytic rule says null={analytic}"
        )));
    }
    Ok(analytic)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> NsReal {
        s.parse().unwrap()
    }

    fn model(belief: [&str; 2], utils: [&str; 2], regime: Regime) -> AaModel {
        let states = StateSpace::new(["s0", "s1"]).unwrap();
        let belief = Belief::new([("s0", n(belief[0])), ("s1", n(belief[1]))]).unwrap();
        let u = UtilityAssignment::from_pairs([("hi", n(utils[0])), ("lo", n(utils[1]))]).unwrap();
        AaModel::new(states, belief, u, regime).unwrap()
    }

    fn act(s0: &str, s1: &str) -> Act {
        Act::new([("s0", Lottery::degenerate(s0)), ("s1", Lottery::degenerate(s1))])
    }

    #[test]
    fn act_utility_examples() {
        let m = model(["1/2", "1/2"], ["1", "eps"], Regime::NsUtil);
        let p = Lottery::degenerate("hi");
        let c = constant_act(&p, &m.states);
        assert_eq!(act_utility(&c, &m).unwrap(), NsReal::one());
        assert_eq!(act_utility(&act("hi", "lo"), &m).unwrap(), n("1/2 + 1/2*eps"));
        let m = model(["1", "0"], ["1", "eps"], Regime::NsUtil);
        assert_eq!(act_utility(&act("lo", "hi"), &m).unwrap(), NsReal::eps());
    }

    #[test]
    fn act_prefers_examples() {
        let m = model(["1/2", "1/2"], ["1", "0"], Regime::Std);
        let a = act("hi", "lo");
        assert_eq!(act_prefers(&a, &a, &m).unwrap(), PrefOrdering::Indifferent);
        assert_eq!(
            act_prefers(&a, &act("lo", "lo"), &m).unwrap(),
            PrefOrdering::Better
        );
        let m = model(["1", "0"], ["1", "0"], Regime::Std);
        assert_eq!(
            act_prefers(&act("hi", "hi"), &act("hi", "lo"), &m).unwrap(),
            PrefOrdering::Indifferent
        );
    }

    #[test]
    fn null_examples() {
        let gens = [act("hi", "lo"), act("lo", "hi"), act("lo", "lo")];
        let m = model(["1", "0"], ["1", "0"], Regime::Std);
        assert!(is_null("s1", &m, &gens).unwrap());
        assert!(!is_null("s0", &m, &gens).unwrap());
        let m = model(["1/2", "1/2"], ["1", "0"], Regime::Std);
        assert!(!is_null("s1", &m, &gens).unwrap());
        let m = model(["1/2", "1/2"], ["1", "1"], Regime::Std);
        assert!(is_null("s1", &m, &gens).unwrap());
        assert_eq!(
            is_null("s9", &m, &gens),
            Err(Error::UnknownState("s9".into()))
        );
    }

    #[test]
    fn null_under_infinitesimal_spread() {
        // utilities 1 and 1 + eps differ only infinitesimally: every state is null
        let m = model(["1/2", "1/2"], ["1 + eps", "1"], Regime::NsUtil);
        let gens = [act("hi", "lo"), act("lo", "hi")];
        assert!(is_null("s0", &m, &gens).unwrap());
    }

    #[test]
    fn constant_act_shape() {
        let states = StateSpace::new(["only"]).unwrap();
        let c = constant_act(&Lottery::degenerate("x"), &states);
        assert_eq!(c.iter().count(), 1);
        assert_eq!(c.at("only"), Some(&Lottery::degenerate("x")));
    }

    #[test]
    fn model_validation() {
        let states = StateSpace::new(["a", "b"]).unwrap();
        let belief = Belief::new([("a", n("1 - eps")), ("b", n("eps"))]).unwrap();
        let u = UtilityAssignment::from_pairs([("x", n("1"))]).unwrap();
        assert!(matches!(
            AaModel::new(states.clone(), belief.clone(), u.clone(), Regime::NsUtil),
            Err(Error::RegimeViolation { .. })
        ));
        assert!(AaModel::new(states, belief, u, Regime::NsProb).is_ok());
        assert!(StateSpace::new(Vec::<String>::new()).is_err());
        assert!(StateSpace::new(["a", "a"]).is_err());
    }
}
