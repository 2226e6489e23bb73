//! Test-side oracles and random instance generators.
#![allow(dead_code)]

use equm::acts::{AaModel, Act, Belief, StateSpace};
use equm::auditor::PrefStructure;
use equm::pref::{mix, Lottery, Regime, UtilityAssignment};
use equm::{NsReal, PrefOrdering};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

pub fn n(s: &str) -> NsReal {
    s.parse().unwrap()
}

pub fn rand_rational<R: Rng>(g: &mut R, max_num: i64, max_den: i64) -> BigRational {
    r(g.random_range(-max_num..=max_num), g.random_range(1..=max_den))
}

pub fn rand_nsreal<R: Rng>(g: &mut R) -> NsReal {
    let k = g.random_range(0..=4);
    NsReal::from_terms((0..k).map(|_| (g.random_range(-3..=3), rand_rational(g, 9, 6))))
}

pub fn rand_positive<R: Rng>(g: &mut R) -> NsReal {
    loop {
        let x = rand_nsreal(g);
        if x.sign() > 0 {
            return x;
        }
    }
}

/// Non-negative value with exponents in `-1..=2`.
pub fn rand_utility<R: Rng>(g: &mut R, standard: bool) -> NsReal {
    if standard || g.random_bool(0.3) {
        return NsReal::from_rational(r(g.random_range(0..=8), g.random_range(1..=4)));
    }
    loop {
        let k = g.random_range(1..=3);
        let x = NsReal::from_terms((0..k).map(|_| {
            (g.random_range(-1..=2), r(g.random_range(-3..=5), g.random_range(1..=3)))
        }));
        if x.sign() >= 0 {
            return x;
        }
    }
}

/// Definition of `≻` for positive `x`, `y`: `(x − y)/x ≥ r` for some
/// standard `r > 0`. Candidate `r`s are halves of all coefficient ratios,
/// which include half the standard part of `(x − y)/x` whenever it is
/// finite and positive.
pub fn qgreater_by_ratio(x: &NsReal, y: &NsReal) -> bool {
    assert!(x.sign() > 0 && y.sign() > 0);
    let d = x - y;
    let mut candidates = vec![r(1, 1)];
    for (_, a) in d.terms() {
        for (_, b) in x.terms() {
            let c = (a / b).abs() / BigRational::from_integer(2.into());
            if !c.is_zero() {
                candidates.push(c);
            }
        }
    }
    candidates
        .into_iter()
        .any(|c| (&d - &x.scale(&c)).sign() >= 0)
}

/// Definition of overriding over a finite domain: `x > y`, and for every
/// `y'` in `domain` with `y > y'` and every grid weight `λ`,
/// `λ·y + (1−λ)·x ∼ λ·y' + (1−λ)·x`.
pub fn overrides_by_definition(x: &NsReal, y: &NsReal, domain: &[NsReal], grid: i64) -> bool {
    let cmp = |a: &NsReal, b: &NsReal| a.qcompare(b);
    use equm::QOrdering::*;
    if cmp(x, y) != Greater {
        return false;
    }
    for y2 in domain.iter().filter(|v| cmp(y, v) == Greater) {
        for k in 1..grid {
            let l = NsReal::ratio(k, grid);
            let m = NsReal::one() - &l;
            let a = &l * y + &m * x;
            let b = &l * y2 + &m * x;
            if cmp(&a, &b) != Equivalent {
                return false;
            }
        }
    }
    true
}

pub fn outcome(i: usize) -> String {
    format!("o{i}")
}

/// Three outcomes, their sure lotteries and one random mixture, closed once
/// under weights `k/3`.
pub fn rand_structure<R: Rng>(g: &mut R, regime: Regime) -> PrefStructure {
    let k = 3;
    let standard = regime.standard_utilities();
    let mut u = UtilityAssignment::new();
    for i in 0..k {
        u.insert(outcome(i), rand_utility(g, standard)).unwrap();
    }
    let mut gens: Vec<Lottery> = (0..k).map(|i| Lottery::degenerate(outcome(i))).collect();
    let a = g.random_range(0..k);
    let b = (a + 1) % k;
    let w = if regime.standard_probabilities() {
        NsReal::ratio(g.random_range(1..=4), 5)
    } else {
        NsReal::ratio(g.random_range(1..=4), 5) + NsReal::eps()
    };
    gens.push(mix(&w, &gens[a], &gens[b], regime).unwrap());
    PrefStructure::new(regime, u, gens)
        .unwrap()
        .with_grid(3)
        .unwrap()
        .with_depth(1)
}

/// Random model over two or three states with standard beliefs, together
/// with every act mapping states to sure outcomes.
pub fn rand_acts<R: Rng>(g: &mut R, regime: Regime) -> (AaModel, Vec<Act>) {
    let ns = g.random_range(2..=3);
    let ids: Vec<String> = (0..ns).map(|i| format!("s{i}")).collect();
    let states = StateSpace::new(ids.clone()).unwrap();
    let mut weights: Vec<i64> = (0..ns).map(|_| g.random_range(0..=3)).collect();
    if weights.iter().all(|w| *w == 0) {
        weights[0] = 1;
    }
    let total: i64 = weights.iter().sum();
    let belief = Belief::new(
        ids.iter()
            .zip(&weights)
            .map(|(s, w)| (s.clone(), NsReal::ratio(*w, total))),
    )
    .unwrap();
    let mut u = UtilityAssignment::new();
    for i in 0..3 {
        u.insert(outcome(i), rand_utility(g, regime.standard_utilities()))
            .unwrap();
    }
    let model = AaModel::new(states, belief, u, regime).unwrap();
    let mut acts = Vec::new();
    let combos = 3usize.pow(ns as u32);
    for c in 0..combos {
        let mut rest = c;
        let mut entries = Vec::new();
        for s in &ids {
            entries.push((s.clone(), Lottery::degenerate(outcome(rest % 3))));
            rest /= 3;
        }
        acts.push(Act::new(entries));
    }
    (model, acts)
}

pub fn better(o: PrefOrdering) -> bool {
    o == PrefOrdering::Better
}
